#include "rtscp/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rtscp {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sim_trace_csv(const SimTrace& trace) {
    std::ostringstream out;
    out << "t,y1,y2,theta,dy1,dy2,dtheta,u1,u2,solve_iters,solve_time_s,kkt_residual\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const auto& x = trace.states[i];
        const auto& u = trace.controls[i];
        const auto& rec = trace.step_records[i];
        out << format_double(trace.times[i]);
        for (int j = 0; j < 6; ++j) out << ',' << format_double(x[j]);
        out << ',' << format_double(u[0]) << ',' << format_double(u[1]);
        out << ',' << rec.solve_iterations;
        out << ',' << format_double(rec.solve_time);
        out << ',' << format_double(rec.original_kkt_residual);
        out << '\n';
    }
    return out.str();
}

void write_sim_trace_csv(const SimTrace& trace, const std::string& path) {
    write_text_file(path, sim_trace_csv(trace));
}

namespace {

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

json point_to_json(const PrimalDualPoint& z) {
    return json{{"x", vector_to_json(z.x)}, {"lambda", vector_to_json(z.lambda)}};
}

}  // namespace

std::string sim_summary_json(const SimConfig& config, const SimTrace& trace) {
    json doc;
    doc["stop_time"] = trace.stop_time ? json(*trace.stop_time) : json(nullptr);
    doc["samples"] = trace.times.size();
    doc["aborted"] = trace.aborted;
    doc["failed_samples"] = trace.failed_samples;
    double total_solve_time = 0;
    int max_iters = 0;
    double max_residual = 0;
    for (const auto& rec : trace.step_records) {
        total_solve_time += rec.solve_time;
        max_iters = std::max(max_iters, rec.solve_iterations);
        max_residual = std::max(max_residual, rec.original_kkt_residual);
    }
    doc["total_solve_time_s"] = total_solve_time;
    doc["max_solve_iterations"] = max_iters;
    doc["max_kkt_residual"] = max_residual;

    json cfg;
    cfg["N"] = config.N;
    cfg["dt"] = config.dt;
    cfg["horizon_s"] = config.horizon_s;
    cfg["stop_radius"] = config.stop_radius;
    cfg["mode"] = config.mode == OcpMode::SlackEpigraph ? "slack" : "quadratic";
    cfg["plant"] = config.plant == PlantModel::Rk4 ? "rk4" : "euler";
    cfg["plant_substeps"] = config.plant_substeps;
    cfg["warmup_scp_iterations"] = config.warmup_scp_iterations;
    cfg["mass"] = config.params.mass;
    cfg["inertia"] = config.params.inertia;
    cfg["lever"] = config.params.lever;
    cfg["u_lo"] = config.params.u_lo;
    cfg["u_hi"] = config.params.u_hi;
    cfg["y1_bounds"] = {config.params.y1_lo, config.params.y1_hi};
    cfg["y2_bounds"] = {config.params.y2_lo, config.params.y2_hi};
    cfg["weights_q"] = vector_to_json(config.weights.q);
    cfg["weights_r"] = vector_to_json(config.weights.r);
    cfg["weights_s"] = vector_to_json(config.weights.s);
    cfg["x_init"] = vector_to_json(config.x_init);
    cfg["kkt_tolerance"] = config.solver.kkt_tolerance;
    cfg["max_iterations"] = config.solver.max_iterations;
    doc["config"] = cfg;
    return doc.dump(2) + "\n";
}

std::string scp_report_csv(const ScpReport& report, const std::vector<double>& ratios) {
    std::ostringstream out;
    const bool with_ratios = !ratios.empty();
    out << (with_ratios ? "iter,kkt_residual,step_norm,ratio\n" : "iter,kkt_residual,step_norm\n");
    for (std::size_t j = 0; j < report.kkt_residuals.size(); ++j) {
        out << j << ',' << format_double(report.kkt_residuals[j]) << ',' << format_double(report.step_norms[j]);
        if (with_ratios) out << ',' << (j < ratios.size() ? format_double(ratios[j]) : std::string());
        out << '\n';
    }
    return out.str();
}

std::string scp_report_json(const ScpReport& report) {
    json doc;
    doc["status"] = to_string(report.status);
    doc["iterations"] = report.iterates.size();
    doc["projected_start"] = report.projected_start;
    doc["kkt_residuals"] = report.kkt_residuals;
    doc["step_norms"] = report.step_norms;
    if (report.converged_point) doc["converged_point"] = point_to_json(*report.converged_point);
    doc["last_subproblem_status"] = to_string(report.last_subproblem_status);
    return doc.dump(2) + "\n";
}

std::string step_records_csv(const std::vector<RtscpStepRecord>& records) {
    std::ostringstream out;
    out << "k,parameter_drift,solve_iterations,solve_time_s,original_kkt_residual\n";
    for (const auto& rec : records) {
        out << rec.k << ',' << format_double(rec.parameter_drift) << ',' << rec.solve_iterations << ','
            << format_double(rec.solve_time) << ',' << format_double(rec.original_kkt_residual) << '\n';
    }
    return out.str();
}

std::string step_record_json_line(const RtscpStepRecord& record) {
    json doc;
    doc["k"] = record.k;
    doc["xi"] = vector_to_json(record.xi);
    doc["parameter_drift"] = record.parameter_drift;
    doc["solve_iterations"] = record.solve_iterations;
    doc["solve_time_s"] = record.solve_time;
    doc["original_kkt_residual"] = record.original_kkt_residual;
    doc["z"] = point_to_json(record.z);
    return doc.dump();
}

std::string contraction_records_csv(const std::vector<ContractionRecord>& records) {
    std::ostringstream out;
    out << "k,dist_before,dist_after,drift,kappa_at_reference\n";
    for (const auto& rec : records) {
        out << rec.k << ',' << format_double(rec.dist_before) << ',' << format_double(rec.dist_after) << ','
            << format_double(rec.drift) << ',' << format_double(rec.kappa_at_reference) << '\n';
    }
    return out.str();
}

std::string contraction_fit_json(const ContractionTrace& trace) {
    json doc;
    doc["omega_hat"] = trace.fit.omega_hat;
    doc["c_hat"] = trace.fit.c_hat;
    doc["violations"] = trace.fit.violations;
    doc["record_count"] = trace.fit.record_count;
    doc["aborted"] = trace.aborted;
    if (trace.aborted) doc["abort_index"] = trace.abort_index;
    double max_drift = 0;
    double max_kappa = 0;
    for (const auto& rec : trace.records) {
        max_drift = std::max(max_drift, rec.drift);
        max_kappa = std::max(max_kappa, rec.kappa_at_reference);
    }
    doc["max_drift"] = max_drift;
    doc["max_kappa_at_reference"] = max_kappa;
    return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace rtscp
