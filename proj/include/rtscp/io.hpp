#pragma once

#include <string>
#include <vector>

#include "rtscp/diagnostics.hpp"
#include "rtscp/hovercraft.hpp"
#include "rtscp/rtscp.hpp"
#include "rtscp/scp.hpp"

namespace rtscp {

/// Shortest round-trip decimal form; deterministic for identical doubles.
std::string format_double(double v);

// SimTrace: CSV columns t, y1, y2, theta, dy1, dy2, dtheta, u1, u2,
// solve_iters, solve_time_s, kkt_residual.
std::string sim_trace_csv(const SimTrace& trace);
void write_sim_trace_csv(const SimTrace& trace, const std::string& path);

/// JSON summary: stop_time, sample count, aborted flag and a config echo.
std::string sim_summary_json(const SimConfig& config, const SimTrace& trace);

// ScpReport: CSV rows per outer iteration; optional ratios column when a
// reference point is supplied.
std::string scp_report_csv(const ScpReport& report, const std::vector<double>& ratios = {});
std::string scp_report_json(const ScpReport& report);

// RTSCP step records as CSV or JSON lines.
std::string step_records_csv(const std::vector<RtscpStepRecord>& records);
std::string step_record_json_line(const RtscpStepRecord& record);

// Contraction diagnostics.
std::string contraction_records_csv(const std::vector<ContractionRecord>& records);
std::string contraction_fit_json(const ContractionTrace& trace);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace rtscp
