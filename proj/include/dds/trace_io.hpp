#pragma once

#include "dds/solvers.hpp"

#include <iosfwd>
#include <string>

namespace dds {

// Fixed-schema iteration trace:
//   k,metric_f_iterates,metric_f_mean,metric_consensus,alpha_min,alpha_max,successes,cum_evals
// with floating-point fields at 17 significant digits.  Identical traces
// serialize to identical bytes.
void write_trace_csv(std::ostream& out, const RunTrace& trace);
std::string trace_csv_string(const RunTrace& trace);

// Parses rows written by write_trace_csv.  solver_id is not stored in the
// file; the caller supplies it (typically from the manifest).
RunTrace read_trace_csv(std::istream& in, const std::string& solver_id);
RunTrace read_trace_csv_file(const std::string& path,
                             const std::string& solver_id);

}  // namespace dds
