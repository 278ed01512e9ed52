#include "dds/trace_io.hpp"

#include "dds/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dds {
namespace {

constexpr const char* kHeader =
    "k,metric_f_iterates,metric_f_mean,metric_consensus,alpha_min,alpha_max,"
    "successes,cum_evals";

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << kHeader << '\n';
  for (const auto& r : trace.rows)
    out << r.k << ',' << format_g17(r.f_iterates) << ','
        << format_g17(r.f_mean) << ',' << format_g17(r.consensus) << ','
        << format_g17(r.alpha_min) << ',' << format_g17(r.alpha_max) << ','
        << r.successes << ',' << r.cum_evals << '\n';
}

std::string trace_csv_string(const RunTrace& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  return out.str();
}

RunTrace read_trace_csv(std::istream& in, const std::string& solver_id) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw std::runtime_error("unexpected trace header: " + line);
  RunTrace trace;
  trace.solver_id = solver_id;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != 8)
      throw std::runtime_error("trace line " + std::to_string(lineno) +
                               ": expected 8 fields");
    try {
      TraceRow r;
      r.k = std::stoll(fields[0]);
      r.f_iterates = std::stod(fields[1]);
      r.f_mean = std::stod(fields[2]);
      r.consensus = std::stod(fields[3]);
      r.alpha_min = std::stod(fields[4]);
      r.alpha_max = std::stod(fields[5]);
      r.successes = std::stoi(fields[6]);
      r.cum_evals = std::stoll(fields[7]);
      trace.rows.push_back(r);
    } catch (const std::exception&) {
      throw std::runtime_error("trace line " + std::to_string(lineno) +
                               ": malformed field");
    }
  }
  return trace;
}

RunTrace read_trace_csv_file(const std::string& path,
                             const std::string& solver_id) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_trace_csv(in, solver_id);
}

}  // namespace dds
