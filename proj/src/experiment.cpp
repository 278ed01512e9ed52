#include "dds/experiment.hpp"

#include "dds/csv.hpp"
#include "dds/rng.hpp"
#include "dds/trace_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dds {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

bool parse_toy_id(const std::string& id, int* n_out) {
  if (id.size() < 4 || id.rfind("toy", 0) != 0) return false;
  int n = 0;
  for (std::size_t i = 3; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
    n = n * 10 + (id[i] - '0');
    if (n > 1000000) return false;
  }
  if (n < 1) return false;
  if (n_out) *n_out = n;
  return true;
}

std::vector<std::uint64_t> effective_seeds(const ExperimentConfig& c) {
  return c.seeds.empty() ? std::vector<std::uint64_t>{c.seed} : c.seeds;
}

std::string format_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string file_name_for(const std::string& problem, const std::string& solver,
                          const std::optional<double>& gamma,
                          std::uint64_t seed) {
  std::string s = "trace_" + problem + "_" + solver;
  if (gamma) s += "_g" + format_short(*gamma);
  s += "_s" + std::to_string(seed) + ".csv";
  return s;
}

void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << bytes;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string hash_of(const std::string& bytes) {
  return "fnv1a:" + hex64(fnv1a64(bytes));
}

bool is_lyapunov(const std::string& solver_id) {
  return solver_id.rfind("dds-lyapunov", 0) == 0;
}

// One finished (problem, solver, seed) run plus its bookkeeping.
struct CellRun {
  std::string problem;
  std::string instance;  // problem + "/s" + seed
  std::string solver;
  std::optional<double> gamma;
  std::uint64_t seed = 0;
  int n = 0, m = 0;
  std::string trace_file;
  RunTrace trace;
};

CellRun execute_cell(const ExperimentConfig& c, const std::string& problem_id,
                     const std::string& solver_id, std::optional<double> gamma,
                     std::uint64_t seed, std::ostream& log,
                     std::map<std::string, std::string>& hashes) {
  DecentralizedProblem p = make_problem(problem_id, seed);
  MixingMatrix w = make_graph_for(problem_id, p.agents(), c.edge_prob, seed);

  SolverConfig sc = solver_config_for(solver_id);
  if (gamma) sc.gamma = *gamma;
  sc.alpha0 = c.alpha0;
  sc.threads = c.threads;
  sc.max_total_evals = c.budget_evals.value_or(
      default_budget_evals(problem_id, p.dim(), p.agents()));
  sc.max_iterations =
      c.budget_iters.value_or(default_budget_iters(problem_id));

  CellRun cell;
  cell.problem = problem_id;
  cell.instance = problem_id + "/s" + std::to_string(seed);
  cell.solver = solver_id;
  cell.gamma = gamma;
  cell.seed = seed;
  cell.n = p.dim();
  cell.m = p.agents();
  cell.trace = run_solver(p, w, sc);
  cell.trace_file = file_name_for(problem_id, solver_id, gamma, seed);

  const std::string csv = trace_csv_string(cell.trace);
  write_bytes(c.out_dir + "/" + cell.trace_file, csv);
  hashes[cell.trace_file] = hash_of(csv);

  if (c.export_mixing) {
    const std::string mix_name =
        "mixing_" + problem_id + "_s" + std::to_string(seed) + ".csv";
    if (!hashes.count(mix_name)) {
      std::ostringstream buf;
      write_mixing_csv(w, buf);
      write_bytes(c.out_dir + "/" + mix_name, buf.str());
      hashes[mix_name] = hash_of(buf.str());
    }
  }

  const TraceRow& last = cell.trace.rows.back();
  log << cell.instance << " " << solver_id;
  if (gamma) log << " gamma=" << format_short(*gamma);
  log << ": rounds=" << cell.trace.iterations()
      << " evals=" << cell.trace.total_evals()
      << " f_iterates=" << format_short(last.f_iterates)
      << " consensus=" << format_short(last.consensus);
  if (!cell.trace.completed) log << " [incomplete: " << cell.trace.failure << "]";
  log << "\n";
  return cell;
}

std::string summary_csv(const std::vector<CellRun>& cells) {
  std::ostringstream out;
  out << "problem,solver,gamma,seed,n,m,rounds,total_evals,completed,"
         "theory_compliant,f_iterates,f_mean,consensus\n";
  for (const auto& cell : cells) {
    const TraceRow& last = cell.trace.rows.back();
    out << cell.problem << ',' << cell.solver << ','
        << (cell.gamma ? format_short(*cell.gamma) : std::string()) << ','
        << cell.seed << ',' << cell.n << ',' << cell.m << ','
        << cell.trace.iterations() << ',' << cell.trace.total_evals() << ','
        << (cell.trace.completed ? 1 : 0) << ','
        << (cell.trace.theory_compliant ? 1 : 0) << ','
        << format_g17(last.f_iterates) << ',' << format_g17(last.f_mean)
        << ',' << format_g17(last.consensus) << '\n';
  }
  return out.str();
}

json constants_json(const ExperimentConfig& c, bool toy_command) {
  json k;
  k["adaptive_theta"] = 0.5;
  k["adaptive_bounds"] = "lower 0, upper unbounded";
  if (c.alpha0)
    k["alpha0"] = *c.alpha0;
  else
    k["alpha0"] = "norm(x0) + 1";
  if (c.budget_evals)
    k["budget_evals"] = *c.budget_evals;
  else
    k["budget_evals"] =
        toy_command ? "100 * n * m total local evaluations"
                    : "400 * n * m total local evaluations";
  if (c.budget_iters)
    k["budget_iters"] = *c.budget_iters;
  else
    k["budget_iters"] = toy_command ? 1000000 : 500;
  k["edge_prob"] = c.edge_prob;
  k["fd_step"] = 1e-7;
  k["forcing_c"] = 1e-8;
  k["forcing_tau"] = 0.8;
  k["vanishing_tau"] = 0.6;
  if (toy_command)
    k["gammas"] = c.gammas;
  else
    k["gamma"] = c.gamma;
  k["threads"] = c.threads;
  return k;
}

json cells_json(const std::vector<CellRun>& cells) {
  json arr = json::array();
  for (const auto& cell : cells) {
    json j;
    j["problem"] = cell.problem;
    j["instance"] = cell.instance;
    j["solver"] = cell.solver;
    if (cell.gamma)
      j["gamma"] = *cell.gamma;
    else
      j["gamma"] = nullptr;
    j["seed"] = cell.seed;
    j["n"] = cell.n;
    j["m"] = cell.m;
    j["trace"] = cell.trace_file;
    j["rounds"] = cell.trace.iterations();
    j["total_evals"] = cell.trace.total_evals();
    j["completed"] = cell.trace.completed;
    j["theory_compliant"] = cell.trace.theory_compliant;
    if (!cell.trace.completed) j["failure"] = cell.trace.failure;
    arr.push_back(std::move(j));
  }
  return arr;
}

void write_manifest(const ExperimentConfig& c, const std::string& command,
                    const std::vector<CellRun>& cells,
                    const std::map<std::string, std::string>& hashes,
                    const std::vector<std::string>& notes) {
  json man;
  man["command"] = command;
  man["constants"] = constants_json(c, command == "toy-sweep");
  man["cells"] = cells_json(cells);
  json files = json::object();
  for (const auto& [name, hash] : hashes) files[name] = hash;
  man["files"] = files;
  man["notes"] = notes;
  man["seeds"] = effective_seeds(c);
  man["tols"] = c.tols;
  write_bytes(c.out_dir + "/manifest.json", man.dump(2) + "\n");
}

int strict_exit(const ExperimentConfig& c, const std::vector<CellRun>& cells,
                std::ostream& log) {
  if (!c.strict) return 0;
  int bad = 0;
  for (const auto& cell : cells)
    if (!cell.trace.completed) ++bad;
  if (bad) {
    log << bad << " incomplete cell(s) under --strict\n";
    return 3;
  }
  return 0;
}

const std::vector<std::string> kSuiteNotes = {
    "consensus profiles anchor the convergence threshold at the per-trace "
    "maximum consensus value; with replicated starts row 0 already satisfies "
    "the test, so consensus curves saturate at the smallest budget",
    "t counts total local solver-channel evaluations summed over agents; "
    "monitoring evaluations are excluded",
    "the best-found value per instance is the minimum over every solver's "
    "monitored rows, incomplete traces included",
    "runs stop at the first round boundary at or past the budget, so the "
    "final tally may overshoot by at most one round"};

// Field-path-tagged config file reader.
struct ConfigParser {
  ExperimentConfig c;
  std::string section;

  static std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) {
    throw std::invalid_argument(section + "." + key + ": " + why);
  }

  double number(const std::string& key, const std::string& v) {
    try {
      std::size_t used = 0;
      double x = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      fail(key, "expected a number, got '" + v + "'");
    }
  }

  std::int64_t integer(const std::string& key, const std::string& v) {
    try {
      std::size_t used = 0;
      std::int64_t x = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      fail(key, "expected an integer, got '" + v + "'");
    }
  }

  bool boolean(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(key, "expected a boolean, got '" + v + "'");
  }

  std::vector<std::string> items(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : v) {
      if (ch == ',') {
        out.push_back(trim(cur));
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    out.push_back(trim(cur));
    return out;
  }

  void assign(const std::string& key, const std::string& value) {
    if (section == "run") {
      if (key == "problem") c.problem = value;
      else if (key == "solver") c.solver = value;
      else if (key == "seed") c.seed = static_cast<std::uint64_t>(integer(key, value));
      else if (key == "seeds") {
        c.seeds.clear();
        for (const auto& s : items(value))
          c.seeds.push_back(static_cast<std::uint64_t>(integer(key, s)));
      } else if (key == "gamma") c.gamma = number(key, value);
      else if (key == "edge_prob") c.edge_prob = number(key, value);
      else if (key == "budget_evals") c.budget_evals = integer(key, value);
      else if (key == "budget_iters") c.budget_iters = integer(key, value);
      else if (key == "alpha0") c.alpha0 = number(key, value);
      else if (key == "threads") c.threads = static_cast<int>(integer(key, value));
      else if (key == "out_dir") c.out_dir = value;
      else if (key == "export_mixing") c.export_mixing = boolean(key, value);
      else if (key == "strict") c.strict = boolean(key, value);
      else fail(key, "unknown key");
    } else if (section == "toy") {
      if (key == "dims") {
        c.toy_dims.clear();
        for (const auto& s : items(value))
          c.toy_dims.push_back(static_cast<int>(integer(key, s)));
      } else if (key == "gammas") {
        c.gammas.clear();
        for (const auto& s : items(value)) c.gammas.push_back(number(key, s));
      } else fail(key, "unknown key");
    } else if (section == "profiles") {
      if (key == "tols") {
        c.tols.clear();
        for (const auto& s : items(value)) c.tols.push_back(number(key, s));
      } else fail(key, "unknown key");
    } else {
      throw std::invalid_argument("unknown section [" + section + "]");
    }
  }
};

}  // namespace

const std::vector<std::string>& solver_ids() {
  static const std::vector<std::string> ids = {
      "dds-lyapunov-vanishing", "dds-lyapunov-adaptive",
      "dds-objective-vanishing", "dds-objective-adaptive",
      "zo-dgd-fd", "zo-dgd-lm"};
  return ids;
}

SolverConfig solver_config_for(const std::string& solver_id) {
  SolverConfig sc;
  if (solver_id == "dds-lyapunov-vanishing") {
    sc.algorithm = Algorithm::DdsLyapunov;
    sc.schedule = VanishingSchedule{};
  } else if (solver_id == "dds-lyapunov-adaptive") {
    sc.algorithm = Algorithm::DdsLyapunov;
    sc.schedule = AdaptiveSchedule{};
  } else if (solver_id == "dds-objective-vanishing") {
    sc.algorithm = Algorithm::DdsObjective;
    sc.schedule = VanishingSchedule{};
  } else if (solver_id == "dds-objective-adaptive") {
    sc.algorithm = Algorithm::DdsObjective;
    sc.schedule = AdaptiveSchedule{};
  } else if (solver_id == "zo-dgd-fd") {
    sc.algorithm = Algorithm::ZoDgdFd;
    sc.schedule = VanishingSchedule{};
  } else if (solver_id == "zo-dgd-lm") {
    sc.algorithm = Algorithm::ZoDgdLm;
    sc.schedule = VanishingSchedule{};
  } else {
    std::string msg = "unknown solver id '" + solver_id + "'; valid ids:";
    for (const auto& id : solver_ids()) msg += " " + id;
    throw std::invalid_argument(msg);
  }
  return sc;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  ConfigParser parser;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = ConfigParser::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": malformed section header");
      parser.section = line.substr(1, line.size() - 2);
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    if (parser.section.empty())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": key before any [section]");
    parser.assign(ConfigParser::trim(line.substr(0, eq)),
                  ConfigParser::trim(line.substr(eq + 1)));
  }
  return parser.c;
}

void write_config_file(const std::string& path, const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[run]\n";
  if (!c.problem.empty()) out << "problem = " << c.problem << "\n";
  if (!c.solver.empty()) out << "solver = " << c.solver << "\n";
  out << "seed = " << c.seed << "\n";
  if (!c.seeds.empty()) {
    out << "seeds = ";
    for (std::size_t i = 0; i < c.seeds.size(); ++i)
      out << (i ? "," : "") << c.seeds[i];
    out << "\n";
  }
  out << "gamma = " << format_short(c.gamma) << "\n";
  out << "edge_prob = " << format_short(c.edge_prob) << "\n";
  if (c.budget_evals) out << "budget_evals = " << *c.budget_evals << "\n";
  if (c.budget_iters) out << "budget_iters = " << *c.budget_iters << "\n";
  if (c.alpha0) out << "alpha0 = " << format_g17(*c.alpha0) << "\n";
  out << "threads = " << c.threads << "\n";
  out << "out_dir = " << c.out_dir << "\n";
  out << "export_mixing = " << (c.export_mixing ? "true" : "false") << "\n";
  out << "strict = " << (c.strict ? "true" : "false") << "\n";
  out << "\n[toy]\n";
  out << "dims = ";
  for (std::size_t i = 0; i < c.toy_dims.size(); ++i)
    out << (i ? "," : "") << c.toy_dims[i];
  out << "\ngammas = ";
  for (std::size_t i = 0; i < c.gammas.size(); ++i)
    out << (i ? "," : "") << format_short(c.gammas[i]);
  out << "\n\n[profiles]\n";
  out << "tols = ";
  for (std::size_t i = 0; i < c.tols.size(); ++i)
    out << (i ? "," : "") << format_short(c.tols[i]);
  out << "\n";
  write_bytes(path, out.str());
}

DecentralizedProblem make_problem(const std::string& id, std::uint64_t seed) {
  int n = 0;
  if (parse_toy_id(id, &n)) return toy_problem(n, seed);
  if (const VectorResidualProblem* p = find_residual(id))
    return p->decentralized();
  throw std::invalid_argument("unknown problem id '" + id +
                              "'; use toy<n> or a name from list-problems");
}

MixingMatrix make_graph_for(const std::string& problem_id, int m,
                            double edge_prob, std::uint64_t seed) {
  if (m == 1) return build_mixing_matrix(Graph(1, {}));
  const std::uint64_t graph_seed =
      substream(seed, stream_tag("graph"), fnv1a64(problem_id));
  return build_mixing_matrix(generate_graph(m, edge_prob, graph_seed));
}

std::int64_t default_budget_evals(const std::string& problem_id, int n, int m) {
  const std::int64_t per_agent = parse_toy_id(problem_id, nullptr)
                                     ? 100ll * n
                                     : 400ll * n;
  return per_agent * m;
}

std::int64_t default_budget_iters(const std::string& problem_id) {
  return parse_toy_id(problem_id, nullptr) ? 1000000 : 500;
}

int run_single(const ExperimentConfig& c, std::ostream& log) {
  try {
    if (c.problem.empty())
      throw std::invalid_argument("run.problem: required");
    if (c.solver.empty())
      throw std::invalid_argument("run.solver: required");
    solver_config_for(c.solver);
    if (!is_lyapunov(c.solver) && c.gamma != 1.0)
      throw std::invalid_argument(
          "run.gamma: only consumed by dds-lyapunov solvers");
    fs::create_directories(c.out_dir);

    std::map<std::string, std::string> hashes;
    std::optional<double> gamma;
    if (is_lyapunov(c.solver)) gamma = c.gamma;
    std::vector<CellRun> cells;
    cells.push_back(
        execute_cell(c, c.problem, c.solver, gamma, c.seed, log, hashes));
    const TraceRow& last = cells.back().trace.rows.back();
    log << "final: f_iterates=" << format_g17(last.f_iterates)
        << " f_mean=" << format_g17(last.f_mean)
        << " consensus=" << format_g17(last.consensus) << "\n";
    write_manifest(c, "run", cells, hashes, {});
    return strict_exit(c, cells, log);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_toy_sweep(const ExperimentConfig& c, std::ostream& log) {
  try {
    fs::create_directories(c.out_dir);
    std::map<std::string, std::string> hashes;
    std::vector<CellRun> cells;
    for (int n : c.toy_dims) {
      const std::string problem = "toy" + std::to_string(n);
      for (std::uint64_t seed : effective_seeds(c)) {
        for (const auto& solver : solver_ids()) {
          if (is_lyapunov(solver)) {
            for (double g : c.gammas)
              cells.push_back(
                  execute_cell(c, problem, solver, g, seed, log, hashes));
          } else {
            cells.push_back(execute_cell(c, problem, solver, std::nullopt,
                                         seed, log, hashes));
          }
        }
      }
    }
    const std::string summary = summary_csv(cells);
    write_bytes(c.out_dir + "/summary.csv", summary);
    hashes["summary.csv"] = hash_of(summary);
    write_manifest(c, "toy-sweep", cells, hashes, {});
    log << cells.size() << " runs -> " << c.out_dir << "\n";
    return strict_exit(c, cells, log);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_suite(const ExperimentConfig& c, std::ostream& log) {
  try {
    fs::create_directories(c.out_dir);
    std::map<std::string, std::string> hashes;
    std::vector<CellRun> cells;
    for (const auto& rp : residual_suite()) {
      for (std::uint64_t seed : effective_seeds(c)) {
        for (const auto& solver : solver_ids()) {
          std::optional<double> gamma;
          if (is_lyapunov(solver)) gamma = c.gamma;
          cells.push_back(
              execute_cell(c, rp.name, solver, gamma, seed, log, hashes));
        }
      }
    }

    std::vector<BenchCell> bench;
    bench.reserve(cells.size());
    for (const auto& cell : cells)
      bench.push_back({cell.instance, cell.solver, cell.n, &cell.trace});
    for (const auto& name : emit_profiles(bench, c.tols, c.out_dir))
      hashes[name] = hash_of(read_bytes(c.out_dir + "/" + name));

    const std::string summary = summary_csv(cells);
    write_bytes(c.out_dir + "/summary.csv", summary);
    hashes["summary.csv"] = hash_of(summary);
    write_manifest(c, "suite", cells, hashes, kSuiteNotes);
    log << cells.size() << " runs -> " << c.out_dir << "\n";
    return strict_exit(c, cells, log);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

int recompute_profiles(const ExperimentConfig& c, std::ostream& log) {
  try {
    const std::string man_path = c.out_dir + "/manifest.json";
    json man = json::parse(read_bytes(man_path));
    if (!man.contains("cells") || man["cells"].empty())
      throw std::invalid_argument(man_path + ": no cells recorded");

    std::vector<RunTrace> traces;
    std::vector<BenchCell> bench;
    traces.reserve(man["cells"].size());
    for (const auto& cell : man["cells"]) {
      RunTrace t = read_trace_csv_file(
          c.out_dir + "/" + cell["trace"].get<std::string>(),
          cell["solver"].get<std::string>());
      t.completed = cell["completed"].get<bool>();
      traces.push_back(std::move(t));
    }
    std::size_t idx = 0;
    for (const auto& cell : man["cells"]) {
      bench.push_back({cell["instance"].get<std::string>(),
                       cell["solver"].get<std::string>(),
                       cell["n"].get<int>(), &traces[idx++]});
    }
    for (const auto& name : emit_profiles(bench, c.tols, c.out_dir)) {
      man["files"][name] = hash_of(read_bytes(c.out_dir + "/" + name));
      log << name << "\n";
    }
    man["tols"] = c.tols;
    write_bytes(man_path, man.dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

void list_problems(std::ostream& out, bool as_csv) {
  struct Row {
    std::string name;
    int n, m;
  };
  std::vector<Row> rows;
  for (int n : {5, 10, 15})
    rows.push_back({"toy" + std::to_string(n), n, n});
  for (const auto& p : residual_suite()) rows.push_back({p.name, p.n, p.m});
  if (as_csv) {
    out << "name,n,m\n";
    for (const auto& r : rows)
      out << r.name << ',' << r.n << ',' << r.m << '\n';
    return;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-28s %4s %4s\n", "name", "n", "m");
  out << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-28s %4d %4d\n", r.name.c_str(), r.n,
                  r.m);
    out << buf;
  }
  out << "(toy<n> accepts any n >= 1; agents follow the dimension)\n";
}

}  // namespace dds
