#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bench.hpp"
#include "mkcut/exact.hpp"
#include "mkcut/graph.hpp"
#include "mkcut/partition.hpp"
#include "mkcut/search.hpp"
#include "mkcut/solution_io.hpp"

namespace mkcut::cli {

namespace {

namespace fs = std::filesystem;

// Raised for anything the user can fix: bad files, bad flag combinations.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchFlags {
  std::int64_t omega = 500;
  std::int64_t xi = 1000;
  double rho = 0.5;
  double gamma = 0.1;
  std::optional<double> phi;
  std::int64_t tenure_low = 3;
  std::optional<std::int64_t> tenure_high;
  std::optional<std::int64_t> max_iterations;
  std::string descent = "sequential";
};

void add_search_flags(CLI::App* app, SearchFlags& f) {
  app->add_option("--omega", f.omega, "Max diversified moves per phase")->check(CLI::PositiveNumber);
  app->add_option("--xi", f.xi, "Non-improving rounds before perturbation")->check(CLI::PositiveNumber);
  app->add_option("--rho", f.rho, "Probability of the tabu single-transfer operator")->check(CLI::Range(0.0, 1.0));
  app->add_option("--gamma", f.gamma, "Perturbation strength as a fraction of n")->check(CLI::Range(0.0, 1.0));
  app->add_option("--phi", f.phi, "Double-transfer edge sampling fraction (default 0.1/d)");
  app->add_option("--tenure-low", f.tenure_low, "Lower bound of the tabu tenure")->check(CLI::PositiveNumber);
  app->add_option("--tenure-high", f.tenure_high, "Upper bound of the tabu tenure (default n/10)");
  app->add_option("--max-iterations", f.max_iterations, "Stop after this many single transfers");
  app->add_option("--descent", f.descent, "Descent strategy: sequential, o1_only, union, random_mix");
}

SearchParams to_params(const SearchFlags& f) {
  SearchParams p;
  p.omega = f.omega;
  p.xi = f.xi;
  p.rho = f.rho;
  p.gamma_fraction = f.gamma;
  p.phi = f.phi;
  p.tenure_low = f.tenure_low;
  p.tenure_high = f.tenure_high;
  p.max_iterations = f.max_iterations;
  auto strategy = parse_descent_strategy(f.descent);
  if (!strategy) throw InputError("unknown descent strategy '" + f.descent + "'");
  p.descent = *strategy;
  return p;
}

Graph load_graph(const std::string& path) {
  try {
    return load_instance(path);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string instance;
  SubsetId k = 2;
  std::optional<double> time_limit;
  bool quick = false;
  std::uint64_t seed = 1;
  std::optional<Weight> target;
  std::string solution_out;
  std::string solution_text_out;
  std::string trace_out;
  SearchFlags search;
};

int do_solve(const SolveArgs& a, std::ostream& out) {
  Graph g = load_graph(a.instance);
  SearchParams params = to_params(a.search);
  params.k = a.k;
  params.seed = a.seed;
  params.target_objective = a.target;
  params.record_trace = !a.trace_out.empty();
  if (a.time_limit)
    params.time_limit = *a.time_limit;
  else if (a.quick)
    params.time_limit = 60.0;
  else if (params.max_iterations)
    params.time_limit = 0.0;
  else
    params.time_limit = bench::default_time_limit(g.num_vertices());
  try {
    validate(params, g);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  SearchResult r = run_moh(g, params);

  out << "instance: " << a.instance << '\n'
      << "n: " << g.num_vertices() << '\n'
      << "m: " << g.num_edges() << '\n'
      << "k: " << a.k << '\n'
      << "seed: " << a.seed << '\n'
      << "f_best: " << r.f_best << '\n'
      << "time_to_best: " << fixed(r.time_to_best, 3) << '\n'
      << "iterations: " << r.total_iterations << '\n'
      << "rounds: " << r.rounds << '\n'
      << "perturbations: " << r.perturbations << '\n'
      << "elapsed: " << fixed(r.elapsed, 3) << '\n';
  for (const auto& w : validate(g, r.best_partition).warnings) out << "warning: " << w << '\n';

  const auto& assign = r.best_partition.assignment();
  if (!a.solution_out.empty()) {
    auto f = open_output(a.solution_out);
    write_solution_json(f, Solution{stem_of(a.instance), a.k, r.f_best, {assign.begin(), assign.end()}});
  }
  if (!a.solution_text_out.empty()) {
    auto f = open_output(a.solution_text_out);
    write_solution_text(f, assign);
  }
  if (!a.trace_out.empty()) {
    auto f = open_output(a.trace_out);
    f << "elapsed_seconds,f_best\n";
    for (const TracePoint& p : r.trace) f << fixed(p.elapsed, 6) << ',' << p.f_best << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string dir;
  std::vector<std::string> instances;
  std::vector<SubsetId> ks{2};
  std::int64_t runs = 0;
  std::optional<double> time_limit;
  bool quick = false;
  std::uint64_t seed = 1;
  std::string ablate = "none";
  std::vector<double> rho_values{0.0, 0.5, 1.0};
  unsigned jobs = 1;
  std::string out;
  std::string json_out;
  std::string solutions_dir;
  bool no_timing = false;
  SearchFlags search;
};

std::string resolve_instance(const std::string& dir, const std::string& name) {
  if (dir.empty()) return name;
  for (const char* ext : {"", ".txt", ".rud", ".mc", ".graph"}) {
    fs::path p = fs::path(dir) / (name + ext);
    if (fs::is_regular_file(p)) return p.string();
  }
  return (fs::path(dir) / name).string();
}

int do_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  bench::BenchPlan plan;
  if (!a.instances.empty()) {
    for (const auto& name : a.instances) plan.instances.push_back({stem_of(name), resolve_instance(a.dir, name)});
  } else if (!a.dir.empty()) {
    if (!fs::is_directory(a.dir)) throw InputError("not a directory: " + a.dir);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(a.dir))
      if (entry.is_regular_file()) files.push_back(entry.path().string());
    std::sort(files.begin(), files.end(),
              [](const std::string& x, const std::string& y) { return bench::natural_less(stem_of(x), stem_of(y)); });
    for (const auto& f : files) plan.instances.push_back({stem_of(f), f});
  } else {
    throw InputError("bench needs --dir or --instances");
  }
  if (plan.instances.empty()) throw InputError("no instances found");

  plan.base = to_params(a.search);
  plan.runs = a.runs;
  plan.time_limit = a.time_limit;
  plan.quick = a.quick;
  plan.max_iterations = a.search.max_iterations;
  plan.base_seed = a.seed;
  plan.jobs = a.jobs;
  if (!a.solutions_dir.empty()) plan.solutions_dir = a.solutions_dir;

  for (std::size_t i = 0; i < plan.instances.size(); ++i) {
    for (SubsetId k : a.ks) {
      if (a.ablate == "descent") {
        for (auto s : {DescentStrategy::o1_only, DescentStrategy::union_best, DescentStrategy::random_mix,
                       DescentStrategy::sequential})
          plan.cells.push_back({i, k, s, plan.base.rho});
      } else if (a.ablate == "rho") {
        for (double rho : a.rho_values) {
          if (rho < 0.0 || rho > 1.0) throw InputError("rho values must lie in [0, 1]");
          plan.cells.push_back({i, k, plan.base.descent, rho});
        }
      } else {
        plan.cells.push_back({i, k, plan.base.descent, plan.base.rho});
      }
    }
  }

  bench::BenchReport report = bench::run_plan(plan);
  for (const auto& f : report.failures) err << "error: " << f << '\n';

  if (a.out.empty() || a.out == "-") {
    bench::write_csv(out, report, !a.no_timing);
  } else {
    auto f = open_output(a.out);
    bench::write_csv(f, report, !a.no_timing);
  }
  if (!a.json_out.empty()) {
    auto f = open_output(a.json_out);
    bench::write_json(f, report, !a.no_timing);
  }
  return report.failures.empty() ? kOk : kInputError;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string instance;
  std::string solution;
  std::optional<SubsetId> k;
  std::optional<Weight> objective;
};

int do_check(const CheckArgs& a, std::ostream& out) {
  Graph g = load_graph(a.instance);
  Solution sol;
  try {
    sol = load_solution(a.solution);
  } catch (const std::exception& e) {
    throw InputError(a.solution + ": " + e.what());
  }
  if (static_cast<VertexId>(sol.assign.size()) != g.num_vertices())
    throw InputError("assignment length " + std::to_string(sol.assign.size()) + " does not match n = " +
                     std::to_string(g.num_vertices()));

  SubsetId k = 0;
  if (sol.k)
    k = *sol.k;
  else if (a.k)
    k = *a.k;
  else
    k = sol.assign.empty() ? 1 : *std::max_element(sol.assign.begin(), sol.assign.end()) + 1;
  if (sol.k && a.k && *sol.k != *a.k)
    throw InputError("solution declares k = " + std::to_string(*sol.k) + " but --k is " + std::to_string(*a.k));

  Diagnostics d = validate_assignment(g, k, sol.assign);
  if (!d.ok()) {
    std::string msg = d.errors.front();
    throw InputError(msg);
  }
  const Weight f = evaluate(g, Partition(k, sol.assign));
  std::optional<Weight> claimed = sol.objective ? sol.objective : a.objective;

  for (const auto& w : d.warnings) out << "warning: " << w << '\n';
  if (claimed && *claimed != f) {
    out << "FAIL claimed objective " << *claimed << ", recomputed " << f << '\n';
    return kInputError;
  }
  out << "PASS objective " << f << (claimed ? "" : " (no objective claimed)") << '\n';
  return kOk;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
  std::string instance;
  SubsetId k = 2;
  VertexId max_n = 16;
  SubsetId max_k = 4;
  bool force = false;
};

int do_oracle(const OracleArgs& a, std::ostream& out) {
  Graph g = load_graph(a.instance);
  ExactLimits limits{a.max_n, a.max_k};
  if (a.force) limits = {std::numeric_limits<VertexId>::max(), std::numeric_limits<SubsetId>::max()};
  ExactResult r = [&] {
    try {
      return exact_max_kcut(g, a.k, limits);
    } catch (const ExactGuardError& e) {
      throw InputError(std::string("refusing exhaustive search: ") + e.what() + "; pass --force to override");
    }
  }();
  out << "optimum: " << r.optimum << '\n' << "witness:";
  for (SubsetId s : r.witness.assignment()) out << ' ' << s;
  out << '\n';
  return kOk;
}

// ---------------------------------------------------------------- stats

int do_stats(const std::string& instance, std::ostream& out) {
  Graph g = load_graph(instance);
  GraphStats s = graph_stats(g);
  out << "n: " << s.n << '\n'
      << "m: " << s.m << '\n'
      << "density: " << fixed(s.density, 6) << '\n';
  if (s.min_weight)
    out << "weights: [" << *s.min_weight << ", " << *s.max_weight << "]\n";
  else
    out << "weights: empty\n";
  out << "max_degree: " << s.max_degree << '\n' << "max_abs_incident_weight: " << s.max_abs_incident_weight << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Max-k-cut solver using a multiple operator local search", "mkcut"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one instance");
  s->add_option("--instance", solve.instance, "G-set edge-list file")->required();
  s->add_option("--k", solve.k, "Number of subsets")->check(CLI::Range(2, 1 << 20));
  s->add_option("--time-limit", solve.time_limit, "Wall-clock budget in seconds (default by size)");
  s->add_flag("--quick", solve.quick, "60 second budget");
  s->add_option("--seed", solve.seed, "Random seed");
  s->add_option("--target", solve.target, "Stop once this objective is reached");
  s->add_option("--solution-out", solve.solution_out, "Write the best solution as JSON");
  s->add_option("--solution-text-out", solve.solution_text_out, "Write the best assignment, one id per line");
  s->add_option("--trace-out", solve.trace_out, "Write improvements as CSV (elapsed_seconds,f_best)");
  add_search_flags(s, solve.search);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run the experiment grid and report statistics");
  b->add_option("--dir", bench.dir, "Instance directory");
  b->add_option("--instances", bench.instances, "Comma-separated instance names or paths")->delimiter(',');
  b->add_option("--k", bench.ks, "Comma-separated subset counts")->delimiter(',');
  b->add_option("--runs", bench.runs, "Runs per cell (default 20 for k=2, 10 otherwise)");
  b->add_option("--time-limit", bench.time_limit, "Seconds per run (default by size)");
  b->add_flag("--quick", bench.quick, "60 seconds per run");
  b->add_option("--seed", bench.seed, "Base seed; run r uses seed + r");
  b->add_option("--ablate", bench.ablate, "none, descent or rho")
      ->check(CLI::IsMember({"none", "descent", "rho"}));
  b->add_option("--rho-values", bench.rho_values, "Comma-separated rho values for --ablate rho")->delimiter(',');
  b->add_option("--jobs", bench.jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out, "CSV output path (default stdout)");
  b->add_option("--json-out", bench.json_out, "Also write a JSON report with per-run records");
  b->add_option("--solutions-dir", bench.solutions_dir, "Write each run's best solution here");
  b->add_flag("--no-timing", bench.no_timing, "Omit wall-clock columns (NA) for reproducible output");
  add_search_flags(b, bench.search);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Verify a solution file against an instance");
  c->add_option("--instance", check.instance, "G-set edge-list file")->required();
  c->add_option("--solution", check.solution, "Solution file (JSON or one id per line)")->required();
  c->add_option("--k", check.k, "Subset count for plain-text solutions");
  c->add_option("--objective", check.objective, "Claimed objective for plain-text solutions");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Exact optimum by exhaustive enumeration (tiny instances)");
  o->add_option("--instance", oracle.instance, "G-set edge-list file")->required();
  o->add_option("--k", oracle.k, "Number of subsets")->check(CLI::PositiveNumber);
  o->add_option("--max-n", oracle.max_n, "Refuse above this many vertices");
  o->add_option("--max-k", oracle.max_k, "Refuse above this many subsets");
  o->add_flag("--force", oracle.force, "Ignore the size guard");

  std::string stats_instance;
  auto* st = app.add_subcommand("stats", "Print graph statistics");
  st->add_option("--instance", stats_instance, "G-set edge-list file")->required();

  std::vector<const char*> argv{"mkcut"};
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*s) return do_solve(solve, out);
    if (*b) return do_bench(bench, out, err);
    if (*c) return do_check(check, out);
    if (*o) return do_oracle(oracle, out);
    if (*st) return do_stats(stats_instance, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace mkcut::cli
