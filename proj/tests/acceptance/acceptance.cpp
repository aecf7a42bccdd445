// Acceptance suite: one PASS/FAIL/BLOCKED line per criterion.
//
//   mkcut_acceptance [--criteria 1,2,...] [--gset-dir DIR] [--full-budget] [--jobs N]
//
// Exit status: 1 if any selected criterion failed, 77 if none failed but some
// could not run (missing benchmark files), 0 otherwise.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bench.hpp"
#include "cli.hpp"
#include "mkcut/exact.hpp"
#include "mkcut/gain_buckets.hpp"
#include "mkcut/moves.hpp"
#include "mkcut/search.hpp"
#include "mkcut/solution_io.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace mkcut;

namespace {

// Pinned thresholds.
constexpr double kC1MaxSeconds = 30.0;
constexpr double kC2MaxSeconds = 10.0;
constexpr double kC3MaxSeconds = 150.0;
constexpr double kC3Budget = 2.0;
constexpr int kC3Required = 48;
constexpr double kC4FullBudget = 1800.0;
constexpr double kC4FullRatio = 0.997;
constexpr double kC4QuickBudget = 300.0;
constexpr double kC4QuickRatio = 0.99;
constexpr int kC4Required = 8;
constexpr double kC5Budget = 300.0;
constexpr int kC5Runs = 10;
constexpr double kC7Budget = 2.0;
constexpr int kC7Required = 9;

enum class Status { pass, fail, blocked };

struct Verdict {
  Status status;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// ------------------------------------------------------------- criterion 1

// Gains recomputed from the edge list alone.
std::vector<Weight> gains_from_scratch(const Graph& g, std::span<const SubsetId> assign, SubsetId k) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<Weight> to(n * static_cast<std::size_t>(k), 0);
  for (const Edge& e : g.edges()) {
    to[static_cast<std::size_t>(e.u) * k + assign[e.v]] += e.w;
    to[static_cast<std::size_t>(e.v) * k + assign[e.u]] += e.w;
  }
  std::vector<Weight> gain(to.size(), 0);
  for (std::size_t v = 0; v < n; ++v)
    for (SubsetId x = 0; x < k; ++x)
      if (x != assign[v]) gain[v * k + x] = to[v * k + assign[v]] - to[v * k + x];
  return gain;
}

// Empty string when the state agrees with recomputation, else the first problem.
std::string compare_with_scratch(const SearchState& s) {
  const Graph& g = s.graph();
  const SubsetId k = s.k();
  auto assign = s.partition().assignment();
  if (s.objective() != testing::cut_value(g, assign)) return "objective";
  const auto expected = gains_from_scratch(g, assign, k);
  const GainBuckets& b = s.buckets();
  std::map<std::pair<SubsetId, std::int64_t>, int> expected_count;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (SubsetId x = 0; x < k; ++x) {
      if (x == assign[v]) {
        if (b.contains(v, x)) return "vertex listed under its own subset";
        continue;
      }
      const Weight want = expected[static_cast<std::size_t>(v) * k + x];
      if (s.gain(v, x) != want) return "gain of " + std::to_string(v) + "->" + std::to_string(x);
      if (b.cell_of(v, x) != want + b.offset()) return "bucket index";
      ++expected_count[{x, want + b.offset()}];
    }
  }
  for (SubsetId i = 0; i < k; ++i) {
    std::int64_t true_top = -1;
    for (std::int64_t c = 0; c < b.cells_per_array(); ++c) {
      int walked = 0;
      VertexId prev = GainBuckets::kNil;
      for (VertexId v = b.head(i, c); v != GainBuckets::kNil; v = b.next(v, i)) {
        if (b.prev(v, i) != prev) return "broken back link";
        if (b.cell_of(v, i) != c) return "node in wrong cell";
        prev = v;
        if (++walked > g.num_vertices()) return "cycle in bucket list";
      }
      auto it = expected_count.find({i, c});
      const int want = it == expected_count.end() ? 0 : it->second;
      if (walked != want || b.count(i, c) != want) return "bucket population";
      if (walked > 0) true_top = c;
    }
    if (b.gmax_marker(i) < true_top) return "gmax below the true top";
  }
  return {};
}

Verdict criterion1() {
  const auto t0 = Clock::now();
  int runs = 0;
  long transfers = 0;
  for (int i = 0; i < 200; ++i) {
    const VertexId n = 4 + i % 7;
    const double density = i % 2 == 0 ? 0.3 : 0.7;
    Graph g = testing::random_graph(n, density, -10, 10, 1000 + static_cast<std::uint64_t>(i));
    for (SubsetId k : {2, 3, 4}) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(i) * 7 + static_cast<std::uint64_t>(k));
      SearchState s(g, Partition(k, testing::random_assignment(n, k, rng)));
      std::uniform_int_distribution<VertexId> pick_v(0, n - 1);
      std::uniform_int_distribution<SubsetId> pick_shift(1, k - 1);
      for (int step = 0; step < 1000; ++step) {
        const VertexId v = pick_v(rng);
        s.apply_single_transfer(v, (s.partition()[v] + pick_shift(rng)) % k);
        ++transfers;
        if (auto problem = compare_with_scratch(s); !problem.empty()) {
          return {Status::fail, "graph " + std::to_string(i) + " k=" + std::to_string(k) + " step " +
                                    std::to_string(step) + ": " + problem};
        }
      }
      ++runs;
    }
  }
  const double secs = seconds_since(t0);
  const bool fast = secs < kC1MaxSeconds;
  return {fast ? Status::pass : Status::fail,
          std::to_string(runs) + " walks, " + std::to_string(transfers) + " transfers, 0 mismatches, " +
              fmt(secs) + " s (limit " + fmt(kC1MaxSeconds, 0) + " s)"};
}

// ------------------------------------------------------------- criterion 2

Verdict criterion2() {
  const auto t0 = Clock::now();
  long table_checks = 0;
  for (SubsetId cu = 0; cu < 5; ++cu)
    for (SubsetId cv = 0; cv < 5; ++cv)
      for (SubsetId tu = 0; tu < 5; ++tu)
        for (SubsetId tv = 0; tv < 5; ++tv) {
          if (tu == cu || tv == cv) continue;
          if (psi(cu, cv, tu, tv) != testing::psi_case_table(cu, cv, tu, tv))
            return {Status::fail, "psi disagrees with the case table at (" + std::to_string(cu) + "," +
                                      std::to_string(cv) + "," + std::to_string(tu) + "," +
                                      std::to_string(tv) + ")"};
          ++table_checks;
        }

  long moves = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Graph g = testing::complete(6, -10, 10, seed);
    for (SubsetId k : {3, 4}) {
      std::vector<SubsetId> assign(6, 0);
      while (true) {
        SearchState s(g, Partition(k, assign));
        const Weight before = testing::cut_value(g, assign);
        for (VertexId u = 0; u < 6; ++u)
          for (VertexId v = 0; v < 6; ++v) {
            if (u == v) continue;
            for (SubsetId tu = 0; tu < k; ++tu) {
              if (tu == assign[u]) continue;
              for (SubsetId tv = 0; tv < k; ++tv) {
                if (tv == assign[v]) continue;
                std::vector<SubsetId> after = assign;
                after[u] = tu;
                after[v] = tv;
                if (combined_gain(s, u, tu, v, tv) != testing::cut_value(g, after) - before)
                  return {Status::fail, "combined gain mismatch on K6 seed " + std::to_string(seed)};
                ++moves;
              }
            }
          }
        VertexId i = 0;
        while (i < 6 && assign[i] == k - 1) assign[i++] = 0;
        if (i == 6) break;
        ++assign[i];
      }
    }
  }
  const double secs = seconds_since(t0);
  return {secs < kC2MaxSeconds ? Status::pass : Status::fail,
          std::to_string(table_checks) + " coefficient cases, " + std::to_string(moves) +
              " double transfers on K6 (k=3,4), " + fmt(secs) + " s (limit " + fmt(kC2MaxSeconds, 0) + " s)"};
}

// ------------------------------------------------------------- criterion 3

Verdict criterion3() {
  const auto t0 = Clock::now();
  int matched = 0;
  std::vector<int> misses;
  for (int i = 0; i < 50; ++i) {
    const SubsetId k = i % 2 == 0 ? 2 : 3;
    const bool signed_weights = (i / 2) % 2 == 1;
    Graph g = testing::random_graph(10, 0.5, signed_weights ? -10 : 1, 10, 5000 + static_cast<std::uint64_t>(i));
    const Weight optimum = exact_max_kcut(g, k).optimum;
    if (optimum != testing::brute_optimum(g, k))
      return {Status::fail, "exact solver disagrees with plain enumeration on instance " + std::to_string(i)};
    SearchParams p;
    p.k = k;
    p.seed = static_cast<std::uint64_t>(i) + 1;
    p.time_limit = kC3Budget;
    p.target_objective = optimum;  // only ends the run early once matched
    if (run_moh(g, p).f_best == optimum)
      ++matched;
    else
      misses.push_back(i);
  }
  const double secs = seconds_since(t0);
  std::string detail = std::to_string(matched) + "/50 match the exact optimum (need " +
                       std::to_string(kC3Required) + "), " + fmt(secs) + " s";
  for (int m : misses) detail += " miss#" + std::to_string(m);
  return {matched >= kC3Required && secs < kC3MaxSeconds ? Status::pass : Status::fail, detail};
}

// ------------------------------------------------------------- criteria 4, 5

struct Reference {
  const char* name;
  Weight value;
};

constexpr Reference kReference[] = {
    {"G22", 13359}, {"G23", 13344}, {"G25", 13340}, {"G29", 3405}, {"G33", 1382},
    {"G35", 7687},  {"G36", 7680},  {"G37", 7691},  {"G38", 7688}, {"G40", 2400},
};

std::optional<std::string> find_instance(const std::string& dir, const std::string& name) {
  if (dir.empty()) return std::nullopt;
  for (const char* ext : {"", ".txt", ".rud", ".mc", ".graph"}) {
    fs::path p = fs::path(dir) / (name + ext);
    if (fs::is_regular_file(p)) return p.string();
  }
  return std::nullopt;
}

std::optional<Verdict> missing_files(const std::string& dir, const std::vector<std::string>& names,
                                     std::vector<bench::Instance>& found) {
  std::vector<std::string> missing;
  for (const auto& name : names) {
    if (auto p = find_instance(dir, name))
      found.push_back({name, *p});
    else
      missing.push_back(name);
  }
  if (missing.empty()) return std::nullopt;
  std::string detail = dir.empty() ? "no instance directory (set MKCUT_GSET_DIR or --gset-dir)"
                                   : "missing in " + dir + ":";
  if (!dir.empty())
    for (const auto& m : missing) detail += " " + m;
  return Verdict{Status::blocked, detail};
}

Verdict criterion4(const std::string& dir, bool full, unsigned jobs) {
  std::vector<std::string> names;
  for (const auto& r : kReference) names.push_back(r.name);
  bench::BenchPlan plan;
  if (auto blocked = missing_files(dir, names, plan.instances)) return *blocked;

  const double budget = full ? kC4FullBudget : kC4QuickBudget;
  const double ratio = full ? kC4FullRatio : kC4QuickRatio;
  plan.runs = 1;
  plan.time_limit = budget;
  plan.jobs = jobs;
  for (std::size_t i = 0; i < plan.instances.size(); ++i)
    plan.cells.push_back({i, 2, DescentStrategy::sequential, plan.base.rho});
  const bench::BenchReport rep = bench::run_plan(plan);
  if (!rep.failures.empty()) return {Status::fail, rep.failures.front()};

  int reached = 0;
  std::string detail;
  for (std::size_t i = 0; i < rep.cells.size(); ++i) {
    const Weight ref = kReference[i].value;
    const Weight got = rep.cells[i].f_best;
    const bool ok = static_cast<double>(got) >= ratio * static_cast<double>(ref);
    reached += ok;
    detail += std::string(" ") + kReference[i].name + "=" + std::to_string(got) + "/" + std::to_string(ref) +
              (ok ? "" : "(low)");
  }
  return {reached >= kC4Required ? Status::pass : Status::fail,
          std::to_string(reached) + "/10 reach " + fmt(ratio, 3) + "x reference within " + fmt(budget, 0) +
              " s (need " + std::to_string(kC4Required) + "):" + detail};
}

Verdict criterion5(const std::string& dir, unsigned jobs) {
  bench::BenchPlan plan;
  if (auto blocked = missing_files(dir, {"G22", "G40"}, plan.instances)) return *blocked;
  plan.runs = kC5Runs;
  plan.time_limit = kC5Budget;
  plan.jobs = jobs;
  for (std::size_t i = 0; i < plan.instances.size(); ++i) {
    plan.cells.push_back({i, 2, DescentStrategy::sequential, plan.base.rho});
    plan.cells.push_back({i, 2, DescentStrategy::o1_only, plan.base.rho});
  }
  const bench::BenchReport rep = bench::run_plan(plan);
  if (!rep.failures.empty()) return {Status::fail, rep.failures.front()};
  double seq = 0.0, o1 = 0.0;
  std::string detail;
  for (const auto& c : rep.cells) {
    (c.strategy == DescentStrategy::sequential ? seq : o1) += c.f_avg / 2.0;
    detail += " " + c.instance + "/" + bench::strategy_id(c.strategy) + "=" + fmt(c.f_avg);
  }
  return {seq >= o1 ? Status::pass : Status::fail,
          "mean f_avg O1+O2 " + fmt(seq) + " vs O1 " + fmt(o1) + ":" + detail};
}

// ------------------------------------------------------------- criterion 6

Verdict criterion6() {
  const auto t0 = Clock::now();
  Graph g = testing::random_graph(400, 0.05, -2, 9, 606);
  SearchParams p;
  p.k = 3;
  p.seed = 2024;
  p.time_limit = 0;
  p.max_iterations = 200000;
  p.xi = 50;
  auto solve = [&] {
    SearchResult r = run_moh(g, p);
    std::ostringstream json;
    const auto a = r.best_partition.assignment();
    write_solution_json(json, Solution{"det", p.k, r.f_best, {a.begin(), a.end()}});
    return std::tuple{r.f_best, r.total_iterations, json.str()};
  };
  const auto a = solve();
  const auto b = solve();
  if (a != b) return {Status::fail, "library runs differ"};

  // Same check through the command line, comparing the files it writes.
  const fs::path dir = fs::temp_directory_path() / ("mkcut_accept_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "g.txt");
    write_instance(f, g);
  }
  std::string files[2];
  std::string summaries[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path out = dir / ("s" + std::to_string(i) + ".json");
    std::ostringstream so, se;
    const int code = cli::run({"solve", "--instance", (dir / "g.txt").string(), "--k", "3", "--seed", "2024",
                               "--max-iterations", "200000", "--xi", "50", "--solution-out", out.string()},
                              so, se);
    if (code != cli::kOk) {
      fs::remove_all(dir);
      return {Status::fail, "solve failed: " + se.str()};
    }
    std::ifstream in(out, std::ios::binary);
    files[i].assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    // drop timing lines, keep the rest of the summary
    std::istringstream lines(so.str());
    for (std::string line; std::getline(lines, line);)
      if (!line.starts_with("time_to_best") && !line.starts_with("elapsed")) summaries[i] += line + '\n';
  }
  fs::remove_all(dir);
  if (files[0] != files[1]) return {Status::fail, "solution files differ"};
  if (summaries[0] != summaries[1]) return {Status::fail, "f_best or iteration count differ"};
  return {Status::pass, "f_best " + std::to_string(std::get<0>(a)) + ", " + std::to_string(std::get<1>(a)) +
                            " iterations, solution files byte-equal, " + fmt(seconds_since(t0)) + " s"};
}

// ------------------------------------------------------------- criterion 7

Verdict criterion7() {
  const auto t0 = Clock::now();
  int ok = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph g = testing::random_unit_graph(2000, 19990, 70000 + seed);
    Weight f[2];
    for (SubsetId k : {2, 3}) {
      SearchParams p;
      p.k = k;
      p.seed = seed;
      p.time_limit = kC7Budget;
      f[k - 2] = run_moh(g, p).f_best;
    }
    ok += f[1] >= f[0];
    detail += " " + std::to_string(f[0]) + "<=" + std::to_string(f[1]);
  }
  return {ok >= kC7Required ? Status::pass : Status::fail,
          std::to_string(ok) + "/10 seeds with f(k=3) >= f(k=2) at " + fmt(kC7Budget, 0) + " s each (need " +
              std::to_string(kC7Required) + "), " + fmt(seconds_since(t0)) + " s:" + detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for the max-k-cut solver", "mkcut_acceptance"};
  std::vector<int> selected{1, 2, 3, 4, 5, 6, 7};
  std::string gset_dir;
  if (const char* env = std::getenv("MKCUT_GSET_DIR")) gset_dir = env;
  bool full = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--criteria", selected, "Comma-separated criterion numbers")
      ->delimiter(',')
      ->check(CLI::Range(1, 7));
  app.add_option("--gset-dir", gset_dir, "Directory holding G22.txt ... G40.txt (default $MKCUT_GSET_DIR)");
  app.add_flag("--full-budget", full, "Criterion 4 at 1800 s per instance instead of 300 s");
  app.add_option("--jobs", jobs, "Concurrent runs for criteria 4 and 5")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::pair<std::string, std::function<Verdict()>>> criteria{
      {1, {"gain-algebra exactness", criterion1}},
      {2, {"double-transfer coefficient and gain equivalence", criterion2}},
      {3, {"agreement with the exact optimum", criterion3}},
      {4, {"reference values on ten benchmark graphs", [&] { return criterion4(gset_dir, full, jobs); }}},
      {5, {"O1+O2 descent not worse than O1 alone", [&] { return criterion5(gset_dir, jobs); }}},
      {6, {"determinism", criterion6}},
      {7, {"k=3 at least k=2", criterion7}},
  };

  std::set<int> order(selected.begin(), selected.end());
  bool failed = false, blocked = false;
  for (int id : order) {
    const auto& [title, fn] = criteria.at(id);
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {Status::fail, std::string("exception: ") + e.what()};
    }
    const char* tag = v.status == Status::pass ? "PASS" : v.status == Status::fail ? "FAIL" : "BLOCKED";
    std::cout << '[' << tag << "] C" << id << ' ' << title << ": " << v.detail << std::endl;
    failed |= v.status == Status::fail;
    blocked |= v.status == Status::blocked;
  }
  if (failed) return 1;
  return blocked ? 77 : 0;
}
