#include "bench.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mkcut/solution_io.hpp"

namespace mkcut::bench {

double default_time_limit(VertexId n) {
  if (n < 5000) return 1800.0;
  if (n <= 10000) return 7200.0;
  return 14400.0;
}

std::string strategy_id(DescentStrategy s) {
  switch (s) {
    case DescentStrategy::sequential: return "sequential";
    case DescentStrategy::o1_only: return "o1_only";
    case DescentStrategy::union_best: return "union";
    case DescentStrategy::random_mix: return "random_mix";
  }
  return "unknown";
}

void summarize(CellReport& cell) {
  if (cell.runs.empty()) return;
  const auto count = static_cast<double>(cell.runs.size());
  cell.f_best = cell.runs.front().f_best;
  double sum = 0.0;
  double time_sum = 0.0;
  for (const RunRecord& r : cell.runs) {
    cell.f_best = std::max(cell.f_best, r.f_best);
    sum += static_cast<double>(r.f_best);
    time_sum += r.time_to_best;
  }
  cell.f_avg = sum / count;
  double sq = 0.0;
  for (const RunRecord& r : cell.runs) {
    const double d = static_cast<double>(r.f_best) - cell.f_avg;
    sq += d * d;
  }
  cell.std_dev = std::sqrt(sq / count);
  cell.avg_time_to_best = time_sum / count;
}

namespace {

std::string format_fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string rho_label(double rho) {
  std::ostringstream s;
  s << rho;
  return s.str();
}

std::int64_t runs_for(const BenchPlan& plan, SubsetId k) {
  if (plan.runs > 0) return plan.runs;
  return k == 2 ? 20 : 10;
}

}  // namespace

BenchReport run_plan(const BenchPlan& plan) {
  BenchReport report;

  // Load each instance once; graphs are shared read-only across runs.
  std::vector<std::unique_ptr<Graph>> graphs(plan.instances.size());
  for (std::size_t i = 0; i < plan.instances.size(); ++i) {
    try {
      graphs[i] = std::make_unique<Graph>(load_instance(plan.instances[i].path));
    } catch (const std::exception& e) {
      report.failures.push_back(plan.instances[i].name + ": " + e.what());
    }
  }

  struct Task {
    std::size_t cell;
    std::size_t run;
  };
  std::vector<Task> tasks;
  std::vector<const Cell*> cell_of;  // definition behind each kept report
  for (const Cell& c : plan.cells) {
    const Graph* g = graphs[c.instance].get();
    if (!g) continue;
    CellReport rep;
    rep.instance = plan.instances[c.instance].name;
    rep.n = g->num_vertices();
    rep.m = g->num_edges();
    rep.k = c.k;
    rep.strategy = c.strategy;
    rep.rho = c.rho;
    if (c.k > g->num_vertices()) {
      report.failures.push_back(rep.instance + ": k = " + std::to_string(c.k) + " exceeds n");
      continue;
    }
    rep.runs.resize(static_cast<std::size_t>(runs_for(plan, c.k)));
    for (std::size_t r = 0; r < rep.runs.size(); ++r) tasks.push_back({report.cells.size(), r});
    report.cells.push_back(std::move(rep));
    cell_of.push_back(&c);
  }

  if (plan.solutions_dir) std::filesystem::create_directories(*plan.solutions_dir);

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::vector<std::string> run_failures(tasks.size());

  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Task& task = tasks[t];
      const Cell& cell = *cell_of[task.cell];
      const Graph& g = *graphs[cell.instance];
      CellReport& rep = report.cells[task.cell];
      RunRecord& rec = rep.runs[task.run];
      try {
        SearchParams params = plan.base;
        params.k = cell.k;
        params.rho = cell.rho;
        params.descent = cell.strategy;
        params.seed = plan.base_seed + task.run;
        params.max_iterations = plan.max_iterations;
        if (plan.time_limit) {
          params.time_limit = *plan.time_limit;
        } else if (plan.max_iterations) {
          params.time_limit = 0.0;
        } else {
          params.time_limit = plan.quick ? 60.0 : default_time_limit(g.num_vertices());
        }
        SearchResult result = run_moh(g, params);
        rec.seed = params.seed;
        rec.f_best = result.f_best;
        rec.time_to_best = result.time_to_best;
        rec.iterations = result.total_iterations;
        if (plan.solutions_dir) {
          std::ostringstream name;
          name << rep.instance << "_k" << cell.k << '_' << strategy_id(cell.strategy) << "_rho"
               << rho_label(cell.rho) << "_run" << task.run << ".json";
          auto path = std::filesystem::path(*plan.solutions_dir) / name.str();
          std::ofstream out(path);
          Solution sol{rep.instance, cell.k, result.f_best,
                       {result.best_partition.assignment().begin(), result.best_partition.assignment().end()}};
          write_solution_json(out, sol);
          rec.solution_file = path.string();
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        run_failures[t] = rep.instance + " run " + std::to_string(task.run) + ": " + e.what();
      }
    }
  };

  const unsigned jobs = std::max(1u, plan.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  for (auto& f : run_failures)
    if (!f.empty()) report.failures.push_back(std::move(f));
  for (CellReport& rep : report.cells) summarize(rep);
  return report;
}

void write_csv(std::ostream& out, const BenchReport& report, bool include_timing) {
  out << kCsvHeader << '\n';
  for (const CellReport& c : report.cells) {
    out << c.instance << ',' << c.n << ',' << c.m << ',' << c.k << ',' << strategy_id(c.strategy) << ','
        << rho_label(c.rho) << ',' << c.runs.size() << ',' << c.f_best << ',' << format_fixed(c.f_avg, 2)
        << ',' << format_fixed(c.std_dev, 2) << ','
        << (include_timing ? format_fixed(c.avg_time_to_best, 2) : std::string("NA")) << '\n';
  }
}

void write_json(std::ostream& out, const BenchReport& report, bool include_timing) {
  nlohmann::ordered_json doc;
  doc["cells"] = nlohmann::ordered_json::array();
  for (const CellReport& c : report.cells) {
    nlohmann::ordered_json cell;
    cell["instance"] = c.instance;
    cell["n"] = c.n;
    cell["m"] = c.m;
    cell["k"] = c.k;
    cell["strategy"] = strategy_id(c.strategy);
    cell["rho"] = c.rho;
    cell["f_best"] = c.f_best;
    cell["f_avg"] = c.f_avg;
    cell["std"] = c.std_dev;
    if (include_timing) cell["avg_time_to_best_seconds"] = c.avg_time_to_best;
    auto& runs = cell["runs"] = nlohmann::ordered_json::array();
    for (const RunRecord& r : c.runs) {
      nlohmann::ordered_json run;
      run["seed"] = r.seed;
      run["f_best"] = r.f_best;
      if (include_timing) run["time_to_best_seconds"] = r.time_to_best;
      run["iterations"] = r.iterations;
      if (!r.solution_file.empty()) run["solution"] = r.solution_file;
      runs.push_back(std::move(run));
    }
    doc["cells"].push_back(std::move(cell));
  }
  doc["failures"] = report.failures;
  out << doc.dump(2) << '\n';
}

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t ei = i;
      std::size_t ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      std::string_view da(a.data() + i, ei - i);
      std::string_view db(b.data() + j, ej - j);
      while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
      while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

}  // namespace mkcut::bench
