#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mkcut/graph.hpp"
#include "mkcut/search.hpp"

namespace mkcut::bench {

/// One cell of the experiment grid: an instance solved R times under one
/// parameter setting.
struct Cell {
  std::size_t instance;  // index into BenchPlan::instances
  SubsetId k;
  DescentStrategy strategy;
  double rho;
};

struct Instance {
  std::string name;  // file stem, e.g. "G22"
  std::string path;
};

struct BenchPlan {
  std::vector<Instance> instances;
  std::vector<Cell> cells;
  std::int64_t runs = 0;              // 0: 20 runs for k = 2, 10 otherwise
  std::optional<double> time_limit;   // empty: size-dependent default tier
  bool quick = false;                 // 60 s per run unless time_limit is set
  std::optional<std::int64_t> max_iterations;
  std::uint64_t base_seed = 1;
  unsigned jobs = 1;
  SearchParams base;                  // omega, xi, gamma, ... shared by all cells
  std::optional<std::string> solutions_dir;
};

struct RunRecord {
  std::uint64_t seed = 0;
  Weight f_best = 0;
  double time_to_best = 0.0;
  std::int64_t iterations = 0;
  std::string solution_file;
};

struct CellReport {
  std::string instance;
  VertexId n = 0;
  std::size_t m = 0;
  SubsetId k = 0;
  DescentStrategy strategy = DescentStrategy::sequential;
  double rho = 0.0;
  std::vector<RunRecord> runs;
  Weight f_best = 0;
  double f_avg = 0.0;
  double std_dev = 0.0;
  double avg_time_to_best = 0.0;
};

struct BenchReport {
  std::vector<CellReport> cells;
  std::vector<std::string> failures;
};

/// Budget per run for an instance with n vertices: 1800 s below 5000
/// vertices, 7200 s up to 10000, 14400 s above.
double default_time_limit(VertexId n);

/// Fills f_best, f_avg, population standard deviation and mean time to best.
void summarize(CellReport& cell);

/// Runs every cell; the seed of run r is base_seed + r. Results are stored
/// in plan order regardless of how runs are scheduled across jobs.
BenchReport run_plan(const BenchPlan& plan);

/// Identifier used in CSV rows and file names.
std::string strategy_id(DescentStrategy s);

inline constexpr const char* kCsvHeader =
    "instance,n,m,k,strategy,rho,runs,f_best,f_avg,std,avg_time_to_best_seconds";

void write_csv(std::ostream& out, const BenchReport& report, bool include_timing = true);
void write_json(std::ostream& out, const BenchReport& report, bool include_timing = true);

/// Natural order: "G2" < "G10".
bool natural_less(const std::string& a, const std::string& b);

}  // namespace mkcut::bench
