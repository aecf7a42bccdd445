#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mkcut/gain_buckets.hpp"
#include "mkcut/graph.hpp"
#include "mkcut/moves.hpp"
#include "mkcut/partition.hpp"
#include "mkcut/rng.hpp"
#include "mkcut/tabu.hpp"

namespace mkcut {

/// How the descent phase combines O1 and O2.
enum class DescentStrategy {
  sequential,  // O1 until stuck, then one O2 move, repeat (the default, "O1+O2")
  o1_only,     // O1 alone
  union_best,  // the better of the O1 and O2 candidates at every step
  random_mix,  // O1 or O2 with equal probability at every step
};

std::string_view to_string(DescentStrategy s);
/// Accepts the enum names as well as "O1+O2", "O1", "O1uO2" and "rand(O1,O2)".
std::optional<DescentStrategy> parse_descent_strategy(std::string_view name);

struct SearchParams {
  SubsetId k = 2;
  std::int64_t omega = 500;    // max diversified moves per phase
  std::int64_t xi = 1000;      // non-improving rounds before perturbation
  double rho = 0.5;            // probability of O3 in the diversified phase
  double gamma_fraction = 0.1; // perturbation strength as a fraction of n
  std::optional<double> phi;   // O2 edge sampling fraction, default 0.1 / d
  std::int64_t tenure_low = 3;
  std::optional<std::int64_t> tenure_high;  // default floor(n / 10)
  double time_limit = 1800.0;  // wall-clock seconds; <= 0 disables
  std::optional<Weight> target_objective;
  std::optional<std::int64_t> max_iterations;  // cap on applied single transfers
  std::uint64_t seed = 1;
  DescentStrategy descent = DescentStrategy::sequential;
  bool record_trace = false;
};

/// Throws std::invalid_argument describing the first invalid field.
void validate(const SearchParams& params, const Graph& g);

/// phi as used for g: the explicit value or 0.1 / max_degree.
double effective_phi(const SearchParams& params, const Graph& g);
/// Number of O5 moves per perturbation: max(1, round(gamma_fraction * n)).
std::int64_t perturbation_strength(const SearchParams& params, VertexId n);

struct TracePoint {
  double elapsed;
  Weight f_best;
};

struct SearchResult {
  Partition best_partition;
  Weight f_best = 0;
  double time_to_best = 0.0;
  std::int64_t iterations_to_best = 0;
  std::int64_t total_iterations = 0;
  std::int64_t rounds = 0;
  std::int64_t perturbations = 0;
  double elapsed = 0.0;
  std::vector<TracePoint> trace;
};

/// One run of the multiple operator heuristic on a single-owner state.
///
/// The phases are public so they can be driven one at a time; run() wires
/// them together. The best solution is tracked after every applied move,
/// not only at the end of a descent.
class MohSearch {
 public:
  /// Starts from random_initial(g, params.k, rng).
  MohSearch(const Graph& g, SearchParams params);
  MohSearch(const Graph& g, SearchParams params, Partition initial);

  /// Applies improving moves per params.descent until none remains (or the
  /// run must stop). Returns the number of moves applied.
  std::int64_t descent_phase();

  /// Tabu-guided O3/O4 moves until c_div > omega or f > f_lo. The tabu list
  /// is cleared on exit. Returns the number of moves applied.
  std::int64_t diversified_phase(Weight f_lo);

  /// perturbation_strength() random transfers.
  void perturb();

  /// Full loop until the time limit, target or iteration cap is hit.
  SearchResult run();

  const SearchState& state() const noexcept { return state_; }
  SearchState& state() noexcept { return state_; }
  const TabuList& tabu() const noexcept { return tabu_; }
  Weight f_best() const noexcept { return f_best_; }
  /// Snapshot of the best partition seen so far.
  Partition best_partition() const;
  Rng& rng() noexcept { return rng_; }
  const SearchParams& params() const noexcept { return params_; }

  /// Counts how O3/O4 were chosen by diversified phases so far.
  std::int64_t o3_moves() const noexcept { return o3_moves_; }
  std::int64_t o4_moves() const noexcept { return o4_moves_; }

 private:
  // The clock is read every 64 calls unless check_clock is set.
  bool should_stop(bool check_clock = false);
  double elapsed() const;
  bool commit(const Move& m);
  void note_progress();
  void save_best_if_leaving();

  const Graph* graph_;
  SearchParams params_;
  Rng rng_;
  std::chrono::steady_clock::time_point start_;
  SearchState state_;
  TabuList tabu_;
  double phi_;

  Weight f_best_;
  Partition best_;
  bool best_pending_ = false;
  double time_to_best_ = 0.0;
  std::int64_t iterations_to_best_ = 0;
  std::vector<TracePoint> trace_;
  std::int64_t o3_moves_ = 0;
  std::int64_t o4_moves_ = 0;
  std::int64_t since_clock_check_ = 0;
  bool stopped_ = false;
};

SearchResult run_moh(const Graph& g, const SearchParams& params);

}  // namespace mkcut
