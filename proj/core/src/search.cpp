#include "mkcut/search.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mkcut {

std::string_view to_string(DescentStrategy s) {
  switch (s) {
    case DescentStrategy::sequential: return "O1+O2";
    case DescentStrategy::o1_only: return "O1";
    case DescentStrategy::union_best: return "O1uO2";
    case DescentStrategy::random_mix: return "rand(O1,O2)";
  }
  return "?";
}

std::optional<DescentStrategy> parse_descent_strategy(std::string_view name) {
  if (name == "sequential" || name == "O1+O2") return DescentStrategy::sequential;
  if (name == "o1_only" || name == "O1") return DescentStrategy::o1_only;
  if (name == "union" || name == "union_best" || name == "O1uO2") return DescentStrategy::union_best;
  if (name == "random_mix" || name == "rand(O1,O2)") return DescentStrategy::random_mix;
  return std::nullopt;
}

void validate(const SearchParams& p, const Graph& g) {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (p.k < 2) fail("k must be at least 2");
  if (p.k > g.num_vertices()) fail("k must not exceed the number of vertices");
  if (p.omega < 1) fail("omega must be at least 1");
  if (p.xi < 1) fail("xi must be at least 1");
  if (!(p.rho >= 0.0 && p.rho <= 1.0)) fail("rho must lie in [0, 1]");
  if (!(p.gamma_fraction > 0.0 && p.gamma_fraction <= 1.0)) fail("gamma fraction must lie in (0, 1]");
  if (p.phi && !(*p.phi > 0.0)) fail("phi must be positive");
  if (p.tenure_low < 1) fail("tabu tenure lower bound must be at least 1");
  if (p.tenure_high && *p.tenure_high < 1) fail("tabu tenure upper bound must be at least 1");
  if (p.max_iterations && *p.max_iterations < 0) fail("max iterations must be non-negative");
  if (!(p.time_limit > 0.0) && !p.max_iterations && !p.target_objective)
    fail("no stop criterion: set a time limit, an iteration cap or a target");
}

double effective_phi(const SearchParams& params, const Graph& g) {
  if (params.phi) return *params.phi;
  if (g.max_degree() == 0) return 1.0;
  return 0.1 / static_cast<double>(g.max_degree());
}

std::int64_t perturbation_strength(const SearchParams& params, VertexId n) {
  return std::max<std::int64_t>(1, std::llround(params.gamma_fraction * static_cast<double>(n)));
}

MohSearch::MohSearch(const Graph& g, SearchParams params)
    : graph_(&g),
      params_((validate(params, g), std::move(params))),
      rng_(params_.seed),
      start_(std::chrono::steady_clock::now()),
      state_(g, random_initial(g, params_.k, rng_)),
      tabu_(g.num_vertices(), params_.k, params_.tenure_low, params_.tenure_high.value_or(-1)),
      phi_(effective_phi(params_, g)),
      f_best_(state_.objective()),
      best_(state_.partition()) {
  if (params_.record_trace) trace_.push_back({0.0, f_best_});
}

MohSearch::MohSearch(const Graph& g, SearchParams params, Partition initial)
    : graph_(&g),
      params_((validate(params, g), std::move(params))),
      rng_(params_.seed),
      start_(std::chrono::steady_clock::now()),
      state_(g, std::move(initial)),
      tabu_(g.num_vertices(), params_.k, params_.tenure_low, params_.tenure_high.value_or(-1)),
      phi_(effective_phi(params_, g)),
      f_best_(state_.objective()),
      best_(state_.partition()) {
  if (state_.k() != params_.k) throw std::invalid_argument("initial partition has a different k");
  if (params_.record_trace) trace_.push_back({0.0, f_best_});
}

double MohSearch::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

bool MohSearch::should_stop(bool check_clock) {
  if (stopped_) return true;
  if (params_.target_objective && f_best_ >= *params_.target_objective) stopped_ = true;
  if (params_.max_iterations && state_.iteration() >= *params_.max_iterations) stopped_ = true;
  if (params_.time_limit > 0.0 && (check_clock || ++since_clock_check_ >= 64)) {
    since_clock_check_ = 0;
    if (elapsed() >= params_.time_limit) stopped_ = true;
  }
  return stopped_;
}

Partition MohSearch::best_partition() const {
  return best_pending_ ? state_.partition() : best_;
}

// The incumbent is copied out lazily: only when it is the best seen and the
// next move could leave it.
void MohSearch::save_best_if_leaving() {
  if (best_pending_) {
    best_ = state_.partition();
    best_pending_ = false;
  }
}

void MohSearch::note_progress() {
  if (state_.objective() <= f_best_) return;
  f_best_ = state_.objective();
  best_pending_ = true;
  time_to_best_ = elapsed();
  iterations_to_best_ = state_.iteration();
  if (params_.record_trace) trace_.push_back({time_to_best_, f_best_});
}

// False when the move would overrun the iteration cap; the search then stops
// without applying it.
bool MohSearch::commit(const Move& m) {
  if (params_.max_iterations && state_.iteration() + (m.is_double() ? 2 : 1) > *params_.max_iterations) {
    stopped_ = true;
    return false;
  }
  if (m.gain <= 0) save_best_if_leaving();
  apply_move(state_, m);
  note_progress();
  return true;
}

std::int64_t MohSearch::descent_phase() {
  std::int64_t moves = 0;
  auto o1 = [&] { return op1_select(state_, rng_); };
  auto o2 = [&] { return op2_select(state_, rng_, phi_); };

  switch (params_.descent) {
    case DescentStrategy::sequential:
      while (!should_stop()) {
        while (auto m = o1()) {
          if (!commit(*m)) return moves;
          ++moves;
          if (should_stop()) return moves;
        }
        auto m = o2();
        if (!m || !commit(*m)) break;
        ++moves;
      }
      break;
    case DescentStrategy::o1_only:
      while (!should_stop()) {
        auto m = o1();
        if (!m || !commit(*m)) break;
        ++moves;
      }
      break;
    case DescentStrategy::union_best:
      while (!should_stop()) {
        auto a = o1();
        auto b = o2();
        if (!a && !b) break;
        const Move& m = !b ? *a : !a ? *b : (a->gain != b->gain ? (a->gain > b->gain ? *a : *b)
                                                                  : (rng_.below(2) == 0 ? *a : *b));
        if (!commit(m)) break;
        ++moves;
      }
      break;
    case DescentStrategy::random_mix:
      while (!should_stop()) {
        const bool o1_first = rng_.below(2) == 0;
        auto m = o1_first ? o1() : o2();
        if (!m) m = o1_first ? o2() : o1();
        if (!m || !commit(*m)) break;
        ++moves;
      }
      break;
  }
  return moves;
}

std::int64_t MohSearch::diversified_phase(Weight f_lo) {
  std::int64_t c_div = 0;
  do {
    if (should_stop()) break;
    std::optional<Move> m;
    if (rng_.unit() < params_.rho) {
      m = op3_select(state_, tabu_, f_best_, rng_);
      ++o3_moves_;
    } else {
      m = op4_select(state_, rng_);
      if (m) {
        ++o4_moves_;
      } else {
        m = op3_select(state_, tabu_, f_best_, rng_);
        ++o3_moves_;
      }
    }
    if (!commit(*m)) break;
    // Recorded with the post-move iteration count, so the pair stays
    // forbidden for exactly the next λ single transfers.
    tabu_.record(m->first.vertex, m->first.origin, state_.iteration(), rng_);
    if (m->second) tabu_.record(m->second->vertex, m->second->origin, state_.iteration(), rng_);
    ++c_div;
  } while (!(c_div > params_.omega || state_.objective() > f_lo));
  tabu_.clear();
  return c_div;
}

void MohSearch::perturb() {
  save_best_if_leaving();
  const std::int64_t gamma = perturbation_strength(params_, graph_->num_vertices());
  for (std::int64_t i = 0; i < gamma; ++i) {
    if (params_.max_iterations && state_.iteration() >= *params_.max_iterations) break;
    op5_apply(state_, rng_);
    note_progress();
    save_best_if_leaving();
  }
}

SearchResult MohSearch::run() {
  std::int64_t rounds = 0;
  std::int64_t perturbations = 0;
  std::int64_t c_non_impv = 0;
  Weight last_checked = f_best_;

  while (!should_stop(true)) {
    descent_phase();
    ++rounds;
    if (should_stop()) break;
    const Weight f_lo = state_.objective();
    // f_best may also have moved during the previous diversified phase;
    // any improvement since the last check counts for this round.
    if (f_best_ > last_checked) {
      last_checked = f_best_;
      c_non_impv = 0;
    } else {
      ++c_non_impv;
    }
    diversified_phase(f_lo);
    if (c_non_impv > params_.xi) {
      perturb();
      ++perturbations;
      c_non_impv = 0;
    }
  }

  return SearchResult{
      .best_partition = best_partition(),
      .f_best = f_best_,
      .time_to_best = time_to_best_,
      .iterations_to_best = iterations_to_best_,
      .total_iterations = state_.iteration(),
      .rounds = rounds,
      .perturbations = perturbations,
      .elapsed = elapsed(),
      .trace = trace_,
  };
}

SearchResult run_moh(const Graph& g, const SearchParams& params) {
  MohSearch search(g, params);
  return search.run();
}

}  // namespace mkcut
