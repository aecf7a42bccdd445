#pragma once

#include <optional>

#include "mkcut/gain_buckets.hpp"
#include "mkcut/rng.hpp"
#include "mkcut/tabu.hpp"
#include "mkcut/types.hpp"

namespace mkcut {

struct TransferStep {
  VertexId vertex;
  SubsetId origin;
  SubsetId target;

  friend bool operator==(const TransferStep&, const TransferStep&) = default;
};

/// A single transfer, or a double transfer of two distinct vertices. `gain`
/// is f(after) - f(before) relative to the state the move was built on.
struct Move {
  TransferStep first;
  std::optional<TransferStep> second;
  Weight gain = 0;

  bool is_double() const noexcept { return second.has_value(); }
  friend bool operator==(const Move&, const Move&) = default;
};

/// Interaction coefficient of a double transfer u: cu -> tu, v: cv -> tv
/// on the edge {u, v}. Throws std::invalid_argument if tu == cu or tv == cv.
int psi(SubsetId cu, SubsetId cv, SubsetId tu, SubsetId tv);

/// gain(u -> tu) + gain(v -> tv) + psi * w(u, v). Throws on u == v or a
/// target equal to the current subset.
Weight combined_gain(const SearchState& s, VertexId u, SubsetId tu, VertexId v, SubsetId tv);

/// Applies one or both transfers of m.
void apply_move(SearchState& s, const Move& m);

/// O1: the best single transfer if its gain is strictly positive.
std::optional<Move> op1_select(SearchState& s, Rng& rng);

/// O2: the best double transfer over edge endpoints with non-zero weight,
/// every target pair enumerated. When phi * |E| (rounded up) is below |E|
/// only that many uniformly sampled edges are examined; phi >= 1 scans all.
/// Returns a move only if its gain is strictly positive.
std::optional<Move> op2_select(const SearchState& s, Rng& rng, double phi);

/// O3: the best single transfer that is not tabu, or that aspirates
/// (objective + gain > f_best). Falls back to the unrestricted best transfer
/// if nothing is admissible. The gain may be negative.
Move op3_select(SearchState& s, const TabuList& tabu, Weight f_best, Rng& rng);

/// O4: draws an ordered pair of distinct target subsets (p, q) and returns
/// the best double transfer u -> p, v -> q with u != v. Empty when no such
/// pair of vertices exists.
std::optional<Move> op4_select(SearchState& s, Rng& rng);
std::optional<Move> op4_select_for(SearchState& s, SubsetId p, SubsetId q, Rng& rng);

/// O5: moves a uniformly random vertex to a uniformly random other subset.
Transfer op5_apply(SearchState& s, Rng& rng);

}  // namespace mkcut
