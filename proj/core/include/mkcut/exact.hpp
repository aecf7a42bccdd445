#pragma once

#include <stdexcept>

#include "mkcut/graph.hpp"
#include "mkcut/partition.hpp"

namespace mkcut {

struct ExactResult {
  Weight optimum;
  Partition witness;
};

struct ExactLimits {
  VertexId max_vertices = 16;
  SubsetId max_subsets = 4;
};

class ExactGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive maximum k-cut. Enumerates assignments in restricted-growth
/// form (vertex 0 in subset 0, new labels introduced in increasing order),
/// which visits every partition into at most k subsets exactly once. Empty
/// subsets are allowed. Throws ExactGuardError when n or k exceed `limits`,
/// std::invalid_argument when k < 1.
ExactResult exact_max_kcut(const Graph& g, SubsetId k, ExactLimits limits = {});

}  // namespace mkcut
