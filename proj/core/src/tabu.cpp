#include "mkcut/tabu.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mkcut {

TabuList::TabuList(VertexId n, SubsetId k, std::int64_t tenure_low, std::int64_t tenure_high)
    : k_(k),
      low_(tenure_low),
      expiry_(static_cast<std::size_t>(n) * static_cast<std::size_t>(k), std::numeric_limits<std::int64_t>::min()) {
  if (tenure_low < 1) throw std::invalid_argument("tabu tenure lower bound must be positive");
  if (tenure_high < 0) tenure_high = n / 10;
  high_ = std::max(low_, tenure_high);
}

std::int64_t TabuList::record(VertexId v, SubsetId origin, std::int64_t iter, Rng& rng) {
  const std::int64_t tenure = rng.between(low_, high_);
  record_with_tenure(v, origin, iter, tenure);
  return tenure;
}

void TabuList::record_with_tenure(VertexId v, SubsetId origin, std::int64_t iter, std::int64_t tenure) {
  const std::size_t s = slot(v, origin);
  if (expiry_[s] == std::numeric_limits<std::int64_t>::min()) touched_.push_back(s);
  expiry_[s] = iter + tenure;
}

void TabuList::clear() {
  for (std::size_t s : touched_) expiry_[s] = std::numeric_limits<std::int64_t>::min();
  touched_.clear();
}

}  // namespace mkcut
