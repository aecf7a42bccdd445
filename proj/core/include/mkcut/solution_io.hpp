#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mkcut/types.hpp"

namespace mkcut {

/// On-disk solution. JSON files carry every field; the plain-text form holds
/// only the assignment, one 0-based subset id per line.
struct Solution {
  std::string instance;
  std::optional<SubsetId> k;
  std::optional<Weight> objective;
  std::vector<SubsetId> assign;
};

class SolutionFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"instance": ..., "k": ..., "objective": ..., "assign": [...]} on one line
/// followed by a newline. Output is a pure function of the input.
void write_solution_json(std::ostream& out, const Solution& s);
void write_solution_text(std::ostream& out, std::span<const SubsetId> assign);

/// Reads either format; a document whose first non-space byte is '{' is JSON.
Solution read_solution(std::istream& in);
Solution load_solution(const std::string& path);

}  // namespace mkcut
