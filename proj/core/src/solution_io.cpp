#include "mkcut/solution_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

#include "json.hpp"

namespace mkcut {

void write_solution_json(std::ostream& out, const Solution& s) {
  nlohmann::ordered_json doc;
  doc["instance"] = s.instance;
  if (s.k) doc["k"] = *s.k;
  if (s.objective) doc["objective"] = *s.objective;
  doc["assign"] = s.assign;
  out << doc.dump() << '\n';
}

void write_solution_text(std::ostream& out, std::span<const SubsetId> assign) {
  for (SubsetId s : assign) out << s << '\n';
}

namespace {

Solution parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SolutionFormatError(std::string("invalid solution JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SolutionFormatError("solution JSON must be an object");
  if (!doc.contains("assign") || !doc["assign"].is_array())
    throw SolutionFormatError("solution JSON lacks an \"assign\" array");

  Solution s;
  try {
    if (doc.contains("instance")) s.instance = doc["instance"].get<std::string>();
    if (doc.contains("k")) s.k = doc["k"].get<SubsetId>();
    if (doc.contains("objective")) s.objective = doc["objective"].get<Weight>();
    for (const auto& v : doc["assign"]) {
      if (!v.is_number_integer()) throw SolutionFormatError("assignment entries must be integers");
      s.assign.push_back(v.get<SubsetId>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw SolutionFormatError(std::string("invalid solution field: ") + e.what());
  }
  return s;
}

Solution parse_text(const std::string& text) {
  Solution s;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++lineno;
    std::string_view line(text.data() + pos, end - pos);
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      auto last = line.find_last_not_of(" \t\r");
      std::string_view token = line.substr(first, last - first + 1);
      SubsetId id = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
      if (ec != std::errc() || ptr != token.data() + token.size())
        throw SolutionFormatError("invalid subset id at line " + std::to_string(lineno));
      s.assign.push_back(id);
    }
    pos = end + 1;
  }
  return s;
}

}  // namespace

Solution read_solution(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);
  return parse_text(text);
}

Solution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file '" + path + "'");
  return read_solution(in);
}

}  // namespace mkcut
