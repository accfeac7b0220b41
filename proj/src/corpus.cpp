#include "pqgen/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "pqgen/errors.hpp"

namespace pqgen {

KeywordSet::KeywordSet()
    : KeywordSet({"left", "right", "middle", "center", "front", "behind", "top", "bottom"},
                 {{"center", "middle"}}) {}

KeywordSet::KeywordSet(std::vector<std::string> words, std::map<std::string, std::string> aliases)
    : words_(std::move(words)), aliases_(std::move(aliases)) {
  if (words_.empty()) throw ConfigError("keyword list is empty");
  for (const auto& w : words_) {
    if (w.empty()) throw ConfigError("keyword list contains an empty word");
    const auto term = *term_of(w);
    if (std::find(terms_.begin(), terms_.end(), term) == terms_.end()) terms_.push_back(term);
  }
}

std::optional<std::string> KeywordSet::term_of(std::string_view token) const {
  if (std::find(words_.begin(), words_.end(), token) == words_.end()) return std::nullopt;
  if (auto it = aliases_.find(std::string(token)); it != aliases_.end()) return it->second;
  return std::string(token);
}

std::vector<std::string> tokenize(std::string_view query) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : query) {
    if (std::isalnum(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

bool is_spatial(std::string_view query, const KeywordSet& keywords) {
  for (const auto& t : tokenize(query))
    if (keywords.term_of(t)) return true;
  return false;
}

void CorpusStats::add(std::string_view query, const KeywordSet& keywords) {
  ++total_queries;
  bool spatial = false;
  for (const auto& t : tokenize(query)) {
    if (auto term = keywords.term_of(t)) {
      ++per_term[*term];
      spatial = true;
    }
  }
  if (spatial) ++spatial_queries;
}

CorpusStats& CorpusStats::operator+=(const CorpusStats& other) {
  total_queries += other.total_queries;
  spatial_queries += other.spatial_queries;
  for (const auto& [term, n] : other.per_term) per_term[term] += n;
  return *this;
}

nlohmann::ordered_json to_json(const CorpusStats& s, const KeywordSet& keywords) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::object();
  for (const auto& term : keywords.terms()) {
    auto it = s.per_term.find(term);
    terms[term] = it == s.per_term.end() ? 0 : it->second;
  }
  nlohmann::ordered_json j;
  j["total_queries"] = s.total_queries;
  j["spatial_queries"] = s.spatial_queries;
  j["spatial_fraction"] = s.spatial_fraction();
  j["empty_corpus"] = s.empty();
  j["per_term"] = std::move(terms);
  return j;
}

std::string format_table(const CorpusStats& s, const KeywordSet& keywords) {
  std::size_t width = std::string("spatial_fraction").size();
  for (const auto& t : keywords.terms()) width = std::max(width, t.size());

  std::ostringstream os;
  char buf[128];
  auto row = [&](const std::string& name, const std::string& value) {
    std::snprintf(buf, sizeof buf, "%-*s  %10s\n", static_cast<int>(width), name.c_str(),
                  value.c_str());
    os << buf;
  };
  row("term", "count");
  for (const auto& t : keywords.terms()) {
    auto it = s.per_term.find(t);
    row(t, std::to_string(it == s.per_term.end() ? 0 : it->second));
  }
  row("total_queries", std::to_string(s.total_queries));
  row("spatial_queries", std::to_string(s.spatial_queries));
  if (s.empty()) {
    row("spatial_fraction", "undefined");
  } else {
    std::snprintf(buf, sizeof buf, "%.4f", s.spatial_fraction());
    row("spatial_fraction", buf);
  }
  return os.str();
}

}  // namespace pqgen
