#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pqgen {

/// Spatial keyword vocabulary. Aliases fold a surface word onto the term it
/// is counted under ("center" -> "middle").
class KeywordSet {
public:
  /// left, right, middle, center, front, behind, top, bottom; center -> middle.
  KeywordSet();
  /// Throws ConfigError when `words` is empty.
  explicit KeywordSet(std::vector<std::string> words,
                      std::map<std::string, std::string> aliases = {});

  /// Counting term for a lowercased token, if it is a keyword.
  std::optional<std::string> term_of(std::string_view token) const;
  /// Distinct counting terms, in first-seen order of `words`.
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  const std::vector<std::string>& words() const noexcept { return words_; }

private:
  std::vector<std::string> words_;
  std::map<std::string, std::string> aliases_;
  std::vector<std::string> terms_;
};

/// Lowercases and splits on every non-alphanumeric character.
std::vector<std::string> tokenize(std::string_view query);

bool is_spatial(std::string_view query, const KeywordSet& keywords);

struct CorpusStats {
  std::size_t total_queries = 0;
  std::size_t spatial_queries = 0;
  std::map<std::string, std::size_t> per_term;  ///< only terms that occurred

  bool empty() const noexcept { return total_queries == 0; }
  /// spatial/total, or 0 for an empty corpus (check empty()).
  double spatial_fraction() const noexcept {
    return total_queries ? static_cast<double>(spatial_queries) / total_queries : 0.0;
  }

  void add(std::string_view query, const KeywordSet& keywords);
  /// Field-wise sum; stats of disjoint shards merge to the stats of the union.
  CorpusStats& operator+=(const CorpusStats& other);

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

template <typename Range>
CorpusStats analyze_corpus(const Range& queries, const KeywordSet& keywords = {}) {
  CorpusStats s;
  for (const auto& q : queries) s.add(q, keywords);
  return s;
}

nlohmann::ordered_json to_json(const CorpusStats& s, const KeywordSet& keywords);

/// Aligned plain-text table: one row per term, then totals.
std::string format_table(const CorpusStats& s, const KeywordSet& keywords);

}  // namespace pqgen
