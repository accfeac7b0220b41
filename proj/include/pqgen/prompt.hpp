#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pqgen {

inline constexpr std::string_view kQueryPlaceholder = "{query}";

/// Sentence pattern with exactly one `{query}` placeholder.
class PromptTemplate {
public:
  /// Throws ConfigError unless `pattern` contains the placeholder exactly once.
  PromptTemplate(std::string id, std::string pattern);

  const std::string& id() const noexcept { return id_; }
  const std::string& pattern() const noexcept { return pattern_; }

  friend bool operator==(const PromptTemplate&, const PromptTemplate&) = default;

private:
  std::string id_;
  std::string pattern_;
  std::size_t slot_;
};

/// Substitutes `query` verbatim for the placeholder. Throws
/// std::invalid_argument for an empty query.
std::string apply_prompt(std::string_view query, const PromptTemplate& t);

/// Named templates: `none`, `find_region`, `which_region`, plus any loaded
/// from configuration.
class PromptRegistry {
public:
  PromptRegistry();

  void add(PromptTemplate t);
  const PromptTemplate& get(const std::string& id) const;  ///< throws ConfigError
  bool contains(const std::string& id) const { return templates_.count(id) != 0; }
  std::vector<std::string> ids() const;

  friend bool operator==(const PromptRegistry&, const PromptRegistry&) = default;

private:
  std::map<std::string, PromptTemplate> templates_;
};

}  // namespace pqgen
