#include "pqgen/prompt.hpp"

#include <stdexcept>

#include "pqgen/errors.hpp"

namespace pqgen {

PromptTemplate::PromptTemplate(std::string id, std::string pattern)
    : id_(std::move(id)), pattern_(std::move(pattern)) {
  slot_ = pattern_.find(kQueryPlaceholder);
  if (slot_ == std::string::npos)
    throw ConfigError("prompt template '" + id_ + "' has no {query} placeholder");
  if (pattern_.find(kQueryPlaceholder, slot_ + 1) != std::string::npos)
    throw ConfigError("prompt template '" + id_ + "' has more than one {query} placeholder");
}

std::string apply_prompt(std::string_view query, const PromptTemplate& t) {
  if (query.empty()) throw std::invalid_argument("apply_prompt: query is empty");
  const auto& pat = t.pattern();
  const auto at = pat.find(kQueryPlaceholder);
  std::string out;
  out.reserve(pat.size() - kQueryPlaceholder.size() + query.size());
  out.append(pat, 0, at);
  out.append(query);
  out.append(pat, at + kQueryPlaceholder.size());
  return out;
}

PromptRegistry::PromptRegistry() {
  add({"none", "{query}"});
  add({"find_region", "find the region that corresponds to the description {query}"});
  add({"which_region", "which region does the text {query} describe?"});
}

void PromptRegistry::add(PromptTemplate t) {
  const std::string id = t.id();
  templates_.insert_or_assign(id, std::move(t));
}

const PromptTemplate& PromptRegistry::get(const std::string& id) const {
  auto it = templates_.find(id);
  if (it == templates_.end()) throw ConfigError("unknown prompt template '" + id + "'");
  return it->second;
}

std::vector<std::string> PromptRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, t] : templates_) out.push_back(id);
  return out;
}

}  // namespace pqgen
