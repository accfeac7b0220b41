#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqgen/ingest.hpp"
#include "pqgen/labeling.hpp"
#include "pqgen/vocabulary.hpp"

namespace pqgen {

/// Surface strings for one relation label. `prefix` is used when the
/// relation precedes the noun or sits mid-query ("right man",
/// "man right standing"); `postfix` when it ends the query ("man on the right").
struct RelationSurface {
  std::string prefix;
  std::string postfix;

  friend bool operator==(const RelationSurface&, const RelationSurface&) = default;
};

class SurfaceTable {
public:
  SurfaceTable();  // built-in forms

  const RelationSurface& operator[](Relation r) const {
    return forms_[static_cast<std::size_t>(r)];
  }
  /// Throws ConfigError if either form is empty.
  void set(Relation r, RelationSurface s);

  friend bool operator==(const SurfaceTable&, const SurfaceTable&) = default;

private:
  std::array<RelationSurface, kAllRelations.size()> forms_;
};

/// Fills the template's slots, joined by single spaces, lowercased.
/// Throws SlotMismatchError when a slot the template needs is missing.
std::string render(std::string_view noun, const std::optional<std::string>& attr,
                   std::optional<Relation> rela, TemplateId t, const SurfaceTable& surfaces);

/// Re-renders a pair from its stored components.
std::string render(const PseudoPair& p, const SurfaceTable& surfaces);

/// "<image_id>#<ordinal>", ordinal zero-padded to 4 digits.
std::string make_sample_id(std::string_view image_id, std::size_t ordinal);

/// Every query the templates allow for each proposal, in deterministic order:
/// proposal rank, template, attribute (classifier before garment), relation.
/// Sample ids carry the candidate's position in this list.
std::vector<PseudoPair> enumerate_candidates(std::string_view image_id,
                                             const std::vector<Proposal>& proposals,
                                             const SurfaceTable& surfaces);

/// Number of candidates a proposal with `attrs` attributes and `relas`
/// relations produces: 1 + 2a + 2r + 6ar.
std::size_t candidate_count(std::size_t attrs, std::size_t relas);

/// All candidates when there are at most max_m, otherwise a uniform subset of
/// size max_m drawn from the (seed, image_id) stream, kept in candidate order.
std::vector<PseudoPair> sample_pairs(const std::vector<PseudoPair>& candidates, int max_m,
                                     std::uint64_t seed, std::string_view image_id);

}  // namespace pqgen
