#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace pqgen {

/// Spatial relation labels, in the fixed enumeration order used for
/// candidate ordering.
enum class Relation : std::uint8_t { left, middle, right, top, bottom, front, behind };

inline constexpr std::array<Relation, 7> kAllRelations = {
    Relation::left, Relation::middle, Relation::right, Relation::top,
    Relation::bottom, Relation::front, Relation::behind};

enum class Axis : std::uint8_t { horizontal, vertical, depth };

constexpr Axis axis_of(Relation r) {
  switch (r) {
    case Relation::left:
    case Relation::middle:
    case Relation::right: return Axis::horizontal;
    case Relation::top:
    case Relation::bottom: return Axis::vertical;
    case Relation::front:
    case Relation::behind: return Axis::depth;
  }
  return Axis::depth;
}

constexpr std::string_view to_string(Relation r) {
  constexpr std::array<std::string_view, 7> names = {"left", "middle", "right", "top",
                                                     "bottom", "front", "behind"};
  return names[static_cast<std::size_t>(r)];
}

constexpr std::optional<Relation> parse_relation(std::string_view s) {
  for (Relation r : kAllRelations)
    if (to_string(r) == s) return r;
  return std::nullopt;
}

enum class Slot : std::uint8_t { noun, attr, rela };

/// Query templates; letters give slot order (Noun/Attr/Rela).
enum class TemplateId : std::uint8_t { N, NA, AN, NR, RN, NAR, NRA, ANR, ARN, RNA, RAN };

inline constexpr std::array<TemplateId, 11> kAllTemplates = {
    TemplateId::N,   TemplateId::NA,  TemplateId::AN,  TemplateId::NR,
    TemplateId::RN,  TemplateId::NAR, TemplateId::NRA, TemplateId::ANR,
    TemplateId::ARN, TemplateId::RNA, TemplateId::RAN};

constexpr std::string_view to_string(TemplateId t) {
  constexpr std::array<std::string_view, 11> names = {"N",   "NA",  "AN",  "NR",  "RN", "NAR",
                                                      "NRA", "ANR", "ARN", "RNA", "RAN"};
  return names[static_cast<std::size_t>(t)];
}

constexpr std::optional<TemplateId> parse_template(std::string_view s) {
  for (TemplateId t : kAllTemplates)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

/// Slot sequence for a template, e.g. RNA -> {rela, noun, attr}.
std::span<const Slot> slots(TemplateId t);

bool uses_slot(TemplateId t, Slot s);

}  // namespace pqgen
