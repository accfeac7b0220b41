#include "pqgen/querygen.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "pqgen/errors.hpp"
#include "pqgen/random.hpp"

namespace pqgen {
namespace {

using enum Slot;

constexpr Slot kN[] = {noun};
constexpr Slot kNA[] = {noun, attr};
constexpr Slot kAN[] = {attr, noun};
constexpr Slot kNR[] = {noun, rela};
constexpr Slot kRN[] = {rela, noun};
constexpr Slot kNAR[] = {noun, attr, rela};
constexpr Slot kNRA[] = {noun, rela, attr};
constexpr Slot kANR[] = {attr, noun, rela};
constexpr Slot kARN[] = {attr, rela, noun};
constexpr Slot kRNA[] = {rela, noun, attr};
constexpr Slot kRAN[] = {rela, attr, noun};

constexpr std::span<const Slot> kSlots[] = {kN,   kNA,  kAN,  kNR,  kRN, kNAR,
                                            kNRA, kANR, kARN, kRNA, kRAN};

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::span<const Slot> slots(TemplateId t) { return kSlots[static_cast<std::size_t>(t)]; }

bool uses_slot(TemplateId t, Slot s) {
  for (Slot x : slots(t))
    if (x == s) return true;
  return false;
}

SurfaceTable::SurfaceTable()
    : forms_{{
          {"left", "on the left"},
          {"center", "in the middle"},
          {"right", "on the right"},
          {"top", "on the top"},
          {"bottom", "on the bottom"},
          {"front", "in the front"},
          {"behind", "behind"},
      }} {}

void SurfaceTable::set(Relation r, RelationSurface s) {
  if (s.prefix.empty() || s.postfix.empty())
    throw ConfigError("relation surface for '" + std::string(to_string(r)) +
                      "' must have non-empty prefix and postfix forms");
  forms_[static_cast<std::size_t>(r)] = std::move(s);
}

std::string render(std::string_view noun, const std::optional<std::string>& attr,
                   std::optional<Relation> rela, TemplateId t, const SurfaceTable& surfaces) {
  const auto seq = slots(t);
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ' ';
    switch (seq[i]) {
      case Slot::noun:
        if (noun.empty())
          throw SlotMismatchError("template " + std::string(to_string(t)) + ": missing Noun");
        out += noun;
        break;
      case Slot::attr:
        if (!attr || attr->empty())
          throw SlotMismatchError("template " + std::string(to_string(t)) + ": missing Attr");
        out += *attr;
        break;
      case Slot::rela:
        if (!rela)
          throw SlotMismatchError("template " + std::string(to_string(t)) + ": missing Rela");
        out += (i + 1 == seq.size()) ? surfaces[*rela].postfix : surfaces[*rela].prefix;
        break;
    }
  }
  return lowercase(std::move(out));
}

std::string render(const PseudoPair& p, const SurfaceTable& surfaces) {
  return render(p.noun, p.attr, p.rela, p.template_id, surfaces);
}

std::string make_sample_id(std::string_view image_id, std::size_t ordinal) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "#%04zu", ordinal);
  return std::string(image_id) + buf;
}

std::size_t candidate_count(std::size_t attrs, std::size_t relas) {
  return 1 + 2 * attrs + 2 * relas + 6 * attrs * relas;
}

std::vector<PseudoPair> enumerate_candidates(std::string_view image_id,
                                             const std::vector<Proposal>& proposals,
                                             const SurfaceTable& surfaces) {
  std::vector<const Proposal*> by_rank;
  for (const auto& p : proposals) by_rank.push_back(&p);
  std::stable_sort(by_rank.begin(), by_rank.end(),
                   [](const Proposal* a, const Proposal* b) { return a->rank < b->rank; });

  std::vector<PseudoPair> out;
  auto emit = [&](const Proposal& p, TemplateId t, const std::optional<std::string>& attr,
                  std::optional<Relation> rela) {
    PseudoPair pair;
    pair.sample_id = make_sample_id(image_id, out.size());
    pair.image_id = std::string(image_id);
    pair.box = p.object.box;
    pair.noun = lowercase(p.object.noun);
    pair.attr = attr ? std::optional<std::string>(lowercase(*attr)) : std::nullopt;
    pair.rela = rela;
    pair.template_id = t;
    pair.query = render(pair.noun, pair.attr, pair.rela, t, surfaces);
    out.push_back(std::move(pair));
  };

  for (const Proposal* p : by_rank) {
    std::vector<Relation> relas = p->relations;
    std::sort(relas.begin(), relas.end());
    for (TemplateId t : kAllTemplates) {
      const bool a = uses_slot(t, Slot::attr);
      const bool r = uses_slot(t, Slot::rela);
      if (!a && !r) {
        emit(*p, t, std::nullopt, std::nullopt);
      } else if (a && !r) {
        for (const auto& at : p->attributes) emit(*p, t, at.label, std::nullopt);
      } else if (!a && r) {
        for (Relation rel : relas) emit(*p, t, std::nullopt, rel);
      } else {
        for (const auto& at : p->attributes)
          for (Relation rel : relas) emit(*p, t, at.label, rel);
      }
    }
  }
  return out;
}

std::vector<PseudoPair> sample_pairs(const std::vector<PseudoPair>& candidates, int max_m,
                                     std::uint64_t seed, std::string_view image_id) {
  if (max_m < 1) throw std::invalid_argument("sample_pairs: max_m must be >= 1");
  const auto cap = static_cast<std::size_t>(max_m);
  if (candidates.size() <= cap) return candidates;
  Rng rng(stream_seed(seed, image_id));
  std::vector<PseudoPair> out;
  out.reserve(cap);
  for (std::size_t i : sample_indices(candidates.size(), cap, rng)) out.push_back(candidates[i]);
  return out;
}

}  // namespace pqgen
