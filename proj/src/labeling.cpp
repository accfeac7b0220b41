#include "pqgen/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace pqgen {
namespace {

bool contains(const std::vector<std::string>& words, const std::string& w) {
  return std::find(words.begin(), words.end(), w) != words.end();
}

void add_relation(Proposal& p, Relation r) {
  if (!p.has_relation(r)) p.relations.push_back(r);
}

// Index of the first minimum / maximum of `key` over `members` (members are
// in rank order, so ties go to the better-ranked proposal).
template <typename Key>
std::size_t first_extreme(const std::vector<std::size_t>& members, Key key, bool want_max) {
  std::size_t best = members.front();
  for (std::size_t idx : members) {
    const double v = key(idx), b = key(best);
    if (want_max ? v > b : v < b) best = idx;
  }
  return best;
}

void label_axis(std::vector<Proposal>& props, const std::vector<std::size_t>& members,
                const std::vector<double>& coord, double sep, Relation low, Relation high,
                bool with_middle) {
  auto key = [&](std::size_t i) { return coord[i]; };
  const std::size_t lo = first_extreme(members, key, false);
  const std::size_t hi = first_extreme(members, key, true);
  const double spread = coord[hi] - coord[lo];
  if (!(spread >= sep) || lo == hi) return;
  add_relation(props[lo], low);
  add_relation(props[hi], high);
  if (!with_middle || members.size() < 3) return;
  const double midrange = (coord[lo] + coord[hi]) / 2.0;
  for (std::size_t idx : members) {
    if (idx == lo || idx == hi) continue;
    if (std::abs(coord[idx] - midrange) <= sep / 2.0) add_relation(props[idx], Relation::middle);
  }
}

}  // namespace

bool Proposal::has_relation(Relation r) const {
  return std::find(relations.begin(), relations.end(), r) != relations.end();
}

bool is_garment(const DetectedObject& obj, const GenConfig& cfg) {
  return obj.is_garment || contains(cfg.garment_classes, obj.noun);
}

bool is_person(const DetectedObject& obj, const GenConfig& cfg) {
  return contains(cfg.person_classes, obj.noun);
}

Selection select_proposals(const DetectionRecord& rec, const GenConfig& cfg) {
  Selection sel;
  const double image_area = static_cast<double>(rec.image_width) * rec.image_height;

  std::vector<const DetectedObject*> survivors;
  for (const auto& obj : rec.objects) {
    if (is_garment(obj, cfg)) {
      sel.garments.push_back(obj);
      continue;
    }
    if (area(obj.box) / image_area < cfg.tiny_area_frac) continue;
    survivors.push_back(&obj);
  }

  std::stable_sort(survivors.begin(), survivors.end(),
                   [](const DetectedObject* a, const DetectedObject* b) {
                     if (a->det_confidence != b->det_confidence)
                       return a->det_confidence > b->det_confidence;
                     return area(a->box) > area(b->box);
                   });

  const std::size_t keep = std::min<std::size_t>(survivors.size(), static_cast<std::size_t>(cfg.top_n));
  sel.proposals.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    Proposal p;
    p.object = *survivors[i];
    p.rank = static_cast<int>(i);
    sel.proposals.push_back(std::move(p));
  }
  return sel;
}

void assign_attributes(std::vector<Proposal>& proposals,
                       const std::vector<DetectedObject>& garments, const GenConfig& cfg) {
  for (auto& p : proposals) {
    p.attributes.clear();
    const auto& attrs = p.object.attributes;
    auto best = std::max_element(attrs.begin(), attrs.end(),
                                 [](const AttributeScore& a, const AttributeScore& b) {
                                   return a.confidence < b.confidence;
                                 });
    if (best != attrs.end() && best->confidence >= cfg.attr_conf_min)
      p.attributes.push_back({best->label, AttributeSource::classifier});

    if (!is_person(p.object, cfg)) continue;
    for (const auto& g : garments) {
      if (iou(p.object.box, g.box) < cfg.garment_iou_min) continue;
      const bool dup = std::any_of(p.attributes.begin(), p.attributes.end(),
                                   [&](const AssignedAttribute& a) { return a.label == g.noun; });
      if (!dup) p.attributes.push_back({g.noun, AttributeSource::garment});
    }
  }
}

void infer_relations(std::vector<Proposal>& proposals, const GenConfig& cfg, int image_w,
                     int image_h) {
  for (auto& p : proposals) p.relations.clear();

  // Members of each group stay in rank order.
  std::vector<std::size_t> order(proposals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return proposals[a].rank < proposals[b].rank;
  });
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i : order) groups[proposals[i].object.noun].push_back(i);

  std::vector<double> cx(proposals.size()), cy(proposals.size()), ar(proposals.size());
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    const auto m = metrics(proposals[i].object.box);
    cx[i] = m.center_x;
    cy[i] = m.center_y;
    ar[i] = m.area;
  }

  for (const auto& [noun, members] : groups) {
    if (members.size() < 2) continue;
    label_axis(proposals, members, cx, cfg.horiz_sep_min * image_w, Relation::left,
               Relation::right, true);
    label_axis(proposals, members, cy, cfg.vert_sep_min * image_h, Relation::top,
               Relation::bottom, false);

    auto key = [&](std::size_t i) { return ar[i]; };
    const std::size_t largest = first_extreme(members, key, true);
    const std::size_t smallest = first_extreme(members, key, false);
    if (largest != smallest && ar[largest] / ar[smallest] >= cfg.depth_ratio_min) {
      add_relation(proposals[largest], Relation::front);
      add_relation(proposals[smallest], Relation::behind);
    }
  }

  for (auto& p : proposals) std::sort(p.relations.begin(), p.relations.end());
}

std::vector<Proposal> label_image(const DetectionRecord& rec, const GenConfig& cfg) {
  auto sel = select_proposals(rec, cfg);
  assign_attributes(sel.proposals, sel.garments, cfg);
  infer_relations(sel.proposals, cfg, rec.image_width, rec.image_height);
  return std::move(sel.proposals);
}

}  // namespace pqgen
