#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqgen/gen_config.hpp"
#include "pqgen/ingest.hpp"
#include "pqgen/vocabulary.hpp"

namespace pqgen {

enum class AttributeSource { classifier, garment };

struct AssignedAttribute {
  std::string label;
  AttributeSource source = AttributeSource::classifier;

  friend bool operator==(const AssignedAttribute&, const AssignedAttribute&) = default;
};

/// A salient object kept as a candidate referent.
struct Proposal {
  DetectedObject object;
  int rank = 0;  ///< 0 = highest detection confidence
  /// Classifier attribute first (if any), then garment attributes.
  std::vector<AssignedAttribute> attributes;
  /// At most one label per axis, kept in enumeration order.
  std::vector<Relation> relations;

  /// Attribute used for the {Attr} slot when only one is wanted.
  const AssignedAttribute* primary_attribute() const {
    return attributes.empty() ? nullptr : &attributes.front();
  }
  bool has_relation(Relation r) const;

  friend bool operator==(const Proposal&, const Proposal&) = default;
};

struct Selection {
  std::vector<Proposal> proposals;
  /// Garment objects; attribute donors for person proposals.
  std::vector<DetectedObject> garments;
};

bool is_garment(const DetectedObject& obj, const GenConfig& cfg);
bool is_person(const DetectedObject& obj, const GenConfig& cfg);

/// Drops tiny objects, splits off garments, sorts by confidence (ties: larger
/// area, then input order) and keeps the top_n.
Selection select_proposals(const DetectionRecord& rec, const GenConfig& cfg);

/// Sets the classifier attribute (argmax, if above attr_conf_min) and, for
/// person proposals, one garment attribute per overlapping garment noun.
void assign_attributes(std::vector<Proposal>& proposals,
                       const std::vector<DetectedObject>& garments, const GenConfig& cfg);

/// Same-noun groups get horizontal (left/middle/right), vertical (top/bottom)
/// and depth (front/behind) labels.
void infer_relations(std::vector<Proposal>& proposals, const GenConfig& cfg, int image_w,
                     int image_h);

/// select -> assign_attributes -> infer_relations.
std::vector<Proposal> label_image(const DetectionRecord& rec, const GenConfig& cfg);

}  // namespace pqgen
