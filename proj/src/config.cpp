#include "pqgen/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "pqgen/errors.hpp"

namespace pqgen {
namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

template <typename T>
T get_as(const Json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

double get_number(const Json& j, const std::string& key) {
  check(j.is_number(), "config key '" + key + "' must be a number");
  return j.get<double>();
}

int get_int(const Json& j, const std::string& key) {
  check(j.is_number_integer(), "config key '" + key + "' must be an integer");
  return get_as<int>(j, key);
}

std::vector<std::string> get_words(const Json& j, const std::string& key) {
  check(j.is_array(), "config key '" + key + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& w : j) {
    check(w.is_string(), "config key '" + key + "' must be a list of strings");
    out.push_back(w.get<std::string>());
  }
  return out;
}

}  // namespace

void validate(const GenConfig& c) {
  check(c.top_n >= 1, "top_n must be >= 1");
  check(c.max_m >= 1, "max_m must be >= 1");
  check(c.tiny_area_frac > 0.0 && c.tiny_area_frac < 1.0, "tiny_area_frac must be in (0,1)");
  check(c.attr_conf_min >= 0.0 && c.attr_conf_min <= 1.0, "attr_conf_min must be in [0,1]");
  check(c.garment_iou_min >= 0.0 && c.garment_iou_min <= 1.0, "garment_iou_min must be in [0,1]");
  check(c.horiz_sep_min > 0.0 && c.horiz_sep_min < 1.0, "horiz_sep_min must be in (0,1)");
  check(c.vert_sep_min > 0.0 && c.vert_sep_min < 1.0, "vert_sep_min must be in (0,1)");
  check(c.depth_ratio_min > 1.0 && std::isfinite(c.depth_ratio_min),
        "depth_ratio_min must be > 1");
}

std::optional<DatasetPreset> find_preset(std::string_view name) {
  for (const auto& p : kPresets)
    if (p.name == name) return p;
  return std::nullopt;
}

void apply_preset(ToolConfig& cfg, std::string_view name) {
  auto p = find_preset(name);
  if (!p) throw ConfigError("unknown preset '" + std::string(name) + "'");
  cfg.preset = std::string(p->name);
  cfg.gen.top_n = p->top_n;
  cfg.gen.max_m = p->max_m;
  cfg.prompt = std::string(p->prompt);
}

void apply_json(ToolConfig& cfg, const Json& j) {
  check(j.is_object(), "config must be a JSON object");
  if (auto it = j.find("preset"); it != j.end() && !it->is_null()) {
    check(it->is_string(), "config key 'preset' must be a string");
    apply_preset(cfg, it->get<std::string>());
  }
  GenConfig& g = cfg.gen;
  for (const auto& [key, v] : j.items()) {
    if (key == "preset") continue;
    if (key == "top_n") g.top_n = get_int(v, key);
    else if (key == "max_m") g.max_m = get_int(v, key);
    else if (key == "tiny_area_frac") g.tiny_area_frac = get_number(v, key);
    else if (key == "attr_conf_min") g.attr_conf_min = get_number(v, key);
    else if (key == "garment_iou_min") g.garment_iou_min = get_number(v, key);
    else if (key == "horiz_sep_min") g.horiz_sep_min = get_number(v, key);
    else if (key == "vert_sep_min") g.vert_sep_min = get_number(v, key);
    else if (key == "depth_ratio_min") g.depth_ratio_min = get_number(v, key);
    else if (key == "person_classes") g.person_classes = get_words(v, key);
    else if (key == "garment_classes") g.garment_classes = get_words(v, key);
    else if (key == "seed") {
      check(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0),
            "config key 'seed' must be a non-negative integer");
      g.seed = v.get<std::uint64_t>();
    } else if (key == "prompt") {
      check(v.is_string(), "config key 'prompt' must be a string");
      cfg.prompt = v.get<std::string>();
    } else if (key == "prompt_templates") {
      check(v.is_object(), "config key 'prompt_templates' must be an object");
      for (const auto& [id, pattern] : v.items()) {
        check(pattern.is_string(), "prompt template '" + id + "' must be a string");
        cfg.prompts.add(PromptTemplate(id, pattern.get<std::string>()));
      }
    } else if (key == "surfaces") {
      check(v.is_object(), "config key 'surfaces' must be an object");
      for (const auto& [name, forms] : v.items()) {
        auto rel = parse_relation(name);
        check(rel.has_value(), "surfaces: unknown relation '" + name + "'");
        check(forms.is_array() && forms.size() == 2 && forms[0].is_string() &&
                  forms[1].is_string(),
              "surfaces." + name + " must be [prefix, postfix]");
        cfg.surfaces.set(*rel, {forms[0].get<std::string>(), forms[1].get<std::string>()});
      }
    } else if (key == "keywords") {
      cfg.keywords = get_words(v, key);
    } else if (key == "keyword_aliases") {
      check(v.is_object(), "config key 'keyword_aliases' must be an object");
      cfg.keyword_aliases.clear();
      for (const auto& [word, term] : v.items()) {
        check(term.is_string(), "keyword alias '" + word + "' must be a string");
        cfg.keyword_aliases[word] = term.get<std::string>();
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

Json load_config_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
}

ToolConfig load_config(const std::filesystem::path& path) {
  ToolConfig cfg;
  apply_json(cfg, load_config_json(path));
  return cfg;
}

ToolConfig assemble_config(std::string_view preset, const Json& file) {
  check(file.is_null() || file.is_object(), "config must be a JSON object");
  ToolConfig cfg;
  Json rest = file.is_null() ? Json::object() : file;
  if (!preset.empty()) {
    apply_preset(cfg, preset);
    rest.erase("preset");
  }
  apply_json(cfg, rest);
  return cfg;
}

Json to_json(const ToolConfig& cfg) {
  const GenConfig& g = cfg.gen;
  Json j;
  j["preset"] = cfg.preset ? Json(*cfg.preset) : Json(nullptr);
  j["top_n"] = g.top_n;
  j["max_m"] = g.max_m;
  j["tiny_area_frac"] = g.tiny_area_frac;
  j["attr_conf_min"] = g.attr_conf_min;
  j["garment_iou_min"] = g.garment_iou_min;
  j["horiz_sep_min"] = g.horiz_sep_min;
  j["vert_sep_min"] = g.vert_sep_min;
  j["depth_ratio_min"] = g.depth_ratio_min;
  j["person_classes"] = g.person_classes;
  j["garment_classes"] = g.garment_classes;
  j["seed"] = g.seed;
  j["prompt"] = cfg.prompt;
  Json templates = Json::object();
  for (const auto& id : cfg.prompts.ids()) templates[id] = cfg.prompts.get(id).pattern();
  j["prompt_templates"] = std::move(templates);
  Json surfaces = Json::object();
  for (Relation r : kAllRelations)
    surfaces[std::string(to_string(r))] = Json::array({cfg.surfaces[r].prefix, cfg.surfaces[r].postfix});
  j["surfaces"] = std::move(surfaces);
  j["keywords"] = cfg.keywords;
  j["keyword_aliases"] = cfg.keyword_aliases;
  return j;
}

void validate(const ToolConfig& cfg) {
  validate(cfg.gen);
  cfg.prompts.get(cfg.prompt);
  cfg.keyword_set();
}

}  // namespace pqgen
