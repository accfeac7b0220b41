#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqgen/corpus.hpp"
#include "pqgen/gen_config.hpp"
#include "pqgen/ingest.hpp"
#include "pqgen/prompt.hpp"
#include "pqgen/querygen.hpp"

namespace pqgen {

/// Everything a subcommand can be configured with. Loaded from a JSON file
/// whose keys match the field names; precedence is
/// defaults < preset < file < command-line flags.
struct ToolConfig {
  std::optional<std::string> preset;
  GenConfig gen;
  SurfaceTable surfaces;
  PromptRegistry prompts;
  std::string prompt = "none";
  std::vector<std::string> keywords = {"left",  "right",  "middle", "center",
                                       "front", "behind", "top",    "bottom"};
  std::map<std::string, std::string> keyword_aliases = {{"center", "middle"}};

  KeywordSet keyword_set() const { return KeywordSet(keywords, keyword_aliases); }

  friend bool operator==(const ToolConfig&, const ToolConfig&) = default;
};

/// Sets top_n, max_m and the bound prompt. Throws ConfigError for unknown names.
void apply_preset(ToolConfig& cfg, std::string_view name);

/// Overlays the keys present in `j`. A "preset" key is applied first.
/// Unknown keys and out-of-range values throw ConfigError.
void apply_json(ToolConfig& cfg, const Json& j);

/// Parses a config file into JSON; throws ConfigError on malformed JSON.
Json load_config_json(const std::filesystem::path& path);

ToolConfig load_config(const std::filesystem::path& path);

/// Layers defaults, a preset (`preset` if non-empty, else the file's
/// "preset" key) and the file's values, in that order.
ToolConfig assemble_config(std::string_view preset, const Json& file);

/// Full snapshot; feeding it back through apply_json reproduces `cfg`.
Json to_json(const ToolConfig& cfg);

/// Range checks on the assembled config (GenConfig thresholds, prompt name).
void validate(const ToolConfig& cfg);

}  // namespace pqgen
