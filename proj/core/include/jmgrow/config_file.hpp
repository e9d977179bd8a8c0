#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "jmgrow/campaign.hpp"

namespace jmgrow {

// A campaign plus where to write its reports; the unit a config file
// describes. Every key has a default, so the empty file is a valid config.
struct ExperimentFile {
  CampaignConfig campaign;
  std::filesystem::path out_dir = "out";

  bool operator==(const ExperimentFile&) const = default;
};

// Parse `key = value` text (# comments, blank lines allowed). Unknown keys,
// duplicate keys, malformed values, and model invariant violations are all
// collected into one ConfigError rather than reported one at a time.
ExperimentFile parse_config_text(std::string_view text, std::string_view origin);
ExperimentFile parse_config(const std::filesystem::path& path);

// Canonical text form; parse_config_text(serialize_config(e)) == e.
std::string serialize_config(const ExperimentFile& experiment);

}  // namespace jmgrow
