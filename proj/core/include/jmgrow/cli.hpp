#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "jmgrow/campaign.hpp"
#include "jmgrow/config_file.hpp"

namespace jmgrow {

struct RunOptions {
  std::filesystem::path config_path;
  std::optional<std::uint64_t> seed;                 // overrides the config's seed
  std::optional<int> threads;                        // overrides the config's threads
  std::optional<std::filesystem::path> out_dir;      // overrides the config's out
  bool dry_run = false;
};

// `run` subcommand. Returns 0 on success, 2 on config errors, 1 on runtime
// failures. Writes summary.json and table.csv into the output directory
// unless dry_run is set, in which case it only prints analytic predictions.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

// Self-check battery. FaultInjection::MeanFormula deliberately perturbs one
// closed form so the battery demonstrably catches an inconsistency.
enum class FaultInjection { None, MeanFormula };

int cmd_verify(int threads, FaultInjection fault, std::ostream& out);

// Deterministic flat table: "scale,replication,F" rows for every sample.
std::string flat_table_csv(const CampaignResult& result);

// Machine-readable summary. Deterministic given (config, seed) except for the
// timestamp, which the caller passes in.
std::string summary_json(const ExperimentFile& experiment, const CampaignResult& result,
                         const BracketReport& brackets, std::string_view timestamp);

// FNV-1a hash used to fingerprint configs in reports.
std::uint64_t fnv1a_hash(std::string_view text);

}  // namespace jmgrow
