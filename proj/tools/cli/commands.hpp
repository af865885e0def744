#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "cli/config.hpp"

namespace biseld::cli {

struct HrtfArgs {
  bool spherical = false;
  std::optional<std::filesystem::path> manifest;
  std::filesystem::path out_dir;
};

struct ExtractArgs {
  std::filesystem::path wav;
  std::filesystem::path out;
  std::optional<std::string> csv_channel;
};

struct SynthArgs {
  std::filesystem::path spec_file;
  std::filesystem::path out_dir;
  bool dry_run = false;
};

struct EvalArgs {
  std::filesystem::path pred;
  std::filesystem::path ref;
  std::optional<std::filesystem::path> report;
};

void cmd_hrtf(const HrtfArgs& args, const CliConfig& config, std::ostream& out);
void cmd_extract(const ExtractArgs& args, const CliConfig& config, std::ostream& out);
void cmd_synth(const SynthArgs& args, CliConfig config, std::ostream& out);
void cmd_eval(const EvalArgs& args, const CliConfig& config, std::ostream& out);

}  // namespace biseld::cli
