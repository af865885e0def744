#include "cli/cli.hpp"

#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "biseld/btff/btff.hpp"
#include "biseld/error.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace biseld::cli {

namespace {

struct FeatureFlags {
  std::optional<int> sample_rate;
  std::optional<std::size_t> n_fft, hop, n_mels;
  std::optional<std::string> window;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
};

struct EvalFlags {
  std::optional<double> segment_s, angle_threshold, label_hop_s, duration_s, threshold;
  std::optional<std::string> granularity;
  std::optional<int> classes;
};

void apply(CliConfig& c, const FeatureFlags& f) {
  if (f.sample_rate) c.feature.sample_rate = *f.sample_rate;
  if (f.n_fft) c.feature.n_fft = *f.n_fft;
  if (f.hop) c.feature.hop = *f.hop;
  if (f.n_mels) c.feature.n_mels = *f.n_mels;
  if (f.window) c.feature.window = dsp::window_from_string(*f.window);
  if (f.seed) c.dataset.master_seed = *f.seed;
  if (f.jobs) c.jobs = *f.jobs;
}

void apply(CliConfig& c, const EvalFlags& f) {
  if (f.segment_s) c.eval.segment_s = *f.segment_s;
  if (f.angle_threshold) c.eval.angle_threshold_deg = *f.angle_threshold;
  if (f.label_hop_s) c.label_hop_s = *f.label_hop_s;
  if (f.duration_s) c.dataset.mixture_duration_s = *f.duration_s;
  if (f.threshold) c.activity_threshold = *f.threshold;
  if (f.granularity) c.eval.granularity = eval::granularity_from_string(*f.granularity);
  if (f.classes) c.dataset.classes = *f.classes;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binaural SELD toolkit: HRTF cues, BTFF features, dataset synthesis, metrics",
               "biseld"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  FeatureFlags ff;
  app.add_option("--config", config_path, "JSON config file (flags override its values)");
  app.add_option("--sample-rate", ff.sample_rate, "Sample rate in Hz");
  app.add_option("--n-fft", ff.n_fft, "STFT size");
  app.add_option("--hop", ff.hop, "STFT hop in samples");
  app.add_option("--n-mels", ff.n_mels, "Number of mel bands");
  app.add_option("--window", ff.window, "hann | hamming | rectangular");
  app.add_option("--seed", ff.seed, "Master seed");
  app.add_option("--jobs", ff.jobs, "Worker threads")->check(CLI::PositiveNumber);

  HrtfArgs hrtf_args;
  std::string hrtf_out, hrtf_manifest;
  std::optional<double> window_ms;
  auto* hrtf = app.add_subcommand("hrtf", "ITD/ILD tables and PRTF extrema for an HRIR set");
  auto* spherical =
      hrtf->add_flag("--spherical", hrtf_args.spherical, "Use the spherical-head model");
  auto* manifest_opt = hrtf->add_option("--manifest", hrtf_manifest, "HRIR manifest CSV");
  spherical->excludes(manifest_opt);
  hrtf->add_option("--out", hrtf_out, "Output directory")->required();
  hrtf->add_option("--window-ms", window_ms, "PRTF window length in ms");

  ExtractArgs extract_args;
  std::string extract_wav, extract_out, csv_channel;
  auto* extract = app.add_subcommand("extract", "8-channel BTFF of a stereo WAV");
  extract->add_option("wav", extract_wav, "Stereo input WAV")->required();
  extract->add_option("--out", extract_out, "Output tensor path")->required();
  auto* csv_opt = extract->add_option("--csv-channel", csv_channel,
                                      "Also write one channel (e.g. ITD) as CSV");

  SynthArgs synth_args;
  std::string synth_spec, synth_out, hrir_manifest_flag;
  auto* synth = app.add_subcommand("synth", "Generate a binaural dataset from a spec file");
  synth->add_option("spec", synth_spec, "Dataset spec JSON")->required();
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_flag("--dry-run", synth_args.dry_run, "Write recipes and labels only");
  auto* synth_hrir = synth->add_option("--hrir-manifest", hrir_manifest_flag,
                                       "HRIR manifest (default: spherical-head model)");

  EvalArgs eval_args;
  EvalFlags ef;
  std::string eval_pred, eval_ref, eval_report;
  auto* evalc = app.add_subcommand("eval", "Score predictions against reference labels");
  evalc->add_option("--pred", eval_pred, "Prediction CSV or directory")->required();
  evalc->add_option("--ref", eval_ref, "Label CSV or directory")->required();
  auto* report_opt = evalc->add_option("--out", eval_report, "Report JSON path");
  evalc->add_option("--segment-s", ef.segment_s, "Segment length in seconds");
  evalc->add_option("--angle-threshold", ef.angle_threshold, "Location gate in degrees");
  evalc->add_option("--granularity", ef.granularity, "segment | frame (LE/LR pairing)");
  evalc->add_option("--label-hop-s", ef.label_hop_s, "Prediction frame hop in seconds");
  evalc->add_option("--duration-s", ef.duration_s, "Length of each file in seconds");
  evalc->add_option("--threshold", ef.threshold, "Activity threshold on |v|");
  evalc->add_option("--classes", ef.classes, "Number of classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CliConfig config;
    if (config_path) {
      const std::filesystem::path p = *config_path;
      merge_config(config, read_json_file(p), p.parent_path());
    }
    if (synth->parsed()) {
      const std::filesystem::path p = synth_spec;
      if (!std::filesystem::exists(p)) {
        throw IoError(fmt::format("dataset spec '{}' does not exist", p.string()));
      }
      merge_config(config, read_json_file(p), p.parent_path());
      if (*synth_hrir) config.hrir_manifest = hrir_manifest_flag;
    }
    apply(config, ff);
    apply(config, ef);
    if (window_ms) config.prtf_window_ms = *window_ms;
    config.feature.validate();

    if (hrtf->parsed()) {
      if (!hrtf_args.spherical && hrtf_manifest.empty()) {
        err << "hrtf: one of --spherical or --manifest is required\n";
        return kExitUsage;
      }
      if (!hrtf_manifest.empty()) hrtf_args.manifest = hrtf_manifest;
      hrtf_args.out_dir = hrtf_out;
      cmd_hrtf(hrtf_args, config, out);
    } else if (extract->parsed()) {
      extract_args.wav = extract_wav;
      extract_args.out = extract_out;
      if (*csv_opt) {
        if (!btff::channel_from_name(csv_channel)) {
          err << fmt::format("extract: unknown channel '{}'\n", csv_channel);
          return kExitUsage;
        }
        extract_args.csv_channel = csv_channel;
      }
      cmd_extract(extract_args, config, out);
    } else if (synth->parsed()) {
      synth_args.spec_file = synth_spec;
      synth_args.out_dir = synth_out;
      cmd_synth(synth_args, config, out);
    } else if (evalc->parsed()) {
      eval_args.pred = eval_pred;
      eval_args.ref = eval_ref;
      if (*report_opt) eval_args.report = eval_report;
      cmd_eval(eval_args, config, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad configuration: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace biseld::cli
