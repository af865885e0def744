#include <fmt/format.h>

#include "biseld/btff/btff.hpp"
#include "biseld/dsp/matrix_io.hpp"
#include "biseld/dsp/resample.hpp"
#include "biseld/dsp/wav_io.hpp"
#include "biseld/error.hpp"
#include "cli/commands.hpp"

namespace biseld::cli {

namespace fs = std::filesystem;

void cmd_extract(const ExtractArgs& args, const CliConfig& config, std::ostream& out) {
  if (!fs::exists(args.wav)) {
    throw IoError(fmt::format("input '{}' does not exist", args.wav.string()));
  }
  dsp::AudioClip clip = dsp::read_wav(args.wav);
  if (clip.num_channels() != 2) throw Error("binaural input required");
  if (clip.sample_rate() != config.feature.sample_rate) {
    clip = dsp::resample(clip, config.feature.sample_rate);
  }
  const btff::BtffTensor tensor = btff::extract_btff(clip, config.feature);

  if (args.out.has_parent_path()) fs::create_directories(args.out.parent_path());
  const std::vector<std::size_t> shape{btff::kNumChannels, tensor.frames(), tensor.bands()};
  nlohmann::json extra{{"source", args.wav.string()},
                       {"frame_hop_s", config.feature.hop_s()},
                       {"config", config.to_json()}};
  dsp::write_f32_tensor(args.out, tensor.flatten(), shape, btff::channel_names(), extra);
  out << fmt::format("wrote {} shape [{}, {}, {}]\n", args.out.string(), shape[0], shape[1],
                     shape[2]);

  if (args.csv_channel) {
    const auto channel = btff::channel_from_name(*args.csv_channel);
    if (!channel) throw IoError(fmt::format("unknown channel '{}'", *args.csv_channel));
    fs::path csv = args.out;
    csv.replace_extension();
    csv += "_" + *args.csv_channel + ".csv";
    dsp::write_matrix_csv(csv, tensor.channel(*channel));
    out << fmt::format("wrote {} ({} x {})\n", csv.string(), tensor.frames(), tensor.bands());
  }
}

}  // namespace biseld::cli
