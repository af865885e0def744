#include "biseld/dsp/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>

#include <fmt/format.h>

#include "biseld/error.hpp"

namespace biseld::dsp {

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

void write_f32_tensor(const std::filesystem::path& path, std::span<const double> values,
                      const std::vector<std::size_t>& shape,
                      const std::vector<std::string>& channels, const nlohmann::json& extra) {
  const std::size_t count =
      std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  if (count != values.size()) {
    throw Error(fmt::format("tensor shape holds {} values but {} were given", count,
                            values.size()));
  }
  std::vector<unsigned char> bytes;
  bytes.reserve(values.size() * 4);
  for (double v : values) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xFF));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));

  nlohmann::json sidecar = nlohmann::json::object();
  for (const auto& [key, value] : extra.items()) sidecar[key] = value;
  sidecar["shape"] = shape;
  sidecar["order"] = "row-major";
  sidecar["dtype"] = "f32le";
  sidecar["channels"] = channels;
  std::ofstream meta(sidecar_path(path));
  if (!meta) throw IoError(fmt::format("cannot write '{}'", sidecar_path(path).string()));
  meta << sidecar.dump(2) << '\n';
}

F32Tensor read_f32_tensor(const std::filesystem::path& path) {
  std::ifstream meta(sidecar_path(path));
  if (!meta) throw IoError(fmt::format("cannot open '{}'", sidecar_path(path).string()));
  F32Tensor tensor;
  try {
    tensor.sidecar = nlohmann::json::parse(meta);
    tensor.shape = tensor.sidecar.at("shape").get<std::vector<std::size_t>>();
    tensor.channels = tensor.sidecar.at("channels").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(fmt::format("bad sidecar '{}': {}", sidecar_path(path).string(), e.what()));
  }
  if (tensor.sidecar.value("dtype", "") != "f32le" ||
      tensor.sidecar.value("order", "") != "row-major") {
    throw IoError("sidecar must declare dtype f32le and row-major order");
  }
  const std::size_t count = std::accumulate(tensor.shape.begin(), tensor.shape.end(),
                                            std::size_t{1}, std::multiplies<>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::vector<unsigned char> bytes(count * 4);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw IoError(fmt::format("'{}' is shorter than its declared shape", path.string()));
  }
  tensor.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned char* p = bytes.data() + 4 * i;
    const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                               (static_cast<std::uint32_t>(p[2]) << 16) |
                               (static_cast<std::uint32_t>(p[3]) << 24);
    tensor.values[i] = std::bit_cast<float>(bits);
  }
  return tensor;
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& matrix) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  std::string line;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    line.clear();
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (c) line += ',';
      line += fmt::format("{:.9g}", matrix(r, c));
    }
    out << line << '\n';
  }
}

}  // namespace biseld::dsp
