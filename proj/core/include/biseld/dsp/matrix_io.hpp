#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biseld/dsp/matrix.hpp"

namespace biseld::dsp {

/// Row-major little-endian float32 dump at `path` with a JSON sidecar at
/// `path + ".json"`:
///   {"shape":[...],"order":"row-major","dtype":"f32le","channels":[...]}
/// Keys from `extra` are merged into the sidecar.
void write_f32_tensor(const std::filesystem::path& path, std::span<const double> values,
                      const std::vector<std::size_t>& shape,
                      const std::vector<std::string>& channels,
                      const nlohmann::json& extra = nlohmann::json::object());

struct F32Tensor {
  std::vector<std::size_t> shape;
  std::vector<std::string> channels;
  std::vector<float> values;
  nlohmann::json sidecar;
};

F32Tensor read_f32_tensor(const std::filesystem::path& path);

/// Frames x columns CSV without a header, 9 significant digits.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& matrix);

std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace biseld::dsp
