#pragma once

#include <cstddef>
#include <filesystem>

#include "biseld/eval/doa.hpp"

namespace biseld::eval {

/// Reads `frame_idx,class_id,x,y,z`; absent (frame, class) rows are zero
/// vectors. Throws biseld::IoError naming file and line for out-of-range
/// indices, duplicate rows or non-finite values.
DoaFrameGrid read_predictions(const std::filesystem::path& path, std::size_t frames,
                              std::size_t classes, double frame_hop_s);
/// Writes only the nonzero vectors.
void write_predictions(const std::filesystem::path& path, const DoaFrameGrid& grid);

}  // namespace biseld::eval
