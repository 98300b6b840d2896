#pragma once

#include <filesystem>
#include <string>

#include "pmm/field.hpp"

namespace pmm::cli {

// Binary P5 graymaps with maxval 255 or 65535. Intensities map linearly to
// [0, 1]; values outside [0, 1] are clamped on write.
DenseField read_pgm(const std::filesystem::path& path);
DenseField parse_pgm(const std::string& bytes);

void write_pgm(const std::filesystem::path& path, const DenseField& image, int maxval = 65535);
std::string encode_pgm(const DenseField& image, int maxval = 65535);

}  // namespace pmm::cli
