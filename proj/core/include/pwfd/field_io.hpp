#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pwfd/grid.hpp"

namespace pwfd {

// Two CSV grids <stem>_re.csv and <stem>_im.csv, one row per z line.
void write_field_csv(const std::filesystem::path& stem, const Field& field);
Field read_field_csv(const std::filesystem::path& stem, const GridSpec& grid);

// <stem>.bin: little-endian interleaved (re, im) doubles, row-major;
// <stem>.json: {"nx", "nz", "h", "gamma", "x0", "z0"}.
void write_field_binary(const std::filesystem::path& stem, const Field& field);
Field read_field_binary(const std::filesystem::path& stem);

// Real-valued grid (e.g. a velocity model), one row per z line.
std::vector<double> read_real_grid_csv(const std::filesystem::path& path, int nx, int nz);

}  // namespace pwfd
