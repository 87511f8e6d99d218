#pragma once

// CSV and binary PGM emitters for spectrum grids and 1-D profiles.

#include <filesystem>
#include <string>

#include "spdc/spectra.hpp"

namespace spdc {

/// CSV layout: '#'-prefixed header rows carrying the metadata and the axis
/// definitions (min, max, step, count, units), then one line per grid row
/// (increasing y) of comma-separated values at 9 significant digits.
void write_grid_csv(const SpectrumGrid& grid, const std::filesystem::path& path);
std::string grid_to_csv(const SpectrumGrid& grid);

SpectrumGrid read_grid_csv(const std::filesystem::path& path);
SpectrumGrid grid_from_csv(const std::string& text);

/// 8-bit binary PGM (P5), values scaled to the grid maximum. The first image
/// row is the largest y. quantization_levels >= 2 maps values onto that many
/// evenly spaced gray levels; 0 keeps the full 0..255 range.
void write_grid_pgm(const SpectrumGrid& grid, const std::filesystem::path& path,
                    unsigned quantization_levels = 0);
std::string grid_to_pgm(const SpectrumGrid& grid, unsigned quantization_levels = 0);

void write_profile_csv(const Profile& profile, const GridMetadata& meta, Domain domain,
                       const std::string& coordinate, const std::filesystem::path& path);

}  // namespace spdc
