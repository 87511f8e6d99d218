#include "spdc/grid_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "spdc/errors.hpp"

namespace spdc {

namespace {

std::string fmt9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* units(Domain d) { return d == Domain::wavevector ? "rad/m" : "m"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  while (begin < end && *begin == ' ') ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{}) throw IoError("malformed number '" + s + "' in grid CSV");
  return v;
}

}  // namespace

std::string grid_to_csv(const SpectrumGrid& grid) {
  grid.validate();
  std::ostringstream os;
  os << "# spdc-angular grid\n";
  os << "# scenario_hash," << grid.meta.scenario_hash << "\n";
  os << "# quantity," << grid.meta.quantity << "\n";
  os << "# photon," << grid.meta.photon << "\n";
  os << "# domain," << to_string(grid.domain) << "\n";
  for (const auto& [name, axis] : {std::pair{"x", grid.x}, std::pair{"y", grid.y}}) {
    os << "# " << name << "," << fmt17(axis.min) << "," << fmt17(axis.max()) << ","
       << fmt17(axis.step) << "," << axis.count << "," << units(grid.domain) << "\n";
  }
  for (std::size_t iy = 0; iy < grid.y.count; ++iy) {
    for (std::size_t ix = 0; ix < grid.x.count; ++ix) {
      if (ix) os << ',';
      os << fmt9(grid.at(ix, iy));
    }
    os << '\n';
  }
  return os.str();
}

void write_grid_csv(const SpectrumGrid& grid, const std::filesystem::path& path) {
  write_text(path, grid_to_csv(grid));
}

SpectrumGrid grid_from_csv(const std::string& text) {
  SpectrumGrid g;
  std::istringstream is(text);
  std::string line;
  bool have_x = false, have_y = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto parts = split(line.substr(line.find_first_not_of("# ")), ',');
      if (parts.empty()) continue;
      const std::string& key = parts[0];
      if (key == "scenario_hash" && parts.size() > 1) g.meta.scenario_hash = parts[1];
      if (key == "quantity" && parts.size() > 1) g.meta.quantity = parts[1];
      if (key == "photon" && parts.size() > 1) g.meta.photon = parts[1];
      if (key == "domain" && parts.size() > 1) {
        g.domain = parts[1] == "position" ? Domain::position : Domain::wavevector;
      }
      if ((key == "x" || key == "y") && parts.size() >= 5) {
        Axis a{parse_double(parts[1]), parse_double(parts[3]),
               static_cast<std::size_t>(parse_double(parts[4]))};
        (key == "x" ? g.x : g.y) = a;
        (key == "x" ? have_x : have_y) = true;
      }
      continue;
    }
    for (const auto& cell : split(line, ',')) g.values.push_back(parse_double(cell));
  }
  if (!have_x || !have_y) throw IoError("grid CSV lacks axis header rows");
  g.validate();
  return g;
}

SpectrumGrid read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return grid_from_csv(os.str());
}

std::string grid_to_pgm(const SpectrumGrid& grid, unsigned quantization_levels) {
  grid.validate();
  const double peak = grid.max_value();
  std::ostringstream os;
  os << "P5\n# spdc-angular " << grid.meta.quantity << " scenario_hash "
     << grid.meta.scenario_hash << "\n"
     << grid.x.count << " " << grid.y.count << "\n255\n";
  std::string pixels;
  pixels.reserve(grid.values.size());
  for (std::size_t row = 0; row < grid.y.count; ++row) {
    const std::size_t iy = grid.y.count - 1 - row;
    for (std::size_t ix = 0; ix < grid.x.count; ++ix) {
      const double f = peak > 0.0 ? grid.at(ix, iy) / peak : 0.0;
      double level = f * 255.0;
      if (quantization_levels >= 2) {
        const double q = static_cast<double>(quantization_levels);
        const double bin = std::min(q - 1.0, std::floor(f * q));
        level = bin * 255.0 / (q - 1.0);
      }
      pixels.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(level))));
    }
  }
  os << pixels;
  return os.str();
}

void write_grid_pgm(const SpectrumGrid& grid, const std::filesystem::path& path,
                    unsigned quantization_levels) {
  write_text(path, grid_to_pgm(grid, quantization_levels));
}

void write_profile_csv(const Profile& profile, const GridMetadata& meta, Domain domain,
                       const std::string& coordinate, const std::filesystem::path& path) {
  std::ostringstream os;
  os << "# spdc-angular profile\n";
  os << "# scenario_hash," << meta.scenario_hash << "\n";
  os << "# quantity," << meta.quantity << "\n";
  os << "# domain," << to_string(domain) << "\n";
  os << coordinate << "_" << units(domain) << ",value\n";
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    os << fmt9(profile.axis.at(i)) << "," << fmt9(profile.values[i]) << "\n";
  }
  write_text(path, os.str());
}

}  // namespace spdc
