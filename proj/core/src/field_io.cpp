#include "pwfd/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "pwfd/errors.hpp"

namespace pwfd {
namespace {

namespace fs = std::filesystem;

fs::path with_suffix(const fs::path& stem, const std::string& suffix) {
  return fs::path(stem.string() + suffix);
}

std::ofstream open_out(const fs::path& p, std::ios::openmode mode = std::ios::out) {
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, mode);
  if (!out) throw IoError("cannot open " + p.string() + " for writing");
  return out;
}

std::ifstream open_in(const fs::path& p, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(p, mode);
  if (!in) throw IoError("cannot open " + p.string());
  return in;
}

void write_grid(const fs::path& p, const Field& f, bool imag) {
  auto out = open_out(p);
  out << std::setprecision(17);
  const GridSpec& g = f.grid();
  for (int n = 0; n < g.nz; ++n) {
    for (int m = 0; m < g.nx; ++m) {
      if (m) out << ',';
      out << (imag ? f(m, n).imag() : f(m, n).real());
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + p.string());
}

std::vector<double> read_grid(const fs::path& p, int nx, int nz) {
  auto in = open_in(p);
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(nx) * nz);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int cols = 0;
    while (std::getline(ss, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError("bad number '" + cell + "' in " + p.string());
      }
      ++cols;
    }
    if (cols != nx) {
      throw IoError(p.string() + ": row " + std::to_string(rows) + " has " +
                    std::to_string(cols) + " values, expected " + std::to_string(nx));
    }
    ++rows;
  }
  if (rows != nz) {
    throw IoError(p.string() + ": " + std::to_string(rows) + " rows, expected " +
                  std::to_string(nz));
  }
  return v;
}

static_assert(std::endian::native == std::endian::little, "binary field format assumes little-endian");

}  // namespace

void write_field_csv(const fs::path& stem, const Field& field) {
  write_grid(with_suffix(stem, "_re.csv"), field, false);
  write_grid(with_suffix(stem, "_im.csv"), field, true);
}

Field read_field_csv(const fs::path& stem, const GridSpec& grid) {
  const auto re = read_grid(with_suffix(stem, "_re.csv"), grid.nx, grid.nz);
  const auto im = read_grid(with_suffix(stem, "_im.csv"), grid.nx, grid.nz);
  Field f(grid);
  for (std::size_t i = 0; i < re.size(); ++i) f.values()[i] = {re[i], im[i]};
  return f;
}

void write_field_binary(const fs::path& stem, const Field& field) {
  const GridSpec& g = field.grid();
  {
    auto out = open_out(with_suffix(stem, ".bin"), std::ios::out | std::ios::binary);
    out.write(reinterpret_cast<const char*>(field.values().data()),
              static_cast<std::streamsize>(field.values().size() * sizeof(cplx)));
    if (!out) throw IoError("write failed for " + with_suffix(stem, ".bin").string());
  }
  nlohmann::json meta = {{"nx", g.nx}, {"nz", g.nz}, {"h", g.h},
                         {"gamma", g.gamma}, {"x0", g.x0}, {"z0", g.z0},
                         {"dtype", "complex128-le-interleaved"}};
  auto out = open_out(with_suffix(stem, ".json"));
  out << meta.dump(2) << '\n';
}

Field read_field_binary(const fs::path& stem) {
  nlohmann::json meta;
  try {
    auto in = open_in(with_suffix(stem, ".json"));
    meta = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad field sidecar: " + std::string(e.what()));
  }
  GridSpec g;
  try {
    g.nx = meta.at("nx").get<int>();
    g.nz = meta.at("nz").get<int>();
    g.h = meta.at("h").get<double>();
    g.gamma = meta.at("gamma").get<double>();
    g.x0 = meta.value("x0", 0.0);
    g.z0 = meta.value("z0", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad field sidecar: " + std::string(e.what()));
  }
  g.validate();
  Field f(g);
  const fs::path bin = with_suffix(stem, ".bin");
  const auto expected = f.values().size() * sizeof(cplx);
  std::error_code ec;
  if (fs::file_size(bin, ec) != expected || ec) {
    throw IoError(bin.string() + " size does not match " + std::to_string(g.nx) + "x" +
                  std::to_string(g.nz));
  }
  auto in = open_in(bin, std::ios::in | std::ios::binary);
  in.read(reinterpret_cast<char*>(f.values().data()), static_cast<std::streamsize>(expected));
  if (!in) throw IoError("read failed for " + bin.string());
  return f;
}

std::vector<double> read_real_grid_csv(const fs::path& path, int nx, int nz) {
  return read_grid(path, nx, nz);
}

}  // namespace pwfd
