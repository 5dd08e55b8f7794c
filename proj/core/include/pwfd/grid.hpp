#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pwfd {

using cplx = std::complex<double>;

// Uniform rectangular grid. Nodes are (x0 + m h, z0 + n gamma h),
// m in [0, nx), n in [0, nz).
struct GridSpec {
  int nx = 0;
  int nz = 0;
  double h = 1.0;
  double gamma = 1.0;
  double x0 = 0.0;
  double z0 = 0.0;

  double dx() const noexcept { return h; }
  double dz() const noexcept { return gamma * h; }
  double eta() const noexcept { return 1.0 + 1.0 / (gamma * gamma); }
  double x(double m) const noexcept { return x0 + m * h; }
  double z(double n) const noexcept { return z0 + n * gamma * h; }
  double x_max() const noexcept { return x(nx - 1); }
  double z_max() const noexcept { return z(nz - 1); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * nz; }
  std::size_t index(int m, int n) const noexcept {
    return static_cast<std::size_t>(n) * nx + m;
  }
  bool contains(int m, int n) const noexcept { return m >= 0 && m < nx && n >= 0 && n < nz; }

  // Throws DomainError on non-positive sizes or spacings.
  void validate() const;
};

struct NodeIndex {
  int m = 0;
  int n = 0;
  friend bool operator==(const NodeIndex&, const NodeIndex&) = default;
};

// Nearest node to a physical point (clamped to the grid).
NodeIndex nearest_node(const GridSpec& grid, double x, double z);

// Dense row-major 2D array, column index i fast.
template <class T>
class Array2D {
 public:
  Array2D() = default;
  Array2D(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * width_ + i]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(j) * width_ + i];
  }
  std::vector<T>& data() noexcept { return data_; }
  const std::vector<T>& data() const noexcept { return data_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

// Complex nodal field on a grid.
class Field {
 public:
  Field() = default;
  explicit Field(const GridSpec& grid) : grid_(grid), values_(grid.nx, grid.nz) {}

  const GridSpec& grid() const noexcept { return grid_; }
  cplx& operator()(int m, int n) { return values_(m, n); }
  const cplx& operator()(int m, int n) const { return values_(m, n); }
  std::vector<cplx>& values() noexcept { return values_.data(); }
  const std::vector<cplx>& values() const noexcept { return values_.data(); }

 private:
  GridSpec grid_;
  Array2D<cplx> values_;
};

}  // namespace pwfd
