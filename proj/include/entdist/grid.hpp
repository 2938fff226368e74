#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entdist {

/// Uniform 2D grid with Dirichlet (zero) boundary on the outer frame.
struct Grid2D {
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  double x0 = 0.0, y0 = 0.0;  // coordinates of point (0, 0)

  Grid2D() = default;
  Grid2D(int nx_, int ny_, double dx_, double dy_, double x0_, double y0_)
      : nx(nx_), ny(ny_), dx(dx_), dy(dy_), x0(x0_), y0(y0_) {
    if (nx < 3 || ny < 3)
      throw std::invalid_argument("Grid2D: need at least 3 points per axis");
    if (!(dx > 0.0) || !(dy > 0.0))
      throw std::invalid_argument("Grid2D: spacings must be positive");
  }

  /// Grid spanning [-lx/2, lx/2] x [-ly/2, ly/2].
  static Grid2D centered(int nx, int ny, double lx, double ly) {
    return Grid2D(nx, ny, lx / (nx - 1), ly / (ny - 1), -lx / 2.0, -ly / 2.0);
  }

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
  double x_max() const { return x(nx - 1); }
  double y_max() const { return y(ny - 1); }
  std::size_t size() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }
  double cell_area() const { return dx * dy; }
};

struct Rect {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

  bool contains(double x, double y) const {
    return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
  }
  bool overlaps(const Rect& o) const {
    return xmin < o.xmax && o.xmin < xmax && ymin < o.ymax && o.ymin < ymax;
  }
  bool same_as(const Rect& o) const {
    return xmin == o.xmin && xmax == o.xmax && ymin == o.ymin && ymax == o.ymax;
  }
  static Rect centered(double cx, double cy, double half_x, double half_y) {
    return {cx - half_x, cx + half_x, cy - half_y, cy + half_y};
  }
};

struct Region {
  std::string name;
  Rect rect;
};

}  // namespace entdist
