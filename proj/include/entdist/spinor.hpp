#pragma once

#include <array>
#include <complex>
#include <vector>

#include "entdist/grid.hpp"
#include "entdist/potential.hpp"

namespace entdist {

using cplx = std::complex<double>;

/// Two-component spinor wavefunction, stored as the staggered real/imaginary
/// pair of the leapfrog scheme: u at integer times t, v half a step ahead
/// (t + dt/2) and vp half a step behind (t - dt/2). Before the bootstrap both
/// v arrays hold Im(psi) at t.
///
/// Spin component 0 is |0> (down), component 1 is |1> (up).
class SpinorField {
 public:
  explicit SpinorField(const Grid2D& grid);

  Grid2D grid;
  double t = 0.0;
  std::array<std::vector<double>, 2> u, v, vp;
  bool bootstrapped = false;
  double staggered_dt = 0.0;

  /// Conserved staggered norm estimator: sum(u^2 + v * vp) dx dy.
  double norm() const;
  /// Probability density at a grid index (same estimator, both spins).
  double density(std::size_t idx) const {
    return u[0][idx] * u[0][idx] + v[0][idx] * vp[0][idx] +
           u[1][idx] * u[1][idx] + v[1][idx] * vp[1][idx];
  }
  /// Complex value of one spin component, symmetrized to time t.
  cplx value(int spin, std::size_t idx) const {
    return {u[spin][idx], 0.5 * (v[spin][idx] + vp[spin][idx])};
  }

  /// Rescales all arrays so norm() is exactly one.
  void renormalize();

  /// Offsets the v arrays by a half-step of the given potential so stepping
  /// with this dt is second-order consistent; rescales to unit norm.
  void bootstrap_half_step(const std::vector<PotentialTerm>& terms,
                           const PhysicalParams& pp, double dt);
};

/// Normalized Gaussian packet exp(-r^2 / 4 sigma0^2) * exp(i k.r) times the
/// given spinor. sigma0 must resolve the grid (>= 3 max(dx, dy)) and the
/// center must lie inside the domain.
SpinorField init_gaussian(const Grid2D& grid, double cx, double cy,
                          double sigma0, double kick_x, double kick_y,
                          cplx spin_down, cplx spin_up);

/// Same, plus the staggering bootstrap against the first-stage potential.
SpinorField init_gaussian(const Grid2D& grid, double cx, double cy,
                          double sigma0, double kick_x, double kick_y,
                          cplx spin_down, cplx spin_up,
                          const std::vector<PotentialTerm>& terms,
                          const PhysicalParams& pp, double dt);

}  // namespace entdist
