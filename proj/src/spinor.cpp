#include "entdist/spinor.hpp"

#include <cmath>
#include <stdexcept>

#include "entdist/stepper.hpp"

namespace entdist {

SpinorField::SpinorField(const Grid2D& g) : grid(g) {
  for (int s = 0; s < 2; ++s) {
    u[s].assign(grid.size(), 0.0);
    v[s].assign(grid.size(), 0.0);
    vp[s].assign(grid.size(), 0.0);
  }
}

double SpinorField::norm() const {
  double total = 0.0;
  for (int s = 0; s < 2; ++s) {
    const double* pu = u[s].data();
    const double* pv = v[s].data();
    const double* pw = vp[s].data();
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i)
      total += pu[i] * pu[i] + pv[i] * pw[i];
  }
  return total * grid.cell_area();
}

void SpinorField::renormalize() {
  const double p = norm();
  if (!(p > 0.0)) throw std::runtime_error("SpinorField: vanishing norm");
  const double inv = 1.0 / std::sqrt(p);
  for (int s = 0; s < 2; ++s) {
    for (double& x : u[s]) x *= inv;
    for (double& x : v[s]) x *= inv;
    for (double& x : vp[s]) x *= inv;
  }
}

void SpinorField::bootstrap_half_step(const std::vector<PotentialTerm>& terms,
                                      const PhysicalParams& pp, double dt) {
  if (bootstrapped)
    throw std::logic_error("SpinorField: already bootstrapped");
  std::vector<double> v0, v1;
  sample_scalar_potential(grid, terms, pp, 0.0, v0, v1);
  StepPotential pot;
  pot.a_down = v0.data();
  pot.a_up = v1.data();
  sample_pulses(grid, terms, pp, 0.0, pot.pulses);

  std::array<std::vector<double>, 2> su;
  apply_static_hamiltonian(*this, pot, pp, su);
  const double c = 0.5 * dt / pp.hbar;
  for (int s = 0; s < 2; ++s) {
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double im = v[s][i];
      v[s][i] = im - c * su[s][i];   // t + dt/2
      vp[s][i] = im + c * su[s][i];  // t - dt/2
    }
  }
  bootstrapped = true;
  staggered_dt = dt;
  renormalize();
}

SpinorField init_gaussian(const Grid2D& grid, double cx, double cy,
                          double sigma0, double kick_x, double kick_y,
                          cplx spin_down, cplx spin_up) {
  if (!(sigma0 >= 3.0 * std::max(grid.dx, grid.dy)))
    throw std::invalid_argument("init_gaussian: width under-resolved by the grid");
  if (cx <= grid.x0 || cx >= grid.x_max() || cy <= grid.y0 || cy >= grid.y_max())
    throw std::invalid_argument("init_gaussian: center outside the domain");
  const double snorm2 = std::norm(spin_down) + std::norm(spin_up);
  if (std::abs(snorm2 - 1.0) > 1e-9)
    throw std::invalid_argument("init_gaussian: spinor must be normalized");

  SpinorField f(grid);
  const double inv4s2 = 1.0 / (4.0 * sigma0 * sigma0);
  for (int j = 1; j < grid.ny - 1; ++j) {
    const double y = grid.y(j);
    for (int i = 1; i < grid.nx - 1; ++i) {
      const double x = grid.x(i);
      const std::size_t idx = grid.index(i, j);
      const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      const cplx base = std::exp(cplx(-r2 * inv4s2, kick_x * x + kick_y * y));
      const cplx amp0 = base * spin_down;
      const cplx amp1 = base * spin_up;
      f.u[0][idx] = amp0.real();
      f.v[0][idx] = f.vp[0][idx] = amp0.imag();
      f.u[1][idx] = amp1.real();
      f.v[1][idx] = f.vp[1][idx] = amp1.imag();
    }
  }
  f.renormalize();
  return f;
}

SpinorField init_gaussian(const Grid2D& grid, double cx, double cy,
                          double sigma0, double kick_x, double kick_y,
                          cplx spin_down, cplx spin_up,
                          const std::vector<PotentialTerm>& terms,
                          const PhysicalParams& pp, double dt) {
  SpinorField f =
      init_gaussian(grid, cx, cy, sigma0, kick_x, kick_y, spin_down, spin_up);
  f.bootstrap_half_step(terms, pp, dt);
  return f;
}

}  // namespace entdist
