#include "entdist/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entdist {

namespace {

// Interior-clipped index bounds of a rectangle (inclusive).
bool clip_rect(const Grid2D& g, const Rect& r, int& i0, int& i1, int& j0,
               int& j1) {
  i0 = std::max(1, static_cast<int>(std::ceil((r.xmin - g.x0) / g.dx)));
  i1 = std::min(g.nx - 2, static_cast<int>(std::floor((r.xmax - g.x0) / g.dx)));
  j0 = std::max(1, static_cast<int>(std::ceil((r.ymin - g.y0) / g.dy)));
  j1 = std::min(g.ny - 2, static_cast<int>(std::floor((r.ymax - g.y0) / g.dy)));
  return i0 <= i1 && j0 <= j1;
}

}  // namespace

void sample_pulses(const Grid2D& grid,
                   const std::vector<PotentialTerm>& terms,
                   const PhysicalParams& pp, double t,
                   std::vector<StepPotential::PulseSample>& out) {
  out.clear();
  for (const PotentialTerm& term : terms) {
    if (term.kind != PotentialKind::zeeman_pulse) continue;
    const double l = term.lambda(t);
    if (l == 0.0) continue;
    StepPotential::PulseSample s;
    Rect r = term.mask ? *term.mask
                       : Rect{grid.x0, grid.x_max(), grid.y0, grid.y_max()};
    if (!clip_rect(grid, r, s.i0, s.i1, s.j0, s.j1)) continue;
    // W = -hbar * lambda * sigma_axis.
    const double w = -pp.hbar * l;
    s.d0 = s.d1 = s.off_re = s.off_im = 0.0;
    switch (term.axis) {
      case PulseAxis::x:
        s.off_re = w;
        break;
      case PulseAxis::y:
        s.off_im = -w;  // entry (0,1) of sigma_y is -i
        break;
      case PulseAxis::z:
        s.d0 = w;
        s.d1 = -w;
        break;
    }
    out.push_back(s);
  }
}

void advance_real(SpinorField& f, const StepPotential& pot, double dt,
                  const PhysicalParams& pp) {
  const Grid2D& g = f.grid;
  const int nx = g.nx, ny = g.ny;
  const double cv = dt / pp.hbar;
  const double kx = pp.hbar * dt / (2.0 * pp.mass * g.dx * g.dx);
  const double ky = pp.hbar * dt / (2.0 * pp.mass * g.dy * g.dy);

  // Spin-coupling terms first, from pre-update values (the scalar pass below
  // only reads v, so ordering keeps every term evaluated at the old time).
  for (const auto& p : pot.pulses) {
    for (int j = p.j0; j <= p.j1; ++j) {
      std::size_t idx = g.index(p.i0, j);
      for (int i = p.i0; i <= p.i1; ++i, ++idx) {
        const double u0 = f.u[0][idx], u1 = f.u[1][idx];
        const double v0 = f.v[0][idx], v1 = f.v[1][idx];
        // du_i = (dt/hbar) [ Im(W)_{ij} u_j + Re(W)_{ij} v_j ]
        f.u[0][idx] += cv * (p.off_im * u1 + p.d0 * v0 + p.off_re * v1);
        f.u[1][idx] += cv * (-p.off_im * u0 + p.off_re * v0 + p.d1 * v1);
      }
    }
  }

  for (int s = 0; s < 2; ++s) {
    double* pu = f.u[s].data();
    const double* pv = f.v[s].data();
    const double* va = (s == 0) ? pot.a_down : pot.a_up;
    const double* vb = (s == 0) ? pot.b_down : pot.b_up;
    const double wa = pot.wa, wb = pot.wb;
    for (int j = 1; j < ny - 1; ++j) {
      std::size_t idx = g.index(1, j);
      for (int i = 1; i < nx - 1; ++i, ++idx) {
        const double vc = pv[idx];
        const double lap = kx * (2.0 * vc - pv[idx - 1] - pv[idx + 1]) +
                           ky * (2.0 * vc - pv[idx - nx] - pv[idx + nx]);
        double vval = wa * va[idx];
        if (vb) vval += wb * vb[idx];
        pu[idx] += lap + cv * vval * vc;
      }
    }
  }
  f.t += dt;
}

void advance_imag(SpinorField& f, const StepPotential& pot, double dt,
                  const PhysicalParams& pp) {
  const Grid2D& g = f.grid;
  const int nx = g.nx, ny = g.ny;
  const double cv = dt / pp.hbar;
  const double kx = pp.hbar * dt / (2.0 * pp.mass * g.dx * g.dx);
  const double ky = pp.hbar * dt / (2.0 * pp.mass * g.dy * g.dy);

  // vp becomes the outgoing (old) v; the new v is written over the stale
  // buffer, so the straddled pair (v, vp) survives for the norm estimator.
  std::swap(f.v, f.vp);

  for (int s = 0; s < 2; ++s) {
    double* pv = f.v[s].data();        // being rebuilt
    const double* pw = f.vp[s].data();  // v at t - dt/2 (relative to new u)
    const double* pu = f.u[s].data();
    const double* va = (s == 0) ? pot.a_down : pot.a_up;
    const double* vb = (s == 0) ? pot.b_down : pot.b_up;
    const double wa = pot.wa, wb = pot.wb;
    for (int j = 1; j < ny - 1; ++j) {
      std::size_t idx = g.index(1, j);
      for (int i = 1; i < nx - 1; ++i, ++idx) {
        const double uc = pu[idx];
        const double lap = kx * (2.0 * uc - pu[idx - 1] - pu[idx + 1]) +
                           ky * (2.0 * uc - pu[idx - nx] - pu[idx + nx]);
        double vval = wa * va[idx];
        if (vb) vval += wb * vb[idx];
        pv[idx] = pw[idx] - lap - cv * vval * uc;
      }
    }
  }

  // dv_i = (dt/hbar) [ Im(W)_{ij} v_j(old) - Re(W)_{ij} u_j ]
  for (const auto& p : pot.pulses) {
    for (int j = p.j0; j <= p.j1; ++j) {
      std::size_t idx = f.grid.index(p.i0, j);
      for (int i = p.i0; i <= p.i1; ++i, ++idx) {
        const double u0 = f.u[0][idx], u1 = f.u[1][idx];
        const double w0 = f.vp[0][idx], w1 = f.vp[1][idx];
        f.v[0][idx] += cv * (p.off_im * w1 - p.d0 * u0 - p.off_re * u1);
        f.v[1][idx] += cv * (-p.off_im * w0 - p.off_re * u0 - p.d1 * u1);
      }
    }
  }
}

void apply_static_hamiltonian(const SpinorField& f, const StepPotential& pot,
                              const PhysicalParams& pp,
                              std::array<std::vector<double>, 2>& out) {
  const Grid2D& g = f.grid;
  const int nx = g.nx, ny = g.ny;
  const double kx = pp.hbar * pp.hbar / (2.0 * pp.mass * g.dx * g.dx);
  const double ky = pp.hbar * pp.hbar / (2.0 * pp.mass * g.dy * g.dy);
  for (int s = 0; s < 2; ++s) {
    out[s].assign(g.size(), 0.0);
    const double* pu = f.u[s].data();
    const double* va = (s == 0) ? pot.a_down : pot.a_up;
    const double* vb = (s == 0) ? pot.b_down : pot.b_up;
    for (int j = 1; j < ny - 1; ++j) {
      std::size_t idx = g.index(1, j);
      for (int i = 1; i < nx - 1; ++i, ++idx) {
        const double uc = pu[idx];
        const double lap = kx * (2.0 * uc - pu[idx - 1] - pu[idx + 1]) +
                           ky * (2.0 * uc - pu[idx - nx] - pu[idx + nx]);
        double vval = pot.wa * va[idx];
        if (vb) vval += pot.wb * vb[idx];
        out[s][idx] = lap + vval * uc;
      }
    }
  }
  for (const auto& p : pot.pulses) {
    for (int j = p.j0; j <= p.j1; ++j) {
      std::size_t idx = g.index(p.i0, j);
      for (int i = p.i0; i <= p.i1; ++i, ++idx) {
        const double u0 = f.u[0][idx], u1 = f.u[1][idx];
        out[0][idx] += p.d0 * u0 + p.off_re * u1;
        out[1][idx] += p.off_re * u0 + p.d1 * u1;
      }
    }
  }
}

double max_stable_dt(const Grid2D& grid,
                     const std::vector<PotentialTerm>& terms,
                     const PhysicalParams& pp, double t_begin, double t_end) {
  const double kinetic = pp.hbar * pp.hbar / (2.0 * pp.mass) *
                         (4.0 / (grid.dx * grid.dx) + 4.0 / (grid.dy * grid.dy));

  bool dynamic = false;
  for (const PotentialTerm& term : terms)
    if (term.kind == PotentialKind::spin_shift && term.mode == ShiftMode::adiabatic)
      dynamic = true;

  std::vector<double> sample_times{t_begin};
  if (dynamic && t_end > t_begin) {
    sample_times.push_back(0.5 * (t_begin + t_end));
    sample_times.push_back(t_end);
  }

  double v_max = 0.0;
  std::vector<double> v0, v1;
  for (double t : sample_times) {
    sample_scalar_potential(grid, terms, pp, t, v0, v1);
    for (std::size_t i = 0; i < v0.size(); ++i) {
      if (!std::isfinite(v0[i]) || !std::isfinite(v1[i]))
        throw std::invalid_argument("max_stable_dt: unbounded potential sample");
      v_max = std::max({v_max, std::abs(v0[i]), std::abs(v1[i])});
    }
  }

  double w_max = 0.0;
  for (const PotentialTerm& term : terms) {
    if (term.kind != PotentialKind::zeeman_pulse) continue;
    const double peak = (term.envelope == PulseEnvelope::tophat ? 1.0 : 2.0) *
                        std::abs(term.area) / term.tau;
    w_max += pp.hbar * peak;
  }

  const double e_max = v_max + w_max + kinetic;
  return 0.5 * pp.hbar / e_max;
}

void step(SpinorField& f, const std::vector<PotentialTerm>& terms, double dt,
          const PhysicalParams& pp) {
  if (!f.bootstrapped)
    throw std::logic_error("step: field not bootstrapped; call bootstrap_half_step");
  if (f.staggered_dt != dt)
    throw std::invalid_argument("step: dt differs from the staggering dt");
  const double bound =
      max_stable_dt(f.grid, terms, pp, f.t, f.t + dt);
  if (dt > bound)
    throw std::invalid_argument("step: dt exceeds the stability bound");

  const double t_now = f.t;
  const double t_next = f.t + dt;

  std::vector<double> va0, va1, vb0, vb1;
  sample_scalar_potential(f.grid, terms, pp, t_now, va0, va1);
  sample_scalar_potential(f.grid, terms, pp, t_next, vb0, vb1);

  StepPotential mid;
  mid.a_down = va0.data();
  mid.a_up = va1.data();
  mid.b_down = vb0.data();
  mid.b_up = vb1.data();
  mid.wa = 0.5;
  mid.wb = 0.5;
  std::vector<StepPotential::PulseSample> p_now, p_next;
  sample_pulses(f.grid, terms, pp, t_now, p_now);
  sample_pulses(f.grid, terms, pp, t_next, p_next);
  mid.pulses = p_now;
  for (auto s : p_next) mid.pulses.push_back(s);
  for (auto& s : mid.pulses) {
    s.d0 *= 0.5;
    s.d1 *= 0.5;
    s.off_re *= 0.5;
    s.off_im *= 0.5;
  }

  StepPotential end;
  end.a_down = vb0.data();
  end.a_up = vb1.data();
  end.pulses = p_next;

  advance_real(f, mid, dt, pp);
  advance_imag(f, end, dt, pp);
}

}  // namespace entdist
