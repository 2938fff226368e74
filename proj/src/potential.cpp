#include "entdist/potential.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace entdist {

double PhysicalParams::trap_period() const {
  return 2.0 * std::numbers::pi / omega;
}

namespace {

double ramped_z1(const PotentialTerm& term, double t) {
  if (term.mode == ShiftMode::diabatic || term.ramp_time <= 0.0) return term.z1;
  const double f = std::min(1.0, std::max(0.0, t / term.ramp_time));
  return term.z1 * f;
}

}  // namespace

double PotentialTerm::well_value(int spin, double x, double y, double t,
                                 const PhysicalParams& pp) const {
  const double wx = (omega_x < 0.0) ? pp.omega : omega_x;
  const double wy = (omega_y < 0.0) ? pp.omega : omega_y;
  double yc = cy;
  double shift_offset = 0.0;
  if (kind == PotentialKind::spin_shift) {
    const double sign = (spin == 1) ? shift_sign : -shift_sign;
    const double z = ramped_z1(*this, t);
    yc += sign * z;
    if (depth_compensated) shift_offset = -0.5 * pp.mass * wy * wy * z * z;
  }
  const double rx = x - cx;
  const double ry = y - yc;
  return 0.5 * pp.mass * (wx * wx * rx * rx + wy * wy * ry * ry) + offset +
         shift_offset;
}

double PotentialTerm::lambda(double t) const {
  if (kind != PotentialKind::zeeman_pulse) return 0.0;
  const double s = t - t0;
  if (s < 0.0 || s > tau || tau <= 0.0) return 0.0;
  switch (envelope) {
    case PulseEnvelope::tophat:
      return area / tau;
    case PulseEnvelope::sin2: {
      const double w = std::sin(std::numbers::pi * s / tau);
      return 2.0 * area / tau * w * w;
    }
  }
  return 0.0;
}

double PotentialTerm::scalar(double x, double y, double t,
                             const PhysicalParams& pp) const {
  switch (kind) {
    case PotentialKind::harmonic_trap:
      return well_value(0, x, y, t, pp);
    case PotentialKind::hard_wall:
      return wall.contains(x, y) ? height : 0.0;
    case PotentialKind::spin_shift:
    case PotentialKind::zeeman_pulse:
      return 0.0;  // fully inside the spin coupling
  }
  return 0.0;
}

SpinCoupling PotentialTerm::spin_coupling(double x, double y, double t,
                                          const PhysicalParams& pp) const {
  SpinCoupling w;
  switch (kind) {
    case PotentialKind::harmonic_trap:
    case PotentialKind::hard_wall:
      return w;
    case PotentialKind::spin_shift:
      w.d0 = well_value(0, x, y, t, pp);
      w.d1 = well_value(1, x, y, t, pp);
      return w;
    case PotentialKind::zeeman_pulse: {
      if (mask && !mask->contains(x, y)) return w;
      const double l = -lambda(t) * 1.0;  // scaled by hbar at application
      switch (axis) {
        case PulseAxis::x:
          w.off_re = l;
          break;
        case PulseAxis::y:
          w.off_im = -l;  // sigma_y entry (0,1) is -i
          break;
        case PulseAxis::z:
          w.d0 = l;
          w.d1 = -l;
          break;
      }
      return w;
    }
  }
  return w;
}

PotentialTerm make_harmonic_trap(double cx, double cy, double omega_x,
                                 double omega_y, double offset) {
  PotentialTerm t;
  t.kind = PotentialKind::harmonic_trap;
  t.cx = cx;
  t.cy = cy;
  t.omega_x = omega_x;
  t.omega_y = omega_y;
  t.offset = offset;
  if (omega_x < -1.0 || omega_y < -1.0 || !std::isfinite(cx) || !std::isfinite(cy))
    throw std::invalid_argument("make_harmonic_trap: bad parameters");
  return t;
}

PotentialTerm make_spin_shift(double cx, double cy, double z1, int sign,
                              ShiftMode mode, double ramp_time, double omega_x,
                              double omega_y, bool depth_compensated) {
  if (!(std::isfinite(z1)) || std::abs(sign) != 1)
    throw std::invalid_argument("make_spin_shift: bad parameters");
  if (mode == ShiftMode::adiabatic && !(ramp_time > 0.0))
    throw std::invalid_argument("make_spin_shift: adiabatic mode needs ramp_time > 0");
  PotentialTerm t;
  t.kind = PotentialKind::spin_shift;
  t.cx = cx;
  t.cy = cy;
  t.z1 = z1;
  t.shift_sign = sign;
  t.mode = mode;
  t.ramp_time = ramp_time;
  t.omega_x = omega_x;
  t.omega_y = omega_y;
  t.depth_compensated = depth_compensated;
  return t;
}

PotentialTerm make_zeeman_pulse(PulseAxis axis, double area, double t0,
                                double tau, PulseEnvelope envelope,
                                std::optional<Rect> mask) {
  if (!(tau > 0.0) || !std::isfinite(area) || t0 < 0.0)
    throw std::invalid_argument("make_zeeman_pulse: bad parameters");
  PotentialTerm t;
  t.kind = PotentialKind::zeeman_pulse;
  t.axis = axis;
  t.area = area;
  t.t0 = t0;
  t.tau = tau;
  t.envelope = envelope;
  t.mask = mask;
  return t;
}

PotentialTerm make_hard_wall(const Rect& wall, double height) {
  if (!(height > 0.0))
    throw std::invalid_argument("make_hard_wall: height must be positive");
  PotentialTerm t;
  t.kind = PotentialKind::hard_wall;
  t.wall = wall;
  t.height = height;
  return t;
}

void sample_scalar_potential(const Grid2D& grid,
                             const std::vector<PotentialTerm>& terms,
                             const PhysicalParams& pp, double t,
                             std::vector<double>& v_down,
                             std::vector<double>& v_up) {
  const std::size_t n = grid.size();
  v_down.assign(n, 0.0);
  v_up.assign(n, 0.0);

  bool any_well = false;
  for (const PotentialTerm& term : terms)
    if (term.is_well()) any_well = true;

  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.y(j);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const std::size_t idx = grid.index(i, j);
      double best0 = any_well ? std::numeric_limits<double>::infinity() : 0.0;
      double best1 = best0;
      double walls = 0.0;
      for (const PotentialTerm& term : terms) {
        if (term.is_well()) {
          best0 = std::min(best0, term.well_value(0, x, y, t, pp));
          best1 = std::min(best1, term.well_value(1, x, y, t, pp));
        } else if (term.kind == PotentialKind::hard_wall) {
          if (term.wall.contains(x, y)) walls += term.height;
        }
      }
      v_down[idx] = best0 + walls;
      v_up[idx] = best1 + walls;
    }
  }
}

}  // namespace entdist
