#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "entdist/grid.hpp"

namespace entdist {

/// Physical constants of the massive-particle tier. Natural units
/// (hbar = m = omega = 1) by default. z1 is the spin-dependent displacement
/// of the trap minimum, mu*B0 / (omega^2 m).
struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  double mu = 1.0;
  double b0 = 1.0;
  double charge = 1.0;

  PhysicalParams() = default;
  PhysicalParams(double hbar_, double mass_, double omega_, double mu_,
                 double b0_, double charge_)
      : hbar(hbar_), mass(mass_), omega(omega_), mu(mu_), b0(b0_), charge(charge_) {
    if (!(hbar > 0 && mass > 0 && omega > 0 && mu > 0 && b0 > 0 && charge > 0))
      throw std::invalid_argument("PhysicalParams: all parameters must be positive");
  }

  double z1() const { return mu * b0 / (omega * omega * mass); }
  /// Ground-state width of the trap, sqrt(hbar / 2 m omega).
  double sigma0() const { return std::sqrt(hbar / (2.0 * mass * omega)); }
  double trap_period() const;
};

enum class PotentialKind { harmonic_trap, spin_shift, zeeman_pulse, hard_wall };
enum class PulseAxis { x, y, z };
enum class PulseEnvelope { tophat, sin2 };
enum class ShiftMode { diabatic, adiabatic };

/// Hermitian 2x2 spin matrix in the (|0> = down, |1> = up) basis:
///   [[d0, off_re + i off_im], [off_re - i off_im, d1]].
struct SpinCoupling {
  double d0 = 0.0, d1 = 0.0;
  double off_re = 0.0, off_im = 0.0;
};

/// One additive building block of a stage potential. Within a stage, well
/// terms (harmonic_trap, spin_shift) combine as the pointwise minimum per
/// spin -- separate local wells, not a superposed quadratic -- while walls
/// add on top and pulses contribute the spin coupling.
struct PotentialTerm {
  PotentialKind kind = PotentialKind::harmonic_trap;

  // Wells. omega_x / omega_y < 0 means "use params.omega"; 0 leaves the axis
  // free. `offset` shifts the well depth (spin_shift defaults to the uniform
  // -m omega^2 z1^2 / 2 compensation so the value at the undisplaced center
  // is zero, the role the uniform electric field plays in hardware).
  double cx = 0.0, cy = 0.0;
  double omega_x = -1.0, omega_y = -1.0;
  double offset = 0.0;
  double z1 = 0.0;        // spin_shift displacement along y
  int shift_sign = +1;    // +1: spin-up component shifts by +z1
  ShiftMode mode = ShiftMode::diabatic;
  double ramp_time = 0.0;  // adiabatic: linear ramp of the displacement
  bool depth_compensated = false;  // subtract m omega_y^2 z1^2 / 2

  // Zeeman pulse: W(t) = -hbar * lambda(t) * sigma_axis with
  // integral(lambda) = area, so the generated rotation is exp(i area sigma).
  PulseAxis axis = PulseAxis::x;
  double area = 0.0;
  double t0 = 0.0, tau = 0.0;  // stage-local activity window
  PulseEnvelope envelope = PulseEnvelope::tophat;
  std::optional<Rect> mask;    // spatial support; whole grid when absent

  // Hard wall: finite barrier of the given height over `wall`.
  Rect wall;
  double height = 0.0;

  bool is_well() const {
    return kind == PotentialKind::harmonic_trap ||
           kind == PotentialKind::spin_shift;
  }
  bool is_time_dependent() const {
    return (kind == PotentialKind::spin_shift && mode == ShiftMode::adiabatic) ||
           kind == PotentialKind::zeeman_pulse;
  }

  /// Well value for one spin component at stage-local time t.
  double well_value(int spin, double x, double y, double t,
                    const PhysicalParams& pp) const;
  /// Pulse strength lambda(t) at stage-local time t.
  double lambda(double t) const;

  /// Spec-shaped accessors: spin-independent scalar part and the Hermitian
  /// spin coupling (diagonal for spin_shift wells, pure coupling for pulses).
  double scalar(double x, double y, double t, const PhysicalParams& pp) const;
  SpinCoupling spin_coupling(double x, double y, double t,
                             const PhysicalParams& pp) const;
};

PotentialTerm make_harmonic_trap(double cx, double cy, double omega_x = -1.0,
                                 double omega_y = -1.0, double offset = 0.0);
/// `depth_compensated` keeps the potential value at (cx, cy) equal to zero.
PotentialTerm make_spin_shift(double cx, double cy, double z1, int sign = +1,
                              ShiftMode mode = ShiftMode::diabatic,
                              double ramp_time = 0.0, double omega_x = -1.0,
                              double omega_y = -1.0,
                              bool depth_compensated = true);
PotentialTerm make_zeeman_pulse(PulseAxis axis, double area, double t0,
                                double tau,
                                PulseEnvelope envelope = PulseEnvelope::tophat,
                                std::optional<Rect> mask = std::nullopt);
PotentialTerm make_hard_wall(const Rect& wall, double height);

/// Per-spin scalar landscape of a term list: min over wells plus walls.
/// Used both by the stepper compilation and the stability bound.
void sample_scalar_potential(const Grid2D& grid,
                             const std::vector<PotentialTerm>& terms,
                             const PhysicalParams& pp, double t,
                             std::vector<double>& v_down,
                             std::vector<double>& v_up);

}  // namespace entdist
