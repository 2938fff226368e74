#pragma once

#include <vector>

#include "entdist/potential.hpp"
#include "entdist/spinor.hpp"

namespace entdist {

/// Potential data consumed by one leapfrog sub-update. The effective scalar
/// grid is wa * A + wb * B per spin (B may be absent); pulse entries are the
/// Hermitian coupling W in energy units, constant over their index rectangle.
struct StepPotential {
  const double* a_down = nullptr;
  const double* a_up = nullptr;
  const double* b_down = nullptr;
  const double* b_up = nullptr;
  double wa = 1.0, wb = 0.0;

  struct PulseSample {
    int i0, i1, j0, j1;  // inclusive index bounds, interior-clipped
    double d0, d1, off_re, off_im;
  };
  std::vector<PulseSample> pulses;

  double value(int spin, std::size_t idx) const {
    const double* a = (spin == 0) ? a_down : a_up;
    const double* b = (spin == 0) ? b_down : b_up;
    double v = wa * a[idx];
    if (b) v += wb * b[idx];
    return v;
  }
};

/// u(t) -> u(t + dt) using v(t + dt/2); `pot` sampled at the midpoint.
void advance_real(SpinorField& f, const StepPotential& pot, double dt,
                  const PhysicalParams& pp);
/// v(t + dt/2) -> v(t + 3dt/2) using u(t + dt); `pot` sampled at t + dt.
/// Also rotates vp so the straddled norm stays available.
void advance_imag(SpinorField& f, const StepPotential& pot, double dt,
                  const PhysicalParams& pp);

/// Largest stable time step, 0.5 * hbar / E_max with
/// E_max = max|V| + max||W|| + (hbar^2 / 2m)(4/dx^2 + 4/dy^2).
/// The potential is sampled over [t_begin, t_end] (begin, middle, end) when
/// the terms are time-dependent.
double max_stable_dt(const Grid2D& grid,
                     const std::vector<PotentialTerm>& terms,
                     const PhysicalParams& pp, double t_begin = 0.0,
                     double t_end = 0.0);

/// One full staggered step against a declarative term list. Samples the
/// scalar potential at the update times (the real part sees the average of
/// the two imaginary-part samplings, which keeps the staggered norm an exact
/// invariant for piecewise-constant potentials). Throws if dt exceeds the
/// stability bound.
void step(SpinorField& f, const std::vector<PotentialTerm>& terms, double dt,
          const PhysicalParams& pp);

/// S u for the real-symmetric part of the Hamiltonian (kinetic + scalar +
/// real spin coupling); used by the staggering bootstrap.
void apply_static_hamiltonian(const SpinorField& f, const StepPotential& pot,
                              const PhysicalParams& pp,
                              std::array<std::vector<double>, 2>& out);

/// Pulse terms of a list sampled at stage-local time t into kernel form.
void sample_pulses(const Grid2D& grid,
                   const std::vector<PotentialTerm>& terms,
                   const PhysicalParams& pp, double t,
                   std::vector<StepPotential::PulseSample>& out);

}  // namespace entdist
