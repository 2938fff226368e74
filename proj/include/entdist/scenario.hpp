#pragma once

#include "entdist/povm.hpp"
#include "entdist/stage.hpp"

namespace entdist {

enum class ScenarioKind { trapped_povm, free_mzi };

struct ScenarioOptions {
  int nx = 0, ny = 0;        // 0 = kind-specific default
  double pulse_time = -1.0;  // default pi / (4 omega)
  double hold_time = -1.0;   // final-stage duration, default pi / (4 omega)
  double wall_height = -1.0; // default 1e3 * hbar * omega
  // Input spinor; when unset (both zero) the matched state
  // (cos phi, e^{i gamma} sin phi) is used.
  cplx spin_down = 0.0, spin_up = 0.0;
  // Calibrated sigma_z trim applied at the output site during the final hold.
  double trim_z_area = 0.0;
};

/// A runnable realization: grid, stage script and the initial packet.
struct ScenarioDef {
  ScenarioKind kind = ScenarioKind::trapped_povm;
  Grid2D grid;
  StageScript script;
  double cx = 0.0, cy = 0.0, sigma0 = 0.0, kick_x = 0.0, kick_y = 0.0;
  cplx spin_down = 1.0, spin_up = 0.0;

  SpinorField make_initial(const PhysicalParams& pp) const;
};

/// Builds the four-stage trapped measurement protocol (split, per-arm
/// rotations, re-split to the four intermediate sites, recombination into
/// the success site) or the dispersive hard-wall interferometer used as the
/// free-space contrast case.
ScenarioDef scenario(ScenarioKind kind, const DistillParams& params,
                     const PhysicalParams& pp,
                     const ScenarioOptions& options = {});

/// Residual sigma_z trim area for a geometry: runs the identity
/// configuration (phi = pi/4, gamma = 0) on an equal superposition and
/// returns half the phase by which the output spinor misses the input.
/// Feed the result into ScenarioOptions::trim_z_area.
double calibrate_trim_pulse(const PhysicalParams& pp,
                            const ScenarioOptions& options = {});

}  // namespace entdist
