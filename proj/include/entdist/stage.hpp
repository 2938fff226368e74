#pragma once

#include <map>
#include <string>
#include <vector>

#include "entdist/spinor.hpp"
#include "entdist/stepper.hpp"

namespace entdist {

/// One timed potential configuration. `snapshot_labels` names the script
/// regions that are meaningful (and pairwise disjoint) at the end of this
/// stage.
struct Stage {
  std::string name;
  double duration = 0.0;
  std::vector<PotentialTerm> terms;
  std::vector<std::string> snapshot_labels;
};

/// Timed sequence of potential configurations plus the named device sites.
/// Labels may alias (identical rectangles describe one physical site playing
/// two protocol roles, e.g. the input well later holding the success output);
/// partially overlapping labels are rejected.
struct StageScript {
  std::vector<Stage> stages;
  std::vector<Region> labels;

  void validate() const;
  const Region* find_label(const std::string& name) const;
  std::vector<Region> select(const std::vector<std::string>& names) const;
  double total_duration() const;
};

struct RegionProbabilities {
  std::map<std::string, double> probability;
  double leakage = 0.0;
};

/// Integrated density per region (both spin components); leakage is one
/// minus the sum. Queried regions must lie in the grid and be pairwise
/// disjoint.
RegionProbabilities region_probabilities(const SpinorField& field,
                                         const std::vector<Region>& regions);

/// Normalized spinor obtained by projecting the field onto the region and
/// integrating against the dominant spatial mode (a Gaussian fitted to the
/// density moments inside the region). Requires region probability > 1e-6.
std::array<cplx, 2> conditional_spin_state(const SpinorField& field,
                                           const Region& region);

struct DtPolicy {
  double fixed = 0.0;   // > 0: use this dt (validated against the bound)
  double safety = 0.5;  // otherwise dt = safety * min stage max_stable_dt
};

struct Snapshot {
  double t = 0.0;
  std::string stage;
  std::map<std::string, double> region_prob;
  double leakage = 0.0;
  double norm = 1.0;
};

struct ScriptResult {
  SpinorField field;
  std::vector<Snapshot> snapshots;
  double dt = 0.0;
  double max_norm_deviation = 0.0;
};

/// Sequential stage evolution. Stage durations are rounded to whole steps;
/// boundary steps average the two adjacent stage potentials for the
/// real-part update, which keeps the staggered norm invariant across
/// diabatic switches. Snapshots are taken at every stage end, plus every
/// `snapshot_stride` steps within stages when the stride is positive.
ScriptResult run_script(SpinorField initial, const StageScript& script,
                        const PhysicalParams& pp, DtPolicy policy = {},
                        int snapshot_stride = 0);

}  // namespace entdist
