#include "entdist/stage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace entdist {

namespace {

struct IndexRect {
  int i0, i1, j0, j1;
  bool empty = true;
};

IndexRect to_indices(const Grid2D& g, const Rect& r) {
  IndexRect ir;
  ir.i0 = std::max(0, static_cast<int>(std::ceil((r.xmin - g.x0) / g.dx - 1e-9)));
  ir.i1 = std::min(g.nx - 1,
                   static_cast<int>(std::floor((r.xmax - g.x0) / g.dx + 1e-9)));
  ir.j0 = std::max(0, static_cast<int>(std::ceil((r.ymin - g.y0) / g.dy - 1e-9)));
  ir.j1 = std::min(g.ny - 1,
                   static_cast<int>(std::floor((r.ymax - g.y0) / g.dy + 1e-9)));
  ir.empty = ir.i0 > ir.i1 || ir.j0 > ir.j1;
  return ir;
}

// Compiled per-stage data for the run loop.
struct CompiledStage {
  const Stage* src = nullptr;
  long steps = 0;
  double t_begin = 0.0;  // script time where this stage starts
  bool dynamic = false;
  std::vector<double> v_down, v_up;  // static sampling (t_local = 0)
};

}  // namespace

void StageScript::validate() const {
  if (stages.empty()) return;
  for (const Stage& s : stages)
    if (!(s.duration > 0.0))
      throw std::invalid_argument("StageScript: stage durations must be positive");
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      const Rect &ra = labels[a].rect, &rb = labels[b].rect;
      if (ra.overlaps(rb) && !ra.same_as(rb))
        throw std::invalid_argument("StageScript: labels '" + labels[a].name +
                                    "' and '" + labels[b].name +
                                    "' partially overlap");
    }
}

const Region* StageScript::find_label(const std::string& name) const {
  for (const Region& r : labels)
    if (r.name == name) return &r;
  return nullptr;
}

std::vector<Region> StageScript::select(
    const std::vector<std::string>& names) const {
  std::vector<Region> out;
  for (const std::string& n : names) {
    const Region* r = find_label(n);
    if (!r) throw std::invalid_argument("StageScript: unknown label " + n);
    out.push_back(*r);
  }
  return out;
}

double StageScript::total_duration() const {
  double total = 0.0;
  for (const Stage& s : stages) total += s.duration;
  return total;
}

RegionProbabilities region_probabilities(const SpinorField& field,
                                         const std::vector<Region>& regions) {
  const Grid2D& g = field.grid;
  for (std::size_t a = 0; a < regions.size(); ++a) {
    const Rect& r = regions[a].rect;
    if (r.xmax < g.x0 || r.xmin > g.x_max() || r.ymax < g.y0 || r.ymin > g.y_max())
      throw std::invalid_argument("region_probabilities: region outside grid");
    for (std::size_t b = a + 1; b < regions.size(); ++b)
      if (r.overlaps(regions[b].rect))
        throw std::invalid_argument(
            "region_probabilities: regions '" + regions[a].name + "' and '" +
            regions[b].name + "' overlap");
  }

  RegionProbabilities out;
  double covered = 0.0;
  for (const Region& region : regions) {
    const IndexRect ir = to_indices(g, region.rect);
    double p = 0.0;
    if (!ir.empty)
      for (int j = ir.j0; j <= ir.j1; ++j)
        for (int i = ir.i0; i <= ir.i1; ++i) p += field.density(g.index(i, j));
    p *= g.cell_area();
    out.probability[region.name] = p;
    covered += p;
  }
  out.leakage = 1.0 - covered;
  return out;
}

std::array<cplx, 2> conditional_spin_state(const SpinorField& field,
                                           const Region& region) {
  const Grid2D& g = field.grid;
  const IndexRect ir = to_indices(g, region.rect);
  if (ir.empty)
    throw std::invalid_argument("conditional_spin_state: empty region");

  // Density moments inside the region.
  double mass = 0.0, mx = 0.0, my = 0.0;
  for (int j = ir.j0; j <= ir.j1; ++j)
    for (int i = ir.i0; i <= ir.i1; ++i) {
      const double rho = field.density(g.index(i, j));
      mass += rho;
      mx += rho * g.x(i);
      my += rho * g.y(j);
    }
  if (mass * g.cell_area() <= 1e-6)
    throw std::invalid_argument("conditional_spin_state: region probability below 1e-6");
  mx /= mass;
  my /= mass;
  double sx2 = 0.0, sy2 = 0.0;
  for (int j = ir.j0; j <= ir.j1; ++j)
    for (int i = ir.i0; i <= ir.i1; ++i) {
      const double rho = field.density(g.index(i, j));
      sx2 += rho * (g.x(i) - mx) * (g.x(i) - mx);
      sy2 += rho * (g.y(j) - my) * (g.y(j) - my);
    }
  sx2 = std::max(sx2 / mass, g.dx * g.dx);
  sy2 = std::max(sy2 / mass, g.dy * g.dy);

  // Overlap with the fitted Gaussian mode (amplitude widths from the density
  // variances), normalized over the region.
  double g2 = 0.0;
  cplx chi0 = 0.0, chi1 = 0.0;
  for (int j = ir.j0; j <= ir.j1; ++j)
    for (int i = ir.i0; i <= ir.i1; ++i) {
      const double dx2 = (g.x(i) - mx) * (g.x(i) - mx) / (4.0 * sx2);
      const double dy2 = (g.y(j) - my) * (g.y(j) - my) / (4.0 * sy2);
      const double mode = std::exp(-dx2 - dy2);
      g2 += mode * mode;
      const std::size_t idx = g.index(i, j);
      chi0 += mode * field.value(0, idx);
      chi1 += mode * field.value(1, idx);
    }
  (void)g2;  // overall scale drops out of the normalization below

  const double n2 = std::norm(chi0) + std::norm(chi1);
  if (!(n2 > 0.0))
    throw std::invalid_argument("conditional_spin_state: vanishing mode overlap");
  const double inv = 1.0 / std::sqrt(n2);
  return {chi0 * inv, chi1 * inv};
}

ScriptResult run_script(SpinorField initial, const StageScript& script,
                        const PhysicalParams& pp, DtPolicy policy,
                        int snapshot_stride) {
  script.validate();
  if (script.stages.empty()) {
    ScriptResult r{std::move(initial), {}, 0.0, 0.0};
    return r;
  }
  const Grid2D& grid = initial.grid;

  // Global step size from the tightest stage bound.
  double bound = std::numeric_limits<double>::infinity();
  {
    double t_local_end = 0.0;
    for (const Stage& s : script.stages) {
      t_local_end = s.duration;
      bound = std::min(bound, max_stable_dt(grid, s.terms, pp, 0.0, t_local_end));
    }
  }
  double dt;
  if (policy.fixed > 0.0) {
    if (policy.fixed > bound)
      throw std::invalid_argument("run_script: fixed dt violates the stability bound");
    dt = policy.fixed;
  } else {
    if (!(policy.safety > 0.0 && policy.safety <= 1.0))
      throw std::invalid_argument("run_script: safety factor outside (0, 1]");
    dt = policy.safety * bound;
  }

  if (!initial.bootstrapped)
    initial.bootstrap_half_step(script.stages.front().terms, pp, dt);
  else if (initial.staggered_dt != dt)
    throw std::invalid_argument("run_script: field staggered with a different dt");

  // Compile stages: static samplings plus step counts.
  std::vector<CompiledStage> compiled(script.stages.size());
  double t_acc = 0.0;
  for (std::size_t k = 0; k < script.stages.size(); ++k) {
    CompiledStage& c = compiled[k];
    c.src = &script.stages[k];
    c.steps = std::max<long>(1, std::lround(c.src->duration / dt));
    c.t_begin = t_acc;
    t_acc += static_cast<double>(c.steps) * dt;
    for (const PotentialTerm& term : c.src->terms)
      if (term.is_time_dependent() &&
          term.kind == PotentialKind::spin_shift)
        c.dynamic = true;
    sample_scalar_potential(grid, c.src->terms, pp, 0.0, c.v_down, c.v_up);
  }

  ScriptResult result{std::move(initial), {}, dt, 0.0};
  SpinorField& f = result.field;

  auto snapshot = [&](const CompiledStage& c) {
    Snapshot s;
    s.t = f.t;
    s.stage = c.src->name;
    if (!c.src->snapshot_labels.empty()) {
      const RegionProbabilities rp =
          region_probabilities(f, script.select(c.src->snapshot_labels));
      s.region_prob = rp.probability;
      s.leakage = rp.leakage;
    }
    s.norm = f.norm();
    result.max_norm_deviation =
        std::max(result.max_norm_deviation, std::abs(s.norm - 1.0));
    result.snapshots.push_back(std::move(s));
  };

  // Scratch buffers for dynamic (adiabatic) stages.
  std::vector<double> dyn_now0, dyn_now1, dyn_next0, dyn_next1;

  for (std::size_t k = 0; k < compiled.size(); ++k) {
    const CompiledStage& cur = compiled[k];
    const std::vector<PotentialTerm>& terms = cur.src->terms;

    for (long n = 0; n < cur.steps; ++n) {
      const double t_local_now = f.t - cur.t_begin;
      const double t_local_next = t_local_now + dt;

      // Potential seen by the v-update at t_next (always this stage's).
      const double* next0 = cur.v_down.data();
      const double* next1 = cur.v_up.data();
      if (cur.dynamic) {
        sample_scalar_potential(grid, terms, pp, t_local_next, dyn_next0,
                                dyn_next1);
        next0 = dyn_next0.data();
        next1 = dyn_next1.data();
      }

      // Potential seen by the previous v-update (previous stage on the first
      // step after a switch).
      const double* now0 = cur.v_down.data();
      const double* now1 = cur.v_up.data();
      const CompiledStage* owner_now = &cur;
      double owner_now_local = t_local_now;
      if (n == 0 && k > 0) {
        owner_now = &compiled[k - 1];
        // End of the previous stage in its local clock (rounded duration).
        owner_now_local = static_cast<double>(owner_now->steps) * dt;
        now0 = owner_now->v_down.data();
        now1 = owner_now->v_up.data();
      }
      if (owner_now->dynamic) {
        sample_scalar_potential(grid, owner_now->src->terms, pp,
                                owner_now_local, dyn_now0, dyn_now1);
        now0 = dyn_now0.data();
        now1 = dyn_now1.data();
      }

      StepPotential mid;
      mid.a_down = now0;
      mid.a_up = now1;
      mid.b_down = next0;
      mid.b_up = next1;
      mid.wa = 0.5;
      mid.wb = 0.5;
      std::vector<StepPotential::PulseSample> p_now, p_next;
      sample_pulses(grid, owner_now->src->terms, pp, owner_now_local, p_now);
      sample_pulses(grid, terms, pp, t_local_next, p_next);
      mid.pulses = p_now;
      for (const auto& s : p_next) mid.pulses.push_back(s);
      for (auto& s : mid.pulses) {
        s.d0 *= 0.5;
        s.d1 *= 0.5;
        s.off_re *= 0.5;
        s.off_im *= 0.5;
      }

      StepPotential end;
      end.a_down = next0;
      end.a_up = next1;
      end.pulses = p_next;

      advance_real(f, mid, dt, pp);
      advance_imag(f, end, dt, pp);

      if (snapshot_stride > 0 && (n + 1) % snapshot_stride == 0 &&
          n + 1 < cur.steps)
        snapshot(cur);
    }
    snapshot(cur);
  }
  return result;
}

}  // namespace entdist
