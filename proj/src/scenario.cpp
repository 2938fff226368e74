#include "entdist/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entdist {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

SpinorField ScenarioDef::make_initial(const PhysicalParams& pp) const {
  return init_gaussian(grid, cx, cy, sigma0, kick_x, kick_y, spin_down,
                       spin_up);
}

ScenarioDef scenario(ScenarioKind kind, const DistillParams& params,
                     const PhysicalParams& pp, const ScenarioOptions& options) {
  const double sigma0 = pp.sigma0();
  const double half_period = kPi / pp.omega;
  const double tau_p =
      options.pulse_time > 0.0 ? options.pulse_time : kPi / (4.0 * pp.omega);
  const double hold =
      options.hold_time > 0.0 ? options.hold_time : kPi / (4.0 * pp.omega);
  const double wall_height = options.wall_height > 0.0
                                 ? options.wall_height
                                 : 1e3 * pp.hbar * pp.omega;

  ScenarioDef def;
  def.kind = kind;
  def.sigma0 = sigma0;
  const POVMConfig config = config_from_params(params);

  // Matched input spinor unless the caller provides one.
  cplx s0 = options.spin_down, s1 = options.spin_up;
  if (s0 == cplx{0.0} && s1 == cplx{0.0}) {
    s0 = std::cos(params.phi);
    s1 = std::exp(cplx(0.0, params.gamma)) * std::sin(params.phi);
  }
  def.spin_down = s0;
  def.spin_up = s1;

  const double half_w = 4.0 * sigma0;  // region half-width

  if (kind == ScenarioKind::trapped_povm) {
    // Device sites on the transport axis (y): the input/success site at 0,
    // arms at -+D, intermediate sites at -+(D -+ d). d = D/2 keeps every
    // simultaneous pair of sites at least 8 sigma0 apart with 4 sigma0
    // windows.
    const double d = 4.8 * sigma0;
    const double dd = 2.0 * d;  // arm distance D

    const double y_span = dd + d + half_w + 3.2 * sigma0;
    const double x_span = 6.5 * sigma0;
    const int nx = options.nx > 0 ? options.nx : 64;
    const int ny = options.ny > 0 ? options.ny : 512;
    def.grid = Grid2D::centered(nx, ny, 2.0 * x_span, 2.0 * y_span);
    def.cx = 0.0;
    def.cy = 0.0;
    def.kick_x = def.kick_y = 0.0;

    auto site_rect = [&](double cy) {
      return Rect::centered(0.0, cy, half_w, half_w);
    };
    const Rect r_i = site_rect(0.0);
    const Rect r_s1 = site_rect(-dd), r_s2 = site_rect(dd);
    const Rect r_t1 = site_rect(-dd - d), r_t2 = site_rect(-dd + d);
    const Rect r_t3 = site_rect(dd - d), r_t4 = site_rect(dd + d);

    StageScript& script = def.script;
    script.labels = {{"i", r_i},   {"s1", r_s1}, {"s2", r_s2},
                     {"t1", r_t1}, {"t2", r_t2}, {"t3", r_t3},
                     {"t4", r_t4}, {"p1", r_i},  {"p2", r_t1}};

    // (a) spin-dependent split of the input site into the two arms.
    {
      Stage st;
      st.name = "split";
      st.duration = half_period;
      st.terms = {make_spin_shift(0.0, 0.0, dd / 2.0)};
      st.snapshot_labels = {"s1", "s2"};
      script.stages.push_back(st);
    }
    // (b) arm rotations: the keep amplitude is moved onto the opposite spin
    // so the following split routes it inward. Area pi/2 - theta puts
    // cos(theta) on the flipped component.
    {
      Stage st;
      st.name = "arm-rotations";
      st.duration = tau_p;
      st.terms = {make_harmonic_trap(0.0, -dd), make_harmonic_trap(0.0, dd),
                  make_zeeman_pulse(PulseAxis::x, kPi / 2.0 - config.theta1,
                                    0.0, tau_p, PulseEnvelope::tophat, r_s1),
                  make_zeeman_pulse(PulseAxis::x, kPi / 2.0 - config.theta2,
                                    0.0, tau_p, PulseEnvelope::tophat, r_s2)};
      st.snapshot_labels = {"s1", "s2"};
      script.stages.push_back(st);
    }
    // (b') relative phase of the kept |1> path: phase2 as a sigma_z pulse on
    // the arm where the kept amplitude now sits in the |0> component.
    {
      Stage st;
      st.name = "arm-phase";
      st.duration = tau_p;
      st.terms = {make_harmonic_trap(0.0, -dd), make_harmonic_trap(0.0, dd),
                  make_zeeman_pulse(PulseAxis::z, config.phase2, 0.0, tau_p,
                                    PulseEnvelope::tophat, r_s2)};
      st.snapshot_labels = {"s1", "s2"};
      script.stages.push_back(st);
    }
    // (b'') per-arm spin splits onto the four intermediate sites.
    {
      Stage st;
      st.name = "arm-split";
      st.duration = half_period;
      st.terms = {make_spin_shift(0.0, -dd, d / 2.0),
                  make_spin_shift(0.0, dd, d / 2.0)};
      st.snapshot_labels = {"t1", "t2", "t3", "t4"};
      script.stages.push_back(st);
    }
    // (c) flip the inner (kept) sites back to their protocol spin.
    {
      Stage st;
      st.name = "inner-flips";
      st.duration = tau_p;
      st.terms = {make_harmonic_trap(0.0, -dd - d), make_harmonic_trap(0.0, -dd + d),
                  make_harmonic_trap(0.0, dd - d), make_harmonic_trap(0.0, dd + d),
                  make_zeeman_pulse(PulseAxis::x, kPi / 2.0, 0.0, tau_p,
                                    PulseEnvelope::tophat, r_t2),
                  make_zeeman_pulse(PulseAxis::x, kPi / 2.0, 0.0, tau_p,
                                    PulseEnvelope::tophat, r_t3)};
      st.snapshot_labels = {"t1", "t2", "t3", "t4"};
      script.stages.push_back(st);
    }
    // (c') recombination: the two inner packets fall into a common well at
    // the origin; outer sites keep their own holds.
    {
      Stage st;
      st.name = "merge";
      st.duration = half_period;
      st.terms = {make_spin_shift(0.0, 0.0, (dd - d) / 2.0),
                  make_harmonic_trap(0.0, -dd - d),
                  make_harmonic_trap(0.0, dd + d)};
      st.snapshot_labels = {"p1", "p2", "t4"};
      script.stages.push_back(st);
    }
    // (d) final hold; optional calibrated sigma_z trim at the success site.
    {
      Stage st;
      st.name = "final-hold";
      st.duration = hold;
      st.terms = {make_harmonic_trap(0.0, 0.0), make_harmonic_trap(0.0, -dd - d),
                  make_harmonic_trap(0.0, dd + d)};
      if (options.trim_z_area != 0.0)
        st.terms.push_back(make_zeeman_pulse(PulseAxis::z, options.trim_z_area,
                                             0.0, hold, PulseEnvelope::tophat,
                                             r_i));
      st.snapshot_labels = {"p1", "p2", "t4"};
      script.stages.push_back(st);
    }
    script.validate();
    return def;
  }

  // free_mzi: dispersive interferometer between hard walls. The packet
  // drifts in +x; brief spin-dependent gradients at entry and exit act as
  // the junctions, the wall stripes as mirrors. No transverse trap, so the
  // packet spreads freely along the arms.
  const double x_span = 14.0, y_span = 8.0;
  const int nx = options.nx > 0 ? options.nx : 280;
  const int ny = options.ny > 0 ? options.ny : 160;
  def.grid = Grid2D::centered(nx, ny, 2.0 * x_span, 2.0 * y_span);
  def.cx = -12.0;
  def.cy = 0.0;
  def.kick_x = 3.0;
  def.kick_y = 0.0;

  const double y_wall = 6.0;
  const Rect top{-x_span, x_span, y_wall, y_span};
  const Rect bottom{-x_span, x_span, -y_span, -y_wall};
  const PotentialTerm wall_top = make_hard_wall(top, wall_height);
  const PotentialTerm wall_bottom = make_hard_wall(bottom, wall_height);

  // Junction: a short y-only spin-shifted well imparts -+ transverse
  // momentum m w_j^2 z_j tau_j to the two spin components.
  const double w_j = 2.0, z_j = 2.0, tau_j = 0.1875;

  StageScript& script = def.script;
  script.labels = {
      {"i", Rect::centered(-12.0, 0.0, half_w, half_w)},
      {"s1", Rect::centered(0.0, 4.5, half_w, half_w)},
      {"s2", Rect::centered(0.0, -4.5, half_w, half_w)},
      {"p1", Rect::centered(12.0, 0.0, half_w, half_w)},
      {"p2", Rect::centered(12.0, 4.5, half_w, half_w)},
  };

  {
    Stage st;
    st.name = "entry-junction";
    st.duration = tau_j;
    st.terms = {make_spin_shift(0.0, 0.0, z_j, +1, ShiftMode::diabatic, 0.0,
                                /*omega_x=*/0.0, /*omega_y=*/w_j),
                wall_top, wall_bottom};
    script.stages.push_back(st);
  }
  {
    Stage st;
    st.name = "arms";
    st.duration = 8.0;
    st.terms = {wall_top, wall_bottom};
    st.snapshot_labels = {"s1", "s2"};
    script.stages.push_back(st);
  }
  {
    Stage st;
    st.name = "exit-junction";
    st.duration = tau_j;
    st.terms = {make_spin_shift(0.0, 0.0, z_j, -1, ShiftMode::diabatic, 0.0,
                                0.0, w_j),
                wall_top, wall_bottom};
    script.stages.push_back(st);
  }
  {
    Stage st;
    st.name = "drift";
    st.duration = 0.5;
    st.terms = {wall_top, wall_bottom};
    st.snapshot_labels = {"i", "s1", "s2", "p1", "p2"};
    script.stages.push_back(st);
  }
  script.validate();
  return def;
}

double calibrate_trim_pulse(const PhysicalParams& pp,
                            const ScenarioOptions& options) {
  ScenarioOptions opt = options;
  opt.trim_z_area = 0.0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  opt.spin_down = inv_sqrt2;
  opt.spin_up = inv_sqrt2;
  const DistillParams identity(kPi / 4.0, 0.0);
  const ScenarioDef def = scenario(ScenarioKind::trapped_povm, identity, pp, opt);

  ScriptResult run = run_script(def.make_initial(pp), def.script, pp);
  const Region* p1 = def.script.find_label("p1");
  const auto chi = conditional_spin_state(run.field, *p1);
  // Residual relative phase of up versus down; a sigma_z pulse of area
  // delta/2 multiplies that relative phase by exp(-i delta).
  const double delta = std::arg(chi[1] / chi[0]);
  return 0.5 * delta;
}

}  // namespace entdist
