#include "bmoo/ecs/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bmoo/math.hpp"

namespace bmoo::ecs {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::string SimulationFailure::to_string() const {
  switch (reason) {
    case FailureReason::domain_violation: {
      std::ostringstream os;
      os << "DomainViolation(";
      for (std::size_t i = 0; i < violated_restrictions.size(); ++i) {
        if (i > 0) os << ";";
        os << "d" << violated_restrictions[i];
      }
      os << ")";
      return os.str();
    }
    case FailureReason::no_real_shaft_speed:
      return "NoRealShaftSpeed";
    case FailureReason::non_positive_shaft_speed:
      return "NonPositiveShaftSpeed";
    case FailureReason::non_physical_state:
      return "NonPhysicalState(" + description + ")";
    case FailureReason::supersonic_internal_flow:
      return "SupersonicInternalFlow(station" + std::to_string(station) + ")";
  }
  return "UnknownFailure";
}

bool SimulationSuccess::feasible() const {
  for (const double c : constraints) {
    if (c > 0.0) return false;
  }
  return true;
}

ShaftQuadratic shaft_quadratic(const DesignVector& x,
                               const FixedParameters& p) {
  ShaftQuadratic q;
  q.a = x.mdot * sq(x.r3);
  q.b = -sq(x.mdot) / (kTwoPi * p.rho_air) *
        (std::tan(x.beta3) / x.b3 + std::tan(x.alpha4) / x.b4);
  q.c = std::pow(x.mdot_r, 3) /
        (2.0 * p.eta_F * sq(p.rho_air) * sq(p.A_r));
  return q;
}

DomainReport check_domain(const DesignVector& x, const FixedParameters& p) {
  DomainReport report;
  auto require = [&report](int index, bool ok) {
    if (!ok) report.violated.push_back(index);
  };
  // Non-strict inequalities with a representation-noise allowance so that
  // boundary designs (e.g. r2p + 0.02 == r2t in decimal) stay inside.
  constexpr double tol = 1e-12;
  require(1, x.mdot <= x.mdot_r + tol);
  require(2, x.b3 <= p.h_c * x.r3 + tol);
  require(3, x.b4 <= p.h_t * x.r4 + tol);
  require(4, x.r2p + 0.02 <= x.r2t + tol);
  require(5, x.r2t <= x.r3 + tol);
  require(6, x.r5p + 0.02 <= x.r5t + tol);
  require(7, x.r5t <= x.r4 + tol);
  const ShaftQuadratic q = shaft_quadratic(x, p);
  report.discriminant = q.discriminant();
  require(8, report.discriminant >= 0.0);
  require(9, std::tan(x.beta3) / x.b3 >= -std::tan(x.alpha4) / x.b4);
  report.ok = report.violated.empty();
  return report;
}

std::optional<ShaftSolution> solve_shaft_speed(const DesignVector& x,
                                               const FixedParameters& p,
                                               SimulationFailure* failure) {
  const ShaftQuadratic q = shaft_quadratic(x, p);
  const double delta = q.discriminant();
  if (delta < 0.0) {
    if (failure != nullptr) {
      failure->reason = FailureReason::no_real_shaft_speed;
    }
    return std::nullopt;
  }
  // Largest real root; with d9 both roots share the sign of -b.
  const double omega = (-q.b + std::sqrt(delta)) / (2.0 * q.a);
  if (omega <= 0.0) {
    if (failure != nullptr) {
      failure->reason = FailureReason::non_positive_shaft_speed;
    }
    return std::nullopt;
  }
  ShaftSolution s;
  s.omega = omega;
  s.w_compressor =
      x.mdot * (sq(x.r3) * sq(omega) -
                x.mdot * std::tan(x.beta3) / (kTwoPi * p.rho_air * x.b3) *
                    omega);
  s.w_turbine =
      -sq(x.mdot) * std::tan(x.alpha4) / (kTwoPi * p.rho_air * x.b4) * omega;
  return s;
}

SimulationOutcome solve_shaft_speed_outcome(const DesignVector& x,
                                            const FixedParameters& p) {
  SimulationOutcome out;
  SimulationFailure failure;
  const auto solution = solve_shaft_speed(x, p, &failure);
  if (!solution) {
    out.failure = failure;
    return out;
  }
  SimulationSuccess success;
  success.state.omega = solution->omega;
  success.state.w_compressor = solution->w_compressor;
  success.state.w_turbine = solution->w_turbine;
  out.success = success;
  return out;
}

namespace {

bool fail_non_physical(SimulationFailure* failure, const std::string& what) {
  if (failure != nullptr) {
    failure->reason = FailureReason::non_physical_state;
    failure->description = what;
  }
  return false;
}

}  // namespace

std::optional<StateVector> solve_thermal_state(
    const DesignVector& x, const FixedParameters& p, double eps1, double eps2,
    double w_compressor, double w_turbine, double omega,
    SimulationFailure* failure) {
  const double Tt1r = p.T_a;  // fan heating neglected
  const double k_comp = w_compressor / (p.eta_C * x.mdot * p.c_p);
  const double alpha = (x.mdot / x.mdot_r) * eps2;

  // Two exchanger couplings plus the compressor enthalpy rise form a linear
  // system in (Tt2, Tt3, Tt2r); eliminate down to Tt2.
  const double denom = 1.0 - eps1 * alpha;
  if (std::abs(denom) < 1e-12) {
    fail_non_physical(failure, "exchanger_coupling_singular");
    return std::nullopt;
  }
  StateVector s;
  s.omega = omega;
  s.w_compressor = w_compressor;
  s.w_turbine = w_turbine;
  s.Tt2 = ((1.0 - eps1) * p.T_t1 + eps1 * (1.0 - alpha) * Tt1r +
           eps1 * alpha * k_comp) /
          denom;
  s.Tt3 = s.Tt2 + k_comp;
  s.Tt2r = Tt1r + alpha * (s.Tt3 - Tt1r);
  s.Tt4 = s.Tt3 - eps2 * (s.Tt3 - Tt1r);
  s.Tt5 = s.Tt4 + p.eta_T * w_turbine / (x.mdot * p.c_p);
  s.Tt3r = s.Tt2r + (x.mdot / x.mdot_r) * (p.T_t1 - s.Tt2);

  for (const double t : {s.Tt2, s.Tt3, s.Tt4, s.Tt5, s.Tt2r, s.Tt3r}) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      fail_non_physical(failure, "stagnation_temperature_not_positive");
      return std::nullopt;
    }
  }

  const double expo = p.gamma / (p.gamma - 1.0);
  s.Pt2 = p.P_t1 - p.dP_hx;
  const double comp_base = 1.0 + p.eta_C * (s.Tt3 - s.Tt2) / s.Tt2;
  if (!(comp_base > 0.0)) {
    fail_non_physical(failure, "compressor_pressure_ratio_not_positive");
    return std::nullopt;
  }
  s.Pt3 = s.Pt2 * std::pow(comp_base, expo);
  s.Pt4 = s.Pt3 - p.dP_hx;
  const double turb_base = 1.0 + (s.Tt5 - s.Tt4) / (p.eta_T * s.Tt4);
  if (!(turb_base > 0.0)) {
    fail_non_physical(failure, "turbine_pressure_ratio_not_positive");
    return std::nullopt;
  }
  s.Pt5 = s.Pt4 * std::pow(turb_base, expo);

  for (const double pt : {s.Pt2, s.Pt3, s.Pt4, s.Pt5}) {
    if (!(pt > 0.0) || !std::isfinite(pt)) {
      fail_non_physical(failure, "stagnation_pressure_not_positive");
      return std::nullopt;
    }
  }
  return s;
}

std::optional<StaticState> compute_static_state(const StateVector& state,
                                                const DesignVector& x,
                                                const FixedParameters& p,
                                                SimulationFailure* failure) {
  const double rho = p.rho_air;
  StaticState st;

  // Station velocities (Table-level closure with constant bleed density).
  st.C2x = x.mdot / (std::numbers::pi * (sq(x.r2t) - sq(x.r2p)) * rho);
  st.C5x = x.mdot / (std::numbers::pi * (sq(x.r5t) - sq(x.r5p)) * rho);
  const double c3_meridional = x.mdot / (kTwoPi * rho * x.r3 * x.b3);
  const double c3_tangential =
      x.r3 * state.omega - c3_meridional * std::tan(x.beta3);
  const double c4_meridional = x.mdot / (kTwoPi * rho * x.r4 * x.b4);
  const double c4_tangential = c4_meridional * std::tan(x.alpha4);
  st.C3m = std::hypot(c3_tangential, c3_meridional);
  st.C4m = x.mdot / (kTwoPi * x.r4 * x.b4 * rho * std::cos(x.alpha4));

  // Velocity magnitudes from the triangles; stations 2 and 5 are axial.
  st.C2_norm = st.C2x;
  st.C3_norm = std::hypot(c3_tangential, c3_meridional);
  st.C4_norm = std::hypot(c4_tangential, c4_meridional);
  st.C5_norm = st.C5x;

  const double expo = p.gamma / (p.gamma - 1.0);
  const struct {
    int station;
    double tt, pt, c;
    double* t;
    double* pres;
  } rows[] = {
      {2, state.Tt2, state.Pt2, st.C2x, &st.T2, &st.P2},
      {3, state.Tt3, state.Pt3, st.C3m, &st.T3, &st.P3},
      {4, state.Tt4, state.Pt4, st.C4m, &st.T4, &st.P4},
      {5, state.Tt5, state.Pt5, st.C5x, &st.T5, &st.P5},
  };
  for (const auto& row : rows) {
    const double t = row.tt - sq(row.c) / (2.0 * p.c_p);
    if (!(t > 0.0) || !std::isfinite(t)) {
      fail_non_physical(failure, "static_temperature_not_positive_station" +
                                     std::to_string(row.station));
      return std::nullopt;
    }
    const double mach_sq = sq(row.c) / (p.gamma * p.R * t);
    if (mach_sq >= 1.0) {
      // The constant-density closure is invalid here; reject rather than
      // report constraint values computed outside its regime.
      if (failure != nullptr) {
        failure->reason = FailureReason::supersonic_internal_flow;
        failure->station = row.station;
      }
      return std::nullopt;
    }
    *row.t = t;
    *row.pres = row.pt / std::pow(1.0 + 0.5 * (p.gamma - 1.0) * mach_sq, expo);
  }

  // Ram stream: low Mach through the cores, so statics equal stagnation
  // values; pressures from the perfect-gas law at the ram density.
  st.T1r = p.T_a;
  st.T2r = state.Tt2r;
  st.T3r = state.Tt3r;
  st.P2r = p.rho_air_ram * p.R * st.T2r;
  st.P3r = p.rho_air_ram * p.R * st.T3r;
  return st;
}

MassBreakdown compute_mass_breakdown(const DesignVector& x,
                                     const FixedParameters& p) {
  MassBreakdown m;
  m.hx1 = p.rho_hx * x.Lx1 * x.Ly1 * x.Lz1;
  m.hx2 = p.rho_hx * x.Lx2 * x.Ly2 * x.Lz2;

  const double v_c_blade =
      p.e_c * (p.h_c * x.r3 * (x.r3 - x.r2p) / 2.0 -
               (x.r3 - x.r2t) * (p.h_c * x.r3 - x.b3) / 2.0);
  const double v_c_body = std::numbers::pi * sq(x.r3) * p.h_c *
                              (x.r3 + x.r2p) / 3.0 -
                          std::numbers::pi * p.h_c * std::pow(x.r2p, 3) / 3.0;
  const double v_t_blade =
      p.e_t * (p.h_t * x.r4 * (x.r4 - x.r5p) / 2.0 -
               (x.r4 - x.r5t) * (p.h_t * x.r4 - x.b4) / 2.0);
  const double v_t_body = std::numbers::pi * sq(x.r4) * p.h_t *
                              (x.r4 + x.r5p) / 3.0 -
                          std::numbers::pi * p.h_t * std::pow(x.r5p, 3) / 3.0;

  m.compressor = p.rho_steel * (p.Z_C * v_c_blade + v_c_body);
  m.turbine = p.rho_steel * (p.Z_T * v_t_blade + v_t_body);
  return m;
}

double compute_mass(const DesignVector& x, const FixedParameters& p) {
  return compute_mass_breakdown(x, p).total();
}

double compute_entropy_rate(const StaticState& st, const DesignVector& x,
                            const FixedParameters& p) {
  const double bleed =
      p.c_p * std::log(st.T5 / p.T_a) - p.R * std::log(st.P5 / p.P_a);
  const double ram =
      p.c_p * std::log(st.T3r / p.T_a) - p.R * std::log(st.P3r / p.P_a);
  return x.mdot * bleed + x.mdot_r * ram;
}

SimulationOutcome evaluate(const DesignVector& x, const FixedParameters& p,
                           const EffectivenessModel& model) {
  SimulationOutcome out;
  SimulationFailure failure;

  const DomainReport domain = check_domain(x, p);
  if (!domain.ok) {
    failure.reason = FailureReason::domain_violation;
    failure.violated_restrictions = domain.violated;
    out.failure = failure;
    return out;
  }

  const auto shaft = solve_shaft_speed(x, p, &failure);
  if (!shaft) {
    out.failure = failure;
    return out;
  }
  if (!(shaft->w_compressor > 0.0)) {
    failure.reason = FailureReason::non_physical_state;
    failure.description = "compressor_power_not_positive";
    out.failure = failure;
    return out;
  }
  if (!(shaft->w_turbine < 0.0)) {
    failure.reason = FailureReason::non_physical_state;
    failure.description = "turbine_power_not_negative";
    out.failure = failure;
    return out;
  }

  const double eps1 = model.effectiveness({x.Lx1, x.Ly1, x.Lz1}, x.mdot,
                                          x.mdot_r, p);
  const double eps2 = model.effectiveness({x.Lx2, x.Ly2, x.Lz2}, x.mdot,
                                          x.mdot_r, p);
  if (!(eps1 > 0.0 && eps1 < 1.0 && eps2 > 0.0 && eps2 < 1.0)) {
    failure.reason = FailureReason::non_physical_state;
    failure.description = "effectiveness_outside_unit_interval";
    out.failure = failure;
    return out;
  }

  const auto state = solve_thermal_state(x, p, eps1, eps2, shaft->w_compressor,
                                         shaft->w_turbine, shaft->omega,
                                         &failure);
  if (!state) {
    out.failure = failure;
    return out;
  }

  const auto statics = compute_static_state(*state, x, p, &failure);
  if (!statics) {
    out.failure = failure;
    return out;
  }

  SimulationSuccess success;
  success.state = *state;
  success.statics = *statics;
  success.mass = compute_mass(x, p);
  success.entropy_rate = compute_entropy_rate(*statics, x, p);

  const auto sonic = [&p](double t) { return std::sqrt(p.gamma * p.R * t); };
  auto& c = success.constraints;
  c[0] = p.T_min - statics->T5;
  c[1] = statics->T5 - p.T_max;
  c[2] = p.P_min - statics->P5;
  c[3] = statics->P5 - p.P_max;
  c[4] = 0.5 - eps1;
  c[5] = eps1 - 0.9;
  c[6] = 0.5 - eps2;
  c[7] = eps2 - 0.9;
  c[8] = statics->C2_norm - 0.95 * sonic(statics->T2);
  c[9] = statics->C3_norm - 0.95 * sonic(statics->T3);
  c[10] = statics->C4_norm - 0.95 * sonic(statics->T4);
  c[11] = statics->C5_norm - 0.95 * sonic(statics->T5);
  c[12] = x.r3 * state->omega - sonic(statics->T3);
  c[13] = x.r4 * state->omega - sonic(statics->T4);
  c[14] = compute_heat_load(p) - x.mdot * p.c_p * (p.T_c - statics->T5);

  out.success = success;
  return out;
}

const std::array<std::string, kNumConstraints>& constraint_names() {
  static const std::array<std::string, kNumConstraints> names = {
      "c1", "c2", "c3",  "c4",  "c5",  "c6",  "c7", "c8",
      "c9", "c10", "c11", "c12", "c13", "c14", "c15"};
  return names;
}

}  // namespace bmoo::ecs
