#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bmoo/ecs/design.hpp"
#include "bmoo/ecs/effectiveness.hpp"
#include "bmoo/ecs/params.hpp"

namespace bmoo::ecs {

inline constexpr std::size_t kNumConstraints = 15;

/// Solution of the coupled stagnation-state system (13 unknowns).
struct StateVector {
  double Tt2 = 0.0, Tt3 = 0.0, Tt4 = 0.0, Tt5 = 0.0;  ///< bleed [K]
  double Tt2r = 0.0, Tt3r = 0.0;                      ///< ram [K]
  double Pt2 = 0.0, Pt3 = 0.0, Pt4 = 0.0, Pt5 = 0.0;  ///< bleed [Pa]
  double w_compressor = 0.0;  ///< power to fluid from compressor, > 0 [W]
  double w_turbine = 0.0;     ///< power to fluid from turbine, < 0 [W]
  double omega = 0.0;         ///< shaft speed [rad/s]
};

/// Static (thermodynamic) conditions at the numbered stations.
struct StaticState {
  double T2 = 0.0, T3 = 0.0, T4 = 0.0, T5 = 0.0;      ///< bleed statics [K]
  double P2 = 0.0, P3 = 0.0, P4 = 0.0, P5 = 0.0;      ///< bleed statics [Pa]
  double C2x = 0.0, C3m = 0.0, C4m = 0.0, C5x = 0.0;  ///< station velocities [m/s]
  double T1r = 0.0, T2r = 0.0, T3r = 0.0;             ///< ram statics [K]
  double P2r = 0.0, P3r = 0.0;                        ///< ram statics [Pa]
  // Full velocity magnitudes assembled from the velocity triangles; these
  // feed the near-sonic constraints at stations 2..5.
  double C2_norm = 0.0, C3_norm = 0.0, C4_norm = 0.0, C5_norm = 0.0;
};

/// Result of the design-variable restriction checks d1..d9.
struct DomainReport {
  bool ok = false;
  std::vector<int> violated;  ///< restriction indices in 1..9
  double discriminant = 0.0;  ///< discriminant of the shaft-speed quadratic
};

enum class FailureReason {
  domain_violation,
  no_real_shaft_speed,
  non_positive_shaft_speed,
  non_physical_state,
  supersonic_internal_flow,
};

struct SimulationFailure {
  FailureReason reason = FailureReason::non_physical_state;
  std::vector<int> violated_restrictions;  ///< for domain_violation
  int station = 0;                         ///< for supersonic_internal_flow
  std::string description;                 ///< for non_physical_state

  /// Compact single-token form, e.g. "DomainViolation(d4;d8)",
  /// "SupersonicInternalFlow(station3)".
  std::string to_string() const;
};

struct SimulationSuccess {
  double mass = 0.0;          ///< [kg]
  double entropy_rate = 0.0;  ///< [W/K]
  std::array<double, kNumConstraints> constraints{};  ///< <= 0 is satisfied
  StateVector state;
  StaticState statics;
  bool feasible() const;
};

/// Outcome of one simulator call: either a full success record or a typed
/// failure (the hidden-constraint signal). Never throws.
struct SimulationOutcome {
  std::optional<SimulationSuccess> success;
  std::optional<SimulationFailure> failure;
  bool ok() const { return success.has_value(); }
};

struct ShaftSolution {
  double omega = 0.0;
  double w_compressor = 0.0;
  double w_turbine = 0.0;
};

/// Coefficients of the shaft-speed quadratic a w^2 + b w + c = 0 obtained
/// by eliminating the machine powers from the energy balance.
struct ShaftQuadratic {
  double a = 0.0, b = 0.0, c = 0.0;
  double discriminant() const { return b * b - 4.0 * a * c; }
};

ShaftQuadratic shaft_quadratic(const DesignVector& x,
                               const FixedParameters& params);

/// Evaluates the design-variable restrictions d1..d9; reports, never throws.
DomainReport check_domain(const DesignVector& x, const FixedParameters& params);

/// Solves the shaft-speed quadratic, taking the largest real root, and
/// returns the machine powers at that speed. Fails with
/// no_real_shaft_speed / non_positive_shaft_speed.
SimulationOutcome solve_shaft_speed_outcome(const DesignVector& x,
                                            const FixedParameters& params);
/// Same, with the solution exposed directly (empty on failure).
std::optional<ShaftSolution> solve_shaft_speed(const DesignVector& x,
                                               const FixedParameters& params,
                                               SimulationFailure* failure = nullptr);

/// Solves the linear stagnation-state coupling of the two exchangers, the
/// compressor and the turbine given the effectivenesses and machine powers.
/// Fails with non_physical_state when a temperature or pressure drops to
/// zero or the coupling is singular.
std::optional<StateVector> solve_thermal_state(
    const DesignVector& x, const FixedParameters& params, double eps1,
    double eps2, double w_compressor, double w_turbine, double omega,
    SimulationFailure* failure = nullptr);

/// Static conditions at stations 2..5 plus the ram-side statics. Fails with
/// non_physical_state (T <= 0) or supersonic_internal_flow (M >= 1).
std::optional<StaticState> compute_static_state(
    const StateVector& state, const DesignVector& x,
    const FixedParameters& params, SimulationFailure* failure = nullptr);

struct MassBreakdown {
  double hx1 = 0.0, hx2 = 0.0;
  double compressor = 0.0, turbine = 0.0;
  double total() const { return hx1 + hx2 + compressor + turbine; }
};

MassBreakdown compute_mass_breakdown(const DesignVector& x,
                                     const FixedParameters& params);
double compute_mass(const DesignVector& x, const FixedParameters& params);

/// Entropy generation rate along the bleed and ram streams, entrance to
/// exit, from the exit static conditions.
double compute_entropy_rate(const StaticState& statics, const DesignVector& x,
                            const FixedParameters& params);

/// Full simulator: domain check, shaft solve, exchanger effectivenesses,
/// thermal state, statics, objectives and the 15 constraints. A pure
/// function of (x, params, model).
SimulationOutcome evaluate(const DesignVector& x, const FixedParameters& params,
                           const EffectivenessModel& model =
                               default_effectiveness_model());

/// Names c1..c15 in the order stored in SimulationSuccess::constraints.
const std::array<std::string, kNumConstraints>& constraint_names();

}  // namespace bmoo::ecs
