#pragma once

#include "bmoo/ecs/params.hpp"

namespace bmoo::ecs {

struct HxGeometry {
  double Lx = 0.0;
  double Ly = 0.0;
  double Lz = 0.0;
  double volume() const { return Lx * Ly * Lz; }
};

/// Crossflow (both fluids unmixed) effectiveness as a function of Ntu and
/// the capacity ratio Cr = Cmin/Cmax:
///   eps = 1 - exp{ (1/Cr) * Ntu^0.22 * [exp(-Cr * Ntu^0.78) - 1] }
double crossflow_effectiveness(double ntu, double cr);

/// Effectiveness closure for one exchanger. The solver only sees this
/// interface so alternative surface models can be swapped in.
class EffectivenessModel {
 public:
  virtual ~EffectivenessModel() = default;

  /// Hot stream is the bleed (Cmin side; callers guarantee
  /// mdot_hot <= mdot_cold), cold stream is the ram.
  virtual double effectiveness(const HxGeometry& geometry, double mdot_hot,
                               double mdot_cold,
                               const FixedParameters& params) const = 0;
};

/// Default closure for a compact plate-fin crossflow core:
///  - transfer area per stream A = beta_ht * V,
///  - mass flux from the frontal area and the free-flow fraction given by
///    the plate spacings (hot flows along x, cold along y, stacking along z),
///  - Colburn analogy j = St * Pr^(2/3) with j = 0.53 * Re^(-1/2),
///    Re = G * Dh / mu,
///  - fin efficiency tanh(m l)/(m l), m = sqrt(2 h / (k_w delta_fin)),
///    l = lambda_c / 2 per stream,
///  - wall resistance t_w / (k_w A_w) across the parting sheets,
/// then the crossflow eps-Ntu relation above.
class CompactCrossflowModel final : public EffectivenessModel {
 public:
  double effectiveness(const HxGeometry& geometry, double mdot_hot,
                       double mdot_cold,
                       const FixedParameters& params) const override;

  /// Exposed for diagnostics.
  double transfer_coefficient(const HxGeometry& geometry, double mdot_hot,
                              double mdot_cold,
                              const FixedParameters& params) const;
};

const EffectivenessModel& default_effectiveness_model();

}  // namespace bmoo::ecs
