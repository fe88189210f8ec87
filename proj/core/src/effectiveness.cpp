#include "bmoo/ecs/effectiveness.hpp"

#include <cmath>

namespace bmoo::ecs {

double crossflow_effectiveness(double ntu, double cr) {
  if (ntu <= 0.0) return 0.0;
  const double a = std::pow(ntu, 0.22) / cr;
  const double b = std::exp(-cr * std::pow(ntu, 0.78)) - 1.0;
  return 1.0 - std::exp(a * b);
}

namespace {

struct SideState {
  double h = 0.0;       // convection coefficient [W/(m^2 K)]
  double area = 0.0;    // transfer area [m^2]
  double fin_eff = 0.0; // overall surface efficiency
};

SideState side(double mdot, double frontal, double sigma, double area,
               double dh, double mu, double pr, double fin_length,
               const FixedParameters& p) {
  SideState s;
  s.area = area;
  const double g = mdot / (sigma * frontal);
  const double re = g * dh / mu;
  const double j = 0.53 / std::sqrt(re);
  s.h = j * g * p.c_p / std::pow(pr, 2.0 / 3.0);
  const double m = std::sqrt(2.0 * s.h / (p.k_w * p.delta_fin));
  const double ml = m * fin_length;
  s.fin_eff = ml > 1e-12 ? std::tanh(ml) / ml : 1.0;
  return s;
}

}  // namespace

double CompactCrossflowModel::transfer_coefficient(
    const HxGeometry& g, double mdot_hot, double mdot_cold,
    const FixedParameters& p) const {
  const double v = g.volume();
  const double pitch = p.plate_b + p.plate_b_r + 2.0 * p.t_w;
  const double sigma_hot = p.plate_b / pitch;
  const double sigma_cold = p.plate_b_r / pitch;

  const SideState hot =
      side(mdot_hot, g.Ly * g.Lz, sigma_hot, p.beta_ht * v, p.Dh, p.mu, p.Pr,
           0.5 * p.lambda_c, p);
  const SideState cold =
      side(mdot_cold, g.Lx * g.Lz, sigma_cold, p.beta_ht_r * v, p.Dh_r,
           p.mu_r, p.Pr_r, 0.5 * p.lambda_c_r, p);

  const double wall_area = g.Lx * g.Ly * (g.Lz / pitch);
  const double r_wall = p.t_w / (p.k_w * wall_area);
  const double r_total = 1.0 / (hot.fin_eff * hot.h * hot.area) + r_wall +
                         1.0 / (cold.fin_eff * cold.h * cold.area);
  return 1.0 / r_total;
}

double CompactCrossflowModel::effectiveness(const HxGeometry& g,
                                            double mdot_hot, double mdot_cold,
                                            const FixedParameters& p) const {
  const double ua = transfer_coefficient(g, mdot_hot, mdot_cold, p);
  const double ntu = ua / (p.c_p * mdot_hot);
  const double cr = mdot_hot / mdot_cold;  // equal c_p on both sides
  return crossflow_effectiveness(ntu, cr);
}

const EffectivenessModel& default_effectiveness_model() {
  static const CompactCrossflowModel model;
  return model;
}

}  // namespace bmoo::ecs
