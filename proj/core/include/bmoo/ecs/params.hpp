#pragma once

#include <string>

namespace bmoo::ecs {

/// Fixed model parameters: simulation constants, heat-exchanger surface
/// data, rotating-machine data, cabin scenario bounds and the two assumed
/// constant densities. All values are overridable from JSON (keys match the
/// ASCII field notation, e.g. "T_a", "eta_F").
struct FixedParameters {
  // Simulation parameters
  double T_a = 323.0;      ///< ambient temperature [K]
  double P_a = 101.3e3;    ///< ambient pressure [Pa]
  double N_pax = 120.0;    ///< passenger count
  double N_crew = 5.0;     ///< crew count
  double P_pax = 70.0;     ///< thermal power per passenger [W]
  double P_crew = 100.0;   ///< thermal power per crew member [W]
  double P_eq = 4800.0;    ///< equipment thermal power [W]
  double P_out = 3000.0;   ///< outside flow dissipation [W]
  double T_t1 = 473.0;     ///< bleed stagnation temperature at entry [K]
  double P_t1 = 260.0e3;   ///< bleed stagnation pressure at entry [Pa]
  double dP_hx = 40.0e3;   ///< stagnation pressure loss per exchanger [Pa]
  double theta = 0.0;      ///< valve opening; scenario keeps the bypass wide open (unused)
  double A_r = 0.20;       ///< ram stream cross surface [m^2]
  double eta_F = 0.95;     ///< fan efficiency
  double c_p = 1004.0;     ///< air specific heat [J/(kg K)]
  double gamma = 1.4;      ///< isentropic coefficient
  double R = 287.0;        ///< gas constant [J/(kg K)]

  // Heat exchangers
  double mu = 2.28e-5;        ///< bleed viscosity [kg/(m s)]
  double mu_r = 2.28e-5;      ///< ram viscosity [kg/(m s)]
  double beta_ht = 2231.0;    ///< bleed heat-transfer area per volume [1/m]
  double beta_ht_r = 1115.0;  ///< ram heat-transfer area per volume [1/m]
  double plate_b = 5.21e-3;   ///< bleed plate spacing [m]
  double plate_b_r = 12.3e-3; ///< ram plate spacing [m]
  double Pr = 0.7;            ///< bleed Prandtl number
  double Pr_r = 0.7;          ///< ram Prandtl number
  double Dh = 1.54e-3;        ///< bleed hydraulic diameter [m]
  double Dh_r = 3.41e-3;      ///< ram hydraulic diameter [m]
  double lambda_c = 0.035;    ///< bleed convection (fin) length [m]
  double lambda_c_r = 0.035;  ///< ram convection (fin) length [m]
  double rho_hx = 1415.0;     ///< exchanger representative density [kg/m^3]
  double delta_fin = 0.102e-3;///< fin thickness [m]
  double t_w = 6e-4;          ///< wall thickness [m]
  double k_w = 237.0;         ///< wall conductivity [W/(m K)]

  // Compressor / turbine
  double eta_C = 0.8;   ///< compressor adiabatic efficiency
  double eta_T = 0.92;  ///< turbine adiabatic efficiency
  double h_c = 0.7;     ///< compressor aspect ratio
  double h_t = 0.5;     ///< turbine aspect ratio
  double e_c = 0.01;    ///< compressor blade thickness [m]
  double e_t = 0.01;    ///< turbine blade thickness [m]
  double Z_C = 21.0;    ///< compressor blade count
  double Z_T = 21.0;    ///< turbine blade count

  // Cabin scenario bounds
  double T_min = 288.15;        ///< minimum injection temperature [K]
  double T_max = 298.15;        ///< maximum injection temperature [K]
  double P_min = 101.3e3;       ///< minimum injection pressure [Pa]
  double P_max = 1.05 * 101.3e3;///< maximum injection pressure [Pa]
  double T_c = 297.15;          ///< cabin temperature [K]

  // Assumed constant densities (see README):
  // rho_air is the bleed-stream density used by the machine equations and
  // the bleed statics; defaults to the bleed entry state P_t1/(R*T_t1).
  // rho_air_ram is the ram-stream density used for the ram static
  // pressures via the perfect-gas law; defaults to the ambient state
  // P_a/(R*T_a) so the ram entropy contribution vanishes at equilibrium.
  double rho_air = 260.0e3 / (287.0 * 473.0);
  double rho_air_ram = 101.3e3 / (287.0 * 323.0);

  double rho_steel = 7850.0;  ///< rotating machine material density [kg/m^3]

  /// Parses a JSON object keyed by the field notation above. Missing keys
  /// keep their defaults; unknown keys raise std::invalid_argument naming
  /// the key; non-numeric values raise std::invalid_argument.
  static FixedParameters from_json_text(const std::string& text);
  std::string to_json_text() const;
};

/// Total thermal load the cabin must reject:
/// P_out + P_eq + N_pax*P_pax + N_crew*P_crew.
double compute_heat_load(const FixedParameters& params);

}  // namespace bmoo::ecs
