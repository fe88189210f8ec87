#include "bmoo/ecs/params.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace bmoo::ecs {

namespace {

using FieldMap = std::map<std::string, double FixedParameters::*>;

const FieldMap& field_map() {
  static const FieldMap fields = {
      {"T_a", &FixedParameters::T_a},
      {"P_a", &FixedParameters::P_a},
      {"N_pax", &FixedParameters::N_pax},
      {"N_crew", &FixedParameters::N_crew},
      {"P_pax", &FixedParameters::P_pax},
      {"P_crew", &FixedParameters::P_crew},
      {"P_eq", &FixedParameters::P_eq},
      {"P_out", &FixedParameters::P_out},
      {"T_t1", &FixedParameters::T_t1},
      {"P_t1", &FixedParameters::P_t1},
      {"dP_hx", &FixedParameters::dP_hx},
      {"theta", &FixedParameters::theta},
      {"A_r", &FixedParameters::A_r},
      {"eta_F", &FixedParameters::eta_F},
      {"c_p", &FixedParameters::c_p},
      {"gamma", &FixedParameters::gamma},
      {"R", &FixedParameters::R},
      {"mu", &FixedParameters::mu},
      {"mu_r", &FixedParameters::mu_r},
      {"beta_ht", &FixedParameters::beta_ht},
      {"beta_ht_r", &FixedParameters::beta_ht_r},
      {"plate_b", &FixedParameters::plate_b},
      {"plate_b_r", &FixedParameters::plate_b_r},
      {"Pr", &FixedParameters::Pr},
      {"Pr_r", &FixedParameters::Pr_r},
      {"Dh", &FixedParameters::Dh},
      {"Dh_r", &FixedParameters::Dh_r},
      {"lambda_c", &FixedParameters::lambda_c},
      {"lambda_c_r", &FixedParameters::lambda_c_r},
      {"rho_hx", &FixedParameters::rho_hx},
      {"delta_fin", &FixedParameters::delta_fin},
      {"t_w", &FixedParameters::t_w},
      {"k_w", &FixedParameters::k_w},
      {"eta_C", &FixedParameters::eta_C},
      {"eta_T", &FixedParameters::eta_T},
      {"h_c", &FixedParameters::h_c},
      {"h_t", &FixedParameters::h_t},
      {"e_c", &FixedParameters::e_c},
      {"e_t", &FixedParameters::e_t},
      {"Z_C", &FixedParameters::Z_C},
      {"Z_T", &FixedParameters::Z_T},
      {"T_min", &FixedParameters::T_min},
      {"T_max", &FixedParameters::T_max},
      {"P_min", &FixedParameters::P_min},
      {"P_max", &FixedParameters::P_max},
      {"T_c", &FixedParameters::T_c},
      {"rho_air", &FixedParameters::rho_air},
      {"rho_air_ram", &FixedParameters::rho_air_ram},
      {"rho_steel", &FixedParameters::rho_steel},
  };
  return fields;
}

}  // namespace

FixedParameters FixedParameters::from_json_text(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (!doc.is_object()) {
    throw std::invalid_argument("params: expected a JSON object");
  }
  FixedParameters out;
  const auto& fields = field_map();
  for (const auto& [key, value] : doc.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) {
      throw std::invalid_argument("params: unknown key \"" + key + "\"");
    }
    if (!value.is_number()) {
      throw std::invalid_argument("params: key \"" + key +
                                  "\" must be a number");
    }
    out.*(it->second) = value.get<double>();
  }
  return out;
}

std::string FixedParameters::to_json_text() const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [key, member] : field_map()) {
    doc[key] = this->*member;
  }
  return doc.dump(2);
}

double compute_heat_load(const FixedParameters& p) {
  return p.P_out + p.P_eq + p.N_pax * p.P_pax + p.N_crew * p.P_crew;
}

}  // namespace bmoo::ecs
