#include "bmoo/ecs/table2.hpp"

#include <stdexcept>

namespace bmoo::ecs {

namespace {

DesignVector make(double mdot, double mdot_r, double r2p, double r2t,
                  double r3, double b3, double beta3, double r5p, double r5t,
                  double r4, double b4, double alpha4, double lx1, double ly1,
                  double lz1, double lx2, double ly2, double lz2) {
  DesignVector x;
  x.mdot = mdot;
  x.mdot_r = mdot_r;
  x.r2p = r2p;
  x.r2t = r2t;
  x.r3 = r3;
  x.b3 = b3;
  x.beta3 = beta3;
  x.r5p = r5p;
  x.r5t = r5t;
  x.r4 = r4;
  x.b4 = b4;
  x.alpha4 = alpha4;
  x.Lx1 = lx1;
  x.Ly1 = ly1;
  x.Lz1 = lz1;
  x.Lx2 = lx2;
  x.Ly2 = ly2;
  x.Lz2 = lz2;
  return x;
}

}  // namespace

const std::array<ReferenceDesign, 7>& reference_designs() {
  static const std::array<ReferenceDesign, 7> designs = {{
      {1,
       make(2.95, 7.74, 0.07, 0.10, 0.10, 0.01, 0.36, 0.03, 0.05, 0.10, 0.02,
            1.04, 0.67, 0.65, 0.03, 0.66, 0.69, 0.03),
       49.78, 0.47},
      {2,
       make(2.92, 6.86, 0.05, 0.08, 0.11, 0.01, 0.74, 0.03, 0.05, 0.10, 0.02,
            0.50, 0.65, 0.68, 0.04, 0.69, 0.53, 0.06),
       77.13, 0.45},
      {3,
       make(2.94, 5.63, 0.05, 0.08, 0.10, 0.05, 0.97, 0.03, 0.05, 0.11, 0.04,
            0.89, 0.68, 0.61, 0.07, 0.66, 0.68, 0.09),
       117.00, 0.43},
      {4,
       make(2.94, 5.06, 0.03, 0.08, 0.10, 0.05, -0.16, 0.03, 0.05, 0.12, 0.02,
            1.01, 0.68, 0.67, 0.12, 0.66, 0.65, 0.10),
       156.57, 0.43},
      {5,
       make(2.94, 4.64, 0.03, 0.06, 0.12, 0.04, 0.61, 0.03, 0.05, 0.11, 0.04,
            0.44, 0.63, 0.67, 0.17, 0.70, 0.65, 0.17),
       240.03, 0.42},
      {6,
       make(2.95, 4.40, 0.07, 0.09, 0.12, 0.02, 0.94, 0.03, 0.05, 0.10, 0.03,
            0.79, 0.69, 0.66, 0.20, 0.68, 0.68, 0.25),
       312.40, 0.41},
      {7,
       make(2.94, 4.27, 0.04, 0.10, 0.13, 0.03, 0.48, 0.03, 0.05, 0.11, 0.03,
            0.30, 0.70, 0.65, 0.32, 0.69, 0.65, 0.36),
       466.69, 0.41},
  }};
  return designs;
}

const ReferenceDesign& reference_design(int key) {
  if (key < 1 || key > 7) {
    throw std::out_of_range("reference design key must be in 1..7");
  }
  return reference_designs()[static_cast<std::size_t>(key - 1)];
}

}  // namespace bmoo::ecs
