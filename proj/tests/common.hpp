#pragma once

#include <Eigen/Core>

#include "stieltjes/instance.hpp"
#include "stieltjes/types.hpp"

namespace stieltjes::testing {

inline Matrix three_node_q() {
  Matrix q(3, 3);
  q << 2, -1, -1, -1, 3, -1, -1, -1, 2;
  return q;
}

inline Matrix three_node_q_inv() {
  Matrix a(3, 3);
  a << 5.0 / 3, 1, 4.0 / 3, 1, 1, 1, 4.0 / 3, 1, 5.0 / 3;
  return a;
}

// a = -2e, c = 0.6e, no cap.  Optimum -9.2 at the full support.
inline Instance three_node_instance() {
  Instance inst;
  inst.q = three_node_q();
  inst.a = Vector::Constant(3, -2.0);
  inst.c = Vector::Constant(3, 0.6);
  inst.k = 3;
  inst.meta.id = "three-node";
  return inst;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace stieltjes::testing
