#include "stieltjes/switching.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "stieltjes/linalg.hpp"

namespace stieltjes {

bool is_stieltjes(const Matrix& q) {
  const Index n = q.rows();
  if (n < 1 || q.cols() != n) return false;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (std::abs(q(i, j) - q(j, i)) > kOffDiagonalTolerance) return false;
      if (i != j && q(i, j) > kOffDiagonalTolerance) return false;
    }
  }
  const double max_diag = q.diagonal().maxCoeff();
  if (!(max_diag > 0.0)) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(q, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return false;
  return solver.eigenvalues()(0) > 1e-10 * max_diag;
}

namespace {

// +1: equal signs required, -1: opposite signs required, 0: unconstrained.
int edge_parity(const Matrix& q, Index i, Index j) {
  if (q(i, j) > kOffDiagonalTolerance) return -1;
  if (q(i, j) < -kOffDiagonalTolerance) return 1;
  return 0;
}

std::vector<Index> path_to_root(const std::vector<Index>& parent, Index v) {
  std::vector<Index> path{v};
  while (parent[v] != v) {
    v = parent[v];
    path.push_back(v);
  }
  return path;
}

}  // namespace

SwitchResult find_switch(const Matrix& q) {
  const Index n = q.rows();
  if (q.cols() != n) throw std::invalid_argument("find_switch: matrix not square");

  std::vector<int> sign(static_cast<std::size_t>(n), 0);
  std::vector<Index> parent(static_cast<std::size_t>(n), -1);
  std::vector<Index> flips;

  for (Index root = 0; root < n; ++root) {
    if (sign[root] != 0) continue;
    std::vector<Index> component{root};
    sign[root] = 1;
    parent[root] = root;
    std::deque<Index> queue{root};
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop_front();
      for (Index w = 0; w < n; ++w) {
        if (w == u) continue;
        const int parity = edge_parity(q, u, w);
        if (parity == 0) continue;
        const int wanted = sign[u] * parity;
        if (sign[w] == 0) {
          sign[w] = wanted;
          parent[w] = u;
          component.push_back(w);
          queue.push_back(w);
        } else if (sign[w] != wanted) {
          // Close the cycle through the lowest common ancestor.
          std::vector<Index> pu = path_to_root(parent, u);
          std::vector<Index> pw = path_to_root(parent, w);
          while (pu.size() > 1 && pw.size() > 1 && pu[pu.size() - 2] == pw[pw.size() - 2]) {
            pu.pop_back();
            pw.pop_back();
          }
          std::vector<Index> cycle(pu.begin(), pu.end());
          for (auto it = pw.rbegin() + 1; it != pw.rend(); ++it) cycle.push_back(*it);
          return SwitchInfeasible{std::move(cycle)};
        }
      }
    }
    std::vector<Index> negative;
    for (Index v : component) {
      if (sign[v] < 0) negative.push_back(v);
    }
    if (2 * negative.size() > component.size()) {
      for (Index v : component) {
        if (sign[v] > 0) flips.push_back(v);
      }
    } else {
      flips.insert(flips.end(), negative.begin(), negative.end());
    }
  }
  return SwitchSet{SupportSet(n, std::move(flips))};
}

Matrix apply_switch(const Matrix& q, const SwitchSet& s) {
  Matrix out = q;
  for (Index j = 0; j < q.cols(); ++j) {
    for (Index i = 0; i < q.rows(); ++i) {
      if (s.flipped(i) != s.flipped(j)) out(i, j) = -q(i, j);
    }
  }
  return out;
}

Vector apply_switch(const Vector& x, const SwitchSet& s) {
  Vector out = x;
  for (Index i : s.flips) out(i) = -x(i);
  return out;
}

int positive_edges_on_cycle(const Matrix& q, const std::vector<Index>& cycle) {
  int count = 0;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const Index i = cycle[k];
    const Index j = cycle[(k + 1) % cycle.size()];
    if (q(i, j) > kOffDiagonalTolerance) ++count;
  }
  return count;
}

}  // namespace stieltjes
