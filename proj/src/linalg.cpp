#include "stieltjes/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>

namespace stieltjes {

SupportSet::SupportSet(Index n, std::vector<Index> members) : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw std::invalid_argument("SupportSet: duplicate member");
  }
  if (!members_.empty() && (members_.front() < 0 || members_.back() >= n_)) {
    throw std::invalid_argument("SupportSet: member out of range");
  }
}

SupportSet SupportSet::from_indicator(const Vector& z) {
  std::vector<Index> members;
  for (Index i = 0; i < z.size(); ++i) {
    if (z(i) > 0.5) members.push_back(i);
  }
  return SupportSet(z.size(), std::move(members));
}

SupportSet SupportSet::from_mask(Index n, std::uint64_t mask) {
  std::vector<Index> members;
  for (Index i = 0; i < n; ++i) {
    if (mask & (std::uint64_t{1} << i)) members.push_back(i);
  }
  return SupportSet(n, std::move(members));
}

bool SupportSet::contains(Index i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

SupportSet SupportSet::with(Index k) const {
  if (contains(k)) return *this;
  std::vector<Index> members = members_;
  members.push_back(k);
  return SupportSet(n_, std::move(members));
}

Vector SupportSet::indicator() const {
  Vector z = Vector::Zero(n_);
  for (Index i : members_) z(i) = 1.0;
  return z;
}

std::uint64_t SupportSet::mask() const {
  std::uint64_t m = 0;
  for (Index i : members_) m |= std::uint64_t{1} << i;
  return m;
}

bool lexicographically_less(const SupportSet& a, const SupportSet& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool is_permutation(std::span<const Index> order, Index n) {
  if (static_cast<Index>(order.size()) != n) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index i : order) {
    if (i < 0 || i >= n || seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

SymEig sym_eig(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("sym_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix psd_project(const Matrix& a) {
  const SymEig eig = sym_eig(a);
  if (eig.values.minCoeff() >= 0.0) return a;
  const Vector clipped = eig.values.cwiseMax(0.0);
  Matrix out = eig.vectors * clipped.asDiagonal() * eig.vectors.transpose();
  return symmetrize(out);
}

double min_eigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("min_eigenvalue: eigensolver did not converge");
  }
  return solver.eigenvalues()(0);
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

}  // namespace stieltjes
