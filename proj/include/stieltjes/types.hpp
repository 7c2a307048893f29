#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace stieltjes {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

/// Sorted, duplicate-free subset of {0, ..., n-1}.
class SupportSet {
 public:
  explicit SupportSet(Index n = 0) : n_(n) {}
  SupportSet(Index n, std::vector<Index> members);
  SupportSet(Index n, std::initializer_list<Index> members)
      : SupportSet(n, std::vector<Index>(members)) {}

  /// Members are the indices with z_i > 0.5.
  static SupportSet from_indicator(const Vector& z);
  /// Bit i of mask set <=> i in S.
  static SupportSet from_mask(Index n, std::uint64_t mask);

  Index dimension() const { return n_; }
  Index size() const { return static_cast<Index>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(Index i) const;
  const std::vector<Index>& members() const { return members_; }

  SupportSet with(Index k) const;
  Vector indicator() const;
  std::uint64_t mask() const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  Index n_;
  std::vector<Index> members_;
};

/// Lexicographic order on the sorted member lists; the empty set is smallest.
bool lexicographically_less(const SupportSet& a, const SupportSet& b);

}  // namespace stieltjes
