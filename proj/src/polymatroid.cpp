#include "stieltjes/polymatroid.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "stieltjes/errors.hpp"
#include "stieltjes/linalg.hpp"

namespace stieltjes {

Matrix PolymatroidCut::coefficient(Index k) const {
  return factors.col(k) * factors.col(k).transpose();
}

Matrix PolymatroidCut::rhs(const Vector& z) const {
  const Index n = dimension();
  Vector weights(n);
  for (Index k = 0; k < n; ++k) weights(k) = z(perm[k]);
  return factors * weights.asDiagonal() * factors.transpose();
}

Vector PolymatroidCut::row_coefficients(Index i, Index j) const {
  const Index n = dimension();
  Vector coef = Vector::Zero(n);
  for (Index k = 0; k < n; ++k) coef(perm[k]) = factors(i, k) * factors(j, k);
  return coef;
}

double theta(const Matrix& q, const SupportSet& s, Index i, Index j) {
  if (!s.contains(i) || !s.contains(j)) return 0.0;
  return sub_pseudoinverse(q, s)(i, j);
}

Matrix big_r(const Matrix& q, Index k, const SupportSet& s) {
  if (s.contains(k)) throw std::invalid_argument("big_r: k already in S");
  const Index n = q.rows();
  const auto& members = s.members();
  const Index m = s.size();

  Matrix sub_inv(m, m);
  Vector border(m);
  if (m > 0) {
    const Matrix padded = sub_pseudoinverse(q, s);
    for (Index c = 0; c < m; ++c) {
      border(c) = q(members[c], k);
      for (Index r = 0; r < m; ++r) sub_inv(r, c) = padded(members[r], members[c]);
    }
  }
  const auto update = rank_one_inverse_update(sub_inv, border, q(k, k));

  std::vector<Index> coords(members.begin(), members.end());
  coords.push_back(k);
  Matrix out = Matrix::Zero(n, n);
  for (Index c = 0; c <= m; ++c) {
    for (Index r = 0; r <= m; ++r) {
      out(coords[r], coords[c]) = update.scale * update.u(r) * update.u(c);
    }
  }
  return out;
}

double rho(const Matrix& q, Index k, const SupportSet& s, Index i, Index j) {
  return big_r(q, k, s)(i, j);
}

std::vector<Index> separation_order(const Vector& z_bar) {
  std::vector<Index> order(static_cast<std::size_t>(z_bar.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return z_bar(a) > z_bar(b); });
  return order;
}

PolymatroidCut cut_for_permutation(const Matrix& q_inv, std::span<const Index> perm) {
  auto factor = cholesky_ordered(q_inv, perm);
  PolymatroidCut cut{std::move(factor.order), std::move(factor.columns)};
  // Inverses of Stieltjes submatrices are nonnegative; clear rounding noise only.
  const double noise = 1e-13 * cut.factors.cwiseAbs().maxCoeff();
  cut.factors = (cut.factors.array() < 0.0 && cut.factors.array() > -noise)
                    .select(0.0, cut.factors);
  return cut;
}

PolymatroidCut separate(const Matrix& q, const Matrix& q_inv, const Vector& z_bar) {
  if (q.rows() != z_bar.size() || q_inv.rows() != z_bar.size()) {
    throw std::invalid_argument("separate: dimension mismatch");
  }
  Vector z = z_bar.cwiseMax(0.0).cwiseMin(1.0);
  const double excursion = (z - z_bar).cwiseAbs().maxCoeff();
  if (excursion > 1e-6) {
    std::clog << "separate: z_bar outside [0,1] by " << excursion << ", clamped\n";
  }
  const std::vector<Index> order = separation_order(z);
  return cut_for_permutation(q_inv, order);
}

Matrix cut_violation(const PolymatroidCut& cut, const Vector& z_bar, const Matrix& w_bar) {
  return cut.rhs(z_bar) - w_bar;
}

std::vector<StieltjesPolytopePoint> enumerate_extreme_points(const Matrix& q) {
  const Index n = q.rows();
  if (n > kMaxEnumerationDimension) {
    throw TooLarge("enumerate_extreme_points: n = " + std::to_string(n) + " exceeds 16");
  }
  std::vector<StieltjesPolytopePoint> points;
  points.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const SupportSet s = SupportSet::from_mask(n, mask);
    points.push_back({s.indicator(), sub_pseudoinverse(q, s)});
  }
  return points;
}

std::vector<FacetFixture> facet_fixture_points(const Matrix& q, Index i, Index j,
                                               std::span<const Index> perm) {
  const Index n = q.rows();
  if (!is_permutation(perm, n)) throw std::invalid_argument("facet_fixture_points: bad perm");
  const Matrix q_inv = sub_pseudoinverse(q, SupportSet(n, std::vector<Index>(perm.begin(), perm.end())));  // all of [n]
  const Vector ones = Vector::Ones(n);

  std::vector<FacetFixture> fixtures;
  fixtures.push_back({1, 0, {ones, q_inv}});
  for (Index l = 0; l < n; ++l) {
    for (Index k = 0; k < n; ++k) {
      if (k == i && l == j) continue;
      Matrix w = q_inv;
      w(k, l) -= 1.0;
      fixtures.push_back({2, k + n * l, {ones, std::move(w)}});
    }
  }
  std::vector<Index> chain;
  for (Index k = 0; k <= n; ++k) {
    const SupportSet s(n, chain);
    fixtures.push_back({3, k, {s.indicator(), sub_pseudoinverse(q, s)}});
    if (k < n) chain.push_back(perm[k]);
  }
  return fixtures;
}

std::string cut_to_json(const PolymatroidCut& cut) {
  nlohmann::json doc;
  doc["perm"] = cut.perm;
  auto factors = nlohmann::json::array();
  for (Index k = 0; k < cut.factors.cols(); ++k) {
    factors.push_back(std::vector<double>(cut.factors.col(k).begin(), cut.factors.col(k).end()));
  }
  doc["factors"] = std::move(factors);
  return doc.dump();
}

PolymatroidCut cut_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("cut", e.what());
  }
  if (!doc.contains("perm") || !doc.contains("factors")) throw ParseError("cut", "missing perm/factors");
  PolymatroidCut cut;
  cut.perm = doc["perm"].get<std::vector<Index>>();
  const auto columns = doc["factors"].get<std::vector<std::vector<double>>>();
  const Index n = static_cast<Index>(cut.perm.size());
  if (static_cast<Index>(columns.size()) != n) throw ParseError("factors", "expected n columns");
  cut.factors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    if (static_cast<Index>(columns[k].size()) != n) throw ParseError("factors", "column length");
    for (Index r = 0; r < n; ++r) cut.factors(r, k) = columns[k][r];
  }
  if (!is_permutation(cut.perm, n)) throw ParseError("perm", "not a permutation");
  return cut;
}

}  // namespace stieltjes
