#include "stieltjes/instances.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stieltjes/errors.hpp"
#include "stieltjes/models.hpp"

namespace stieltjes {

Matrix grid_quadratic(Index m, double sigma2) {
  if (m < 2) throw std::invalid_argument("grid_quadratic: m must be >= 2");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("grid_quadratic: sigma2 must be positive");
  const Index n = m * m;
  Matrix q = Matrix::Identity(n, n) / sigma2;
  auto link = [&](Index u, Index v) {
    q(u, v) -= 1.0;
    q(v, u) -= 1.0;
    q(u, u) += 1.0;
    q(v, v) += 1.0;
  };
  for (Index r = 0; r < m; ++r) {
    for (Index c = 0; c < m; ++c) {
      const Index u = r * m + c;
      if (c + 1 < m) link(u, u + 1);
      if (r + 1 < m) link(u, u + m);
    }
  }
  return q;
}

const Matrix& spike_precision() {
  static const Matrix theta = [] {
    Matrix t = 4.0 * Matrix::Identity(9, 9);
    for (Index r = 0; r < 3; ++r) {
      for (Index c = 0; c < 3; ++c) {
        const Index u = 3 * r + c;
        if (c + 1 < 3) t(u, u + 1) = t(u + 1, u) = -1.0;
        if (r + 1 < 3) t(u, u + 3) = t(u + 3, u) = -1.0;
      }
    }
    return t;
  }();
  return theta;
}

TrueSignal true_signal(const GridSpec& spec) {
  if (spec.m < 4) throw std::invalid_argument("true_signal: m must be >= 4");
  static const Matrix spike_factor = [] {
    const Matrix covariance = spike_precision().llt().solve(Matrix::Identity(9, 9));
    return Matrix(covariance.llt().matrixL());
  }();

  TrueSignal signal;
  signal.m = spec.m;
  signal.x = Vector::Zero(spec.m * spec.m);
  for (std::uint64_t h = 0; h < 3; ++h) {
    Rng rng(spec.seed, h + 1);
    const Index row = rng.uniform_int(2, spec.m - 1);
    const Index col = rng.uniform_int(2, spec.m - 1);
    Vector g(9);
    for (Index i = 0; i < 9; ++i) g(i) = rng.normal();
    const Vector spike = spike_factor * g;
    for (Index j1 = 0; j1 < 3; ++j1) {
      for (Index j2 = 0; j2 < 3; ++j2) {
        // 1-based cell (row - 1 + j1, col - 1 + j2).
        const Index r = row - 2 + j1;
        const Index c = col - 2 + j2;
        signal.x(r * spec.m + c) += std::abs(spike(3 * j1 + j2));
      }
    }
    signal.centers.push_back({row, col});
  }
  return signal;
}

Vector observe(const TrueSignal& signal, double sigma2, Rng& rng) {
  const double sigma = std::sqrt(sigma2);
  Vector y(signal.x.size());
  for (Index i = 0; i < y.size(); ++i) y(i) = std::abs(signal.x(i) + sigma * rng.normal());
  return y;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::string instance_id(const GridSpec& spec) {
  const Index n = spec.m * spec.m;
  const Index k = spec.k < 0 ? n : spec.k;
  return "bym_m=" + std::to_string(spec.m) + "_sigma2=" + format_number(spec.sigma2) +
         "_mu=" + format_number(spec.mu) + "_k=" + std::to_string(k) +
         "_seed=" + std::to_string(spec.seed);
}

Instance assemble(const GridSpec& spec) {
  const TrueSignal signal = true_signal(spec);
  Rng noise(spec.seed, 100);
  const Vector y = observe(signal, spec.sigma2, noise);
  const Index n = spec.m * spec.m;

  Instance inst;
  inst.q = grid_quadratic(spec.m, spec.sigma2);
  inst.a = -(2.0 / spec.sigma2) * y;
  inst.c = Vector::Constant(n, spec.mu);
  inst.constant = y.squaredNorm() / spec.sigma2;
  inst.k = spec.k < 0 ? n : spec.k;
  inst.big_m = 10.0;
  inst.meta.id = instance_id(spec);
  inst.meta.grid = spec.m;
  inst.meta.sigma2 = spec.sigma2;
  inst.meta.mu = spec.mu;
  inst.meta.seed = spec.seed;
  inst.meta.y = y;
  return inst;
}

double calibrate_mu(const GridSpec& spec, const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("calibrate_mu: no seeds");
  std::vector<Instance> instances;
  double target = 0.0;
  for (std::uint64_t seed : seeds) {
    GridSpec s = spec;
    s.seed = seed;
    instances.push_back(assemble(s));
    target += static_cast<double>((true_signal(s).x.array() > 0.0).count());
  }
  auto support_total = [&](double mu) {
    double total = 0.0;
    for (Instance& inst : instances) {
      inst.c.setConstant(mu);
      total += solve_pers_c(inst).z.sum();
    }
    return total;
  };
  double lo = std::log(1e-3);
  double hi = std::log(10.0);
  for (int it = 0; it < 30; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double total = support_total(std::exp(mid));
    if (total == target) {
      lo = hi = mid;
      break;
    }
    (total > target ? lo : hi) = mid;
  }
  const double mu = std::exp(0.5 * (lo + hi));
  const double digits = std::pow(10.0, std::floor(std::log10(mu)) - 2.0);
  return std::round(mu / digits) * digits;
}

std::string write_json(const Instance& inst) {
  using nlohmann::ordered_json;
  const Index n = inst.n();
  ordered_json doc;
  doc["id"] = inst.meta.id;
  doc["n"] = n;
  doc["m"] = inst.meta.grid;
  doc["sigma2"] = inst.meta.sigma2;
  doc["mu"] = inst.meta.mu;
  doc["k"] = inst.k;
  doc["seed"] = inst.meta.seed;
  doc["bigM"] = inst.big_m;
  doc["y"] = std::vector<double>(inst.meta.y.begin(), inst.meta.y.end());
  auto triplets = ordered_json::array();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      if (inst.q(i, j) != 0.0) triplets.push_back(ordered_json::array({i, j, inst.q(i, j)}));
    }
  }
  doc["Q"] = {{"triplets", std::move(triplets)}};
  doc["a"] = std::vector<double>(inst.a.begin(), inst.a.end());
  doc["c"] = std::vector<double>(inst.c.begin(), inst.c.end());
  doc["constant"] = inst.constant;
  return doc.dump(1) + "\n";
}

namespace {

template <typename T>
T field(const nlohmann::json& doc, const char* name) {
  if (!doc.contains(name)) throw ParseError(name, "missing field");
  try {
    return doc.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(name, e.what());
  }
}

template <typename T>
T optional_field(const nlohmann::json& doc, const char* name, T fallback) {
  return doc.contains(name) ? field<T>(doc, name) : fallback;
}

Vector vector_field(const nlohmann::json& doc, const char* name, Index n, bool required) {
  if (!doc.contains(name) && !required) return Vector();
  const auto values = field<std::vector<double>>(doc, name);
  if (required && static_cast<Index>(values.size()) != n) {
    throw ParseError(name, "expected " + std::to_string(n) + " entries");
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

}  // namespace

Instance read_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  Instance inst;
  const Index n = field<Index>(doc, "n");
  if (n < 1) throw ParseError("n", "must be positive");
  inst.q = Matrix::Zero(n, n);
  Matrix seen = Matrix::Zero(n, n);
  if (!doc.contains("Q") || !doc["Q"].contains("triplets")) throw ParseError("Q.triplets", "missing field");
  const auto triplets = field<std::vector<std::vector<double>>>(doc["Q"], "triplets");
  for (std::size_t t = 0; t < triplets.size(); ++t) {
    const auto& entry = triplets[t];
    const std::string where = "Q.triplets[" + std::to_string(t) + "]";
    if (entry.size() != 3) throw ParseError(where, "expected [i, j, value]");
    const double fi = entry[0];
    const double fj = entry[1];
    if (fi != std::floor(fi) || fj != std::floor(fj) || fi < 0 || fj < 0 || fi >= n || fj >= n) {
      throw ParseError(where, "index out of range");
    }
    const Index i = static_cast<Index>(fi);
    const Index j = static_cast<Index>(fj);
    if (seen(i, j) != 0.0 && inst.q(i, j) != entry[2]) throw ParseError(where, "conflicting entry");
    inst.q(i, j) = inst.q(j, i) = entry[2];
    seen(i, j) = seen(j, i) = 1.0;
  }
  inst.a = vector_field(doc, "a", n, true);
  inst.c = vector_field(doc, "c", n, true);
  inst.constant = optional_field<double>(doc, "constant", 0.0);
  inst.k = optional_field<Index>(doc, "k", n);
  if (inst.k < 0 || inst.k > n) throw ParseError("k", "outside [0, n]");
  inst.big_m = optional_field<double>(doc, "bigM", 10.0);
  inst.meta.id = optional_field<std::string>(doc, "id", "");
  inst.meta.grid = optional_field<Index>(doc, "m", 0);
  inst.meta.sigma2 = optional_field<double>(doc, "sigma2", 0.0);
  inst.meta.mu = optional_field<double>(doc, "mu", 0.0);
  inst.meta.seed = optional_field<std::uint64_t>(doc, "seed", 0);
  inst.meta.y = vector_field(doc, "y", n, false);
  return inst;
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_json(inst);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Instance inst = read_json(buffer.str());
  if (inst.meta.id.empty()) inst.meta.id = path.stem().string();
  return inst;
}

void write_grid_csv(const Vector& values, Index m, const std::filesystem::path& path) {
  if (values.size() != m * m) throw std::invalid_argument("write_grid_csv: size mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  for (Index r = 0; r < m; ++r) {
    for (Index c = 0; c < m; ++c) out << (c ? "," : "") << values(r * m + c);
    out << '\n';
  }
}

}  // namespace stieltjes
