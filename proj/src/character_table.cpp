#include "hsp/character_table.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace hsp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sort key for one character value: phase in [0, 2pi), then modulus.
std::pair<double, double> phase_key(Complex z) {
  const double r = std::abs(z);
  if (r < 1e-12) return {0.0, 0.0};
  double phi = std::atan2(z.imag(), z.real());
  if (phi < 0) phi += kTwoPi;
  if (phi > kTwoPi - 1e-9) phi = 0.0;
  return {phi, r};
}

bool row_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  constexpr double eps = 1e-9;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const auto ka = phase_key(a[c]), kb = phase_key(b[c]);
    if (std::abs(ka.first - kb.first) > eps) return ka.first < kb.first;
    if (std::abs(ka.second - kb.second) > eps) return ka.second < kb.second;
  }
  return false;
}

bool is_trivial_row(const std::vector<Complex>& row) {
  return std::all_of(row.begin(), row.end(), [](Complex z) { return std::abs(z - 1.0) < 1e-6; });
}

}  // namespace

CharacterTable::CharacterTable(Group group, ConjugacyClasses classes, std::vector<std::size_t> dims,
                               std::vector<std::vector<Complex>> values)
    : group_(std::move(group)),
      classes_(std::move(classes)),
      dims_(std::move(dims)),
      values_(std::move(values)) {
  if (dims_.size() != values_.size()) throw std::invalid_argument("character table: dims/rows mismatch");
  for (const auto& row : values_) {
    if (row.size() != classes_.size()) {
      throw std::invalid_argument("character table: row length differs from class count");
    }
  }
}

std::size_t group_exponent(const Group& g) {
  std::size_t e = 1;
  for (Element a = 0; a < g.order(); ++a) e = std::lcm(e, g.element_order(a));
  return e;
}

Complex snap_character_value(Complex z, std::size_t exponent, std::size_t max_multiple, double tol) {
  const double re_int = std::round(z.real());
  if (std::abs(z.imag()) < tol && std::abs(z.real() - re_int) < tol) return {re_int, 0.0};

  const double n = static_cast<double>(exponent);
  const double m = std::round(std::abs(z));
  if (m >= 1 && m <= static_cast<double>(max_multiple)) {
    const double j = std::round(std::atan2(z.imag(), z.real()) * n / kTwoPi);
    const double theta = kTwoPi * j / n;
    auto clean = [](double v) { return std::abs(v) < 1e-15 ? 0.0 : v; };
    const Complex cand = m * Complex(clean(std::cos(theta)), clean(std::sin(theta)));
    if (std::abs(z - cand) < tol) return cand;
  }
  if (std::abs(z.imag()) < tol && std::abs(z.real()) <= 2.0 + tol) {
    const double j = std::round(std::acos(std::clamp(z.real() / 2.0, -1.0, 1.0)) * n / kTwoPi);
    const double cand = 2.0 * std::cos(kTwoPi * j / n);
    if (std::abs(z.real() - cand) < tol) return {cand, 0.0};
  }
  return z;
}

CharacterTable character_table(const Group& g, const CharacterTableOptions& opts) {
  const std::size_t n = g.order();
  if (n > opts.max_order) {
    throw std::invalid_argument("character table refused for order " + std::to_string(n) + " (cap " +
                                std::to_string(opts.max_order) + ")");
  }
  ConjugacyClasses cc = conjugacy_classes(g);
  const std::size_t r = cc.size();
  const std::size_t exponent = group_exponent(g);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> coef(0.5, 1.5);

  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    // Random combination of class-sum multiplication matrices:
    //   A[j][k] = sum_i c_i a_{ijk},  a_{ijk} = #{x in C_i : x^-1 z_k in C_j}.
    // The central characters w_i = |C_i| chi(g_i) / d are common eigenvectors.
    std::vector<double> c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = coef(rng) / static_cast<double>(cc.classes[i].size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    for (std::size_t k = 0; k < r; ++k) {
      const Element z = cc.representative(k);
      for (Element x = 0; x < n; ++x) {
        const std::size_t j = cc.class_of[g.mul(g.inverse(x), z)];
        a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) += c[cc.class_of[x]];
      }
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, true);
    if (solver.info() != Eigen::Success) continue;
    const Eigen::VectorXcd lambda = solver.eigenvalues();
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index p = 0; p < lambda.size(); ++p)
      for (Eigen::Index q = p + 1; q < lambda.size(); ++q) gap = std::min(gap, std::abs(lambda(p) - lambda(q)));
    if (gap < opts.min_eigen_gap) continue;

    const Eigen::MatrixXcd vecs = solver.eigenvectors();
    std::vector<std::size_t> dims;
    std::vector<std::vector<Complex>> rows;
    bool ok = true;
    for (std::size_t col = 0; col < r && ok; ++col) {
      Eigen::VectorXcd v = vecs.col(static_cast<Eigen::Index>(col));
      if (std::abs(v(0)) < 1e-12) {
        ok = false;
        break;
      }
      v /= v(0);
      double norm = 0.0;
      for (std::size_t i = 0; i < r; ++i) {
        norm += std::norm(v(static_cast<Eigen::Index>(i))) / static_cast<double>(cc.classes[i].size());
      }
      const double d = std::sqrt(static_cast<double>(n) / norm);
      const double d_int = std::round(d);
      if (d_int < 1 || std::abs(d - d_int) > 1e-4) {
        ok = false;
        break;
      }
      const auto dim = static_cast<std::size_t>(d_int);
      std::vector<Complex> row(r);
      for (std::size_t i = 0; i < r; ++i) {
        const Complex chi = d_int * v(static_cast<Eigen::Index>(i)) / static_cast<double>(cc.classes[i].size());
        row[i] = snap_character_value(chi, exponent, dim, opts.snap_tolerance);
      }
      row[0] = static_cast<double>(dim);
      dims.push_back(dim);
      rows.push_back(std::move(row));
    }
    if (!ok) continue;

    std::size_t sum_sq = 0;
    for (std::size_t d : dims) sum_sq += d * d;
    if (sum_sq != n) continue;

    std::vector<std::size_t> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
      const bool tp = is_trivial_row(rows[p]), tq = is_trivial_row(rows[q]);
      if (tp != tq) return tp;
      if (dims[p] != dims[q]) return dims[p] < dims[q];
      return row_less(rows[p], rows[q]);
    });
    std::vector<std::size_t> sorted_dims;
    std::vector<std::vector<Complex>> sorted_rows;
    for (std::size_t idx : order) {
      sorted_dims.push_back(dims[idx]);
      sorted_rows.push_back(std::move(rows[idx]));
    }
    CharacterTable table(g, std::move(cc), std::move(sorted_dims), std::move(sorted_rows));
    if (!is_trivial_row({table.row(0).begin(), table.row(0).end()}) ||
        orthogonality_residual(table) > kDefaultTolerance) {
      cc = conjugacy_classes(g);
      continue;
    }
    return table;
  }
  throw std::runtime_error("character table: eigenvalues of the class-sum combination stayed degenerate after " +
                           std::to_string(opts.max_attempts) + " attempts (order " + std::to_string(n) + ")");
}

Subgroup kernel_of_irrep(const CharacterTable& t, std::size_t rho, double tol) {
  if (rho >= t.num_irreps()) throw std::out_of_range("irrep index out of range");
  const Group& g = t.group();
  const auto d = static_cast<double>(t.dim(rho));
  std::vector<Element> members;
  for (Element x = 0; x < g.order(); ++x)
    if (std::abs(t.character(rho, x) - d) < tol) members.push_back(x);
  return Subgroup(Subgroup::Unchecked{}, g, std::move(members));
}

double check_sum_identity(const CharacterTable& t, Element g) {
  Complex sum = 0.0;
  for (std::size_t rho = 0; rho < t.num_irreps(); ++rho) {
    sum += static_cast<double>(t.dim(rho)) * t.character(rho, g);
  }
  const double expected = g == t.group().identity() ? static_cast<double>(t.group().order()) : 0.0;
  return std::abs(sum - expected);
}

double orthogonality_residual(const CharacterTable& t) {
  const auto n = static_cast<double>(t.group().order());
  const auto& cc = t.classes();
  double worst = 0.0;
  for (std::size_t p = 0; p < t.num_irreps(); ++p) {
    for (std::size_t q = p; q < t.num_irreps(); ++q) {
      Complex ip = 0.0;
      for (std::size_t c = 0; c < cc.size(); ++c) {
        ip += static_cast<double>(cc.classes[c].size()) * t.value(p, c) * std::conj(t.value(q, c));
      }
      ip /= n;
      worst = std::max(worst, std::abs(ip - (p == q ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace hsp
