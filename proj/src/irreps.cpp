#include "hsp/irreps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>

namespace hsp {

namespace {

using Rep = std::vector<Eigen::MatrixXcd>;  // one matrix per element

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXcd scalar(Complex z) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = z;
  return m;
}

std::vector<Rep> cyclic_irreps(std::size_t n) {
  std::vector<Rep> out(n, Rep(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t g = 0; g < n; ++g) out[k][g] = scalar(std::polar(1.0, kTwoPi * double(k * g % n) / double(n)));
  return out;
}

std::vector<Rep> dihedral_irreps(std::size_t n) {
  const std::size_t m = 2 * n;
  std::vector<Rep> out;
  // 1-dim: r -> a, s -> b; a = -1 only when n is even.
  for (int a : {1, -1}) {
    if (a == -1 && n % 2 != 0) continue;
    for (int b : {1, -1}) {
      Rep rep(m);
      for (std::size_t x = 0; x < m; ++x) {
        const double va = (a == -1 && (x % n) % 2 == 1) ? -1.0 : 1.0;
        const double vb = x >= n ? b : 1.0;
        rep[x] = scalar(va * vb);
      }
      out.push_back(std::move(rep));
    }
  }
  // 2-dim: r^k -> rotation by 2 pi h k / n, r^k s -> rotation * diag(1, -1).
  for (std::size_t h = 1; 2 * h < n; ++h) {
    Rep rep(m);
    for (std::size_t x = 0; x < m; ++x) {
      const double th = kTwoPi * double(h * (x % n) % n) / double(n);
      const double c = std::cos(th), s = std::sin(th);
      Eigen::MatrixXcd mat(2, 2);
      if (x < n) {
        mat << c, -s, s, c;
      } else {
        mat << c, s, s, -c;
      }
      rep[x] = std::move(mat);
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<Rep> quaternion_irreps() {
  std::vector<Rep> out;
  // 1-dim: i -> a, j -> b, k -> ab, sign ignored.
  for (int a : {1, -1}) {
    for (int b : {1, -1}) {
      const double unit_val[4] = {1.0, double(a), double(b), double(a * b)};
      Rep rep(8);
      for (int x = 0; x < 8; ++x) rep[x] = scalar(unit_val[x / 2]);
      out.push_back(std::move(rep));
    }
  }
  const Complex I(0, 1);
  Eigen::MatrixXcd units[4];
  units[0] = Eigen::MatrixXcd::Identity(2, 2);
  units[1].resize(2, 2);
  units[1] << I, 0, 0, -I;
  units[2].resize(2, 2);
  units[2] << 0, 1, -1, 0;
  units[3] = units[1] * units[2];
  Rep rep(8);
  for (int x = 0; x < 8; ++x) rep[x] = (x % 2 ? -1.0 : 1.0) * units[x / 2];
  out.push_back(std::move(rep));
  return out;
}

// Extends generator images to every element by walking the Cayley graph.
Rep extend_from_generators(const Group& g, const std::vector<Element>& gens,
                           const std::vector<Eigen::MatrixXcd>& images) {
  const auto d = images.front().rows();
  Rep rep(g.order());
  std::vector<bool> done(g.order(), false);
  std::vector<Element> queue{g.identity()};
  rep[g.identity()] = Eigen::MatrixXcd::Identity(d, d);
  done[g.identity()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Element a = queue[i];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const Element b = g.mul(a, gens[s]);
      if (done[b]) continue;
      rep[b] = rep[a] * images[s];
      done[b] = true;
      queue.push_back(b);
    }
  }
  return rep;
}

using Partition = std::vector<std::size_t>;
using Tableau = std::vector<std::vector<std::size_t>>;  // rows of entries 0..n-1

void partitions(std::size_t n, std::size_t max_part, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

void standard_tableaux(const Partition& shape, std::size_t next, std::size_t n, Tableau& cur,
                       std::vector<Tableau>& out) {
  if (next == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t r = 0; r < shape.size(); ++r) {
    const std::size_t len = cur[r].size();
    if (len == shape[r]) continue;
    if (r > 0 && cur[r - 1].size() <= len) continue;
    cur[r].push_back(next);
    standard_tableaux(shape, next + 1, n, cur, out);
    cur[r].pop_back();
  }
}

// Young's orthogonal form on adjacent transpositions (k, k+1).
std::vector<Rep> symmetric_irreps(const Group& g) {
  const std::size_t n = g.family().param;
  std::map<std::vector<std::size_t>, Element> rank;
  for (Element a = 0; a < g.order(); ++a) rank.emplace(symmetric_permutation(g, a), a);

  std::vector<Element> gens;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::vector<std::size_t> p(n);
    for (std::size_t x = 0; x < n; ++x) p[x] = x;
    std::swap(p[k], p[k + 1]);
    gens.push_back(rank.at(p));
  }

  std::vector<Partition> shapes;
  Partition cur;
  partitions(n, n, cur, shapes);

  std::vector<Rep> out;
  for (const auto& shape : shapes) {
    Tableau empty(shape.size());
    std::vector<Tableau> tabs;
    standard_tableaux(shape, 0, n, empty, tabs);
    if (gens.empty()) {
      out.push_back(Rep{Eigen::MatrixXcd::Identity(1, 1)});
      continue;
    }
    std::map<Tableau, std::size_t> tab_index;
    for (std::size_t t = 0; t < tabs.size(); ++t) tab_index.emplace(tabs[t], t);

    const auto dim = static_cast<Eigen::Index>(tabs.size());
    std::vector<Eigen::MatrixXcd> images;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
      for (std::size_t t = 0; t < tabs.size(); ++t) {
        long rk = 0, ck = 0, rk1 = 0, ck1 = 0;
        for (std::size_t r = 0; r < tabs[t].size(); ++r) {
          for (std::size_t c = 0; c < tabs[t][r].size(); ++c) {
            if (tabs[t][r][c] == k) rk = long(r), ck = long(c);
            if (tabs[t][r][c] == k + 1) rk1 = long(r), ck1 = long(c);
          }
        }
        const double axial = double((ck1 - rk1) - (ck - rk));
        mat(Eigen::Index(t), Eigen::Index(t)) = 1.0 / axial;
        Tableau swapped = tabs[t];
        swapped[rk][ck] = k + 1;
        swapped[rk1][ck1] = k;
        if (auto it = tab_index.find(swapped); it != tab_index.end()) {
          mat(Eigen::Index(it->second), Eigen::Index(t)) = std::sqrt(1.0 - 1.0 / (axial * axial));
        }
      }
      images.push_back(std::move(mat));
    }
    out.push_back(extend_from_generators(g, gens, images));
  }
  return out;
}

std::vector<Rep> family_irreps(const Group& g, const CharacterTable* t);

std::vector<Rep> product_irreps(const Group& g) {
  const auto& factors = g.family().factors;
  std::vector<Rep> acc{Rep{Eigen::MatrixXcd::Identity(1, 1)}};
  std::size_t acc_order = 1;
  for (const auto& f : factors) {
    const std::vector<Rep> fi = family_irreps(*f, nullptr);
    const std::size_t fo = f->order();
    std::vector<Rep> next;
    for (const auto& a : acc) {
      for (const auto& b : fi) {
        Rep rep(acc_order * fo);
        for (std::size_t x = 0; x < acc_order; ++x)
          for (std::size_t y = 0; y < fo; ++y)
            rep[x * fo + y] = Eigen::kroneckerProduct(a[x], b[y]).eval();
        next.push_back(std::move(rep));
      }
    }
    acc = std::move(next);
    acc_order *= fo;
  }
  if (acc_order != g.order()) throw std::logic_error("product factors do not match group order");
  return acc;
}

std::vector<Rep> family_irreps(const Group& g, const CharacterTable* t) {
  using K = FamilyTag::Kind;
  switch (g.family().kind) {
    case K::Cyclic: return cyclic_irreps(g.order());
    case K::Dihedral: return dihedral_irreps(g.family().param);
    case K::Quaternion: return quaternion_irreps();
    case K::Symmetric: return symmetric_irreps(g);
    case K::Product: return product_irreps(g);
    case K::Generic: break;
  }
  if (g.is_abelian()) {
    const CharacterTable local = t ? *t : character_table(g);
    std::vector<Rep> out;
    for (std::size_t rho = 0; rho < local.num_irreps(); ++rho) {
      Rep rep(g.order());
      for (Element x = 0; x < g.order(); ++x) rep[x] = scalar(local.character(rho, x));
      out.push_back(std::move(rep));
    }
    return out;
  }
  throw MatricesUnavailable("matrices unavailable for family " + g.family().describe() +
                            ": character-only mode");
}

}  // namespace

IrrepMatrices::IrrepMatrices(Group group, std::vector<std::vector<Eigen::MatrixXcd>> reps)
    : group_(std::move(group)), reps_(std::move(reps)) {
  for (const auto& rep : reps_) {
    if (rep.size() != group_.order()) throw std::invalid_argument("irrep needs one matrix per element");
  }
}

IrrepMatrices irrep_matrices(const CharacterTable& t) {
  const Group& g = t.group();
  std::vector<Rep> built = family_irreps(g, &t);
  if (built.size() != t.num_irreps()) {
    throw std::logic_error("constructed " + std::to_string(built.size()) + " irreps, character table has " +
                           std::to_string(t.num_irreps()));
  }
  // Line up constructed irreps with table rows by comparing traces on class representatives.
  std::vector<Rep> ordered(t.num_irreps());
  std::vector<bool> used(built.size(), false);
  for (std::size_t rho = 0; rho < t.num_irreps(); ++rho) {
    bool found = false;
    for (std::size_t b = 0; b < built.size() && !found; ++b) {
      if (used[b] || static_cast<std::size_t>(built[b].front().rows()) != t.dim(rho)) continue;
      bool match = true;
      for (std::size_t c = 0; c < t.num_classes() && match; ++c) {
        match = std::abs(built[b][t.classes().representative(c)].trace() - t.value(rho, c)) < 1e-6;
      }
      if (match) {
        used[b] = true;
        ordered[rho] = std::move(built[b]);
        found = true;
      }
    }
    if (!found) throw std::logic_error("no constructed irrep matches character-table row " + std::to_string(rho));
  }
  return IrrepMatrices(g, std::move(ordered));
}

IrrepMatrices irrep_matrices(const Group& g) { return irrep_matrices(character_table(g)); }

double homomorphism_residual(const IrrepMatrices& m) {
  const Group& g = m.group();
  double worst = 0.0;
  for (std::size_t rho = 0; rho < m.num_irreps(); ++rho)
    for (Element a = 0; a < g.order(); ++a)
      for (Element b = 0; b < g.order(); ++b)
        worst = std::max(worst, (m(rho, a) * m(rho, b) - m(rho, g.mul(a, b))).cwiseAbs().maxCoeff());
  return worst;
}

double unitarity_residual(const IrrepMatrices& m) {
  double worst = 0.0;
  for (std::size_t rho = 0; rho < m.num_irreps(); ++rho) {
    const auto d = static_cast<Eigen::Index>(m.dim(rho));
    for (Element a = 0; a < m.group().order(); ++a) {
      const auto& u = m(rho, a);
      worst = std::max(worst, (u * u.adjoint() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double trace_residual(const IrrepMatrices& m, const CharacterTable& t) {
  double worst = 0.0;
  for (std::size_t rho = 0; rho < m.num_irreps(); ++rho)
    for (Element a = 0; a < m.group().order(); ++a)
      worst = std::max(worst, std::abs(m(rho, a).trace() - t.character(rho, a)));
  return worst;
}

FourierUnitary fourier_unitary(const IrrepMatrices& m) {
  const std::size_t n = m.group().order();
  FourierUnitary f;
  f.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t rho = 0; rho < m.num_irreps(); ++rho) {
    const std::size_t d = m.dim(rho);
    const double scale = std::sqrt(double(d) / double(n));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const auto row = static_cast<Eigen::Index>(f.rows.size());
        for (Element g = 0; g < n; ++g) {
          f.matrix(row, g) = scale * m(rho, g)(Eigen::Index(i), Eigen::Index(j));
        }
        f.rows.push_back({rho, i, j});
      }
    }
  }
  if (f.rows.size() != n) throw std::logic_error("Fourier basis size differs from group order");
  return f;
}

double unitarity_residual(const FourierUnitary& f) {
  const auto n = f.matrix.rows();
  return (f.matrix * f.matrix.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace hsp
