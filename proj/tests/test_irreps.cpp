#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "hsp/irreps.hpp"
#include "test_groups.hpp"

using namespace hsp;

namespace {

constexpr double kTol = 1e-8;

// Schur orthogonality of matrix coefficients:
// (d / |G|) sum_g rho(g)_ij conj(sigma(g)_kl) = [rho = sigma][i = k][j = l].
double schur_residual(const IrrepMatrices& m) {
  const Group& g = m.group();
  double worst = 0;
  for (std::size_t a = 0; a < m.num_irreps(); ++a) {
    for (std::size_t b = 0; b < m.num_irreps(); ++b) {
      const auto da = static_cast<Eigen::Index>(m.dim(a)), db = static_cast<Eigen::Index>(m.dim(b));
      for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
          for (Eigen::Index k = 0; k < db; ++k)
            for (Eigen::Index l = 0; l < db; ++l) {
              Complex s = 0;
              for (Element x = 0; x < g.order(); ++x) s += m(a, x)(i, j) * std::conj(m(b, x)(k, l));
              s *= static_cast<double>(da) / static_cast<double>(g.order());
              const double expect = (a == b && i == k && j == l) ? 1.0 : 0.0;
              worst = std::max(worst, std::abs(s - expect));
            }
    }
  }
  return worst;
}

Group relabelled(const Group& g, unsigned seed) {
  std::vector<Element> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  std::vector<Element> table(g.order() * g.order());
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) table[perm[a] * g.order() + perm[b]] = perm[g.mul(a, b)];
  return Group::from_table(table);
}

}  // namespace

TEST(Irreps, ResidualsOnAllTestGroups) {
  for (const auto& [spec, g] : fixtures::small_test_groups()) {
    const CharacterTable t = character_table(g);
    const IrrepMatrices m = irrep_matrices(t);
    ASSERT_EQ(m.num_irreps(), t.num_irreps()) << spec;
    for (std::size_t rho = 0; rho < t.num_irreps(); ++rho) EXPECT_EQ(m.dim(rho), t.dim(rho)) << spec;
    EXPECT_LT(homomorphism_residual(m), kTol) << spec;
    EXPECT_LT(unitarity_residual(m), kTol) << spec;
    EXPECT_LT(trace_residual(m, t), kTol) << spec;
    EXPECT_LT(schur_residual(m), kTol) << spec;
    EXPECT_LT(unitarity_residual(fourier_unitary(m)), kTol) << spec;
  }
}

TEST(Irreps, LargerSymmetricGroups) {
  for (std::size_t n : {5, 6}) {
    const Group g = make_symmetric(n);
    const CharacterTable t = character_table(g);
    const IrrepMatrices m = irrep_matrices(t);
    EXPECT_LT(homomorphism_residual(m), kTol) << n;
    EXPECT_LT(unitarity_residual(m), kTol) << n;
    EXPECT_LT(trace_residual(m, t), kTol) << n;
  }
}

TEST(Irreps, QuaternionTwoDimensional) {
  const Group q = make_quaternion();
  const IrrepMatrices m = irrep_matrices(q);
  const std::size_t two = m.num_irreps() - 1;
  ASSERT_EQ(m.dim(two), 2u);
  Eigen::Matrix2cd i_expected;
  i_expected << Complex(0, 1), 0, 0, Complex(0, -1);
  Eigen::Matrix2cd j_expected;
  j_expected << 0, 1, -1, 0;
  EXPECT_LT((m(two, 2) - i_expected).cwiseAbs().maxCoeff(), kTol);
  EXPECT_LT((m(two, 4) - j_expected).cwiseAbs().maxCoeff(), kTol);
  EXPECT_LT((m(two, 1) + Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), kTol);
}

TEST(Irreps, FourierRowsFollowIrrepOrder) {
  const IrrepMatrices m = irrep_matrices(make_symmetric(3));
  const FourierUnitary f = fourier_unitary(m);
  ASSERT_EQ(f.rows.size(), 6u);
  ASSERT_EQ(f.matrix.rows(), 6);
  const std::vector<std::array<std::size_t, 3>> expect{{0, 0, 0}, {1, 0, 0}, {2, 0, 0},
                                                       {2, 0, 1}, {2, 1, 0}, {2, 1, 1}};
  for (std::size_t r = 0; r < 6; ++r) {
    EXPECT_EQ(f.rows[r].rho, expect[r][0]);
    EXPECT_EQ(f.rows[r].i, expect[r][1]);
    EXPECT_EQ(f.rows[r].j, expect[r][2]);
  }
  // Entry (rho, i, j; g) = sqrt(d / |G|) rho(g)_ij.
  EXPECT_NEAR(std::abs(f.matrix(3, 4) - std::sqrt(2.0 / 6.0) * m(2, 4)(0, 1)), 0.0, 1e-12);
}

TEST(Irreps, GenericAbelianFromCayleyText) {
  const Group g = from_cayley_table(to_cayley_text(parse_group_spec("prod:z2,z6")));
  EXPECT_EQ(g.family().kind, FamilyTag::Kind::Generic);
  const CharacterTable t = character_table(g);
  const IrrepMatrices m = irrep_matrices(t);
  EXPECT_LT(homomorphism_residual(m), kTol);
  EXPECT_LT(trace_residual(m, t), kTol);
}

TEST(Irreps, GenericNonabelianIsUnavailable) {
  const Group g = relabelled(make_symmetric(3), 5);
  EXPECT_THROW(irrep_matrices(g), MatricesUnavailable);
  EXPECT_THROW(irrep_matrices(from_cayley_table(to_cayley_text(make_quaternion()))), MatricesUnavailable);
}
