#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hsp/group.hpp"

namespace hsp {

using Complex = std::complex<double>;

/// Global tolerance for every "equal within tolerance" check.
inline constexpr double kDefaultTolerance = 1e-8;

struct CharacterTableOptions {
  std::size_t max_order = kDefaultMaxOrder;
  std::uint64_t seed = 0x5eed'c1a5'5e5ULL;  // random class-sum combination
  int max_attempts = 8;
  double min_eigen_gap = 1e-6;
  double snap_tolerance = 1e-6;
};

/// Irreducible characters indexed by (irrep, conjugacy class).
///
/// Row 0 is the trivial character. Remaining rows are sorted by dimension and
/// then by their value tuple, comparing each class value by phase in [0, 2pi)
/// and then modulus. For Z_n this yields chi_k(g) = exp(2 pi i k g / n) in
/// order of k.
class CharacterTable {
 public:
  CharacterTable(Group group, ConjugacyClasses classes, std::vector<std::size_t> dims,
                 std::vector<std::vector<Complex>> values);

  const Group& group() const { return group_; }
  const ConjugacyClasses& classes() const { return classes_; }
  std::size_t num_irreps() const { return dims_.size(); }
  std::size_t num_classes() const { return classes_.size(); }
  std::size_t dim(std::size_t rho) const { return dims_[rho]; }
  std::span<const std::size_t> dims() const { return dims_; }

  std::span<const Complex> row(std::size_t rho) const { return values_[rho]; }
  Complex value(std::size_t rho, std::size_t cls) const { return values_[rho][cls]; }
  /// chi_rho(g) for a group element.
  Complex character(std::size_t rho, Element g) const {
    return values_[rho][classes_.class_of[g]];
  }

 private:
  Group group_;
  ConjugacyClasses classes_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Complex>> values_;
};

/// Burnside class-sum method. Throws std::runtime_error when the random
/// class-sum combination keeps producing nearly equal eigenvalues.
CharacterTable character_table(const Group& g, const CharacterTableOptions& opts = {});

/// ker rho = { g : |chi_rho(g) - d_rho| < tol }.
Subgroup kernel_of_irrep(const CharacterTable& t, std::size_t rho, double tol = kDefaultTolerance);

/// |sum_rho d_rho chi_rho(g) - delta_e(g) |G||.
double check_sum_identity(const CharacterTable& t, Element g);

/// max over pairs of |(1/|G|) sum_g chi_rho(g) conj(chi_sigma(g)) - delta|.
double orthogonality_residual(const CharacterTable& t);

/// Nearest value of m * exp(2 pi i j / N) or 2 cos(2 pi j / N) within `tol`,
/// with N the exponent of the group and |m| <= max_multiple; otherwise `z`.
Complex snap_character_value(Complex z, std::size_t exponent, std::size_t max_multiple, double tol);

std::size_t group_exponent(const Group& g);

}  // namespace hsp
