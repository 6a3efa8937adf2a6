#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "hsp/character_table.hpp"

namespace hsp {

/// Raised when a group's family has no explicit matrix construction. The
/// closed-form distribution still works; only the state-vector oracle is lost.
class MatricesUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Explicit unitary matrices rho(g), one irrep per character-table row and in
/// the same order.
class IrrepMatrices {
 public:
  IrrepMatrices(Group group, std::vector<std::vector<Eigen::MatrixXcd>> reps);

  const Group& group() const { return group_; }
  std::size_t num_irreps() const { return reps_.size(); }
  std::size_t dim(std::size_t rho) const { return static_cast<std::size_t>(reps_[rho].front().rows()); }
  const Eigen::MatrixXcd& operator()(std::size_t rho, Element g) const { return reps_[rho][g]; }

 private:
  Group group_;
  std::vector<std::vector<Eigen::MatrixXcd>> reps_;  // [rho][g]
};

/// Supported: cyclic, dihedral, symmetric, quaternion, direct products of
/// supported families, and any abelian group (matrices read off the 1-dim
/// characters). Anything else throws MatricesUnavailable.
IrrepMatrices irrep_matrices(const CharacterTable& t);
IrrepMatrices irrep_matrices(const Group& g);

double homomorphism_residual(const IrrepMatrices& m);
double unitarity_residual(const IrrepMatrices& m);
/// Max |tr rho(g) - chi_rho(g)| over all irreps and elements.
double trace_residual(const IrrepMatrices& m, const CharacterTable& t);

struct FourierBasisLabel {
  std::size_t rho, i, j;  // 0-based matrix indices
};

/// Matrix of |g> -> sum sqrt(d/|G|) rho(g)_ij |rho, i, j>. Rows follow irrep
/// order then row-major (i, j); columns follow element order.
struct FourierUnitary {
  Eigen::MatrixXcd matrix;
  std::vector<FourierBasisLabel> rows;
};

FourierUnitary fourier_unitary(const IrrepMatrices& m);
/// max |F F^dagger - I| entrywise.
double unitarity_residual(const FourierUnitary& f);

}  // namespace hsp
