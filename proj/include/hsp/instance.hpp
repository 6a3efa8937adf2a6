#pragma once

// Hidden-subgroup instances and the exact law of the measured irrep, computed
// both from characters and by brute force from the Fourier-sampled state.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsp/character_table.hpp"
#include "hsp/irreps.hpp"
#include "hsp/random.hpp"

namespace hsp {

/// Per-group data shared by every instance over that group.
struct GroupContext {
  Group group;
  std::shared_ptr<const CharacterTable> table;
  std::shared_ptr<const IrrepMatrices> matrices;  // null in character-only mode
  std::string matrices_note;                      // why matrices are missing
  std::vector<Subgroup> kernels;                  // ker rho, per irrep

  const Subgroup& kernel(std::size_t rho) const { return kernels[rho]; }
};

std::shared_ptr<const GroupContext> make_context(const Group& g, const CharacterTableOptions& opts = {});

class HspInstance {
 public:
  /// `labels[g]` realizes f; it must be constant exactly on left cosets of `hidden`.
  HspInstance(std::shared_ptr<const GroupContext> ctx, Subgroup hidden, std::vector<std::size_t> labels);

  const GroupContext& context() const { return *ctx_; }
  std::shared_ptr<const GroupContext> shared_context() const { return ctx_; }
  const Group& group() const { return ctx_->group; }
  const CharacterTable& table() const { return *ctx_->table; }
  const IrrepMatrices* matrices() const { return ctx_->matrices.get(); }
  const Subgroup& hidden() const { return hidden_; }
  /// H^G, the largest subgroup of H normal in G.
  const Subgroup& core() const { return core_; }
  std::span<const std::size_t> labels() const { return labels_; }
  std::size_t num_labels() const { return num_labels_; }
  std::size_t label(Element g) const { return labels_[g]; }

 private:
  std::shared_ptr<const GroupContext> ctx_;
  Subgroup hidden_;
  Subgroup core_;
  std::vector<std::size_t> labels_;
  std::size_t num_labels_ = 0;
};

/// Canonical labelling: f(g) is the minimal element of the coset gH.
HspInstance make_instance(const Group& g, const Subgroup& h);
HspInstance make_instance(std::shared_ptr<const GroupContext> ctx, const Subgroup& h);

/// Probability of each irrep in table order. Entries are in [0, 1] and sum to
/// 1 within 1e-9; construction throws otherwise.
class IrrepDistribution {
 public:
  explicit IrrepDistribution(std::vector<double> probs);

  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t rho) const { return probs_[rho]; }
  std::size_t size() const { return probs_.size(); }
  std::span<const double> cdf() const { return cdf_; }

 private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

inline constexpr double kNormalizationTolerance = 1e-9;

/// P(rho) = (d_rho / |G|) sum_{h in H} chi_rho(h).
IrrepDistribution measurement_distribution(const HspInstance& inst, double tol = kDefaultTolerance);

/// 1 / [N : N cap H]. N must be normal in G.
double prob_kernel_contains(const HspInstance& inst, const Subgroup& n);
/// Sum of P(rho) over irreps whose kernel contains N.
double prob_kernel_contains_by_sum(const HspInstance& inst, const IrrepDistribution& dist, const Subgroup& n);

/// P(rho) = sum_c sum_ij |(sqrt(d)/|G|) sum_h rho(ch)_ij|^2 from the
/// post-transform amplitudes. Throws MatricesUnavailable without matrices.
IrrepDistribution statevector_distribution(const HspInstance& inst);
/// Same law, obtained by applying the Fourier matrix to each coset state.
IrrepDistribution statevector_distribution_via_unitary(const HspInstance& inst);

/// Inverse-CDF draw over the fixed irrep order.
std::size_t sample_irrep(const IrrepDistribution& dist, RandomStream& rng);

double max_abs_difference(const IrrepDistribution& a, const IrrepDistribution& b);

}  // namespace hsp
