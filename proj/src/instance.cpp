#include "hsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hsp {

std::shared_ptr<const GroupContext> make_context(const Group& g, const CharacterTableOptions& opts) {
  auto ctx = std::make_shared<GroupContext>(GroupContext{g, nullptr, nullptr, {}, {}});
  ctx->table = std::make_shared<const CharacterTable>(character_table(g, opts));
  try {
    ctx->matrices = std::make_shared<const IrrepMatrices>(irrep_matrices(*ctx->table));
  } catch (const MatricesUnavailable& e) {
    ctx->matrices_note = e.what();
  }
  for (std::size_t rho = 0; rho < ctx->table->num_irreps(); ++rho) {
    ctx->kernels.push_back(kernel_of_irrep(*ctx->table, rho));
  }
  return ctx;
}

HspInstance::HspInstance(std::shared_ptr<const GroupContext> ctx, Subgroup hidden,
                         std::vector<std::size_t> labels)
    : ctx_(std::move(ctx)),
      hidden_(std::move(hidden)),
      core_(normal_core(ctx_->group, hidden_)),
      labels_(std::move(labels)) {
  const Group& g = ctx_->group;
  if (labels_.size() != g.order()) throw std::invalid_argument("labelling needs one label per element");
  // f(a) = f(b) iff a^-1 b in H: each coset maps to one label, distinct cosets to distinct labels.
  const auto reps = left_cosets(g, hidden_);
  std::vector<std::size_t> coset_of(g.order());
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (Element h : hidden_.members()) coset_of[g.mul(reps[c], h)] = c;
  std::vector<std::size_t> label_of_coset(reps.size(), SIZE_MAX);
  std::vector<std::size_t> seen_labels;
  for (Element a = 0; a < g.order(); ++a) {
    auto& slot = label_of_coset[coset_of[a]];
    if (slot == SIZE_MAX) {
      slot = labels_[a];
      seen_labels.push_back(labels_[a]);
    } else if (slot != labels_[a]) {
      throw std::invalid_argument("labelling is not constant on the left coset of element " + std::to_string(a));
    }
  }
  std::sort(seen_labels.begin(), seen_labels.end());
  if (std::adjacent_find(seen_labels.begin(), seen_labels.end()) != seen_labels.end()) {
    throw std::invalid_argument("labelling assigns the same label to distinct cosets");
  }
  num_labels_ = seen_labels.size();
}

HspInstance make_instance(std::shared_ptr<const GroupContext> ctx, const Subgroup& h) {
  const Group& g = ctx->group;
  if (!g.same_as(h.parent())) throw std::invalid_argument("hidden subgroup belongs to a different group");
  const auto reps = left_cosets(g, h);
  std::vector<std::size_t> labels(g.order());
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (Element x : h.members()) labels[g.mul(reps[c], x)] = reps[c];
  return HspInstance(std::move(ctx), h, std::move(labels));
}

HspInstance make_instance(const Group& g, const Subgroup& h) { return make_instance(make_context(g), h); }

IrrepDistribution::IrrepDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("empty distribution");
  double total = 0.0;
  for (double& p : probs_) {
    if (!(p >= -kNormalizationTolerance && p <= 1.0 + kNormalizationTolerance)) {
      throw std::runtime_error("probability " + std::to_string(p) + " outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    total += p;
    cdf_.push_back(total);
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw std::runtime_error("distribution sums to " + std::to_string(total) + ", not 1");
  }
}

IrrepDistribution measurement_distribution(const HspInstance& inst, double tol) {
  const CharacterTable& t = inst.table();
  const auto n = static_cast<double>(inst.group().order());
  std::vector<double> probs(t.num_irreps());
  for (std::size_t rho = 0; rho < t.num_irreps(); ++rho) {
    Complex sum = 0.0;
    for (Element h : inst.hidden().members()) sum += t.character(rho, h);
    const Complex p = static_cast<double>(t.dim(rho)) / n * sum;
    if (std::abs(p.imag()) > tol || p.real() < -tol) {
      throw std::runtime_error("irrep " + std::to_string(rho) + " has non-physical probability (" +
                               std::to_string(p.real()) + ", " + std::to_string(p.imag()) + ")");
    }
    probs[rho] = std::max(0.0, p.real());
  }
  return IrrepDistribution(std::move(probs));
}

double prob_kernel_contains(const HspInstance& inst, const Subgroup& n) {
  if (!is_normal(inst.group(), n)) throw std::invalid_argument("N must be a normal subgroup of G");
  const Subgroup meet = intersect(n, inst.hidden());
  return static_cast<double>(meet.order()) / static_cast<double>(n.order());
}

double prob_kernel_contains_by_sum(const HspInstance& inst, const IrrepDistribution& dist, const Subgroup& n) {
  double total = 0.0;
  for (std::size_t rho = 0; rho < dist.size(); ++rho)
    if (inst.context().kernel(rho).contains(n)) total += dist[rho];
  return total;
}

namespace {

// Measuring the label register leaves the uniform superposition over one
// level set of f; these are the level sets.
std::vector<std::vector<Element>> level_sets(const HspInstance& inst) {
  std::vector<std::vector<Element>> sets;
  std::map<std::size_t, std::size_t> index;
  for (Element a = 0; a < inst.group().order(); ++a) {
    const auto [it, fresh] = index.try_emplace(inst.label(a), sets.size());
    if (fresh) sets.emplace_back();
    sets[it->second].push_back(a);
  }
  return sets;
}

const IrrepMatrices& require_matrices(const HspInstance& inst) {
  if (!inst.matrices()) {
    throw MatricesUnavailable("state-vector simulation unsupported: " + inst.context().matrices_note);
  }
  return *inst.matrices();
}

}  // namespace

IrrepDistribution statevector_distribution(const HspInstance& inst) {
  const IrrepMatrices& m = require_matrices(inst);
  const Group& g = inst.group();
  const auto n = static_cast<double>(g.order());
  const auto sets = level_sets(inst);
  std::vector<double> probs(m.num_irreps(), 0.0);
  for (std::size_t rho = 0; rho < m.num_irreps(); ++rho) {
    const auto d = static_cast<Eigen::Index>(m.dim(rho));
    for (const auto& set : sets) {
      Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(d, d);
      for (Element x : set) amp += m(rho, x);
      amp *= std::sqrt(static_cast<double>(d)) / n;
      probs[rho] += amp.squaredNorm();
    }
  }
  return IrrepDistribution(std::move(probs));
}

IrrepDistribution statevector_distribution_via_unitary(const HspInstance& inst) {
  const FourierUnitary f = fourier_unitary(require_matrices(inst));
  const Group& g = inst.group();
  const auto n = static_cast<Eigen::Index>(g.order());
  std::vector<double> probs(inst.table().num_irreps(), 0.0);
  for (const auto& set : level_sets(inst)) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
    for (Element x : set) psi(x) = 1.0 / std::sqrt(static_cast<double>(n));
    const Eigen::VectorXcd out = f.matrix * psi;
    for (Eigen::Index r = 0; r < n; ++r) probs[f.rows[r].rho] += std::norm(out(r));
  }
  return IrrepDistribution(std::move(probs));
}

std::size_t sample_irrep(const IrrepDistribution& dist, RandomStream& rng) {
  const double u = rng.next_unit();
  const auto cdf = dist.cdf();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it != cdf.end()) return static_cast<std::size_t>(it - cdf.begin());
  // u at or above a total that rounded just below 1
  std::size_t last = dist.size() - 1;
  while (last > 0 && dist[last] == 0.0) --last;
  return last;
}

double max_abs_difference(const IrrepDistribution& a, const IrrepDistribution& b) {
  if (a.size() != b.size()) throw std::invalid_argument("distributions differ in length");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace hsp
