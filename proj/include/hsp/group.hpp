#pragma once

// Finite groups stored as dense Cayley tables, plus the subgroup operations
// used throughout the simulator (cosets, normality, normal core, conjugacy).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hsp {

using Element = std::uint32_t;

/// Orders above this are refused by exhaustive operations unless raised.
inline constexpr std::size_t kDefaultMaxOrder = 2048;

/// Largest n accepted by make_symmetric (|S_6| = 720).
inline constexpr std::size_t kMaxSymmetricDegree = 6;

class Group;

/// How a group was built. Irrep construction dispatches on this.
struct FamilyTag {
  enum class Kind { Cyclic, Dihedral, Symmetric, Quaternion, Product, Generic };

  Kind kind = Kind::Generic;
  std::size_t param = 0;                              // n for cyclic/dihedral/symmetric
  std::vector<std::shared_ptr<const Group>> factors;  // Product only, left to right

  std::string describe() const;
};

class Group {
 public:
  /// Builds a group from a row-major |G|x|G| table. With `validate` set, every
  /// group axiom is checked and std::invalid_argument names the first failure.
  static Group from_table(std::vector<Element> table, std::vector<std::string> labels = {},
                          FamilyTag tag = {}, bool validate = true);

  std::size_t order() const { return impl_->order; }
  Element identity() const { return impl_->identity; }

  Element mul(Element a, Element b) const { return impl_->table[a * impl_->order + b]; }
  Element inverse(Element a) const { return impl_->inverse[a]; }
  Element conjugate(Element x, Element g) const { return mul(mul(g, x), inverse(g)); }  // g x g^-1

  std::span<const Element> row(Element a) const {
    return {impl_->table.data() + a * impl_->order, impl_->order};
  }
  std::span<const Element> table() const { return impl_->table; }

  /// Empty string when the element has no label.
  const std::string& label(Element a) const;
  bool has_labels() const { return !impl_->labels.empty(); }
  const FamilyTag& family() const { return impl_->family; }

  bool is_abelian() const;
  std::size_t element_order(Element a) const;

  /// True when both handles refer to the same constructed group.
  bool same_as(const Group& other) const { return impl_ == other.impl_; }

 private:
  struct Impl {
    std::size_t order = 0;
    std::vector<Element> table;
    std::vector<Element> inverse;
    Element identity = 0;
    std::vector<std::string> labels;
    FamilyTag family;
  };
  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

class Subgroup {
 public:
  /// Validates identity membership, closure, and Lagrange.
  Subgroup(Group parent, std::vector<Element> members);

  struct Unchecked {};
  /// Members must already be a sorted, closed subset.
  Subgroup(Unchecked, Group parent, std::vector<Element> members);

  const Group& parent() const { return parent_; }
  std::span<const Element> members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  std::size_t index() const { return parent_.order() / members_.size(); }

  bool contains(Element a) const { return a < mask_.size() && mask_[a]; }
  /// Superset test; both subgroups must share a parent.
  bool contains(const Subgroup& other) const;

  bool operator==(const Subgroup& other) const;

 private:
  Group parent_;
  std::vector<Element> members_;
  std::vector<bool> mask_;
};

struct ConjugacyClasses {
  std::vector<std::vector<Element>> classes;  // class 0 holds the identity; others by min element
  std::vector<std::size_t> class_of;          // element -> class index

  std::size_t size() const { return classes.size(); }
  Element representative(std::size_t c) const { return classes[c].front(); }
};

Group make_cyclic(std::size_t n);
/// Indices 0..n-1 are rotations r^k, n..2n-1 are reflections r^k s.
Group make_dihedral(std::size_t n);
/// Permutations of {0..n-1} in lexicographic order; (a*b)(x) = a(b(x)).
Group make_symmetric(std::size_t n);
/// Element order {1, -1, i, -i, j, -j, k, -k}.
Group make_quaternion();
/// Element (x, y) has index x * |b| + y.
Group direct_product(const Group& a, const Group& b, std::size_t max_order = kDefaultMaxOrder);

/// Parses the Cayley text format: first line n, then n rows of n indices,
/// optional trailing `# label <index> <name>` lines.
Group from_cayley_table(std::string_view text, std::size_t max_order = kDefaultMaxOrder);
std::string to_cayley_text(const Group& g);

/// Permutation (one-line notation) of a symmetric-group element.
std::vector<std::size_t> symmetric_permutation(const Group& g, Element a);

Subgroup trivial_subgroup(const Group& g);
Subgroup whole_group(const Group& g);
Subgroup subgroup_generate(const Group& g, std::span<const Element> gens);

/// Minimal element index of every left coset cH, ascending.
std::vector<Element> left_cosets(const Group& g, const Subgroup& h);
bool is_normal(const Group& g, const Subgroup& h);
Subgroup normal_core(const Group& g, const Subgroup& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
ConjugacyClasses conjugacy_classes(const Group& g);
std::vector<Element> center(const Group& g);

/// Every subgroup, smallest first. Exhaustive, so limited to small orders.
std::vector<Subgroup> all_subgroups(const Group& g, std::size_t max_order = 24);
std::vector<Subgroup> normal_subgroups(const Group& g, std::size_t max_order = 24);

}  // namespace hsp
