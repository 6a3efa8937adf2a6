#include "hsp/group.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hsp {

namespace {

std::string triple(std::size_t a, std::size_t b, std::size_t c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

// Sampled associativity check above this order; exhaustive at or below.
constexpr std::size_t kExhaustiveAssociativity = 64;
constexpr std::size_t kAssociativitySamples = 200000;

void check_latin_square(std::span<const Element> table, std::size_t n) {
  std::vector<std::size_t> seen(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), n);
    for (std::size_t c = 0; c < n; ++c) {
      const Element v = table[r * n + c];
      if (v >= n) {
        throw std::invalid_argument("entry out of range at (row, col, value) = " + triple(r, c, v));
      }
      if (seen[v] != n) {
        throw std::invalid_argument("not a Latin square: row " + std::to_string(r) +
                                    " is not a permutation: (row, col, value) = " +
                                    triple(r, c, v) + " repeats column " +
                                    std::to_string(seen[v]));
      }
      seen[v] = c;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), n);
    for (std::size_t r = 0; r < n; ++r) {
      const Element v = table[r * n + c];
      if (seen[v] != n) {
        throw std::invalid_argument("not a Latin square: column " + std::to_string(c) +
                                    " is not a permutation: (row, col, value) = " +
                                    triple(r, c, v) + " repeats row " + std::to_string(seen[v]));
      }
      seen[v] = r;
    }
  }
}

Element find_identity(std::span<const Element> table, std::size_t n) {
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) {
      ok = table[e * n + g] == g && table[g * n + e] == g;
    }
    if (ok) return static_cast<Element>(e);
  }
  throw std::invalid_argument("no identity element: no row and column both equal the index order");
}

void check_associative(std::span<const Element> table, std::size_t n) {
  auto at = [&](std::size_t a, std::size_t b) { return table[a * n + b]; };
  auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (at(at(a, b), c) != at(a, at(b, c))) {
      throw std::invalid_argument("not associative: (a*b)*c != a*(b*c) for (a, b, c) = " +
                                  triple(a, b, c));
    }
  };
  if (n <= kExhaustiveAssociativity) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) check(a, b, c);
    return;
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t s = 0; s < kAssociativitySamples; ++s) check(pick(rng), pick(rng), pick(rng));
}

std::vector<Element> closure(const Group& g, std::vector<Element> start,
                             std::span<const Element> gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> members;
  auto add = [&](Element x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
    }
  };
  add(g.identity());
  for (Element x : start) add(x);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Element a = members[i];
    for (Element s : gens) add(g.mul(a, s));
  }
  std::sort(members.begin(), members.end());
  return members;
}

void require_same_parent(const Group& g, const Subgroup& h) {
  if (!g.same_as(h.parent())) throw std::invalid_argument("subgroup does not belong to this group");
}

}  // namespace

std::string FamilyTag::describe() const {
  switch (kind) {
    case Kind::Cyclic: return "cyclic(" + std::to_string(param) + ")";
    case Kind::Dihedral: return "dihedral(" + std::to_string(param) + ")";
    case Kind::Symmetric: return "symmetric(" + std::to_string(param) + ")";
    case Kind::Quaternion: return "quaternion";
    case Kind::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += ", ";
        s += factors[i]->family().describe();
      }
      return s + ")";
    }
    case Kind::Generic: return "generic";
  }
  return "generic";
}

Group Group::from_table(std::vector<Element> table, std::vector<std::string> labels, FamilyTag tag,
                        bool validate) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(table.size()))));
  if (n == 0 || n * n != table.size()) {
    throw std::invalid_argument("Cayley table must be a non-empty square array");
  }
  if (!labels.empty() && labels.size() != n) {
    throw std::invalid_argument("label count does not match group order");
  }
  if (validate) check_latin_square(table, n);
  const Element e = find_identity(table, n);
  if (validate) check_associative(table, n);

  auto impl = std::make_shared<Impl>();
  impl->order = n;
  impl->identity = e;
  impl->inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a * n + b] == e) {
        if (table[b * n + a] != e) {
          throw std::invalid_argument("element " + std::to_string(a) +
                                      " has no two-sided inverse: (a, b, a*b) = " +
                                      triple(a, b, e));
        }
        impl->inverse[a] = static_cast<Element>(b);
        break;
      }
    }
  }
  impl->table = std::move(table);
  impl->labels = std::move(labels);
  impl->family = std::move(tag);
  return Group(std::move(impl));
}

const std::string& Group::label(Element a) const {
  static const std::string empty;
  return impl_->labels.empty() ? empty : impl_->labels.at(a);
}

bool Group::is_abelian() const {
  const std::size_t n = order();
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::size_t Group::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

Subgroup::Subgroup(Group parent, std::vector<Element> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  const std::size_t n = parent_.order();
  mask_.assign(n, false);
  for (Element a : members_) {
    if (a >= n) throw std::invalid_argument("subgroup member " + std::to_string(a) + " out of range");
    mask_[a] = true;
  }
  if (!contains(parent_.identity())) throw std::invalid_argument("subgroup must contain the identity");
  for (Element a : members_) {
    if (!contains(parent_.inverse(a))) {
      throw std::invalid_argument("subgroup not closed under inverse at element " + std::to_string(a));
    }
    for (Element b : members_) {
      if (!contains(parent_.mul(a, b))) {
        throw std::invalid_argument("subgroup not closed: " + std::to_string(a) + " * " +
                                    std::to_string(b) + " = " +
                                    std::to_string(parent_.mul(a, b)) + " is missing");
      }
    }
  }
  if (n % members_.size() != 0) throw std::logic_error("subgroup order does not divide group order");
}

Subgroup::Subgroup(Unchecked, Group parent, std::vector<Element> members)
    : parent_(std::move(parent)), members_(std::move(members)), mask_(parent_.order(), false) {
  for (Element a : members_) mask_[a] = true;
}

bool Subgroup::contains(const Subgroup& other) const {
  if (!parent_.same_as(other.parent_)) throw std::invalid_argument("subgroups have different parents");
  if (other.order() > order()) return false;
  return std::all_of(other.members_.begin(), other.members_.end(),
                     [&](Element a) { return mask_[a]; });
}

bool Subgroup::operator==(const Subgroup& other) const {
  return parent_.same_as(other.parent_) && members_ == other.members_;
}

Group make_cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group order must be at least 1");
  std::vector<Element> t(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Element>((a + b) % n);
  }
  return Group::from_table(std::move(t), std::move(labels), {FamilyTag::Kind::Cyclic, n, {}}, false);
}

Group make_dihedral(std::size_t n) {
  if (n == 0) throw std::invalid_argument("dihedral parameter must be at least 1");
  const std::size_t m = 2 * n;
  std::vector<Element> t(m * m);
  std::vector<std::string> labels(m);
  // r^a r^b = r^(a+b), r^a (r^b s) = r^(a+b) s, (r^a s) r^b = r^(a-b) s, (r^a s)(r^b s) = r^(a-b)
  for (std::size_t x = 0; x < m; ++x) {
    const std::size_t a = x % n;
    const bool xs = x >= n;
    labels[x] = "r^" + std::to_string(a) + (xs ? " s" : "");
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t b = y % n;
      const bool ys = y >= n;
      const std::size_t rot = xs ? (a + n - b) % n : (a + b) % n;
      t[x * m + y] = static_cast<Element>(rot + ((xs != ys) ? n : 0));
    }
  }
  return Group::from_table(std::move(t), std::move(labels), {FamilyTag::Kind::Dihedral, n, {}}, false);
}

namespace {

std::vector<std::vector<std::size_t>> lex_permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

}  // namespace

Group make_symmetric(std::size_t n) {
  if (n == 0 || n > kMaxSymmetricDegree) {
    throw std::invalid_argument("symmetric degree must be in 1.." + std::to_string(kMaxSymmetricDegree));
  }
  const auto perms = lex_permutations(n);
  const std::size_t m = perms.size();
  std::map<std::vector<std::size_t>, Element> rank;
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    rank.emplace(perms[i], static_cast<Element>(i));
    for (std::size_t v : perms[i]) labels[i] += static_cast<char>('0' + v);
  }
  std::vector<Element> t(m * m);
  std::vector<std::size_t> prod(n);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t x = 0; x < n; ++x) prod[x] = perms[a][perms[b][x]];
      t[a * m + b] = rank.at(prod);
    }
  }
  return Group::from_table(std::move(t), std::move(labels), {FamilyTag::Kind::Symmetric, n, {}}, false);
}

std::vector<std::size_t> symmetric_permutation(const Group& g, Element a) {
  if (g.family().kind != FamilyTag::Kind::Symmetric) {
    throw std::invalid_argument("not a symmetric group");
  }
  return lex_permutations(g.family().param).at(a);
}

Group make_quaternion() {
  // Unit u in {1, i, j, k} with sign bit s has index 2u + s.
  // unit_mul[u][v] = (unit, sign) of u*v.
  static constexpr int unit_mul[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  std::vector<Element> t(64);
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      const auto& p = unit_mul[x / 2][y / 2];
      const int sign = (x % 2) ^ (y % 2) ^ p[1];
      t[x * 8 + y] = static_cast<Element>(2 * p[0] + sign);
    }
  }
  std::vector<std::string> labels{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  return Group::from_table(std::move(t), std::move(labels), {FamilyTag::Kind::Quaternion, 8, {}}, false);
}

Group direct_product(const Group& a, const Group& b, std::size_t max_order) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  if (n > max_order) {
    throw std::invalid_argument("direct product order " + std::to_string(n) + " exceeds cap " +
                                std::to_string(max_order));
  }
  std::vector<Element> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto xa = static_cast<Element>(x / nb), xb = static_cast<Element>(x % nb);
      const auto ya = static_cast<Element>(y / nb), yb = static_cast<Element>(y % nb);
      t[x * n + y] = static_cast<Element>(a.mul(xa, ya) * nb + b.mul(xb, yb));
    }
  }
  std::vector<std::string> labels;
  if (a.has_labels() && b.has_labels()) {
    labels.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
      labels[x] = "(" + a.label(static_cast<Element>(x / nb)) + ", " +
                  b.label(static_cast<Element>(x % nb)) + ")";
    }
  }
  FamilyTag tag{FamilyTag::Kind::Product, 0, {}};
  auto push = [&](const Group& g) {
    if (g.family().kind == FamilyTag::Kind::Product) {
      tag.factors.insert(tag.factors.end(), g.family().factors.begin(), g.family().factors.end());
    } else {
      tag.factors.push_back(std::make_shared<const Group>(g));
    }
  };
  push(a);
  push(b);
  return Group::from_table(std::move(t), std::move(labels), std::move(tag), false);
}

Group from_cayley_table(std::string_view text, std::size_t max_order) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  std::vector<Element> table;
  std::vector<std::string> labels;
  std::vector<bool> labelled;
  std::size_t rows = 0;

  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("Cayley table line " + std::to_string(lineno) + ": " + msg);
  };
  auto parse_uint = [&](std::string_view tok) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) fail("expected an integer, got '" + std::string(tok) + "'");
    return v;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string tok; ls >> tok;) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks[0].starts_with("#")) {
      if (toks[0] == "#" && toks.size() >= 2 && toks[1] == "label") {
        if (n == 0) fail("label before order line");
        if (toks.size() < 4) fail("label line needs an index and a name");
        const std::size_t idx = parse_uint(toks[2]);
        if (idx >= n) fail("label index out of range");
        std::string name = toks[3];
        for (std::size_t i = 4; i < toks.size(); ++i) name += " " + toks[i];
        labels[idx] = name;
        labelled[idx] = true;
      }
      continue;
    }
    if (n == 0) {
      if (toks.size() != 1) fail("first line must hold the group order");
      n = parse_uint(toks[0]);
      if (n == 0) fail("group order must be positive");
      if (n > max_order) fail("group order " + std::to_string(n) + " exceeds cap " + std::to_string(max_order));
      table.reserve(n * n);
      labels.assign(n, "");
      labelled.assign(n, false);
      continue;
    }
    if (rows == n) fail("more than n table rows");
    if (toks.size() != n) fail("row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(n));
    for (const auto& tok : toks) table.push_back(static_cast<Element>(parse_uint(tok)));
    ++rows;
  }
  if (n == 0) throw std::invalid_argument("Cayley table: empty input");
  if (rows != n) throw std::invalid_argument("Cayley table: expected " + std::to_string(n) + " rows, got " + std::to_string(rows));
  const bool any_label = std::any_of(labelled.begin(), labelled.end(), [](bool b) { return b; });
  if (any_label) {
    for (std::size_t i = 0; i < n; ++i)
      if (!labelled[i]) labels[i] = std::to_string(i);
  } else {
    labels.clear();
  }
  return Group::from_table(std::move(table), std::move(labels), {}, true);
}

std::string to_cayley_text(const Group& g) {
  std::ostringstream os;
  const std::size_t n = g.order();
  os << n << "\n";
  for (Element a = 0; a < n; ++a) {
    auto r = g.row(a);
    for (std::size_t b = 0; b < n; ++b) os << (b ? " " : "") << r[b];
    os << "\n";
  }
  if (g.has_labels()) {
    for (Element a = 0; a < n; ++a) os << "# label " << a << " " << g.label(a) << "\n";
  }
  return os.str();
}

Subgroup trivial_subgroup(const Group& g) {
  return Subgroup(Subgroup::Unchecked{}, g, {g.identity()});
}

Subgroup whole_group(const Group& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(Subgroup::Unchecked{}, g, std::move(all));
}

Subgroup subgroup_generate(const Group& g, std::span<const Element> gens) {
  for (Element s : gens) {
    if (s >= g.order()) {
      throw std::invalid_argument("generator index " + std::to_string(s) + " out of range for order " +
                                  std::to_string(g.order()));
    }
  }
  return Subgroup(Subgroup::Unchecked{}, g, closure(g, {}, gens));
}

std::vector<Element> left_cosets(const Group& g, const Subgroup& h) {
  require_same_parent(g, h);
  std::vector<bool> covered(g.order(), false);
  std::vector<Element> reps;
  for (Element c = 0; c < g.order(); ++c) {
    if (covered[c]) continue;
    reps.push_back(c);
    for (Element x : h.members()) covered[g.mul(c, x)] = true;
  }
  return reps;
}

bool is_normal(const Group& g, const Subgroup& h) {
  require_same_parent(g, h);
  for (Element x = 0; x < g.order(); ++x)
    for (Element a : h.members())
      if (!h.contains(g.conjugate(a, x))) return false;
  return true;
}

Subgroup normal_core(const Group& g, const Subgroup& h) {
  require_same_parent(g, h);
  // a lies in every xHx^-1 iff x^-1 a x lies in H for every x.
  std::vector<Element> core;
  for (Element a : h.members()) {
    bool keep = true;
    for (Element x = 0; x < g.order() && keep; ++x) keep = h.contains(g.conjugate(a, x));
    if (keep) core.push_back(a);
  }
  return Subgroup(Subgroup::Unchecked{}, g, std::move(core));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (!a.parent().same_as(b.parent())) throw std::invalid_argument("intersect: parent mismatch");
  std::vector<Element> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(out));
  return Subgroup(Subgroup::Unchecked{}, a.parent(), std::move(out));
}

ConjugacyClasses conjugacy_classes(const Group& g) {
  const std::size_t n = g.order();
  ConjugacyClasses cc;
  cc.class_of.assign(n, n);
  auto visit = [&](Element x) {
    if (cc.class_of[x] != n) return;
    std::vector<Element> cls;
    for (Element y = 0; y < n; ++y) {
      const Element c = g.conjugate(x, y);
      if (cc.class_of[c] == n) {
        cc.class_of[c] = cc.classes.size();
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    cc.classes.push_back(std::move(cls));
  };
  visit(g.identity());
  for (Element x = 0; x < n; ++x) visit(x);
  return cc;
}

std::vector<Element> center(const Group& g) {
  std::vector<Element> z;
  for (Element a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

std::vector<Subgroup> all_subgroups(const Group& g, std::size_t max_order) {
  if (g.order() > max_order) {
    throw std::invalid_argument("subgroup enumeration refused for order " + std::to_string(g.order()) +
                                " (cap " + std::to_string(max_order) + ")");
  }
  // Start from cyclic subgroups and keep joining single elements until no new
  // subgroup appears; every subgroup is reached by a chain of such joins.
  std::set<std::vector<Element>> seen;
  std::vector<std::vector<Element>> found;
  auto add = [&](std::vector<Element> m) {
    if (seen.insert(m).second) found.push_back(std::move(m));
  };
  add({g.identity()});
  for (Element x = 0; x < g.order(); ++x) {
    const Element gen[] = {x};
    add(closure(g, {}, gen));
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    const std::vector<Element> base = found[i];
    std::vector<bool> in(g.order(), false);
    for (Element a : base) in[a] = true;
    for (Element x = 0; x < g.order(); ++x) {
      if (in[x]) continue;
      std::vector<Element> gens = base;
      gens.push_back(x);
      add(closure(g, base, gens));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& m : found) out.emplace_back(Subgroup::Unchecked{}, g, std::move(m));
  return out;
}

std::vector<Subgroup> normal_subgroups(const Group& g, std::size_t max_order) {
  std::vector<Subgroup> out;
  for (auto& h : all_subgroups(g, max_order))
    if (is_normal(g, h)) out.push_back(std::move(h));
  return out;
}

}  // namespace hsp
