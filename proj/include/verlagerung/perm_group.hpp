#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <unordered_map>

#include "verlagerung/abelian.hpp"
#include "verlagerung/permutation.hpp"

namespace vlg {

inline constexpr std::size_t kDefaultMaxOrder = 200000;

// All elements of a permutation group, in breadth-first order from the
// identity, each with a word in the generators that evaluates to it.
struct ElementTable {
  std::vector<Permutation> elements;
  std::vector<Word> words;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;

  std::size_t size() const { return elements.size(); }

  std::optional<std::uint32_t> find(const Permutation& p) const {
    auto it = index.find(p);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t index_of(const Permutation& p) const {
    auto i = find(p);
    if (!i) throw PreconditionError("permutation " + p.to_cycles() + " is not in the group");
    return *i;
  }
};

class PermGroup {
 public:
  PermGroup() : PermGroup(1, {}) {}

  PermGroup(std::size_t degree, std::vector<Permutation> generators)
      : state_(std::make_shared<State>()) {
    if (degree == 0) throw PreconditionError("permutation degree must be positive");
    for (const auto& g : generators)
      if (g.degree() != degree) throw PreconditionError("generator degree does not match group degree");
    state_->degree = degree;
    state_->generators = std::move(generators);
  }

  std::size_t degree() const { return state_->degree; }
  const std::vector<Permutation>& generators() const { return state_->generators; }
  Permutation identity() const { return Permutation(degree()); }

  // Cap used when no explicit cap is passed; shared by all copies.
  void set_order_cap(std::size_t cap) const { state_->cap = cap; }
  std::size_t order_cap() const { return state_->cap; }

  // Builds the table on first use. Not safe to call concurrently before the
  // first call returns. A cap of 0 means order_cap().
  const ElementTable& elements(std::size_t cap = 0) const {
    if (cap == 0) cap = state_->cap;
    if (!state_->table) state_->table = build_table(cap);
    if (state_->table->size() > cap)
      throw SizeOverflow("group order " + std::to_string(state_->table->size()) + " exceeds cap " +
                         std::to_string(cap));
    return *state_->table;
  }

  std::size_t order(std::size_t cap = 0) const { return elements(cap).size(); }
  bool contains(const Permutation& p) const {
    return p.degree() == degree() && elements().find(p).has_value();
  }
  Permutation evaluate(const Word& w) const { return vlg::evaluate(w, generators(), degree()); }

  bool same_as(const PermGroup& other) const { return state_ == other.state_; }

 private:
  struct State {
    std::size_t degree = 1;
    std::vector<Permutation> generators;
    std::optional<ElementTable> table;
    std::size_t cap = kDefaultMaxOrder;
  };

  ElementTable build_table(std::size_t cap) const {
    ElementTable t;
    const auto& gens = generators();
    auto add = [&](Permutation p, Word w) {
      if (t.index.contains(p)) return;
      if (t.elements.size() >= cap)
        throw SizeOverflow("group enumeration exceeded cap of " + std::to_string(cap) + " elements");
      t.index.emplace(p, static_cast<std::uint32_t>(t.elements.size()));
      t.elements.push_back(std::move(p));
      t.words.push_back(std::move(w));
    };
    add(identity(), Word());
    for (std::size_t i = 0; i < t.elements.size(); ++i) {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        add(t.elements[i] * gens[j], t.words[i] * Word::generator(j));
      }
    }
    return t;
  }

  std::shared_ptr<State> state_;
};

// Subgroup of an enumerated parent, stored as a membership mask over the
// parent's element indices.
class PermSubgroup {
 public:
  PermSubgroup(PermGroup parent, std::vector<Permutation> generators)
      : parent_(std::move(parent)), generators_(std::move(generators)) {
    const auto& t = parent_.elements();
    mask_.assign(t.size(), 0);
    for (const auto& g : generators_) {
      if (!t.find(g)) throw PreconditionError("subgroup generator " + g.to_cycles() + " is not in the parent");
    }
    close();
  }

  static PermSubgroup whole(const PermGroup& G) { return PermSubgroup(G, G.generators()); }
  static PermSubgroup trivial(const PermGroup& G) { return PermSubgroup(G, {}); }

  const PermGroup& parent() const { return parent_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<std::uint32_t>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  std::size_t index() const { return parent_.order() / order(); }

  bool contains_index(std::uint32_t i) const { return mask_[i] != 0; }
  bool contains(const Permutation& p) const {
    auto i = parent_.elements().find(p);
    return i && mask_[*i];
  }
  bool contains(const PermSubgroup& other) const {
    for (auto i : other.members_)
      if (!mask_[i]) return false;
    return true;
  }
  bool is_whole() const { return order() == parent_.order(); }

  // Adds a generator; returns false when it was already a member.
  bool adjoin(const Permutation& g) {
    if (contains(g)) return false;
    generators_.push_back(g);
    close();
    return true;
  }

  // The subgroup as a standalone permutation group on its own generators.
  PermGroup as_group() const { return PermGroup(parent_.degree(), generators_); }

  friend bool operator==(const PermSubgroup& a, const PermSubgroup& b) {
    return a.parent_.order() == b.parent_.order() && a.mask_ == b.mask_;
  }

 private:
  void close() {
    const auto& t = parent_.elements();
    members_.clear();
    std::fill(mask_.begin(), mask_.end(), 0);
    mask_[0] = 1;
    members_.push_back(0);
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const Permutation& x = t.elements[members_[i]];
      for (const auto& g : generators_) {
        const auto j = t.index_of(x * g);
        if (!mask_[j]) {
          mask_[j] = 1;
          members_.push_back(j);
        }
      }
    }
  }

  PermGroup parent_;
  std::vector<Permutation> generators_;
  std::vector<std::uint32_t> members_;
  std::vector<char> mask_;
};

inline bool is_normal(const PermSubgroup& H, const PermSubgroup& N) {
  for (const auto& h : H.generators())
    for (const auto& n : N.generators())
      if (!N.contains(conjugate(h, n))) return false;
  return true;
}

// Smallest subgroup containing `seeds` and normalized by H.
inline PermSubgroup normal_closure(const PermSubgroup& H, const std::vector<Permutation>& seeds) {
  PermSubgroup K(H.parent(), {});
  std::deque<Permutation> pending(seeds.begin(), seeds.end());
  while (!pending.empty()) {
    Permutation x = pending.front();
    pending.pop_front();
    if (!K.adjoin(x)) continue;
    for (const auto& h : H.generators()) pending.push_back(conjugate(h, x));
  }
  return K;
}

// [H, H] as the normal closure in H of commutators of generators.
inline PermSubgroup commutator_subgroup(const PermSubgroup& H) {
  std::vector<Permutation> seeds;
  const auto& g = H.generators();
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b) seeds.push_back(commutator(g[a], g[b]));
  return normal_closure(H, seeds);
}

inline PermSubgroup commutator_subgroup(const PermGroup& G) {
  return commutator_subgroup(PermSubgroup::whole(G));
}

struct LeftTransversal {
  std::vector<Permutation> representatives;  // identity first
  std::vector<std::uint32_t> coset_of;        // parent element index -> coset
  std::vector<std::uint32_t> rep_index;       // parent index of each representative

  std::size_t size() const { return representatives.size(); }
};

// Representatives of the cosets gU of U in H, scanning H in table order.
inline LeftTransversal left_transversal(const PermSubgroup& H, const PermSubgroup& U) {
  if (!H.contains(U)) throw PreconditionError("transversal requested for a non-subgroup");
  const auto& t = H.parent().elements();
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  LeftTransversal T;
  T.coset_of.assign(t.size(), unset);
  for (auto e : H.members()) {
    if (T.coset_of[e] != unset) continue;
    const auto c = static_cast<std::uint32_t>(T.size());
    T.representatives.push_back(t.elements[e]);
    T.rep_index.push_back(e);
    for (auto u : U.members()) T.coset_of[t.index_of(t.elements[e] * t.elements[u])] = c;
  }
  return T;
}

inline LeftTransversal left_transversal(const PermGroup& G, const PermSubgroup& U) {
  return left_transversal(PermSubgroup::whole(G), U);
}

// Smallest k >= 1 with x^k in N.
inline std::size_t order_modulo(const Permutation& x, const PermSubgroup& N) {
  Permutation y = x;
  for (std::size_t k = 1;; ++k) {
    if (N.contains(y)) return k;
    y = y * x;
  }
}

// An element of H whose image generates H/N, or nullopt if H/N is not cyclic.
// N must be normal in H.
inline std::optional<Permutation> quotient_generator(const PermSubgroup& H, const PermSubgroup& N) {
  const std::size_t idx = H.order() / N.order();
  const auto& t = H.parent().elements();
  for (auto e : H.members()) {
    if (order_modulo(t.elements[e], N) == idx) return t.elements[e];
  }
  return std::nullopt;
}

// All subgroups between N and H, as preimages of the subgroups of the cyclic
// quotient, one per divisor d of |H:N|, ordered by increasing index d.
inline std::vector<PermSubgroup> intermediate_subgroups(const PermSubgroup& H, const PermSubgroup& N) {
  if (!H.contains(N) || !is_normal(H, N)) throw PreconditionError("N is not a normal subgroup");
  auto s = quotient_generator(H, N);
  if (!s) throw PreconditionError("quotient is not cyclic");
  std::vector<PermSubgroup> out;
  for (auto d : divisors(H.order() / N.order())) {
    auto gens = N.generators();
    gens.push_back(power(*s, static_cast<long>(d)));
    out.emplace_back(H.parent(), std::move(gens));
  }
  return out;
}

struct CommutatorProductReport {
  std::size_t derived_order = 0;       // |[G,G]|
  std::size_t twisted_set_size = 0;    // |{[s,v] : v in N}|
  std::size_t product_size = 0;        // |{[s,v]} . [N,N]|
  bool holds = false;
};

// Checks [G,G] = {[s,v] : v in N} . [N,N] by exhaustion, where G = <s> N.
inline CommutatorProductReport verify_commutator_product(const PermSubgroup& G, const PermSubgroup& N,
                                                          const Permutation& s) {
  if (!G.contains(N) || !is_normal(G, N)) throw PreconditionError("N is not a normal subgroup");
  if (!G.contains(s)) throw PreconditionError("s is not in G");
  {
    auto gens = N.generators();
    gens.push_back(s);
    if (!(PermSubgroup(G.parent(), gens) == G)) throw PreconditionError("G is not generated by s and N");
  }
  const auto& t = G.parent().elements();
  PermSubgroup derived = commutator_subgroup(G);
  PermSubgroup derived_n = commutator_subgroup(N);
  std::vector<char> twisted(t.size(), 0), product(t.size(), 0);
  CommutatorProductReport r;
  for (auto v : N.members()) {
    const auto c = t.index_of(commutator(s, t.elements[v]));
    if (!twisted[c]) {
      twisted[c] = 1;
      ++r.twisted_set_size;
      for (auto w : derived_n.members()) {
        const auto p = t.index_of(t.elements[c] * t.elements[w]);
        if (!product[p]) {
          product[p] = 1;
          ++r.product_size;
        }
      }
    }
  }
  r.derived_order = derived.order();
  r.holds = r.product_size == r.derived_order;
  for (auto i : derived.members()) r.holds = r.holds && product[i];
  return r;
}

// Abelianization H/[H,H] with exact coordinates for every element of H.
class PermAbelianization {
 public:
  explicit PermAbelianization(const PermSubgroup& H) : derived_(commutator_subgroup(H)) {
    const auto& t = H.parent().elements();
    const auto& gens = H.generators();
    const std::size_t k = gens.size();
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    coset_.assign(t.size(), unset);

    // Cosets of [H,H], each with an integer vector over the generators.
    std::vector<std::uint32_t> rep;
    std::vector<Vector> vec;
    auto mark = [&](std::uint32_t e, Vector v) {
      const auto c = static_cast<std::uint32_t>(rep.size());
      rep.push_back(e);
      vec.push_back(std::move(v));
      for (auto d : derived_.members()) coset_[t.index_of(t.elements[e] * t.elements[d])] = c;
      return c;
    };
    mark(0, Vector(k));
    std::vector<Vector> relations;
    for (std::size_t c = 0; c < rep.size(); ++c) {
      for (std::size_t j = 0; j < k; ++j) {
        const auto e = t.index_of(t.elements[rep[c]] * gens[j]);
        Vector step = vec[c];
        step[j] += 1;
        if (coset_[e] == unset) {
          mark(e, step);
          continue;
        }
        Vector rel(k);
        for (std::size_t i = 0; i < k; ++i) rel[i] = step[i] - vec[coset_[e]][i];
        relations.push_back(std::move(rel));
      }
    }
    IntMatrix R(k, relations.size());
    for (std::size_t c = 0; c < relations.size(); ++c) R.set_column(c, relations[c]);
    QuotientMap q = cokernel_structure(R);
    group_ = q.group;
    projection_ = q.projection.matrix();
    section_ = q.section;
    coset_vectors_.reserve(vec.size());
    for (auto& v : vec) coset_vectors_.push_back(group_.reduce(projection_ * v));
  }

  const FgAbGroup& group() const { return group_; }
  const PermSubgroup& derived() const { return derived_; }

  // Coordinates in group() of the element with parent index i.
  const Vector& project_index(std::uint32_t i) const {
    if (coset_[i] == static_cast<std::uint32_t>(-1)) throw PreconditionError("element is not in the subgroup");
    return coset_vectors_[coset_[i]];
  }
  Vector project(const Permutation& p) const {
    return project_index(derived_.parent().elements().index_of(p));
  }

  // generators of H -> group(); columns are images of the generators.
  const IntMatrix& projection() const { return projection_; }
  // group() coordinates -> exponent vectors over the generators of H.
  const IntMatrix& section() const { return section_; }

 private:
  PermSubgroup derived_;
  FgAbGroup group_;
  IntMatrix projection_;
  IntMatrix section_;
  std::vector<std::uint32_t> coset_;
  std::vector<Vector> coset_vectors_;
};

}  // namespace vlg
