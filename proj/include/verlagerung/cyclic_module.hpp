#pragma once

#include <random>

#include "verlagerung/abelian.hpp"

namespace vlg {

// A finitely generated abelian group with an automorphism sigma of order
// dividing n, i.e. a module over the cyclic group of order n.
class CyclicModule {
 public:
  CyclicModule(FgAbGroup M, AbHom sigma, std::size_t n) : M_(std::move(M)), sigma_(std::move(sigma)), n_(n) {
    if (n_ == 0) throw PreconditionError("cyclic group order must be positive");
    if (!(sigma_.domain() == M_) || !(sigma_.codomain() == M_))
      throw PreconditionError("sigma must be an endomorphism of the module");
    if (!(power(sigma_, n_) == AbHom::identity(M_)))
      throw PreconditionError("sigma^" + std::to_string(n_) + " is not the identity");
  }

  // Z^rank with sigma given by an integer matrix.
  CyclicModule(const IntMatrix& sigma, std::size_t n)
      : CyclicModule(FgAbGroup::free(sigma.rows()), AbHom(FgAbGroup::free(sigma.rows()), FgAbGroup::free(sigma.rows()), sigma), n) {}

  const FgAbGroup& module() const { return M_; }
  const AbHom& sigma() const { return sigma_; }
  std::size_t order() const { return n_; }

  AbHom norm() const {
    AbHom sum = AbHom::zero(M_, M_);
    AbHom term = AbHom::identity(M_);
    for (std::size_t i = 0; i < n_; ++i) {
      sum = sum + term;
      term = sigma_ * term;
    }
    return sum;
  }

  AbHom sigma_minus_one() const { return sigma_ - AbHom::identity(M_); }

  SubgroupEmbedding invariants() const { return hom_kernel(sigma_minus_one()); }

  // Invariants modulo norms.
  FgAbGroup tate_h0() const {
    auto inv = invariants();
    auto q = hom_cokernel(factor_through(norm(), inv.inclusion));
    return certified_finite(q.group, "degree 0 Tate group");
  }

  // Norm kernel modulo the image of sigma - 1.
  FgAbGroup tate_hm1() const {
    auto kn = hom_kernel(norm());
    auto q = hom_cokernel(factor_through(sigma_minus_one(), kn.inclusion));
    return certified_finite(q.group, "degree -1 Tate group");
  }

  Rational herbrand() const { return rational(tate_h0().order(), tate_hm1().order()); }

  bool h1_vanishes() const { return tate_hm1().is_trivial(); }

  // Same action with sigma^k as the chosen generator.
  CyclicModule with_generator_power(std::size_t k) const {
    if (gcd(Integer(static_cast<unsigned long>(k)), Integer(static_cast<unsigned long>(n_))) != 1)
      throw PreconditionError("exponent is not prime to the group order");
    return CyclicModule(M_, power(sigma_, k), n_);
  }

  // Restriction to a sigma-stable subgroup.
  CyclicModule restrict_to(const SubgroupEmbedding& sub) const {
    return CyclicModule(sub.group, factor_through(sigma_ * sub.inclusion, sub.inclusion), n_);
  }

  // Induced action on a quotient by a sigma-stable subgroup.
  CyclicModule quotient_by(const QuotientMap& q) const {
    return CyclicModule(q.group, induced_on_quotients(q, sigma_, q), n_);
  }

  // Action on M / torsion, which is the free coordinate block of sigma.
  CyclicModule lattice_part() const {
    const std::size_t k = M_.torsion_rank(), f = M_.free_rank();
    IntMatrix block(f, f);
    for (std::size_t i = 0; i < f; ++i)
      for (std::size_t j = 0; j < f; ++j) block(i, j) = sigma_.matrix()(k + i, k + j);
    return CyclicModule(block, n_);
  }

  CyclicModule torsion_part() const { return restrict_to(torsion_subgroup(M_)); }

  std::size_t invariant_rank() const { return invariants().group.free_rank(); }

 private:
  static FgAbGroup certified_finite(FgAbGroup A, const char* what) {
    if (!A.is_finite()) throw InternalError(std::string(what) + " has positive free rank");
    return A;
  }

  FgAbGroup M_;
  AbHom sigma_;
  std::size_t n_;
};

// Standard lattices over the cyclic group of order n.

inline CyclicModule trivial_module(std::size_t rank, std::size_t n) {
  return CyclicModule(IntMatrix::identity(rank), n);
}

// Z[C_n] with sigma permuting the basis cyclically.
inline CyclicModule regular_module(std::size_t n) {
  IntMatrix P(n, n);
  for (std::size_t i = 0; i < n; ++i) P((i + 1) % n, i) = 1;
  return CyclicModule(P, n);
}

// Augmentation ideal of Z[C_n], i.e. Z[x]/(1 + x + ... + x^(n-1)), as the
// companion matrix on the basis 1, x, ..., x^(n-2).
inline CyclicModule augmentation_module(std::size_t n) {
  if (n < 2) throw PreconditionError("augmentation ideal needs n >= 2");
  IntMatrix C(n - 1, n - 1);
  for (std::size_t i = 0; i + 1 < n - 1; ++i) C(i + 1, i) = 1;
  for (std::size_t i = 0; i < n - 1; ++i) C(i, n - 2) = -1;
  return CyclicModule(C, n);
}

inline CyclicModule direct_sum(const CyclicModule& A, const CyclicModule& B) {
  if (A.order() != B.order()) throw PreconditionError("modules over different cyclic groups");
  auto ds = direct_sum(A.module(), B.module());
  AbHom s = ds.inject_first * A.sigma() * ds.project_first + ds.inject_second * B.sigma() * ds.project_second;
  return CyclicModule(ds.group, s, A.order());
}

// Lattice with declared multiplicities of trivial, augmentation and regular
// summands over the cyclic group of prime order p.
inline CyclicModule lattice_with_multiplicities(std::size_t r, std::size_t s, std::size_t t, std::size_t p) {
  std::vector<IntMatrix> blocks;
  for (std::size_t i = 0; i < r; ++i) blocks.push_back(IntMatrix::identity(1));
  for (std::size_t i = 0; i < s; ++i) blocks.push_back(augmentation_module(p).sigma().matrix());
  for (std::size_t i = 0; i < t; ++i) blocks.push_back(regular_module(p).sigma().matrix());
  IntMatrix S(0, 0);
  for (const auto& b : blocks) S = IntMatrix::block_diagonal(S, b);
  return CyclicModule(S, p);
}

struct Unimodular {
  IntMatrix P, P_inv;
};

// Random matrix of determinant 1, built from elementary row operations, with
// its inverse.
inline Unimodular random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 0, long bound = 2) {
  Unimodular u{IntMatrix::identity(n), IntMatrix::identity(n)};
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> coef(-bound, bound);
  if (steps == 0) steps = static_cast<int>(3 * n);
  for (int k = 0; k < steps; ++k) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const Integer c(coef(rng));
    u.P.add_row(i, j, c);
    u.P_inv.add_col(j, i, -c);
  }
  return u;
}

// P sigma P^-1 for unimodular P, an isomorphic lattice in a new basis.
inline CyclicModule conjugate_lattice(const CyclicModule& X, const Unimodular& u) {
  if (!X.module().is_torsion_free()) throw PreconditionError("basis change needs a lattice");
  if (!(u.P * u.P_inv == IntMatrix::identity(u.P.rows()))) throw PreconditionError("P_inv is not the inverse of P");
  return CyclicModule(u.P * X.sigma().matrix() * u.P_inv, X.order());
}

struct LatticeDecomposition {
  std::size_t r = 0, s = 0, t = 0;
  friend bool operator==(const LatticeDecomposition&, const LatticeDecomposition&) = default;
};

// Multiplicities of trivial, augmentation and regular summands of a lattice
// over the cyclic group of prime order p. The Tate groups of the p-adic
// completion are (Z/p)^r in degree 0 and (Z/p)^s in degree -1; t follows
// from the invariant rank. The rank identity is then checked.
inline LatticeDecomposition diederichsen_multiplicities(const CyclicModule& X) {
  const std::size_t p = X.order();
  if (!is_prime(p)) throw PreconditionError("decomposition needs a group of prime order");
  if (!X.module().is_torsion_free()) throw PreconditionError("decomposition needs a torsion-free module");
  const Integer P(static_cast<unsigned long>(p));
  auto r = log_exact(Rational(X.tate_h0().order()), P);
  auto s = log_exact(Rational(X.tate_hm1().order()), P);
  if (!r || !s) throw InternalError("Tate group order is not a power of p");
  const auto inv = static_cast<long>(X.invariant_rank());
  const long t = inv - *r;
  const auto rank = static_cast<long>(X.module().free_rank());
  const auto pl = static_cast<long>(p);
  if (t < 0 || *r + *s * (pl - 1) + t * pl != rank)
    throw PreconditionError("rank equations have no non-negative solution; not a lattice over C_p");
  return {static_cast<std::size_t>(*r), static_cast<std::size_t>(*s), static_cast<std::size_t>(t)};
}

struct LogHerbrandReport {
  Rational h_torsion, h_lattice, h_total;
  long log_h = 0;
  std::size_t rank = 0, invariant_rank = 0;
  bool torsion_trivial_h = false;  // torsion part has h = 1
  bool multiplicative = false;     // h = h(torsion) h(lattice)
  bool integral_log = false;
  bool rank_identity = false;      // rank = p inv_rank + (1 - p) log_p h
  bool holds() const { return torsion_trivial_h && multiplicative && integral_log && rank_identity; }
};

// The torsion submodule is split off first, then the lattice part is tested.
inline LogHerbrandReport verify_log_herbrand(const CyclicModule& X) {
  const std::size_t p = X.order();
  if (!is_prime(p)) throw PreconditionError("log-Herbrand identity needs prime order");
  LogHerbrandReport r;
  CyclicModule T = X.torsion_part();
  CyclicModule L = X.lattice_part();
  r.h_torsion = T.herbrand();
  r.h_lattice = L.herbrand();
  r.h_total = X.herbrand();
  r.torsion_trivial_h = r.h_torsion == 1;
  r.multiplicative = r.h_total == r.h_torsion * r.h_lattice;
  auto lg = log_exact(r.h_lattice, Integer(static_cast<unsigned long>(p)));
  r.integral_log = lg.has_value();
  r.rank = L.module().free_rank();
  r.invariant_rank = L.invariant_rank();
  if (lg) {
    r.log_h = *lg;
    const auto pl = static_cast<long>(p);
    r.rank_identity = static_cast<long>(r.rank) == pl * static_cast<long>(r.invariant_rank) + (1 - pl) * r.log_h;
  }
  return r;
}

struct HerbrandMultReport {
  bool equivariant = false;
  bool exact = false;
  Rational h_sub, h_middle, h_quotient;
  bool holds() const { return equivariant && exact && h_middle == h_sub * h_quotient; }
};

// Checks 0 -> A -f-> B -g-> C -> 0 is an exact sequence of modules and
// compares Herbrand quotients.
inline HerbrandMultReport verify_herbrand_mult(const CyclicModule& A, const AbHom& f, const CyclicModule& B,
                                               const AbHom& g, const CyclicModule& C) {
  if (A.order() != B.order() || B.order() != C.order())
    throw PreconditionError("modules over different cyclic groups");
  if (!(f.domain() == A.module()) || !(f.codomain() == B.module()) || !(g.domain() == B.module()) ||
      !(g.codomain() == C.module()))
    throw PreconditionError("maps do not match the modules");
  HerbrandMultReport r;
  r.equivariant = f * A.sigma() == B.sigma() * f && g * B.sigma() == C.sigma() * g;
  r.exact = is_injective(f) && is_surjective(g) && subgroup_equal(hom_image(f).inclusion, hom_kernel(g).inclusion);
  if (r.equivariant && r.exact) {
    r.h_sub = A.herbrand();
    r.h_middle = B.herbrand();
    r.h_quotient = C.herbrand();
  }
  return r;
}

struct ModuleSequence {
  CyclicModule sub, quotient;
  AbHom inclusion, projection;
};

// The sequence 0 -> K -> X -> X/K -> 0 for a sigma-stable subgroup K.
inline ModuleSequence submodule_sequence(const CyclicModule& X, const SubgroupEmbedding& K) {
  auto q = quotient(K);
  return {X.restrict_to(K), X.quotient_by(q), K.inclusion, q.projection};
}

}  // namespace vlg
