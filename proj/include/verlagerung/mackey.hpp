#pragma once

#include <array>

#include "verlagerung/transfer.hpp"

namespace vlg {

// Two-level cohomological Mackey data for a cyclic group C of order n:
// a C-module X1, a group XG, restriction i: XG -> X1 and transfer t: X1 -> XG.
struct SectionMackeyDatum {
  CyclicModule X1;
  FgAbGroup XG;
  AbHom i;  // XG -> X1
  AbHom t;  // X1 -> XG

  std::size_t order() const { return X1.order(); }
};

struct DatumValidation {
  bool shapes = false;
  bool restriction_invariant = false;  // sigma i = i
  bool transfer_coinvariant = false;   // t sigma = t
  bool transfer_restriction = false;   // t i = n id
  bool restriction_transfer = false;   // i t = norm
  bool valid() const {
    return shapes && restriction_invariant && transfer_coinvariant && transfer_restriction && restriction_transfer;
  }
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (!shapes) out.push_back("maps do not match the groups");
    if (!restriction_invariant) out.push_back("sigma o i != i");
    if (!transfer_coinvariant) out.push_back("t o sigma != t");
    if (!transfer_restriction) out.push_back("t o i != n id");
    if (!restriction_transfer) out.push_back("i o t != norm");
    return out;
  }
};

inline DatumValidation validate_datum(const SectionMackeyDatum& X) {
  DatumValidation v;
  const auto& M = X.X1.module();
  v.shapes = X.i.domain() == X.XG && X.i.codomain() == M && X.t.domain() == M && X.t.codomain() == X.XG;
  if (!v.shapes) return v;
  const auto& s = X.X1.sigma();
  v.restriction_invariant = s * X.i == X.i;
  v.transfer_coinvariant = X.t * s == X.t;
  v.transfer_restriction = X.t * X.i == AbHom::scalar(X.XG, Integer(static_cast<unsigned long>(X.order())));
  v.restriction_transfer = X.i * X.t == X.X1.norm();
  return v;
}

inline void require_valid(const SectionMackeyDatum& X) {
  auto v = validate_datum(X);
  if (!v.valid()) throw PreconditionError("invalid Mackey datum: " + v.violations().front());
}

// The pieces behind the section cohomology groups, kept so that the maps of
// the six-term sequence can be built from them.
struct SectionCohomology {
  FgAbGroup c0, c1, k0, k1;
  FgAbGroup h0, hm1;  // Tate groups of X1

  SubgroupEmbedding ker_t, ker_norm, ker_i, invariants;
  QuotientMap c0_map;   // XG -> c0
  QuotientMap c1_map;   // ker t -> c1
  QuotientMap k1_map;   // invariants -> k1
  QuotientMap h0_map;   // invariants -> h0
  QuotientMap hm1_map;  // ker norm -> hm1
};

inline SectionCohomology section_cohomology(const SectionMackeyDatum& X) {
  require_valid(X);
  SectionCohomology S;
  const AbHom aug = X.X1.sigma_minus_one();
  const AbHom N = X.X1.norm();

  S.c0_map = hom_cokernel(X.t);
  S.ker_t = hom_kernel(X.t);
  S.c1_map = hom_cokernel(factor_through(aug, S.ker_t.inclusion));
  S.ker_i = hom_kernel(X.i);
  S.invariants = X.X1.invariants();
  S.k1_map = hom_cokernel(factor_through(X.i, S.invariants.inclusion));
  S.h0_map = hom_cokernel(factor_through(N, S.invariants.inclusion));
  S.ker_norm = hom_kernel(N);
  S.hm1_map = hom_cokernel(factor_through(aug, S.ker_norm.inclusion));

  S.c0 = S.c0_map.group;
  S.c1 = S.c1_map.group;
  S.k0 = S.ker_i.group;
  S.k1 = S.k1_map.group;
  S.h0 = S.h0_map.group;
  S.hm1 = S.hm1_map.group;
  for (const auto* G : {&S.c0, &S.c1, &S.k0, &S.k1, &S.h0, &S.hm1})
    if (!G->is_finite()) throw InternalError("section cohomology group is infinite: " + G->to_string());
  return S;
}

struct SixTermReport {
  // 0 -> c1 -> Hm1 -> k0 -> c0 -> H0 -> k1 -> 0
  std::array<FgAbGroup, 6> groups;
  std::array<AbHom, 5> maps;
  std::array<bool, 6> exact_at{};  // at each of the six groups
  bool exact() const {
    for (bool e : exact_at)
      if (!e) return false;
    return true;
  }
};

inline SixTermReport six_term_check(const SectionMackeyDatum& X) {
  auto S = section_cohomology(X);
  SixTermReport r;
  r.groups = {S.c1, S.hm1, S.k0, S.c0, S.h0, S.k1};
  // c1 -> Hm1: inclusion ker t into ker norm
  r.maps[0] = induced_on_quotients(S.c1_map, factor_through(S.ker_t.inclusion, S.ker_norm.inclusion), S.hm1_map);
  // Hm1 -> k0: induced by t
  AbHom t_on_kernel = factor_through(X.t * S.ker_norm.inclusion, S.ker_i.inclusion);
  r.maps[1] = AbHom(S.hm1, S.k0, t_on_kernel.matrix() * S.hm1_map.section);
  // k0 -> c0: inclusion then projection
  r.maps[2] = S.c0_map.projection * S.ker_i.inclusion;
  // c0 -> H0: induced by i
  AbHom i_on_invariants = factor_through(X.i, S.invariants.inclusion);
  r.maps[3] = AbHom(S.c0, S.h0, S.h0_map.projection.matrix() * i_on_invariants.matrix() * S.c0_map.section);
  // H0 -> k1: both are quotients of the invariants
  r.maps[4] = AbHom(S.h0, S.k1, S.k1_map.projection.matrix() * S.h0_map.section);

  r.exact_at[0] = is_injective(r.maps[0]);
  for (std::size_t k = 1; k < 5; ++k)
    r.exact_at[k] = subgroup_equal(hom_image(r.maps[k - 1]).inclusion, hom_kernel(r.maps[k]).inclusion);
  r.exact_at[5] = is_surjective(r.maps[4]);
  return r;
}

// (|k0| |c1|) / (|k1| |c0|)
inline Rational euler_char(const SectionCohomology& S) {
  return rational(S.k0.order() * S.c1.order(), S.k1.order() * S.c0.order());
}

inline Rational euler_char(const SectionMackeyDatum& X) { return euler_char(section_cohomology(X)); }

// Datum of abelianizations for U normal in G with cyclic quotient generated
// by the image of s: X1 = U^ab with conjugation by s, XG = G^ab, i the
// transfer and t induced by inclusion.
inline SectionMackeyDatum ab_datum(const GroupPair& P, const GroupElement& s) {
  if (!P.is_normal()) throw PreconditionError("datum needs a normal subgroup");
  if (P.order_modulo(s) != P.index()) throw PreconditionError("element does not generate the quotient");
  SectionMackeyDatum X{CyclicModule(P.abU(), P.conj_action(s), P.index()), P.abG(), P.transfer(), P.inclusion()};
  if (!validate_datum(X).valid())
    throw InternalError("abelianization datum violates: " + validate_datum(X).violations().front());
  return X;
}

inline SectionMackeyDatum ab_datum(const GroupPair& P) {
  auto s = P.quotient_generator();
  if (!s) throw PreconditionError("quotient is not cyclic");
  return ab_datum(P, *s);
}

// Z with trivial action, i = id and t = n.
inline SectionMackeyDatum trivial_datum(std::size_t n) {
  FgAbGroup Z = FgAbGroup::free(1);
  return {trivial_module(1, n), Z, AbHom::identity(Z), AbHom::scalar(Z, Integer(static_cast<unsigned long>(n)))};
}

// XG = invariants of X, i the inclusion, t the norm.
inline SectionMackeyDatum fixed_point_datum(const CyclicModule& X) {
  auto inv = X.invariants();
  return {X, inv.group, inv.inclusion, factor_through(X.norm(), inv.inclusion)};
}

// XG = coinvariants of X, t the projection, i induced by the norm.
inline SectionMackeyDatum coinvariant_datum(const CyclicModule& X) {
  auto q = hom_cokernel(X.sigma_minus_one());
  return {X, q.group, AbHom(q.group, X.module(), X.norm().matrix() * q.section), q.projection};
}

inline SectionMackeyDatum direct_sum(const SectionMackeyDatum& A, const SectionMackeyDatum& B) {
  auto top = direct_sum(A.X1, B.X1);
  auto ds1 = direct_sum(A.X1.module(), B.X1.module());
  auto dsG = direct_sum(A.XG, B.XG);
  AbHom i = ds1.inject_first * A.i * dsG.project_first + ds1.inject_second * B.i * dsG.project_second;
  AbHom t = dsG.inject_first * A.t * ds1.project_first + dsG.inject_second * B.t * ds1.project_second;
  return {top, dsG.group, i, t};
}

// A morphism of data: maps at both levels commuting with sigma, i and t.
struct DatumMorphism {
  AbHom at_one;  // X1 -> Y1
  AbHom at_G;    // XG -> YG
};

inline bool is_datum_morphism(const SectionMackeyDatum& X, const DatumMorphism& f, const SectionMackeyDatum& Y) {
  return f.at_one * X.X1.sigma() == Y.X1.sigma() * f.at_one && f.at_one * X.i == Y.i * f.at_G &&
         f.at_G * X.t == Y.t * f.at_one;
}

struct EulerMultReport {
  bool morphisms = false;
  bool exact = false;
  Rational chi_sub, chi_middle, chi_quotient;
  bool holds() const { return morphisms && exact && chi_middle == chi_sub * chi_quotient; }
};

inline EulerMultReport verify_euler_mult(const SectionMackeyDatum& A, const DatumMorphism& f,
                                         const SectionMackeyDatum& B, const DatumMorphism& g,
                                         const SectionMackeyDatum& C) {
  EulerMultReport r;
  r.morphisms = is_datum_morphism(A, f, B) && is_datum_morphism(B, g, C);
  auto level_exact = [](const AbHom& a, const AbHom& b) {
    return is_injective(a) && is_surjective(b) && subgroup_equal(hom_image(a).inclusion, hom_kernel(b).inclusion);
  };
  r.exact = level_exact(f.at_one, g.at_one) && level_exact(f.at_G, g.at_G);
  if (r.morphisms && r.exact) {
    r.chi_sub = euler_char(A);
    r.chi_middle = euler_char(B);
    r.chi_quotient = euler_char(C);
  }
  return r;
}

// The sub-datum m X and the quotient X / m X for a positive integer m, with
// the morphisms of the resulting sequence.
struct DatumSequence {
  SectionMackeyDatum sub, quotient;
  DatumMorphism inclusion, projection;
};

inline DatumSequence multiple_sequence(const SectionMackeyDatum& X, const Integer& m) {
  auto K1 = hom_image(AbHom::scalar(X.X1.module(), m));
  auto KG = hom_image(AbHom::scalar(X.XG, m));
  auto q1 = quotient(K1);
  auto qG = quotient(KG);
  SectionMackeyDatum sub{X.X1.restrict_to(K1), KG.group, factor_through(X.i * KG.inclusion, K1.inclusion),
                         factor_through(X.t * K1.inclusion, KG.inclusion)};
  SectionMackeyDatum quo{X.X1.quotient_by(q1), qG.group, induced_on_quotients(qG, X.i, q1),
                         induced_on_quotients(q1, X.t, qG)};
  return {sub, quo, {K1.inclusion, KG.inclusion}, {q1.projection, qG.projection}};
}

}  // namespace vlg
