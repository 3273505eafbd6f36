#pragma once

#include "verlagerung/mackey.hpp"

namespace vlg {

enum class Verdict { pass, fail, hypothesis_not_met, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::hypothesis_not_met: return "hypothesis-not-met";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

// ker(U^ab -> G^ab) = (s - 1) U^ab for U normal with G/U cyclic generated by s.
struct KernelIsAugmentationReport {
  Verdict verdict = Verdict::fail;
  FgAbGroup kernel, augmentation;
  Integer kernel_order, augmentation_order;  // 0 when infinite
  bool equal = false;
  bool c1_trivial = false;
  std::optional<CommutatorProductReport> commutators;  // perm backend only
};

inline Integer order_or_zero(const FgAbGroup& A) { return A.is_finite() ? A.order() : Integer(0); }

inline KernelIsAugmentationReport verify_kernel_is_augmentation(const GroupPair& P, const GroupElement& s) {
  if (!P.is_normal()) throw PreconditionError("subgroup is not normal");
  if (P.order_modulo(s) != P.index()) throw PreconditionError("element does not generate the quotient");
  KernelIsAugmentationReport r;
  auto ker = hom_kernel(P.inclusion());
  auto aug = hom_image(P.conj_action(s) - AbHom::identity(P.abU()));
  r.kernel = ker.group;
  r.augmentation = aug.group;
  r.kernel_order = order_or_zero(ker.group);
  r.augmentation_order = order_or_zero(aug.group);
  r.equal = subgroup_equal(ker.inclusion, aug.inclusion);
  r.c1_trivial = section_cohomology(ab_datum(P, s)).c1.is_trivial();
  bool ok = r.equal && r.c1_trivial;
  if (const auto* G = P.perm_group()) {
    r.commutators = verify_commutator_product(PermSubgroup::whole(*G), *P.perm_subgroup(), std::get<Permutation>(s));
    ok = ok && r.commutators->holds;
  }
  r.verdict = verdict_of(ok);
  return r;
}

// All elements whose image generates G/U: s^k for k prime to |G:U|.
inline std::vector<GroupElement> quotient_generators(const GroupPair& P) {
  auto s = P.quotient_generator();
  if (!s) throw PreconditionError("quotient is not cyclic");
  std::vector<GroupElement> out;
  const auto n = static_cast<long>(P.index());
  for (long k = 1; k <= std::max(n, 1L); ++k)
    if (std::gcd(k, n) == 1 || n == 1) out.push_back(P.power(*s, k));
  return out;
}

// |tk| = |G:U| |tc|, asserted directly and through the Euler characteristic
// of the abelianization datum.
struct KernelCokernelReport {
  Verdict verdict = Verdict::fail;
  Integer tk_order, tc_order;
  std::size_t index = 0;
  Rational euler_characteristic;
  bool identity = false;
  bool euler_is_one = false;
};

inline KernelCokernelReport verify_kernel_cokernel(const GroupPair& P) {
  KernelCokernelReport r;
  r.index = P.index();
  if (!P.is_normal() || !P.is_quotient_cyclic()) throw PreconditionError("quotient is not cyclic");
  if (!P.abU().is_finite()) {
    r.verdict = Verdict::hypothesis_not_met;
    return r;
  }
  auto t = summarize_transfer(P);
  r.tk_order = t.tk_order;
  r.tc_order = t.tc_order;
  r.identity = t.tk_order == Integer(static_cast<unsigned long>(r.index)) * t.tc_order;
  r.euler_characteristic = euler_char(ab_datum(P));
  r.euler_is_one = r.euler_characteristic == 1;
  r.verdict = verdict_of(r.identity && r.euler_is_one);
  return r;
}

// tf(U) = p tf(G) + (1 - p)(1 - log_p rho) for U normal of prime index p,
// with the Herbrand quotient of U^ab equal to p / rho.
struct RankFormulaReport {
  Verdict verdict = Verdict::fail;
  std::size_t p = 0, tf_G = 0, tf_U = 0;
  Rational ratio, herbrand;
  std::optional<long> log_ratio;
  bool formula = false;
  bool herbrand_matches = false;
};

inline RankFormulaReport verify_rank_formula(const GroupPair& P) {
  RankFormulaReport r;
  r.p = P.index();
  if (!is_prime(r.p) || !P.is_normal()) {
    r.verdict = Verdict::hypothesis_not_met;
    return r;
  }
  auto t = summarize_transfer(P);
  r.tf_G = P.abG().free_rank();
  r.tf_U = P.abU().free_rank();
  r.ratio = t.ratio;
  const Integer pz(static_cast<unsigned long>(r.p));
  r.log_ratio = log_exact(r.ratio, pz);
  if (r.log_ratio) {
    const auto p = static_cast<long>(r.p);
    r.formula = static_cast<long>(r.tf_U) == p * static_cast<long>(r.tf_G) + (1 - p) * (1 - *r.log_ratio);
  }
  auto s = P.quotient_generator();
  r.herbrand = CyclicModule(P.abU(), P.conj_action(*s), r.p).herbrand();
  r.herbrand_matches = r.herbrand == Rational(pz) / r.ratio;
  r.verdict = verdict_of(r.formula && r.herbrand_matches);
  return r;
}

// Torsion-free abelianizations of all intermediate subgroups force
// H^1(H/U, U^ab) = 0 for every intermediate H, and for prime index no
// augmentation summands in U^ab.
struct PermutationModuleReport {
  Verdict verdict = Verdict::fail;
  std::vector<IntermediateSection> sections;
  bool hypothesis = false;
  std::vector<bool> h1_zero;  // per section, same order
  std::optional<LatticeDecomposition> multiplicities;
};

inline PermutationModuleReport verify_permutation_module(const GroupPair& P, const GroupElement& s) {
  PermutationModuleReport r;
  r.sections = P.intermediate_sections(s);
  r.hypothesis = true;
  for (const auto& sec : r.sections) r.hypothesis = r.hypothesis && sec.abelianization.is_torsion_free();
  if (!r.hypothesis) {
    r.verdict = Verdict::hypothesis_not_met;
    return r;
  }
  const AbHom sigma = P.conj_action(s);
  bool ok = true;
  for (const auto& sec : r.sections) {
    // H = <U, s^d> with d = |G:H|; H/U is generated by s^d
    CyclicModule X(P.abU(), power(sigma, sec.index_in_G), sec.index_over_U);
    r.h1_zero.push_back(X.h1_vanishes());
    ok = ok && r.h1_zero.back();
  }
  if (is_prime(P.index())) {
    r.multiplicities = diederichsen_multiplicities(CyclicModule(P.abU(), sigma, P.index()));
    ok = ok && r.multiplicities->s == 0;
  }
  r.verdict = verdict_of(ok);
  return r;
}

// Per prime-index section: 1 - log_p rho and whether tk = tc = 0.
struct GlobalRankEntry {
  std::size_t p = 0;
  Rational ratio;
  std::optional<long> value;
  bool tk_tc_trivial = false;
};

struct GlobalRankReport {
  std::vector<GlobalRankEntry> entries;
  bool consistent = true;
};

inline GlobalRankReport global_rank_report(const std::vector<GroupPair>& sections) {
  GlobalRankReport r;
  std::optional<long> first;
  for (const auto& P : sections) {
    if (!is_prime(P.index())) throw PreconditionError("section index is not prime");
    auto t = summarize_transfer(P);
    GlobalRankEntry e;
    e.p = P.index();
    e.ratio = t.ratio;
    auto lg = log_exact(t.ratio, Integer(static_cast<unsigned long>(e.p)));
    if (lg) e.value = 1 - *lg;
    e.tk_tc_trivial = t.tk.is_trivial() && t.tc.is_trivial();
    if (e.value) {
      if (first && *first != *e.value) r.consistent = false;
      if (!first) first = e.value;
    } else {
      r.consistent = false;
    }
    r.entries.push_back(e);
  }
  return r;
}

// c1 = 0 and c0 cyclic of order |G:U| for the abelianization datum.
struct SectionCohomologyReport {
  Verdict verdict = Verdict::fail;
  FgAbGroup c0, c1, k0, k1;
  bool c1_trivial = false;
  bool c0_cyclic_of_index_order = false;
};

inline SectionCohomologyReport verify_section_groups(const GroupPair& P) {
  SectionCohomologyReport r;
  auto S = section_cohomology(ab_datum(P));
  r.c0 = S.c0;
  r.c1 = S.c1;
  r.k0 = S.k0;
  r.k1 = S.k1;
  r.c1_trivial = S.c1.is_trivial();
  r.c0_cyclic_of_index_order =
      S.c0.free_rank() == 0 && S.c0.torsion_rank() <= 1 && S.c0.order() == Integer(static_cast<unsigned long>(P.index()));
  r.verdict = verdict_of(r.c1_trivial && r.c0_cyclic_of_index_order);
  return r;
}

// chi |G:U| = rho; chi h(U^ab) = 1; chi = 1 when U^ab is finite.
struct EulerRatioReport {
  Verdict verdict = Verdict::fail;
  Rational chi, ratio, herbrand;
  bool chi_times_index_is_ratio = false;
  bool chi_times_herbrand_is_one = false;
  bool finite_chi_is_one = true;
  bool six_term_exact = false;
};

inline EulerRatioReport verify_euler_ratio(const GroupPair& P) {
  EulerRatioReport r;
  auto X = ab_datum(P);
  r.chi = euler_char(X);
  r.ratio = summarize_transfer(P).ratio;
  r.herbrand = X.X1.herbrand();
  r.chi_times_index_is_ratio = r.chi * Rational(Integer(static_cast<unsigned long>(P.index()))) == r.ratio;
  r.chi_times_herbrand_is_one = r.chi * r.herbrand == 1;
  if (P.abU().is_finite()) r.finite_chi_is_one = r.chi == 1;
  r.six_term_exact = six_term_check(X).exact();
  r.verdict = verdict_of(r.chi_times_index_is_ratio && r.chi_times_herbrand_is_one && r.finite_chi_is_one &&
                         r.six_term_exact);
  return r;
}

// |G:U| divides |tk| for U normal with G/U abelian.
struct IndexDividesKernelReport {
  Verdict verdict = Verdict::fail;
  Integer tk_order;
  std::size_t index = 0;
};

inline IndexDividesKernelReport verify_index_divides_kernel(const GroupPair& P) {
  IndexDividesKernelReport r;
  r.index = P.index();
  r.tk_order = finite_order(transfer_kernel(P), "transfer kernel");
  r.verdict = verdict_of(r.tk_order % Integer(static_cast<unsigned long>(r.index)) == 0);
  return r;
}

// inclusion o transfer = |G:U| id, and independence of the transversal.
struct TransferConsistencyReport {
  Verdict verdict = Verdict::fail;
  bool composition_law = false;
  bool transversal_independent = false;
};

inline TransferConsistencyReport verify_transfer_consistency(const GroupPair& P, std::mt19937_64& rng,
                                                             int transversals = 2) {
  TransferConsistencyReport r;
  r.composition_law = P.inclusion() * P.transfer() == AbHom::scalar(P.abG(), Integer(static_cast<unsigned long>(P.index())));
  r.transversal_independent = true;
  for (int k = 0; k < transversals; ++k)
    r.transversal_independent = r.transversal_independent && P.transfer_random_transversal(rng) == P.transfer();
  r.verdict = verdict_of(r.composition_law && r.transversal_independent);
  return r;
}

}  // namespace vlg
