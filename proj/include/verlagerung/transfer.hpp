#pragma once

#include <memory>
#include <random>
#include <variant>

#include "verlagerung/cyclic_module.hpp"
#include "verlagerung/perm_group.hpp"
#include "verlagerung/schreier.hpp"

namespace vlg {

// Conjugate of a subgroup element fell outside the subgroup.
class NormalityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

enum class Backend { perm, fp };

inline const char* to_string(Backend b) { return b == Backend::perm ? "perm" : "fp"; }

// Element of G: a permutation for the perm backend, a word for the fp one.
using GroupElement = std::variant<Permutation, Word>;

struct IntermediateSection {
  std::size_t index_in_G = 0;   // |G:H|
  std::size_t index_over_U = 0; // |H:U|
  FgAbGroup abelianization;     // H^ab
};

// A group G with a subgroup U of finite index, their abelianizations and the
// maps between them.
//
// Perm backend: left cosets rU, transfer via rep(g r)^-1 g r.
// Fp backend: right cosets U w from coset enumeration, transfer via the
// Schreier elements w_c g w_{c.g}^-1. Both give the same map on G^ab.
class GroupPair {
 public:
  static GroupPair from_perm(const PermGroup& G, std::vector<Permutation> U_generators) {
    GroupPair P;
    auto d = std::make_shared<PermData>(PermData{G, PermSubgroup(G, std::move(U_generators))});
    P.perm_ = d;
    P.index_ = d->U.index();
    P.abG_ = d->abG.group();
    P.abU_ = d->abU.group();
    P.finish();
    return P;
  }

  static GroupPair from_fp(const FpGroup& G, std::vector<Word> U_words, std::size_t max_cosets = kDefaultMaxCosets) {
    GroupPair P;
    auto rs = reidemeister_schreier(G, U_words, max_cosets);
    auto d = std::make_shared<FpData>(FpData{G, std::move(U_words), abelianization_fp(G), rs,
                                             abelianization_fp(rs.presentation())});
    P.fp_ = d;
    P.index_ = rs.table().size();
    P.abG_ = d->abG.group;
    P.abU_ = d->abU.group;
    P.finish();
    return P;
  }

  Backend backend() const { return perm_ ? Backend::perm : Backend::fp; }
  std::size_t index() const { return index_; }
  const FgAbGroup& abG() const { return abG_; }
  const FgAbGroup& abU() const { return abU_; }
  bool is_normal() const { return normal_; }
  const AbHom& transfer() const { return transfer_; }
  const AbHom& inclusion() const { return inclusion_; }

  // Order of G when known (perm backend).
  std::optional<std::size_t> group_order() const {
    if (perm_) return perm_->G.order();
    return std::nullopt;
  }

  std::vector<GroupElement> generators() const {
    std::vector<GroupElement> out;
    if (perm_)
      for (const auto& g : perm_->G.generators()) out.emplace_back(g);
    else
      for (std::size_t j = 0; j < fp_->G.num_generators(); ++j) out.emplace_back(Word::generator(j));
    return out;
  }

  GroupElement power(const GroupElement& x, long k) const {
    if (perm_) return vlg::power(std::get<Permutation>(x), k);
    return std::get<Word>(x).pow(k);
  }

  std::string format(const GroupElement& x) const {
    if (perm_) return std::get<Permutation>(x).to_cycles();
    return fp_->G.format(std::get<Word>(x));
  }

  // Order of xU in G/U (U normal).
  std::size_t order_modulo(const GroupElement& x) const {
    if (perm_) return vlg::order_modulo(std::get<Permutation>(x), perm_->U);
    const auto& T = fp_->rs.table();
    const Word& w = std::get<Word>(x);
    std::uint32_t c = T.trace(0, w);
    std::size_t k = 1;
    while (c != 0) {
      c = T.trace(c, w);
      ++k;
    }
    return k;
  }

  // An element whose image generates G/U, if U is normal with cyclic quotient.
  std::optional<GroupElement> quotient_generator() const {
    if (!normal_) return std::nullopt;
    if (perm_) {
      auto s = vlg::quotient_generator(PermSubgroup::whole(perm_->G), perm_->U);
      if (!s) return std::nullopt;
      return GroupElement(*s);
    }
    for (const auto& w : fp_->rs.transversal())
      if (order_modulo(w) == index_) return GroupElement(w);
    return std::nullopt;
  }

  bool is_quotient_cyclic() const { return quotient_generator().has_value(); }

  // Automorphism u -> s u s^-1 of U^ab.
  AbHom conj_action(const GroupElement& s) const {
    IntMatrix images;
    if (perm_) {
      const auto& x = std::get<Permutation>(s);
      const auto& gens = perm_->U.generators();
      images = IntMatrix(abU_.dim(), gens.size());
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Permutation c = conjugate(x, gens[i]);
        if (!perm_->U.contains(c)) throw NormalityError("conjugate of a subgroup generator leaves the subgroup");
        images.set_column(i, perm_->abU.project(c));
      }
      return AbHom(abU_, abU_, images * perm_->abU.section());
    }
    const Word& x = std::get<Word>(s);
    const auto& sw = fp_->rs.generator_words();
    images = IntMatrix(abU_.dim(), sw.size());
    for (std::size_t i = 0; i < sw.size(); ++i) {
      Word c = x * sw[i] * x.inverse();
      Word r;
      try {
        r = fp_->rs.rewrite(c);
      } catch (const MembershipError&) {
        throw NormalityError("conjugate of a subgroup generator leaves the subgroup");
      }
      images.set_column(i, fp_abU_image(r));
    }
    return AbHom(abU_, abU_, images * fp_->abU.section);
  }

  // The conjugation action of every generator of G on U^ab.
  std::vector<AbHom> generator_actions() const {
    std::vector<AbHom> out;
    for (const auto& g : generators()) out.push_back(conj_action(g));
    return out;
  }

  // Transfer recomputed from another set of coset representatives, each
  // the canonical one multiplied by a random element of U.
  AbHom transfer_random_transversal(std::mt19937_64& rng) const {
    if (perm_) {
      const auto& t = perm_->G.elements();
      const auto& mem = perm_->U.members();
      std::uniform_int_distribution<std::size_t> pick(0, mem.size() - 1);
      std::vector<Permutation> reps;
      for (const auto& r : perm_->transversal.representatives) reps.push_back(r * t.elements[mem[pick(rng)]]);
      return perm_transfer(reps);
    }
    const auto& base = fp_->rs.transversal();
    std::vector<Word> pool = fp_->rs.generator_words();
    std::vector<Word> reps;
    std::uniform_int_distribution<int> len(0, 3);
    for (const auto& w : base) {
      Word u;
      if (!pool.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int k = len(rng); k > 0; --k) {
          const Word& g = pool[pick(rng)];
          u = u * (rng() % 2 ? g : g.inverse());
        }
      }
      reps.push_back(u * w);
    }
    return fp_transfer(reps);
  }

  // H^ab for each H = <U, s^d> with d dividing |G:U|, in increasing index.
  std::vector<IntermediateSection> intermediate_sections(const GroupElement& s) const {
    if (!normal_) throw PreconditionError("intermediate subgroups need a normal subgroup");
    if (order_modulo(s) != index_) throw PreconditionError("element does not generate the quotient");
    std::vector<IntermediateSection> out;
    for (auto d : divisors(index_)) {
      IntermediateSection sec;
      sec.index_in_G = d;
      sec.index_over_U = index_ / d;
      if (perm_) {
        auto gens = perm_->U.generators();
        gens.push_back(vlg::power(std::get<Permutation>(s), static_cast<long>(d)));
        sec.abelianization = PermAbelianization(PermSubgroup(perm_->G, gens)).group();
      } else {
        auto words = fp_->U_words;
        words.push_back(std::get<Word>(s).pow(static_cast<long>(d)));
        auto rs = reidemeister_schreier(fp_->G, words);
        sec.abelianization = abelianization_fp(rs.presentation()).group;
      }
      out.push_back(std::move(sec));
    }
    return out;
  }

  // Perm backend internals, for exhaustive checks.
  const PermGroup* perm_group() const { return perm_ ? &perm_->G : nullptr; }
  const PermSubgroup* perm_subgroup() const { return perm_ ? &perm_->U : nullptr; }
  const FpGroup* fp_group() const { return fp_ ? &fp_->G : nullptr; }
  const ReidemeisterSchreier* schreier() const { return fp_ ? &fp_->rs : nullptr; }

 private:
  struct PermData {
    PermData(PermGroup g, PermSubgroup u)
        : G(std::move(g)),
          U(std::move(u)),
          abG(PermSubgroup::whole(G)),
          abU(U),
          transversal(left_transversal(G, U)) {}
    PermGroup G;
    PermSubgroup U;
    PermAbelianization abG, abU;
    LeftTransversal transversal;
  };

  struct FpData {
    FpGroup G;
    std::vector<Word> U_words;
    QuotientMap abG;
    ReidemeisterSchreier rs;
    QuotientMap abU;
  };

  GroupPair() = default;

  void finish() {
    if (perm_) {
      normal_ = vlg::is_normal(PermSubgroup::whole(perm_->G), perm_->U);
      transfer_ = perm_transfer(perm_->transversal.representatives);
      const auto& gens = perm_->U.generators();
      IntMatrix images(abG_.dim(), gens.size());
      for (std::size_t i = 0; i < gens.size(); ++i) images.set_column(i, perm_->abG.project(gens[i]));
      inclusion_ = AbHom(abU_, abG_, images * perm_->abU.section());
    } else {
      const auto& T = fp_->rs.table();
      normal_ = true;
      for (std::size_t j = 0; j < fp_->G.num_generators() && normal_; ++j)
        for (int sgn : {1, -1})
          for (const auto& w : fp_->U_words) {
            const Word x = Word::generator(j).pow(sgn);
            if (T.trace(0, x * w * x.inverse()) != 0) normal_ = false;
          }
      transfer_ = fp_transfer(fp_->rs.transversal());
      const auto& sw = fp_->rs.generator_words();
      IntMatrix images(abG_.dim(), sw.size());
      for (std::size_t i = 0; i < sw.size(); ++i)
        images.set_column(i, fp_->abG.projection.apply(exponent_sums(sw[i], fp_->G.num_generators())));
      inclusion_ = AbHom(abU_, abG_, images * fp_->abU.section);
    }
  }

  AbHom perm_transfer(const std::vector<Permutation>& reps) const {
    const auto& t = perm_->G.elements();
    const auto& T = perm_->transversal;
    const auto& gens = perm_->G.generators();
    IntMatrix images(abU_.dim(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Vector sum(abU_.dim());
      for (std::size_t c = 0; c < reps.size(); ++c) {
        if (T.coset_of[t.index_of(reps[c])] != c) throw PreconditionError("representative is in the wrong coset");
        Permutation gr = gens[j] * reps[c];
        const auto& r2 = reps[T.coset_of[t.index_of(gr)]];
        const Vector& v = perm_->abU.project(r2.inverse() * gr);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
      }
      images.set_column(j, abU_.reduce(sum));
    }
    return AbHom(abG_, abU_, images * perm_->abG.section());
  }

  Vector fp_abU_image(const Word& schreier_word) const {
    return fp_->abU.projection.apply(exponent_sums(schreier_word, fp_->rs.presentation().num_generators()));
  }

  AbHom fp_transfer(const std::vector<Word>& reps) const {
    const auto& T = fp_->rs.table();
    const std::size_t m = fp_->G.num_generators();
    IntMatrix images(abU_.dim(), m);
    for (std::size_t j = 0; j < m; ++j) {
      Vector sum(abU_.dim());
      const Word x = Word::generator(j);
      for (std::uint32_t c = 0; c < reps.size(); ++c) {
        if (T.trace(0, reps[c]) != c) throw PreconditionError("representative is in the wrong coset");
        const auto d = T.act(c, static_cast<int>(j) + 1);
        Vector v = fp_abU_image(fp_->rs.rewrite(reps[c] * x * reps[d].inverse()));
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
      }
      images.set_column(j, abU_.reduce(sum));
    }
    return AbHom(abG_, abU_, images * fp_->abG.section);
  }

  std::shared_ptr<const PermData> perm_;
  std::shared_ptr<const FpData> fp_;
  std::size_t index_ = 0;
  FgAbGroup abG_, abU_;
  bool normal_ = false;
  AbHom transfer_, inclusion_;
};

// Invariants of U^ab under conjugation by every generator of G.
inline SubgroupEmbedding invariants_under_G(const GroupPair& P) {
  SubgroupEmbedding K{P.abU(), AbHom::identity(P.abU())};
  for (const auto& s : P.generator_actions()) {
    auto ker = hom_kernel((s - AbHom::identity(P.abU())) * K.inclusion);
    K = {ker.group, K.inclusion * ker.inclusion};
  }
  return K;
}

inline FgAbGroup transfer_kernel(const GroupPair& P) { return hom_kernel(P.transfer()).group; }

// Cokernel of G^ab -> (U^ab)^G; the transfer must land in the invariants.
inline FgAbGroup transfer_cokernel(const GroupPair& P) {
  if (!P.is_normal()) throw PreconditionError("transfer cokernel needs a normal subgroup");
  auto inv = invariants_under_G(P);
  return hom_cokernel(factor_through(P.transfer(), inv.inclusion)).group;
}

struct TransferSummary {
  std::size_t index = 0;
  FgAbGroup tk, tc;
  Integer tk_order, tc_order;
  Rational ratio;          // |tk| / |tc|
  Rational hs_multiplier;  // |tk| / |G:U|
  bool tk_in_torsion = false;
  bool tc_killed_by_index = false;
  bool composition_law = false;  // inclusion o transfer = |G:U| id
};

inline TransferSummary summarize_transfer(const GroupPair& P) {
  TransferSummary s;
  s.index = P.index();
  const Integer n(static_cast<unsigned long>(P.index()));
  auto ker = hom_kernel(P.transfer());
  s.tk = ker.group;
  s.composition_law = P.inclusion() * P.transfer() == AbHom::scalar(P.abG(), n);
  s.tk_in_torsion = subgroup_contains(torsion_subgroup(P.abG()).inclusion, ker.inclusion);
  s.tk_order = finite_order(s.tk, "transfer kernel");
  s.hs_multiplier = rational(s.tk_order, n);
  s.tc = transfer_cokernel(P);
  s.tc_order = finite_order(s.tc, "transfer cokernel");
  s.tc_killed_by_index = AbHom::scalar(s.tc, n).is_zero();
  s.ratio = rational(s.tk_order, s.tc_order);
  return s;
}

}  // namespace vlg
