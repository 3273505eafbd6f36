// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "verlagerung/verlagerung.hpp"

using namespace vlg;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct NamedPair {
  std::string name;
  GroupPair pair;
};

std::vector<NamedPair> finite_cocyclic() {
  std::vector<NamedPair> out;
  for (const auto& e : load_catalog("finite-small"))
    for (auto& p : cocyclic_pairs(e)) out.push_back({e.name + "/" + p.label, std::move(p.pair)});
  return out;
}

// Declared fp pairs that are normal with cyclic quotient.
std::vector<NamedPair> fp_cyclic() {
  std::vector<NamedPair> out;
  for (const auto& e : load_catalog("fp-classic"))
    for (auto& p : declared_pairs(e))
      if (p.pair.is_normal() && p.pair.is_quotient_cyclic()) out.push_back({e.name + "/" + p.label, std::move(p.pair)});
  return out;
}

const GroupPair& find_pair(const std::vector<NamedPair>& ps, const std::string& name) {
  for (const auto& p : ps)
    if (p.name == name) return p.pair;
  throw PreconditionError("no pair " + name);
}

// Element-level orders of tk and tc for a normal subgroup of a permutation
// group, straight from the transfer formula over a left transversal. The
// cokernel is taken inside the G-invariant part of U^ab.
std::pair<std::size_t, std::size_t> brute_tk_tc(const PermGroup& G, const PermSubgroup& U) {
  PermSubgroup Ud = commutator_subgroup(U);
  PermSubgroup Gd = commutator_subgroup(G);
  const auto& all = G.elements().elements;
  std::vector<Permutation> reps;
  for (const auto& g : all) {
    bool fresh = true;
    for (const auto& r : reps)
      if (U.contains(r.inverse() * g)) fresh = false;
    if (fresh) reps.push_back(g);
  }
  auto rep_of = [&](const Permutation& x) {
    for (const auto& r : reps)
      if (U.contains(r.inverse() * x)) return r;
    throw InternalError("no coset");
  };
  std::size_t in_kernel = 0;
  for (const auto& g : all) {
    Permutation v = G.identity();
    for (const auto& r : reps) v = v * (rep_of(g * r).inverse() * g * r);
    if (Ud.contains(v)) ++in_kernel;
  }
  const std::size_t tk = in_kernel / Gd.order();
  const std::size_t abG = all.size() / Gd.order();
  const std::size_t image = abG / tk;
  // G-invariant classes of U^ab
  std::size_t fixed = 0;
  for (auto e : U.members()) {
    bool ok = true;
    for (const auto& g : G.generators()) ok = ok && Ud.contains(commutator(g, all[e]));
    if (ok) ++fixed;
  }
  return {tk, fixed / Ud.order() / image};
}

CyclicModule random_lattice(std::mt19937_64& rng, std::size_t p, std::size_t max_rank) {
  std::uniform_int_distribution<std::size_t> d(0, 2);
  for (;;) {
    std::size_t r = d(rng), s = d(rng), t = d(rng);
    std::size_t rank = r + s * (p - 1) + t * p;
    if (rank == 0 || rank > max_rank) continue;
    return conjugate_lattice(lattice_with_multiplicities(r, s, t, p), random_unimodular(rank, rng));
  }
}

// The action of a lattice reduced modulo m.
CyclicModule reduce_mod(const CyclicModule& L, long m) {
  const std::size_t k = L.module().free_rank();
  FgAbGroup M(Vector(k, Integer(m)), 0);
  return CyclicModule(M, AbHom(M, M, L.sigma().matrix()), L.order());
}

void theorem_a(Outcome& o) {
  auto t0 = Clock::now();
  auto pairs = finite_cocyclic();
  std::size_t gens = 0;
  for (const auto& [name, P] : pairs) {
    for (const auto& s : quotient_generators(P)) {
      auto r = verify_kernel_is_augmentation(P, s);
      ++gens;
      o.require(r.equal, name + ": kernel != augmentation image");
      o.require(r.commutators && r.commutators->holds, name + ": commutator product");
    }
  }
  const double secs = seconds_since(t0);
  o.require(pairs.size() >= 40, "fewer than 40 co-cyclic pairs");
  o.require(secs < 60, "runtime over 60 s");
  o.detail << pairs.size() << " pairs, " << gens << " generators, " << secs << " s";
}

void theorem_c(Outcome& o) {
  auto t0 = Clock::now();
  auto pairs = finite_cocyclic();
  for (const auto& [name, P] : pairs) {
    auto t = summarize_transfer(P);
    const bool identity = t.tk_order == Integer(static_cast<unsigned long>(P.index())) * t.tc_order;
    const bool chi_one = euler_char(ab_datum(P)) == 1;
    o.require(identity, name + ": |tk| != index |tc|");
    o.require(chi_one, name + ": chi != 1");
    o.require(identity == chi_one, name + ": routes disagree");
    auto r = verify_kernel_cokernel(P);
    o.require(r.verdict == Verdict::pass, name + ": kernel-cokernel report");
  }
  const double secs = seconds_since(t0);
  o.require(secs < 60, "runtime over 60 s");
  o.detail << pairs.size() << " pairs, " << secs << " s";
}

void suzuki(Outcome& o) {
  std::size_t n = 0;
  for (const auto& e : load_catalog("finite-small")) {
    for (const auto& p : abelian_quotient_pairs(e)) {
      ++n;
      auto t = summarize_transfer(p.pair);
      o.require(t.tk_order % Integer(static_cast<unsigned long>(p.pair.index())) == 0,
                e.name + "/" + p.label + ": index does not divide |tk|");
    }
  }
  o.require(n > 0, "no pairs");
  o.detail << n << " normal subgroups with abelian quotient";
}

void theorem_d(Outcome& o) {
  auto t0 = Clock::now();
  auto pairs = fp_cyclic();
  struct Pin {
    const char* name;
    std::size_t tf_G, tf_U;
    Rational ratio;
  };
  // ranks by the Schreier index formula and the classical abelianizations
  const Pin pins[] = {
      {"F2/index2", 2, 3, Rational(1)},  {"F2/index3", 2, 4, Rational(1)},     {"F3/index2", 3, 5, Rational(1)},
      {"Klein/index2", 1, 2, Rational(2)}, {"Z2/index2", 2, 2, rational(Integer(1), Integer(2))},
  };
  for (const auto& pin : pins) {
    auto r = verify_rank_formula(find_pair(pairs, pin.name));
    o.require(r.tf_G == pin.tf_G && r.tf_U == pin.tf_U, std::string(pin.name) + ": ranks");
    o.require(r.ratio == pin.ratio, std::string(pin.name) + ": ratio " + r.ratio.get_str());
  }
  std::size_t n = 0;
  for (const auto& [name, P] : pairs) {
    if (!is_prime(P.index())) continue;
    ++n;
    auto r = verify_rank_formula(P);
    o.require(r.formula, name + ": rank formula");
    o.require(r.herbrand_matches, name + ": herbrand != p / ratio");
  }
  const double secs = seconds_since(t0);
  o.require(secs < 120, "runtime over 120 s");
  o.detail << n << " prime-index pairs, " << secs << " s";
}

void fixtures(Outcome& o) {
  auto finite = load_catalog("finite-small");
  auto entry = [&](const std::string& name) -> const CatalogEntry& {
    for (const auto& e : finite)
      if (e.name == name) return e;
    throw PreconditionError("no entry " + name);
  };
  for (auto [g, u] : {std::pair{"S3", "A3"}, std::pair{"Q8", "i"}}) {
    const auto& e = entry(g);
    auto P = e.pair(u);
    auto t = summarize_transfer(P);
    auto [btk, btc] = brute_tk_tc(e.perm, *P.perm_subgroup());
    const std::string name = std::string(g) + "/" + u;
    o.require(t.tk_order == 2 && t.tc_order == 1, name + ": pinned orders");
    o.require(btk == 2 && btc == 1, name + ": element-level orders");
    o.detail << name << " tk=" << t.tk_order << " tc=" << t.tc_order << "; ";
  }
}

void herbrand_laws(Outcome& o) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const std::size_t primes[] = {2, 3, 5};
  const long mods[] = {2, 3, 4, 5, 6, 9};
  std::uniform_int_distribution<int> pick_m(0, 5);
  std::size_t modules = 0, sequences = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = primes[trial % 3];
    auto L = random_lattice(rng, p, 6);
    auto F = reduce_mod(random_lattice(rng, p, 3), mods[pick_m(rng)]);
    auto small = random_lattice(rng, p, 3);
    auto X = direct_sum(reduce_mod(small, mods[pick_m(rng)]), random_lattice(rng, p, 3));
    modules += 3;
    o.require(F.herbrand() == 1, "finite module with h != 1");
    for (const auto& K : {L.invariants(), hom_image(AbHom::scalar(L.module(), 2 + trial % 3))}) {
      auto seq = submodule_sequence(L, K);
      o.require(verify_herbrand_mult(seq.sub, seq.inclusion, L, seq.projection, seq.quotient).holds(),
                "multiplicativity on a lattice sequence");
      ++sequences;
    }
    auto tseq = submodule_sequence(X, torsion_subgroup(X.module()));
    o.require(verify_herbrand_mult(tseq.sub, tseq.inclusion, X, tseq.projection, tseq.quotient).holds(),
              "multiplicativity on the torsion sequence");
    ++sequences;
    for (const auto* M : {&L, &X}) {
      auto lh = verify_log_herbrand(*M);
      o.require(lh.holds(), "log-Herbrand identity");
    }
  }
  const double secs = seconds_since(t0);
  o.require(modules >= 200, "fewer than 200 modules");
  o.require(secs < 120, "runtime over 120 s");
  o.detail << modules << " modules, " << sequences << " sequences, " << secs << " s";
}

void diederichsen(Outcome& o) {
  std::mt19937_64 rng(77);
  std::size_t n = 0;
  for (std::size_t p : {2u, 3u})
    for (std::size_t r = 0; r <= 5; ++r)
      for (std::size_t s = 0; r + s <= 5; ++s)
        for (std::size_t t = 0; r + s + t <= 5; ++t) {
          if (r + s + t == 0) continue;
          auto L = lattice_with_multiplicities(r, s, t, p);
          for (int k = 0; k < 10; ++k) {
            auto C = conjugate_lattice(L, random_unimodular(L.module().dim(), rng, 40, 3));
            auto d = diederichsen_multiplicities(C);
            ++n;
            o.require(d == LatticeDecomposition{r, s, t}, "multiplicities not recovered");
          }
        }
  o.detail << n << " conjugated lattices";
}

void mackey_layer(Outcome& o) {
  auto pairs = finite_cocyclic();
  for (auto& p : fp_cyclic()) pairs.push_back(std::move(p));
  for (const auto& [name, P] : pairs) {
    auto X = ab_datum(P);
    o.require(validate_datum(X).valid(), name + ": invalid datum");
    o.require(six_term_check(X).exact(), name + ": six-term sequence not exact");
    auto chi = euler_char(X);
    o.require(chi * X.X1.herbrand() == 1, name + ": chi h != 1");
    auto ratio = summarize_transfer(P).ratio;
    o.require(chi == ratio / Rational(Integer(static_cast<unsigned long>(P.index()))), name + ": chi != ratio / index");
  }
  o.detail << pairs.size() << " data";
}

void permutation_module(Outcome& o) {
  auto pairs = fp_cyclic();
  for (const char* name : {"F2/index2", "F2/index3"}) {
    const auto& P = find_pair(pairs, name);
    const std::size_t p = P.index();
    for (const auto& s : quotient_generators(P)) {
      auto r = verify_permutation_module(P, s);
      o.require(r.hypothesis, std::string(name) + ": intermediate torsion");
      o.require(r.verdict == Verdict::pass, std::string(name) + ": verdict");
      CyclicModule X(P.abU(), P.conj_action(s), p);
      o.require(X.tate_hm1().is_trivial(), std::string(name) + ": Tate degree -1 nonzero");
      auto d = diederichsen_multiplicities(X);
      o.require(d == LatticeDecomposition{1, 0, 1}, std::string(name) + ": multiplicities");
    }
    o.detail << name << " (1,0,1); ";
  }
}

void engine_consistency(Outcome& o) {
  std::mt19937_64 rng(99);
  std::vector<NamedPair> pairs;
  for (const auto& e : load_catalog("finite-small")) {
    for (auto& p : cocyclic_pairs(e)) pairs.push_back({e.name + "/" + p.label, std::move(p.pair)});
    for (auto& p : abelian_quotient_pairs(e)) pairs.push_back({e.name + "/" + p.label, std::move(p.pair)});
    for (auto& p : declared_pairs(e)) pairs.push_back({e.name + "/" + p.label, std::move(p.pair)});
  }
  for (const auto& e : load_catalog("fp-classic"))
    for (auto& p : declared_pairs(e)) pairs.push_back({e.name + "/" + p.label, std::move(p.pair)});
  for (const auto& [name, P] : pairs) {
    const Integer n(static_cast<unsigned long>(P.index()));
    o.require(P.inclusion() * P.transfer() == AbHom::scalar(P.abG(), n), name + ": inclusion o transfer");
    for (int k = 0; k < 2; ++k)
      o.require(P.transfer_random_transversal(rng) == P.transfer(), name + ": transversal dependence");
  }
  o.detail << pairs.size() << " pairs";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"kernel of the inclusion equals the augmentation image", theorem_a},
      {"kernel order is index times cokernel order", theorem_c},
      {"index divides the transfer kernel", suzuki},
      {"torsion-free rank formula on prime-index pairs", theorem_d},
      {"worked examples", fixtures},
      {"Herbrand quotient laws", herbrand_laws},
      {"lattice decomposition round trip", diederichsen},
      {"Mackey data and six-term sequence", mackey_layer},
      {"permutation module for free group kernels", permutation_module},
      {"transfer engine self-consistency", engine_consistency},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << (k + 1) << "] " << criteria[k].first << ": " << o.detail.str();
    for (const auto& p : o.problems) std::cout << "\n     " << p;
    std::cout << std::endl;
    if (!o.ok) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
