#include <gtest/gtest.h>

#include <random>
#include <set>

#include "verlagerung/perm_group.hpp"

using namespace vlg;

namespace {

Permutation cyc(std::string_view s, std::size_t d) { return Permutation::from_cycles(s, d); }

PermGroup symmetric3() { return PermGroup(3, {cyc("(0 1)", 3), cyc("(0 1 2)", 3)}); }

// Quaternion units by their multiplication rule, numbered
// 0:1 1:i 2:j 3:k 4:-1 5:-i 6:-j 7:-k.
int quat_mul(int a, int b) {
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 4, 3, 6}, {2, 7, 4, 1}, {3, 2, 5, 4}};
  int sign = (a >= 4) ^ (b >= 4);
  int r = unit[a % 4][b % 4];
  return sign ? (r + 4) % 8 : r;
}

Permutation quat_left(int a) {
  std::vector<std::uint32_t> img(8);
  for (int x = 0; x < 8; ++x) img[x] = static_cast<std::uint32_t>(quat_mul(a, x));
  return Permutation(img);
}

PermGroup quaternion8() { return PermGroup(8, {quat_left(1), quat_left(2)}); }

// Brute-force subgroup generated by a set: repeated products until stable.
std::set<std::vector<std::uint32_t>> brute_closure(std::vector<Permutation> seeds, std::size_t d) {
  std::set<std::vector<std::uint32_t>> S{Permutation(d).images()};
  for (auto& s : seeds) S.insert(s.images());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<std::uint32_t>> cur(S.begin(), S.end());
    for (auto& a : cur)
      for (auto& b : cur)
        if (S.insert((Permutation(a) * Permutation(b)).images()).second) grew = true;
  }
  return S;
}

std::set<std::vector<std::uint32_t>> as_set(const PermSubgroup& H) {
  std::set<std::vector<std::uint32_t>> S;
  for (auto i : H.members()) S.insert(H.parent().elements().elements[i].images());
  return S;
}

std::set<std::vector<std::uint32_t>> brute_derived(const PermGroup& G) {
  const auto& el = G.elements().elements;
  std::vector<Permutation> comms;
  for (auto& x : el)
    for (auto& y : el) comms.push_back(commutator(x, y));
  return brute_closure(comms, G.degree());
}

}  // namespace

TEST(Permutation, CycleParsing) {
  auto p = cyc("(0 1 2)(3 4)", 5);
  EXPECT_EQ(p(0), 1u);
  EXPECT_EQ(p(2), 0u);
  EXPECT_EQ(p(4), 3u);
  EXPECT_EQ(p.order(), 6u);
  EXPECT_EQ(p.to_cycles(), "(0 1 2)(3 4)");
  EXPECT_TRUE(cyc("()", 4).is_identity());
  EXPECT_TRUE(cyc("", 4).is_identity());
  EXPECT_EQ(cyc("(0, 2)", 3), cyc("(0 2)", 3));
}

TEST(Permutation, CycleParsingErrors) {
  EXPECT_THROW(cyc("(0 5)", 3), PreconditionError);
  EXPECT_THROW(cyc("(0 1)(1 2)", 3), PreconditionError);
  EXPECT_THROW(cyc("(0 1", 3), PreconditionError);
  EXPECT_THROW(cyc("0 1)", 3), PreconditionError);
  EXPECT_THROW(cyc("(a)", 3), PreconditionError);
  EXPECT_THROW(Permutation(std::vector<std::uint32_t>{0, 0}), PreconditionError);
}

TEST(Permutation, CompositionIsRightToLeft) {
  auto p = cyc("(0 1)", 3), q = cyc("(1 2)", 3);
  // q sends 1 to 2, p fixes 2.
  EXPECT_EQ((p * q)(1), 2u);
  EXPECT_EQ((p * q)(0), 1u);
  EXPECT_EQ(p * p.inverse(), Permutation(3));
  EXPECT_EQ(power(q, -3), q);
}

TEST(Enumerate, SmallGroups) {
  EXPECT_EQ(PermGroup(4, {}).order(), 1u);
  EXPECT_EQ(symmetric3().order(), 6u);
  EXPECT_EQ(quaternion8().order(), 8u);
  PermGroup S5(5, {cyc("(0 1)", 5), cyc("(0 1 2 3 4)", 5)});
  EXPECT_EQ(S5.order(), 120u);
}

TEST(Enumerate, WordsEvaluateToElements) {
  for (const auto& G : {symmetric3(), quaternion8()}) {
    const auto& t = G.elements();
    EXPECT_TRUE(t.elements[0].is_identity());
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(G.evaluate(t.words[i]), t.elements[i]);
    EXPECT_EQ(t.size(), brute_closure(G.generators(), G.degree()).size());
  }
}

TEST(Enumerate, CapOverflow) {
  PermGroup S7(7, {cyc("(0 1)", 7), cyc("(0 1 2 3 4 5 6)", 7)});
  EXPECT_THROW(S7.elements(1000), SizeOverflow);
  PermGroup S6(6, {cyc("(0 1)", 6), cyc("(0 1 2 3 4 5)", 6)});
  EXPECT_EQ(S6.order(), 720u);
  EXPECT_THROW(S6.elements(100), SizeOverflow);
}

TEST(Subgroup, RejectsForeignGenerator) {
  PermGroup A3(3, {cyc("(0 1 2)", 3)});
  EXPECT_THROW(PermSubgroup(A3, {cyc("(0 1)", 3)}), PreconditionError);
}

TEST(CommutatorSubgroup, Examples) {
  PermGroup Z4(4, {cyc("(0 1 2 3)", 4)});
  EXPECT_EQ(commutator_subgroup(Z4).order(), 1u);
  auto dS3 = commutator_subgroup(symmetric3());
  EXPECT_EQ(dS3.order(), 3u);
  EXPECT_TRUE(dS3.contains(cyc("(0 1 2)", 3)));
  auto Q = quaternion8();
  auto dQ = commutator_subgroup(Q);
  EXPECT_EQ(dQ.order(), 2u);
  EXPECT_TRUE(dQ.contains(quat_left(4)));
}

TEST(CommutatorSubgroup, MatchesBruteForceAndIsNormal) {
  std::vector<PermGroup> groups{
      symmetric3(), quaternion8(),
      PermGroup(4, {cyc("(0 1)", 4), cyc("(0 1 2 3)", 4)}),
      PermGroup(4, {cyc("(0 1 2)", 4), cyc("(0 1)(2 3)", 4)}),
      PermGroup(5, {cyc("(0 1 2 3 4)", 5), cyc("(1 4)(2 3)", 5)}),
  };
  for (const auto& G : groups) {
    auto D = commutator_subgroup(G);
    EXPECT_EQ(as_set(D), brute_derived(G));
    EXPECT_TRUE(is_normal(PermSubgroup::whole(G), D));
  }
}

TEST(Transversal, Examples) {
  auto G = symmetric3();
  auto whole = PermSubgroup::whole(G);
  auto T1 = left_transversal(G, whole);
  ASSERT_EQ(T1.size(), 1u);
  EXPECT_TRUE(T1.representatives[0].is_identity());
  EXPECT_EQ(left_transversal(G, PermSubgroup::trivial(G)).size(), 6u);
  auto T = left_transversal(G, PermSubgroup(G, {cyc("(0 1 2)", 3)}));
  EXPECT_EQ(T.size(), 2u);
  EXPECT_TRUE(T.representatives[0].is_identity());
}

TEST(Transversal, LagrangeAndCosetPartition) {
  auto G = PermGroup(4, {cyc("(0 1)", 4), cyc("(0 1 2 3)", 4)});
  const auto& t = G.elements();
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i; j < t.size(); j += 5) {
      PermSubgroup U(G, {t.elements[i], t.elements[j]});
      auto T = left_transversal(G, U);
      EXPECT_EQ(G.order(), U.order() * T.size());
      for (std::size_t e = 0; e < t.size(); ++e) {
        const auto& r = T.representatives[T.coset_of[e]];
        EXPECT_TRUE(U.contains(r.inverse() * t.elements[e]));
      }
    }
  }
}

TEST(Subgroup, ClosedUnderMultiplication) {
  auto G = PermGroup(4, {cyc("(0 1)", 4), cyc("(0 1 2 3)", 4)});
  const auto& t = G.elements();
  for (std::size_t i = 0; i < t.size(); i += 3) {
    PermSubgroup H(G, {t.elements[i], t.elements[(i * 7) % t.size()]});
    for (auto a : H.members())
      for (auto b : H.members()) EXPECT_TRUE(H.contains(t.elements[a] * t.elements[b]));
  }
}

TEST(IntermediateSubgroups, Examples) {
  auto G = symmetric3();
  auto whole = PermSubgroup::whole(G);
  auto only = intermediate_subgroups(whole, whole);
  ASSERT_EQ(only.size(), 1u);
  EXPECT_TRUE(only[0] == whole);

  PermSubgroup A3(G, {cyc("(0 1 2)", 3)});
  auto two = intermediate_subgroups(whole, A3);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_TRUE(two[0] == whole);
  EXPECT_TRUE(two[1] == A3);

  PermGroup Z4(4, {cyc("(0 1 2 3)", 4)});
  auto three = intermediate_subgroups(PermSubgroup::whole(Z4), PermSubgroup::trivial(Z4));
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[0].order(), 4u);
  EXPECT_EQ(three[1].order(), 2u);
  EXPECT_EQ(three[2].order(), 1u);
}

TEST(IntermediateSubgroups, InclusionFollowsDivisibility) {
  PermGroup Z12(12, {cyc("(0 1 2 3 4 5 6 7 8 9 10 11)", 12)});
  auto all = intermediate_subgroups(PermSubgroup::whole(Z12), PermSubgroup::trivial(Z12));
  auto divs = divisors(12);
  ASSERT_EQ(all.size(), divs.size());
  for (std::size_t a = 0; a < all.size(); ++a) {
    EXPECT_EQ(all[a].index(), divs[a]);
    for (std::size_t b = 0; b < all.size(); ++b)
      EXPECT_EQ(all[a].contains(all[b]), divs[b] % divs[a] == 0);
  }
}

TEST(IntermediateSubgroups, NonCyclicQuotientRejected) {
  PermGroup V4(4, {cyc("(0 1)(2 3)", 4), cyc("(0 2)(1 3)", 4)});
  EXPECT_THROW(intermediate_subgroups(PermSubgroup::whole(V4), PermSubgroup::trivial(V4)), PreconditionError);
  auto S3 = symmetric3();
  PermSubgroup notNormal(S3, {cyc("(0 1)", 3)});
  EXPECT_THROW(intermediate_subgroups(PermSubgroup::whole(S3), notNormal), PreconditionError);
}

TEST(CommutatorProduct, Examples) {
  auto S3 = symmetric3();
  auto r = verify_commutator_product(PermSubgroup::whole(S3), PermSubgroup(S3, {cyc("(0 1 2)", 3)}),
                                     cyc("(0 1)", 3));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.derived_order, 3u);
  EXPECT_EQ(r.product_size, 3u);

  auto Q = quaternion8();
  auto rq = verify_commutator_product(PermSubgroup::whole(Q), PermSubgroup(Q, {quat_left(1)}), quat_left(2));
  EXPECT_TRUE(rq.holds);
  EXPECT_EQ(rq.derived_order, 2u);

  PermGroup Z6(6, {cyc("(0 1 2 3 4 5)", 6)});
  auto rz = verify_commutator_product(PermSubgroup::whole(Z6), PermSubgroup(Z6, {cyc("(0 2 4)(1 3 5)", 6)}),
                                      cyc("(0 1 2 3 4 5)", 6));
  EXPECT_TRUE(rz.holds);
  EXPECT_EQ(rz.derived_order, 1u);
}

TEST(CommutatorProduct, PreconditionViolated) {
  auto S3 = symmetric3();
  PermSubgroup A3(S3, {cyc("(0 1 2)", 3)});
  EXPECT_THROW(verify_commutator_product(PermSubgroup::whole(S3), A3, cyc("(0 1 2)", 3)), PreconditionError);
}

TEST(CommutatorIdentities, HoldOnSampledTriples) {
  PermGroup S6(6, {cyc("(0 1)", 6), cyc("(0 1 2 3 4 5)", 6)});
  const auto& el = S6.elements().elements;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto& a = el[pick(rng)];
    const auto& b = el[pick(rng)];
    const auto& c = el[pick(rng)];
    EXPECT_EQ(commutator(a * b, c), conjugate(a, commutator(b, c)) * commutator(a, c));
    EXPECT_EQ(commutator(a, b * c), commutator(a, b) * conjugate(b, commutator(a, c)));
    EXPECT_EQ(commutator(a, b).inverse(), commutator(b, a));
  }
}

TEST(Abelianization, Examples) {
  EXPECT_EQ(PermAbelianization(PermSubgroup::whole(symmetric3())).group(), FgAbGroup::cyclic(2));
  EXPECT_EQ(PermAbelianization(PermSubgroup::whole(quaternion8())).group(), abelian_group_from_orders({2, 2}));
  PermGroup Z4(4, {cyc("(0 1 2 3)", 4)});
  EXPECT_EQ(PermAbelianization(PermSubgroup::whole(Z4)).group(), FgAbGroup::cyclic(4));
  EXPECT_TRUE(PermAbelianization(PermSubgroup::trivial(Z4)).group().is_trivial());
}

TEST(Abelianization, ProjectionIsHomomorphismWithDerivedKernel) {
  std::vector<PermGroup> groups{
      quaternion8(),
      PermGroup(4, {cyc("(0 1)", 4), cyc("(0 1 2 3)", 4)}),
      PermGroup(6, {cyc("(0 1 2)", 6), cyc("(3 4)", 6), cyc("(3 4 5)", 6)}),
      PermGroup(6, {cyc("(0 1 2 3 4 5)", 6), cyc("(0 1 2)", 6)}),
  };
  for (const auto& G : groups) {
    auto H = PermSubgroup::whole(G);
    PermAbelianization ab(H);
    const auto& A = ab.group();
    const auto& t = G.elements();
    EXPECT_EQ(A.order(), Integer(static_cast<unsigned long>(G.order() / ab.derived().order())));
    for (std::size_t x = 0; x < t.size(); ++x) {
      EXPECT_EQ(A.is_zero(ab.project_index(static_cast<std::uint32_t>(x))), ab.derived().contains_index(static_cast<std::uint32_t>(x)));
      for (std::size_t y = 0; y < t.size(); y += 3) {
        Vector sum = ab.project_index(static_cast<std::uint32_t>(x));
        const auto& py = ab.project_index(static_cast<std::uint32_t>(y));
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += py[i];
        EXPECT_EQ(A.reduce(sum), ab.project(t.elements[x] * t.elements[y]));
      }
    }
    // section followed by the generator images is the identity on A
    IntMatrix round = ab.projection() * ab.section();
    for (std::size_t i = 0; i < A.dim(); ++i) EXPECT_EQ(A.reduce(round.column(i)), A.generator(i));
  }
}

TEST(Abelianization, OfProperSubgroupUsesOwnGenerators) {
  auto Q = quaternion8();
  PermSubgroup I(Q, {quat_left(1)});
  PermAbelianization ab(I);
  EXPECT_EQ(ab.group(), FgAbGroup::cyclic(4));
  EXPECT_EQ(ab.project(quat_left(4)), Vector{2});
  EXPECT_THROW(ab.project(quat_left(2)), PreconditionError);
}
