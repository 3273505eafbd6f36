#include <gtest/gtest.h>

#include <random>
#include <set>

#include "verlagerung/mackey.hpp"

using namespace vlg;

namespace {

std::vector<Vector> elements_of(const FgAbGroup& A) {
  std::vector<Vector> out{A.zero()};
  for (std::size_t i = 0; i < A.torsion_rank(); ++i) {
    std::vector<Vector> next;
    for (const auto& v : out)
      for (Integer k = 0; k < A.torsion()[i]; ++k) {
        Vector w = v;
        w[i] = k;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

struct BruteSection {
  std::size_t c0 = 0, c1 = 0, k0 = 0, k1 = 0;
};

// Section cohomology orders of a finite datum by listing elements.
BruteSection brute_section(const SectionMackeyDatum& X) {
  const auto& M = X.X1.module();
  const auto& G = X.XG;
  std::set<Vector> im_t, ker_t, aug, inv, im_i;
  std::size_t ker_i = 0;
  for (const auto& x : elements_of(M)) {
    Vector tx = X.t.apply(x);
    im_t.insert(tx);
    if (G.is_zero(tx)) ker_t.insert(x);
    Vector sx = X.X1.sigma().apply(x);
    Vector d(x.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = sx[k] - x[k];
    aug.insert(M.reduce(d));
    if (sx == x) inv.insert(x);
  }
  for (const auto& y : elements_of(G)) {
    Vector iy = X.i.apply(y);
    im_i.insert(iy);
    if (M.is_zero(iy)) ++ker_i;
  }
  std::size_t g_order = elements_of(G).size();
  return {g_order / im_t.size(), ker_t.size() / aug.size(), ker_i, inv.size() / im_i.size()};
}

std::size_t to_size(const Integer& z) { return z.get_ui(); }

Permutation cyc(std::string_view s, std::size_t d) { return Permutation::from_cycles(s, d); }

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

std::vector<GroupPair> finite_pairs() {
  PermGroup S3(3, {cyc("(0 1)", 3), cyc("(0 1 2)", 3)});
  PermGroup Q8(8, {quat_left(1), quat_left(2)});
  PermGroup D4(4, {cyc("(0 1 2 3)", 4), cyc("(0 2)", 4)});
  PermGroup S4(4, {cyc("(0 1)", 4), cyc("(0 1 2 3)", 4)});
  PermGroup A4(4, {cyc("(0 1 2)", 4), cyc("(0 1)(2 3)", 4)});
  PermGroup Z12(12, {cyc("(0 1 2 3 4 5 6 7 8 9 10 11)", 12)});
  return {GroupPair::from_perm(S3, {cyc("(0 1 2)", 3)}),
          GroupPair::from_perm(Q8, {quat_left(1)}),
          GroupPair::from_perm(D4, {cyc("(0 1 2 3)", 4)}),
          GroupPair::from_perm(S4, {cyc("(0 1 2)", 4), cyc("(0 1)(2 3)", 4)}),
          GroupPair::from_perm(A4, {cyc("(0 1)(2 3)", 4), cyc("(0 2)(1 3)", 4)}),
          GroupPair::from_perm(Z12, {power(Z12.generators()[0], 4)}),
          GroupPair::from_perm(Z12, {})};
}

// A finite module (Z/m)^k with a random automorphism of order dividing n,
// taken from a conjugated permutation lattice reduced mod m.
CyclicModule random_finite_module(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> d(0, 1);
  std::uniform_int_distribution<long> mod(2, 4);
  for (;;) {
    std::size_t r = d(rng), t = d(rng), s = n >= 2 ? d(rng) : 0;
    std::size_t rank = r + t * n + s * (n - 1);
    if (rank == 0 || rank > 4) continue;
    IntMatrix S(0, 0);
    for (std::size_t k = 0; k < r; ++k) S = IntMatrix::block_diagonal(S, IntMatrix::identity(1));
    for (std::size_t k = 0; k < t; ++k) S = IntMatrix::block_diagonal(S, regular_module(n).sigma().matrix());
    for (std::size_t k = 0; k < s; ++k) S = IntMatrix::block_diagonal(S, augmentation_module(n).sigma().matrix());
    auto L = conjugate_lattice(CyclicModule(S, n), random_unimodular(rank, rng));
    FgAbGroup M(Vector(rank, Integer(mod(rng))), 0);
    return CyclicModule(M, AbHom(M, M, L.sigma().matrix()), n);
  }
}

}  // namespace

TEST(Datum, ValidationNamesTheBrokenAxiom) {
  auto X = trivial_datum(2);
  EXPECT_TRUE(validate_datum(X).valid());
  auto bad = X;
  bad.t = AbHom::scalar(X.XG, 4);
  auto v = validate_datum(bad);
  EXPECT_FALSE(v.valid());
  EXPECT_FALSE(v.transfer_restriction);
  EXPECT_FALSE(v.restriction_transfer);
  EXPECT_TRUE(v.restriction_invariant);
  EXPECT_THROW(section_cohomology(bad), PreconditionError);

  auto wrong_shape = X;
  wrong_shape.i = AbHom::identity(FgAbGroup::free(2));
  EXPECT_FALSE(validate_datum(wrong_shape).shapes);
}

TEST(Datum, DoubledTransferOfAbelianizationDatumIsRejected) {
  auto P = finite_pairs()[5];  // Z/12 over Z/3: the inclusion is not killed by 2
  auto X = ab_datum(P);
  X.t = X.t + X.t;
  auto v = validate_datum(X);
  EXPECT_FALSE(v.valid());
  EXPECT_FALSE(v.transfer_restriction);
}

TEST(Datum, TrivialDatum) {
  for (std::size_t n : {1u, 2u, 3u, 6u}) {
    auto S = section_cohomology(trivial_datum(n));
    EXPECT_EQ(S.c0.order(), Integer(static_cast<unsigned long>(n)));
    EXPECT_TRUE(S.c1.is_trivial());
    EXPECT_TRUE(S.k0.is_trivial());
    EXPECT_TRUE(S.k1.is_trivial());
    EXPECT_EQ(euler_char(S), rational(1, Integer(static_cast<unsigned long>(n))));
  }
}

TEST(Datum, AbelianizationDataAgreeWithBruteForce) {
  for (const auto& P : finite_pairs()) {
    auto X = ab_datum(P);
    auto S = section_cohomology(X);
    auto b = brute_section(X);
    EXPECT_EQ(to_size(S.c0.order()), b.c0);
    EXPECT_EQ(to_size(S.c1.order()), b.c1);
    EXPECT_EQ(to_size(S.k0.order()), b.k0);
    EXPECT_EQ(to_size(S.k1.order()), b.k1);
  }
}

TEST(Datum, QuaternionOverCyclicFour) {
  auto S = section_cohomology(ab_datum(finite_pairs()[1]));
  EXPECT_EQ(S.c0.order(), 2);
  EXPECT_EQ(S.c1.order(), 1);
  EXPECT_EQ(S.k0.order(), 2);
  EXPECT_EQ(S.k1.order(), 1);
}

TEST(Datum, GeneratorChoiceDoesNotMatterForOrders) {
  for (const auto& P : finite_pairs()) {
    auto s = *P.quotient_generator();
    auto base = section_cohomology(ab_datum(P, s));
    const auto n = static_cast<long>(P.index());
    for (long k = 1; k < n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      auto S = section_cohomology(ab_datum(P, P.power(s, k)));
      EXPECT_EQ(S.c0, base.c0);
      EXPECT_EQ(S.c1, base.c1);
      EXPECT_EQ(S.k0, base.k0);
      EXPECT_EQ(S.k1, base.k1);
    }
  }
}

TEST(SixTerm, ExactOnAbelianizationData) {
  for (const auto& P : finite_pairs()) {
    auto r = six_term_check(ab_datum(P));
    EXPECT_TRUE(r.exact());
  }
}

TEST(SixTerm, ExactOnRandomFiniteData) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = std::vector<std::size_t>{2, 3, 4}[trial % 3];
    auto M = random_finite_module(rng, n);
    for (const auto& X : {fixed_point_datum(M), coinvariant_datum(M)}) {
      ASSERT_TRUE(validate_datum(X).valid());
      auto r = six_term_check(X);
      EXPECT_TRUE(r.exact()) << "trial " << trial;
      auto S = section_cohomology(X);
      auto b = brute_section(X);
      EXPECT_EQ(to_size(S.c0.order()), b.c0);
      EXPECT_EQ(to_size(S.c1.order()), b.c1);
      EXPECT_EQ(to_size(S.k0.order()), b.k0);
      EXPECT_EQ(to_size(S.k1.order()), b.k1);
      EXPECT_EQ(euler_char(S) * X.X1.herbrand(), 1);
    }
  }
}

TEST(SixTerm, DetectsNonExactness) {
  // A map chain that is exact only for valid data: feed a datum whose
  // transfer is zero, which breaks t i = n id, and is rejected outright.
  auto X = trivial_datum(3);
  X.t = AbHom::zero(X.X1.module(), X.XG);
  EXPECT_THROW(six_term_check(X), PreconditionError);
}

TEST(Euler, DirectSumsMultiply) {
  auto pairs = finite_pairs();
  auto A = ab_datum(pairs[0]);
  auto B = trivial_datum(2);
  auto C = direct_sum(A, B);
  ASSERT_TRUE(validate_datum(C).valid());
  EXPECT_EQ(euler_char(C), euler_char(A) * euler_char(B));
  EXPECT_TRUE(six_term_check(C).exact());
}

TEST(Euler, LatticeDataAndHerbrand) {
  for (std::size_t p : {2u, 3u, 5u}) {
    for (const auto& L : {trivial_module(2, p), regular_module(p), augmentation_module(p),
                          lattice_with_multiplicities(1, 1, 1, p)}) {
      for (const auto& X : {fixed_point_datum(L), coinvariant_datum(L)}) {
        EXPECT_TRUE(six_term_check(X).exact());
        EXPECT_EQ(euler_char(X) * L.herbrand(), 1);
      }
    }
  }
}

TEST(Euler, MultiplicativeOnMultipleSequences) {
  std::mt19937_64 rng(5);
  std::vector<SectionMackeyDatum> data;
  for (const auto& P : finite_pairs()) data.push_back(ab_datum(P));
  data.push_back(trivial_datum(3));
  data.push_back(fixed_point_datum(regular_module(3)));
  data.push_back(coinvariant_datum(augmentation_module(2)));
  for (const auto& X : data) {
    for (long m : {2L, 3L}) {
      auto seq = multiple_sequence(X, Integer(m));
      auto r = verify_euler_mult(seq.sub, seq.inclusion, X, seq.projection, seq.quotient);
      EXPECT_TRUE(r.morphisms);
      EXPECT_TRUE(r.exact);
      EXPECT_TRUE(r.holds());
    }
  }
}

TEST(Euler, BrokenSequenceIsNotExact) {
  auto X = trivial_datum(2);
  auto seq = multiple_sequence(X, Integer(2));
  auto wrong = seq.projection;
  wrong.at_one = AbHom::zero(X.X1.module(), seq.quotient.X1.module());
  wrong.at_G = AbHom::zero(X.XG, seq.quotient.XG);
  auto r = verify_euler_mult(seq.sub, seq.inclusion, X, wrong, seq.quotient);
  EXPECT_FALSE(r.holds());
}
