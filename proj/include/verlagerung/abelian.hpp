#pragma once

#include <string>
#include <utility>
#include <vector>

#include "verlagerung/normal_form.hpp"

namespace vlg {

// Finitely generated abelian group Z/d1 + ... + Z/dk + Z^r in invariant-factor
// form: every di >= 2 and d1 | d2 | ... | dk. The representation is
// canonical, so isomorphic groups compare equal. Elements are vectors of
// length k + r whose torsion coordinates are reduced into [0, di).
class FgAbGroup {
 public:
  FgAbGroup() = default;

  FgAbGroup(Vector torsion, std::size_t free_rank) : torsion_(std::move(torsion)), free_rank_(free_rank) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2) throw PreconditionError("invariant factor below 2: " + torsion_[i].get_str());
      if (i && torsion_[i] % torsion_[i - 1] != 0) throw PreconditionError("invariant factors do not form a divisor chain");
    }
  }

  static FgAbGroup trivial() { return {}; }
  static FgAbGroup free(std::size_t rank) { return FgAbGroup({}, rank); }
  static FgAbGroup cyclic(const Integer& d);

  const Vector& torsion() const { return torsion_; }
  std::size_t free_rank() const { return free_rank_; }
  std::size_t torsion_rank() const { return torsion_.size(); }
  std::size_t dim() const { return torsion_.size() + free_rank_; }

  bool is_trivial() const { return dim() == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_torsion_free() const { return torsion_.empty(); }

  Integer order() const {
    if (!is_finite()) throw PreconditionError("order of an infinite group");
    Integer n = 1;
    for (const auto& d : torsion_) n *= d;
    return n;
  }

  // Product of the invariant factors (the order of the torsion subgroup).
  Integer torsion_order() const {
    Integer n = 1;
    for (const auto& d : torsion_) n *= d;
    return n;
  }

  Integer exponent() const { return torsion_.empty() ? Integer(1) : torsion_.back(); }

  Vector reduce(Vector v) const {
    if (v.size() != dim()) throw PreconditionError("element has wrong length for " + to_string());
    for (std::size_t i = 0; i < torsion_.size(); ++i) v[i] = mod_floor(v[i], torsion_[i]);
    return v;
  }

  bool is_zero(const Vector& v) const {
    const Vector r = reduce(v);
    for (const auto& x : r)
      if (x != 0) return false;
    return true;
  }

  Vector zero() const { return Vector(dim()); }

  Vector generator(std::size_t i) const {
    Vector v(dim());
    v[i] = 1;
    return v;
  }

  // dim x k matrix whose columns are the defining relations di * ei.
  IntMatrix relation_matrix() const {
    IntMatrix R(dim(), torsion_.size());
    for (std::size_t i = 0; i < torsion_.size(); ++i) R(i, i) = torsion_[i];
    return R;
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string out;
    for (const auto& d : torsion_) out += (out.empty() ? "" : " + ") + std::string("Z/") + d.get_str();
    if (free_rank_ == 1) out += (out.empty() ? "" : " + ") + std::string("Z");
    if (free_rank_ > 1) out += (out.empty() ? "" : " + ") + std::string("Z^") + std::to_string(free_rank_);
    return out;
  }

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

 private:
  Vector torsion_;
  std::size_t free_rank_ = 0;
};

// Homomorphism between finitely generated abelian groups. Column j of the
// matrix is the image of the j-th canonical generator of the domain, reduced
// in the codomain.
class AbHom {
 public:
  AbHom() = default;

  AbHom(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.dim() || matrix_.cols() != domain_.dim())
      throw PreconditionError("homomorphism matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                              std::to_string(matrix_.cols()) + ", expected " + std::to_string(codomain_.dim()) +
                              "x" + std::to_string(domain_.dim()));
    for (std::size_t j = 0; j < matrix_.cols(); ++j) matrix_.set_column(j, codomain_.reduce(matrix_.column(j)));
    for (std::size_t j = 0; j < domain_.torsion_rank(); ++j) {
      Vector v = matrix_.column(j);
      for (auto& x : v) x *= domain_.torsion()[j];
      if (!codomain_.is_zero(v))
        throw PreconditionError("homomorphism is not well defined on torsion generator " + std::to_string(j));
    }
  }

  static AbHom identity(const FgAbGroup& A) { return {A, A, IntMatrix::identity(A.dim())}; }
  static AbHom zero(const FgAbGroup& A, const FgAbGroup& B) { return {A, B, IntMatrix(B.dim(), A.dim())}; }
  static AbHom scalar(const FgAbGroup& A, const Integer& k) { return {A, A, k * IntMatrix::identity(A.dim())}; }

  const FgAbGroup& domain() const { return domain_; }
  const FgAbGroup& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  Vector apply(const Vector& v) const { return codomain_.reduce(matrix_ * v); }

  bool is_zero() const { return matrix_.is_zero(); }

  // g * f is g after f.
  friend AbHom operator*(const AbHom& g, const AbHom& f) {
    if (!(g.domain_ == f.codomain_)) throw PreconditionError("composition of incompatible homomorphisms");
    return {f.domain_, g.codomain_, g.matrix_ * f.matrix_};
  }

  friend AbHom operator+(const AbHom& a, const AbHom& b) {
    check_parallel(a, b);
    return {a.domain_, a.codomain_, a.matrix_ + b.matrix_};
  }

  friend AbHom operator-(const AbHom& a, const AbHom& b) {
    check_parallel(a, b);
    return {a.domain_, a.codomain_, a.matrix_ - b.matrix_};
  }

  friend AbHom operator*(const Integer& k, const AbHom& a) { return {a.domain_, a.codomain_, k * a.matrix_}; }

  friend bool operator==(const AbHom& a, const AbHom& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.matrix_ == b.matrix_;
  }

 private:
  static void check_parallel(const AbHom& a, const AbHom& b) {
    if (!(a.domain_ == b.domain_) || !(a.codomain_ == b.codomain_))
      throw PreconditionError("homomorphisms have different domain or codomain");
  }

  FgAbGroup domain_;
  FgAbGroup codomain_;
  IntMatrix matrix_;
};

// Endomorphism power f^k (k >= 0).
inline AbHom power(const AbHom& f, std::size_t k) {
  AbHom out = AbHom::identity(f.domain());
  for (std::size_t i = 0; i < k; ++i) out = f * out;
  return out;
}

// Quotient of some group Q by a subgroup. `projection` is surjective onto
// `group`; column i of `section` is an element of the source mapping to the
// i-th canonical generator.
struct QuotientMap {
  FgAbGroup group;
  AbHom projection;
  IntMatrix section;
};

struct SubgroupEmbedding {
  FgAbGroup group;
  AbHom inclusion;
};

// Z^m / (column span of A) in canonical form, with the projection from the
// ambient free group Z^m.
inline QuotientMap cokernel_structure(const IntMatrix& A) {
  const std::size_t m = A.rows();
  auto snf = smith_normal_form(A);
  std::vector<std::size_t> kept;
  Vector torsion;
  std::size_t free_rank = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Integer d = i < snf.rank ? snf.S(i, i) : Integer(0);
    if (d == 1) continue;
    kept.push_back(i);
    if (d == 0)
      ++free_rank;
    else
      torsion.push_back(d);
  }
  FgAbGroup group(std::move(torsion), free_rank);
  IntMatrix proj = snf.U.select_rows(kept);
  IntMatrix section = snf.U_inv.select_columns(kept);
  return {group, AbHom(FgAbGroup::free(m), group, proj), section};
}

inline FgAbGroup FgAbGroup::cyclic(const Integer& d) {
  if (d == 0) return free(1);
  return cokernel_structure(IntMatrix::diagonal({abs(d)})).group;
}

// Canonical form of Z/a1 + Z/a2 + ... (0 entries mean Z).
inline FgAbGroup abelian_group_from_orders(const Vector& orders) {
  return cokernel_structure(IntMatrix::diagonal(orders)).group;
}

namespace detail {

// Generators of the lattice {x in Z^a : F x lies in the relation lattice of C}.
inline IntMatrix preimage_lattice(const IntMatrix& F, const FgAbGroup& C) {
  IntMatrix M = IntMatrix::hconcat(F, C.relation_matrix());
  return integer_kernel(M).row_range(0, F.cols());
}

}  // namespace detail

// Subgroup of C generated by the columns of `gens`.
inline SubgroupEmbedding subgroup_generated(const FgAbGroup& C, const IntMatrix& gens) {
  if (gens.rows() != C.dim()) throw PreconditionError("generator vectors have wrong length");
  auto q = cokernel_structure(detail::preimage_lattice(gens, C));
  return {q.group, AbHom(q.group, C, gens * q.section)};
}

inline SubgroupEmbedding hom_image(const AbHom& f) { return subgroup_generated(f.codomain(), f.matrix()); }

inline SubgroupEmbedding hom_kernel(const AbHom& f) {
  const FgAbGroup& D = f.domain();
  IntMatrix basis = hermite_normal_form(detail::preimage_lattice(f.matrix(), f.codomain()));
  // Express the domain relations in the kernel-lattice basis.
  IntMatrix R = D.relation_matrix();
  IntMatrix X(basis.cols(), R.cols());
  for (std::size_t j = 0; j < R.cols(); ++j) {
    auto x = solve_echelon(basis, R.column(j));
    if (!x) throw InternalError("domain relation outside kernel lattice");
    X.set_column(j, *x);
  }
  auto q = cokernel_structure(X);
  return {q.group, AbHom(q.group, D, basis * q.section)};
}

inline QuotientMap hom_cokernel(const AbHom& f) {
  const FgAbGroup& C = f.codomain();
  auto q = cokernel_structure(IntMatrix::hconcat(f.matrix(), C.relation_matrix()));
  return {q.group, AbHom(C, q.group, q.projection.matrix()), q.section};
}

// Quotient of A by the subgroup embedded by `sub`.
inline QuotientMap quotient(const SubgroupEmbedding& sub) { return hom_cokernel(sub.inclusion); }

inline bool is_injective(const AbHom& f) { return hom_kernel(f).group.is_trivial(); }
inline bool is_surjective(const AbHom& f) { return hom_cokernel(f).group.is_trivial(); }
inline bool is_isomorphism(const AbHom& f) { return is_injective(f) && is_surjective(f); }

// Lattice in the ambient free cover Z^dim that the subgroup lifts to.
inline IntMatrix lifted_lattice(const FgAbGroup& C, const IntMatrix& gens) {
  return hermite_normal_form(IntMatrix::hconcat(gens, C.relation_matrix()));
}

// True iff the images of the two inclusions coincide as subsets of the
// common codomain.
inline bool subgroup_equal(const AbHom& a, const AbHom& b) {
  if (!(a.codomain() == b.codomain())) throw PreconditionError("subgroup_equal: codomains differ");
  return lifted_lattice(a.codomain(), a.matrix()) == lifted_lattice(b.codomain(), b.matrix());
}

// True iff image(small) is contained in image(big).
inline bool subgroup_contains(const AbHom& big, const AbHom& small) {
  if (!(big.codomain() == small.codomain())) throw PreconditionError("subgroup_contains: codomains differ");
  IntMatrix L = lifted_lattice(big.codomain(), big.matrix());
  for (std::size_t j = 0; j < small.matrix().cols(); ++j)
    if (!solve_echelon(L, small.matrix().column(j))) return false;
  return true;
}

// Preimage under an injective `incl: B -> C` of an element of C, if any.
inline std::optional<Vector> preimage(const AbHom& incl, const Vector& v) {
  const FgAbGroup& C = incl.codomain();
  IntMatrix M = IntMatrix::hconcat(incl.matrix(), C.relation_matrix());
  auto x = solve_integer(M, C.reduce(v));
  if (!x) return std::nullopt;
  Vector w(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(incl.domain().dim()));
  return incl.domain().reduce(w);
}

// The unique g with incl * g = f, for f whose image lies in image(incl).
inline AbHom factor_through(const AbHom& f, const AbHom& incl) {
  if (!(f.codomain() == incl.codomain())) throw PreconditionError("factor_through: codomains differ");
  IntMatrix G(incl.domain().dim(), f.domain().dim());
  for (std::size_t j = 0; j < f.domain().dim(); ++j) {
    auto w = preimage(incl, f.matrix().column(j));
    if (!w) throw InternalError("factor_through: image not contained in the subgroup");
    G.set_column(j, *w);
  }
  return {f.domain(), incl.domain(), G};
}

// The map Q1 -> Q2 induced on quotients by f: A1 -> A2, given
// q1: A1 -> Q1 (with section) and q2: A2 -> Q2.
// f must carry the subgroup killed by q1 into the one killed by q2.
inline AbHom induced_on_quotients(const QuotientMap& q1, const AbHom& f, const QuotientMap& q2) {
  return {q1.group, q2.group, q2.projection.matrix() * f.matrix() * q1.section};
}

struct DirectSum {
  FgAbGroup group;
  AbHom inject_first, inject_second;
  AbHom project_first, project_second;
};

inline DirectSum direct_sum(const FgAbGroup& A, const FgAbGroup& B) {
  auto q = cokernel_structure(IntMatrix::block_diagonal(A.relation_matrix(), B.relation_matrix()));
  const IntMatrix& P = q.projection.matrix();
  const std::size_t a = A.dim(), b = B.dim();
  return {q.group,
          AbHom(A, q.group, P.columns(0, a)),
          AbHom(B, q.group, P.columns(a, a + b)),
          AbHom(q.group, A, q.section.row_range(0, a)),
          AbHom(q.group, B, q.section.row_range(a, a + b))};
}

// Torsion subgroup of A, i.e. the first torsion_rank() coordinates.
inline SubgroupEmbedding torsion_subgroup(const FgAbGroup& A) {
  FgAbGroup T(A.torsion(), 0);
  IntMatrix M(A.dim(), T.dim());
  for (std::size_t i = 0; i < T.dim(); ++i) M(i, i) = 1;
  return {T, AbHom(T, A, M)};
}

inline Integer finite_order(const FgAbGroup& A, const char* what) {
  if (!A.is_finite()) throw InternalError(std::string(what) + " is unexpectedly infinite: " + A.to_string());
  return A.order();
}

}  // namespace vlg
