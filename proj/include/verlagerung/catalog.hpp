#pragma once

#include <set>

#include "verlagerung/spec_io.hpp"

namespace vlg {

// Finite entries above this order only use their declared subgroups.
inline constexpr std::size_t kExhaustiveSearchLimit = 200;

using CatalogEntry = GroupSpec;

namespace detail {

inline std::string cycle_text(std::size_t n, std::size_t start, std::size_t step) {
  std::string s = "(";
  for (std::size_t k = 0; k < n; ++k) s += (k ? " " : "") + std::to_string(start + k * step);
  return s + ")";
}

inline CatalogEntry make_entry(std::string name, std::string text, std::string note) {
  auto e = parse_group_spec(text, std::move(name));
  e.note = std::move(note);
  return e;
}

inline CatalogEntry cyclic_entry(std::size_t n) {
  std::string text = "perm degree=" + std::to_string(n) + "\n" + cycle_text(n, 0, 1) + "\n";
  return make_entry("Z" + std::to_string(n), text, "cyclic group of order " + std::to_string(n));
}

// Symmetries of the regular n-gon, order 2n.
inline CatalogEntry dihedral_entry(std::size_t n) {
  std::string refl;
  for (std::size_t i = 1; i < n - i; ++i) refl += "(" + std::to_string(i) + " " + std::to_string(n - i) + ")";
  std::string text = "perm degree=" + std::to_string(n) + "\n" + cycle_text(n, 0, 1) + "\n" + refl + "\n" +
                     "subgroup rotations\n" + cycle_text(n, 0, 1) + "\n";
  return make_entry("D" + std::to_string(n), text, "dihedral group of order " + std::to_string(2 * n));
}

inline std::vector<CatalogEntry> named_finite_entries() {
  std::vector<CatalogEntry> out;
  // regular representation; points 0..7 are 1, i, j, k, -1, -i, -j, -k
  out.push_back(make_entry("Q8",
                           "perm degree=8\n"
                           "(0 1 4 5)(2 3 6 7)\n"
                           "(0 2 4 6)(1 7 5 3)\n"
                           "subgroup i\n(0 1 4 5)(2 3 6 7)\n"
                           "subgroup j\n(0 2 4 6)(1 7 5 3)\n"
                           "subgroup center\n(0 4)(1 5)(2 6)(3 7)\n",
                           "quaternion group, left regular representation"));
  // x^a y^b at point a + 8b, with x^8 = 1, y^2 = x^4, y x y^-1 = x^-1
  out.push_back(make_entry("Q16",
                           "perm degree=16\n"
                           "(0 1 2 3 4 5 6 7)(8 9 10 11 12 13 14 15)\n"
                           "(0 8 4 12)(1 15 5 11)(2 14 6 10)(3 13 7 9)\n"
                           "subgroup x\n(0 1 2 3 4 5 6 7)(8 9 10 11 12 13 14 15)\n",
                           "generalized quaternion group of order 16, left regular representation"));
  out.push_back(make_entry("S3", "perm degree=3\n(0 1)\n(0 1 2)\nsubgroup A3\n(0 1 2)\n", "symmetric group on 3 points"));
  out.push_back(make_entry("S4", "perm degree=4\n(0 1)\n(0 1 2 3)\nsubgroup A4\n(0 1 2)\n(0 1)(2 3)\n",
                           "symmetric group on 4 points"));
  out.push_back(make_entry("A4", "perm degree=4\n(0 1 2)\n(0 1)(2 3)\nsubgroup V4\n(0 1)(2 3)\n(0 2)(1 3)\n",
                           "alternating group on 4 points"));
  // (a, b, c) at point a + 3b + 9c with (a,b,c)(x,y,z) = (a+x, b+y, c+z+ay)
  out.push_back(make_entry("Heis27",
                           "perm degree=27\n"
                           "(0 1 2)(3 13 23)(4 14 21)(5 12 22)(6 25 17)(7 26 15)(8 24 16)(9 10 11)(18 19 20)\n"
                           "(0 3 6)(1 4 7)(2 5 8)(9 12 15)(10 13 16)(11 14 17)(18 21 24)(19 22 25)(20 23 26)\n",
                           "Heisenberg group mod 3, left regular representation"));
  // x^a y^b at point a + 8b, with x^8 = y^2 = 1, y x y^-1 = x^5
  out.push_back(make_entry("M16",
                           "perm degree=16\n"
                           "(0 1 2 3 4 5 6 7)(8 9 10 11 12 13 14 15)\n"
                           "(0 8)(1 13)(2 10)(3 15)(4 12)(5 9)(6 14)(7 11)\n",
                           "modular group of order 16, left regular representation"));
  out.push_back(make_entry("Z2xZ4", "perm degree=6\n(0 1)\n(2 3 4 5)\n", "direct product of Z/2 and Z/4"));
  return out;
}

inline bool is_prime_power_of(std::size_t n, std::size_t p) {
  if (n < 2) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

inline std::vector<CatalogEntry> finite_small() {
  std::vector<CatalogEntry> out;
  for (std::size_t n = 2; n <= 16; ++n) out.push_back(cyclic_entry(n));
  for (std::size_t n = 3; n <= 12; ++n) out.push_back(dihedral_entry(n));
  for (auto& e : named_finite_entries()) out.push_back(std::move(e));
  return out;
}

inline std::vector<CatalogEntry> finite_p_subset(std::size_t p) {
  std::vector<CatalogEntry> out;
  for (auto& e : finite_small())
    if (is_prime_power_of(e.perm.order(), p)) out.push_back(std::move(e));
  return out;
}

inline std::vector<CatalogEntry> fp_classic() {
  std::vector<CatalogEntry> out;
  out.push_back(make_entry("F2",
                           "fp\n< a, b | >\n"
                           "subgroup index2\na, b^2, b*a*b^-1\n"
                           "subgroup index3\na, b*a*b^-1, b^2*a*b^-2, b^3\n",
                           "free group of rank 2"));
  out.push_back(make_entry("F3",
                           "fp\n< a, b, c | >\n"
                           "subgroup index2\na^2, b, c, a*b*a^-1, a*c*a^-1\n"
                           "subgroup index3\na^3, b, c, a*b*a^-1, a*c*a^-1, a^2*b*a^-2, a^2*c*a^-2\n",
                           "free group of rank 3"));
  out.push_back(make_entry("Z2",
                           "fp\n< a, b | [a, b] >\n"
                           "subgroup index2\na, b^2\n"
                           "subgroup index3\na, b^3\n",
                           "free abelian group of rank 2"));
  out.push_back(make_entry("Klein",
                           "fp\n< a, b | b*a*b^-1*a >\n"
                           "subgroup index2\na, b^2\n"
                           "subgroup index2a\na^2, b\n",
                           "fundamental group of the Klein bottle"));
  out.push_back(make_entry("Surface2",
                           "fp\n< a, b, c, d | [a, b]*[c, d] >\n"
                           "subgroup index2\na^2, b, c, d, a*b*a^-1, a*c*a^-1, a*d*a^-1\n",
                           "fundamental group of the closed orientable surface of genus 2"));
  out.push_back(make_entry("Trefoil",
                           "fp\n< a, b | a^2 = b^3 >\n"
                           "subgroup index2\nb, a*b*a^-1, a^2\n"
                           "subgroup index3\na, b*a*b^-1, b^2*a*b^-2, b^3\n",
                           "trefoil knot group"));
  return out;
}

}  // namespace detail

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"finite-small", "finite-p2", "finite-p3", "fp-classic"};
  return names;
}

// Entries sorted by name.
inline std::vector<CatalogEntry> load_catalog(const std::string& name) {
  std::vector<CatalogEntry> out;
  if (name == "finite-small")
    out = detail::finite_small();
  else if (name == "finite-p2")
    out = detail::finite_p_subset(2);
  else if (name == "finite-p3")
    out = detail::finite_p_subset(3);
  else if (name == "fp-classic")
    out = detail::fp_classic();
  else
    throw PreconditionError("unknown catalog '" + name + "'");
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

// Every *.grp file in a directory, sorted by name.
inline std::vector<CatalogEntry> load_catalog_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw PreconditionError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.is_regular_file() && f.path().extension() == ".grp") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> out;
  for (const auto& f : files) {
    try {
      out.push_back(load_group_spec(f));
    } catch (const PreconditionError& e) {
      throw PreconditionError(f.filename().string() + ": " + e.what());
    }
  }
  return out;
}

// A name from catalog_names() or a directory of group files.
inline std::vector<CatalogEntry> resolve_catalog(const std::string& name_or_dir) {
  for (const auto& n : catalog_names())
    if (n == name_or_dir) return load_catalog(n);
  if (std::filesystem::is_directory(name_or_dir)) return load_catalog_directory(name_or_dir);
  throw PreconditionError("unknown catalog '" + name_or_dir + "'");
}

// ---- subgroup search for finite entries -------------------------------------

struct LabelledPair {
  std::string label;
  GroupPair pair;
};

namespace detail {

// All elements of a finite abelian group in invariant-factor coordinates.
inline std::vector<Vector> finite_elements(const FgAbGroup& A) {
  if (!A.is_finite()) throw PreconditionError("group is infinite");
  std::vector<Vector> out{A.zero()};
  for (std::size_t i = 0; i < A.torsion_rank(); ++i) {
    std::vector<Vector> next;
    for (const auto& v : out)
      for (Integer k = 0; k < A.torsion()[i]; ++k) {
        Vector w = v;
        w[i] = k;
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

// Preimage in G of a subgroup of G^ab (as a set of abelianized elements),
// with a small generating set found greedily.
inline std::vector<Permutation> preimage_generators(const PermGroup& G, const PermAbelianization& ab,
                                                    const std::set<Vector>& K) {
  const auto& table = G.elements();
  PermSubgroup H(G, commutator_subgroup(G).generators());
  std::vector<Permutation> gens = H.generators();
  for (std::uint32_t i = 0; i < table.size(); ++i) {
    if (!K.count(ab.project_index(i)) || H.contains_index(i)) continue;
    gens.push_back(table.elements[i]);
    H.adjoin(table.elements[i]);
  }
  // drop generators that the others already produce
  for (std::size_t k = gens.size(); k-- > 0;) {
    auto trial = gens;
    trial.erase(trial.begin() + static_cast<long>(k));
    if (PermSubgroup(G, trial).order() == H.order()) gens = std::move(trial);
  }
  return gens;
}

inline std::string vector_label(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

}  // namespace detail

// Normal subgroups N with G/N cyclic: kernels of the characters of G^ab,
// pulled back to G. Sorted by index, then by label.
inline std::vector<LabelledPair> cocyclic_pairs(const CatalogEntry& e) {
  if (e.backend != Backend::perm) throw PreconditionError("co-cyclic search needs a finite group");
  const auto& G = e.perm;
  if (G.order() > kExhaustiveSearchLimit) {
    std::vector<LabelledPair> out;
    for (const auto& s : e.subgroups) {
      auto P = e.pair(s);
      if (P.is_normal() && P.is_quotient_cyclic()) out.push_back({s.label, P});
    }
    return out;
  }
  PermAbelianization ab(PermSubgroup::whole(G));
  const FgAbGroup& A = ab.group();
  const auto elems = detail::finite_elements(A);
  const Integer e_exp = A.torsion_rank() ? A.torsion().back() : Integer(1);
  std::map<std::set<Vector>, Vector> kernels;  // kernel -> first character
  for (const auto& chi : detail::finite_elements(A)) {
    // chi(x) = sum chi_i x_i (e / d_i) mod e
    std::set<Vector> K;
    for (const auto& x : elems) {
      Integer v = 0;
      for (std::size_t i = 0; i < A.torsion_rank(); ++i) v += chi[i] * x[i] * (e_exp / A.torsion()[i]);
      if (v % e_exp == 0) K.insert(x);
    }
    kernels.emplace(std::move(K), chi);
  }
  std::vector<std::pair<std::size_t, LabelledPair>> found;
  for (const auto& [K, chi] : kernels) {
    auto gens = detail::preimage_generators(G, ab, K);
    auto P = GroupPair::from_perm(G, gens);
    if (!P.is_normal() || !P.is_quotient_cyclic()) throw InternalError("character kernel is not co-cyclic");
    found.push_back({P.index(), {"ker(" + detail::vector_label(chi) + ")", P}});
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second.label < b.second.label;
  });
  std::vector<LabelledPair> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

// Normal subgroups U with G/U abelian: preimages of all subgroups of G^ab.
inline std::vector<LabelledPair> abelian_quotient_pairs(const CatalogEntry& e) {
  if (e.backend != Backend::perm) throw PreconditionError("subgroup search needs a finite group");
  const auto& G = e.perm;
  if (G.order() > kExhaustiveSearchLimit) {
    std::vector<LabelledPair> out;
    for (const auto& s : e.subgroups) {
      auto P = e.pair(s);
      if (P.is_normal() && P.perm_subgroup()->contains(commutator_subgroup(G)))
        out.push_back({s.label, P});
    }
    return out;
  }
  PermAbelianization ab(PermSubgroup::whole(G));
  const FgAbGroup& A = ab.group();
  const auto elems = detail::finite_elements(A);
  // subgroup generated by S and g, for S a subgroup
  auto adjoin = [&](const std::set<Vector>& S, const Vector& g) {
    std::set<Vector> out;
    Vector m = A.zero();
    do {
      for (const auto& x : S) {
        Vector w = x;
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += m[i];
        out.insert(A.reduce(w));
      }
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += g[i];
      m = A.reduce(m);
    } while (!A.is_zero(m));
    return out;
  };
  std::set<std::set<Vector>> seen{{A.zero()}};
  std::vector<std::set<Vector>> order{{A.zero()}};
  for (std::size_t q = 0; q < order.size(); ++q)
    for (const auto& g : elems) {
      if (order[q].count(g)) continue;
      auto bigger = adjoin(order[q], g);
      if (seen.insert(bigger).second) order.push_back(bigger);
    }
  std::vector<std::pair<std::size_t, LabelledPair>> found;
  std::size_t k = 0;
  for (const auto& K : order) {
    auto P = GroupPair::from_perm(G, detail::preimage_generators(G, ab, K));
    if (!P.is_normal()) throw InternalError("preimage of an abelianization subgroup is not normal");
    found.push_back({P.index(), {"A" + std::to_string(k++), P}});
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<LabelledPair> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

// Declared subgroups of an entry as pairs.
inline std::vector<LabelledPair> declared_pairs(const CatalogEntry& e, std::size_t max_cosets = kDefaultMaxCosets) {
  std::vector<LabelledPair> out;
  for (const auto& s : e.subgroups) out.push_back({s.label, e.pair(s, max_cosets)});
  return out;
}

}  // namespace vlg
