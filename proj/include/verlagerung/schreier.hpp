#pragma once

#include "verlagerung/coset_enum.hpp"

namespace vlg {

// A word of G that does not lie in the subgroup.
class MembershipError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Presentation of a finite-index subgroup U on Schreier generators
// s(c, x) = w_c x w_{c.x}^-1, where w_c are the words of a breadth-first
// Schreier transversal. Generators along the spanning tree are trivial and
// dropped, leaving 1 + |G:U| (n - 1) generators for n generators of G.
class ReidemeisterSchreier {
 public:
  ReidemeisterSchreier(const FpGroup& G, CosetTable table) : table_(std::move(table)) {
    const std::size_t n = table_.size();
    const std::size_t m = G.num_generators();
    transversal_.assign(n, Word());
    std::vector<char> seen(n, 0);
    // tree_edge[c][col] marks the table entries used by the spanning tree
    std::vector<std::vector<char>> tree_edge(n, std::vector<char>(2 * m, 0));
    std::vector<std::uint32_t> order{0};
    seen[0] = 1;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto c = order[k];
      for (std::size_t col = 0; col < 2 * m; ++col) {
        const auto d = table_.column(c, col);
        if (seen[d]) continue;
        seen[d] = 1;
        transversal_[d] = transversal_[c] * Word({column_letter(col)});
        tree_edge[c][col] = 1;
        tree_edge[d][col ^ 1] = 1;
        order.push_back(d);
      }
    }
    generator_index_.assign(n, std::vector<long>(m, -1));
    for (std::uint32_t c = 0; c < n; ++c) {
      for (std::size_t j = 0; j < m; ++j) {
        if (tree_edge[c][2 * j]) continue;
        const auto d = table_.column(c, 2 * j);
        generator_index_[c][j] = static_cast<long>(generator_words_.size());
        generator_words_.push_back(transversal_[c] * Word::generator(j) * transversal_[d].inverse());
        const std::string base = j < G.generator_names.size() ? G.generator_names[j] : "x" + std::to_string(j);
        subgroup_.generator_names.push_back(base + "_" + std::to_string(c));
      }
    }
    for (std::uint32_t c = 0; c < n; ++c)
      for (const auto& r : G.relators) subgroup_.relators.push_back(rewrite_from(c, r, c));
  }

  const CosetTable& table() const { return table_; }
  const FpGroup& presentation() const { return subgroup_; }
  // Each Schreier generator as a word in G.
  const std::vector<Word>& generator_words() const { return generator_words_; }
  // Transversal word for each coset; prefix closed, coset 0 empty.
  const std::vector<Word>& transversal() const { return transversal_; }
  // Index of s(c, generator j) among presentation generators, or -1 on the tree.
  long generator_index(std::uint32_t coset, std::size_t j) const { return generator_index_[coset][j]; }

  // Rewrites w, an element of U, as a word in the Schreier generators.
  Word rewrite(const Word& w) const { return rewrite_from(0, w, 0); }

 private:
  Word rewrite_from(std::uint32_t c, const Word& w, std::uint32_t must_end) const {
    std::vector<int> out;
    for (int l : w.letters()) {
      const auto j = static_cast<std::size_t>(std::abs(l)) - 1;
      if (l > 0) {
        if (auto s = generator_index_[c][j]; s >= 0) out.push_back(static_cast<int>(s) + 1);
        c = table_.act(c, l);
      } else {
        c = table_.act(c, l);
        if (auto s = generator_index_[c][j]; s >= 0) out.push_back(-(static_cast<int>(s) + 1));
      }
    }
    if (c != must_end) throw MembershipError("word is not in the subgroup");
    return Word(std::move(out));
  }

  CosetTable table_;
  FpGroup subgroup_;
  std::vector<Word> generator_words_;
  std::vector<Word> transversal_;
  std::vector<std::vector<long>> generator_index_;
};

inline ReidemeisterSchreier reidemeister_schreier(const FpGroup& G, const std::vector<Word>& subgroup,
                                                  std::size_t max_cosets = kDefaultMaxCosets) {
  return ReidemeisterSchreier(G, todd_coxeter(G, subgroup, max_cosets));
}

}  // namespace vlg
