#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "verlagerung/presentation.hpp"

namespace vlg {

inline constexpr std::size_t kDefaultMaxCosets = 100000;

// The enumeration hit its coset budget; the index may still be finite.
class CosetLimitExceeded : public Error {
 public:
  using Error::Error;
};

// Column of a letter: generator j acts in column 2j, its inverse in 2j+1.
inline std::size_t letter_column(int letter) {
  return 2 * (static_cast<std::size_t>(std::abs(letter)) - 1) + (letter < 0 ? 1 : 0);
}
inline int column_letter(std::size_t col) {
  const int g = static_cast<int>(col / 2) + 1;
  return col % 2 ? -g : g;
}

// Complete action of the generators on the cosets of a subgroup, with coset
// 0 the subgroup itself and cosets numbered in breadth-first order.
class CosetTable {
 public:
  CosetTable(std::size_t num_generators, std::vector<std::vector<std::uint32_t>> rows, std::vector<Word> subgroup)
      : num_generators_(num_generators), rows_(std::move(rows)), subgroup_(std::move(subgroup)) {}

  std::size_t size() const { return rows_.size(); }
  std::size_t num_generators() const { return num_generators_; }
  const std::vector<Word>& subgroup_words() const { return subgroup_; }

  std::uint32_t act(std::uint32_t coset, int letter) const { return rows_[coset][letter_column(letter)]; }
  std::uint32_t column(std::uint32_t coset, std::size_t col) const { return rows_[coset][col]; }

  std::uint32_t trace(std::uint32_t coset, const Word& w) const {
    for (int l : w.letters()) coset = act(coset, l);
    return coset;
  }

  // Checks completeness, inverse pairing, relators and subgroup words.
  bool validate(const FpGroup& G, std::string* why = nullptr) const {
    auto bad = [&](const std::string& s) {
      if (why) *why = s;
      return false;
    };
    if (G.num_generators() != num_generators_) return bad("generator count mismatch");
    for (std::uint32_t c = 0; c < size(); ++c) {
      if (rows_[c].size() != 2 * num_generators_) return bad("row width");
      for (std::size_t col = 0; col < rows_[c].size(); ++col) {
        const auto d = rows_[c][col];
        if (d >= size()) return bad("undefined entry");
        if (rows_[d][col ^ 1] != c) return bad("inverse columns disagree");
      }
      for (const auto& r : G.relators)
        if (trace(c, r) != c) return bad("relator does not close at coset " + std::to_string(c));
    }
    for (const auto& w : subgroup_)
      if (trace(0, w) != 0) return bad("subgroup word moves coset 0");
    return true;
  }

 private:
  std::size_t num_generators_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<Word> subgroup_;
};

namespace detail {

// Relator-based (HLT) enumeration with union-find coincidence processing.
class CosetEnumerator {
 public:
  CosetEnumerator(const FpGroup& G, std::size_t max_cosets)
      : G_(G), cols_(2 * G.num_generators()), max_live_(max_cosets), max_alloc_(8 * max_cosets + 64) {}

  CosetTable run(const std::vector<Word>& subgroup) {
    for (const auto& w : subgroup)
      if (w.max_generator() > G_.num_generators()) throw PreconditionError("subgroup word uses an unknown generator");
    new_coset();
    for (const auto& w : subgroup) scan_and_fill(0, w.letters());
    for (std::uint32_t c = 0; c < parent_.size(); ++c) {
      for (const auto& r : G_.relators) {
        if (!live(c)) break;
        scan_and_fill(c, r.letters());
      }
      for (std::size_t x = 0; x < cols_ && live(c); ++x)
        if (entry(c, x) == kNone) define(c, x);
    }
    return standardize(subgroup);
  }

 private:
  static constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

  std::uint32_t& entry(std::uint32_t c, std::size_t x) { return table_[static_cast<std::size_t>(c) * cols_ + x]; }
  bool live(std::uint32_t c) const { return parent_[c] == c; }

  std::uint32_t rep(std::uint32_t c) {
    std::uint32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::uint32_t n = parent_[c];
      parent_[c] = r;
      c = n;
    }
    return r;
  }

  std::uint32_t new_coset() {
    if (live_ >= max_live_ || parent_.size() >= max_alloc_)
      throw CosetLimitExceeded("coset enumeration exceeded " + std::to_string(max_live_) +
                               " cosets; index unknown");
    const auto c = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + cols_, kNone);
    ++live_;
    return c;
  }

  void define(std::uint32_t c, std::size_t x) {
    const auto d = new_coset();
    entry(c, x) = d;
    entry(d, x ^ 1) = c;
  }

  void scan_and_fill(std::uint32_t c, const std::vector<int>& w) {
    if (w.empty()) return;
    std::uint32_t f = c, b = c;
    std::size_t i = 0, j = w.size();  // unscanned letters are w[i, j)
    for (;;) {
      while (i < j && entry(f, letter_column(w[i])) != kNone) f = entry(f, letter_column(w[i++]));
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && entry(b, letter_column(w[j - 1]) ^ 1) != kNone) b = entry(b, letter_column(w[--j]) ^ 1);
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        const auto x = letter_column(w[i]);
        entry(f, x) = b;
        entry(b, x ^ 1) = f;
        return;
      }
      define(f, letter_column(w[i]));
    }
  }

  void merge(std::uint32_t a, std::uint32_t b, std::vector<std::uint32_t>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_;
    queue.push_back(b);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    std::vector<std::uint32_t> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const auto g = queue[q];
      for (std::size_t x = 0; x < cols_; ++x) {
        const auto d = entry(g, x);
        if (d == kNone) continue;
        if (entry(d, x ^ 1) == g) entry(d, x ^ 1) = kNone;
        const auto m = rep(g), n = rep(d);
        if (entry(m, x) != kNone)
          merge(n, entry(m, x), queue);
        else if (entry(n, x ^ 1) != kNone)
          merge(m, entry(n, x ^ 1), queue);
        else {
          entry(m, x) = n;
          entry(n, x ^ 1) = m;
        }
      }
    }
  }

  CosetTable standardize(const std::vector<Word>& subgroup) {
    std::vector<std::uint32_t> order{0}, label(parent_.size(), kNone);
    label[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t x = 0; x < cols_; ++x) {
        const auto d = rep(entry(order[k], x));
        if (label[d] == kNone) {
          label[d] = static_cast<std::uint32_t>(order.size());
          order.push_back(d);
        }
      }
    std::vector<std::vector<std::uint32_t>> rows(order.size(), std::vector<std::uint32_t>(cols_));
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t x = 0; x < cols_; ++x) rows[k][x] = label[rep(entry(order[k], x))];
    return CosetTable(G_.num_generators(), std::move(rows), subgroup);
  }

  const FpGroup& G_;
  std::size_t cols_;
  std::size_t max_live_;
  std::size_t max_alloc_;
  std::size_t live_ = 0;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> table_;
};

}  // namespace detail

// Enumerates the cosets of the subgroup generated by `subgroup` in G.
// Throws CosetLimitExceeded when more than max_cosets live cosets are needed.
inline CosetTable todd_coxeter(const FpGroup& G, const std::vector<Word>& subgroup,
                               std::size_t max_cosets = kDefaultMaxCosets) {
  return detail::CosetEnumerator(G, max_cosets).run(subgroup);
}

}  // namespace vlg
