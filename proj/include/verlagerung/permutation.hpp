#pragma once

#include <cctype>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "verlagerung/word.hpp"

namespace vlg {

// Bijection of {0, ..., degree-1}. Products compose right to left:
// (p * q)(x) = p(q(x)).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), 0u);
  }

  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (auto x : images_) {
      if (x >= images_.size() || seen[x]) throw PreconditionError("image list is not a bijection");
      seen[x] = 1;
    }
  }

  // Disjoint-cycle notation such as "(0 1)(2 3 4)"; "()" is the identity.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  bool is_identity() const {
    for (std::uint32_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<std::uint32_t> inv(images_.size());
    for (std::uint32_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
    Permutation p;
    p.images_ = std::move(inv);
    return p;
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw PreconditionError("permutation degrees differ");
    Permutation r;
    r.images_.resize(p.degree());
    for (std::size_t i = 0; i < q.images_.size(); ++i) r.images_[i] = p.images_[q.images_[i]];
    return r;
  }

  std::size_t order() const {
    std::size_t ord = 1;
    std::vector<char> seen(images_.size(), 0);
    for (std::uint32_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::uint32_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  std::string to_cycles() const {
    std::string out;
    std::vector<char> seen(images_.size(), 0);
    for (std::uint32_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      out += "(";
      for (std::uint32_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        if (j != i) out += " ";
        out += std::to_string(j);
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

inline Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  std::vector<char> moved(degree, 0);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw PreconditionError("cycle notation at position " + std::to_string(pos) + ": " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected a point");
      std::uint64_t x = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        x = x * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (x >= degree) fail("point exceeds degree " + std::to_string(degree));
        ++pos;
      }
      cycle.push_back(static_cast<std::uint32_t>(x));
    }
    for (auto x : cycle) {
      if (moved[x]) fail("cycles are not disjoint");
      moved[x] = 1;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation(std::move(images));
}

// [x, y] = x y x^-1 y^-1
inline Permutation commutator(const Permutation& x, const Permutation& y) {
  return x * y * x.inverse() * y.inverse();
}

// ^a b = a b a^-1
inline Permutation conjugate(const Permutation& a, const Permutation& b) { return a * b * a.inverse(); }

inline Permutation power(const Permutation& p, long k) {
  Permutation base = k < 0 ? p.inverse() : p;
  Permutation out(p.degree());
  for (long i = 0; i < std::labs(k); ++i) out = out * base;
  return out;
}

inline Permutation evaluate(const Word& w, const std::vector<Permutation>& gens, std::size_t degree) {
  Permutation out(degree);
  for (int l : w.letters()) {
    const auto g = static_cast<std::size_t>(std::abs(l)) - 1;
    out = out * (l > 0 ? gens.at(g) : gens.at(g).inverse());
  }
  return out;
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = p.degree();
    for (auto x : p.images()) h ^= std::hash<std::uint32_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace vlg
