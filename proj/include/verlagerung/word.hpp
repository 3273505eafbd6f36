#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "verlagerung/integer.hpp"

namespace vlg {

// Group word over numbered generators. Letter +k stands for generator k-1,
// letter -k for its inverse; 0 never occurs.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters) : letters_(letters) { reduce(); }
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) { reduce(); }

  static Word generator(std::size_t i) { return Word({static_cast<int>(i) + 1}); }

  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) l = -l;
    return Word(std::move(out));
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<int> out = a.letters_;
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(out));
  }

  Word pow(long k) const {
    Word base = k < 0 ? inverse() : *this;
    Word out;
    for (long i = 0; i < std::labs(k); ++i) out = out * base;
    return out;
  }

  // Largest generator number used, i.e. the minimal generator count.
  std::size_t max_generator() const {
    std::size_t m = 0;
    for (int l : letters_) m = std::max<std::size_t>(m, static_cast<std::size_t>(std::abs(l)));
    return m;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  void reduce() {
    std::vector<int> out;
    out.reserve(letters_.size());
    for (int l : letters_) {
      if (l == 0) throw PreconditionError("word letter 0 is not a generator");
      if (!out.empty() && out.back() == -l)
        out.pop_back();
      else
        out.push_back(l);
    }
    letters_ = std::move(out);
  }

  std::vector<int> letters_;
};

// Exponent sum of each generator.
inline Vector exponent_sums(const Word& w, std::size_t num_generators) {
  Vector v(num_generators);
  for (int l : w.letters()) {
    const auto g = static_cast<std::size_t>(std::abs(l)) - 1;
    if (g >= num_generators) throw PreconditionError("word uses an unknown generator");
    v[g] += l > 0 ? 1 : -1;
  }
  return v;
}

inline std::string to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  const auto& L = w.letters();
  for (std::size_t i = 0; i < L.size();) {
    std::size_t j = i;
    while (j < L.size() && L[j] == L[i]) ++j;
    const auto g = static_cast<std::size_t>(std::abs(L[i])) - 1;
    const std::string name = g < names.size() ? names[g] : "x" + std::to_string(g);
    long e = static_cast<long>(j - i) * (L[i] > 0 ? 1 : -1);
    if (!out.empty()) out += "*";
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

}  // namespace vlg
