#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlg {

using Integer = mpz_class;
using Rational = mpq_class;
using Vector = std::vector<Integer>;

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Raised when a consistency check that should be a theorem fails. Seeing one
// means a bug in the engine, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

class SizeOverflow : public Error {
 public:
  using Error::Error;
};

inline std::string to_string(const Integer& x) { return x.get_str(); }

inline std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline std::string to_string(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

// Non-negative remainder of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// g = gcd(a, b) = x*a + y*b
struct ExtendedGcd {
  Integer g, x, y;
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

// Exact base-p logarithm of a positive rational; nullopt unless q = p^k.
inline std::optional<long> log_exact(const Rational& q, const Integer& p) {
  if (p < 2 || sgn(q) <= 0) return std::nullopt;
  Rational c = q;
  c.canonicalize();
  Integer num = c.get_num(), den = c.get_den();
  long k = 0;
  while (num % p == 0) {
    num /= p;
    ++k;
  }
  while (den % p == 0) {
    den /= p;
    --k;
  }
  if (num != 1 || den != 1) return std::nullopt;
  return k;
}

inline Rational rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool fits_long(const Integer& x) { return x.fits_slong_p(); }

inline std::uint64_t to_u64(const Integer& x) {
  if (sgn(x) < 0 || !x.fits_ulong_p()) throw SizeOverflow("integer " + x.get_str() + " does not fit in 64 bits");
  return x.get_ui();
}

}  // namespace vlg
