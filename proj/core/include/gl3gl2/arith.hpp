#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gl3gl2/numeric.hpp"

namespace gl3gl2::arith {

using i64 = std::int64_t;

// Trial division is only offered below this bound; larger inputs are
// rejected instead of running slowly.
inline constexpr i64 kMaxFactorable = 10'000'000;

struct PrimePower {
  i64 prime = 0;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct FactoredInteger {
  i64 value = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  i64 divisor_count() const;
  i64 divisor_count3() const;  // ordered factorizations into three factors
  i64 euler_phi() const;
  int moebius() const;
  // Product of prime powers equals value and primes increase strictly.
  bool consistent() const;
};

FactoredInteger factor(i64 n);

// Least nonnegative residue of a modulo m (m >= 1).
i64 mod(i64 a, i64 m);

// Inverse of a modulo m via extended Euclid. Throws PreconditionError when
// gcd(a, m) != 1. For m == 1 the inverse is 0.
i64 mod_inverse(i64 a, i64 m);

i64 divisor_count(i64 n);

class ExactFraction {
 public:
  ExactFraction() = default;
  ExactFraction(i64 numerator, i64 denominator = 1);

  i64 numerator() const { return num_; }
  i64 denominator() const { return den_; }

  // Representative in [0, 1).
  ExactFraction mod_one() const;
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend ExactFraction operator+(const ExactFraction& a, const ExactFraction& b);
  friend ExactFraction operator-(const ExactFraction& a, const ExactFraction& b);
  friend ExactFraction operator-(const ExactFraction& a);
  friend bool operator==(const ExactFraction&, const ExactFraction&) = default;

 private:
  i64 num_ = 0;
  i64 den_ = 1;
};

// Kloosterman sums S(n, m; c) for one fixed modulus. Units and their
// inverses are tabulated once, so evaluating many (n, m) pairs costs
// O(phi(c)) each without further inversions. Each unit h is paired with
// its inverse through a cosine table symmetric under k -> c - k, which
// makes the returned value exactly real and exactly symmetric in (n, m).
class KloostermanTable {
 public:
  explicit KloostermanTable(i64 c);

  i64 modulus() const { return c_; }
  double operator()(i64 n, i64 m) const;

 private:
  i64 c_;
  std::vector<i64> units_;
  std::vector<i64> inverses_;
  std::vector<double> cos_;
};

// S(n, m; c) by direct enumeration over units h mod c.
double kloosterman(i64 n, i64 m, i64 c);

// The same sum with complex exponentials and no pairing; its imaginary part
// is pure rounding residue.
cplx kloosterman_exponential(i64 n, i64 m, i64 c);

// S(n, m; c) through twisted multiplicativity over the prime-power
// factorization of c; each prime-power part is enumerated directly.
// Agrees with kloosterman() to rounding and is much cheaper for large c.
double kloosterman_crt(i64 n, i64 m, i64 c);

// Sum over units h mod c of e(hn/c), via sum_{d | (n,c)} d mu(c/d).
i64 ramanujan_sum(i64 n, i64 c);

// e(n mbar / q) = e(n / (mq)) e(-n qbar / m) for gcd(m, q) = 1.
struct ReciprocitySplit {
  ExactFraction combined;  // n * mbar / q          mod 1
  ExactFraction direct;    // n / (m q)            mod 1
  ExactFraction swapped;   // -n * qbar / m        mod 1
  bool holds = false;      // combined == direct + swapped mod 1
};

ReciprocitySplit reciprocity_split(i64 n, i64 m, i64 q);

struct MultiplicativeTables {
  i64 size = 0;  // tables are indexed 0..size, entry 0 unused
  std::vector<i64> d;
  std::vector<i64> d3;
  std::vector<int> mu;
  std::vector<i64> phi;
  std::vector<i64> spf;  // smallest prime factor
};

MultiplicativeTables multiplicative_tables(i64 n_max);

// d3(n) for n = 0..n_max (entry 0 unused) by a segmented sieve; 4 bytes per
// entry, so it reaches 10^8 where multiplicative_tables cannot.
std::vector<std::uint32_t> ternary_divisor_table(i64 n_max);

}  // namespace gl3gl2::arith
