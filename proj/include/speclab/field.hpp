#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace speclab {

/// Base error for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// Canonical text form: lowest terms, positive denominator, "/1" omitted.
std::string format_rational(const Rational& value);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational inverse(const Rational& x) { return Rational(1) / x; }

/// Residue modulo a prime carried alongside its value.
///
/// A default-constructed residue has modulus 0 and acts as zero in any
/// prime field, so generic elimination code can create zeros with `T{}`.
class ModP {
 public:
  ModP() = default;
  ModP(std::uint64_t value, std::uint64_t prime) : value_(prime ? value % prime : 0), prime_(prime) {}

  std::uint64_t value() const { return value_; }
  std::uint64_t prime() const { return prime_; }

  friend ModP operator+(const ModP& a, const ModP& b);
  friend ModP operator-(const ModP& a, const ModP& b);
  friend ModP operator*(const ModP& a, const ModP& b);
  friend ModP operator/(const ModP& a, const ModP& b);
  ModP operator-() const { return ModP{} - *this; }
  ModP& operator+=(const ModP& o) { return *this = *this + o; }
  ModP& operator-=(const ModP& o) { return *this = *this - o; }
  ModP& operator*=(const ModP& o) { return *this = *this * o; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.value_ == b.value_; }

 private:
  std::uint64_t value_ = 0;
  std::uint64_t prime_ = 0;
};

inline bool is_zero(const ModP& x) { return x.value() == 0; }
ModP inverse(const ModP& x);

/// Reduces a rational into F_p. Throws if p divides the denominator.
ModP reduce_mod(const Rational& x, std::uint64_t prime);

bool is_prime(std::uint64_t n);

/// Which exact field rank computations run over: the rationals (default)
/// or a large prime field.
struct Field {
  std::uint64_t prime = 0;

  bool is_rational() const { return prime == 0; }
  std::string name() const;

  static Field rationals() { return {}; }
  /// Accepts "q" or "p:<prime>" with prime > 10^6 and below 2^62.
  static Field parse(std::string_view text);
};

}  // namespace speclab
