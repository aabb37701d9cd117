#pragma once

#include <string>
#include <vector>

#include "speclab/field.hpp"

namespace speclab {

/// Univariate polynomial over the rationals in the affine chart coordinate
/// x. Coefficients are stored constant term first with no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c) { return Poly({c}); }
  static Poly monomial(int degree, const Rational& c = 1);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coeff(int k) const;
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }
  Rational eval(const Rational& x) const;

  Poly monic() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& s, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) is 0.
Poly gcd(const Poly& a, const Poly& b);

std::string to_string(const Poly& p);

}  // namespace speclab
