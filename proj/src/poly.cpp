#include "speclab/poly.hpp"

#include <algorithm>

namespace speclab {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int degree, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && speclab::is_zero(coeffs_.back())) coeffs_.pop_back();
}

Rational Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational inv = inverse(leading());
  return inv * *this;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + Rational(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(c));
}

Poly operator*(const Rational& s, const Poly& p) {
  std::vector<Rational> c(p.coeffs_);
  for (auto& x : c) x *= s;
  return Poly(std::move(c));
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<Rational> rem(a.coeffs());
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {Poly{}, a};
  std::vector<Rational> q(static_cast<std::size_t>(dq) + 1);
  Rational lead_inv = inverse(b.leading());
  for (int k = dq; k >= 0; --k) {
    Rational c = rem[static_cast<std::size_t>(k + db)] * lead_inv;
    q[static_cast<std::size_t>(k)] = c;
    if (is_zero(c)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= c * b.coeff(j);
  }
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(k);
    if (is_zero(c)) continue;
    if (!out.empty()) out += " + ";
    out += "(" + format_rational(c) + ")";
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace speclab
