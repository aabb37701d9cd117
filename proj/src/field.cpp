#include "speclab/field.hpp"

#include <charconv>

namespace speclab {

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (!s.empty() && allow_sign && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t common_prime(const ModP& a, const ModP& b) {
  if (a.prime() && b.prime() && a.prime() != b.prime())
    throw Error("arithmetic between different prime fields");
  return a.prime() ? a.prime() : b.prime();
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_integer(num, true) || (slash != std::string_view::npos && !valid_integer(den, false)))
    throw Error("malformed field element \"" + std::string(text) + "\"");
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  Rational r;
  r.get_num() = mpz_class(n, 10);
  r.get_den() = den.empty() ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (r.get_den() == 0) throw Error("zero denominator in \"" + std::string(text) + "\"");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

ModP operator+(const ModP& a, const ModP& b) {
  auto p = common_prime(a, b);
  if (!p) return {};
  std::uint64_t s = a.value_ + b.value_;
  return ModP(s >= p ? s - p : s, p);
}

ModP operator-(const ModP& a, const ModP& b) {
  auto p = common_prime(a, b);
  if (!p) return {};
  return ModP(a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + p - b.value_, p);
}

ModP operator*(const ModP& a, const ModP& b) {
  auto p = common_prime(a, b);
  if (!p) return {};
  return ModP(mulmod(a.value_, b.value_, p), p);
}

ModP operator/(const ModP& a, const ModP& b) { return a * inverse(b); }

ModP inverse(const ModP& x) {
  if (x.value() == 0) throw Error("inverse of zero residue");
  return ModP(powmod(x.value(), x.prime() - 2, x.prime()), x.prime());
}

ModP reduce_mod(const Rational& x, std::uint64_t prime) {
  mpz_class p(std::to_string(prime), 10);
  mpz_class num = x.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = x.get_den() % p;
  if (den == 0) throw Error("denominator of " + format_rational(x) + " vanishes mod " + std::to_string(prime));
  ModP n(std::stoull(num.get_str()), prime);
  ModP d(std::stoull(den.get_str()), prime);
  return n / d;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit n.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::string Field::name() const { return is_rational() ? "q" : "p:" + std::to_string(prime); }

Field Field::parse(std::string_view text) {
  if (text == "q") return {};
  if (text.substr(0, 2) != "p:") throw Error("field must be \"q\" or \"p:<prime>\", got \"" + std::string(text) + "\"");
  auto digits = text.substr(2);
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw Error("malformed prime \"" + std::string(digits) + "\"");
  if (p <= 1'000'000) throw Error("prime field modulus must exceed 10^6");
  if (p >= (1ull << 62)) throw Error("prime field modulus must be below 2^62");
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  return Field{p};
}

}  // namespace speclab
