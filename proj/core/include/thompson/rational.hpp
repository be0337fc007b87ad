#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace thompson {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT: implicit by design of the arithmetic
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class value);

  /// Parses "p/q" or "p" (optional sign, decimal digits).
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

 private:
  mpq_class v_;
};

Rational abs(const Rational& q);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Parameters of F(r, <n>, Z[1/n]): slope group generated by n, breakpoint
/// ring Z[1/n], and interval [0; r).
class GroupContext {
 public:
  GroupContext(int n, Rational r);

  /// Thompson's F: n = 2, r = 1.
  static GroupContext thompson() { return GroupContext(2, Rational(1)); }

  int n() const { return n_; }
  const Rational& r() const { return r_; }

  friend bool operator==(const GroupContext&, const GroupContext&) = default;

 private:
  int n_;
  Rational r_;
};

/// True iff every prime factor of the reduced denominator of q divides n.
bool in_A(const Rational& q, const GroupContext& ctx);

/// The exponent k with q = n^k, or nullopt when q is not a power of n.
/// Throws ContractViolation for q <= 0.
std::optional<std::int64_t> log_slope(const Rational& q, const GroupContext& ctx);

/// n^k as an exact rational (k may be negative).
Rational power_of_n(const GroupContext& ctx, std::int64_t k);

}  // namespace thompson
