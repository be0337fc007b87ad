#include "thompson/rational.hpp"

#include <cctype>

#include "thompson/error.hpp"

namespace thompson {

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw ContractViolation("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

namespace {

bool valid_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class to_mpz(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+') {
    throw SyntaxError("malformed rational '" + std::string(text) + "'", 0);
  }
  return Rational(to_mpz(num), to_mpz(den));
}

std::string Rational::to_string() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ContractViolation("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

GroupContext::GroupContext(int n, Rational r) : n_(n), r_(std::move(r)) {
  if (n_ < 2) throw ContractViolation("slope generator n must be >= 2");
  if (r_.sign() <= 0) throw ContractViolation("interval length r must be positive");
  if (!in_A(r_, *this)) throw NotInRing("r = " + r_.to_string() + " is not in Z[1/" + std::to_string(n_) + "]");
}

bool in_A(const Rational& q, const GroupContext& ctx) {
  mpz_class d = q.denominator();
  const mpz_class n = ctx.n();
  for (;;) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (g == 1) break;
    d /= g;
  }
  return d == 1;
}

std::optional<std::int64_t> log_slope(const Rational& q, const GroupContext& ctx) {
  if (q.sign() <= 0) throw ContractViolation("log_slope of non-positive value " + q.to_string());
  const mpz_class n = ctx.n();
  mpz_class num = q.numerator();
  mpz_class den = q.denominator();
  std::int64_t k = 0;
  if (den == 1) {
    while (num % n == 0) {
      num /= n;
      ++k;
    }
    if (num != 1) return std::nullopt;
    return k;
  }
  if (num != 1) return std::nullopt;
  while (den % n == 0) {
    den /= n;
    --k;
  }
  if (den != 1) return std::nullopt;
  return k;
}

Rational power_of_n(const GroupContext& ctx, std::int64_t k) {
  mpz_class p;
  const auto e = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(ctx.n()), e);
  return k >= 0 ? Rational(p, mpz_class(1)) : Rational(mpz_class(1), p);
}

}  // namespace thompson
