#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "thompson/constructions.hpp"

namespace thompson {

/// Normal form h * a^shift of an element of Z wr Z = <b> wr <a>, where
/// h = prod_k b_k^{e_k} and b_k = a^-k b a^k. Conjugation moves indices:
/// a^m b_k a^-m = b_{k-m}.
class WreathElement {
 public:
  WreathElement() = default;
  WreathElement(std::int64_t shift, std::map<std::int64_t, std::int64_t> coeffs);

  static WreathElement a();
  static WreathElement b();
  /// b_k on its own.
  static WreathElement b_at(std::int64_t k, std::int64_t exponent = 1);
  static WreathElement a_power(std::int64_t m);

  std::int64_t shift() const { return shift_; }
  /// Index -> nonzero exponent.
  const std::map<std::int64_t, std::int64_t>& coeffs() const { return coeffs_; }
  bool is_identity() const { return shift_ == 0 && coeffs_.empty(); }
  bool in_base() const { return shift_ == 0; }

  /// "a^m | {k: e, ...}".
  std::string to_string() const;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;

 private:
  std::int64_t shift_ = 0;
  std::map<std::int64_t, std::int64_t> coeffs_;
};

WreathElement w_multiply(const WreathElement& u, const WreathElement& v);
WreathElement w_inverse(const WreathElement& u);
WreathElement w_power(const WreathElement& u, std::int64_t m);
WreathElement w_commutator(const WreathElement& u, const WreathElement& v);

/// Parses a word over a, b and their inverses. Accepted tokens: a, b, A, B
/// (inverses), x^k, x^-k, x⁻¹; whitespace and '*' separate letters.
WreathElement w_from_word(std::string_view word);

/// Inverse of to_string: "a^m | {k: e, ...}".
WreathElement w_parse_normal_form(std::string_view text);

/// prod_k (a^-k b a^k)^{e_k} * a^shift, evaluated in F.
PLMap embed(const WreathElement& u, const Generators& gens);

/// The unique normal form u with embed(u) == x, or nullopt when x is not in
/// <a, b>.
std::optional<WreathElement> wreath_decompose(const PLMap& x, const Generators& gens);

/// Membership of g in H * C_G(b a^m) = H <a^m>: decided by finding j with
/// g (b a^m)^-j in the base group H.
bool in_H_coset_of_centralizer(const WreathElement& g, std::int64_t m);

/// g commutes with b a^m (m != 0).
bool centralizer_check_ba_n(const WreathElement& g, std::int64_t m);

/// w^2 + x^2 + y^2 + z^2 = k with w <= x <= y <= z.
std::array<std::int64_t, 4> four_squares(std::int64_t k);

struct RobinsonConfig {
  /// Candidates n are searched in [-bound; bound].
  std::int64_t bound = 10000;
};

/// k * l computed using only addition, divisibility tests and the constant 1:
///   n = k(k+1)  <->  (forall m)(n|m <-> k|m & (k+1)|m) & (2k+1) | (2n - k)
///   n = kl      <->  (k+l)(k+l+1) = k(k+1) + l(l+1) + 2n
/// Throws ContractViolation when the search bound is exhausted.
std::int64_t mul_from_add_div(std::int64_t k, std::int64_t l, const RobinsonConfig& config = {});

/// The unique n with n = k(k+1), found through the first equivalence only.
std::int64_t pronic_from_add_div(std::int64_t k, const RobinsonConfig& config = {});

}  // namespace thompson
