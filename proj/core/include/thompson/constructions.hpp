#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

#include "thompson/pl_map.hpp"

namespace thompson {

/// Element of F-up with support exactly ]alpha; beta[, right slope p at alpha
/// and left slope q at beta (p > 1 > q, both powers of n).
///
/// [alpha; beta] is cut into five pieces of lengths sl, qsl, (1-(2+p+q)s)l,
/// psl, sl and sent affinely onto pieces of lengths psl, sl, (1-(2+p+q)s)l,
/// sl, qsl, where l = beta - alpha and s is the largest power of n with
/// (2+p+q)s <= 1.
PLMap make_bump(const GroupContext& ctx, const Rational& alpha, const Rational& beta, const Rational& p,
                const Rational& q);

/// Element of F-down with support ]alpha; beta[, right slope q < 1 at alpha
/// and left slope p > 1 at beta; the inverse of make_bump(alpha, beta, 1/q, 1/p).
PLMap make_down_bump(const GroupContext& ctx, const Rational& alpha, const Rational& beta, const Rational& q,
                     const Rational& p);

/// The pair a = c^s, b = d^t generating a copy of Z wr Z, with the ladder
/// alpha_k = (alpha_0) a^k and cached conjugates b_k = a^-k b a^k.
///
/// Copies share one cache; the cache is guarded, so a Generators value may
/// be used from several threads.
class Generators {
 public:
  Generators(PLMap a, PLMap b, PLMap c, PLMap d, std::int64_t s, std::int64_t t, Rational alpha0);

  const GroupContext& context() const { return a_.context(); }
  const PLMap& a() const { return a_; }
  const PLMap& b() const { return b_; }
  const PLMap& c() const { return c_; }
  const PLMap& d() const { return d_; }
  std::int64_t s() const { return s_; }
  std::int64_t t() const { return t_; }
  const Rational& alpha0() const { return alpha0_; }

  /// alpha_k, extended lazily in either direction.
  Rational alpha(std::int64_t k) const;
  /// a^k.
  PLMap a_power(std::int64_t k) const;
  /// a^-k b a^k, supported on ]alpha_k; alpha_{k+1}[.
  PLMap b_conjugate(std::int64_t k) const;
  /// a^-k d a^k.
  PLMap d_conjugate(std::int64_t k) const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::int64_t, Rational> alphas;
    std::map<std::int64_t, PLMap> a_powers;
    std::map<std::int64_t, PLMap> b_conjugates;
  };

  PLMap a_, b_, c_, d_;
  std::int64_t s_, t_;
  Rational alpha0_;
  std::shared_ptr<Cache> cache_;
};

/// Slope pair used for the roots c and d; (n, 1/n) by default.
struct SlopePair {
  Rational p;
  Rational q;
};

/// c = make_bump(0, r, p, q), a = c^s, d = make_bump(alpha0, alpha1, p, q),
/// b = d^t. Checks the ladder ordering and supp(b) = ]alpha0; alpha1[.
Generators make_generators(const GroupContext& ctx, const Rational& alpha0, std::int64_t s, std::int64_t t);
Generators make_generators(const GroupContext& ctx, const Rational& alpha0, std::int64_t s, std::int64_t t,
                           const SlopePair& slopes);

/// thompson_generators() for n = 2, r = 1; otherwise make_generators with
/// alpha0 = r floor(n/2) / n and s = t = 1.
Generators default_generators(const GroupContext& ctx);

/// Standard Thompson generators over n = 2, r = 1.
PLMap thompson_x0();
PLMap thompson_x1();
/// a = x0^2, b = x1 x0^-1 x1^-1 x0, alpha0 = 1/2, with c = x0 (s = 2) and
/// d = b (t = 1).
Generators thompson_generators();

/// Injective PL map of [0; r] that is the identity on [alpha1; beta1] and
/// affine with slope p on [0; alpha1] and on [beta1; r].
class SqueezeMap {
 public:
  SqueezeMap(GroupContext ctx, Rational alpha1, Rational beta1, Rational slope);

  const GroupContext& context() const { return ctx_; }
  const Rational& alpha1() const { return alpha1_; }
  const Rational& beta1() const { return beta1_; }
  const Rational& slope() const { return slope_; }

  Rational operator()(const Rational& t) const;
  Rational inverse(const Rational& t) const;
  /// Image of [0; r]: [(0)s; (r)s].
  Rational image_lo() const { return (*this)(0); }
  Rational image_hi() const { return (*this)(ctx_.r()); }

 private:
  GroupContext ctx_;
  Rational alpha1_, beta1_, slope_;
};

/// Largest power p of n (p < 1) with (0)s > alpha2 and (r)s < beta2.
Rational largest_squeeze_slope(const GroupContext& ctx, const Rational& alpha1, const Rational& beta1,
                               const Rational& alpha2, const Rational& beta2);

/// Checks 0 < alpha2 < alpha1 < beta1 < beta2 < r in A and that p keeps the
/// image of [0; r] inside ]alpha2; beta2[; the error names the required bound.
SqueezeMap squeeze_conjugator(const GroupContext& ctx, const Rational& alpha1, const Rational& beta1,
                              const Rational& alpha2, const Rational& beta2, const Rational& p);

/// s^-1 x s on the image of s, identity elsewhere. A group endomorphism of F
/// into F_{](0)s; (r)s[} that fixes F_{]alpha1; beta1[} pointwise.
PLMap squeeze(const PLMap& x, const SqueezeMap& s);

}  // namespace thompson
