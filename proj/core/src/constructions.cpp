#include "thompson/constructions.hpp"

#include <algorithm>

#include "thompson/error.hpp"

namespace thompson {

namespace {

void require_power_of_n(const Rational& v, const GroupContext& ctx, const char* name) {
  if (v.sign() <= 0 || !log_slope(v, ctx)) {
    throw ContractViolation(std::string(name) + " = " + v.to_string() + " is not a power of " +
                            std::to_string(ctx.n()));
  }
}

void require_in_A(const Rational& v, const GroupContext& ctx, const char* name) {
  if (!in_A(v, ctx)) {
    throw NotInRing(std::string(name) + " = " + v.to_string() + " is not in Z[1/" + std::to_string(ctx.n()) + "]");
  }
}

}  // namespace

PLMap make_bump(const GroupContext& ctx, const Rational& alpha, const Rational& beta, const Rational& p,
                const Rational& q) {
  require_in_A(alpha, ctx, "alpha");
  require_in_A(beta, ctx, "beta");
  if (alpha.sign() < 0 || !(alpha < beta) || beta > ctx.r()) {
    throw ContractViolation("bump needs 0 <= alpha < beta <= r");
  }
  require_power_of_n(p, ctx, "p");
  require_power_of_n(q, ctx, "q");
  if (!(p > 1 && q < 1)) throw ContractViolation("bump needs p > 1 > q");

  const Rational total = Rational(2) + p + q;
  Rational s = 1;
  while (total * s > 1) s /= ctx.n();
  const Rational l = beta - alpha;
  const Rational middle = (Rational(1) - total * s) * l;

  const Rational from[] = {s * l, q * s * l, middle, p * s * l, s * l};
  const Rational to[] = {p * s * l, s * l, middle, s * l, q * s * l};

  std::vector<Breakpoint> bp{{0, 0}};
  if (alpha.sign() > 0) bp.push_back({alpha, alpha});
  Rational u = alpha, v = alpha;
  for (std::size_t i = 0; i < 5; ++i) {
    if (from[i].is_zero()) continue;
    u += from[i];
    v += to[i];
    bp.push_back({u, v});
  }
  if (beta < ctx.r()) bp.push_back({ctx.r(), ctx.r()});
  return PLMap(ctx, std::move(bp));
}

PLMap make_down_bump(const GroupContext& ctx, const Rational& alpha, const Rational& beta, const Rational& q,
                     const Rational& p) {
  require_power_of_n(p, ctx, "p");
  require_power_of_n(q, ctx, "q");
  if (!(p > 1 && q < 1)) throw ContractViolation("down bump needs p > 1 > q");
  return inverse(make_bump(ctx, alpha, beta, Rational(1) / q, Rational(1) / p));
}

// ---------------------------------------------------------------------------
// Generators

Generators::Generators(PLMap a, PLMap b, PLMap c, PLMap d, std::int64_t s, std::int64_t t, Rational alpha0)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      d_(std::move(d)),
      s_(s),
      t_(t),
      alpha0_(std::move(alpha0)),
      cache_(std::make_shared<Cache>()) {
  cache_->alphas.emplace(0, alpha0_);
}

Rational Generators::alpha(std::int64_t k) const {
  std::lock_guard lock(cache_->mu);
  auto& alphas = cache_->alphas;
  if (auto it = alphas.find(k); it != alphas.end()) return it->second;
  if (k > 0) {
    auto top = std::prev(alphas.end());
    std::int64_t j = top->first;
    Rational v = top->second;
    for (; j < k; ++j) {
      v = evaluate(a_, v);
      alphas.emplace(j + 1, v);
    }
    return v;
  }
  auto bottom = alphas.begin();
  std::int64_t j = bottom->first;
  Rational v = bottom->second;
  const PLMap a_inv = inverse(a_);
  for (; j > k; --j) {
    v = evaluate(a_inv, v);
    alphas.emplace(j - 1, v);
  }
  return v;
}

PLMap Generators::a_power(std::int64_t k) const {
  {
    std::lock_guard lock(cache_->mu);
    if (auto it = cache_->a_powers.find(k); it != cache_->a_powers.end()) return it->second;
  }
  PLMap result = power(a_, k);
  std::lock_guard lock(cache_->mu);
  cache_->a_powers.emplace(k, result);
  return result;
}

PLMap Generators::b_conjugate(std::int64_t k) const {
  {
    std::lock_guard lock(cache_->mu);
    if (auto it = cache_->b_conjugates.find(k); it != cache_->b_conjugates.end()) return it->second;
  }
  PLMap result = conjugate(b_, a_power(k));
  std::lock_guard lock(cache_->mu);
  cache_->b_conjugates.emplace(k, result);
  return result;
}

PLMap Generators::d_conjugate(std::int64_t k) const { return conjugate(d_, a_power(k)); }

Generators make_generators(const GroupContext& ctx, const Rational& alpha0, std::int64_t s, std::int64_t t) {
  return make_generators(ctx, alpha0, s, t, SlopePair{Rational(ctx.n()), Rational(1, ctx.n())});
}

Generators make_generators(const GroupContext& ctx, const Rational& alpha0, std::int64_t s, std::int64_t t,
                           const SlopePair& slopes) {
  require_in_A(alpha0, ctx, "alpha0");
  if (!(alpha0.sign() > 0 && alpha0 < ctx.r())) throw ContractViolation("alpha0 must lie in ]0;r[");
  if (s < 1 || t < 1) throw ContractViolation("root exponents s, t must be positive");
  PLMap c = make_bump(ctx, 0, ctx.r(), slopes.p, slopes.q);
  PLMap a = power(c, s);
  const Rational alpha1 = evaluate(a, alpha0);
  PLMap d = make_bump(ctx, alpha0, alpha1, slopes.p, slopes.q);
  PLMap b = power(d, t);
  if (!(support(b) == IntervalSet({{alpha0, alpha1}}))) throw Error("generator b has unexpected support");
  Generators gens(std::move(a), std::move(b), std::move(c), std::move(d), s, t, alpha0);
  if (!(gens.alpha(-1) < alpha0 && alpha0 < gens.alpha(1))) throw Error("ladder is not increasing");
  return gens;
}

PLMap thompson_x0() {
  const GroupContext ctx = GroupContext::thompson();
  return PLMap(ctx, {{0, 0}, {Rational(1, 4), Rational(1, 2)}, {Rational(1, 2), Rational(3, 4)}, {1, 1}});
}

PLMap thompson_x1() {
  const GroupContext ctx = GroupContext::thompson();
  std::vector<Breakpoint> bp{{0, 0}};
  const PLMap x0 = thompson_x0();
  for (const auto& p : x0.breakpoints()) {
    bp.push_back({Rational(1, 2) + p.x / 2, Rational(1, 2) + p.y / 2});
  }
  return PLMap(ctx, std::move(bp));
}

Generators thompson_generators() {
  const PLMap x0 = thompson_x0();
  const PLMap x1 = thompson_x1();
  PLMap a = power(x0, 2);
  PLMap b = product({x1, inverse(x0), inverse(x1), x0});
  PLMap d = b;
  return Generators(std::move(a), std::move(b), x0, std::move(d), 2, 1, Rational(1, 2));
}

Generators default_generators(const GroupContext& ctx) {
  if (ctx == GroupContext::thompson()) return thompson_generators();
  return make_generators(ctx, ctx.r() * Rational(ctx.n() / 2, ctx.n()), 1, 1);
}

// ---------------------------------------------------------------------------
// Squeeze

SqueezeMap::SqueezeMap(GroupContext ctx, Rational alpha1, Rational beta1, Rational slope)
    : ctx_(std::move(ctx)), alpha1_(std::move(alpha1)), beta1_(std::move(beta1)), slope_(std::move(slope)) {}

Rational SqueezeMap::operator()(const Rational& t) const {
  if (t < alpha1_) return alpha1_ - slope_ * (alpha1_ - t);
  if (t > beta1_) return beta1_ + slope_ * (t - beta1_);
  return t;
}

Rational SqueezeMap::inverse(const Rational& t) const {
  if (t < alpha1_) return alpha1_ - (alpha1_ - t) / slope_;
  if (t > beta1_) return beta1_ + (t - beta1_) / slope_;
  return t;
}

Rational largest_squeeze_slope(const GroupContext& ctx, const Rational& alpha1, const Rational& beta1,
                               const Rational& alpha2, const Rational& beta2) {
  // (0)s = alpha1 (1 - p) > alpha2  <=>  p < (alpha1 - alpha2) / alpha1
  // (r)s = beta1 + p (r - beta1) < beta2  <=>  p < (beta2 - beta1) / (r - beta1)
  const Rational bound = min((alpha1 - alpha2) / alpha1, (beta2 - beta1) / (ctx.r() - beta1));
  Rational p = Rational(1, ctx.n());
  while (!(p < bound)) p /= ctx.n();
  return p;
}

SqueezeMap squeeze_conjugator(const GroupContext& ctx, const Rational& alpha1, const Rational& beta1,
                              const Rational& alpha2, const Rational& beta2, const Rational& p) {
  for (const auto* v : {&alpha1, &beta1, &alpha2, &beta2}) require_in_A(*v, ctx, "squeeze endpoint");
  if (!(alpha2.sign() > 0 && alpha2 < alpha1 && alpha1 < beta1 && beta1 < beta2 && beta2 < ctx.r())) {
    throw ContractViolation("squeeze needs 0 < alpha2 < alpha1 < beta1 < beta2 < r");
  }
  require_power_of_n(p, ctx, "squeeze slope");
  if (!(p < 1)) throw ContractViolation("squeeze slope must be < 1");
  const Rational bound = min((alpha1 - alpha2) / alpha1, (beta2 - beta1) / (ctx.r() - beta1));
  if (!(p < bound)) {
    throw ContractViolation("squeeze slope " + p.to_string() + " too large; need p < " + bound.to_string());
  }
  return SqueezeMap(ctx, alpha1, beta1, p);
}

PLMap squeeze(const PLMap& x, const SqueezeMap& s) {
  if (!(x.context() == s.context())) throw ContextMismatch();
  const Rational& r = x.context().r();
  // Breakpoints of s^-1 x s sit over s(u) for u a breakpoint of x, a
  // breakpoint of s, or a preimage under x of a breakpoint of s.
  std::vector<Rational> us;
  for (const auto& p : x.breakpoints()) us.push_back(p.x);
  for (const auto* v : {&s.alpha1(), &s.beta1()}) {
    us.push_back(*v);
    us.push_back(evaluate_inverse(x, *v));
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());

  std::vector<Breakpoint> bp;
  if (s.image_lo().sign() > 0) bp.push_back({0, 0});
  for (const auto& u : us) bp.push_back({s(u), s(evaluate(x, u))});
  if (s.image_hi() < r) bp.push_back({r, r});
  return PLMap::from_trusted(x.context(), std::move(bp));
}

}  // namespace thompson
