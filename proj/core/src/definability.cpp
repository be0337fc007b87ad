#include "thompson/definability.hpp"

#include "thompson/error.hpp"
#include "thompson/logic/pool.hpp"

namespace thompson {

namespace {

using logic::Term;

Term mul(Term a, Term b) { return Term::func("mul", {std::move(a), std::move(b)}); }
Term inv(Term a) { return Term::func("inv", {std::move(a)}); }

/// t^k for k >= 1 as a left-nested product.
Term pow_term(const Term& t, std::int64_t k) {
  Term out = t;
  for (std::int64_t i = 1; i < k; ++i) out = mul(std::move(out), t);
  return out;
}

logic::PoolModel<PLMap> group_model(const Generators& gens, std::size_t pool_size) {
  std::vector<PLMap> pool;
  const auto half = static_cast<std::int64_t>(pool_size / 2);
  for (std::int64_t j = -half; j < static_cast<std::int64_t>(pool_size) - half; ++j) pool.push_back(power(gens.c(), j));
  logic::PoolModel<PLMap> model(std::move(pool));
  model.define("mul", 2, [](const std::vector<PLMap>& v) { return compose(v[0], v[1]); });
  model.define("inv", 1, [](const std::vector<PLMap>& v) { return inverse(v[0]); });
  model.define("a", 0, [a = gens.a()](const std::vector<PLMap>&) { return a; });
  model.define("b", 0, [b = gens.b()](const std::vector<PLMap>&) { return b; });
  return model;
}

}  // namespace

logic::Formula wreath_membership_formula(std::int64_t s, std::int64_t t) {
  if (s < 1 || t < 1) throw ContractViolation("wreath_membership_formula needs s, t >= 1");
  const Term x = Term::var("x"), y = Term::var("y"), z = Term::var("z"), w = Term::var("w");
  const Term a = Term::func("a"), b = Term::func("b");
  const Term b_w = mul(mul(pow_term(inv(w), s), b), pow_term(w, s));
  return logic::conj(
      logic::conj(logic::eq(x, mul(pow_term(y, s), pow_term(z, t))), logic::eq(mul(y, a), mul(a, y))),
      logic::forall({"w"}, logic::implies(logic::eq(mul(w, a), mul(a, w)), logic::eq(mul(z, b_w), mul(b_w, z)))));
}

MembershipWitness membership_witness(const WreathElement& u, const Generators& gens, std::size_t pool_size) {
  const std::int64_t m = u.shift();
  PLMap y = power(gens.c(), m);
  PLMap z = identity(gens.context());
  for (const auto& [k, e] : u.coeffs()) z = compose(z, power(gens.d_conjugate(k + m), e));
  const logic::Formula f = wreath_membership_formula(gens.s(), gens.t());
  const auto model = group_model(gens, pool_size);
  const bool holds = model.evaluate(f, {{"x", embed(u, gens)}, {"y", y}, {"z", z}});
  return {std::move(y), std::move(z), holds, pool_size};
}

bool membership_search(const PLMap& x, const Generators& gens, std::int64_t y_radius, std::int64_t z_radius,
                       std::size_t pool_size) {
  auto model = group_model(gens, pool_size);
  std::vector<PLMap> ys;
  for (std::int64_t j = -y_radius; j <= y_radius; ++j) ys.push_back(power(gens.c(), j));
  std::vector<PLMap> zs{identity(gens.context())};
  for (std::int64_t k = -z_radius; k <= z_radius; ++k) {
    const PLMap dk = gens.d_conjugate(k);
    const PLMap dk_inv = inverse(dk);
    std::vector<PLMap> next;
    for (const auto& z : zs) {
      next.push_back(z);
      next.push_back(compose(z, dk));
      next.push_back(compose(z, dk_inv));
    }
    zs = std::move(next);
  }
  model.set_pool("y", std::move(ys));
  model.set_pool("z", std::move(zs));
  const logic::Formula f = logic::exists({"y", "z"}, wreath_membership_formula(gens.s(), gens.t()));
  return model.evaluate(f, {{"x", x}});
}

}  // namespace thompson
