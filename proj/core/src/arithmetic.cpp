#include "thompson/arithmetic.hpp"

#include "thompson/error.hpp"

namespace thompson {

namespace {

std::int64_t exponent_of(const Rational& slope, const GroupContext& ctx) {
  const auto e = log_slope(slope, ctx);
  if (!e) throw Error("slope " + slope.to_string() + " is not a power of n");
  return *e;
}

void require_split_point(const GroupContext& ctx, const Rational& gamma) {
  if (!(0 < gamma && gamma < ctx.r()) || !in_A(gamma, ctx)) {
    throw ContractViolation("split point " + gamma.to_string() + " must be an interior point of A");
  }
}

void require_B(const PLMap& x, const char* what) {
  if (!classify(x).in_B()) throw ContractViolation(std::string(what) + " is not in B");
}

/// Bump on ]lo; hi[ with right slope n^e_lo at lo and left slope n^e_hi at hi,
/// where e_lo and e_hi have opposite signs (or the bump is trivial).
PLMap bump_with_exponents(const GroupContext& ctx, const Rational& lo, const Rational& hi, std::int64_t e_lo,
                          std::int64_t e_hi) {
  if (e_lo == 0 && e_hi == 0) return identity(ctx);
  if (e_lo > 0 && e_hi < 0) return make_bump(ctx, lo, hi, power_of_n(ctx, e_lo), power_of_n(ctx, e_hi));
  if (e_lo < 0 && e_hi > 0) return make_down_bump(ctx, lo, hi, power_of_n(ctx, e_lo), power_of_n(ctx, e_hi));
  throw ContractViolation("a bump needs boundary slopes on opposite sides of 1");
}

}  // namespace

SlopeClass classify(const PLMap& x) {
  const GroupContext& ctx = x.context();
  return {exponent_of(slope_right(x, 0), ctx), exponent_of(slope_left(x, ctx.r()), ctx)};
}

Rational default_split_point(const GroupContext& ctx) {
  const Rational half = ctx.r() / 2;
  if (in_A(half, ctx)) return half;
  mpz_class scale = 1;
  for (;;) {
    scale *= ctx.n();
    const mpq_class scaled = half.raw() * scale;
    mpz_class lo_num = scaled.get_num() / scaled.get_den();  // floor, scaled > 0
    const Rational lo(lo_num, scale);
    const Rational hi(lo_num + 1, scale);
    const bool lo_ok = 0 < lo && lo < ctx.r();
    const bool hi_ok = 0 < hi && hi < ctx.r();
    if (lo_ok && hi_ok) return (half - lo <= hi - half) ? lo : hi;
    if (lo_ok) return lo;
    if (hi_ok) return hi;
  }
}

PLMap encode_nat(const GroupContext& ctx, std::int64_t k, const Rational& gamma) {
  if (k < 1) throw ContractViolation("encode_nat needs k >= 1, got " + std::to_string(k));
  require_split_point(ctx, gamma);
  return compose(bump_with_exponents(ctx, 0, gamma, k, -1), bump_with_exponents(ctx, gamma, ctx.r(), -1, k));
}

PLMap encode_nat(const GroupContext& ctx, std::int64_t k) { return encode_nat(ctx, k, default_split_point(ctx)); }

std::int64_t decode(const PLMap& x) {
  const SlopeClass c = classify(x);
  if (!c.in_B()) throw ContractViolation("decode needs an element of B");
  return c.s0;
}

bool add_bridge(const PLMap& x, const PLMap& y, const PLMap& z) {
  require_B(x, "x");
  require_B(y, "y");
  require_B(z, "z");
  return classify(compose(compose(x, y), inverse(z))).in_F_circle();
}

bool divides_bridge(const PLMap& x, const PLMap& y) {
  require_B(x, "x");
  require_B(y, "y");
  return decode(y) % decode(x) == 0;
}

Split split_at(const PLMap& x, const Rational& gamma) {
  const GroupContext& ctx = x.context();
  require_split_point(ctx, gamma);
  const SlopeClass c = classify(x);
  PLMap x1 = bump_with_exponents(ctx, 0, gamma, c.s0, c.s0 > 0 ? -1 : (c.s0 < 0 ? 1 : 0));
  PLMap x2 = bump_with_exponents(ctx, gamma, ctx.r(), c.sr > 0 ? -1 : (c.sr < 0 ? 1 : 0), c.sr);
  PLMap z = compose(inverse(x), compose(x1, x2));
  if (!classify(z).in_F_circle()) throw Error("split: z is not in F-circle");
  return {std::move(x1), std::move(x2), std::move(z)};
}

std::optional<DivisibilityWitness> divides_witness(const PLMap& x, const PLMap& y, const Rational& gamma) {
  if (!divides_bridge(x, y)) return std::nullopt;
  const std::int64_t m = decode(y) / decode(x);
  Split s = split_at(x, gamma);
  PLMap w = compose(power(s.x1, -m), power(s.x2, -m));
  const PLMap xz = compose(x, s.z);
  if (!(xz == compose(s.x1, s.x2))) throw Error("divides_witness: x z != x1 x2");
  if (!commutes(w, xz)) throw Error("divides_witness: w does not centralize x z");
  if (!classify(compose(y, w)).in_F_circle()) throw Error("divides_witness: y w is not in F-circle");
  return DivisibilityWitness{std::move(s.x1), std::move(s.x2), std::move(s.z), std::move(w), m};
}

std::optional<DivisibilityWitness> divides_witness(const PLMap& x, const PLMap& y) {
  return divides_witness(x, y, default_split_point(x.context()));
}

bool lattice_refutes_divisibility(const PLMap& x, const PLMap& y, std::int64_t range) {
  require_B(x, "x");
  require_B(y, "y");
  const Split s = split_at(x, default_split_point(x.context()));
  const SlopeClass cy = classify(y);
  for (std::int64_t i = -range; i <= range; ++i) {
    const PLMap x1i = power(s.x1, i);
    if (cy.s0 + classify(x1i).s0 != 0) continue;  // the slope at 0 already stays off 1
    for (std::int64_t j = -range; j <= range; ++j) {
      if (classify(compose(y, compose(x1i, power(s.x2, j)))).in_F_circle()) return false;
    }
  }
  return true;
}

UCertificate u_counterexample(const PLMap& x_in, std::int64_t range, const Rational& gamma) {
  const GroupContext& ctx = x_in.context();
  SlopeClass c = classify(x_in);
  if (!c.in_E2() || c.in_P() || c.in_U()) throw ContractViolation("u_counterexample needs x in (E2 \\ P) \\ U");
  if (range < 0) throw ContractViolation("range must be >= 0");

  PLMap x = x_in;
  std::string symmetry = "none";
  if (c.s0 < 0) {
    x = inverse(x);
    symmetry = "inverse";
    c = classify(x);
  }
  if (c.s0 == 1) {  // then sr <= -2 since x is not in U
    x = inverse(reflect(x));
    symmetry = symmetry == "none" ? "reflect+inverse" : symmetry + "+reflect+inverse";
    c = classify(x);
  }

  PLMap y = encode_nat(ctx, 1, gamma);
  Split s = split_at(x, gamma);

  struct LatticePoint {
    PLMap w;
    bool y_w_outside_E2;
  };
  std::vector<LatticePoint> lattice;
  const PLMap x1x2 = compose(s.x1, s.x2);
  for (std::int64_t i = -range; i <= range; ++i) {
    const PLMap x1i = power(s.x1, i);
    for (std::int64_t j = -range; j <= range; ++j) {
      PLMap w = compose(x1i, power(s.x2, j));
      if (!commutes(w, x1x2)) throw Error("u_counterexample: lattice element outside the centralizer");
      const bool outside = !classify(compose(y, w)).in_E2();
      lattice.push_back({std::move(w), outside});
    }
  }

  bool holds = true;
  std::size_t checked = 0;
  for (const auto& p1 : lattice) {
    for (const auto& p2 : lattice) {
      ++checked;
      if (!p1.y_w_outside_E2 || !p2.y_w_outside_E2) continue;
      if (classify(compose(p1.w, inverse(p2.w))).in_E2()) holds = false;
    }
  }
  return UCertificate{std::move(symmetry), std::move(x),    std::move(y), std::move(s.x1), std::move(s.x2),
                      std::move(s.z),      range,           checked,      holds};
}

UCertificate u_counterexample(const PLMap& x, std::int64_t range) {
  return u_counterexample(x, range, default_split_point(x.context()));
}

}  // namespace thompson
