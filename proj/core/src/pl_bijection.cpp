#include "thompson/pl_bijection.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "thompson/error.hpp"

namespace thompson {

namespace {

bool same_affine(const AffinePiece& a, const AffinePiece& b) {
  return a.hi == b.lo && a.slope == b.slope && a.offset == b.offset;
}

std::vector<AffinePiece> merge_pieces(std::vector<AffinePiece> pieces) {
  std::vector<AffinePiece> out;
  for (auto& p : pieces) {
    if (!out.empty() && same_affine(out.back(), p)) {
      out.back().hi = p.hi;
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace

PLBijection::PLBijection(GroupContext ctx, std::vector<AffinePiece> pieces) : ctx_(std::move(ctx)) {
  if (pieces.empty()) throw ContractViolation("a bijection needs at least one piece");
  std::sort(pieces.begin(), pieces.end(), [](const AffinePiece& a, const AffinePiece& b) { return a.lo < b.lo; });
  if (!pieces.front().lo.is_zero() || !(pieces.back().hi == ctx_.r())) {
    throw ContractViolation("pieces must cover [0;r)");
  }
  std::vector<std::pair<Rational, Rational>> images;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (!(p.lo < p.hi)) throw ContractViolation("empty piece");
    if (i > 0 && !(pieces[i - 1].hi == p.lo)) throw ContractViolation("pieces must partition [0;r)");
    if (!log_slope(p.slope, ctx_)) throw ContractViolation("slope " + p.slope.to_string() + " not a power of n");
    for (const auto* v : {&p.lo, &p.hi}) {
      if (!in_A(*v, ctx_)) throw NotInRing("piece endpoint " + v->to_string() + " not in A");
    }
    if (!in_A(p.image_lo(), ctx_)) throw NotInRing("piece image " + p.image_lo().to_string() + " not in A");
    images.emplace_back(p.image_lo(), p.image_hi());
  }
  std::sort(images.begin(), images.end());
  if (!images.front().first.is_zero() || !(images.back().second == ctx_.r())) {
    throw ContractViolation("images must cover [0;r)");
  }
  for (std::size_t i = 1; i < images.size(); ++i) {
    if (!(images[i - 1].second == images[i].first)) throw ContractViolation("images must partition [0;r)");
  }
  pieces_ = merge_pieces(std::move(pieces));
}

PLBijection PLBijection::from_partitions(const GroupContext& ctx, const std::vector<Rational>& domain_cuts,
                                         const std::vector<Rational>& image_cuts,
                                         const std::vector<std::size_t>& order) {
  if (domain_cuts.size() != image_cuts.size() || domain_cuts.size() != order.size() + 1) {
    throw ContractViolation("partition sizes disagree");
  }
  std::vector<AffinePiece> pieces;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t j = order[i];
    if (j >= order.size()) throw ContractViolation("order is not a permutation");
    const Rational slope = (image_cuts[j + 1] - image_cuts[j]) / (domain_cuts[i + 1] - domain_cuts[i]);
    pieces.push_back({domain_cuts[i], domain_cuts[i + 1], slope, image_cuts[j] - slope * domain_cuts[i]});
  }
  return PLBijection(ctx, std::move(pieces));
}

PLBijection to_bijection(const PLMap& x) {
  std::vector<AffinePiece> pieces;
  const auto& bp = x.breakpoints();
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const Rational s = x.piece_slope(i);
    pieces.push_back({bp[i].x, bp[i + 1].x, s, bp[i].y - s * bp[i].x});
  }
  return PLBijection(x.context(), std::move(pieces));
}

Rational evaluate(const PLBijection& v, const Rational& t) {
  if (t.sign() < 0 || !(t < v.context().r())) throw ContractViolation("point outside [0;r)");
  const auto& ps = v.pieces();
  auto it = std::upper_bound(ps.begin(), ps.end(), t, [](const Rational& q, const AffinePiece& p) { return q < p.hi; });
  return it->at(t);
}

PLBijection compose(const PLBijection& v, const PLBijection& w) {
  if (!(v.context() == w.context())) throw ContextMismatch();
  std::vector<AffinePiece> out;
  for (const auto& p : v.pieces()) {
    // Split p's domain where its image crosses a piece boundary of w.
    const Rational ilo = p.image_lo();
    const Rational ihi = p.image_hi();
    std::vector<Rational> cuts{p.lo};
    for (const auto& q : w.pieces()) {
      if (ilo < q.lo && q.lo < ihi) cuts.push_back((q.lo - p.offset) / p.slope);
    }
    cuts.push_back(p.hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Rational mid = p.at(cuts[i]);
      const auto& ws = w.pieces();
      auto it = std::upper_bound(ws.begin(), ws.end(), mid, [](const Rational& t, const AffinePiece& q) { return t < q.hi; });
      out.push_back({cuts[i], cuts[i + 1], p.slope * it->slope, p.offset * it->slope + it->offset});
    }
  }
  return PLBijection(v.context(), std::move(out));
}

PLBijection inverse(const PLBijection& v) {
  std::vector<AffinePiece> out;
  for (const auto& p : v.pieces()) {
    const Rational s = Rational(1) / p.slope;
    out.push_back({p.image_lo(), p.image_hi(), s, -p.offset * s});
  }
  return PLBijection(v.context(), std::move(out));
}

bool commutes(const PLBijection& v, const PLBijection& w) { return compose(v, w) == compose(w, v); }

std::vector<Rational> discontinuities(const PLBijection& v) {
  std::vector<Rational> out;
  const auto& ps = v.pieces();
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    if (!(ps[i].image_hi() == ps[i + 1].image_lo())) out.push_back(ps[i].hi);
  }
  return out;
}

bool is_continuous(const PLBijection& v) { return discontinuities(v).empty(); }

bool is_circle_continuous(const PLBijection& v) {
  const Rational& r = v.context().r();
  auto same_mod_r = [&](const Rational& left_limit, const Rational& value) {
    return left_limit == value || (left_limit == r && value.is_zero());
  };
  const auto& ps = v.pieces();
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    if (!same_mod_r(ps[i].image_hi(), ps[i + 1].image_lo())) return false;
  }
  // The point r is identified with 0.
  return same_mod_r(ps.back().image_hi(), ps.front().image_lo());
}

PLBijection rotation(const GroupContext& ctx, const Rational& c) {
  const Rational& r = ctx.r();
  if (c.sign() < 0 || !(c < r)) throw ContractViolation("rotation amount must lie in [0;r)");
  if (c.is_zero()) return PLBijection(ctx, {{0, r, 1, 0}});
  return PLBijection(ctx, {{0, r - c, 1, c}, {r - c, r, 1, c - r}});
}

std::string to_string(const PLBijection& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.pieces().size(); ++i) {
    const auto& p = v.pieces()[i];
    if (i > 0) os << ", ";
    os << "[" << p.lo << ";" << p.hi << ")->[" << p.image_lo() << ";" << p.image_hi() << ")";
  }
  return os.str();
}

}  // namespace thompson
