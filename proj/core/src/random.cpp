#include "thompson/random.hpp"

#include <algorithm>
#include <numeric>

#include "thompson/error.hpp"

namespace thompson::gen {

using logic::Formula;
using logic::FormulaTemplate;
using logic::InterpretationData;
using logic::Signature;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::vector<Rational> random_subdivision(Rng& rng, const GroupContext& ctx, const Rational& lo, const Rational& hi,
                                         std::size_t leaves) {
  std::vector<Rational> cuts{lo, hi};
  const auto n = static_cast<std::size_t>(ctx.n());
  while (cuts.size() - 1 < leaves) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(cuts.size()) - 2));
    const Rational a = cuts[i];
    const Rational step = (cuts[i + 1] - a) / static_cast<long>(n);
    std::vector<Rational> inner;
    for (std::size_t k = 1; k < n; ++k) inner.push_back(a + step * static_cast<long>(k));
    cuts.insert(cuts.begin() + static_cast<std::ptrdiff_t>(i) + 1, inner.begin(), inner.end());
  }
  return cuts;
}

namespace {

std::size_t leaf_count(Rng& rng, const GroupContext& ctx, std::size_t max_leaves) {
  const auto n = static_cast<std::int64_t>(ctx.n());
  const std::int64_t splits = std::max<std::int64_t>(0, (static_cast<std::int64_t>(max_leaves) - 1) / (n - 1));
  return static_cast<std::size_t>(1 + uniform(rng, 0, splits) * (n - 1));
}

PLMap map_from_cuts(const GroupContext& ctx, const std::vector<Rational>& d, const std::vector<Rational>& e) {
  std::vector<Breakpoint> bp;
  for (std::size_t i = 0; i < d.size(); ++i) bp.push_back({d[i], e[i]});
  return PLMap(ctx, std::move(bp));
}

}  // namespace

PLMap random_map(Rng& rng, const GroupContext& ctx, std::size_t max_leaves) {
  const std::size_t leaves = leaf_count(rng, ctx, max_leaves);
  return map_from_cuts(ctx, random_subdivision(rng, ctx, 0, ctx.r(), leaves),
                       random_subdivision(rng, ctx, 0, ctx.r(), leaves));
}

PLMap random_F_circle(Rng& rng, const GroupContext& ctx, std::size_t max_leaves) {
  // Window endpoints on the grid r k / n^3, strictly inside ]0; r[.
  const std::int64_t grid = static_cast<std::int64_t>(ctx.n()) * ctx.n() * ctx.n();
  const std::int64_t i = uniform(rng, 1, grid - 2);
  const std::int64_t j = uniform(rng, i + 1, grid - 1);
  const Rational alpha = ctx.r() * Rational(i, grid);
  const Rational beta = ctx.r() * Rational(j, grid);
  // Redraw equal subdivisions a few times, so the identity is rare.
  std::vector<Rational> d, e;
  for (int attempt = 0; attempt < 8 && d == e; ++attempt) {
    const std::size_t leaves = leaf_count(rng, ctx, max_leaves);
    d = random_subdivision(rng, ctx, alpha, beta, leaves);
    e = random_subdivision(rng, ctx, alpha, beta, leaves);
  }
  d.insert(d.begin(), Rational(0));
  e.insert(e.begin(), Rational(0));
  d.push_back(ctx.r());
  e.push_back(ctx.r());
  std::vector<Breakpoint> bp;
  for (std::size_t k = 0; k < d.size(); ++k) bp.push_back({d[k], e[k]});
  return PLMap(ctx, normalize_breakpoints(std::move(bp)));
}

PLBijection random_V(Rng& rng, const GroupContext& ctx, std::size_t max_leaves) {
  const std::size_t leaves = leaf_count(rng, ctx, max_leaves);
  const auto d = random_subdivision(rng, ctx, 0, ctx.r(), leaves);
  const auto e = random_subdivision(rng, ctx, 0, ctx.r(), leaves);
  std::vector<std::size_t> order(leaves);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return PLBijection::from_partitions(ctx, d, e, order);
}

WreathElement random_normal_form(Rng& rng, std::int64_t max_shift, std::int64_t max_exp, std::int64_t width) {
  const std::int64_t shift = uniform(rng, -max_shift, max_shift);
  const std::int64_t start = uniform(rng, -3, 3);
  const std::int64_t w = uniform(rng, 0, width);
  std::map<std::int64_t, std::int64_t> coeffs;
  for (std::int64_t k = start; k < start + w; ++k) coeffs[k] = uniform(rng, -max_exp, max_exp);
  return WreathElement(shift, std::move(coeffs));
}

std::string random_word(Rng& rng, std::size_t length) {
  static const char kLetters[] = {'a', 'b', 'A', 'B'};
  std::string out;
  for (std::size_t i = 0; i < length; ++i) {
    if (i) out += ' ';
    out += kLetters[uniform(rng, 0, 3)];
  }
  return out;
}

CommutatorList random_commutator_list(Rng& rng, const GroupContext& ctx, std::size_t length, bool f_circle) {
  CommutatorList out;
  for (std::size_t i = 0; i < length; ++i) {
    if (f_circle) {
      out.push_back({random_F_circle(rng, ctx), random_F_circle(rng, ctx)});
    } else {
      out.push_back({random_map(rng, ctx), random_map(rng, ctx)});
    }
  }
  return out;
}

logic::FiniteStructure random_structure(Rng& rng, const Signature& sig, int universe) {
  logic::FiniteStructure m(universe);
  for (const auto& [name, arity] : sig.relations) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    for (;;) {
      if (uniform(rng, 0, 1)) tuples.push_back(t);
      std::size_t i = t.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++t[i] < universe) {
          done = false;
          break;
        }
        t[i] = 0;
      }
      if (done) break;
    }
    m.add_relation(name, arity, tuples);
  }
  for (const auto& [name, arity] : sig.functions) {
    std::size_t size = 1;
    for (int i = 0; i < arity; ++i) size *= static_cast<std::size_t>(universe);
    std::vector<int> table(size);
    for (auto& v : table) v = static_cast<int>(uniform(rng, 0, universe - 1));
    m.add_function(name, arity, std::move(table));
  }
  return m;
}

namespace {

class FormulaGenerator {
 public:
  FormulaGenerator(Rng& rng, const Signature& sig) : rng_(rng), sig_(sig) {
    for (const auto& [name, arity] : sig.relations) relations_.emplace_back(name, arity);
  }

  Formula atom(const std::vector<std::string>& scope) {
    if (scope.empty()) return uniform(rng_, 0, 1) ? logic::f_true() : logic::f_false();
    auto pick = [&] { return scope[static_cast<std::size_t>(uniform(rng_, 0, static_cast<std::int64_t>(scope.size()) - 1))]; };
    if (relations_.empty() || uniform(rng_, 0, 3) == 0) {
      return logic::eq(logic::Term::var(pick()), logic::Term::var(pick()));
    }
    const auto& [name, arity] = relations_[static_cast<std::size_t>(uniform(rng_, 0, static_cast<std::int64_t>(relations_.size()) - 1))];
    std::vector<std::string> args;
    for (int i = 0; i < arity; ++i) args.push_back(pick());
    return logic::rel_vars(name, args);
  }

  Formula quantified(const std::vector<std::string>& scope, int depth) {
    std::vector<std::string> inner = scope;
    std::vector<std::string> bound;
    const std::int64_t count = uniform(rng_, 1, 2);
    for (std::int64_t i = 0; i < count; ++i) {
      bound.push_back("q" + std::to_string(next_++));
      inner.push_back(bound.back());
    }
    Formula body = formula(inner, depth - 1);
    return uniform(rng_, 0, 1) ? logic::exists(std::move(bound), std::move(body))
                               : logic::forall(std::move(bound), std::move(body));
  }

  Formula formula(const std::vector<std::string>& scope, int depth) {
    if (depth <= 0 || (!scope.empty() && uniform(rng_, 0, 3) == 0)) return atom(scope);
    switch (uniform(rng_, 0, 6)) {
      case 0:
        return logic::neg(formula(scope, depth - 1));
      case 1:
        return logic::conj(formula(scope, depth - 1), formula(scope, depth - 1));
      case 2:
        return logic::disj(formula(scope, depth - 1), formula(scope, depth - 1));
      case 3:
        return logic::implies(formula(scope, depth - 1), formula(scope, depth - 1));
      case 4:
        return logic::iff(formula(scope, depth - 1), formula(scope, depth - 1));
      default:
        return quantified(scope, depth);
    }
  }

 private:
  Rng& rng_;
  const Signature& sig_;
  std::vector<std::pair<std::string, int>> relations_;
  std::size_t next_ = 0;
};

std::vector<std::string> block_names(const std::string& base, int dim) {
  std::vector<std::string> out;
  for (int j = 1; j <= dim; ++j) out.push_back(base + "_" + std::to_string(j));
  return out;
}

std::vector<std::string> concat(const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::string> out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

Formula random_formula(Rng& rng, const Signature& sig, const std::vector<std::string>& scope, int depth) {
  return FormulaGenerator(rng, sig).formula(scope, depth);
}

Formula random_sentence(Rng& rng, const Signature& sig, int depth) {
  return FormulaGenerator(rng, sig).quantified({}, std::max(depth, 1));
}

InterpretationData random_admissible_interpretation(Rng& rng, const logic::FiniteStructure& n, const Signature& sigma,
                                                    int dim) {
  if (sigma.has_functions()) throw ContractViolation("random interpretations are built for relational signatures");
  const Signature gamma = n.signature();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    InterpretationData data;
    data.dim = dim;
    data.sigma = sigma;
    if (uniform(rng, 0, 1)) {
      data.param_vars = {"x"};
      data.param_values = {static_cast<int>(uniform(rng, 0, n.universe() - 1))};
    }
    FormulaGenerator g(rng, gamma);
    auto scope_with_params = [&](std::vector<std::string> vars) {
      vars.insert(vars.end(), data.param_vars.begin(), data.param_vars.end());
      return vars;
    };

    const auto y = block_names("y", dim);
    data.phi = {y, uniform(rng, 0, 2) == 0 ? logic::f_true() : g.formula(scope_with_params(y), 2)};

    // psi: kernel of a few definable features theta_i(t), optionally with
    // equality of some coordinates.
    const auto t = block_names("t", dim);
    std::vector<Formula> features;
    const std::int64_t feature_count = uniform(rng, 0, 2);
    for (std::int64_t i = 0; i < feature_count; ++i) features.push_back(g.formula(scope_with_params(t), 2));
    std::vector<bool> keep(static_cast<std::size_t>(dim));
    for (auto&& k : keep) k = uniform(rng, 0, 2) != 0;
    if (features.empty()) keep.assign(keep.size(), true);

    auto class_equal = [&](const std::vector<std::string>& u, const std::vector<std::string>& v) {
      std::vector<Formula> parts;
      for (std::size_t j = 0; j < keep.size(); ++j) {
        if (keep[j]) parts.push_back(logic::eq(logic::Term::var(u[j]), logic::Term::var(v[j])));
      }
      for (const auto& f : features) {
        parts.push_back(logic::iff(logic::instantiate({t, f}, u), logic::instantiate({t, f}, v)));
      }
      return logic::conj_all(std::move(parts));
    };
    const auto u = block_names("u", dim);
    const auto v = block_names("v", dim);
    data.psi = {concat({u, v}), class_equal(u, v)};

    for (const auto& [name, arity] : sigma.relations) {
      std::vector<std::vector<std::string>> blocks;
      for (int i = 1; i <= arity; ++i) blocks.push_back(block_names("y" + std::to_string(i), dim));
      const auto vars = concat(blocks);
      Formula body;
      if (uniform(rng, 0, 2) == 0) {
        body = g.formula(scope_with_params(vars), 2);
      } else {
        // Boolean combination of atoms that only depend on classes.
        std::vector<Formula> atoms;
        for (const auto& b : blocks) {
          for (const auto& f : features) atoms.push_back(logic::instantiate({t, f}, b));
        }
        for (const auto& b1 : blocks) {
          for (const auto& b2 : blocks) atoms.push_back(class_equal(b1, b2));
        }
        auto pick = [&] { return atoms[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(atoms.size()) - 1))]; };
        body = atoms.empty() ? logic::f_true() : pick();
        const std::int64_t extra = atoms.empty() ? 0 : uniform(rng, 0, 2);
        for (std::int64_t i = 0; i < extra; ++i) {
          Formula next = uniform(rng, 0, 2) == 0 ? logic::neg(pick()) : pick();
          body = uniform(rng, 0, 1) ? logic::conj(std::move(body), std::move(next))
                                    : logic::disj(std::move(body), std::move(next));
        }
      }
      data.xi.emplace(name, FormulaTemplate{vars, std::move(body)});
    }
    if (logic::admissible(n, data)) return data;
  }
  throw Error("no admissible interpretation found in 1000 attempts");
}

}  // namespace thompson::gen
