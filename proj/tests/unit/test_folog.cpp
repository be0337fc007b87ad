#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "helpers.hpp"
#include "thompson/constructions.hpp"
#include "thompson/definability.hpp"
#include "thompson/error.hpp"
#include "thompson/logic/interpretation.hpp"
#include "thompson/logic/io.hpp"
#include "thompson/logic/parser.hpp"
#include "thompson/logic/structure.hpp"
#include "thompson/random.hpp"

namespace thompson::logic {
namespace {

const Signature kGamma{{{"E", 2}, {"P", 1}}, {}};
const Signature kSigma{{{"R", 2}, {"Q", 1}}, {}};

/// Independent evaluator over relational formulas: plain recursion with an
/// explicit environment, no compilation.
bool oracle(const FiniteStructure& m, const Formula& f, std::map<std::string, int>& env) {
  switch (f.op) {
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Eq:
      return env.at(f.terms[0].name) == env.at(f.terms[1].name);
    case Op::Rel: {
      std::vector<int> args;
      for (const auto& t : f.terms) args.push_back(env.at(t.name));
      return m.holds(f.name, args);
    }
    case Op::Not:
      return !oracle(m, f.subs[0], env);
    case Op::And:
      return oracle(m, f.subs[0], env) && oracle(m, f.subs[1], env);
    case Op::Or:
      return oracle(m, f.subs[0], env) || oracle(m, f.subs[1], env);
    case Op::Implies:
      return !oracle(m, f.subs[0], env) || oracle(m, f.subs[1], env);
    case Op::Iff:
      return oracle(m, f.subs[0], env) == oracle(m, f.subs[1], env);
    case Op::Exists:
    case Op::Forall: {
      if (f.vars.size() > 1) {
        Formula inner = f;
        inner.vars.erase(inner.vars.begin());
        Formula outer = f;
        outer.vars = {f.vars.front()};
        outer.subs = {inner};
        return oracle(m, outer, env);
      }
      const auto saved = env.find(f.vars[0]) == env.end() ? std::nullopt : std::optional<int>(env[f.vars[0]]);
      bool result = f.op == Op::Forall;
      for (int v = 0; v < m.universe(); ++v) {
        env[f.vars[0]] = v;
        const bool b = oracle(m, f.subs[0], env);
        if (f.op == Op::Exists && b) result = true;
        if (f.op == Op::Forall && !b) result = false;
      }
      if (saved) {
        env[f.vars[0]] = *saved;
      } else {
        env.erase(f.vars[0]);
      }
      return result;
    }
  }
  return false;
}

FiniteStructure fixture_structure(const std::string& name) {
  std::ifstream in(std::string(THOMPSON_TEST_DATA_DIR) + "/logic/" + name);
  return read_structure(in);
}

InterpretationData fixture_interpretation(const std::string& name) {
  std::ifstream in(std::string(THOMPSON_TEST_DATA_DIR) + "/logic/" + name);
  return read_interpretation(in);
}

TEST(Parser, Examples) {
  const Formula f = parse("forall y1 (s(y1,y1) -> y1 = y1)");
  ASSERT_EQ(f.op, Op::Forall);
  EXPECT_EQ(f.vars, std::vector<std::string>{"y1"});
  EXPECT_EQ(f.subs[0].op, Op::Implies);
  EXPECT_EQ(f.subs[0].subs[0], rel_vars("s", {"y1", "y1"}));
  EXPECT_EQ(parse("∀x ∃y (E(x,y) ∧ ¬P(y))"), parse("forall x exists y (E(x, y) & ~P(y))"));
  EXPECT_EQ(parse("x != y"), neg(eq(Term::var("x"), Term::var("y"))));
  EXPECT_EQ(parse("forall x y (x = y)").subs[0], eq(Term::var("x"), Term::var("y")));
  EXPECT_EQ(parse("forall x y (x = y)").vars, (std::vector<std::string>{"x", "y"}));
}

TEST(Parser, Precedence) {
  EXPECT_EQ(parse("~A & B | C -> D <-> E"),
            iff(implies(disj(conj(neg(rel("A", {})), rel("B", {})), rel("C", {})), rel("D", {})), rel("E", {})));
  EXPECT_EQ(parse("A -> B -> C"), implies(rel("A", {}), implies(rel("B", {}), rel("C", {}))));
  EXPECT_EQ(parse("A <-> B <-> C"), iff(iff(rel("A", {}), rel("B", {})), rel("C", {})));
}

TEST(Parser, Errors) {
  try {
    parse("forall x (E(x, x)");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 17u);
  }
  EXPECT_THROW(parse("E(x,"), SyntaxError);
  EXPECT_THROW(parse("x = "), SyntaxError);
  EXPECT_THROW(parse("forall (x)"), SyntaxError);
  EXPECT_THROW(parse("E(x) $"), SyntaxError);
}

TEST(Parser, RenderRoundTrip) {
  gen::Rng rng(51);
  for (int i = 0; i < 300; ++i) {
    const Formula f = gen::random_formula(rng, kGamma, {"x", "y"}, 4);
    EXPECT_EQ(parse(render(f)), f) << render(f);
  }
  const Formula g = parse("forall x (f(x, c) = g(g(x)) | ~R(f(c, c)))");
  EXPECT_EQ(parse(render(g)), g);
}

TEST(Formula, FreeVariablesAndSubstitution) {
  const Formula f = parse("exists y (E(x, y) & forall x P(x))");
  EXPECT_EQ(free_variables(f), std::set<std::string>{"x"});
  EXPECT_FALSE(is_sentence(f));
  // Substituting y for x must rename the bound y.
  const Formula g = substitute(f, {{"x", Term::var("y")}});
  EXPECT_EQ(free_variables(g), std::set<std::string>{"y"});
  EXPECT_TRUE(alpha_equivalent(g, parse("exists z (E(y, z) & forall x P(x))")));
  EXPECT_FALSE(alpha_equivalent(g, parse("exists y (E(y, y) & forall x P(x))")));
}

TEST(Evaluate, Examples) {
  gen::Rng rng(52);
  for (int u = 1; u <= 4; ++u) {
    const FiniteStructure m = gen::random_structure(rng, kGamma, u);
    EXPECT_TRUE(evaluate(m, parse("exists x (x = x)")));
    EXPECT_FALSE(evaluate(m, parse("forall x (x != x)")));
  }
  const FiniteStructure g = fixture_structure("graph.struct");
  EXPECT_TRUE(evaluate(g, parse("E(x, y)"), {{"x", 0}, {"y", 2}}));
  EXPECT_FALSE(evaluate(g, parse("E(x, y)"), {{"x", 2}, {"y", 0}}));
  EXPECT_THROW(evaluate(g, parse("E(x, y)"), {{"x", 0}}), Error);
  EXPECT_THROW(evaluate(g, parse("F(x)"), {{"x", 0}}), Error);
  EXPECT_THROW(evaluate(g, parse("E(x)"), {{"x", 0}}), Error);
}

TEST(Evaluate, AgreesWithOracle) {
  gen::Rng rng(53);
  for (int i = 0; i < 400; ++i) {
    const FiniteStructure m = gen::random_structure(rng, kGamma, static_cast<int>(gen::uniform(rng, 1, 3)));
    const Formula f = gen::random_formula(rng, kGamma, {"x", "y"}, 4);
    for (int x = 0; x < m.universe(); ++x) {
      for (int y = 0; y < m.universe(); ++y) {
        std::map<std::string, int> env{{"x", x}, {"y", y}};
        EXPECT_EQ(evaluate(m, f, env), oracle(m, f, env)) << render(f);
      }
    }
  }
}

TEST(Evaluate, QuantifierDuality) {
  gen::Rng rng(54);
  for (int i = 0; i < 100; ++i) {
    const FiniteStructure m = gen::random_structure(rng, kGamma, 3);
    const Formula phi = gen::random_formula(rng, kGamma, {"x", "y"}, 3);
    EXPECT_EQ(evaluate(m, neg(exists({"x"}, phi)), {{"y", 1}}), evaluate(m, forall({"x"}, neg(phi)), {{"y", 1}}));
  }
}

TEST(Evaluate, CompiledFormulaMatches) {
  gen::Rng rng(55);
  const FiniteStructure m = gen::random_structure(rng, kGamma, 4);
  const Formula f = gen::random_formula(rng, kGamma, {"x", "y"}, 4);
  const CompiledFormula c(m, f, {"x", "y"});
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      const int v[] = {x, y};
      EXPECT_EQ(c(v), evaluate(m, f, {{"x", x}, {"y", y}}));
    }
  }
}

FiniteStructure z3_with_plus() {
  FiniteStructure m(3);
  std::vector<int> plus;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) plus.push_back((a + b) % 3);
  }
  m.add_function("plus", 2, plus);
  m.add_constant("c", 1);
  m.add_relation("P", 1, {{0}, {2}});
  return m;
}

TEST(Relationalize, Examples) {
  const FiniteStructure m = z3_with_plus();
  const FiniteStructure r = relationalize_structure(m);
  EXPECT_EQ(graph_name("plus"), "plus'");
  const auto& plus = r.relations().at("plus'");
  EXPECT_EQ(plus.arity, 3);
  EXPECT_EQ(std::count(plus.table.begin(), plus.table.end(), true), 9);
  const auto& c = r.relations().at("c'");
  EXPECT_EQ(c.arity, 1);
  EXPECT_EQ(c.table, (std::vector<bool>{false, true, false}));
  EXPECT_EQ(relationalize(m.signature()), r.signature());
  EXPECT_FALSE(r.signature().has_functions());
}

TEST(Relationalize, PreservesTruth) {
  const FiniteStructure m = z3_with_plus();
  const FiniteStructure r = relationalize_structure(m);
  const Signature sig = m.signature();
  const std::vector<std::string> corpus = {
      "forall x (plus(x, c) != x)",
      "exists x (plus(x, x) = c)",
      "forall x y (plus(x, y) = plus(y, x))",
      "forall x y z (plus(plus(x, y), z) = plus(x, plus(y, z)))",
      "exists e forall x (plus(x, e) = x)",
      "forall x exists y (plus(x, y) = plus(c, plus(c, c)))",
      "P(plus(c, c))",
      "P(c)",
      "forall x (P(x) -> P(plus(x, plus(c, c))))",
      "exists x (P(x) & P(plus(x, c)))",
      "forall x (P(plus(x, x)) <-> P(x))",
      "~exists x (plus(x, c) = x)",
      "forall x y (plus(x, c) = plus(y, c) -> x = y)",
      "exists x y (x != y & plus(x, y) = c)",
      "forall x (x = c | P(x))",
      "plus(c, c) = plus(plus(c, c), plus(c, c))",
      "forall x (P(x) | P(plus(x, c)))",
      "exists x (~P(x) & plus(x, x) = x)",
      "forall x exists y (P(plus(x, y)) & ~P(y))",
      "exists x forall y (plus(x, y) = y)",
  };
  for (const auto& text : corpus) {
    const Formula alpha = parse(text, sig);
    const Formula beta = relationalize_formula(alpha);
    EXPECT_TRUE(is_relational(beta));
    EXPECT_EQ(evaluate(m, alpha), evaluate(r, beta)) << text;
  }
}

InterpretationData mod2_interpretation() {
  InterpretationData d;
  d.dim = 1;
  d.sigma = Signature{{{"S", 2}}, {}};
  d.phi = {{"y"}, f_true()};
  d.psi = {{"u", "v"}, parse("P(u) <-> P(v)")};
  d.xi["S"] = {{"s", "t"}, parse("P(s) & ~P(t)")};
  return d;
}

TEST(Admissible, Examples) {
  const FiniteStructure n = fixture_structure("graph.struct");
  EXPECT_TRUE(admissible(n, identity_interpretation(n.signature())));
  EXPECT_TRUE(admissible(n, mod2_interpretation()));
  EXPECT_FALSE(admissible(n, fixture_interpretation("bad.interp")));
  EXPECT_EQ(analyze(n, fixture_interpretation("bad.interp")).reason, "xi S is not compatible with psi");

  InterpretationData loose = mod2_interpretation();
  loose.psi = {{"u", "v"}, f_true()};
  EXPECT_FALSE(admissible(n, loose));

  // E is not transitive on the graph: 0 -> 1 -> 2 -> 3 but not 0 -> 3.
  InterpretationData nontransitive = mod2_interpretation();
  nontransitive.psi = {{"u", "v"}, parse("u = v | E(u, v) | E(v, u)")};
  nontransitive.xi["S"] = {{"s", "t"}, f_false()};
  const InterpretationAnalysis a = analyze(n, nontransitive);
  EXPECT_FALSE(a.admissible);
  EXPECT_NE(a.reason.find("transitive"), std::string::npos);

  InterpretationData empty = mod2_interpretation();
  empty.phi = {{"y"}, f_false()};
  EXPECT_FALSE(admissible(n, empty));
}

TEST(Admissible, InvariantUnderRenaming) {
  gen::Rng rng(56);
  for (int i = 0; i < 60; ++i) {
    const int u = static_cast<int>(gen::uniform(rng, 1, 4));
    const FiniteStructure n = gen::random_structure(rng, kGamma, u);
    InterpretationData data = mod2_interpretation();
    data.psi = {{"u", "v"}, gen::random_formula(rng, kGamma, {"u", "v"}, 2)};
    data.xi["S"] = {{"s", "t"}, gen::random_formula(rng, kGamma, {"s", "t"}, 2)};
    std::vector<int> perm(static_cast<std::size_t>(u));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    FiniteStructure renamed(u);
    for (const auto& [name, table] : n.relations()) {
      std::vector<std::vector<int>> tuples;
      for (int a = 0; a < u; ++a) {
        if (table.arity == 1 && n.holds(name, std::vector<int>{a})) tuples.push_back({perm[a]});
        for (int b = 0; b < u && table.arity == 2; ++b) {
          if (n.holds(name, std::vector<int>{a, b})) tuples.push_back({perm[a], perm[b]});
        }
      }
      renamed.add_relation(name, table.arity, tuples);
    }
    EXPECT_EQ(admissible(n, data), admissible(renamed, data));
  }
}

TEST(Quotient, Examples) {
  const FiniteStructure n = fixture_structure("graph.struct");
  EXPECT_EQ(quotient(n, identity_interpretation(n.signature())), n);

  const FiniteStructure m = quotient(n, mod2_interpretation());
  EXPECT_EQ(m.universe(), 2);
  // Class 0 holds the P-vertices {0, 2}, class 1 the others.
  EXPECT_TRUE(m.holds("S", std::vector<int>{0, 1}));
  EXPECT_FALSE(m.holds("S", std::vector<int>{1, 0}));

  const FiniteStructure pairs = quotient(n, fixture_interpretation("pairs.interp"));
  // Edges 0->1, 0->2, 1->2, 2->3, 3->0 have four distinct sources.
  EXPECT_EQ(pairs.universe(), 4);
  EXPECT_THROW(quotient(n, fixture_interpretation("bad.interp")), ContractViolation);
}

TEST(Reduce, WorkedExample) {
  InterpretationData d;
  d.dim = 1;
  d.sigma = Signature{{{"sigma", 2}}, {}};
  d.param_vars = {"x"};
  d.param_values = {0};
  d.phi = {{"y"}, rel_vars("phi", {"x", "y"})};
  d.psi = {{"y1", "y2"}, rel_vars("psi", {"x", "y1", "y2"})};
  d.xi["sigma"] = {{"y1", "y2"}, rel_vars("xi", {"x", "y1", "y2"})};
  const Formula alpha = parse("forall y1 y2 y3 (sigma(y1, y2) & sigma(y1, y3) -> y2 = y3)");
  const Formula expected = parse(
      "forall y1 y2 y3 (phi(x, y1) & phi(x, y2) & phi(x, y3) -> "
      "(xi(x, y1, y2) & xi(x, y1, y3) -> psi(x, y2, y3)))");
  const Formula got = reduce(alpha, d);
  EXPECT_TRUE(alpha_equivalent(got, expected)) << render(got);
  EXPECT_EQ(free_variables(got), std::set<std::string>{"x"});
}

TEST(Reduce, SmallestCase) {
  InterpretationData d = mod2_interpretation();
  d.phi = {{"y"}, rel_vars("P", {"y"})};
  d.psi = {{"u", "v"}, rel_vars("E", {"u", "v"})};
  EXPECT_TRUE(alpha_equivalent(reduce(parse("exists y (y = y)"), d), parse("exists y (P(y) & E(y, y))")));
}

TEST(Reduce, DimensionTwoBlocks) {
  const InterpretationData d = fixture_interpretation("pairs.interp");
  const Formula got = reduce(parse("exists y (S(y, y))"), d);
  EXPECT_TRUE(alpha_equivalent(got, parse("exists a b (E(a, b) & (E(a, a) & ~(a = x)))"))) << render(got);
  EXPECT_THROW(reduce(parse("S(y, y)"), d), Error);
}

TEST(Reduce, SoundOnRandomInstances) {
  gen::Rng rng(57);
  std::size_t agreeing = 0, true_count = 0;
  for (int k = 0; k < 10; ++k) {
    const int dim = static_cast<int>(gen::uniform(rng, 1, 2));
    const FiniteStructure n = gen::random_structure(rng, kGamma, static_cast<int>(gen::uniform(rng, 1, 4)));
    const InterpretationData data = gen::random_admissible_interpretation(rng, n, kSigma, dim);
    const FiniteStructure m = quotient(n, data);
    for (int s = 0; s < 30; ++s) {
      const Formula alpha = gen::random_sentence(rng, kSigma, 3);
      const bool direct = evaluate(m, alpha);
      EXPECT_EQ(direct, reduced_holds(n, alpha, data)) << render(alpha);
      agreeing += direct == reduced_holds(n, alpha, data);
      true_count += direct;
    }
  }
  EXPECT_EQ(agreeing, 300u);
  // Both truth values occur, so the check is not vacuous.
  EXPECT_GT(true_count, 0u);
  EXPECT_LT(true_count, 300u);
}

TEST(Compose, ReductionThroughCompositeMatchesTwoSteps) {
  // outer: Gamma = {E, P} interpreted in the graph's signature by pairs;
  // inner: Sigma = {S} interpreted in {E, P}... here the outer target is
  // the pairs quotient, whose signature is {S}; inner reads S as an edge.
  const FiniteStructure n = fixture_structure("graph.struct");
  InterpretationData outer = fixture_interpretation("pairs.interp");
  outer.param_vars.clear();
  outer.param_values.clear();
  outer.xi["S"] = {{"s_1", "s_2", "t_1", "t_2"}, parse("E(s_1, t_1)")};
  ASSERT_TRUE(admissible(n, outer));
  InterpretationData inner;
  inner.dim = 1;
  inner.sigma = Signature{{{"T", 2}}, {}};
  inner.phi = {{"y"}, parse("exists z S(y, z)")};
  inner.psi = {{"u", "v"}, parse("u = v")};
  inner.xi["T"] = {{"a", "b"}, parse("exists c (S(a, c) & S(c, b))")};
  const FiniteStructure middle = quotient(n, outer);
  ASSERT_TRUE(admissible(middle, inner));
  const FiniteStructure top = quotient(middle, inner);
  const InterpretationData both = compose(inner, outer);
  ASSERT_TRUE(admissible(n, both));
  EXPECT_EQ(quotient(n, both).universe(), top.universe());
  gen::Rng rng(58);
  for (int i = 0; i < 40; ++i) {
    const Formula alpha = gen::random_sentence(rng, inner.sigma, 3);
    const bool direct = evaluate(top, alpha);
    EXPECT_EQ(direct, reduced_holds(n, alpha, both)) << render(alpha);
    EXPECT_EQ(direct, reduced_holds(n, reduce(alpha, inner), outer)) << render(alpha);
  }
}

TEST(LogicIO, StructureRoundTrip) {
  gen::Rng rng(59);
  for (int i = 0; i < 20; ++i) {
    const FiniteStructure m = gen::random_structure(rng, kGamma, 3);
    std::stringstream s;
    write_structure(s, m);
    EXPECT_EQ(read_structure(s), m);
  }
  const FiniteStructure z = z3_with_plus();
  std::stringstream s;
  write_structure(s, z);
  EXPECT_EQ(read_structure(s), z);
}

TEST(LogicIO, InterpretationRoundTrip) {
  for (const char* name : {"parity.interp", "pairs.interp", "bad.interp"}) {
    const InterpretationData d = fixture_interpretation(name);
    std::stringstream s;
    write_interpretation(s, d);
    EXPECT_EQ(read_interpretation(s), d) << name;
  }
  const InterpretationData p = fixture_interpretation("pairs.interp");
  EXPECT_EQ(p.dim, 2);
  EXPECT_EQ(p.param_values, std::vector<int>{0});
}

TEST(LogicIO, RejectsMalformedFiles) {
  std::istringstream bad_structure("universe 2\nrelation E 2\n0 5\nend\n");
  EXPECT_THROW(read_structure(bad_structure), Error);
  std::istringstream bad_interp("dim 1\nphi (y) (z) : true\n");
  EXPECT_THROW(read_interpretation(bad_interp), Error);
}

TEST(Definability, MembershipFormulaShape) {
  const Formula f = wreath_membership_formula(2, 1);
  EXPECT_EQ(free_variables(f), (std::set<std::string>{"x", "y", "z"}));
  const std::string text = render(f);
  std::size_t foralls = 0;
  for (auto p = text.find("forall"); p != std::string::npos; p = text.find("forall", p + 1)) ++foralls;
  EXPECT_EQ(foralls, 1u);
  EXPECT_EQ(text.find("exists"), std::string::npos);
  const Signature sig{{}, {{"mul", 2}, {"inv", 1}, {"a", 0}, {"b", 0}}};
  EXPECT_EQ(parse(text, sig), f);
  EXPECT_THROW(wreath_membership_formula(0, 1), ContractViolation);
}

TEST(Definability, WitnessesForMembers) {
  const Generators g = thompson_generators();
  gen::Rng rng(60);
  for (int i = 0; i < 5; ++i) {
    const WreathElement u = gen::random_normal_form(rng, 3, 2, 3);
    const MembershipWitness w = membership_witness(u, g);
    EXPECT_TRUE(w.holds) << u.to_string();
    EXPECT_EQ(w.pool_size, 50u);
  }
}

TEST(Definability, NoWitnessForABumpOutsideTheCopy) {
  const Generators g = thompson_generators();
  // A bump on the first rung with slopes (4, 1/4) is not in <a, b>.
  const PLMap x = make_bump(test::F(), g.alpha(0), g.alpha(1), 4, test::q("1/4"));
  EXPECT_FALSE(membership_search(x, g, 2, 1, 10));
  EXPECT_TRUE(membership_search(embed(WreathElement::b_at(0), g), g, 2, 1, 10));
}

}  // namespace
}  // namespace thompson::logic
