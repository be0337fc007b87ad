#include "thompson/logic/interpretation.hpp"

#include <algorithm>
#include <set>

#include "thompson/error.hpp"

namespace thompson::logic {

namespace {

std::size_t blocks_for(const InterpretationData& data, const std::string& symbol) {
  if (auto it = data.sigma.relations.find(symbol); it != data.sigma.relations.end()) {
    return static_cast<std::size_t>(it->second);
  }
  if (auto it = data.sigma.functions.find(symbol); it != data.sigma.functions.end()) {
    return static_cast<std::size_t>(it->second) + 1;
  }
  throw Error("symbol '" + symbol + "' is not in the interpreted signature");
}

void check_template(const FormulaTemplate& t, std::size_t expected, const std::set<std::string>& params,
                    const std::string& what) {
  if (t.vars.size() != expected) {
    throw Error(what + ": expected " + std::to_string(expected) + " template variables, got " +
                std::to_string(t.vars.size()));
  }
  const std::set<std::string> distinct(t.vars.begin(), t.vars.end());
  if (distinct.size() != t.vars.size()) throw Error(what + ": repeated template variable");
  for (const auto& v : free_variables(t.body)) {
    if (!distinct.contains(v) && !params.contains(v)) throw Error(what + ": stray free variable '" + v + "'");
  }
}

/// All tuples of {0..u-1}^k in increasing mixed-radix order.
std::vector<std::vector<int>> all_tuples(int u, std::size_t k) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(k, 0);
  for (;;) {
    out.push_back(t);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++t[i] < u) break;
      t[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

/// Evaluates a template on concatenated domain tuples.
class TemplateEvaluator {
 public:
  TemplateEvaluator(const FiniteStructure& n, const InterpretationData& data, const FormulaTemplate& t)
      : params_(data.param_values) {
    std::vector<std::string> order = data.param_vars;
    order.insert(order.end(), t.vars.begin(), t.vars.end());
    compiled_.emplace_back(n, t.body, std::move(order));
  }

  bool operator()(const std::vector<const std::vector<int>*>& blocks) const {
    std::vector<int> values = params_;
    for (const auto* b : blocks) values.insert(values.end(), b->begin(), b->end());
    return compiled_.front()(values);
  }

 private:
  std::vector<int> params_;
  std::vector<CompiledFormula> compiled_;
};

/// Calls f on every k-tuple of indices into [0; size).
template <typename F>
bool for_each_index_tuple(std::size_t size, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k, 0);
  if (size == 0 && k > 0) return true;
  for (;;) {
    if (!f(idx)) return false;
    std::size_t i = k;
    for (;;) {
      if (i == 0) return true;
      --i;
      if (++idx[i] < size) break;
      idx[i] = 0;
    }
  }
}

}  // namespace

void InterpretationData::validate() const {
  if (dim < 1) throw Error("interpretation dimension must be >= 1");
  if (param_vars.size() != param_values.size()) throw Error("parameter names and values differ in number");
  const std::set<std::string> params(param_vars.begin(), param_vars.end());
  if (params.size() != param_vars.size()) throw Error("repeated parameter variable");
  const auto n = static_cast<std::size_t>(dim);
  check_template(phi, n, params, "phi");
  check_template(psi, 2 * n, params, "psi");
  for (const auto& [name, arity] : sigma.relations) {
    if (!xi.contains(name)) throw Error("missing xi for relation '" + name + "'");
  }
  for (const auto& [name, arity] : sigma.functions) {
    if (!xi.contains(name)) throw Error("missing xi for function '" + name + "'");
  }
  for (const auto& [name, t] : xi) check_template(t, blocks_for(*this, name) * n, params, "xi " + name);
}

Formula instantiate(const FormulaTemplate& t, const std::vector<std::string>& actual) {
  if (actual.size() != t.vars.size()) throw Error("instantiate: wrong number of variables");
  std::map<std::string, Term> sigma;
  for (std::size_t i = 0; i < actual.size(); ++i) sigma.emplace(t.vars[i], Term::var(actual[i]));
  return substitute(t.body, sigma);
}

InterpretationAnalysis analyze(const FiniteStructure& n, const InterpretationData& data) {
  data.validate();
  InterpretationAnalysis out;
  auto fail = [&](std::string reason) {
    out.admissible = false;
    out.reason = std::move(reason);
    return out;
  };

  const TemplateEvaluator phi(n, data, data.phi);
  for (auto& t : all_tuples(n.universe(), static_cast<std::size_t>(data.dim))) {
    if (phi({&t})) out.domain.push_back(std::move(t));
  }
  const std::size_t size = out.domain.size();
  if (size == 0) return fail("phi defines the empty set");

  const TemplateEvaluator psi(n, data, data.psi);
  std::vector<std::vector<bool>> rel(size, std::vector<bool>(size));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) rel[i][j] = psi({&out.domain[i], &out.domain[j]});
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (!rel[i][i]) return fail("psi is not reflexive on the phi-set");
    for (std::size_t j = 0; j < size; ++j) {
      if (rel[i][j] != rel[j][i]) return fail("psi is not symmetric on the phi-set");
      if (!rel[i][j]) continue;
      for (std::size_t k = 0; k < size; ++k) {
        if (rel[j][k] && !rel[i][k]) return fail("psi is not transitive on the phi-set");
      }
    }
  }
  out.class_of.assign(size, -1);
  for (std::size_t i = 0; i < size; ++i) {
    if (out.class_of[i] >= 0) continue;
    const int c = static_cast<int>(out.representatives.size());
    out.representatives.push_back(i);
    for (std::size_t j = i; j < size; ++j) {
      if (rel[i][j]) out.class_of[j] = c;
    }
  }
  const std::size_t classes = out.representatives.size();

  for (const auto& [name, t] : data.xi) {
    const std::size_t blocks = blocks_for(data, name);
    const TemplateEvaluator xi(n, data, t);
    auto value = [&](const std::vector<std::size_t>& idx) {
      std::vector<const std::vector<int>*> args;
      for (std::size_t i : idx) args.push_back(&out.domain[i]);
      return xi(args);
    };
    // Truth at the representatives, indexed by class tuples.
    std::map<std::vector<std::size_t>, bool> on_classes;
    for_each_index_tuple(classes, blocks, [&](const std::vector<std::size_t>& cls) {
      std::vector<std::size_t> reps;
      for (std::size_t c : cls) reps.push_back(out.representatives[c]);
      on_classes.emplace(cls, value(reps));
      return true;
    });
    const bool compatible = for_each_index_tuple(size, blocks, [&](const std::vector<std::size_t>& idx) {
      std::vector<std::size_t> cls;
      for (std::size_t i : idx) cls.push_back(static_cast<std::size_t>(out.class_of[i]));
      return value(idx) == on_classes.at(cls);
    });
    if (!compatible) return fail("xi " + name + " is not compatible with psi");

    if (data.sigma.functions.contains(name)) {
      const bool total = for_each_index_tuple(classes, blocks - 1, [&](const std::vector<std::size_t>& args) {
        std::size_t hits = 0;
        std::vector<std::size_t> cls = args;
        cls.push_back(0);
        for (std::size_t c = 0; c < classes; ++c) {
          cls.back() = c;
          if (on_classes.at(cls)) ++hits;
        }
        return hits == 1;
      });
      if (!total) return fail("xi " + name + " is not the graph of a total operation on the classes");
    }
  }
  out.admissible = true;
  return out;
}

bool admissible(const FiniteStructure& n, const InterpretationData& data) { return analyze(n, data).admissible; }

FiniteStructure quotient(const FiniteStructure& n, const InterpretationData& data) {
  const InterpretationAnalysis a = analyze(n, data);
  if (!a.admissible) throw ContractViolation("quotient of inadmissible data: " + a.reason);
  const std::size_t classes = a.representatives.size();
  FiniteStructure out(static_cast<int>(classes));

  for (const auto& [name, t] : data.xi) {
    const std::size_t blocks = blocks_for(data, name);
    const TemplateEvaluator xi(n, data, t);
    auto at_reps = [&](const std::vector<std::size_t>& cls) {
      std::vector<const std::vector<int>*> args;
      for (std::size_t c : cls) args.push_back(&a.domain[a.representatives[c]]);
      return xi(args);
    };
    if (data.sigma.functions.contains(name)) {
      std::vector<int> table;
      for_each_index_tuple(classes, blocks - 1, [&](const std::vector<std::size_t>& args) {
        std::vector<std::size_t> cls = args;
        cls.push_back(0);
        for (std::size_t c = 0; c < classes; ++c) {
          cls.back() = c;
          if (at_reps(cls)) {
            table.push_back(static_cast<int>(c));
            break;
          }
        }
        return true;
      });
      out.add_function(name, static_cast<int>(blocks) - 1, std::move(table));
    } else {
      std::vector<std::vector<int>> tuples;
      for_each_index_tuple(classes, blocks, [&](const std::vector<std::size_t>& cls) {
        if (at_reps(cls)) tuples.emplace_back(cls.begin(), cls.end());
        return true;
      });
      out.add_relation(name, static_cast<int>(blocks), tuples);
    }
  }
  return out;
}

namespace {

class Translator {
 public:
  Translator(const InterpretationData& data, FreshNames fresh) : data_(data), fresh_(std::move(fresh)) {}

  Formula run(const Formula& f, const std::map<std::string, std::vector<std::string>>& env) {
    switch (f.op) {
      case Op::True:
      case Op::False:
        return f;
      case Op::Eq:
        return instantiate(data_.psi, concat(f, env));
      case Op::Rel:
        return instantiate(xi_for(f.name), concat(f, env));
      case Op::Exists:
      case Op::Forall: {
        std::map<std::string, std::vector<std::string>> inner = env;
        std::vector<std::string> bound;
        std::vector<Formula> guards;
        for (const auto& v : f.vars) {
          std::vector<std::string> block;
          for (int j = 1; j <= data_.dim; ++j) block.push_back(fresh_.next(data_.dim == 1 ? v : v + "_" + std::to_string(j)));
          bound.insert(bound.end(), block.begin(), block.end());
          guards.push_back(instantiate(data_.phi, block));
          inner[v] = std::move(block);
        }
        Formula body = run(f.subs[0], inner);
        if (f.op == Op::Exists) return exists(std::move(bound), conj(conj_all(std::move(guards)), std::move(body)));
        return forall(std::move(bound), implies(conj_all(std::move(guards)), std::move(body)));
      }
      default: {
        Formula out = f;
        for (auto& s : out.subs) s = run(s, env);
        return out;
      }
    }
  }

 private:
  const FormulaTemplate& xi_for(const std::string& name) const {
    if (auto it = data_.xi.find(name); it != data_.xi.end() && data_.sigma.relations.contains(name)) return it->second;
    for (const auto& [fn, arity] : data_.sigma.functions) {
      if (graph_name(fn) == name) return data_.xi.at(fn);
    }
    throw Error("no xi for relation symbol '" + name + "'");
  }

  static std::vector<std::string> concat(const Formula& atom,
                                         const std::map<std::string, std::vector<std::string>>& env) {
    std::vector<std::string> out;
    for (const auto& t : atom.terms) {
      if (!t.is_var()) throw ContractViolation("reduce needs a relational formula; relationalize it first");
      const auto it = env.find(t.name);
      if (it == env.end()) throw Error("variable '" + t.name + "' has no block");
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
  }

  const InterpretationData& data_;
  FreshNames fresh_;
};

FreshNames reserved_names(const Formula& f, const InterpretationData& data,
                          const std::map<std::string, std::vector<std::string>>& env) {
  FreshNames fresh(std::set<std::string>(data.param_vars.begin(), data.param_vars.end()));
  fresh.reserve(all_variables(f));
  for (const auto& [v, block] : env) fresh.reserve(std::set<std::string>(block.begin(), block.end()));
  return fresh;
}

}  // namespace

Formula translate(const Formula& f, const InterpretationData& data,
                  const std::map<std::string, std::vector<std::string>>& env) {
  data.validate();
  if (!is_relational(f)) throw ContractViolation("reduce needs a relational formula; relationalize it first");
  return Translator(data, reserved_names(f, data, env)).run(f, env);
}

Formula reduce(const Formula& alpha, const InterpretationData& data) {
  if (!is_sentence(alpha)) throw ContractViolation("reduce needs a sentence");
  return translate(alpha, data, {});
}

bool reduced_holds(const FiniteStructure& n, const Formula& alpha, const InterpretationData& data) {
  std::map<std::string, int> assignment;
  for (std::size_t i = 0; i < data.param_vars.size(); ++i) assignment[data.param_vars[i]] = data.param_values[i];
  return evaluate(n, reduce(alpha, data), assignment);
}

InterpretationData compose(const InterpretationData& inner, const InterpretationData& outer) {
  inner.validate();
  outer.validate();
  if (!inner.param_vars.empty()) throw ContractViolation("compose needs a parameter-free inner interpretation");
  if (outer.sigma.has_functions()) throw ContractViolation("compose needs a relational middle signature");

  InterpretationData out;
  out.dim = inner.dim * outer.dim;
  out.sigma = inner.sigma;
  out.param_vars = outer.param_vars;
  out.param_values = outer.param_values;

  FreshNames fresh(std::set<std::string>(outer.param_vars.begin(), outer.param_vars.end()));
  // Each template variable of the inner data becomes a block of outer.dim variables.
  auto lift = [&](const FormulaTemplate& t, bool guard) {
    FormulaTemplate lifted;
    std::map<std::string, std::vector<std::string>> env;
    std::vector<Formula> guards;
    for (const auto& v : t.vars) {
      std::vector<std::string> block;
      for (int j = 1; j <= outer.dim; ++j) block.push_back(fresh.next(v + "_" + std::to_string(j)));
      lifted.vars.insert(lifted.vars.end(), block.begin(), block.end());
      guards.push_back(instantiate(outer.phi, block));
      env[v] = std::move(block);
    }
    Formula body = translate(t.body, outer, env);
    lifted.body = guard ? conj(conj_all(std::move(guards)), std::move(body)) : std::move(body);
    return lifted;
  };
  out.phi = lift(inner.phi, true);
  out.psi = lift(inner.psi, false);
  for (const auto& [name, t] : inner.xi) out.xi.emplace(name, lift(t, false));
  return out;
}

InterpretationData identity_interpretation(const Signature& sig) {
  InterpretationData data;
  data.dim = 1;
  data.sigma = sig;
  data.phi = {{"y"}, f_true()};
  data.psi = {{"y1", "y2"}, eq(Term::var("y1"), Term::var("y2"))};
  for (const auto& [name, arity] : sig.relations) {
    FormulaTemplate t;
    for (int i = 1; i <= arity; ++i) t.vars.push_back("y" + std::to_string(i));
    t.body = rel_vars(name, t.vars);
    data.xi.emplace(name, std::move(t));
  }
  for (const auto& [name, arity] : sig.functions) {
    FormulaTemplate t;
    for (int i = 1; i <= arity + 1; ++i) t.vars.push_back("y" + std::to_string(i));
    t.body = rel_vars(graph_name(name), t.vars);
    data.xi.emplace(name, std::move(t));
  }
  return data;
}

}  // namespace thompson::logic
