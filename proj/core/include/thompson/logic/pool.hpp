#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/logic/formula.hpp"

namespace thompson::logic {

/// Evaluates formulas over an infinite structure whose elements are values
/// of type T, with every quantifier restricted to a finite pool. Truth in
/// such a model is evidence only: a universal statement is checked on the
/// pool, an existential one searched in it.
template <typename T>
class PoolModel {
 public:
  using Function = std::function<T(const std::vector<T>&)>;

  explicit PoolModel(std::vector<T> default_pool) : default_pool_(std::move(default_pool)) {}

  void define(const std::string& name, int arity, Function fn) { functions_[name] = {arity, std::move(fn)}; }
  /// Quantifiers binding `var` range over this pool instead of the default.
  void set_pool(const std::string& var, std::vector<T> pool) { pools_[var] = std::move(pool); }

  T term(const Term& t, const std::map<std::string, T>& env) const {
    if (t.is_var()) {
      const auto it = env.find(t.name);
      if (it == env.end()) throw Error("unassigned variable '" + t.name + "'");
      return it->second;
    }
    const auto it = functions_.find(t.name);
    if (it == functions_.end()) throw Error("no function symbol '" + t.name + "'");
    if (static_cast<std::size_t>(it->second.first) != t.args.size()) throw Error("wrong arity for '" + t.name + "'");
    std::vector<T> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(term(a, env));
    return it->second.second(args);
  }

  bool evaluate(const Formula& f, std::map<std::string, T> env) const {
    switch (f.op) {
      case Op::True:
        return true;
      case Op::False:
        return false;
      case Op::Eq:
        return term(f.terms[0], env) == term(f.terms[1], env);
      case Op::Rel:
        throw Error("pool models have no relation symbols");
      case Op::Not:
        return !evaluate(f.subs[0], env);
      case Op::And:
        return evaluate(f.subs[0], env) && evaluate(f.subs[1], env);
      case Op::Or:
        return evaluate(f.subs[0], env) || evaluate(f.subs[1], env);
      case Op::Implies:
        return !evaluate(f.subs[0], env) || evaluate(f.subs[1], env);
      case Op::Iff:
        return evaluate(f.subs[0], env) == evaluate(f.subs[1], env);
      case Op::Exists:
        return quantify(f, 0, env, true);
      case Op::Forall:
        return quantify(f, 0, env, false);
    }
    return false;
  }

 private:
  const std::vector<T>& pool_for(const std::string& var) const {
    const auto it = pools_.find(var);
    return it == pools_.end() ? default_pool_ : it->second;
  }

  bool quantify(const Formula& f, std::size_t i, std::map<std::string, T>& env, bool existential) const {
    if (i == f.vars.size()) return evaluate(f.subs[0], env);
    for (const T& value : pool_for(f.vars[i])) {
      env.insert_or_assign(f.vars[i], value);
      const bool r = quantify(f, i + 1, env, existential);
      if (existential == r) return r;
    }
    return !existential;
  }

  std::vector<T> default_pool_;
  std::map<std::string, std::vector<T>> pools_;
  std::map<std::string, std::pair<int, Function>> functions_;
};

}  // namespace thompson::logic
