#include "thompson/logic/structure.hpp"

#include <optional>

#include "thompson/error.hpp"

namespace thompson::logic {

namespace {

std::size_t table_size(int universe, int arity) {
  std::size_t size = 1;
  for (int i = 0; i < arity; ++i) size *= static_cast<std::size_t>(universe);
  return size;
}

}  // namespace

FiniteStructure::FiniteStructure(int universe) : universe_(universe) {
  if (universe < 1) throw ContractViolation("a structure needs a nonempty universe");
}

void FiniteStructure::check_symbol_free(const std::string& name) const {
  if (relations_.contains(name) || functions_.contains(name)) throw Error("symbol '" + name + "' defined twice");
}

std::size_t FiniteStructure::index(std::span<const int> args) const {
  std::size_t idx = 0;
  for (int a : args) {
    if (a < 0 || a >= universe_) throw Error("element " + std::to_string(a) + " outside the universe");
    idx = idx * static_cast<std::size_t>(universe_) + static_cast<std::size_t>(a);
  }
  return idx;
}

void FiniteStructure::add_relation(const std::string& name, int arity, const std::vector<std::vector<int>>& tuples) {
  check_symbol_free(name);
  if (arity < 0) throw ContractViolation("negative arity");
  RelationTable rt{arity, std::vector<bool>(table_size(universe_, arity), false)};
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity) throw Error("relation '" + name + "': tuple of the wrong length");
    rt.table[index(t)] = true;
  }
  relations_.emplace(name, std::move(rt));
}

void FiniteStructure::add_function(const std::string& name, int arity, std::vector<int> table) {
  check_symbol_free(name);
  if (arity < 0) throw ContractViolation("negative arity");
  if (table.size() != table_size(universe_, arity)) throw Error("function '" + name + "': table is not total");
  for (int v : table) {
    if (v < 0 || v >= universe_) throw Error("function '" + name + "': value outside the universe");
  }
  functions_.emplace(name, FunctionTable{arity, std::move(table)});
}

void FiniteStructure::add_constant(const std::string& name, int value) { add_function(name, 0, {value}); }

bool FiniteStructure::holds(const std::string& name, std::span<const int> args) const {
  const auto it = relations_.find(name);
  if (it == relations_.end()) throw Error("unknown relation '" + name + "'");
  if (static_cast<std::size_t>(it->second.arity) != args.size()) throw Error("relation '" + name + "': wrong arity");
  return it->second.table[index(args)];
}

int FiniteStructure::apply(const std::string& name, std::span<const int> args) const {
  const auto it = functions_.find(name);
  if (it == functions_.end()) throw Error("unknown function '" + name + "'");
  if (static_cast<std::size_t>(it->second.arity) != args.size()) throw Error("function '" + name + "': wrong arity");
  return it->second.table[index(args)];
}

Signature FiniteStructure::signature() const {
  Signature sig;
  for (const auto& [name, r] : relations_) sig.relations.emplace(name, r.arity);
  for (const auto& [name, f] : functions_) sig.functions.emplace(name, f.arity);
  return sig;
}

// ---------------------------------------------------------------------------
// Compiled evaluation

namespace {

struct CTerm {
  int slot = -1;  // variable slot, or -1 for a function application
  const FiniteStructure::FunctionTable* fn = nullptr;
  std::vector<CTerm> args;
};

struct CNode {
  Op op;
  const FiniteStructure::RelationTable* relation = nullptr;
  std::vector<CTerm> terms;
  std::vector<int> slots;
  std::vector<CNode> subs;
};

class Compiler {
 public:
  explicit Compiler(const FiniteStructure& m) : m_(m) {}

  int declare(const std::string& name) {
    const int slot = next_slot_++;
    scopes_[name].push_back(slot);
    return slot;
  }
  void release(const std::string& name) {
    auto& stack = scopes_[name];
    stack.pop_back();
  }
  int slot_count() const { return next_slot_; }

  CTerm term(const Term& t) {
    CTerm out;
    if (t.is_var()) {
      const auto it = scopes_.find(t.name);
      if (it == scopes_.end() || it->second.empty()) throw Error("unassigned variable '" + t.name + "'");
      out.slot = it->second.back();
      return out;
    }
    const auto it = m_.functions().find(t.name);
    if (it == m_.functions().end()) throw Error("structure has no function symbol '" + t.name + "'");
    if (static_cast<std::size_t>(it->second.arity) != t.args.size()) {
      throw Error("function symbol '" + t.name + "' used with the wrong arity");
    }
    out.fn = &it->second;
    for (const auto& a : t.args) out.args.push_back(term(a));
    return out;
  }

  CNode node(const Formula& f) {
    CNode out{f.op, nullptr, {}, {}, {}};
    switch (f.op) {
      case Op::Rel: {
        const auto it = m_.relations().find(f.name);
        if (it == m_.relations().end()) throw Error("structure has no relation symbol '" + f.name + "'");
        if (static_cast<std::size_t>(it->second.arity) != f.terms.size()) {
          throw Error("relation symbol '" + f.name + "' used with the wrong arity");
        }
        out.relation = &it->second;
        for (const auto& t : f.terms) out.terms.push_back(term(t));
        break;
      }
      case Op::Eq:
        for (const auto& t : f.terms) out.terms.push_back(term(t));
        break;
      case Op::Exists:
      case Op::Forall:
        for (const auto& v : f.vars) out.slots.push_back(declare(v));
        out.subs.push_back(node(f.subs[0]));
        for (auto it = f.vars.rbegin(); it != f.vars.rend(); ++it) release(*it);
        break;
      default:
        for (const auto& s : f.subs) out.subs.push_back(node(s));
    }
    return out;
  }

 private:
  const FiniteStructure& m_;
  std::map<std::string, std::vector<int>> scopes_;
  int next_slot_ = 0;
};

class Machine {
 public:
  Machine(int universe, std::vector<int>& env) : u_(static_cast<std::size_t>(universe)), env_(env) {}

  int term(const CTerm& t) const {
    if (t.slot >= 0) return env_[static_cast<std::size_t>(t.slot)];
    std::size_t idx = 0;
    for (const auto& a : t.args) idx = idx * u_ + static_cast<std::size_t>(term(a));
    return t.fn->table[idx];
  }

  bool eval(const CNode& n) const {
    switch (n.op) {
      case Op::True:
        return true;
      case Op::False:
        return false;
      case Op::Eq:
        return term(n.terms[0]) == term(n.terms[1]);
      case Op::Rel: {
        std::size_t idx = 0;
        for (const auto& t : n.terms) idx = idx * u_ + static_cast<std::size_t>(term(t));
        return n.relation->table[idx];
      }
      case Op::Not:
        return !eval(n.subs[0]);
      case Op::And:
        return eval(n.subs[0]) && eval(n.subs[1]);
      case Op::Or:
        return eval(n.subs[0]) || eval(n.subs[1]);
      case Op::Implies:
        return !eval(n.subs[0]) || eval(n.subs[1]);
      case Op::Iff:
        return eval(n.subs[0]) == eval(n.subs[1]);
      case Op::Exists:
        return quantify(n, 0, true);
      case Op::Forall:
        return quantify(n, 0, false);
    }
    return false;
  }

 private:
  /// Existential: some assignment of the block satisfies the body.
  /// Universal: none falsifies it.
  bool quantify(const CNode& n, std::size_t i, bool existential) const {
    if (i == n.slots.size()) return eval(n.subs[0]);
    const auto slot = static_cast<std::size_t>(n.slots[i]);
    for (std::size_t v = 0; v < u_; ++v) {
      env_[slot] = static_cast<int>(v);
      const bool r = quantify(n, i + 1, existential);
      if (existential && r) return true;
      if (!existential && !r) return false;
    }
    return !existential;
  }

  std::size_t u_;
  std::vector<int>& env_;
};

}  // namespace

struct CompiledFormula::Impl {
  int universe;
  std::size_t free_count;
  CNode root;
  int slots;
};

CompiledFormula::CompiledFormula(const FiniteStructure& m, const Formula& f, std::vector<std::string> free_order) {
  Compiler c(m);
  for (const auto& v : free_order) c.declare(v);
  CNode root = c.node(f);
  impl_ = std::make_unique<Impl>(Impl{m.universe(), free_order.size(), std::move(root), c.slot_count()});
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

bool CompiledFormula::operator()(std::span<const int> values) const {
  if (values.size() != impl_->free_count) throw Error("wrong number of values for the free variables");
  std::vector<int> env(static_cast<std::size_t>(impl_->slots), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] >= impl_->universe) throw Error("assigned value outside the universe");
    env[i] = values[i];
  }
  return Machine(impl_->universe, env).eval(impl_->root);
}

bool evaluate(const FiniteStructure& m, const Formula& f, const std::map<std::string, int>& assignment) {
  std::vector<std::string> names;
  std::vector<int> values;
  for (const auto& [name, value] : assignment) {
    names.push_back(name);
    values.push_back(value);
  }
  return CompiledFormula(m, f, std::move(names))(values);
}

// ---------------------------------------------------------------------------
// Relationalization

std::string graph_name(const std::string& function) { return function + "'"; }

Signature relationalize(const Signature& sig) {
  Signature out;
  out.relations = sig.relations;
  for (const auto& [name, arity] : sig.functions) {
    if (!out.relations.emplace(graph_name(name), arity + 1).second) {
      throw Error("relation '" + graph_name(name) + "' already exists");
    }
  }
  return out;
}

FiniteStructure relationalize_structure(const FiniteStructure& m) {
  FiniteStructure out(m.universe());
  for (const auto& [name, r] : m.relations()) {
    std::vector<std::vector<int>> tuples;
    const std::size_t size = r.table.size();
    for (std::size_t idx = 0; idx < size; ++idx) {
      if (!r.table[idx]) continue;
      std::vector<int> t(static_cast<std::size_t>(r.arity));
      std::size_t rest = idx;
      for (int i = r.arity - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(m.universe()));
        rest /= static_cast<std::size_t>(m.universe());
      }
      tuples.push_back(std::move(t));
    }
    out.add_relation(name, r.arity, tuples);
  }
  for (const auto& [name, f] : m.functions()) {
    std::vector<std::vector<int>> graph;
    for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
      std::vector<int> t(static_cast<std::size_t>(f.arity) + 1);
      std::size_t rest = idx;
      for (int i = f.arity - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(m.universe()));
        rest /= static_cast<std::size_t>(m.universe());
      }
      t.back() = f.table[idx];
      graph.push_back(std::move(t));
    }
    out.add_relation(graph_name(name), f.arity + 1, graph);
  }
  return out;
}

namespace {

/// Replaces compound subterms by fresh variables, recording graph atoms.
Term flatten(const Term& t, FreshNames& fresh, std::vector<std::string>& vars, std::vector<Formula>& conds) {
  if (t.is_var()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args) args.push_back(flatten(a, fresh, vars, conds));
  const std::string v = fresh.next("_t");
  vars.push_back(v);
  args.push_back(Term::var(v));
  conds.push_back(rel(graph_name(t.name), std::move(args)));
  return Term::var(v);
}

Formula relationalize_impl(const Formula& f, FreshNames& fresh) {
  if (f.op == Op::Eq || f.op == Op::Rel) {
    std::vector<std::string> vars;
    std::vector<Formula> conds;
    Formula atom = f;
    for (auto& t : atom.terms) t = flatten(t, fresh, vars, conds);
    if (vars.empty()) return f;
    conds.push_back(std::move(atom));
    return exists(std::move(vars), conj_all(std::move(conds)));
  }
  Formula out = f;
  for (auto& s : out.subs) s = relationalize_impl(s, fresh);
  return out;
}

}  // namespace

Formula relationalize_formula(const Formula& f) {
  FreshNames fresh(all_variables(f));
  return relationalize_impl(f, fresh);
}

}  // namespace thompson::logic
