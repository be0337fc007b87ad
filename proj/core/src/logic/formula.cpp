#include "thompson/logic/formula.hpp"

#include "thompson/error.hpp"

namespace thompson::logic {

Term Term::var(std::string name) { return Term{Kind::Var, std::move(name), {}}; }
Term Term::func(std::string name, std::vector<Term> args) { return Term{Kind::Func, std::move(name), std::move(args)}; }

Formula f_true() { return Formula{Op::True, {}, {}, {}, {}}; }
Formula f_false() { return Formula{Op::False, {}, {}, {}, {}}; }
Formula eq(Term lhs, Term rhs) { return Formula{Op::Eq, {}, {std::move(lhs), std::move(rhs)}, {}, {}}; }
Formula rel(std::string name, std::vector<Term> args) { return Formula{Op::Rel, std::move(name), std::move(args), {}, {}}; }

Formula rel_vars(std::string name, const std::vector<std::string>& vars) {
  std::vector<Term> args;
  for (const auto& v : vars) args.push_back(Term::var(v));
  return rel(std::move(name), std::move(args));
}

Formula neg(Formula f) { return Formula{Op::Not, {}, {}, {}, {std::move(f)}}; }
Formula conj(Formula a, Formula b) { return Formula{Op::And, {}, {}, {}, {std::move(a), std::move(b)}}; }
Formula disj(Formula a, Formula b) { return Formula{Op::Or, {}, {}, {}, {std::move(a), std::move(b)}}; }
Formula implies(Formula a, Formula b) { return Formula{Op::Implies, {}, {}, {}, {std::move(a), std::move(b)}}; }
Formula iff(Formula a, Formula b) { return Formula{Op::Iff, {}, {}, {}, {std::move(a), std::move(b)}}; }

Formula conj_all(std::vector<Formula> fs) {
  if (fs.empty()) return f_true();
  Formula out = std::move(fs.front());
  for (std::size_t i = 1; i < fs.size(); ++i) out = conj(std::move(out), std::move(fs[i]));
  return out;
}

Formula exists(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) return body;
  return Formula{Op::Exists, {}, {}, std::move(vars), {std::move(body)}};
}

Formula forall(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) return body;
  return Formula{Op::Forall, {}, {}, std::move(vars), {std::move(body)}};
}

namespace {

void check_term(const Term& t, const Signature& sig) {
  if (t.is_var()) return;
  const auto it = sig.functions.find(t.name);
  if (it == sig.functions.end()) throw Error("unknown function symbol '" + t.name + "'");
  if (static_cast<std::size_t>(it->second) != t.args.size()) {
    throw Error("function symbol '" + t.name + "' has arity " + std::to_string(it->second));
  }
  for (const auto& a : t.args) check_term(a, sig);
}

void collect_free(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) collect_free(a, out);
}

void collect_free(const Formula& f, const std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.op) {
    case Op::True:
    case Op::False:
      return;
    case Op::Eq:
    case Op::Rel: {
      std::set<std::string> vs;
      for (const auto& t : f.terms) collect_free(t, vs);
      for (const auto& v : vs) {
        if (!bound.contains(v)) out.insert(v);
      }
      return;
    }
    case Op::Exists:
    case Op::Forall: {
      std::set<std::string> inner = bound;
      inner.insert(f.vars.begin(), f.vars.end());
      collect_free(f.subs[0], inner, out);
      return;
    }
    default:
      for (const auto& s : f.subs) collect_free(s, bound, out);
  }
}

void collect_all(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.terms) collect_free(t, out);
  out.insert(f.vars.begin(), f.vars.end());
  for (const auto& s : f.subs) collect_all(s, out);
}

bool term_relational(const Term& t) { return t.is_var(); }

Term substitute_term(const Term& t, const std::map<std::string, Term>& sigma) {
  if (t.is_var()) {
    const auto it = sigma.find(t.name);
    return it == sigma.end() ? t : it->second;
  }
  Term out = t;
  for (auto& a : out.args) a = substitute_term(a, sigma);
  return out;
}

Formula substitute_impl(const Formula& f, const std::map<std::string, Term>& sigma) {
  switch (f.op) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Eq:
    case Op::Rel: {
      Formula out = f;
      for (auto& t : out.terms) t = substitute_term(t, sigma);
      return out;
    }
    case Op::Exists:
    case Op::Forall: {
      std::map<std::string, Term> inner = sigma;
      for (const auto& v : f.vars) inner.erase(v);
      // Variables introduced by the substitution into the body.
      const std::set<std::string> body_free = free_variables(f.subs[0]);
      std::set<std::string> incoming;
      for (const auto& [name, term] : inner) {
        if (body_free.contains(name)) collect_free(term, incoming);
      }
      Formula out = f;
      std::map<std::string, Term> rename;
      std::set<std::string> taken = all_variables(f);
      taken.insert(incoming.begin(), incoming.end());
      std::size_t counter = 0;
      for (auto& v : out.vars) {
        if (!incoming.contains(v)) continue;
        std::string fresh;
        do {
          fresh = "_v" + std::to_string(counter++);
        } while (taken.contains(fresh));
        taken.insert(fresh);
        rename.emplace(v, Term::var(fresh));
        v = fresh;
      }
      if (!rename.empty()) {
        for (auto& [name, term] : rename) inner[name] = term;
      }
      out.subs[0] = substitute_impl(f.subs[0], inner);
      return out;
    }
    default: {
      Formula out = f;
      for (auto& s : out.subs) s = substitute_impl(s, sigma);
      return out;
    }
  }
}

using Env = std::map<std::string, std::size_t>;

bool alpha_term(const Term& a, const Term& b, const Env& ea, const Env& eb) {
  if (a.kind != b.kind) return false;
  if (a.is_var()) {
    const auto ia = ea.find(a.name);
    const auto ib = eb.find(b.name);
    if ((ia == ea.end()) != (ib == eb.end())) return false;
    return ia == ea.end() ? a.name == b.name : ia->second == ib->second;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!alpha_term(a.args[i], b.args[i], ea, eb)) return false;
  }
  return true;
}

bool alpha_impl(const Formula& a, const Formula& b, const Env& ea, const Env& eb, std::size_t depth) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::True:
    case Op::False:
      return true;
    case Op::Eq:
    case Op::Rel:
      if (a.name != b.name || a.terms.size() != b.terms.size()) return false;
      for (std::size_t i = 0; i < a.terms.size(); ++i) {
        if (!alpha_term(a.terms[i], b.terms[i], ea, eb)) return false;
      }
      return true;
    case Op::Exists:
    case Op::Forall: {
      if (a.vars.size() != b.vars.size()) return false;
      Env ia = ea;
      Env ib = eb;
      for (std::size_t i = 0; i < a.vars.size(); ++i) {
        ia[a.vars[i]] = depth + i;
        ib[b.vars[i]] = depth + i;
      }
      return alpha_impl(a.subs[0], b.subs[0], ia, ib, depth + a.vars.size());
    }
    default:
      if (a.subs.size() != b.subs.size()) return false;
      for (std::size_t i = 0; i < a.subs.size(); ++i) {
        if (!alpha_impl(a.subs[i], b.subs[i], ea, eb, depth)) return false;
      }
      return true;
  }
}

const char* binary_symbol(Op op) {
  switch (op) {
    case Op::And:
      return " & ";
    case Op::Or:
      return " | ";
    case Op::Implies:
      return " -> ";
    default:
      return " <-> ";
  }
}

}  // namespace

void check_signature(const Formula& f, const Signature& sig) {
  if (f.op == Op::Rel) {
    const auto it = sig.relations.find(f.name);
    if (it == sig.relations.end()) throw Error("unknown relation symbol '" + f.name + "'");
    if (static_cast<std::size_t>(it->second) != f.terms.size()) {
      throw Error("relation symbol '" + f.name + "' has arity " + std::to_string(it->second));
    }
  }
  for (const auto& t : f.terms) check_term(t, sig);
  for (const auto& s : f.subs) check_signature(s, sig);
}

std::set<std::string> free_variables(const Term& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  collect_free(f, {}, out);
  return out;
}

std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

bool is_relational(const Formula& f) {
  for (const auto& t : f.terms) {
    if (!term_relational(t)) return false;
  }
  for (const auto& s : f.subs) {
    if (!is_relational(s)) return false;
  }
  return true;
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& sigma) { return substitute_impl(f, sigma); }

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& renaming) {
  std::map<std::string, Term> sigma;
  for (const auto& [from, to] : renaming) sigma.emplace(from, Term::var(to));
  return substitute_impl(f, sigma);
}

bool alpha_equivalent(const Formula& a, const Formula& b) { return alpha_impl(a, b, {}, {}, 0); }

std::string render(const Term& t) {
  if (t.is_var() || t.args.empty()) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ", ";
    out += render(t.args[i]);
  }
  return out + ")";
}

std::string render(const Formula& f) {
  switch (f.op) {
    case Op::True:
      return "true";
    case Op::False:
      return "false";
    case Op::Eq:
      return render(f.terms[0]) + " = " + render(f.terms[1]);
    case Op::Rel: {
      std::string out = f.name + "(";
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        if (i) out += ", ";
        out += render(f.terms[i]);
      }
      return out + ")";
    }
    case Op::Not: {
      const std::string inner = render(f.subs[0]);
      return f.subs[0].op == Op::Eq ? "~(" + inner + ")" : "~" + inner;
    }
    case Op::Exists:
    case Op::Forall: {
      std::string out = f.op == Op::Exists ? "exists" : "forall";
      for (const auto& v : f.vars) out += " " + v;
      const std::string body = render(f.subs[0]);
      return out + (body.front() == '(' ? " " + body : " (" + body + ")");
    }
    default:
      return "(" + render(f.subs[0]) + binary_symbol(f.op) + render(f.subs[1]) + ")";
  }
}

std::string FreshNames::next(const std::string& base) {
  std::string name = base;
  for (std::size_t i = 1; used_.contains(name); ++i) name = base + "_" + std::to_string(i);
  used_.insert(name);
  return name;
}

}  // namespace thompson::logic
