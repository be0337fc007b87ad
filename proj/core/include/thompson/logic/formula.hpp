#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace thompson::logic {

/// First-order term: a variable or a function symbol applied to terms.
/// Constants are function symbols of arity 0.
struct Term {
  enum class Kind { Var, Func };

  Kind kind = Kind::Var;
  std::string name;
  std::vector<Term> args;

  static Term var(std::string name);
  static Term func(std::string name, std::vector<Term> args = {});

  bool is_var() const { return kind == Kind::Var; }

  friend bool operator==(const Term&, const Term&) = default;
};

enum class Op { True, False, Eq, Rel, Not, And, Or, Implies, Iff, Exists, Forall };

/// Formula AST. Eq uses terms[0], terms[1]; Rel uses name and terms;
/// connectives use subs; quantifiers bind the block `vars` over subs[0].
struct Formula {
  Op op = Op::True;
  std::string name;
  std::vector<Term> terms;
  std::vector<std::string> vars;
  std::vector<Formula> subs;

  friend bool operator==(const Formula&, const Formula&) = default;
};

Formula f_true();
Formula f_false();
Formula eq(Term lhs, Term rhs);
Formula rel(std::string name, std::vector<Term> args);
/// rel over variables only.
Formula rel_vars(std::string name, const std::vector<std::string>& vars);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
/// Left-nested conjunction; true for an empty list.
Formula conj_all(std::vector<Formula> fs);
Formula exists(std::vector<std::string> vars, Formula body);
Formula forall(std::vector<std::string> vars, Formula body);

/// Relation and function symbols with arities; constants have arity 0.
struct Signature {
  std::map<std::string, int> relations;
  std::map<std::string, int> functions;

  bool has_functions() const { return !functions.empty(); }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Throws Error when a symbol is missing or used with the wrong arity.
void check_signature(const Formula& f, const Signature& sig);

std::set<std::string> free_variables(const Term& t);
std::set<std::string> free_variables(const Formula& f);
/// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_variables(const Formula& f);
bool is_sentence(const Formula& f);
/// No function symbols (hence no constants) anywhere.
bool is_relational(const Formula& f);

/// Capture-avoiding substitution of terms for free variables. Bound
/// variables that would capture are renamed to fresh "_vN" names.
Formula substitute(const Formula& f, const std::map<std::string, Term>& sigma);
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& renaming);

/// Equal up to consistent renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);

/// ASCII rendering accepted by parse(): ~ & | -> <-> forall exists.
/// Binary connectives are always parenthesized.
std::string render(const Term& t);
std::string render(const Formula& f);

/// Names not already in `used`, built from a base name; remembers what it hands out.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::set<std::string> used) : used_(std::move(used)) {}
  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
  std::string next(const std::string& base);

 private:
  std::set<std::string> used_;
};

}  // namespace thompson::logic
