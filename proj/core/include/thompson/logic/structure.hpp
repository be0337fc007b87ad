#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "thompson/logic/formula.hpp"

namespace thompson::logic {

/// A finite structure on {0, ..., u-1}. Relations and functions are stored
/// as full tables indexed in mixed radix u (first argument most significant).
class FiniteStructure {
 public:
  struct RelationTable {
    int arity;
    std::vector<bool> table;

    friend bool operator==(const RelationTable&, const RelationTable&) = default;
  };
  struct FunctionTable {
    int arity;
    std::vector<int> table;

    friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
  };

  explicit FiniteStructure(int universe);

  int universe() const { return universe_; }

  void add_relation(const std::string& name, int arity, const std::vector<std::vector<int>>& tuples);
  /// table[index(args)] = value; table size u^arity.
  void add_function(const std::string& name, int arity, std::vector<int> table);
  void add_constant(const std::string& name, int value);

  bool holds(const std::string& name, std::span<const int> args) const;
  int apply(const std::string& name, std::span<const int> args) const;

  const std::map<std::string, RelationTable>& relations() const { return relations_; }
  const std::map<std::string, FunctionTable>& functions() const { return functions_; }
  Signature signature() const;

  /// Mixed-radix index of a tuple.
  std::size_t index(std::span<const int> args) const;

  friend bool operator==(const FiniteStructure&, const FiniteStructure&) = default;

 private:
  void check_symbol_free(const std::string& name) const;

  int universe_;
  std::map<std::string, RelationTable> relations_;
  std::map<std::string, FunctionTable> functions_;
};

/// A formula resolved against a structure, for repeated evaluation with
/// different values of its free variables.
class CompiledFormula {
 public:
  /// `free_order` fixes the order of values passed to operator(); it must
  /// cover the free variables of f.
  CompiledFormula(const FiniteStructure& m, const Formula& f, std::vector<std::string> free_order);
  ~CompiledFormula();
  CompiledFormula(CompiledFormula&&) noexcept;
  CompiledFormula& operator=(CompiledFormula&&) noexcept;

  bool operator()(std::span<const int> values) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Tarskian truth of f in m under the assignment, which must cover the free
/// variables. Throws Error on a signature or assignment mismatch.
bool evaluate(const FiniteStructure& m, const Formula& f, const std::map<std::string, int>& assignment = {});

/// Name of the relation standing for the graph of function symbol f.
std::string graph_name(const std::string& function);

/// Every n-ary function symbol f becomes an (n+1)-ary relation f'.
Signature relationalize(const Signature& sig);
/// Function symbols are replaced by their graphs.
FiniteStructure relationalize_structure(const FiniteStructure& m);
/// Rewrites every atom mentioning function terms into an existential over
/// fresh variables, one per compound subterm, constrained by graph atoms.
Formula relationalize_formula(const Formula& f);

}  // namespace thompson::logic
