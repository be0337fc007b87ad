#pragma once

#include <map>
#include <string>
#include <vector>

#include "thompson/logic/formula.hpp"
#include "thompson/logic/structure.hpp"

namespace thompson::logic {

/// A formula together with the ordered list of its template variables,
/// which is a concatenation of blocks of `dim` variables each.
struct FormulaTemplate {
  std::vector<std::string> vars;
  Formula body;

  friend bool operator==(const FormulaTemplate&, const FormulaTemplate&) = default;
};

/// The data of an interpretation of a Sigma-structure inside a
/// Gamma-structure N: the domain formula phi(x, y), the equivalence
/// psi(x, y1, y2), and for each symbol sigma a formula xi_sigma(x, y1, ...)
/// over tuples of length dim. Parameters x are given the values a.
struct InterpretationData {
  int dim = 1;
  /// The interpreted signature Sigma.
  Signature sigma;
  std::vector<std::string> param_vars;
  std::vector<int> param_values;
  FormulaTemplate phi;
  FormulaTemplate psi;
  /// For a relation symbol of arity k: k blocks. For a function symbol of
  /// arity k: k + 1 blocks, the last one being the value.
  std::map<std::string, FormulaTemplate> xi;

  /// Checks block sizes, coverage of sigma and that every free variable of a
  /// template is a template or parameter variable. Throws Error.
  void validate() const;

  friend bool operator==(const InterpretationData&, const InterpretationData&) = default;
};

/// The template body with its variables renamed to `actual`.
Formula instantiate(const FormulaTemplate& t, const std::vector<std::string>& actual);

/// What admissible() and quotient() compute about (N, data).
struct InterpretationAnalysis {
  bool admissible = false;
  /// Why not, when not.
  std::string reason;
  /// Tuples of N^dim satisfying phi, in increasing mixed-radix order.
  std::vector<std::vector<int>> domain;
  /// Class number of each domain tuple; classes are numbered by their
  /// smallest tuple.
  std::vector<int> class_of;
  /// Index into `domain` of the smallest tuple of each class.
  std::vector<std::size_t> representatives;
};

InterpretationAnalysis analyze(const FiniteStructure& n, const InterpretationData& data);

/// psi defines an equivalence on the nonempty phi-set, every xi_sigma is
/// compatible with it, and for function symbols xi_sigma is the graph of a
/// total operation on the classes.
bool admissible(const FiniteStructure& n, const InterpretationData& data);

/// The Sigma-structure on the psi-classes of the phi-set. Throws
/// ContractViolation when the data is not admissible.
FiniteStructure quotient(const FiniteStructure& n, const InterpretationData& data);

/// Translation of a relational Sigma-formula: each free variable v of f is
/// sent to the block env[v]. Quantifier blocks are relativized by phi,
/// equality becomes psi and each sigma becomes xi_sigma. A relation named
/// graph_name(f) for a function symbol f of Sigma uses xi_f.
Formula translate(const Formula& f, const InterpretationData& data,
                  const std::map<std::string, std::vector<std::string>>& env);

/// The reduction alpha -> alpha^t for a relational Sigma-sentence; the
/// result's free variables are among the parameter variables.
Formula reduce(const Formula& alpha, const InterpretationData& data);

/// N satisfies reduce(alpha, data) with the parameters set to their values.
bool reduced_holds(const FiniteStructure& n, const Formula& alpha, const InterpretationData& data);

/// The interpretation of Sigma obtained by interpreting `inner` (Sigma in
/// Gamma, parameter-free) through `outer` (Gamma in Delta).
InterpretationData compose(const InterpretationData& inner, const InterpretationData& outer);

/// dim = 1, phi = true, psi = equality, xi_sigma = sigma itself (graph
/// relation for function symbols, which sig must already list as relations).
InterpretationData identity_interpretation(const Signature& sig);

}  // namespace thompson::logic
