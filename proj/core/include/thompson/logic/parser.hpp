#pragma once

#include <string_view>

#include "thompson/logic/formula.hpp"

namespace thompson::logic {

/// Parses a formula. Grammar, loosest binding first:
///
///   formula := imp ('<->' imp)*              left-associative
///   imp     := or ('->' imp)?                right-associative
///   or      := and ('|' and)*
///   and     := unary ('&' unary)*
///   unary   := '~' unary | quant | '(' formula ')' | 'true' | 'false' | atom
///   quant   := ('forall' | 'exists') var+ ['.'] unary
///   atom    := term '=' term | term '!=' term | name ['(' term, ... ')']
///   term    := name ['(' term, ... ')']
///
/// Unicode spellings are accepted too: ¬ ∧ ∨ → ↔ ∀ ∃ ⊤ ⊥, and "!" / "not"
/// for negation. Names match [A-Za-z_][A-Za-z0-9_']*. An application needs
/// its '(' right after the name, so in "forall x y (...)" y is bound while in
/// "forall x R(x)" R starts the body; a name followed by '=' also starts it.
/// Bare names in term position are variables. Throws SyntaxError with the
/// byte offset of the offending token.
Formula parse(std::string_view text);

/// As parse(), then free names that the signature lists as constants become
/// constant terms; the result is checked against the signature.
Formula parse(std::string_view text, const Signature& sig);

/// Replaces free variables named like 0-ary function symbols of sig by the
/// constant terms.
Formula bind_constants(const Formula& f, const Signature& sig);

}  // namespace thompson::logic
