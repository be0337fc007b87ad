#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "thompson/commutators.hpp"
#include "thompson/logic/interpretation.hpp"
#include "thompson/pl_bijection.hpp"
#include "thompson/wreath.hpp"

/// Seeded random generators for property tests, campaigns and benchmarks.
namespace thompson::gen {

using Rng = std::mt19937_64;

/// Uniform integer in [lo; hi].
std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi);

/// Cut points of a random n-ary subdivision of [lo; hi] with `leaves` pieces
/// (rounded up to the next count 1 + k(n-1)).
std::vector<Rational> random_subdivision(Rng& rng, const GroupContext& ctx, const Rational& lo, const Rational& hi,
                                         std::size_t leaves);

/// Element of F: two random subdivisions of [0; r] with the same number of
/// pieces, matched in order.
PLMap random_map(Rng& rng, const GroupContext& ctx, std::size_t max_leaves = 9);

/// Element of F-circle: a random element of F on a random window
/// [alpha; beta] with 0 < alpha < beta < r, identity outside.
PLMap random_F_circle(Rng& rng, const GroupContext& ctx, std::size_t max_leaves = 7);

/// Element of V: two random subdivisions and a random matching of pieces.
PLBijection random_V(Rng& rng, const GroupContext& ctx, std::size_t max_leaves = 7);

/// Normal form with |shift| <= max_shift, exponents in [-max_exp; max_exp]
/// on at most `width` consecutive indices starting in [-3; 3].
WreathElement random_normal_form(Rng& rng, std::int64_t max_shift = 5, std::int64_t max_exp = 3,
                                 std::int64_t width = 7);

/// Word over a, b, A, B of the given length.
std::string random_word(Rng& rng, std::size_t length);

/// Pairs of random F-circle elements (or of general F elements).
CommutatorList random_commutator_list(Rng& rng, const GroupContext& ctx, std::size_t length, bool f_circle = true);

/// Random structure: each relation tuple present with probability 1/2,
/// uniform function tables.
logic::FiniteStructure random_structure(Rng& rng, const logic::Signature& sig, int universe);

/// Random relational formula whose free variables lie in `scope`.
/// Quantifiers bind fresh names q0, q1, ... in blocks of one or two.
logic::Formula random_formula(Rng& rng, const logic::Signature& sig, const std::vector<std::string>& scope, int depth);

/// Random relational sentence (at least one quantifier at the top).
logic::Formula random_sentence(Rng& rng, const logic::Signature& sig, int depth);

/// Random admissible interpretation of the relational signature `sigma`
/// in n, of the given dimension, with up to one parameter. psi is the
/// kernel of random definable features (or plain tuple equality), and each
/// xi is either a raw random formula that happens to be compatible or a
/// Boolean combination of class-invariant atoms.
logic::InterpretationData random_admissible_interpretation(Rng& rng, const logic::FiniteStructure& n,
                                                           const logic::Signature& sigma, int dim);

}  // namespace thompson::gen
