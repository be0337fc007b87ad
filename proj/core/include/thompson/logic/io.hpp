#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "thompson/logic/formula.hpp"
#include "thompson/logic/interpretation.hpp"
#include "thompson/logic/structure.hpp"

namespace thompson::logic {

/// Structure file:
///
///   universe 3
///   relation E 2      # then one tuple per line, closed by "end"
///   0 1
///   end
///   function f 1      # then "args... value" per line, closed by "end"
///   0 1
///   1 2
///   2 0
///   end
///   constant c 2
///
/// '#' starts a comment.
FiniteStructure read_structure(std::istream& in);
void write_structure(std::ostream& out, const FiniteStructure& m);

/// Interpretation file, one directive per line (indented lines continue the
/// previous one):
///
///   dim 1
///   param x = 0
///   phi (y) : formula
///   psi (y1) (y2) : formula
///   xi E (y1) (y2) : formula                   # relation symbol E
///   xi function f (y1) (y2) : formula          # f unary; last block = value
///
/// Each parenthesized group lists the dim variables of one block.
InterpretationData read_interpretation(std::istream& in);
void write_interpretation(std::ostream& out, const InterpretationData& data);

/// Whole-file formula with '#' comments removed.
Formula read_formula(std::istream& in);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace thompson::logic
