#pragma once

#include <string>

#include "serieslab/exact_algebra.hpp"

namespace serieslab {

// Command-line polynomial grammar (docs/poly_grammar.ebnf): integer
// coefficients, variable T, caret powers, optional '*', no parentheses.
IntPolynomial parse_polynomial(const std::string& text);

// "p/q" or "p" in decimal.
BigRational parse_rational(const std::string& text);

// Full command dispatch; returns the process exit code and writes canonical
// JSON to stdout or to the path given by --out.
// Exit contract: 0 = success (including mathematically negative verdicts
// other than certificate recheck failures), 1 = domain error or failed
// recheck, 2 = resource cap.
int run_cli(int argc, const char* const* argv);

}  // namespace serieslab
