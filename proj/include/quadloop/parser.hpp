#pragma once

#include "quadloop/qform.hpp"

#include <string>
#include <vector>

namespace quadloop {

/// Syntax or semantic error with 1-based source position.
struct ParseError : std::runtime_error {
    size_t line;
    size_t col;

    ParseError(const std::string& msg, size_t line_, size_t col_)
        : std::runtime_error(msg + " (at " + std::to_string(line_) + ":" + std::to_string(col_) +
                             ")"),
          line(line_),
          col(col_) {}
};

struct ParsedEquation {
    QuadraticEquation eq;
    std::vector<std::string> vars;  // defines the coordinate order
};

/// Grammar:
///   equation := expr '=' expr
///   expr     := ['+'|'-'] term { ('+'|'-') term }
///   term     := factor { '*' factor }
///   factor   := number | variable [ '^' exponent ]
///   number   := digits [ '/' digits ]
///   variable := [a-z][a-z0-9_]*
/// Exponents are 1 or 2 and each term has total degree <= 2; implicit
/// multiplication is rejected. Mixed terms x*y contribute half their
/// coefficient to each of the two off-diagonal entries of A_Q.
///
/// Variables are ordered by first appearance unless an explicit order
/// is supplied (then unknown variables are rejected).
ParsedEquation parseEquation(const std::string& text,
                             const std::vector<std::string>* varOrder = nullptr);

struct ParsedForm {
    QuadraticForm form;
    std::vector<std::string> vars;
};

/// Parses a bare expression that must be a pure quadratic form (no
/// linear or constant part).
ParsedForm parseQuadraticForm(const std::string& text,
                              const std::vector<std::string>* varOrder = nullptr);

/// Deterministic normalized rendering "Q + L = c" that re-parses to the
/// same equation, variable order included.
std::string emitEquation(const QuadraticEquation& eq, const std::vector<std::string>& vars);

}  // namespace quadloop
