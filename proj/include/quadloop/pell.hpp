#pragma once

#include "quadloop/matrix.hpp"

namespace quadloop {

/// Rational point (alpha, beta) on x^2 + (b/a) y^2 = 1 with beta != 0
/// and alpha outside {0, +-1/2, +-1}, so the derived rotation has no
/// root-of-unity eigenvalue.
struct PellSolution {
    Rat alpha;
    Rat beta;
    Rat a;
    Rat b;
};

/// Deterministic: the generic point ((b-a)/(a+b), 2a/(a+b)) unless it is
/// excluded, in which case a fixed fallback point for the ratio b/a.
PellSolution solvePell(const Rat& a, const Rat& b);

/// R = [[alpha, -(b/a) beta], [beta, alpha]]; preserves a x^2 + b y^2.
MatQ rotationMatrix(const PellSolution& sol);

/// True iff trace(R)/2 lies outside {0, +-1/2, +-1}. Passing together
/// with det(R) = 1 rules out root-of-unity eigenvalues, hence the orbit
/// of R on any nonzero start vector is infinite.
bool nivenCheck(const MatQ& r);

}  // namespace quadloop
