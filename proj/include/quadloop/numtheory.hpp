#pragma once

#include "quadloop/rational.hpp"

#include <utility>
#include <vector>

namespace quadloop {

/// Prime factorization of a nonzero integer: sign * prod(prime^exp).
/// Primes are strictly increasing, exponents >= 1.
struct Factorization {
    int sign = 1;
    std::vector<std::pair<Int, unsigned>> factors;

    Int reconstruct() const;
};

/// Trial division up to 10^6, then Pollard rho on the cofactor.
Factorization factor(const Int& n);

/// n = squarefree * root^2 with squarefree free of repeated prime
/// factors and sign(squarefree) = sign(n).
std::pair<Int, Int> squarefreePart(const Int& n);

/// True iff x^2 = q (mod n) is solvable, n >= 1. Decided per prime
/// power of n and combined by CRT.
bool isQuadraticResidue(const Int& q, const Int& n);

/// Legendre symbol (a|p) for odd prime p.
int legendreSymbol(const Int& a, const Int& p);

/// Hilbert symbol (a,b)_p at a finite prime p, via the closed formulas
/// in terms of p-adic valuations and Legendre symbols.
int hilbertSymbol(const Rat& a, const Rat& b, const Int& p);

/// Hilbert symbol at the real place: -1 iff a < 0 and b < 0.
int hilbertSymbolInf(const Rat& a, const Rat& b);

/// True iff d is a square in Q_p (p = 2 included); d nonzero.
bool isSquareInQp(const Int& d, const Int& p);

}  // namespace quadloop
