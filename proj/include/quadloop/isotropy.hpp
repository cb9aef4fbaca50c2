#pragma once

#include "quadloop/matrix.hpp"
#include "quadloop/numtheory.hpp"

#include <array>
#include <optional>
#include <vector>

namespace quadloop {

/// Diagonal form a_1 x_1^2 + ... + a_n x_n^2 with all coefficients
/// nonzero integers (zero coefficients are handled by the callers).
struct DiagonalFormZ {
    std::vector<Int> coeffs;

    explicit DiagonalFormZ(std::vector<Int> cs);

    int dim() const { return static_cast<int>(coeffs.size()); }
    Rat eval(const VecQ& x) const;
    Int eval(const std::vector<Int>& x) const;
    bool mixedSigns() const;
};

/// Cap on the max-norm of witness searches. Exhausting it raises
/// SearchLimitExceeded, which is distinct from a mathematical "no
/// solutions" answer.
struct SearchLimits {
    long maxNorm = 1000000;
};

struct SearchLimitExceeded : std::runtime_error {
    explicit SearchLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Ternary form with abc nonzero and square-free (coefficients pairwise
/// coprime and individually square-free), equi-isotropic with the input.
/// Witness entries map back as original_i = back[i] * normalized_i.
struct TernaryNormalization {
    std::array<Int, 3> coeffs;
    std::array<Rat, 3> back;

    /// Transport a witness of the normalized form to a primitive integer
    /// witness of the original form.
    std::vector<Int> mapWitnessBack(const std::vector<Int>& w) const;
};

TernaryNormalization normalizeTernary(const Int& a, const Int& b, const Int& c);

/// Exact isotropy decision: n=1 never, n=2 square test, n=3 Legendre
/// after normalization, n=4 Hasse-Minkowski local conditions, n>=5
/// Meyer (indefinite iff isotropic).
bool isIsotropic(const DiagonalFormZ& f);

/// Nonzero primitive integer witness with f(w) = 0, minimal max-norm,
/// ties broken lexicographically by (|entry|, sign) with positive
/// preferred. Requires isIsotropic(f).
std::vector<Int> findIsotropic(const DiagonalFormZ& f, const SearchLimits& limits = {});

/// Rewrites a witness so that every entry is nonzero, by repeatedly
/// rotating a (nonzero, zero) coordinate pair with a Pell solution.
VecQ eliminateZeros(const DiagonalFormZ& f, VecQ v);

/// Alg. "solve": nonzero rational solution of a_1 x_1^2 + ... = c with
/// all entries nonzero, or nullopt when none exists.
std::optional<VecQ> solveDiagonal(const std::vector<Int>& coeffs, const Int& c,
                                  const SearchLimits& limits = {});

/// Same, for rational coefficients; clears denominators first.
std::optional<VecQ> solveDiagonalRational(const std::vector<Rat>& coeffs, const Rat& c,
                                          const SearchLimits& limits = {});

}  // namespace quadloop
