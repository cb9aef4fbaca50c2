#pragma once

#include "quadloop/isotropy.hpp"
#include "quadloop/loop.hpp"

namespace quadloop {

struct NoLoop {
    std::string reason;
};

/// A synthesized loop together with its non-triviality certificate and
/// the derivation trace that reproduces it.
struct Synthesized {
    Loop loop;
    NontrivialityCertificate certificate;
    SynthesisTrace trace;
};

using SynthesisOutcome = std::variant<Synthesized, NoLoop>;

/// Decides whether a non-trivial linear loop with invariant Q(x) = c
/// exists and synthesizes one: diagonalize, solve the diagonal equation,
/// then either a scaling update or a Pell rotation block, transported
/// back through the change of basis.
SynthesisOutcome linLoop(const QuadraticForm& q, const Rat& c, const SearchLimits& limits = {});

/// Affine reduction of a non-degenerate equation Q(x) + L(x) = c:
/// Q(2 delta x + h) = cTilde holds exactly on the solution set.
struct AffineReduction {
    Rat delta;   // det(A_Q) != 0
    VecQ h;      // adjugate(A_Q) * b
    Rat cTilde;  // 4 delta^2 c + Q(h)
};

AffineReduction affineReduce(const QuadraticEquation& eq);

/// <M, (s - h)/(2 delta), (M - I) h / (2 delta)> from a linear loop
/// satisfying Q = cTilde.
AffineLoop affineFromLinear(const AffineReduction& red, const LinearLoop& lin);

/// Change of basis for a degenerate form: tau's first k columns span
/// the kernel of A_Q, so Q(tau x) only involves the last r coordinates.
struct DegenerateSplitResult {
    MatQ tau;
    MatQ tauInverse;
    int rank = 0;       // r
    int kernelDim = 0;  // k = d - r
    QuadraticForm reducedForm;  // non-degenerate r-ary block
    LinearForm reducedLinear;   // coefficients on the last r coordinates
    std::vector<Rat> lambda;    // coefficients on the kernel coordinates
};

DegenerateSplitResult degenerateSplit(const QuadraticEquation& eq);

/// Decides whether a non-trivial affine (or linear) loop satisfying
/// Q(x) + L(x) = c exists and synthesizes one.
SynthesisOutcome affLoop(const QuadraticEquation& eq, const SearchLimits& limits = {});

/// (d+1)-variable linear loop simulating a synthesized result.
Synthesized augmentToLinear(const Synthesized& s);

}  // namespace quadloop
