#pragma once

#include "quadloop/qform.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace quadloop {

/// x <- s; while * do x <- M x
struct LinearLoop {
    MatQ update;
    VecQ init;
};

/// x <- s; while * do x <- M x + t
struct AffineLoop {
    MatQ update;
    VecQ init;
    VecQ translation;
};

using Loop = std::variant<LinearLoop, AffineLoop>;

int loopDim(const Loop& loop);
const MatQ& loopUpdate(const Loop& loop);
const VecQ& loopInit(const Loop& loop);
/// Translation vector; zero for linear loops.
VecQ loopTranslation(const Loop& loop);

/// One loop iteration applied to a state vector.
VecQ stepLoop(const Loop& loop, const VecQ& x);

/// Exact state after n iterations; iterate(loop, 0) is the initial vector.
VecQ iterate(const Loop& loop, long n);

/// States x(0), ..., x(n).
std::vector<VecQ> iterates(const Loop& loop, long n);

/// Embeds an affine loop into a linear loop with one extra leading
/// variable pinned to 1; the last d coordinates follow the affine orbit.
LinearLoop augment(const AffineLoop& loop);

struct VerifyReport {
    bool ok = false;
    long firstViolation = -1;  // -1 when all checked states satisfy the invariant
    long checked = 0;
};

/// Evaluates the equation at x(0..n) exactly.
VerifyReport verifyInvariant(const Loop& loop, const QuadraticEquation& eq, long n);

/// Witness that the loop's orbit is infinite.
struct NontrivialityCertificate {
    enum class Kind { NivenRotationBlock, ScalingBlock, DistinctPrefix };

    Kind kind = Kind::DistinctPrefix;
    // NivenRotationBlock: 2x2 block at core coordinates (blockI, blockJ)
    // with determinant 1 and trace/2 = alpha outside {0, +-1/2, +-1},
    // acting on a nonzero pair of initial values.
    Rat alpha;
    int blockI = -1;
    int blockJ = -1;
    // ScalingBlock: core coordinate multiplied by `factor` (|factor| > 1)
    // each iteration, starting from the nonzero value `initial`.
    int coordinate = -1;
    Rat factor;
    Rat initial;
    // DistinctPrefix: the first `prefixLength` states are pairwise distinct.
    long prefixLength = 0;

    std::string describe() const;
};

/// One step of a synthesis derivation. A trace is a core loop followed
/// by transformations; replaying it reproduces the synthesized loop.
struct TraceStep {
    enum class Kind {
        Core,            // initial loop <matrix, init, translation>, label names the construction
        Conjugate,       // (M,s,t) -> (P M P^-1, P s, P t)
        AffineUnreduce,  // linear (M,s) -> affine <M, (s-h)/(2 delta), (M-I)h/(2 delta)>
        AugmentScale,    // affine (M,s,t) -> linear <[[1,0],[t/beta1,M]], (beta1,s)>
        Embed,           // place coordinates at `positions` inside dim-d identity
    };

    Kind kind = Kind::Core;
    std::string label;

    MatQ matrix;       // Core update / Conjugate P
    VecQ init;         // Core
    VecQ translation;  // Core

    Rat delta;  // AffineUnreduce
    VecQ h;     // AffineUnreduce
    Rat cTilde; // AffineUnreduce (audit only)

    Rat beta1;  // AugmentScale

    int dim = 0;                 // Embed
    std::vector<int> positions;  // Embed: source coordinate i lands at positions[i]
    VecQ fillInit;               // Embed: init values for coordinates not covered
};

using SynthesisTrace = std::vector<TraceStep>;

/// Reconstructs the loop a trace describes.
Loop replayTrace(const SynthesisTrace& trace);

/// For a synthesized loop (trace given): validates that the trace
/// replays to the loop and that the declared certificate's conditions
/// hold on the trace's core; throws std::logic_error on mismatch.
/// For a foreign loop (no trace): checks that the first prefixLength
/// states are pairwise distinct, returning nullopt when they are not.
std::optional<NontrivialityCertificate> certifyNontrivial(
    const Loop& loop, const SynthesisTrace* trace, const NontrivialityCertificate* declared,
    long prefixLength = 100);

}  // namespace quadloop
