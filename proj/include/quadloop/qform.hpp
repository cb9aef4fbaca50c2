#pragma once

#include "quadloop/matrix.hpp"

#include <vector>

namespace quadloop {

/// d-ary quadratic form, identified with its symmetric matrix.
class QuadraticForm {
public:
    explicit QuadraticForm(MatQ m);

    int dim() const { return m_.rows(); }
    const MatQ& matrix() const { return m_; }

    /// x^T A x.
    Rat eval(const VecQ& x) const;

private:
    MatQ m_;
};

/// Linear form b^T x.
class LinearForm {
public:
    explicit LinearForm(VecQ b) : b_(std::move(b)) {}

    int dim() const { return b_.dim(); }
    const VecQ& coeffs() const { return b_; }
    bool isZero() const { return b_.isZero(); }

    Rat eval(const VecQ& x) const { return b_.dot(x); }

private:
    VecQ b_;
};

/// The invariant Q(x) + L(x) = c.
struct QuadraticEquation {
    QuadraticForm form;
    LinearForm linear;
    Rat constant;

    QuadraticEquation(QuadraticForm q, LinearForm l, Rat c);

    int dim() const { return form.dim(); }

    /// Q(x) + L(x) - c; zero iff x satisfies the invariant.
    Rat evaluate(const VecQ& x) const;
};

/// Result of rational congruence diagonalization: sigma invertible with
/// sigma^T A sigma = diag(entries).
struct Diagonalization {
    std::vector<Rat> diag;
    MatQ sigma;
    MatQ sigmaInverse;
};

/// Symmetric Gaussian elimination with paired row/column operations.
/// Degenerate forms are allowed; zero diagonal entries mark the kernel.
Diagonalization diagonalize(const QuadraticForm& q);

struct RankKernel {
    int rank = 0;
    std::vector<VecQ> kernel;  // primitive integer vectors, A v = 0
};

RankKernel rankAndKernelBasis(const QuadraticForm& q);

enum class Definiteness { PositiveDefinite, NegativeDefinite, Indefinite, SemiDefinite };

Definiteness definiteness(const std::vector<Rat>& diag);
std::string definitenessName(Definiteness d);

/// Invertible tau whose first columns are the given (independent)
/// kernel vectors, completed greedily with standard basis vectors.
MatQ completeKernelBasisToTau(const std::vector<VecQ>& kernel, int d);

}  // namespace quadloop
