#include "quadloop/pell.hpp"

namespace quadloop {

namespace {

bool nivenExcluded(const Rat& alpha) {
    return alpha.isZero() || alpha == Rat(1) || alpha == Rat(-1) || alpha == Rat(1, 2) ||
           alpha == Rat(-1, 2);
}

}  // namespace

PellSolution solvePell(const Rat& a, const Rat& b) {
    if (a.isZero() || b.isZero()) throw std::domain_error("solvePell: zero coefficient");
    const Rat q = b / a;  // the equation only depends on b/a
    PellSolution sol;
    sol.a = a;
    sol.b = b;
    if (q == Rat(-1)) {
        sol.alpha = Rat(5, 3);  // x^2 - y^2 = 1
        sol.beta = Rat(4, 3);
    } else if (q == Rat(1)) {
        sol.alpha = Rat(3, 5);  // generic point would have alpha = 0
        sol.beta = Rat(4, 5);
    } else if (q == Rat(3)) {
        sol.alpha = Rat(-11, 13);  // generic alpha = 1/2
        sol.beta = Rat(4, 13);
    } else if (q == Rat(1, 3)) {
        sol.alpha = Rat(1, 7);  // generic alpha = -1/2
        sol.beta = Rat(12, 7);
    } else {
        sol.alpha = (q - Rat(1)) / (q + Rat(1));
        sol.beta = Rat(2) / (q + Rat(1));
    }
    if (sol.alpha * sol.alpha + q * sol.beta * sol.beta != Rat(1) || sol.beta.isZero() ||
        nivenExcluded(sol.alpha))
        throw std::logic_error("solvePell: constructed solution violates its invariant");
    return sol;
}

MatQ rotationMatrix(const PellSolution& sol) {
    const Rat ratio = sol.b / sol.a;
    MatQ r(2, 2, {sol.alpha, -(ratio * sol.beta), sol.beta, sol.alpha});
    if (!nivenCheck(r)) throw std::logic_error("rotationMatrix: Niven check failed");
    return r;
}

bool nivenCheck(const MatQ& r) {
    if (r.rows() != 2 || r.cols() != 2) throw std::invalid_argument("nivenCheck: not 2x2");
    Rat halfTrace = (r(0, 0) + r(1, 1)) / Rat(2);
    return !nivenExcluded(halfTrace);
}

}  // namespace quadloop
