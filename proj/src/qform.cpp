#include "quadloop/qform.hpp"

namespace quadloop {

QuadraticForm::QuadraticForm(MatQ m) : m_(std::move(m)) {
    if (!m_.isSquare()) throw std::invalid_argument("QuadraticForm: matrix not square");
    if (!m_.isSymmetric()) throw std::invalid_argument("QuadraticForm: matrix not symmetric");
}

Rat QuadraticForm::eval(const VecQ& x) const {
    if (x.dim() != dim()) throw std::invalid_argument("QuadraticForm: dimension mismatch");
    return x.dot(m_ * x);
}

QuadraticEquation::QuadraticEquation(QuadraticForm q, LinearForm l, Rat c)
    : form(std::move(q)), linear(std::move(l)), constant(std::move(c)) {
    if (form.dim() != linear.dim())
        throw std::invalid_argument("QuadraticEquation: dimension mismatch");
}

Rat QuadraticEquation::evaluate(const VecQ& x) const {
    return form.eval(x) + linear.eval(x) - constant;
}

Diagonalization diagonalize(const QuadraticForm& q) {
    const int d = q.dim();
    MatQ a = q.matrix();
    MatQ sigma = MatQ::identity(d);

    // Congruence column operation, mirrored on sigma. The paired row
    // operation keeps a symmetric: a -> E^T a E, sigma -> sigma E.
    auto addColumn = [&](int dst, int src, const Rat& f) {
        for (int i = 0; i < d; ++i) a(i, dst) += f * a(i, src);
        for (int j = 0; j < d; ++j) a(dst, j) += f * a(src, j);
        for (int i = 0; i < d; ++i) sigma(i, dst) += f * sigma(i, src);
    };
    auto swapColumns = [&](int x, int y) {
        for (int i = 0; i < d; ++i) std::swap(a(i, x), a(i, y));
        for (int j = 0; j < d; ++j) std::swap(a(x, j), a(y, j));
        for (int i = 0; i < d; ++i) std::swap(sigma(i, x), sigma(i, y));
    };

    for (int i = 0; i < d; ++i) {
        if (a(i, i).isZero()) {
            int j = -1;
            for (int k = i + 1; k < d; ++k)
                if (!a(i, k).isZero()) { j = k; break; }
            if (j < 0) continue;  // whole trailing row/column is zero
            if (!a(j, j).isZero()) {
                swapColumns(i, j);
            } else {
                // a(j,j) = 0 here, so adding column j makes the pivot 2*a(i,j).
                addColumn(i, j, Rat(1));
            }
        }
        Rat pivot = a(i, i);
        for (int k = i + 1; k < d; ++k) {
            if (a(i, k).isZero()) continue;
            addColumn(k, i, -(a(i, k) / pivot));
        }
    }

    Diagonalization res;
    res.diag.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) res.diag.push_back(a(i, i));
    res.sigmaInverse = sigma.inverse();
    res.sigma = std::move(sigma);
    return res;
}

namespace {

// Scale a rational vector to a primitive integer vector whose first
// nonzero entry is positive.
VecQ canonicalizeDirection(const VecQ& v) {
    Int l(1);
    for (int i = 0; i < v.dim(); ++i) l = lcmInt(l, v[i].den());
    Int g(0);
    for (int i = 0; i < v.dim(); ++i) g = gcdInt(g, v[i].num() * (l / v[i].den()));
    if (sgn(g) == 0) return v;
    Rat scale(l, g);
    VecQ w = scale * v;
    for (int i = 0; i < w.dim(); ++i) {
        if (w[i].isZero()) continue;
        if (w[i].sign() < 0) w = Rat(-1) * w;
        break;
    }
    return w;
}

}  // namespace

RankKernel rankAndKernelBasis(const QuadraticForm& q) {
    const int d = q.dim();
    MatQ a = q.matrix();

    // Row echelon form, tracking pivot columns.
    std::vector<int> pivotCol;
    int row = 0;
    for (int col = 0; col < d && row < d; ++col) {
        int p = -1;
        for (int i = row; i < d; ++i)
            if (!a(i, col).isZero()) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < d; ++j) std::swap(a(p, j), a(row, j));
        for (int i = 0; i < d; ++i) {
            if (i == row || a(i, col).isZero()) continue;
            Rat f = a(i, col) / a(row, col);
            for (int j = col; j < d; ++j) a(i, j) -= f * a(row, j);
        }
        pivotCol.push_back(col);
        ++row;
    }

    RankKernel rk;
    rk.rank = static_cast<int>(pivotCol.size());
    std::vector<bool> isPivot(static_cast<size_t>(d), false);
    for (int c : pivotCol) isPivot[static_cast<size_t>(c)] = true;
    for (int freeCol = 0; freeCol < d; ++freeCol) {
        if (isPivot[static_cast<size_t>(freeCol)]) continue;
        VecQ v(d);
        v[freeCol] = Rat(1);
        for (size_t r = 0; r < pivotCol.size(); ++r) {
            int pc = pivotCol[r];
            v[pc] = -(a(static_cast<int>(r), freeCol) / a(static_cast<int>(r), pc));
        }
        rk.kernel.push_back(canonicalizeDirection(v));
    }
    return rk;
}

Definiteness definiteness(const std::vector<Rat>& diag) {
    int pos = 0, neg = 0, zero = 0;
    for (const auto& a : diag) {
        if (a.isZero()) ++zero;
        else if (a.sign() > 0) ++pos;
        else ++neg;
    }
    if (pos && neg) return Definiteness::Indefinite;
    if (zero) return Definiteness::SemiDefinite;
    return pos ? Definiteness::PositiveDefinite : Definiteness::NegativeDefinite;
}

std::string definitenessName(Definiteness d) {
    switch (d) {
        case Definiteness::PositiveDefinite: return "positive-definite";
        case Definiteness::NegativeDefinite: return "negative-definite";
        case Definiteness::Indefinite: return "indefinite";
        case Definiteness::SemiDefinite: return "semi-definite";
    }
    return "?";
}

MatQ completeKernelBasisToTau(const std::vector<VecQ>& kernel, int d) {
    std::vector<VecQ> cols = kernel;
    auto rankOf = [&](const std::vector<VecQ>& vs) {
        MatQ m(d, static_cast<int>(vs.size()));
        for (int j = 0; j < static_cast<int>(vs.size()); ++j)
            for (int i = 0; i < d; ++i) m(i, j) = vs[static_cast<size_t>(j)][i];
        return m.rank();
    };
    if (rankOf(cols) != static_cast<int>(cols.size()))
        throw std::invalid_argument("completeKernelBasisToTau: kernel vectors dependent");
    for (int e = 0; e < d && static_cast<int>(cols.size()) < d; ++e) {
        VecQ unit(d);
        unit[e] = Rat(1);
        cols.push_back(unit);
        if (rankOf(cols) != static_cast<int>(cols.size())) cols.pop_back();
    }
    MatQ tau(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) tau(i, j) = cols[static_cast<size_t>(j)][i];
    return tau;
}

}  // namespace quadloop
