#include "quadloop/matrix.hpp"

#include <sstream>

namespace quadloop {

bool VecQ::isZero() const {
    for (const auto& x : e_)
        if (!x.isZero()) return false;
    return true;
}

VecQ operator+(const VecQ& a, const VecQ& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("VecQ: dimension mismatch");
    VecQ r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return r;
}

VecQ operator-(const VecQ& a, const VecQ& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("VecQ: dimension mismatch");
    VecQ r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return r;
}

VecQ operator*(const Rat& s, const VecQ& v) {
    VecQ r(v.dim());
    for (int i = 0; i < v.dim(); ++i) r[i] = s * v[i];
    return r;
}

Rat VecQ::dot(const VecQ& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("VecQ: dimension mismatch");
    Rat acc;
    for (int i = 0; i < dim(); ++i) acc += e_[static_cast<size_t>(i)] * o[i];
    return acc;
}

std::string VecQ::toString() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < dim(); ++i) {
        if (i) os << ", ";
        os << e_[static_cast<size_t>(i)];
    }
    os << ")";
    return os.str();
}

MatQ::MatQ(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("MatQ: negative dimension");
}

MatQ::MatQ(int rows, int cols, std::initializer_list<Rat> xs) : MatQ(rows, cols) {
    if (xs.size() != e_.size()) throw std::invalid_argument("MatQ: wrong entry count");
    size_t k = 0;
    for (const auto& x : xs) e_[k++] = x;
}

MatQ MatQ::identity(int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Rat(1);
    return m;
}

MatQ operator+(const MatQ& a, const MatQ& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("MatQ: dimension mismatch");
    MatQ r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

MatQ operator-(const MatQ& a, const MatQ& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("MatQ: dimension mismatch");
    MatQ r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

MatQ operator*(const MatQ& a, const MatQ& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("MatQ: dimension mismatch");
    MatQ r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k).isZero()) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

VecQ operator*(const MatQ& a, const VecQ& v) {
    if (a.cols() != v.dim()) throw std::invalid_argument("MatQ: dimension mismatch");
    VecQ r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

MatQ operator*(const Rat& s, const MatQ& a) {
    MatQ r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

bool operator==(const MatQ& a, const MatQ& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

MatQ MatQ::transpose() const {
    MatQ r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

namespace {

// Gaussian elimination on an augmented copy; returns (rank, detOfLeftBlock).
// Pivoting is by first nonzero entry, which is fine in exact arithmetic.
struct Elimination {
    MatQ m;
    Rat det;
    int rank = 0;
};

Elimination eliminate(MatQ work, int leftCols) {
    const int n = work.rows();
    Rat det(1);
    int rank = 0;
    int row = 0;
    for (int col = 0; col < leftCols && row < n; ++col) {
        int pivot = -1;
        for (int i = row; i < n; ++i)
            if (!work(i, col).isZero()) { pivot = i; break; }
        if (pivot < 0) { det = Rat(0); continue; }
        if (pivot != row) {
            for (int j = 0; j < work.cols(); ++j) std::swap(work(pivot, j), work(row, j));
            det = -det;
        }
        det *= work(row, col);
        for (int i = 0; i < n; ++i) {
            if (i == row || work(i, col).isZero()) continue;
            Rat f = work(i, col) / work(row, col);
            for (int j = col; j < work.cols(); ++j) work(i, j) -= f * work(row, j);
        }
        ++row;
        ++rank;
    }
    if (rank < std::min(n, leftCols)) det = Rat(0);
    return {std::move(work), det, rank};
}

}  // namespace

Rat MatQ::determinant() const {
    if (!isSquare()) throw std::invalid_argument("MatQ: determinant of non-square matrix");
    if (rows_ == 0) return Rat(1);
    return eliminate(*this, cols_).det;
}

MatQ MatQ::inverse() const {
    if (!isSquare()) throw std::invalid_argument("MatQ: inverse of non-square matrix");
    const int n = rows_;
    MatQ work(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) work(i, j) = (*this)(i, j);
        work(i, n + i) = Rat(1);
    }
    auto el = eliminate(std::move(work), n);
    if (el.rank < n) throw SingularMatrixError();
    MatQ inv(n, n);
    for (int i = 0; i < n; ++i) {
        Rat p = el.m(i, i);
        for (int j = 0; j < n; ++j) inv(i, j) = el.m(i, n + j) / p;
    }
    return inv;
}

MatQ MatQ::adjugate() const {
    if (!isSquare()) throw std::invalid_argument("MatQ: adjugate of non-square matrix");
    const int n = rows_;
    if (n == 0) return MatQ(0, 0);
    if (n == 1) { MatQ r(1, 1); r(0, 0) = Rat(1); return r; }
    MatQ adj(n, n);
    MatQ minor(n - 1, n - 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int mi = 0;
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                int mj = 0;
                for (int c = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(mi, mj) = (*this)(r, c);
                    ++mj;
                }
                ++mi;
            }
            Rat cof = minor.determinant();
            if ((i + j) % 2) cof = -cof;
            adj(j, i) = cof;  // transpose of the cofactor matrix
        }
    }
    return adj;
}

int MatQ::rank() const {
    if (rows_ == 0 || cols_ == 0) return 0;
    return eliminate(*this, cols_).rank;
}

bool MatQ::isSymmetric() const {
    if (!isSquare()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool MatQ::isDiagonal() const {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (i != j && !(*this)(i, j).isZero()) return false;
    return true;
}

VecQ MatQ::column(int j) const {
    VecQ v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

VecQ MatQ::row(int i) const {
    VecQ v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

std::string MatQ::toString() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << (*this)(i, j);
        }
    }
    os << "]";
    return os.str();
}

}  // namespace quadloop
