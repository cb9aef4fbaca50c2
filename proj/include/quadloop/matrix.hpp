#pragma once

#include "quadloop/rational.hpp"

#include <initializer_list>
#include <vector>

namespace quadloop {

struct SingularMatrixError : std::domain_error {
    SingularMatrixError() : std::domain_error("matrix is singular") {}
};

/// Dense column vector over the rationals.
class VecQ {
public:
    VecQ() = default;
    explicit VecQ(int dim) : e_(static_cast<size_t>(dim)) {
        if (dim < 0) throw std::invalid_argument("VecQ: negative dimension");
    }
    VecQ(std::initializer_list<Rat> xs) : e_(xs) {}
    explicit VecQ(std::vector<Rat> xs) : e_(std::move(xs)) {}

    int dim() const { return static_cast<int>(e_.size()); }
    Rat& operator[](int i) { return e_[static_cast<size_t>(i)]; }
    const Rat& operator[](int i) const { return e_[static_cast<size_t>(i)]; }

    bool isZero() const;

    friend VecQ operator+(const VecQ& a, const VecQ& b);
    friend VecQ operator-(const VecQ& a, const VecQ& b);
    friend VecQ operator*(const Rat& s, const VecQ& v);
    friend bool operator==(const VecQ& a, const VecQ& b) { return a.e_ == b.e_; }
    friend bool operator!=(const VecQ& a, const VecQ& b) { return !(a == b); }

    Rat dot(const VecQ& o) const;
    std::string toString() const;

private:
    std::vector<Rat> e_;
};

/// Dense matrix over the rationals, row-major.
class MatQ {
public:
    MatQ() = default;
    MatQ(int rows, int cols);
    MatQ(int rows, int cols, std::initializer_list<Rat> xs);

    static MatQ identity(int n);
    static MatQ zero(int n) { return MatQ(n, n); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    friend MatQ operator+(const MatQ& a, const MatQ& b);
    friend MatQ operator-(const MatQ& a, const MatQ& b);
    friend MatQ operator*(const MatQ& a, const MatQ& b);
    friend VecQ operator*(const MatQ& a, const VecQ& v);
    friend MatQ operator*(const Rat& s, const MatQ& a);
    friend bool operator==(const MatQ& a, const MatQ& b);
    friend bool operator!=(const MatQ& a, const MatQ& b) { return !(a == b); }

    MatQ transpose() const;
    Rat determinant() const;
    /// Inverse; throws SingularMatrixError when determinant is zero.
    MatQ inverse() const;
    /// Adjugate C with A*C = C*A = det(A)*I.
    MatQ adjugate() const;
    int rank() const;

    bool isSquare() const { return rows_ == cols_; }
    bool isSymmetric() const;
    bool isDiagonal() const;

    VecQ column(int j) const;
    VecQ row(int i) const;

    std::string toString() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

}  // namespace quadloop
