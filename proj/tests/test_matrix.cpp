#include <doctest.h>

#include "quadloop/matrix.hpp"

#include <random>

using namespace quadloop;

namespace {

MatQ randomMatrix(std::mt19937_64& rng, int d, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    MatQ m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = Rat(dist(rng));
    return m;
}

}  // namespace

TEST_CASE("identity basics") {
    CHECK(MatQ::identity(2).determinant() == Rat(1));
    for (int d = 1; d <= 4; ++d) CHECK(MatQ::identity(d).adjugate() == MatQ::identity(d));
}

TEST_CASE("cofactor matrix of the 2x2 identity with a linear vector") {
    // delta = 1, C = I, h = C*b for b = (-3,-1)
    MatQ a = MatQ::identity(2);
    CHECK(a.determinant() == Rat(1));
    MatQ c = a.adjugate();
    CHECK(c == MatQ::identity(2));
    VecQ h = c * VecQ{Rat(-3), Rat(-1)};
    CHECK(h == VecQ{Rat(-3), Rat(-1)});
}

TEST_CASE("adjugate identity A*C = det(A)*I on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int d = 2 + trial % 4;
        MatQ a = randomMatrix(rng, d, -9, 9);
        MatQ c = a.adjugate();
        Rat det = a.determinant();
        CHECK(a * c == det * MatQ::identity(d));
        CHECK(c * a == det * MatQ::identity(d));
    }
}

TEST_CASE("inverse is exact and rejects singular input") {
    std::mt19937_64 rng(13);
    int checked = 0;
    while (checked < 30) {
        int d = 2 + checked % 3;
        MatQ a = randomMatrix(rng, d, -7, 7);
        if (a.determinant().isZero()) continue;
        CHECK(a * a.inverse() == MatQ::identity(d));
        ++checked;
    }
    MatQ sing(2, 2, {Rat(1), Rat(2), Rat(2), Rat(4)});
    CHECK_THROWS_AS(sing.inverse(), SingularMatrixError);
    CHECK(sing.rank() == 1);
}

TEST_CASE("vector operations") {
    VecQ v{Rat(1), Rat(2)};
    VecQ w{Rat(3), Rat(-1)};
    CHECK(v.dot(w) == Rat(1));
    CHECK((v + w) == VecQ{Rat(4), Rat(1)});
    CHECK((Rat(2) * v) == VecQ{Rat(2), Rat(4)});
    CHECK(v.toString() == "(1, 2)");
    CHECK_THROWS_AS(v.dot(VecQ{Rat(1)}), std::invalid_argument);
}
