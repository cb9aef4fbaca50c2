#include <doctest.h>

#include "quadloop/qform.hpp"

#include <random>

using namespace quadloop;

namespace {

// -11x^2 + y^2 - 3z^2 + 2xy - 12xz
MatQ exampleDegenerateMatrix() {
    return MatQ(3, 3,
                {Rat(-11), Rat(1), Rat(-6), Rat(1), Rat(1), Rat(0), Rat(-6), Rat(0), Rat(-3)});
}

MatQ randomSymmetric(std::mt19937_64& rng, int d, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    MatQ m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            m(i, j) = Rat(dist(rng));
            m(j, i) = m(i, j);
        }
    return m;
}

bool isDiagGivenBy(const MatQ& a, const Diagonalization& dg) {
    MatQ conj = dg.sigma.transpose() * a * dg.sigma;
    if (!conj.isDiagonal()) return false;
    for (int i = 0; i < a.rows(); ++i)
        if (conj(i, i) != dg.diag[static_cast<size_t>(i)]) return false;
    return true;
}

}  // namespace

TEST_CASE("evaluate on fixtures") {
    QuadraticEquation ex52{QuadraticForm(MatQ::identity(2)), LinearForm(VecQ{Rat(-3), Rat(-1)}),
                           Rat(0)};
    CHECK(ex52.evaluate(VecQ{Rat(2), Rat(-1)}).isZero());

    QuadraticEquation hom{QuadraticForm(MatQ::identity(2)), LinearForm(VecQ(2)), Rat(0)};
    CHECK(hom.evaluate(VecQ(2)).isZero());

    QuadraticEquation ex57{QuadraticForm(exampleDegenerateMatrix()),
                           LinearForm(VecQ{Rat(1), Rat(0), Rat(1)}), Rat(-1)};
    CHECK(ex57.evaluate(VecQ{Rat(2), Rat(-1), Rat(-4)}).isZero());

    CHECK_THROWS_AS(ex52.evaluate(VecQ(3)), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticForm(MatQ(2, 2, {Rat(0), Rat(1), Rat(2), Rat(0)})),
                    std::invalid_argument);
}

TEST_CASE("diagonalize simple and mixed forms") {
    auto dg = diagonalize(QuadraticForm(MatQ::identity(2)));
    CHECK(dg.diag == std::vector<Rat>{Rat(1), Rat(1)});
    CHECK(dg.sigma == MatQ::identity(2));

    // Q = xy has matrix [[0,1/2],[1/2,0]]; diagonalization must produce
    // one positive and one negative entry.
    MatQ xy(2, 2, {Rat(0), Rat(1, 2), Rat(1, 2), Rat(0)});
    auto dxy = diagonalize(QuadraticForm(xy));
    CHECK(isDiagGivenBy(xy, dxy));
    CHECK(dxy.diag[0].sign() * dxy.diag[1].sign() == -1);
}

TEST_CASE("the published change of basis for the degenerate example checks out") {
    MatQ a = exampleDegenerateMatrix();
    MatQ tau(3, 3, {Rat(-1), Rat(0), Rat(0), Rat(1), Rat(3), Rat(0), Rat(2), Rat(0), Rat(3)});
    MatQ conj = tau.transpose() * a * tau;
    MatQ expected(3, 3);
    expected(1, 1) = Rat(9);
    expected(2, 2) = Rat(-27);
    CHECK(conj == expected);
}

TEST_CASE("diagonalize handles the degenerate example") {
    MatQ a = exampleDegenerateMatrix();
    auto dg = diagonalize(QuadraticForm(a));
    CHECK(isDiagGivenBy(a, dg));
    CHECK_FALSE(dg.sigma.determinant().isZero());
    int zeros = 0;
    for (const auto& x : dg.diag) zeros += x.isZero();
    CHECK(zeros == 1);  // rank 2
}

TEST_CASE("diagonalization works on random symmetric matrices") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        int d = 1 + trial % 6;
        MatQ a = randomSymmetric(rng, d, -9, 9);
        auto dg = diagonalize(QuadraticForm(a));
        CHECK(isDiagGivenBy(a, dg));
        CHECK_FALSE(dg.sigma.determinant().isZero());
        CHECK(dg.sigma * dg.sigmaInverse == MatQ::identity(d));

        // rank via an independent elimination
        int nonzero = 0;
        for (const auto& x : dg.diag) nonzero += !x.isZero();
        CHECK(nonzero == a.rank());
    }
}

TEST_CASE("change of variables transports evaluation") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<long> dist(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        int d = 2 + trial % 4;
        MatQ a = randomSymmetric(rng, d, -6, 6);
        QuadraticForm q(a);
        auto dg = diagonalize(q);
        MatQ diagMat(d, d);
        for (int i = 0; i < d; ++i) diagMat(i, i) = dg.diag[static_cast<size_t>(i)];
        QuadraticForm dform(diagMat);
        VecQ x(d);
        for (int i = 0; i < d; ++i) x[i] = Rat(dist(rng), 1 + trial % 3);
        CHECK(q.eval(dg.sigma * x) == dform.eval(x));
    }
}

TEST_CASE("rank and kernel basis") {
    auto rk = rankAndKernelBasis(QuadraticForm(MatQ::identity(3)));
    CHECK(rk.rank == 3);
    CHECK(rk.kernel.empty());

    MatQ d3(3, 3);
    d3(1, 1) = Rat(9);
    d3(2, 2) = Rat(-27);
    auto rk2 = rankAndKernelBasis(QuadraticForm(d3));
    CHECK(rk2.rank == 2);
    REQUIRE(rk2.kernel.size() == 1);
    CHECK(rk2.kernel[0] == VecQ{Rat(1), Rat(0), Rat(0)});

    auto rk3 = rankAndKernelBasis(QuadraticForm(exampleDegenerateMatrix()));
    CHECK(rk3.rank == 2);
    REQUIRE(rk3.kernel.size() == 1);
    // proportional to (-1, 1, 2)
    const VecQ& v = rk3.kernel[0];
    CHECK((exampleDegenerateMatrix() * v).isZero());
    CHECK(v[1] * Rat(-1) == v[0]);
    CHECK(v[2] * Rat(-1) == Rat(2) * v[0]);
}

TEST_CASE("definiteness classification") {
    CHECK(definiteness({Rat(1), Rat(1)}) == Definiteness::PositiveDefinite);
    CHECK(definiteness({Rat(1), Rat(-1)}) == Definiteness::Indefinite);
    CHECK(definiteness({Rat(0), Rat(9), Rat(-27)}) == Definiteness::Indefinite);
    CHECK(definiteness({Rat(0), Rat(2)}) == Definiteness::SemiDefinite);
    CHECK(definiteness({Rat(-3), Rat(-5)}) == Definiteness::NegativeDefinite);
    CHECK(definitenessName(Definiteness::Indefinite) == "indefinite");
}

TEST_CASE("kernel completion to an invertible tau") {
    CHECK(completeKernelBasisToTau({}, 2) == MatQ::identity(2));

    auto rk = rankAndKernelBasis(QuadraticForm(exampleDegenerateMatrix()));
    MatQ tau = completeKernelBasisToTau(rk.kernel, 3);
    CHECK_FALSE(tau.determinant().isZero());
    MatQ conj = tau.transpose() * exampleDegenerateMatrix() * tau;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i < 1 || j < 1) CHECK(conj(i, j).isZero());

    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> dist(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        VecQ u(3);
        for (int i = 0; i < 3; ++i) u[i] = Rat(dist(rng));
        if (u.isZero()) continue;
        MatQ a(3, 3);  // rank-1 symmetric u u^T
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = u[i] * u[j];
        auto kr = rankAndKernelBasis(QuadraticForm(a));
        REQUIRE(kr.rank == 1);
        MatQ t = completeKernelBasisToTau(kr.kernel, 3);
        MatQ c = t.transpose() * a * t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i < 2 || j < 2) CHECK(c(i, j).isZero());
    }
}
