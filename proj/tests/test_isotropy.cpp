#include <doctest.h>

#include "quadloop/isotropy.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace quadloop;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
    std::vector<Int> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

// Independent isotropy oracle for ternary forms: squarefree-reduce with
// plain machine integers, then exhaust the Holzer box.
bool ternaryOracle(long a, long b, long c) {
    long v[3] = {a, b, c};
    auto stripSquares = [](long& x) {
        for (long p = 2; p * p <= std::abs(x); ++p)
            while (x % (p * p) == 0) x /= p * p;
    };
    for (auto& x : v) stripSquares(x);
    bool again = true;
    while (again) {
        again = false;
        for (int i = 0; i < 3 && !again; ++i) {
            int j = (i + 1) % 3, k = (i + 2) % 3;
            long g = std::gcd(std::abs(v[j]), std::abs(v[k]));
            if (g <= 1) continue;
            long p = 2;
            while (g % p) ++p;  // smallest prime factor of g
            v[j] /= p;
            v[k] /= p;
            v[i] *= p;
            stripSquares(v[i]);
            again = true;
        }
    }
    long A = v[0], B = v[1], C = v[2];
    long bx = static_cast<long>(std::sqrt(static_cast<double>(std::abs(B) * std::abs(C)))) + 1;
    long by = static_cast<long>(std::sqrt(static_cast<double>(std::abs(A) * std::abs(C)))) + 1;
    for (long x = 0; x <= bx; ++x)
        for (long y = 0; y <= by; ++y) {
            long rest = A * x * x + B * y * y;
            if (rest % C) continue;
            long t = -rest / C;
            if (t < 0) continue;
            long z = static_cast<long>(std::sqrt(static_cast<double>(t)));
            for (long zz = std::max(0L, z - 1); zz <= z + 1; ++zz)
                if (zz * zz == t && (x || y || zz)) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("normalizeTernary fixtures") {
    auto n1 = normalizeTernary(Int(1), Int(1), Int(-25));
    CHECK(n1.coeffs == std::array<Int, 3>{Int(1), Int(1), Int(-1)});
    // witness transport: (1,0,1) for the normalized form maps onto the original
    auto w = n1.mapWitnessBack(ints({1, 0, 1}));
    DiagonalFormZ orig(ints({1, 1, -25}));
    CHECK(orig.eval(w) == 0);

    auto n2 = normalizeTernary(Int(2), Int(3), Int(-5));
    CHECK(n2.coeffs == std::array<Int, 3>{Int(2), Int(3), Int(-5)});

    auto n3 = normalizeTernary(Int(4), Int(9), Int(-1));
    CHECK(n3.coeffs == std::array<Int, 3>{Int(1), Int(1), Int(-1)});
}

TEST_CASE("normalizeTernary leaves abc squarefree and pairwise coprime") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<long> dist(-200, 200);
    int done = 0;
    while (done < 80) {
        long a = dist(rng), b = dist(rng), c = dist(rng);
        if (!a || !b || !c) continue;
        ++done;
        auto n = normalizeTernary(Int(a), Int(b), Int(c));
        Int prod = n.coeffs[0] * n.coeffs[1] * n.coeffs[2];
        CHECK(squarefreePart(prod).second == 1);
    }
}

TEST_CASE("isIsotropic fixtures per dimension") {
    CHECK_FALSE(isIsotropic(DiagonalFormZ(ints({5}))));

    CHECK_FALSE(isIsotropic(DiagonalFormZ(ints({1, 1}))));
    CHECK_FALSE(isIsotropic(DiagonalFormZ(ints({1, -2}))));
    CHECK(isIsotropic(DiagonalFormZ(ints({1, -4}))));

    CHECK_FALSE(isIsotropic(DiagonalFormZ(ints({1, 1, -3}))));  // -1 is not a QR mod 3
    CHECK(isIsotropic(DiagonalFormZ(ints({1, 1, -25}))));       // 3,4,5

    CHECK(isIsotropic(DiagonalFormZ(ints({1, 1, -1, -1}))));
    CHECK_FALSE(isIsotropic(DiagonalFormZ(ints({1, 1, 1, -7}))));  // 7 is not a sum of 3 squares

    CHECK(isIsotropic(DiagonalFormZ(ints({1, 2, 3, 4, -5}))));  // Meyer
    CHECK_FALSE(isIsotropic(DiagonalFormZ(ints({1, 2, 3, 4, 5}))));
    CHECK_THROWS_AS(DiagonalFormZ(ints({1, 0, 2})), std::domain_error);
}

TEST_CASE("ternary decision agrees with the Holzer-bounded oracle (sample)") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<long> dist(-20, 20);
    int done = 0;
    while (done < 400) {
        long a = dist(rng), b = dist(rng), c = dist(rng);
        if (!a || !b || !c) continue;
        ++done;
        bool mine = isIsotropic(DiagonalFormZ(ints({a, b, c})));
        CHECK_MESSAGE(mine == ternaryOracle(a, b, c), "a=" << a << " b=" << b << " c=" << c);
    }
}

TEST_CASE("findIsotropic canonical witnesses") {
    CHECK(findIsotropic(DiagonalFormZ(ints({1, 1, -25}))) == ints({3, 4, 1}));
    CHECK(findIsotropic(DiagonalFormZ(ints({1, -1}))) == ints({1, 1}));
    // minimal max-norm 1; ties break to zeros first, then positive entries
    CHECK(findIsotropic(DiagonalFormZ(ints({1, 1, -1, -1}))) == ints({0, 1, 0, 1}));
    CHECK_THROWS_AS(findIsotropic(DiagonalFormZ(ints({1, 1}))), std::logic_error);
}

TEST_CASE("witnesses evaluate to zero exactly") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<long> dist(-15, 15);
    std::uniform_int_distribution<int> dims(2, 5);
    int done = 0;
    while (done < 120) {
        int n = dims(rng);
        std::vector<Int> cs;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            long x = dist(rng);
            if (!x) { ok = false; break; }
            cs.emplace_back(x);
        }
        if (!ok) continue;
        DiagonalFormZ f(cs);
        if (!isIsotropic(f)) continue;
        ++done;
        auto w = findIsotropic(f);
        CHECK(f.eval(w) == 0);
        Int g(0);
        bool nonzero = false;
        for (const auto& x : w) {
            g = gcdInt(g, x);
            nonzero |= sgn(x) != 0;
        }
        CHECK(nonzero);
        CHECK(g == 1);
    }
}

TEST_CASE("eliminateZeros fixtures") {
    DiagonalFormZ f1(ints({1, 1, -2}));
    VecQ v1{Rat(1), Rat(1), Rat(1)};
    CHECK(eliminateZeros(f1, v1) == v1);

    // rotation applied at the (2nd, 3rd) coordinate pair
    DiagonalFormZ f2(ints({1, -1, -2}));
    VecQ w2 = eliminateZeros(f2, VecQ{Rat(1), Rat(1), Rat(0)});
    CHECK(w2 == VecQ{Rat(1), Rat(1, 3), Rat(2, 3)});
    CHECK(f2.eval(w2).isZero());

    DiagonalFormZ f3(ints({1, 1, -1, -1}));
    VecQ w3 = eliminateZeros(f3, VecQ{Rat(1), Rat(0), Rat(1), Rat(0)});
    CHECK(w3 == VecQ{Rat(3, 5), Rat(4, 5), Rat(3, 5), Rat(4, 5)});
    CHECK(f3.eval(w3).isZero());
    for (int i = 0; i < 4; ++i) CHECK_FALSE(w3[i].isZero());

    CHECK_THROWS_AS(eliminateZeros(f1, VecQ{Rat(1), Rat(0), Rat(0)}), std::invalid_argument);
}

TEST_CASE("eliminateZeros output never contains zeros, random runs") {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<long> dist(-12, 12);
    int done = 0;
    while (done < 60) {
        std::vector<Int> cs;
        for (int i = 0; i < 4; ++i) {
            long x = dist(rng);
            cs.emplace_back(x ? x : 1);
        }
        DiagonalFormZ f(cs);
        if (!isIsotropic(f)) continue;
        ++done;
        auto w = findIsotropic(f);
        VecQ v(4);
        for (int i = 0; i < 4; ++i) v[i] = Rat(w[static_cast<size_t>(i)]);
        VecQ out = eliminateZeros(f, v);
        CHECK(f.eval(out).isZero());
        for (int i = 0; i < 4; ++i) CHECK_FALSE(out[i].isZero());
    }
}

TEST_CASE("solve on fixtures") {
    auto s1 = solveDiagonal(ints({1, 1}), Int(25));
    REQUIRE(s1.has_value());
    CHECK_FALSE((*s1)[0].isZero());
    CHECK_FALSE((*s1)[1].isZero());
    CHECK((*s1)[0] * (*s1)[0] + (*s1)[1] * (*s1)[1] == Rat(25));

    CHECK_FALSE(solveDiagonal(ints({1, 1}), Int(3)).has_value());
    CHECK_FALSE(solveDiagonal(ints({1, 1}), Int(-1)).has_value());  // sign rule

    // the published loop start satisfies 9x^2 - 27y^2 = 216513
    DiagonalFormZ f(ints({9, -27}));
    CHECK(f.eval(VecQ{Rat(-162), Rat(27)}) == Rat(216513));
    auto s2 = solveDiagonal(ints({9, -27}), Int(216513));
    REQUIRE(s2.has_value());
    CHECK(f.eval(*s2) == Rat(216513));
    CHECK(*s2 == VecQ{Rat(162), Rat(27)});
}

TEST_CASE("solve handles the homogeneous case") {
    auto s = solveDiagonal(ints({1, -1}), Int(0));
    REQUIRE(s.has_value());
    CHECK_FALSE((*s)[0].isZero());
    CHECK_FALSE((*s)[1].isZero());
    CHECK(DiagonalFormZ(ints({1, -1})).eval(*s).isZero());
    CHECK_FALSE(solveDiagonal(ints({1, 1}), Int(0)).has_value());
}

TEST_CASE("solve with rational coefficients clears denominators") {
    std::vector<Rat> cs{Rat(-11), Rat(12, 11)};
    auto s = solveDiagonalRational(cs, Rat(-5772));
    REQUIRE(s.has_value());
    CHECK(Rat(-11) * (*s)[0] * (*s)[0] + Rat(12, 11) * (*s)[1] * (*s)[1] == Rat(-5772));
}

TEST_CASE("five or more mixed-sign coefficients are always isotropic") {
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<long> dist(1, 20);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Int> cs;
        for (int i = 0; i < 5; ++i) cs.emplace_back(dist(rng));
        cs[static_cast<size_t>(trial % 5)] *= -1;
        DiagonalFormZ f(cs);
        CHECK(isIsotropic(f));
        auto w = findIsotropic(f);
        CHECK(f.eval(w) == 0);
    }
}

TEST_CASE("search limits raise a distinct error") {
    SearchLimits tiny;
    tiny.maxNorm = 1;
    // 9x^2 - 27y^2 = 216513 z^2 has no witness of max-norm 1
    CHECK_THROWS_AS(findIsotropic(DiagonalFormZ(ints({9, -27, -216513})), tiny),
                    SearchLimitExceeded);
}
