#include "quadloop/numtheory.hpp"

#include <algorithm>
#include <map>

namespace quadloop {

namespace {

constexpr unsigned long kTrialLimit = 1000000;

// Pollard rho (Brent variant). n must be odd, composite, > 1.
Int pollardRho(const Int& n) {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xb5297a4dUL);  // fixed seed: factorization must be deterministic
    while (true) {
        Int y = rng.get_z_range(n - 3) + 2;
        Int c = rng.get_z_range(n - 1) + 1;
        Int x = y, ys = y, d(1), q(1);
        unsigned long r = 1;
        const unsigned long m = 128;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && d == 1) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * (x > y ? x - y : y - x) % n;
                }
                d = gcdInt(q, n);
                k += m;
            }
            r *= 2;
        }
        if (d == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                d = gcdInt(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factorInto(Int n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 25) != 0) {
        ++out[n];
        return;
    }
    Int d = pollardRho(n);
    factorInto(d, out);
    factorInto(n / d, out);
}

}  // namespace

Int Factorization::reconstruct() const {
    Int r(sign);
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        r *= pe;
    }
    return r;
}

Factorization factor(const Int& n) {
    if (sgn(n) == 0) throw std::domain_error("factor: zero argument");
    Factorization f;
    f.sign = sgn(n) < 0 ? -1 : 1;
    Int m = ::abs(n);

    // The local solvability tests re-factor the same handful of large
    // values many times over; a small cache keeps that cheap.
    static thread_local std::map<Int, std::vector<std::pair<Int, unsigned>>> cache;
    if (m > 1000000) {
        auto it = cache.find(m);
        if (it != cache.end()) {
            f.factors = it->second;
            return f;
        }
    }

    std::map<Int, unsigned> acc;
    for (unsigned long p = 2; p <= kTrialLimit && m > 1; p += (p == 2 ? 1 : 2)) {
        if (Int(p) * p > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            ++acc[Int(p)];
            m /= p;
        }
    }
    if (m > 1) {
        if (m <= Int(kTrialLimit) * kTrialLimit)
            ++acc[m];  // no factor below the trial limit, so m is prime
        else
            factorInto(m, acc);
    }
    for (auto& [p, e] : acc) f.factors.emplace_back(p, e);
    Int original = ::abs(n);
    if (original > 1000000) {
        if (cache.size() > 4096) cache.clear();
        cache.emplace(original, f.factors);
    }
    return f;
}

std::pair<Int, Int> squarefreePart(const Int& n) {
    if (sgn(n) == 0) throw std::domain_error("squarefreePart: zero argument");
    Factorization f = factor(n);
    Int sf(f.sign), root(1);
    for (const auto& [p, e] : f.factors) {
        if (e % 2) sf *= p;
        Int ph;
        mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), e / 2);
        root *= ph;
    }
    return {sf, root};
}

namespace {

// v_p(n) together with the unit part n / p^v. n != 0.
std::pair<unsigned long, Int> pAdicSplit(const Int& n, const Int& p) {
    unsigned long v = 0;
    Int u = n;
    while (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) {
        u /= p;
        ++v;
    }
    return {v, u};
}

Int modPositive(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Solvability of x^2 = q (mod p^k).
bool residueModPrimePower(const Int& q, const Int& p, unsigned k) {
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    Int r = modPositive(q, pk);
    if (r == 0) return true;
    auto [e, u] = pAdicSplit(r, p);
    if (e % 2) return false;
    unsigned rem = k - static_cast<unsigned>(e);
    if (p == 2) {
        if (rem == 1) return true;
        if (rem == 2) return modPositive(u, Int(4)) == 1;
        return modPositive(u, Int(8)) == 1;
    }
    return legendreSymbol(u, p) == 1;
}

}  // namespace

bool isQuadraticResidue(const Int& q, const Int& n) {
    if (n < 1) throw std::domain_error("isQuadraticResidue: modulus must be >= 1");
    if (n == 1) return true;
    for (const auto& [p, e] : factor(n).factors)
        if (!residueModPrimePower(q, p, e)) return false;
    return true;
}

int legendreSymbol(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

namespace {

// Square-class representative of a nonzero rational: num * den.
Int squareClass(const Rat& x) {
    if (x.isZero()) throw std::domain_error("hilbertSymbol: zero argument");
    return x.num() * x.den();
}

int epsUnit(const Int& u) { return modPositive(u, Int(4)) == 1 ? 0 : 1; }   // (u-1)/2 mod 2
int omegaUnit(const Int& u) {                                               // (u^2-1)/8 mod 2
    Int m = modPositive(u, Int(8));
    return (m == 1 || m == 7) ? 0 : 1;
}

}  // namespace

int hilbertSymbol(const Rat& a, const Rat& b, const Int& p) {
    Int A = squareClass(a), B = squareClass(b);
    auto [alpha, u] = pAdicSplit(A, p);
    auto [beta, v] = pAdicSplit(B, p);
    if (p == 2) {
        int exp = epsUnit(u) * epsUnit(v) + static_cast<int>(alpha % 2) * omegaUnit(v) +
                  static_cast<int>(beta % 2) * omegaUnit(u);
        return exp % 2 ? -1 : 1;
    }
    int r = 1;
    if ((alpha % 2) && (beta % 2) && modPositive(p, Int(4)) == 3) r = -r;
    if (beta % 2) r *= legendreSymbol(u, p);
    if (alpha % 2) r *= legendreSymbol(v, p);
    return r;
}

int hilbertSymbolInf(const Rat& a, const Rat& b) {
    return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
}

bool isSquareInQp(const Int& d, const Int& p) {
    if (sgn(d) == 0) throw std::domain_error("isSquareInQp: zero argument");
    auto [v, u] = pAdicSplit(d, p);
    if (v % 2) return false;
    if (p == 2) return modPositive(u, Int(8)) == 1;
    return legendreSymbol(u, p) == 1;
}

}  // namespace quadloop
