#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quadloop {

/// Arbitrary-precision signed integer. GMP keeps the representation
/// canonical, so equality and hashing need no extra normalization.
using Int = mpz_class;

Int gcdInt(const Int& a, const Int& b);
Int lcmInt(const Int& a, const Int& b);

/// n >= 0 and n is a perfect square.
bool isPerfectSquare(const Int& n);

/// Floor square root; exact when isPerfectSquare(n).
Int isqrt(const Int& n);

/// Exact rational number, always stored as a reduced fraction with a
/// positive denominator.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(const Int& n) : v_(n) {}
    Rat(const Int& num, const Int& den);
    Rat(long num, long den) : Rat(Int(num), Int(den)) {}

    static Rat fromString(const std::string& text);

    Int num() const { return Int(v_.get_num()); }
    Int den() const { return Int(v_.get_den()); }

    bool isZero() const { return sgn(v_) == 0; }
    bool isInteger() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const;
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat abs() const;
    Rat inverse() const;

    /// True iff the value is the square of a rational.
    bool isSquare() const;
    /// Non-negative square root; requires isSquare().
    Rat sqrt() const;

    /// "p" when the denominator is 1, "p/q" otherwise.
    std::string toString() const;

private:
    mpq_class v_;  // invariant: canonical (reduced, positive denominator)
};

inline Rat ratPow2(const Rat& x) { return x * x; }

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace quadloop
