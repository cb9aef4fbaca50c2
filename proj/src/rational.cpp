#include "quadloop/rational.hpp"

#include <ostream>

namespace quadloop {

Int gcdInt(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcmInt(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

bool isPerfectSquare(const Int& n) {
    if (sgn(n) < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int isqrt(const Int& n) {
    if (sgn(n) < 0) throw std::domain_error("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Rat::Rat(const Int& num, const Int& den) : v_(num, den) {
    if (sgn(den) == 0) throw std::domain_error("Rat: zero denominator");
    v_.canonicalize();
}

Rat Rat::fromString(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    return Rat(num, den);
}

Rat Rat::operator-() const {
    Rat r;
    r.v_ = -v_;
    return r;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.isZero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

Rat Rat::abs() const {
    Rat r;
    r.v_ = ::abs(v_);
    return r;
}

Rat Rat::inverse() const {
    if (isZero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(den(), num());
}

bool Rat::isSquare() const {
    return sgn(v_) >= 0 && isPerfectSquare(num()) && isPerfectSquare(den());
}

Rat Rat::sqrt() const {
    if (!isSquare()) throw std::domain_error("Rat: not a rational square");
    return Rat(isqrt(num()), isqrt(den()));
}

std::string Rat::toString() const {
    if (isInteger()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.toString();
}

}  // namespace quadloop
