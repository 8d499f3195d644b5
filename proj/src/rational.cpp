// rational.cpp — exact rational arithmetic with 128-bit intermediates.

#include "monopole/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace monopole {

namespace {

using Wide = __int128;

long long narrow(Wide v) {
    if (v > Wide(9223372036854775807LL) || v < -Wide(9223372036854775807LL) - 1)
        throw std::overflow_error("Rat: value exceeds 64-bit range");
    return (long long)v;
}

Wide wide_gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rat make(Wide num, Wide den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rat(narrow(num), narrow(den));
}

} // namespace

Rat::Rat(long long num, long long den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    n_ = num;
    d_ = den;
}

std::string Rat::str() const {
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

Rat& Rat::operator+=(const Rat& o) {
    *this = make(Wide(n_) * o.d_ + Wide(o.n_) * d_, Wide(d_) * o.d_);
    return *this;
}

Rat& Rat::operator-=(const Rat& o) {
    *this = make(Wide(n_) * o.d_ - Wide(o.n_) * d_, Wide(d_) * o.d_);
    return *this;
}

Rat& Rat::operator*=(const Rat& o) {
    *this = make(Wide(n_) * o.n_, Wide(d_) * o.d_);
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.n_ == 0) throw std::domain_error("Rat: division by zero");
    *this = make(Wide(n_) * o.d_, Wide(d_) * o.n_);
    return *this;
}

Rat operator+(Rat a, const Rat& b) { return a += b; }
Rat operator-(Rat a, const Rat& b) { return a -= b; }
Rat operator*(Rat a, const Rat& b) { return a *= b; }
Rat operator/(Rat a, const Rat& b) { return a /= b; }
Rat operator-(const Rat& a) { return Rat(0) - a; }

bool operator==(const Rat& a, const Rat& b) {
    return a.num() == b.num() && a.den() == b.den();
}
bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
bool operator<(const Rat& a, const Rat& b) {
    return __int128(a.num()) * b.den() < __int128(b.num()) * a.den();
}
bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
bool operator>(const Rat& a, const Rat& b) { return b < a; }
bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

std::string to_string(const Rat& r) { return r.str(); }

} // namespace monopole
