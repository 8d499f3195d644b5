// rational.hpp — exact rational arithmetic for characteristic-number budgets.
// Budgets are small fractions (denominators divide 3m), so long long storage
// with 128-bit intermediates is ample; any overflow throws rather than wraps.

#pragma once

#include <string>

namespace monopole {

class Rat {
public:
    Rat() = default;
    Rat(long long value) : n_(value), d_(1) {}  // implicit on purpose
    Rat(long long num, long long den);

    long long num() const { return n_; }
    long long den() const { return d_; }
    bool is_integer() const { return d_ == 1; }
    double to_double() const { return double(n_) / double(d_); }

    // "44/3", "12", "-5/6"
    std::string str() const;

    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

private:
    long long n_ = 0;
    long long d_ = 1;
};

Rat operator+(Rat a, const Rat& b);
Rat operator-(Rat a, const Rat& b);
Rat operator*(Rat a, const Rat& b);
Rat operator/(Rat a, const Rat& b);
Rat operator-(const Rat& a);

bool operator==(const Rat& a, const Rat& b);
bool operator!=(const Rat& a, const Rat& b);
bool operator<(const Rat& a, const Rat& b);
bool operator<=(const Rat& a, const Rat& b);
bool operator>(const Rat& a, const Rat& b);
bool operator>=(const Rat& a, const Rat& b);

std::string to_string(const Rat& r);

} // namespace monopole
