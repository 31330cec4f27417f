#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace su3 {

__extension__ typedef __int128 wide_int;

// Exact rational with 64-bit numerator and denominator; intermediate products
// use 128-bit integers and overflow throws std::overflow_error.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
    static Rational from_wide(wide_int n, wide_int d);
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

// Gauss-Jordan inverse; throws std::domain_error if singular.
RationalMatrix inverse(const RationalMatrix& m);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
Rational determinant(const RationalMatrix& m);

}  // namespace su3
