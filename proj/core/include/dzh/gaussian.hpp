#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dzh {

using BigInt = boost::multiprecision::cpp_int;

// i^exponent, i = sqrt(-1).
class UnitI {
public:
    constexpr UnitI() = default;
    constexpr explicit UnitI(int exponent) : exp_(static_cast<std::uint8_t>(((exponent % 4) + 4) % 4)) {}

    static constexpr UnitI one() { return UnitI(0); }
    static constexpr UnitI i() { return UnitI(1); }
    static constexpr UnitI minus_one() { return UnitI(2); }

    constexpr int exponent() const { return exp_; }

    constexpr UnitI operator*(UnitI o) const { return UnitI(exp_ + o.exp_); }
    constexpr UnitI& operator*=(UnitI o) { return *this = *this * o; }
    constexpr UnitI inverse() const { return UnitI(-static_cast<int>(exp_)); }
    constexpr UnitI pow(long long n) const { return UnitI(static_cast<int>(((n % 4) * exp_) % 4)); }

    constexpr bool operator==(const UnitI&) const = default;

    std::string str() const;

private:
    std::uint8_t exp_ = 0;
};

std::ostream& operator<<(std::ostream& os, UnitI u);

// Gaussian integer re + im*i with arbitrary-precision components.
class HeckeCoeff {
public:
    HeckeCoeff() = default;
    HeckeCoeff(long long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    HeckeCoeff(BigInt re, BigInt im) : re_(std::move(re)), im_(std::move(im)) {}
    HeckeCoeff(UnitI u);  // NOLINT(google-explicit-constructor)

    const BigInt& re() const { return re_; }
    const BigInt& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    // The unit i^k this value equals, if it is one of the four units.
    bool as_unit(UnitI& out) const;

    HeckeCoeff operator-() const { return {-re_, -im_}; }
    HeckeCoeff& operator+=(const HeckeCoeff& o);
    HeckeCoeff& operator-=(const HeckeCoeff& o);
    HeckeCoeff& operator*=(const HeckeCoeff& o);

    friend HeckeCoeff operator+(HeckeCoeff a, const HeckeCoeff& b) { return a += b; }
    friend HeckeCoeff operator-(HeckeCoeff a, const HeckeCoeff& b) { return a -= b; }
    friend HeckeCoeff operator*(HeckeCoeff a, const HeckeCoeff& b) { return a *= b; }

    bool operator==(const HeckeCoeff& o) const { return re_ == o.re_ && im_ == o.im_; }

    HeckeCoeff conj() const { return {re_, -im_}; }
    BigInt norm() const { return re_ * re_ + im_ * im_; }

    std::string str() const;

private:
    BigInt re_ = 0;
    BigInt im_ = 0;
};

std::ostream& operator<<(std::ostream& os, const HeckeCoeff& c);

}  // namespace dzh
