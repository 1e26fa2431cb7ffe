#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace contextant {

// Reduced fraction with positive denominator. Only used for small cycle
// sums (numerators and denominators bounded by the cycle length), so
// 64-bit cross products cannot overflow in practice.
class Fraction {
public:
    constexpr Fraction() = default;
    constexpr Fraction(std::int64_t num) : num_{num}, den_{1} {}
    constexpr Fraction(std::int64_t num, std::int64_t den) : num_{num}, den_{den} {
        if (den_ == 0)
            throw std::domain_error("Fraction: zero denominator");
        normalize();
    }

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }
    constexpr double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend constexpr Fraction operator+(Fraction a, Fraction b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend constexpr Fraction operator-(Fraction a, Fraction b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend constexpr Fraction operator*(Fraction a, Fraction b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend constexpr Fraction operator/(Fraction a, Fraction b) {
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    constexpr Fraction operator-() const { return {-num_, den_}; }

    friend constexpr bool operator==(Fraction a, Fraction b) = default;
    friend constexpr std::strong_ordering operator<=>(Fraction a, Fraction b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    std::string to_string() const {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream &operator<<(std::ostream &os, Fraction f) { return os << f.to_string(); }

private:
    constexpr void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace contextant
