#pragma once

// Geometry of the tilted-cone pair family.
//
// Directions at polar angle theta with azimuths phi and phi + delta are
// orthogonal iff cos(delta) = -cot^2(theta), which is solvable only for
// theta in [pi/4, pi/2], giving delta in [pi/2, pi]. A rational step
// delta / 2pi = p/q therefore has 1/4 <= p/q <= 1/2.

#include "contextant/fraction.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace contextant {

/// Reduced fraction p/q = delta / 2pi with 1/4 <= p/q <= 1/2.
class RationalAngle {
public:
    /// Throws DomainError unless p, q > 0, gcd(p, q) = 1 and p/q in [1/4, 1/2].
    RationalAngle(std::int64_t p, std::int64_t q);
    /// Reduces p/q first; still throws if the reduced value is out of range.
    static RationalAngle reduced(std::int64_t p, std::int64_t q);
    /// True iff (p, q) would construct without throwing.
    static bool valid(std::int64_t p, std::int64_t q);

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    Fraction fraction() const { return {p_, q_}; }
    double over_two_pi() const { return static_cast<double>(p_) / static_cast<double>(q_); }
    double delta() const;

    friend bool operator==(const RationalAngle &, const RationalAngle &) = default;

private:
    std::int64_t p_, q_;
};

enum class DenominatorParity { Even, Odd, Irrational };

/// Which of the three minimum-correlation regimes an angle falls into.
struct AngleClass {
    DenominatorParity parity = DenominatorParity::Irrational;
    std::int64_t n = 0; // q = 2n or q = 2n+1; unused for Irrational

    static AngleClass even(std::int64_t n) { return {DenominatorParity::Even, n}; }
    static AngleClass odd(std::int64_t n) { return {DenominatorParity::Odd, n}; }
    static AngleClass irrational() { return {}; }

    friend bool operator==(const AngleClass &, const AngleClass &) = default;
};

/// The orbit of an arc under rotation by delta. Arc j is [2pi j/q, 2pi (j+1)/q);
/// cycle position k sits on arc k*p mod q.
struct OrbitCycle {
    std::int64_t q = 0;
    std::int64_t step = 0;
    std::vector<std::int64_t> arc_of_position;

    double arc_width() const;
    /// Inverse of arc_of_position.
    std::vector<std::int64_t> position_of_arc() const;
};

struct Approximant {
    RationalAngle angle;
    double distance; // |delta/2pi - p/q|
};

double delta_of_theta(double theta);
double theta_of_delta(double delta);
double g_of_theta(double theta);
double g_of_delta(double delta);

AngleClass classify(const RationalAngle &angle);
OrbitCycle orbit_cycle(const RationalAngle &angle);

/// cos(2 pi p/q), exact for the three rational values the range admits
/// (p/q = 1/4, 1/3, 1/2).
double cos_of_angle(const RationalAngle &angle);
/// g at the angle's theta as an exact fraction, when it is rational.
std::optional<Fraction> exact_g(const RationalAngle &angle);
double theta_of(const RationalAngle &angle);
double g_of(const RationalAngle &angle);

/// arccos(-1/3) / 2pi: the step at which g changes sign (theta = pi/3).
double sign_change_over_two_pi();

/// Continued-fraction convergents and intermediate fractions of x with
/// denominator <= q_max, restricted to [1/4, 1/2], sorted by distance.
std::vector<Approximant> rational_approximants_of_fraction(double x, std::int64_t q_max);
/// Same, for x = delta / 2pi. Requires delta in [pi/2, pi].
std::vector<Approximant> rational_approximants(double delta, std::int64_t q_max);

/// Closest reduced fraction to x with an even denominator <= q_max inside
/// [1/4, 1/2] (smallest denominator on ties).
std::optional<Approximant> nearest_even_denominator(double x, std::int64_t q_max);

} // namespace contextant
