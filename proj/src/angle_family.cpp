#include "contextant/angle_family.hpp"

#include "contextant/errors.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

namespace contextant {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

double check_theta(double theta) {
    if (!(theta >= kPi / 4 - kAngleSlack && theta <= kPi / 2 + kAngleSlack))
        throw DomainError("theta = " + std::to_string(theta) +
                          " outside [pi/4, pi/2]: no orthogonal pair exists on this cone");
    return std::clamp(theta, kPi / 4, kPi / 2);
}

double check_delta(double delta) {
    if (!(delta >= kPi / 2 - kAngleSlack && delta <= kPi + kAngleSlack))
        throw DomainError("delta = " + std::to_string(delta) + " outside [pi/2, pi]");
    return std::clamp(delta, kPi / 2, kPi);
}

// theta in [pi/4, pi/2] with cot^2(theta) = -cos(delta).
double theta_from_cos_delta(double c) { return std::atan2(1.0, std::sqrt(std::max(0.0, -c))); }

bool in_range(std::int64_t p, std::int64_t q) { return p > 0 && q > 0 && 4 * p >= q && 2 * p <= q; }

} // namespace

RationalAngle::RationalAngle(std::int64_t p, std::int64_t q) : p_{p}, q_{q} {
    if (p <= 0 || q <= 0)
        throw DomainError("RationalAngle: p and q must be positive");
    if (std::gcd(p, q) != 1)
        throw DomainError("RationalAngle: " + std::to_string(p) + "/" + std::to_string(q) + " is not reduced");
    if (!in_range(p, q))
        throw DomainError("RationalAngle: " + std::to_string(p) + "/" + std::to_string(q) +
                          " outside [1/4, 1/2]");
}

RationalAngle RationalAngle::reduced(std::int64_t p, std::int64_t q) {
    if (p <= 0 || q <= 0)
        throw DomainError("RationalAngle: p and q must be positive");
    const std::int64_t g = std::gcd(p, q);
    return {p / g, q / g};
}

bool RationalAngle::valid(std::int64_t p, std::int64_t q) {
    return p > 0 && q > 0 && std::gcd(p, q) == 1 && in_range(p, q);
}

double RationalAngle::delta() const { return 2.0 * kPi * over_two_pi(); }

double OrbitCycle::arc_width() const { return 2.0 * kPi / static_cast<double>(q); }

std::vector<std::int64_t> OrbitCycle::position_of_arc() const {
    std::vector<std::int64_t> inv(arc_of_position.size());
    for (std::size_t k = 0; k < arc_of_position.size(); ++k)
        inv[static_cast<std::size_t>(arc_of_position[k])] = static_cast<std::int64_t>(k);
    return inv;
}

double delta_of_theta(double theta) {
    theta = check_theta(theta);
    // sin(delta) sin^2(theta) = sqrt(-cos 2theta), cos(delta) sin^2(theta) = -cos^2(theta).
    const double c = std::cos(theta);
    return std::atan2(std::sqrt(std::max(0.0, -std::cos(2.0 * theta))), -c * c);
}

double theta_of_delta(double delta) { return theta_from_cos_delta(std::cos(check_delta(delta))); }

double g_of_theta(double theta) {
    theta = check_theta(theta);
    const double c = std::cos(theta);
    return std::clamp(1.0 - 4.0 * c * c, -1.0, 1.0);
}

double g_of_delta(double delta) {
    const double c = std::cos(check_delta(delta));
    return std::clamp((1.0 + 3.0 * c) / (1.0 - c), -1.0, 1.0);
}

AngleClass classify(const RationalAngle &angle) {
    const std::int64_t q = angle.q();
    return q % 2 == 0 ? AngleClass::even(q / 2) : AngleClass::odd((q - 1) / 2);
}

OrbitCycle orbit_cycle(const RationalAngle &angle) {
    OrbitCycle c;
    c.q = angle.q();
    c.step = angle.p();
    c.arc_of_position.resize(static_cast<std::size_t>(c.q));
    for (std::int64_t k = 0; k < c.q; ++k)
        c.arc_of_position[static_cast<std::size_t>(k)] = (k * c.step) % c.q;
    return c;
}

double cos_of_angle(const RationalAngle &angle) {
    switch (angle.q()) {
    case 2: return -1.0;
    case 3: return -0.5;
    case 4: return 0.0;
    default: return std::cos(angle.delta());
    }
}

std::optional<Fraction> exact_g(const RationalAngle &angle) {
    switch (angle.q()) {
    case 2: return Fraction{-1};
    case 3: return Fraction{-1, 3};
    case 4: return Fraction{1};
    default: return std::nullopt;
    }
}

double theta_of(const RationalAngle &angle) { return theta_from_cos_delta(cos_of_angle(angle)); }

double g_of(const RationalAngle &angle) {
    if (auto g = exact_g(angle))
        return g->to_double();
    const double c = cos_of_angle(angle);
    return (1.0 + 3.0 * c) / (1.0 - c);
}

double sign_change_over_two_pi() { return std::acos(-1.0 / 3.0) / (2.0 * kPi); }

std::vector<Approximant> rational_approximants_of_fraction(double x, std::int64_t q_max) {
    if (!(x >= 0.25 - kAngleSlack && x <= 0.5 + kAngleSlack))
        throw DomainError("rational_approximants: delta/2pi = " + std::to_string(x) + " outside [1/4, 1/2]");
    if (q_max < 2)
        throw DomainError("rational_approximants: q_max must be >= 2");

    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    std::vector<Approximant> out;
    auto offer = [&](std::int64_t p, std::int64_t q) {
        if (q > q_max || !RationalAngle::valid(p, q) || !seen.insert({p, q}).second)
            return;
        const double d = std::abs(x - static_cast<double>(p) / static_cast<double>(q));
        out.push_back({RationalAngle{p, q}, d});
    };

    // h/k: numerators/denominators of the two previous convergents.
    std::int64_t h2 = 0, h1 = 1, k2 = 1, k1 = 0;
    double r = x;
    for (int term = 0; term < 64; ++term) {
        const double a_real = std::floor(r);
        if (term > 0) {
            // Intermediate fractions (h2 + j h1)/(k2 + j k1), j = 1..a.
            const std::int64_t j_cap = (q_max - k2) / k1;
            const std::int64_t a_cap = a_real > static_cast<double>(j_cap) ? j_cap : static_cast<std::int64_t>(a_real);
            for (std::int64_t j = 1; j <= a_cap; ++j)
                offer(h2 + j * h1, k2 + j * k1);
            if (a_cap < static_cast<std::int64_t>(a_real))
                break;
        }
        const auto a = static_cast<std::int64_t>(a_real);
        const std::int64_t h = a * h1 + h2, k = a * k1 + k2;
        if (k > q_max)
            break;
        if (term == 0)
            offer(h, k);
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        if (k > 0 && std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= 4.0 * DBL_EPSILON * x)
            break;
        const double frac = r - a_real;
        if (frac <= 0.0)
            break;
        r = 1.0 / frac;
    }

    std::sort(out.begin(), out.end(), [](const Approximant &a, const Approximant &b) {
        if (a.distance != b.distance)
            return a.distance < b.distance;
        return a.angle.q() < b.angle.q();
    });
    return out;
}

std::vector<Approximant> rational_approximants(double delta, std::int64_t q_max) {
    return rational_approximants_of_fraction(check_delta(delta) / (2.0 * kPi), q_max);
}

std::optional<Approximant> nearest_even_denominator(double x, std::int64_t q_max) {
    std::optional<Approximant> best;
    for (std::int64_t q = 2; q <= q_max; q += 2) {
        const auto base = static_cast<std::int64_t>(std::floor(x * static_cast<double>(q)));
        for (std::int64_t p = base; p <= base + 1; ++p) {
            if (!RationalAngle::valid(p, q))
                continue;
            const double d = std::abs(x - static_cast<double>(p) / static_cast<double>(q));
            if (!best || d < best->distance)
                best = Approximant{RationalAngle{p, q}, d};
        }
    }
    return best;
}

} // namespace contextant
