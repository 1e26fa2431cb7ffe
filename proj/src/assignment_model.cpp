#include "contextant/assignment_model.hpp"

#include "contextant/errors.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

namespace contextant {

namespace {

// p^{-1} mod q via the extended Euclidean algorithm; gcd(p, q) = 1.
std::int64_t inverse_mod(std::int64_t p, std::int64_t q) {
    std::int64_t r0 = q, r1 = p % q, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t t = r0 / r1;
        r0 = std::exchange(r1, r0 - t * r1);
        s0 = std::exchange(s1, s0 - t * s1);
    }
    return ((s0 % q) + q) % q;
}

void check_unit_interval(double g, const char *what) {
    if (!(std::abs(g) <= 1.0))
        throw DomainError(std::string(what) + ": target correlation must lie in [-1, 1]");
}

} // namespace

CycleAssignment::CycleAssignment(std::vector<int> values) : values_{std::move(values)} {
    if (values_.empty())
        throw PreconditionError("CycleAssignment: empty cycle");
    for (int v : values_)
        if (v != 1 && v != -1)
            throw PreconditionError("CycleAssignment: entries must be +1 or -1");
    if (!respects_exclusivity(values_))
        throw PreconditionError("CycleAssignment: adjacent positions both assigned -1");
}

bool CycleAssignment::respects_exclusivity(std::span<const int> values) {
    const std::size_t q = values.size();
    for (std::size_t k = 0; k < q; ++k)
        if (values[k] == -1 && values[(k + 1) % q] == -1)
            return false;
    return true;
}

int CycleAssignment::value_on_arc(const OrbitCycle &orbit, std::int64_t arc) const {
    if (orbit.q != static_cast<std::int64_t>(values_.size()))
        throw PreconditionError("CycleAssignment: orbit length does not match");
    const std::int64_t position = (arc % orbit.q) * inverse_mod(orbit.step, orbit.q) % orbit.q;
    return values_[static_cast<std::size_t>(position)];
}

int CycleAssignment::evaluate(const OrbitCycle &orbit, double phi) const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(phi, two_pi);
    if (t < 0.0)
        t += two_pi;
    auto arc = static_cast<std::int64_t>(std::floor(t / two_pi * static_cast<double>(orbit.q)));
    if (arc >= orbit.q)
        arc = orbit.q - 1;
    return value_on_arc(orbit, arc);
}

std::string CycleAssignment::to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (k > 0)
            s += ',';
        s += values_[k] > 0 ? '+' : '-';
    }
    return s + ")";
}

HiddenVariableModel::HiddenVariableModel(std::vector<WeightedAssignment> components)
    : components_{std::move(components)} {
    double total = 0.0;
    for (const auto &c : components_) {
        if (!(c.weight >= 0.0 && c.weight <= 1.0))
            throw PreconditionError("HiddenVariableModel: weight outside [0, 1]");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw PreconditionError("HiddenVariableModel: weights do not sum to 1");
}

double HiddenVariableModel::correlation() const {
    double s = 0.0;
    for (const auto &c : components_)
        s += c.weight * cycle_correlation(c.assignment).to_double();
    return s;
}

CorrelationValue cycle_correlation(const CycleAssignment &a) {
    const std::size_t q = a.size();
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < q; ++k)
        sum += a[k] * a[(k + 1) % q];
    return {sum, static_cast<std::int64_t>(q)};
}

CorrelationValue min_correlation(const AngleClass &cls) {
    if (cls.parity == DenominatorParity::Odd)
        return {-(2 * cls.n - 1), 2 * cls.n + 1};
    return -1;
}

CycleAssignment optimal_assignment(const RationalAngle &angle) {
    const auto q = static_cast<std::size_t>(angle.q());
    std::vector<int> v(q);
    for (std::size_t k = 0; k < q; ++k)
        v[k] = k % 2 == 0 ? 1 : -1;
    return CycleAssignment{std::move(v)};
}

BruteForceResult brute_force_min_cycle(std::int64_t q) {
    if (q < 1)
        throw PreconditionError("brute_force_min: cycle length must be positive");
    if (q > kBruteForceMaxQ)
        throw ResourceError("brute_force_min: q = " + std::to_string(q) + " exceeds the enumeration guard of " +
                            std::to_string(kBruteForceMaxQ));
    // Bit k set means +1 at position k.
    const std::uint32_t full = (1u << q) - 1u;
    auto rotate = [&](std::uint32_t m) { return ((m >> 1) | ((m & 1u) << (q - 1))) & full; };

    std::int64_t best_sum = q + 1;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        const std::uint32_t minus = ~mask & full;
        if ((minus & rotate(minus)) != 0)
            continue;
        const std::int64_t sum = q - 2 * std::popcount(mask ^ rotate(mask));
        if (sum < best_sum) {
            best_sum = sum;
            best_mask = mask;
        }
    }
    std::vector<int> v(static_cast<std::size_t>(q));
    for (std::int64_t k = 0; k < q; ++k)
        v[static_cast<std::size_t>(k)] = (best_mask >> k) & 1u ? 1 : -1;
    return {CorrelationValue{best_sum, q}, CycleAssignment{std::move(v)}};
}

BruteForceResult brute_force_min(const RationalAngle &angle) { return brute_force_min_cycle(angle.q()); }

CycleAssignment uniform_assignment(std::int64_t q) {
    if (q < 1)
        throw PreconditionError("uniform_assignment: q must be positive");
    return CycleAssignment{std::vector<int>(static_cast<std::size_t>(q), 1)};
}

std::optional<HiddenVariableModel> mixture_for_target(double target_g, const RationalAngle &angle) {
    check_unit_interval(target_g, "mixture_for_target");
    const double m = min_correlation(classify(angle)).to_double();
    if (target_g < m)
        return std::nullopt;
    const double w = (1.0 - target_g) / (1.0 - m);
    return HiddenVariableModel{{{w, optimal_assignment(angle)}, {1.0 - w, uniform_assignment(angle.q())}}};
}

OverlapResult overlap_condition(double target_g, const AngleClass &cls) {
    check_unit_interval(target_g, "overlap_condition");
    const double margin = target_g < 0.0 ? -target_g + min_correlation(cls).to_double() : -(1.0 - target_g);
    return {margin > 0.0, margin};
}

} // namespace contextant
