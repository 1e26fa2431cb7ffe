#pragma once

// Hidden-variable outcome functions on the circle.
//
// For a rational step p/q every outcome function that is constant on the q
// arcs of width 2pi/q is described by its values along the delta-orbit,
// i.e. by a sign vector indexed by cycle position. The continuum integral
//   int_0^{2pi} f(phi) f(phi + delta) dphi
// then equals 2pi times the mean of neighbouring products along the cycle.

#include "contextant/angle_family.hpp"
#include "contextant/fraction.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace contextant {

/// +/-1 values along a delta-orbit. Adjacent positions (k, k+1 mod q),
/// including the wrap-around, never both carry -1.
class CycleAssignment {
public:
    /// Throws PreconditionError on entries other than +/-1 or on a (-1, -1) neighbour pair.
    explicit CycleAssignment(std::vector<int> values);

    /// Checks without throwing.
    static bool respects_exclusivity(std::span<const int> values);

    std::size_t size() const { return values_.size(); }
    int operator[](std::size_t position) const { return values_[position]; }
    const std::vector<int> &values() const { return values_; }

    /// Value on arc j, given the orbit that places position k on arc k*p mod q.
    int value_on_arc(const OrbitCycle &orbit, std::int64_t arc) const;
    /// Outcome function f(phi) for the arc-piecewise-constant extension.
    int evaluate(const OrbitCycle &orbit, double phi) const;

    std::string to_string() const;

    friend bool operator==(const CycleAssignment &, const CycleAssignment &) = default;

private:
    std::vector<int> values_;
};

/// Integral of f(phi) f(phi + delta) over the circle, divided by 2pi.
using CorrelationValue = Fraction;

struct WeightedAssignment {
    double weight;
    CycleAssignment assignment;
};

/// Finite mixture of cycle assignments.
class HiddenVariableModel {
public:
    /// Throws PreconditionError on negative weights or if they do not sum to 1 within 1e-12.
    explicit HiddenVariableModel(std::vector<WeightedAssignment> components);

    const std::vector<WeightedAssignment> &components() const { return components_; }
    /// Weighted mean of the component cycle correlations.
    double correlation() const;

private:
    std::vector<WeightedAssignment> components_;
};

struct BruteForceResult {
    CorrelationValue minimum;
    CycleAssignment minimizer;
};

struct OverlapResult {
    bool nonclassical;
    double margin;
};

CorrelationValue cycle_correlation(const CycleAssignment &a);

/// Closed-form minimum over exclusivity-respecting functions:
/// -1 for irrational and even-denominator steps, -(2n-1)/(2n+1) for q = 2n+1.
CorrelationValue min_correlation(const AngleClass &cls);

/// Attains min_correlation: alternating signs along the cycle, and for odd q
/// a single (+1, +1) seam between the last and first positions.
CycleAssignment optimal_assignment(const RationalAngle &angle);

inline constexpr std::int64_t kBruteForceMaxQ = 24;

/// Exhaustive search over all 2^q sign vectors. Ties resolve to the lowest
/// bitmask (bit k set means -1 at position k). q > 24 throws ResourceError.
BruteForceResult brute_force_min(const RationalAngle &angle);
BruteForceResult brute_force_min_cycle(std::int64_t q);

CycleAssignment uniform_assignment(std::int64_t q);

/// Mixture of optimal_assignment (weight (1 - g)/(1 - m)) with the uniform
/// assignment whose correlation is exactly target_g, or nullopt when
/// target_g lies below the minimum m.
std::optional<HiddenVariableModel> mixture_for_target(double target_g, const RationalAngle &angle);

/// Compares the quantum pair correlation with the best hidden-variable value.
/// For target_g < 0 the margin is |target_g| + m; for target_g >= 0 it is
/// -(1 - target_g). Nonclassical iff margin > 0.
OverlapResult overlap_condition(double target_g, const AngleClass &cls);

} // namespace contextant
