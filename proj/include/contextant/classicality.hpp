#pragma once

#include "contextant/angle_family.hpp"
#include "contextant/assignment_model.hpp"
#include "contextant/spin_algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace contextant {

enum class Verdict { Classical, Nonclassical };

std::string to_string(Verdict v);

/// Sums over the q pairs of one orbit: quantum q*g against the best
/// hidden-variable q*m. Nonclassical means the quantum sum is lower.
struct ViolationCertificate {
    double quantum_value;
    double best_hv_value;
};

struct ClassicalityVerdict {
    Verdict verdict = Verdict::Classical;
    /// |g| - (q-2)/q for odd q with g < 0; positive iff Nonclassical.
    double margin = 0.0;
    std::optional<HiddenVariableModel> witness;
    std::optional<ViolationCertificate> certificate;

    std::optional<RationalAngle> angle; // empty for the generic (irrational) verdict
    AngleClass angle_class;
    double theta = 0.0;
    double delta = 0.0;
    double g = 0.0;
    CorrelationValue min_corr = -1;
    /// Even-denominator approximant that carries the witness of a generic verdict.
    std::optional<Approximant> approximant;
};

/// Exact verdict for delta/2pi = p/q.
ClassicalityVerdict decide_pair_family(const RationalAngle &angle);

/// Verdict for an irrational delta/2pi: always Classical since the minimum
/// -1 is never above g. With a delta, the reported theta and g are
/// evaluated there and the witness is a mixture on the nearest
/// even-denominator approximant with q <= q_max.
ClassicalityVerdict decide_pair_family_generic(std::optional<double> delta = std::nullopt,
                                               std::int64_t q_max = 100);

/// (2n+1)/(2pi) * arccos(-n/(n+1)); (p, 2n+1) is Nonclassical iff p exceeds it.
double condition_p_threshold(std::int64_t n);

/// Integers p with arccos(-1/3)/2pi < p/(2n+1) <= 1/2.
std::vector<std::int64_t> admissible_p_range(std::int64_t n);

struct DeterministicAssignment {
    double weight;
    std::vector<int> values; // one +/-1 per direction
};

/// Mixture of deterministic +/-1 assignments over a list of directions.
/// Carries no compatibility constraints between directions.
class SingleObservableModel {
public:
    std::vector<DeterministicAssignment> components;

    /// Expected value of direction i under the mixture.
    double expectation(std::size_t i) const;
};

/// Reproduces each single-observable expectation exactly and independently.
/// A shared threshold variable u ~ U[0,1) assigns +1 to direction i iff
/// u < (1 + e_i)/2, which collapses to at most N+1 deterministic components.
SingleObservableModel single_observable_model(const std::vector<Direction> &directions,
                                              const std::vector<double> &expectations);

} // namespace contextant
