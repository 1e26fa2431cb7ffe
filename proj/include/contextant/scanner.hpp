#pragma once

// Sweeps and self-checks behind the command-line front end.

#include "contextant/angle_family.hpp"
#include "contextant/classicality.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <array>
#include <string>
#include <vector>

namespace contextant {

struct FamilyRow {
    std::int64_t p = 0;
    std::int64_t q = 0;
    double delta_over_2pi = 0.0;
    double theta = 0.0;
    double g = 0.0;
    double min_corr = 0.0;
    Verdict verdict = Verdict::Classical;
    double margin = 0.0;
};

inline constexpr std::int64_t kScanMaxQ = 10000;

FamilyRow family_row(const RationalAngle &angle);

/// Number of rows scan(q_max) produces: reduced p/q in [1/4, 1/2], 2 <= q <= q_max.
std::uint64_t scan_row_count(std::int64_t q_max);

/// One row per reduced p/q in [1/4, 1/2] with q <= q_max, sorted by (q, p).
/// Denominators are split across up to `threads` workers; the result does
/// not depend on the thread count.
std::vector<FamilyRow> scan(std::int64_t q_max, unsigned threads = 1);

/// CSV with header p,q,delta_over_2pi,theta,g,min_corr,verdict,margin,
/// reals at 12 significant digits, LF line endings.
std::string to_csv(const std::vector<FamilyRow> &rows);
/// Array of objects with the CSV field names.
std::string to_json(const std::vector<FamilyRow> &rows);

/// printf("%.12g") with negative zero folded to zero.
std::string format_real(double x);

struct DiscontinuityReport {
    RationalAngle source;
    ClassicalityVerdict source_verdict;
    std::optional<RationalAngle> neighbour;
    std::optional<ClassicalityVerdict> neighbour_verdict;
    /// |p'/q' - p/q| of the neighbour, or of the closest Classical fraction
    /// with q' <= q_max when none is close enough.
    double distance = 0.0;
    bool found = false;
};

/// Looks for a Classical fraction p'/q' with q' <= q_max and
/// |p'/q' - p/q| < epsilon/2pi. Candidates are the Farey mediants
/// (k p + a)/(k q + b) of p/q with its two Farey neighbours a/b, which are
/// reduced and approach p/q as 1/(q (k q + b)); the first Classical one wins.
/// Throws DomainError unless (p, q) is Nonclassical and epsilon > 0.
DiscontinuityReport discontinuity_probe(const RationalAngle &angle, double epsilon, std::int64_t q_max);

struct QuantumCheckReport {
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    double max_orthogonality = 0.0; // |k . l| for each compatible pair
    double max_commutator = 0.0;    // ||[A_k, A_l]||
    double max_expectation = 0.0;   // |<A_k A_l> - g(theta)| in the -1 eigenstate of A_z
    double max_triple = 0.0;        // ||A_k A_l A_m + I|| on random orthonormal triples
    bool passed = false;

    double worst() const;
    std::string to_text() const;
};

inline constexpr double kQuantumCheckPairTolerance = 1e-12;
inline constexpr double kQuantumCheckTripleTolerance = 1e-10;

/// Samples theta in [pi/4, pi/2] and phi in [0, 2pi) from a seeded
/// mt19937_64 and checks the pair family identities at each sample.
/// `delta_fault` is added to delta(theta) to exercise the failure path.
QuantumCheckReport quantum_check(std::int64_t samples, std::uint64_t seed, double delta_fault = 0.0);

/// Uniformly random orthonormal frame: rows of the rotation matrix of a
/// normalized Gaussian quaternion.
std::array<Direction, 3> random_orthonormal_triple(std::mt19937_64 &rng);

} // namespace contextant
