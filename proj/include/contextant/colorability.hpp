#pragma once

// Finite Kochen-Specker style colorings of direction sets.
//
// Each direction d stands for the dichotomic observable A_d. Orthogonal
// directions give commuting observables whose outcomes cannot both be -1;
// a complete orthogonal triple multiplies to -I, so in strict mode it must
// carry exactly one -1. Relaxed mode only forbids two -1's. Collinear
// directions (d, -d) are the same observable and are forced equal.
//
// Only finite sets are handled; nothing here says anything about colorings
// of the whole sphere.

#include "contextant/spin_algebra.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace contextant {

enum class ColoringMode { Strict, Relaxed };

inline constexpr double kOrthogonalityTolerance = 1e-10;
inline constexpr std::size_t kCountingMaxVectors = 20;

class VectorSet {
public:
    explicit VectorSet(std::vector<Direction> vectors);

    std::size_t size() const { return vectors_.size(); }
    const std::vector<Direction> &vectors() const { return vectors_; }
    /// Orthogonal pairs (i < j).
    const std::vector<std::array<std::size_t, 2>> &pairs() const { return pairs_; }
    /// Mutually orthogonal triples (i < j < k).
    const std::vector<std::array<std::size_t, 3>> &triples() const { return triples_; }
    /// Collinear pairs (i < j).
    const std::vector<std::array<std::size_t, 2>> &collinear() const { return collinear_; }

    bool orthogonal(std::size_t i, std::size_t j) const;

private:
    std::vector<Direction> vectors_;
    std::vector<std::array<std::size_t, 2>> pairs_;
    std::vector<std::array<std::size_t, 3>> triples_;
    std::vector<std::array<std::size_t, 2>> collinear_;
    std::vector<std::vector<bool>> adjacency_;
};

struct Coloring {
    std::vector<int> values; // +/-1 per vector
};

struct ColorabilityResult {
    bool satisfiable = false;
    std::optional<Coloring> coloring;
    /// Number of valid colorings; only filled for sets of at most 20 vectors.
    std::optional<std::uint64_t> solution_count;
};

bool is_valid_coloring(const VectorSet &set, const Coloring &c, ColoringMode mode);

/// Backtracking search with unit propagation over the pair, triple and
/// collinearity constraints.
ColorabilityResult ks_colorability(const VectorSet &set, ColoringMode mode, bool count_solutions = false);

/// Largest fraction of complete triples that a relaxed coloring can make
/// multiply to -1. Equals 1 iff the set is strictly colorable. Throws
/// DomainError when the set has no complete triple.
double triples_violation_fraction(const VectorSet &set);

} // namespace contextant
