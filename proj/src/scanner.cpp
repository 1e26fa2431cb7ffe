#include "contextant/scanner.hpp"

#include "contextant/errors.hpp"
#include "contextant/spin_algebra.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

namespace contextant {

namespace {

constexpr double kPi = std::numbers::pi;

void append_rows_for_q(std::int64_t q, std::vector<FamilyRow> &out) {
    for (std::int64_t p = (q + 3) / 4; 2 * p <= q; ++p)
        if (std::gcd(p, q) == 1)
            out.push_back(family_row(RationalAngle{p, q}));
}

std::int64_t inverse_mod(std::int64_t p, std::int64_t q) {
    std::int64_t r0 = q, r1 = p % q, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t t = r0 / r1;
        r0 = std::exchange(r1, r0 - t * r1);
        s0 = std::exchange(s1, s0 - t * s1);
    }
    return ((s0 % q) + q) % q;
}

struct MediantCandidate {
    std::int64_t p, q;
};

// Farey mediants of p/q with both neighbours, ordered by denominator.
std::vector<MediantCandidate> farey_mediants(const RationalAngle &angle, std::int64_t q_max) {
    const std::int64_t p = angle.p(), q = angle.q();
    // Left neighbour a/b: p b - q a = 1. Right neighbour c/d: q c - p d = 1.
    const std::int64_t b = inverse_mod(p, q) == 0 ? q : inverse_mod(p, q);
    const std::int64_t a = (p * b - 1) / q;
    const std::int64_t d = q - b == 0 ? q : q - b;
    const std::int64_t c = (p * d + 1) / q;

    std::vector<MediantCandidate> out;
    for (const auto &[num, den] : {std::pair{a, b}, std::pair{c, d}})
        for (std::int64_t k = 0; k * q + den <= q_max; ++k)
            out.push_back({k * p + num, k * q + den});
    std::stable_sort(out.begin(), out.end(),
                     [](const MediantCandidate &x, const MediantCandidate &y) { return x.q < y.q; });
    return out;
}

} // namespace

FamilyRow family_row(const RationalAngle &angle) {
    const ClassicalityVerdict v = decide_pair_family(angle);
    FamilyRow r;
    r.p = angle.p();
    r.q = angle.q();
    r.delta_over_2pi = angle.over_two_pi();
    r.theta = v.theta;
    r.g = v.g;
    r.min_corr = v.min_corr.to_double();
    r.verdict = v.verdict;
    r.margin = v.margin;
    return r;
}

std::uint64_t scan_row_count(std::int64_t q_max) {
    std::uint64_t n = 0;
    for (std::int64_t q = 2; q <= q_max; ++q)
        for (std::int64_t p = 1; 2 * p <= q; ++p)
            if (4 * p >= q && std::gcd(p, q) == 1)
                ++n;
    return n;
}

std::vector<FamilyRow> scan(std::int64_t q_max, unsigned threads) {
    if (q_max < 2 || q_max > kScanMaxQ)
        throw DomainError("scan: q_max must lie in [2, " + std::to_string(kScanMaxQ) + "]");
    threads = std::max(1u, threads);

    // Worker t handles q = 2 + t, 2 + t + threads, ...; the merge walks q in order.
    const auto span = static_cast<std::size_t>(q_max - 1);
    std::vector<std::vector<FamilyRow>> by_q(span);
    auto work = [&](unsigned t) {
        for (std::size_t i = t; i < span; i += threads)
            append_rows_for_q(static_cast<std::int64_t>(i) + 2, by_q[i]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, t);
    }

    std::vector<FamilyRow> rows;
    for (auto &chunk : by_q)
        rows.insert(rows.end(), chunk.begin(), chunk.end());
    return rows;
}

std::string format_real(double x) {
    if (x == 0.0)
        x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string to_csv(const std::vector<FamilyRow> &rows) {
    std::string out = "p,q,delta_over_2pi,theta,g,min_corr,verdict,margin\n";
    for (const auto &r : rows) {
        out += std::to_string(r.p) + ',' + std::to_string(r.q) + ',' + format_real(r.delta_over_2pi) + ',' +
               format_real(r.theta) + ',' + format_real(r.g) + ',' + format_real(r.min_corr) + ',' +
               to_string(r.verdict) + ',' + format_real(r.margin) + '\n';
    }
    return out;
}

std::string to_json(const std::vector<FamilyRow> &rows) {
    auto clean = [](double x) { return x == 0.0 ? 0.0 : x; };
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
        nlohmann::ordered_json o;
        o["p"] = r.p;
        o["q"] = r.q;
        o["delta_over_2pi"] = clean(r.delta_over_2pi);
        o["theta"] = clean(r.theta);
        o["g"] = clean(r.g);
        o["min_corr"] = clean(r.min_corr);
        o["verdict"] = to_string(r.verdict);
        o["margin"] = clean(r.margin);
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

DiscontinuityReport discontinuity_probe(const RationalAngle &angle, double epsilon, std::int64_t q_max) {
    if (!(epsilon > 0.0))
        throw DomainError("discontinuity_probe: epsilon must be positive");
    DiscontinuityReport report{angle, decide_pair_family(angle), {}, {}, 0.0, false};
    if (report.source_verdict.verdict != Verdict::Nonclassical)
        throw DomainError("discontinuity_probe: " + std::to_string(angle.p()) + "/" + std::to_string(angle.q()) +
                          " is not Nonclassical");

    const double radius = epsilon / (2.0 * kPi);
    const double centre = angle.over_two_pi();
    const auto candidates = farey_mediants(angle, q_max);

    double closest = std::numeric_limits<double>::infinity();
    auto try_pass = [&](bool even_only) {
        for (const auto &c : candidates) {
            if ((even_only && c.q % 2 != 0) || !RationalAngle::valid(c.p, c.q))
                continue;
            const double d = std::abs(static_cast<double>(c.p) / static_cast<double>(c.q) - centre);
            const RationalAngle candidate{c.p, c.q};
            ClassicalityVerdict v = decide_pair_family(candidate);
            if (v.verdict != Verdict::Classical)
                continue;
            closest = std::min(closest, d);
            if (d < radius) {
                report.neighbour = candidate;
                report.neighbour_verdict = std::move(v);
                report.distance = d;
                report.found = true;
                return true;
            }
        }
        return false;
    };
    if (!try_pass(true) && !try_pass(false))
        report.distance = closest;
    return report;
}

double QuantumCheckReport::worst() const {
    return std::max({max_orthogonality, max_commutator, max_expectation, max_triple});
}

std::string QuantumCheckReport::to_text() const {
    auto line = [](const char *name, double value, double tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-24s max residual %.3e  tolerance %.0e  %s\n", name, value, tol,
                      value <= tol ? "PASS" : "FAIL");
        return std::string(buf);
    };
    std::string out = "quantum-check samples=" + std::to_string(samples) + " seed=" + std::to_string(seed) + "\n";
    out += line("orthogonality", max_orthogonality, kQuantumCheckPairTolerance);
    out += line("commutator", max_commutator, kQuantumCheckPairTolerance);
    out += line("pair expectation", max_expectation, kQuantumCheckPairTolerance);
    out += line("triple product", max_triple, kQuantumCheckTripleTolerance);
    char buf[96];
    std::snprintf(buf, sizeof buf, "result %s (worst residual %.3e)\n", passed ? "PASS" : "FAIL", worst());
    return out + buf;
}

std::array<Direction, 3> random_orthonormal_triple(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    double w, x, y, z, n;
    do {
        w = normal(rng);
        x = normal(rng);
        y = normal(rng);
        z = normal(rng);
        n = std::sqrt(w * w + x * x + y * y + z * z);
    } while (n < 1e-6);
    w /= n;
    x /= n;
    y /= n;
    z /= n;
    return {Direction::normalized(1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)),
            Direction::normalized(2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)),
            Direction::normalized(2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y))};
}

QuantumCheckReport quantum_check(std::int64_t samples, std::uint64_t seed, double delta_fault) {
    if (samples < 1)
        throw DomainError("quantum_check: samples must be >= 1");
    QuantumCheckReport r;
    r.samples = samples;
    r.seed = seed;

    std::mt19937_64 rng{seed};
    std::uniform_real_distribution<double> theta_dist{kPi / 4, kPi / 2};
    std::uniform_real_distribution<double> phi_dist{0.0, 2.0 * kPi};
    const DensityMatrix rho = minus_one_eigenprojector(dichotomic(Direction::z_axis()));

    for (std::int64_t i = 0; i < samples; ++i) {
        const double theta = theta_dist(rng);
        const double phi = phi_dist(rng);
        const double delta = delta_of_theta(theta) + delta_fault;
        const Direction k = direction_from_angles(theta, phi);
        const Direction l = direction_from_angles(theta, phi + delta);
        const ComplexMatrix3 ak = dichotomic(k), al = dichotomic(l);

        r.max_orthogonality = std::max(r.max_orthogonality, std::abs(k.dot(l)));
        r.max_commutator = std::max(r.max_commutator, commutator_norm(ak, al));
        // Raw trace so that a fault shows up as a residual instead of a CompatibilityError.
        const double pair = (rho.matrix() * ak * al).trace().real();
        r.max_expectation = std::max(r.max_expectation, std::abs(pair - g_of_theta(theta)));

        const auto frame = random_orthonormal_triple(rng);
        r.max_triple = std::max(r.max_triple, triple_product_check(frame[0], frame[1], frame[2]));
    }
    r.passed = r.max_orthogonality <= kQuantumCheckPairTolerance && r.max_commutator <= kQuantumCheckPairTolerance &&
               r.max_expectation <= kQuantumCheckPairTolerance && r.max_triple <= kQuantumCheckTripleTolerance;
    return r;
}

} // namespace contextant
