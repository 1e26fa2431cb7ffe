// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cli.hpp"

#include "contextant/angle_family.hpp"
#include "contextant/assignment_model.hpp"
#include "contextant/classicality.hpp"
#include "contextant/colorability.hpp"
#include "contextant/scanner.hpp"
#include "contextant/spin_algebra.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace contextant;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

bool valid_angle(std::int64_t p, std::int64_t q) { return RationalAngle::valid(p, q); }

Outcome kcbs() {
    Outcome o;
    const RationalAngle angle{2, 5};
    const double target = 5 - 4 * std::sqrt(5.0);
    const double theta = theta_of(angle);
    const DensityMatrix rho = minus_one_eigenprojector(dichotomic(Direction::z_axis()));
    double matrix_sum = 0;
    for (int j = 0; j < 5; ++j) {
        const double phi = 4 * pi * j / 5;
        matrix_sum += expectation(rho, {dichotomic(direction_from_angles(theta, phi)),
                                        dichotomic(direction_from_angles(theta, phi + angle.delta()))});
    }
    const double formula_sum = 5 * g_of_delta(angle.delta());
    const auto bf = brute_force_min(angle);
    const auto v = decide_pair_family(angle);
    o.require(std::abs(matrix_sum - target) < 1e-9, "matrix cycle sum");
    o.require(std::abs(formula_sum - target) < 1e-9, "g_of_delta cycle sum");
    o.require(bf.minimum * 5 == Fraction(-3), "brute-force hidden-variable sum");
    o.require(bf.minimum == min_correlation(classify(angle)), "closed form vs brute force");
    o.require(v.verdict == Verdict::Nonclassical, "verdict");
    char buf[160];
    std::snprintf(buf, sizeof buf, "quantum %.9f (matrix) %.9f (formula), hidden variable %s, %s", matrix_sum,
                  formula_sum, (bf.minimum * 5).to_string().c_str(), to_string(v.verdict).c_str());
    if (o.ok)
        o.detail = buf;
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    int cases = 0;
    for (std::int64_t q = 2; q <= 16; ++q)
        for (std::int64_t p = 1; 2 * p <= q; ++p) {
            if (!valid_angle(p, q))
                continue;
            const auto bf = brute_force_min(RationalAngle(p, q));
            const Fraction expected = q % 2 == 0 ? Fraction(-1) : Fraction(-(q - 2), q);
            o.require(bf.minimum == expected, "brute force at " + std::to_string(p) + "/" + std::to_string(q));
            ++cases;
        }
    if (o.ok)
        o.detail = std::to_string(cases) + " fractions, all exact";
    return o;
}

Outcome threshold() {
    Outcome o;
    o.require(std::abs(condition_p_threshold(1) - 1.0) < 1e-12, "threshold(1)");
    o.require(decide_pair_family(RationalAngle(1, 3)).verdict == Verdict::Classical, "(1,3) verdict");
    for (std::int64_t n = 2; n <= 50; ++n)
        o.require(decide_pair_family(RationalAngle(n, 2 * n + 1)).verdict == Verdict::Nonclassical,
                  "(n,2n+1) at n=" + std::to_string(n));
    if (o.ok) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "threshold(1) = %.15f; (1,3) Classical; n = 2..50 Nonclassical",
                      condition_p_threshold(1));
        o.detail = buf;
    }
    return o;
}

Outcome quantum_identities() {
    Outcome o;
    std::mt19937_64 rng{2024};
    std::uniform_real_distribution<double> th{pi / 4, pi / 2}, ph{0, 2 * pi};
    const DensityMatrix rho = minus_one_eigenprojector(dichotomic(Direction::z_axis()));
    double worst_comm = 0, worst_pair = 0, worst_triple = 0;
    for (int i = 0; i < 1000; ++i) {
        const double theta = th(rng), phi = ph(rng);
        const auto a = dichotomic(direction_from_angles(theta, phi));
        const auto b = dichotomic(direction_from_angles(theta, phi + delta_of_theta(theta)));
        worst_comm = std::max(worst_comm, commutator_norm(a, b));
        const double c = std::cos(theta);
        worst_pair = std::max(worst_pair, std::abs(expectation(rho, {a, b}) - (1 - 4 * c * c)));
    }
    for (int i = 0; i < 100; ++i) {
        const auto f = random_orthonormal_triple(rng);
        worst_triple = std::max(worst_triple, triple_product_check(f[0], f[1], f[2]));
    }
    const auto report = quantum_check(1000, 42);
    o.require(worst_comm < 1e-12, "commutator norm");
    o.require(worst_pair < 1e-12, "pair expectation");
    o.require(worst_triple < 1e-10, "triple product");
    o.require(report.passed, "quantum_check(1000, 42)");
    char buf[160];
    std::snprintf(buf, sizeof buf, "max commutator %.2e, max pair residual %.2e, max triple residual %.2e", worst_comm,
                  worst_pair, worst_triple);
    if (o.ok)
        o.detail = buf;
    return o;
}

Outcome witness_exactness() {
    Outcome o;
    int classical = 0;
    double worst = 0;
    for (std::int64_t q = 2; q <= 64; ++q)
        for (std::int64_t p = 1; 2 * p <= q; ++p) {
            if (!valid_angle(p, q))
                continue;
            const auto v = decide_pair_family(RationalAngle(p, q));
            if (v.verdict != Verdict::Classical)
                continue;
            ++classical;
            const std::string at = std::to_string(p) + "/" + std::to_string(q);
            o.require(v.witness.has_value(), "missing witness at " + at);
            if (!v.witness)
                continue;
            const double m = v.min_corr.to_double();
            const double w = (1 - v.g) / (1 - m);
            const auto &parts = v.witness->components();
            o.require(std::abs(parts.front().weight - w) < 1e-12, "weight formula at " + at);
            worst = std::max(worst, std::abs(v.witness->correlation() - v.g));
        }
    o.require(worst < 1e-12, "witness correlation");
    if (o.ok) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%d Classical fractions, worst |E_hv - g| = %.2e", classical, worst);
        o.detail = buf;
    }
    return o;
}

Outcome discontinuity() {
    Outcome o;
    const auto rows = scan(101, 4);
    int probed = 0;
    double worst = 0;
    for (const auto &r : rows) {
        if (r.verdict != Verdict::Nonclassical)
            continue;
        const auto rep = discontinuity_probe(RationalAngle(r.p, r.q), 2 * pi * 1e-3, 100000);
        const std::string at = std::to_string(r.p) + "/" + std::to_string(r.q);
        o.require(rep.found && rep.distance < 1e-3, "no Classical neighbour for " + at);
        if (rep.found)
            o.require(decide_pair_family(*rep.neighbour).verdict == Verdict::Classical, "neighbour verdict at " + at);
        worst = std::max(worst, rep.distance);
        ++probed;
    }

    // Odd denominators below the threshold stay Classical even though g < 0.
    // From q = 37 on every odd q has such a row strictly inside the span of
    // Nonclassical fractions, so the two verdicts interleave in delta/2pi.
    double lo = 1, hi = 0;
    for (const auto &r : rows)
        if (r.verdict == Verdict::Nonclassical) {
            lo = std::min(lo, r.delta_over_2pi);
            hi = std::max(hi, r.delta_over_2pi);
        }
    int interleaved = 0;
    for (std::int64_t q = 37; q <= 101; q += 2) {
        bool inside = false, nonclassical = false;
        for (const auto &r : rows) {
            if (r.q != q)
                continue;
            if (r.verdict == Verdict::Classical && r.g < 0 && r.delta_over_2pi > lo && r.delta_over_2pi < hi)
                inside = true;
            if (r.verdict == Verdict::Nonclassical)
                nonclassical = true;
        }
        o.require(inside && nonclassical, "odd q=" + std::to_string(q) + " lacks interleaving");
        interleaved += inside && nonclassical ? 1 : 0;
    }
    std::vector<FamilyRow> negative;
    for (const auto &r : rows)
        if (r.g < 0)
            negative.push_back(r);
    std::sort(negative.begin(), negative.end(),
              [](const FamilyRow &a, const FamilyRow &b) { return a.p * b.q < b.p * a.q; });
    int flips = 0;
    for (std::size_t i = 1; i < negative.size(); ++i)
        flips += negative[i].verdict != negative[i - 1].verdict ? 1 : 0;
    if (o.ok) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "%d Nonclassical fractions probed, worst neighbour distance %.2e; all %d odd q in [37,101] "
                      "have Classical g<0 rows inside (%.4f, %.4f); %d verdict flips along g<0",
                      probed, worst, interleaved, lo, hi, flips);
        o.detail = buf;
    }
    return o;
}

Outcome colorability() {
    Outcome o;
    const VectorSet basis{{Direction::x_axis(), Direction::y_axis(), Direction::z_axis()}};
    const auto b = ks_colorability(basis, ColoringMode::Strict, true);
    o.require(b.satisfiable && b.solution_count && *b.solution_count == 3, "single basis count");

    std::vector<Direction> pent;
    const double theta = theta_of(RationalAngle(2, 5));
    for (int j = 0; j < 5; ++j)
        pent.push_back(direction_from_angles(theta, 4 * pi * j / 5));
    const VectorSet pentagram{pent};
    const auto p = ks_colorability(pentagram, ColoringMode::Strict);
    o.require(p.satisfiable, "pentagram SAT");

    int validated = 0;
    auto validate = [&](const VectorSet &set, ColoringMode mode, const ColorabilityResult &r) {
        if (!r.satisfiable)
            return;
        o.require(r.coloring && is_valid_coloring(set, *r.coloring, mode), "post-hoc validation");
        ++validated;
    };
    validate(basis, ColoringMode::Strict, b);
    validate(pentagram, ColoringMode::Strict, p);
    std::mt19937_64 rng{7};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Direction> v;
        const int frames = 1 + trial % 4;
        for (int f = 0; f < frames; ++f) {
            const auto t = random_orthonormal_triple(rng);
            v.insert(v.end(), t.begin(), t.end());
        }
        v.push_back(Direction::z_axis());
        const VectorSet set{v};
        for (auto mode : {ColoringMode::Strict, ColoringMode::Relaxed})
            validate(set, mode, ks_colorability(set, mode));
    }
    if (o.ok)
        o.detail = "basis 3 colorings, pentagram SAT, " + std::to_string(validated) + " SAT results validated";
    return o;
}

Outcome determinism() {
    Outcome o;
    auto run = [](std::vector<std::string> args) {
        args.insert(args.begin(), "contextant");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::pair{code, out.str()};
    };
    const auto first = run({"scan", "--q-max", "64", "--format", "csv"});
    const auto second = run({"scan", "--q-max", "64", "--format", "csv"});
    const auto one = run({"scan", "--q-max", "64", "--format", "csv", "--threads", "1"});
    const auto eight = run({"scan", "--q-max", "64", "--format", "csv", "--threads", "8"});
    o.require(first.first == 0 && second.first == 0 && one.first == 0 && eight.first == 0, "exit code");
    o.require(first.second == second.second, "two runs differ");
    o.require(one.second == eight.second, "threads 1 vs 8 differ");
    o.require(first.second == one.second, "default threads differ");
    if (o.ok)
        o.detail = std::to_string(first.second.size()) + " bytes identical across runs and thread counts";
    return o;
}

} // namespace

int main() {
    struct Criterion {
        const char *name;
        double budget_s;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria{
        {"KCBS reproduction", 1.0, kcbs},
        {"three-statement oracle equivalence", 30.0, oracle_equivalence},
        {"odd-cycle threshold", 1.0, threshold},
        {"quantum-side identities", 5.0, quantum_identities},
        {"classical-witness exactness", 0.0, witness_exactness},
        {"discontinuity demonstration", 10.0, discontinuity},
        {"colorability sanity", 0.0, colorability},
        {"determinism", 0.0, determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto &c = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception &e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0 && secs >= c.budget_s) {
            out.ok = false;
            out.detail += " (over the " + std::to_string(c.budget_s) + " s budget)";
        }
        failures += out.ok ? 0 : 1;
        std::printf("[%s] criterion %zu: %s (%.3f s): %s\n", out.ok ? "PASS" : "FAIL", i + 1, c.name, secs,
                    out.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
