#include <doctest.h>

#include "contextant/assignment_model.hpp"
#include "contextant/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace contextant;

namespace {

constexpr double pi = std::numbers::pi;

// Plain enumeration of sign vectors, kept separate from the bitmask search.
Fraction enumerate_min(std::size_t q) {
    std::int64_t best = static_cast<std::int64_t>(q) + 1;
    std::vector<int> v(q);
    for (std::uint64_t code = 0; code < (1ull << q); ++code) {
        for (std::size_t k = 0; k < q; ++k)
            v[k] = (code >> k) & 1 ? -1 : 1;
        if (!CycleAssignment::respects_exclusivity(v))
            continue;
        std::int64_t s = 0;
        for (std::size_t k = 0; k < q; ++k)
            s += v[k] * v[(k + 1) % q];
        best = std::min(best, s);
    }
    return {best, static_cast<std::int64_t>(q)};
}

// Midpoint rule for int_0^{2pi} f(phi) f(phi + delta) dphi / 2pi.
double quadrature(const CycleAssignment &a, const OrbitCycle &orbit, double delta, int points) {
    double s = 0;
    for (int i = 0; i < points; ++i) {
        const double phi = 2 * pi * (i + 0.5) / points;
        s += a.evaluate(orbit, phi) * a.evaluate(orbit, phi + delta);
    }
    return s / points;
}

} // namespace

TEST_CASE("CycleAssignment enforces exclusivity") {
    CHECK_NOTHROW(CycleAssignment({1, -1, 1, -1}));
    CHECK_THROWS_AS(CycleAssignment({-1, 1, -1}), PreconditionError); // wrap-around pair
    CHECK_THROWS_AS(CycleAssignment({1, -1, -1}), PreconditionError);
    CHECK_THROWS_AS(CycleAssignment({1, 0, 1}), PreconditionError);
    CHECK_THROWS_AS(CycleAssignment({}), PreconditionError);
}

TEST_CASE("cycle_correlation") {
    CHECK(cycle_correlation(CycleAssignment({1, -1, 1, -1, 1})) == Fraction(-3, 5));
    CHECK(cycle_correlation(CycleAssignment({1, -1, 1, -1})) == Fraction(-1));
    for (std::int64_t q = 1; q < 12; ++q)
        CHECK(cycle_correlation(uniform_assignment(q)) == Fraction(1));
}

TEST_CASE("min_correlation closed form") {
    CHECK(min_correlation(AngleClass::odd(2)) == Fraction(-3, 5));
    CHECK(min_correlation(AngleClass::odd(1)) == Fraction(-1, 3));
    CHECK(min_correlation(AngleClass::even(1)) == Fraction(-1));
    CHECK(min_correlation(AngleClass::even(17)) == Fraction(-1));
    CHECK(min_correlation(AngleClass::irrational()) == Fraction(-1));
}

TEST_CASE("optimal_assignment") {
    const auto a = optimal_assignment(RationalAngle(1, 4));
    CHECK(a.values() == std::vector<int>{1, -1, 1, -1});
    CHECK(cycle_correlation(a) == Fraction(-1));
    const auto b = optimal_assignment(RationalAngle(2, 5));
    CHECK(b.values() == std::vector<int>{1, -1, 1, -1, 1});
    CHECK(cycle_correlation(b) == Fraction(-3, 5));
    CHECK(enumerate_min(5) == Fraction(-3, 5));
    const auto c = optimal_assignment(RationalAngle(1, 3));
    CHECK(c.values() == std::vector<int>{1, -1, 1});
    CHECK(cycle_correlation(c) == Fraction(-1, 3));
    CHECK(enumerate_min(3) == Fraction(-1, 3));

    for (std::int64_t q = 2; q <= 64; ++q)
        for (std::int64_t p = 1; 2 * p <= q; ++p) {
            if (!RationalAngle::valid(p, q))
                continue;
            const RationalAngle angle{p, q};
            const auto opt = optimal_assignment(angle);
            CHECK(CycleAssignment::respects_exclusivity(opt.values()));
            CHECK(cycle_correlation(opt) == min_correlation(classify(angle)));
        }
}

TEST_CASE("literal odd-cycle formula attains the bound but breaks exclusivity") {
    // f(r + k delta) = (-1)^{|k| + n + 1}, k = -n..n, read along the cycle.
    for (int n = 1; n <= 6; ++n) {
        std::vector<int> v;
        for (int k = -n; k <= n; ++k)
            v.push_back(((std::abs(k) + n + 1) % 2 == 0) ? 1 : -1);
        std::int64_t s = 0;
        for (std::size_t k = 0; k < v.size(); ++k)
            s += v[k] * v[(k + 1) % v.size()];
        CHECK(Fraction(s, 2 * n + 1) == Fraction(-(2 * n - 1), 2 * n + 1));
        CHECK(v.front() == -1);
        CHECK(v.back() == -1);
        CHECK_FALSE(CycleAssignment::respects_exclusivity(v));
    }
}

TEST_CASE("brute_force_min") {
    const auto r = brute_force_min(RationalAngle(2, 5));
    CHECK(r.minimum == Fraction(-3, 5));
    CHECK(cycle_correlation(r.minimizer) == r.minimum);
    const auto two = brute_force_min(RationalAngle(1, 2));
    CHECK(two.minimum == Fraction(-1));
    CHECK(two.minimizer.values() == std::vector<int>{1, -1});

    SUBCASE("matches the closed form and the plain enumeration for q <= 16") {
        for (std::int64_t q = 2; q <= 16; ++q)
            for (std::int64_t p = 1; 2 * p <= q; ++p) {
                if (!RationalAngle::valid(p, q))
                    continue;
                const RationalAngle angle{p, q};
                const auto bf = brute_force_min(angle);
                CHECK(bf.minimum == min_correlation(classify(angle)));
                CHECK(bf.minimum == enumerate_min(static_cast<std::size_t>(q)));
                CHECK(bf.minimum == (q % 2 == 0 ? Fraction(-1) : Fraction(-(q - 2), q)));
            }
    }
    SUBCASE("deterministic minimizer") {
        CHECK(brute_force_min(RationalAngle(3, 7)).minimizer == brute_force_min(RationalAngle(3, 7)).minimizer);
    }
    CHECK_THROWS_AS(brute_force_min_cycle(25), ResourceError);
    CHECK(brute_force_min_cycle(23).minimum == Fraction(-21, 23));
}

TEST_CASE("arc-constant functions integrate exactly") {
    for (auto [p, q] : {std::pair{2, 5}, std::pair{3, 7}, std::pair{1, 4}, std::pair{5, 13}, std::pair{7, 16}}) {
        const RationalAngle angle{p, q};
        const auto orbit = orbit_cycle(angle);
        for (const auto &a : {optimal_assignment(angle), uniform_assignment(q), brute_force_min(angle).minimizer}) {
            const double integral = quadrature(a, orbit, angle.delta(), 1000 * q);
            CHECK(std::abs(integral - cycle_correlation(a).to_double()) < 1e-6);
        }
    }
    SUBCASE("random exclusivity-respecting assignments") {
        std::mt19937_64 rng{31};
        const RationalAngle angle{4, 11};
        const auto orbit = orbit_cycle(angle);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<int> v(11);
            do {
                for (auto &x : v)
                    x = rng() % 3 == 0 ? -1 : 1;
            } while (!CycleAssignment::respects_exclusivity(v));
            const CycleAssignment a{v};
            CHECK(std::abs(quadrature(a, orbit, angle.delta(), 11000) - cycle_correlation(a).to_double()) < 1e-6);
        }
    }
}

TEST_CASE("mixture_for_target") {
    const auto half = mixture_for_target(0.0, RationalAngle(1, 4));
    REQUIRE(half);
    CHECK(half->components()[0].weight == doctest::Approx(0.5));
    CHECK(std::abs(half->correlation()) < 1e-15);

    CHECK(!mixture_for_target(-0.7, RationalAngle(2, 5)));

    const auto m = mixture_for_target(-0.5, RationalAngle(2, 5));
    REQUIRE(m);
    CHECK(m->components()[0].weight == doctest::Approx(0.9375).epsilon(1e-15));
    CHECK(m->correlation() == doctest::Approx(-0.5).epsilon(1e-15));

    SUBCASE("reproduces every reachable target, refuses the rest") {
        for (auto [p, q] : {std::pair{2, 5}, std::pair{3, 7}, std::pair{3, 8}, std::pair{1, 3}})
            for (int i = 0; i <= 200; ++i) {
                const double g = -1 + i / 100.0;
                const RationalAngle angle{p, q};
                const auto model = mixture_for_target(g, angle);
                const bool reachable = g >= min_correlation(classify(angle)).to_double();
                CHECK(model.has_value() == reachable);
                CHECK(overlap_condition(g, classify(angle)).nonclassical == !reachable);
                if (model) {
                    double total = 0;
                    for (const auto &c : model->components()) {
                        CHECK(c.weight >= 0);
                        CHECK(c.weight <= 1);
                        total += c.weight;
                    }
                    CHECK(std::abs(total - 1) < 1e-12);
                    CHECK(std::abs(model->correlation() - g) < 1e-12);
                }
            }
    }
    CHECK_THROWS_AS(mixture_for_target(1.5, RationalAngle(1, 2)), DomainError);
    CHECK_THROWS_AS(HiddenVariableModel({{0.7, uniform_assignment(3)}}), PreconditionError);
}

TEST_CASE("overlap_condition") {
    const double kcbs = 1 - 4 / std::sqrt(5.0);
    const auto a = overlap_condition(kcbs, AngleClass::odd(2));
    CHECK(a.nonclassical);
    CHECK(a.margin == doctest::Approx(-kcbs - 0.6).epsilon(1e-13));
    CHECK(a.margin == doctest::Approx(0.1888544).epsilon(1e-7));

    const auto b = overlap_condition(-1, AngleClass::even(1));
    CHECK_FALSE(b.nonclassical);
    CHECK(b.margin == 0.0);

    for (auto cls : {AngleClass::odd(1), AngleClass::odd(5), AngleClass::even(3), AngleClass::irrational()}) {
        const auto c = overlap_condition(0.5, cls);
        CHECK_FALSE(c.nonclassical);
        CHECK(c.margin == doctest::Approx(-0.5));
    }
    CHECK_FALSE(overlap_condition(-0.999, AngleClass::irrational()).nonclassical);
}
