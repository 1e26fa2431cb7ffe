#include "contextant/classicality.hpp"

#include "contextant/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace contextant {

std::string to_string(Verdict v) { return v == Verdict::Classical ? "Classical" : "Nonclassical"; }

ClassicalityVerdict decide_pair_family(const RationalAngle &angle) {
    ClassicalityVerdict out;
    out.angle = angle;
    out.angle_class = classify(angle);
    out.theta = theta_of(angle);
    out.delta = angle.delta();
    out.g = g_of(angle);
    out.min_corr = min_correlation(out.angle_class);

    // Only p/q in {1/4, 1/3, 1/2} give a rational g, and 1/3 sits exactly on
    // the odd-cycle bound; decide those in exact arithmetic.
    if (const auto g = exact_g(angle)) {
        const Fraction margin = *g < 0 ? -*g + out.min_corr : -(Fraction{1} - *g);
        out.margin = margin.to_double();
    } else {
        out.margin = overlap_condition(out.g, out.angle_class).margin;
    }

    const auto q = static_cast<double>(angle.q());
    if (out.margin > 0.0) {
        out.verdict = Verdict::Nonclassical;
        out.certificate = ViolationCertificate{q * out.g, q * out.min_corr.to_double()};
    } else {
        out.verdict = Verdict::Classical;
        out.witness = mixture_for_target(out.g, angle);
    }
    return out;
}

ClassicalityVerdict decide_pair_family_generic(std::optional<double> delta, std::int64_t q_max) {
    ClassicalityVerdict out;
    out.verdict = Verdict::Classical;
    out.angle_class = AngleClass::irrational();
    out.min_corr = min_correlation(out.angle_class);
    if (!delta) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        out.theta = out.delta = out.g = nan;
        out.margin = 0.0;
        return out;
    }
    out.delta = *delta;
    out.theta = theta_of_delta(*delta);
    out.g = g_of_delta(*delta);
    out.margin = out.g < 0.0 ? -out.g - 1.0 : -(1.0 - out.g);
    out.approximant = nearest_even_denominator(*delta / (2.0 * std::numbers::pi), q_max);
    if (out.approximant)
        out.witness = mixture_for_target(out.g, out.approximant->angle);
    return out;
}

double condition_p_threshold(std::int64_t n) {
    if (n < 1)
        throw DomainError("condition_p_threshold: n must be >= 1");
    const auto nd = static_cast<double>(n);
    return (2.0 * nd + 1.0) / (2.0 * std::numbers::pi) * std::acos(-nd / (nd + 1.0));
}

std::vector<std::int64_t> admissible_p_range(std::int64_t n) {
    if (n < 1)
        throw DomainError("admissible_p_range: n must be >= 1");
    const std::int64_t q = 2 * n + 1;
    const double lower = sign_change_over_two_pi() * static_cast<double>(q);
    std::vector<std::int64_t> out;
    for (auto p = static_cast<std::int64_t>(std::floor(lower)); 2 * p <= q; ++p)
        if (static_cast<double>(p) > lower)
            out.push_back(p);
    return out;
}

double SingleObservableModel::expectation(std::size_t i) const {
    double s = 0.0;
    for (const auto &c : components)
        s += c.weight * c.values.at(i);
    return s;
}

SingleObservableModel single_observable_model(const std::vector<Direction> &directions,
                                              const std::vector<double> &expectations) {
    if (directions.size() != expectations.size())
        throw PreconditionError("single_observable_model: one expectation per direction required");
    std::vector<double> thresholds;
    thresholds.reserve(expectations.size());
    for (double e : expectations) {
        if (!(std::abs(e) <= 1.0))
            throw DomainError("single_observable_model: expectation outside [-1, 1]");
        thresholds.push_back((1.0 + e) / 2.0);
    }

    std::vector<double> cuts = thresholds;
    cuts.push_back(0.0);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    SingleObservableModel model;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        DeterministicAssignment c{cuts[j + 1] - cuts[j], {}};
        c.values.reserve(thresholds.size());
        for (double t : thresholds)
            c.values.push_back(cuts[j] < t ? 1 : -1);
        model.components.push_back(std::move(c));
    }
    return model;
}

} // namespace contextant
