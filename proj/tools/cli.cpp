#include "cli.hpp"

#include "contextant/angle_family.hpp"
#include "contextant/assignment_model.hpp"
#include "contextant/classicality.hpp"
#include "contextant/colorability.hpp"
#include "contextant/errors.hpp"
#include "contextant/scanner.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

namespace contextant::cli {

namespace {

unsigned thread_cap(unsigned requested) {
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    if (const char *env = std::getenv("CONTEXTANT_THREADS")) {
        char *end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0)
            n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

std::string fraction_text(std::int64_t p, std::int64_t q) { return std::to_string(p) + "/" + std::to_string(q); }

void print_verdict(std::ostream &out, const ClassicalityVerdict &v) {
    out << "verdict: " << to_string(v.verdict) << "\n";
    if (v.angle)
        out << "delta/2pi: " << fraction_text(v.angle->p(), v.angle->q()) << "\n";
    else
        out << "delta/2pi: generic (irrational)\n";
    out << "delta: " << format_real(v.delta) << "\n";
    out << "theta: " << format_real(v.theta) << "\n";
    out << "g: " << format_real(v.g) << "\n";
    out << "min_corr: " << v.min_corr << "\n";
    out << "margin: " << format_real(v.margin) << "\n";
    if (v.certificate) {
        out << "quantum cycle sum: " << format_real(v.certificate->quantum_value) << "\n";
        out << "best hidden-variable cycle sum: " << format_real(v.certificate->best_hv_value) << "\n";
    }
    if (v.approximant)
        out << "witness approximant: " << fraction_text(v.approximant->angle.p(), v.approximant->angle.q())
            << " (distance " << format_real(v.approximant->distance) << ")\n";
    if (v.witness) {
        out << "witness:";
        for (const auto &c : v.witness->components())
            out << " " << format_real(c.weight) << " x " << c.assignment.to_string();
        out << "\nwitness correlation: " << format_real(v.witness->correlation()) << "\n";
    }
}

int cmd_verdict(std::ostream &out, std::optional<std::int64_t> p, std::optional<std::int64_t> q,
                std::optional<double> theta, std::int64_t q_max, double tolerance) {
    if (theta && (p || q))
        throw CLI::ValidationError("give either --p/--q or --theta, not both");
    if (theta) {
        const double delta = delta_of_theta(*theta);
        out << "[generic verdict: delta/2pi treated as irrational]\n";
        print_verdict(out, decide_pair_family_generic(delta, q_max));
        out << "\n[rational approximants with q <= " << q_max << " within " << format_real(tolerance) << "]\n";
        out << "p/q,distance,verdict,margin\n";
        for (const auto &a : rational_approximants(delta, q_max)) {
            if (a.distance > tolerance)
                continue;
            const auto v = decide_pair_family(a.angle);
            out << fraction_text(a.angle.p(), a.angle.q()) << "," << format_real(a.distance) << ","
                << to_string(v.verdict) << "," << format_real(v.margin) << "\n";
        }
        return kOk;
    }
    if (!p || !q)
        throw CLI::ValidationError("both --p and --q are required (or --theta)");
    print_verdict(out, decide_pair_family(RationalAngle{*p, *q}));
    return kOk;
}

int cmd_oracle(std::ostream &out, std::int64_t p, std::int64_t q) {
    const RationalAngle angle{p, q};
    const auto result = brute_force_min(angle);
    const auto closed = min_correlation(classify(angle));
    out << "p/q: " << fraction_text(p, q) << "\n";
    out << "brute-force minimum: " << result.minimum << "\n";
    out << "minimizer: " << result.minimizer.to_string() << "\n";
    out << "closed-form minimum: " << closed << "\n";
    out << "agree: " << (result.minimum == closed ? "yes" : "no") << "\n";
    return result.minimum == closed ? kOk : kCheckFailed;
}

std::vector<Direction> read_vectors(const std::string &path, bool normalize) {
    std::ifstream in{path};
    if (!in)
        throw CLI::ValidationError("cannot open vector file " + path);
    std::vector<Direction> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls{line};
        double x, y, z;
        std::string extra;
        if (!(ls >> x >> y >> z) || (ls >> extra))
            throw CLI::ValidationError(path + ":" + std::to_string(lineno) + ": expected three reals");
        try {
            out.push_back(normalize ? Direction::normalized(x, y, z) : Direction{x, y, z});
        } catch (const PreconditionError &e) {
            throw CLI::ValidationError(path + ":" + std::to_string(lineno) + ": " + e.what() +
                                       " (use --normalize to rescale)");
        }
    }
    return out;
}

int cmd_ks_color(std::ostream &out, const std::string &path, const std::string &mode_name, bool count,
                 bool normalize, bool fraction) {
    const VectorSet set{read_vectors(path, normalize)};
    const ColoringMode mode = mode_name == "relaxed" ? ColoringMode::Relaxed : ColoringMode::Strict;
    const auto r = ks_colorability(set, mode, count);
    out << "vectors: " << set.size() << "\n";
    out << "orthogonal pairs: " << set.pairs().size() << "\n";
    out << "complete triples: " << set.triples().size() << "\n";
    out << "mode: " << mode_name << "\n";
    out << "result: " << (r.satisfiable ? "SAT" : "UNSAT") << "\n";
    if (r.coloring) {
        out << "coloring:";
        for (int v : r.coloring->values)
            out << ' ' << (v > 0 ? "+1" : "-1");
        out << "\n";
    }
    if (count) {
        if (r.solution_count)
            out << "colorings: " << *r.solution_count << "\n";
        else
            out << "colorings: not counted (more than " << kCountingMaxVectors << " vectors)\n";
    }
    if (fraction) {
        if (set.triples().empty())
            out << "triples violation fraction: undefined (no complete triple)\n";
        else
            out << "triples violation fraction: " << format_real(triples_violation_fraction(set)) << "\n";
    }
    return kOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Classicality of the spin-1 tilted-cone pair family"};
    app.require_subcommand(1);

    std::optional<std::int64_t> p, q;
    std::optional<double> theta;
    std::int64_t q_max = 100;
    double tolerance = 1e-3;
    auto *verdict = app.add_subcommand("verdict", "Classical/Nonclassical verdict for one family member");
    verdict->add_option("--p", p, "numerator of delta/2pi");
    verdict->add_option("--q", q, "denominator of delta/2pi");
    verdict->add_option("--theta", theta, "cone angle in radians (generic verdict plus rational approximants)");
    verdict->add_option("--q-max", q_max, "largest approximant denominator")->capture_default_str();
    verdict->add_option("--tolerance", tolerance, "largest |delta/2pi - p/q| listed")->capture_default_str();

    std::int64_t scan_q_max = 0;
    std::string format = "csv";
    unsigned threads = 0;
    std::string output;
    auto *scan_cmd = app.add_subcommand("scan", "Tabulate every reduced p/q in [1/4, 1/2] up to --q-max");
    scan_cmd->add_option("--q-max", scan_q_max, "largest denominator")->required();
    scan_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    scan_cmd->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
    scan_cmd->add_option("--output", output, "write to a file instead of stdout");

    std::int64_t op = 0, oq = 0;
    auto *oracle = app.add_subcommand("oracle", "Exhaustive minimum cycle correlation for p/q (q <= 24)");
    oracle->add_option("--p", op)->required();
    oracle->add_option("--q", oq)->required();

    std::int64_t samples = 1000;
    std::uint64_t seed = 42;
    double fault = 0.0;
    auto *qcheck = app.add_subcommand("quantum-check", "Randomized check of the spin-1 pair family identities");
    qcheck->add_option("--samples", samples)->capture_default_str();
    qcheck->add_option("--seed", seed)->capture_default_str();
    qcheck->add_option("--inject-delta-fault", fault, "offset added to delta(theta)");

    std::int64_t dp = 0, dq = 0, d_q_max = 100000;
    std::optional<double> epsilon, epsilon_frac;
    auto *disc = app.add_subcommand("discontinuity", "Find a Classical fraction near a Nonclassical one");
    disc->add_option("--p", dp)->required();
    disc->add_option("--q", dq)->required();
    auto *eps_opt = disc->add_option("--epsilon", epsilon, "neighbourhood radius in delta (radians)");
    disc->add_option("--epsilon-over-2pi", epsilon_frac, "neighbourhood radius in delta/2pi")->excludes(eps_opt);
    disc->add_option("--q-max", d_q_max, "largest candidate denominator")->capture_default_str();

    std::string vec_path;
    std::string mode = "strict";
    bool count = false, normalize = false, vfrac = false;
    auto *ks = app.add_subcommand("ks-color", "Colorability of a finite direction set");
    ks->add_option("file", vec_path, "text file, one vector per line: x y z")->required();
    ks->add_option("--mode", mode)->check(CLI::IsMember({"strict", "relaxed"}))->capture_default_str();
    ks->add_flag("--count", count, "count all colorings (sets of at most 20 vectors)");
    ks->add_flag("--normalize", normalize, "rescale input vectors to unit length");
    ks->add_flag("--violation-fraction", vfrac, "report the best relaxed fraction of -1 triples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (*verdict)
            return cmd_verdict(out, p, q, theta, q_max, tolerance);
        if (*scan_cmd) {
            const auto rows = scan(scan_q_max, thread_cap(threads));
            const std::string text = format == "json" ? to_json(rows) : to_csv(rows);
            if (output.empty()) {
                out << text;
            } else {
                std::ofstream f{output, std::ios::binary};
                if (!f) {
                    err << "error: cannot write " << output << "\n";
                    return kLimit;
                }
                f << text;
            }
            return kOk;
        }
        if (*oracle)
            return cmd_oracle(out, op, oq);
        if (*qcheck) {
            const auto report = quantum_check(samples, seed, fault);
            out << report.to_text();
            if (!report.passed) {
                err << "quantum-check failed: worst residual " << format_real(report.worst()) << "\n";
                return kCheckFailed;
            }
            return kOk;
        }
        if (*disc) {
            if (!epsilon && !epsilon_frac)
                throw CLI::ValidationError("one of --epsilon or --epsilon-over-2pi is required");
            const double eps = epsilon ? *epsilon : *epsilon_frac * 2.0 * std::numbers::pi;
            const auto report = discontinuity_probe(RationalAngle{dp, dq}, eps, d_q_max);
            out << "source: " << fraction_text(dp, dq) << " " << to_string(report.source_verdict.verdict)
                << " margin " << format_real(report.source_verdict.margin) << "\n";
            if (!report.found) {
                err << "no Classical fraction with q <= " << d_q_max << " within epsilon/2pi = "
                    << format_real(eps / (2.0 * std::numbers::pi)) << "; closest Classical candidate at distance "
                    << format_real(report.distance) << "\n";
                return kLimit;
            }
            out << "neighbour: " << fraction_text(report.neighbour->p(), report.neighbour->q()) << " "
                << to_string(report.neighbour_verdict->verdict) << " margin "
                << format_real(report.neighbour_verdict->margin) << "\n";
            out << "distance (delta/2pi): " << format_real(report.distance) << "\n";
            return kOk;
        }
        if (*ks)
            return cmd_ks_color(out, vec_path, mode, count, normalize, vfrac);
    } catch (const CLI::Error &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceError &e) {
        err << "error: " << e.what() << "\n";
        return kLimit;
    } catch (const std::exception &e) {
        // Domain and precondition failures come from bad arguments.
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace contextant::cli
