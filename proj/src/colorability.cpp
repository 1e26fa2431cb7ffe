#include "contextant/colorability.hpp"

#include "contextant/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace contextant {

VectorSet::VectorSet(std::vector<Direction> vectors) : vectors_{std::move(vectors)} {
    const std::size_t n = vectors_.size();
    adjacency_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::abs(vectors_[i].dot(vectors_[j]));
            if (d <= kOrthogonalityTolerance) {
                adjacency_[i][j] = adjacency_[j][i] = true;
                pairs_.push_back({i, j});
            } else if (d >= 1.0 - kOrthogonalityTolerance) {
                collinear_.push_back({i, j});
            }
        }
    for (const auto &[i, j] : pairs_)
        for (std::size_t k = j + 1; k < n; ++k)
            if (adjacency_[i][k] && adjacency_[j][k])
                triples_.push_back({i, j, k});
}

bool VectorSet::orthogonal(std::size_t i, std::size_t j) const { return adjacency_.at(i).at(j); }

bool is_valid_coloring(const VectorSet &set, const Coloring &c, ColoringMode mode) {
    if (c.values.size() != set.size())
        return false;
    for (int v : c.values)
        if (v != 1 && v != -1)
            return false;
    for (const auto &[i, j] : set.pairs())
        if (c.values[i] == -1 && c.values[j] == -1)
            return false;
    for (const auto &[i, j] : set.collinear())
        if (c.values[i] != c.values[j])
            return false;
    if (mode == ColoringMode::Strict)
        for (const auto &t : set.triples()) {
            const auto minus = std::count_if(t.begin(), t.end(), [&](std::size_t v) { return c.values[v] == -1; });
            if (minus != 1)
                return false;
        }
    return true;
}

namespace {

// Values: 0 unassigned, +1, -1.
class Search {
public:
    Search(const VectorSet &set, ColoringMode mode) : set_{set}, mode_{mode} {
        const std::size_t n = set.size();
        orth_.resize(n);
        same_.resize(n);
        triples_of_.resize(n);
        for (const auto &[i, j] : set.pairs()) {
            orth_[i].push_back(j);
            orth_[j].push_back(i);
        }
        for (const auto &[i, j] : set.collinear()) {
            same_[i].push_back(j);
            same_[j].push_back(i);
        }
        for (std::size_t t = 0; t < set.triples().size(); ++t)
            for (std::size_t v : set.triples()[t])
                triples_of_[v].push_back(t);
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return degree(a) > degree(b);
        });
    }

    // Assigns value to v and propagates; false on conflict.
    bool assign(std::vector<int> &vals, std::size_t v, int value) const {
        std::vector<std::pair<std::size_t, int>> queue{{v, value}};
        while (!queue.empty()) {
            const auto [u, x] = queue.back();
            queue.pop_back();
            if (vals[u] == x)
                continue;
            if (vals[u] != 0)
                return false;
            vals[u] = x;
            for (std::size_t w : same_[u])
                queue.push_back({w, x});
            if (x == -1)
                for (std::size_t w : orth_[u])
                    queue.push_back({w, 1});
            if (mode_ == ColoringMode::Strict && x == 1) {
                for (std::size_t t : triples_of_[u]) {
                    std::size_t open = 0, open_count = 0;
                    bool has_minus = false;
                    for (std::size_t w : set_.triples()[t]) {
                        if (vals[w] == -1)
                            has_minus = true;
                        else if (vals[w] == 0) {
                            open = w;
                            ++open_count;
                        }
                    }
                    if (has_minus)
                        continue;
                    if (open_count == 0)
                        return false;
                    if (open_count == 1)
                        queue.push_back({open, -1});
                }
            }
        }
        return true;
    }

    std::optional<std::size_t> next_unassigned(const std::vector<int> &vals) const {
        for (std::size_t v : order_)
            if (vals[v] == 0)
                return v;
        return std::nullopt;
    }

    // Depth-first enumeration; stops after the first solution unless counting.
    void enumerate(std::vector<int> vals, bool count_all) {
        if (stop_)
            return;
        const auto v = next_unassigned(vals);
        if (!v) {
            ++count_;
            if (!first_)
                first_ = Coloring{vals};
            if (!count_all)
                stop_ = true;
            return;
        }
        for (int value : {-1, 1}) {
            auto next = vals;
            if (assign(next, *v, value))
                enumerate(std::move(next), count_all);
            if (stop_)
                return;
        }
    }

    // Branch and bound for the relaxed maximum of triples carrying one -1.
    void maximize(std::vector<int> vals, const std::vector<std::size_t> &branch_vars, std::size_t depth) {
        std::size_t achieved = 0, open = 0;
        for (const auto &t : set_.triples()) {
            bool minus = false, can = false;
            for (std::size_t w : t) {
                minus = minus || vals[w] == -1;
                can = can || vals[w] == 0;
            }
            if (minus)
                ++achieved;
            else if (can)
                ++open;
        }
        if (static_cast<std::int64_t>(achieved + open) <= best_)
            return;
        while (depth < branch_vars.size() && vals[branch_vars[depth]] != 0)
            ++depth;
        if (depth == branch_vars.size()) {
            best_ = static_cast<std::int64_t>(achieved);
            return;
        }
        for (int value : {-1, 1}) {
            auto next = vals;
            if (assign(next, branch_vars[depth], value))
                maximize(std::move(next), branch_vars, depth + 1);
        }
    }

    std::uint64_t count() const { return count_; }
    const std::optional<Coloring> &first() const { return first_; }
    std::int64_t best() const { return best_; }
    const std::vector<std::size_t> &order() const { return order_; }
    bool in_triple(std::size_t v) const { return !triples_of_[v].empty(); }

private:
    std::size_t degree(std::size_t v) const { return 4 * triples_of_[v].size() + orth_[v].size() + same_[v].size(); }

    const VectorSet &set_;
    ColoringMode mode_;
    std::vector<std::vector<std::size_t>> orth_, same_, triples_of_;
    std::vector<std::size_t> order_;
    std::uint64_t count_ = 0;
    std::optional<Coloring> first_;
    bool stop_ = false;
    std::int64_t best_ = -1;
};

} // namespace

ColorabilityResult ks_colorability(const VectorSet &set, ColoringMode mode, bool count_solutions) {
    const bool count_all = count_solutions && set.size() <= kCountingMaxVectors;
    Search search{set, mode};
    search.enumerate(std::vector<int>(set.size(), 0), count_all);

    ColorabilityResult r;
    r.satisfiable = search.first().has_value();
    r.coloring = search.first();
    if (count_all)
        r.solution_count = search.count();
    if (r.coloring && !is_valid_coloring(set, *r.coloring, mode))
        throw std::logic_error("ks_colorability: search produced an invalid coloring");
    return r;
}

double triples_violation_fraction(const VectorSet &set) {
    if (set.triples().empty())
        throw DomainError("triples_violation_fraction: the set has no complete orthogonal triple");
    Search search{set, ColoringMode::Relaxed};
    // Vectors outside every triple stay free; +1 on them never conflicts.
    std::vector<std::size_t> branch_vars;
    for (std::size_t v : search.order())
        if (search.in_triple(v))
            branch_vars.push_back(v);
    search.maximize(std::vector<int>(set.size(), 0), branch_vars, 0);
    return static_cast<double>(search.best()) / static_cast<double>(set.triples().size());
}

} // namespace contextant
