#include "embias/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <utility>

#include "embias/error.hpp"
#include "embias/rng.hpp"

namespace embias {

namespace {

/// Inversions of v, counted by bottom-up merge sort. Sorts v in place.
/// Equal elements are never counted: an inversion needs a strict drop.
std::int64_t count_inversions(std::vector<double>& v) {
    const size_t n = v.size();
    std::vector<double> buf(n);
    std::int64_t inversions = 0;
    for (size_t width = 1; width < n; width *= 2) {
        for (size_t lo = 0; lo + width < n; lo += 2 * width) {
            const size_t mid = lo + width;
            const size_t hi = std::min(n, mid + width);
            size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (v[b] < v[a]) {
                    buf[out++] = v[b++];
                    inversions += static_cast<std::int64_t>(mid - a);
                } else {
                    buf[out++] = v[a++];
                }
            }
            while (a < mid) buf[out++] = v[a++];
            while (b < hi) buf[out++] = v[b++];
            std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                      buf.begin() + static_cast<std::ptrdiff_t>(hi),
                      v.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }
    return inversions;
}

/// Sum over runs of equal keys of C(run, 2). `keys` must be grouped.
template <typename Equal>
std::int64_t tie_pairs(size_t n, Equal equal) {
    std::int64_t total = 0;
    size_t run = 1;
    for (size_t i = 1; i <= n; ++i) {
        if (i < n && equal(i - 1, i)) {
            ++run;
        } else {
            total += static_cast<std::int64_t>(run) * static_cast<std::int64_t>(run - 1) / 2;
            run = 1;
        }
    }
    return total;
}

double percentile(const std::vector<double>& sorted, double q) {
    const size_t m = sorted.size();
    if (m == 1) return sorted[0];
    const double h = q * static_cast<double>(m - 1);
    const size_t lo = static_cast<size_t>(h);
    if (lo + 1 >= m) return sorted[m - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

/// Term sets retained by a space, with row lookups done once so the
/// bootstrap loop never touches the string index.
struct RetainedSets {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<std::string> neutral;
};

RetainedSets retained_sets(const EmbeddingSpace& space, const TermPairSet& pairs,
                           const NeutralTermSet& neutral) {
    RetainedSets out;
    for (const auto& p : pairs.pairs)
        if (space.contains(p.first) && space.contains(p.second)) out.pairs.push_back(p);
    for (const auto& t : neutral.terms)
        if (space.contains(t)) out.neutral.push_back(t);
    return out;
}

/// Direct bias of one space under one resample of pair and term indices.
double resampled_direct_bias(const EmbeddingSpace& space,
                             const std::vector<std::pair<std::string, std::string>>& pairs,
                             const std::vector<std::string>& neutral,
                             const std::vector<size_t>& pair_draw,
                             const std::vector<size_t>& term_draw) {
    TermPairSet resampled;
    resampled.pairs.reserve(pair_draw.size());
    for (const size_t i : pair_draw) resampled.pairs.push_back(pairs[i]);
    const BiasDirection dir = bias_direction(space, resampled);

    const std::span<const double> g(dir.g);
    double sum = 0.0;
    for (const size_t i : term_draw)
        sum += std::fabs(cosine<float, double>(space.vec(neutral[i]), g));
    return sum / static_cast<double>(term_draw.size());
}

std::vector<size_t> draw_indices(Rng& rng, size_t n, size_t count) {
    std::vector<size_t> out(count);
    for (auto& i : out) i = rng.index(n);
    return out;
}

}  // namespace

double kendall_tau(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DataError("kendall_tau: length mismatch");
    const size_t n = xs.size();
    if (n < 2) throw DataError("kendall_tau: need at least 2 observations");

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (xs[a] != xs[b]) return xs[a] < xs[b];
        return ys[a] < ys[b];
    });

    const std::int64_t n0 = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
    const std::int64_t n1 =
        tie_pairs(n, [&](size_t a, size_t b) { return xs[order[a]] == xs[order[b]]; });
    const std::int64_t n3 = tie_pairs(n, [&](size_t a, size_t b) {
        return xs[order[a]] == xs[order[b]] && ys[order[a]] == ys[order[b]];
    });
    if (n1 == n0) throw DataError("kendall_tau: constant input");

    std::vector<double> y_by_x(n);
    for (size_t i = 0; i < n; ++i) y_by_x[i] = ys[order[i]];
    const std::int64_t swaps = count_inversions(y_by_x);  // also sorts y_by_x
    const std::int64_t n2 =
        tie_pairs(n, [&](size_t a, size_t b) { return y_by_x[a] == y_by_x[b]; });
    if (n2 == n0) throw DataError("kendall_tau: constant input");

    // Single sqrt of the product: for a perfect square (identical or
    // exactly reversed rankings) the quotient is then exactly +-1.
    const double numerator = static_cast<double>(n0 - n1 - n2 + n3 - 2 * swaps);
    const double denominator =
        std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
    const double tau = numerator / denominator;
    return tau > 1.0 ? 1.0 : (tau < -1.0 ? -1.0 : tau);
}

TauMatrix rank_stability_matrix(const std::vector<BiasReport>& reports) {
    if (reports.size() < 2)
        throw DataError("rank stability needs at least 2 reports");

    // word_biases maps are term-sorted, so intersecting the first
    // report's keys against the rest preserves order.
    std::vector<std::string> shared;
    for (const auto& [term, bias] : reports[0].word_biases) shared.push_back(term);
    for (size_t r = 1; r < reports.size(); ++r) {
        std::vector<std::string> next;
        for (const auto& term : shared)
            if (reports[r].word_biases.count(term)) next.push_back(term);
        shared = std::move(next);
    }
    if (shared.size() < 2)
        throw DataError("rank stability: fewer than 2 terms shared by all reports");

    std::vector<std::vector<double>> scores(reports.size());
    for (size_t r = 0; r < reports.size(); ++r) {
        scores[r].reserve(shared.size());
        for (const auto& term : shared)
            scores[r].push_back(reports[r].word_biases.at(term));
    }

    TauMatrix m;
    m.common_terms = shared.size();
    for (const auto& report : reports) m.labels.push_back(report.space_meta.label);
    const size_t k = reports.size();
    m.values.assign(k * k, 1.0);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
            const double tau = kendall_tau(scores[i], scores[j]);
            m.values[i * k + j] = tau;
            m.values[j * k + i] = tau;
        }
    }
    return m;
}

BiasDensity bias_density(const BiasReport& report) {
    if (report.word_biases.empty()) throw DataError("bias density needs at least 1 word bias");

    constexpr size_t kBins = 64;
    BiasDensity d;
    d.bin_edges.resize(kBins + 1);
    for (size_t i = 0; i <= kBins; ++i)
        d.bin_edges[i] = -1.0 + 2.0 * static_cast<double>(i) / kBins;
    d.masses.assign(kBins, 0.0);
    d.n = report.word_biases.size();

    std::vector<std::int64_t> counts(kBins, 0);
    for (const auto& [term, bias] : report.word_biases) {
        auto bin = static_cast<std::int64_t>((bias + 1.0) / 2.0 * kBins);
        if (bin < 0) bin = 0;
        if (bin >= static_cast<std::int64_t>(kBins)) bin = kBins - 1;  // bias = +1
        ++counts[static_cast<size_t>(bin)];
    }
    for (size_t i = 0; i < kBins; ++i)
        d.masses[i] = static_cast<double>(counts[i]) / static_cast<double>(d.n);
    return d;
}

SweepCurve dimension_sweep(const std::vector<const EmbeddingSpace*>& spaces,
                           const TermPairSet& pairs, const NeutralTermSet& neutral) {
    if (spaces.empty()) throw DataError("dimension sweep needs spaces");

    std::map<std::string, std::vector<SweepPoint>> groups;
    for (const EmbeddingSpace* space : spaces) {
        const BiasReport report = bias_profile(*space, pairs, neutral);
        std::string label = space->meta().corpus_label;
        if (label.empty()) label = "space";
        groups[label].push_back({label, space->dim(), report.direct_bias});
    }
    for (const auto& [label, points] : groups) {
        if (points.size() < 2)
            throw DataError("dimension sweep needs at least 2 spaces for corpus '" +
                            label + "'");
    }

    SweepCurve curve;
    for (auto& [label, points] : groups) {
        std::sort(points.begin(), points.end(), [](const SweepPoint& a, const SweepPoint& b) {
            if (a.dimension != b.dimension) return a.dimension < b.dimension;
            return a.direct_bias < b.direct_bias;
        });
        for (size_t i = 0; i < points.size(); ++i) {
            if (i > 0 && points[i].dimension == points[i - 1].dimension) {
                if (points[i].direct_bias != points[i - 1].direct_bias)
                    throw DataError("conflicting sweep points for '" + label +
                                    "' at dimension " + std::to_string(points[i].dimension));
                continue;  // same space listed twice
            }
            curve.points.push_back(points[i]);
        }
    }
    return curve;
}

BootstrapResult bootstrap_direct_bias(const EmbeddingSpace& space,
                                      const TermPairSet& pairs,
                                      const NeutralTermSet& neutral,
                                      size_t n_replicates, std::uint64_t seed) {
    if (n_replicates < 1) throw DataError("bootstrap needs at least 1 replicate");

    // Point estimate first; it also validates coverage of the term sets.
    const BiasReport point = bias_profile(space, pairs, neutral);
    const RetainedSets retained = retained_sets(space, pairs, neutral);
    if (retained.neutral.empty()) throw DataError("no neutral terms in vocabulary");

    BootstrapResult result;
    result.point_estimate = point.direct_bias;
    result.seed = seed;
    result.replicates.reserve(n_replicates);

    size_t skipped = 0;
    for (size_t r = 0; r < n_replicates; ++r) {
        Rng rng(derive_seed(seed, r));
        const auto pair_draw = draw_indices(rng, retained.pairs.size(), retained.pairs.size());
        const auto term_draw =
            draw_indices(rng, retained.neutral.size(), retained.neutral.size());
        try {
            result.replicates.push_back(resampled_direct_bias(
                space, retained.pairs, retained.neutral, pair_draw, term_draw));
        } catch (const DataError&) {
            ++skipped;  // degenerate resample, e.g. zero covariance
        }
    }
    if (skipped * 10 > n_replicates)
        throw DataError("bootstrap skipped " + std::to_string(skipped) + " of " +
                        std::to_string(n_replicates) + " replicates (over 10%)");

    result.n_replicates = result.replicates.size();
    std::vector<double> sorted = result.replicates;
    std::sort(sorted.begin(), sorted.end());
    result.ci_low = percentile(sorted, 0.025);
    result.ci_high = percentile(sorted, 0.975);
    result.policy = "pairs-as-units; percentile 2.5/97.5; requested=" +
                    std::to_string(n_replicates) + "; skipped=" + std::to_string(skipped);
    return result;
}

CompareResult compare_corpora(const EmbeddingSpace& space_a,
                              const EmbeddingSpace& space_b,
                              const TermPairSet& pairs, const NeutralTermSet& neutral,
                              size_t n_replicates, std::uint64_t seed, bool paired) {
    if (n_replicates < 1) throw DataError("compare needs at least 1 replicate");

    // Resampling runs over the terms both spaces retain, so one draw is
    // meaningful in either space.
    RetainedSets joint;
    for (const auto& p : pairs.pairs) {
        if (space_a.contains(p.first) && space_a.contains(p.second) &&
            space_b.contains(p.first) && space_b.contains(p.second))
            joint.pairs.push_back(p);
    }
    for (const auto& t : neutral.terms)
        if (space_a.contains(t) && space_b.contains(t)) joint.neutral.push_back(t);
    if (joint.pairs.empty()) throw DataError("no shared pairs in both vocabularies");
    if (joint.neutral.empty()) throw DataError("no shared neutral terms in both vocabularies");

    CompareResult result;
    result.paired = paired;
    result.seed = seed;
    result.deltas.reserve(n_replicates);
    {
        NeutralTermSet shared_neutral;
        shared_neutral.terms = joint.neutral;
        shared_neutral.label = neutral.label;
        TermPairSet shared_pairs;
        shared_pairs.pairs = joint.pairs;
        shared_pairs.label = pairs.label;
        const BiasDirection dir_a = bias_direction(space_a, shared_pairs);
        const BiasDirection dir_b = bias_direction(space_b, shared_pairs);
        result.direct_bias_a = direct_bias(space_a, dir_a, shared_neutral).first;
        result.direct_bias_b = direct_bias(space_b, dir_b, shared_neutral).first;
    }

    std::int64_t less = 0, greater = 0;
    for (size_t r = 0; r < n_replicates; ++r) {
        std::vector<size_t> pair_draw_a, term_draw_a, pair_draw_b, term_draw_b;
        if (paired) {
            Rng rng(derive_seed(seed, r));
            pair_draw_a = draw_indices(rng, joint.pairs.size(), joint.pairs.size());
            term_draw_a = draw_indices(rng, joint.neutral.size(), joint.neutral.size());
            pair_draw_b = pair_draw_a;
            term_draw_b = term_draw_a;
        } else {
            Rng rng_a(derive_seed(seed, 2 * r));
            Rng rng_b(derive_seed(seed, 2 * r + 1));
            pair_draw_a = draw_indices(rng_a, joint.pairs.size(), joint.pairs.size());
            term_draw_a = draw_indices(rng_a, joint.neutral.size(), joint.neutral.size());
            pair_draw_b = draw_indices(rng_b, joint.pairs.size(), joint.pairs.size());
            term_draw_b = draw_indices(rng_b, joint.neutral.size(), joint.neutral.size());
        }
        try {
            const double a = resampled_direct_bias(space_a, joint.pairs, joint.neutral,
                                                   pair_draw_a, term_draw_a);
            const double b = resampled_direct_bias(space_b, joint.pairs, joint.neutral,
                                                   pair_draw_b, term_draw_b);
            const double delta = a - b;
            result.deltas.push_back(delta);
            if (delta < 0.0) ++less;
            if (delta > 0.0) ++greater;
        } catch (const DataError&) {
            ++result.skipped;
        }
    }
    if (result.skipped * 10 > n_replicates)
        throw DataError("compare skipped " + std::to_string(result.skipped) + " of " +
                        std::to_string(n_replicates) + " replicates (over 10%)");
    result.n_replicates = result.deltas.size();
    if (result.n_replicates == 0) throw DataError("compare kept no replicates");

    // Ties count as one half. This form keeps p(A,B) + p(B,A) == 1 in
    // floating point: the halves are computed from the same integers.
    result.p_value = 0.5 + static_cast<double>(less - greater) /
                               (2.0 * static_cast<double>(result.n_replicates));
    return result;
}

}  // namespace embias
