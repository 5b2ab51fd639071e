#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "embias/bias.hpp"
#include "embias/embedding.hpp"

namespace embias {

/// Kendall tau-b (tie-corrected) in [-1, 1], computed by merge-sort
/// inversion counting in O(n log n). Throws on length mismatch, fewer
/// than two observations, or a constant input (tau is undefined there).
double kendall_tau(std::span<const double> xs, std::span<const double> ys);

/// Pairwise rank agreement between bias measurements. Symmetric, unit
/// diagonal; common_terms is the size of the shared ranked term set.
struct TauMatrix {
    std::vector<std::string> labels;
    std::vector<double> values;  // row-major, labels.size() squared
    size_t common_terms = 0;

    double at(size_t i, size_t j) const { return values[i * labels.size() + j]; }
};

/// Tau over SIGNED word biases on the intersection of the reports'
/// retained terms. Throws when fewer than two reports are given or the
/// intersection has fewer than two terms.
TauMatrix rank_stability_matrix(const std::vector<BiasReport>& reports);

/// Fixed 64-bin histogram of signed word biases over [-1, 1],
/// normalized to total mass 1. Values exactly at +-1 land in the
/// boundary bins.
struct BiasDensity {
    std::vector<double> bin_edges;  // 65 edges, -1 to 1
    std::vector<double> masses;     // 64 bins
    size_t n = 0;
};

BiasDensity bias_density(const BiasReport& report);

struct SweepPoint {
    std::string corpus_label;
    int dimension = 0;
    double direct_bias = 0.0;
};

/// Direct bias as a function of dimension, grouped by corpus label and
/// sorted by dimension within each group.
struct SweepCurve {
    std::vector<SweepPoint> points;
};

/// Measures every space with the same term sets. Requires at least two
/// spaces per corpus label; spaces listed twice collapse into one point,
/// but two spaces that share a label and dimension while disagreeing on
/// the measure are an error.
SweepCurve dimension_sweep(const std::vector<const EmbeddingSpace*>& spaces,
                           const TermPairSet& pairs, const NeutralTermSet& neutral);

/// Bootstrap distribution of the direct-bias measure. Pairs are
/// resampled as units and neutral terms independently, both with
/// replacement from the sets retained by the space.
struct BootstrapResult {
    std::vector<double> replicates;  // kept replicates, in replicate order
    double point_estimate = 0.0;
    double ci_low = 0.0;   // 2.5th percentile
    double ci_high = 0.0;  // 97.5th percentile
    size_t n_replicates = 0;
    std::uint64_t seed = 0;
    std::string policy;
};

/// Replicate r draws from derive_seed(seed, r), so the result is
/// reproducible and independent of execution order. Replicates whose
/// resampled pairs give a degenerate direction are skipped and counted
/// in the policy descriptor; more than 10% skipped is an error.
BootstrapResult bootstrap_direct_bias(const EmbeddingSpace& space,
                                      const TermPairSet& pairs,
                                      const NeutralTermSet& neutral,
                                      size_t n_replicates, std::uint64_t seed);

/// Paired-bootstrap comparison of two spaces measured with shared term
/// files. p_value is one-sided evidence that A is more biased than B:
/// the fraction of replicates with delta = bias_a - bias_b <= 0, ties
/// counted as one half, so p(A,B) + p(B,A) = 1 exactly.
struct CompareResult {
    double p_value = 0.5;
    std::vector<double> deltas;  // kept replicate deltas, replicate order
    double direct_bias_a = 0.0;
    double direct_bias_b = 0.0;
    size_t n_replicates = 0;
    size_t skipped = 0;
    bool paired = true;
    std::uint64_t seed = 0;
};

/// Paired mode applies each replicate's resampled term indices to both
/// spaces, isolating the corpus effect from term-sampling noise;
/// unpaired mode draws the two resamples independently.
CompareResult compare_corpora(const EmbeddingSpace& space_a,
                              const EmbeddingSpace& space_b,
                              const TermPairSet& pairs, const NeutralTermSet& neutral,
                              size_t n_replicates, std::uint64_t seed,
                              bool paired = true);

}  // namespace embias
