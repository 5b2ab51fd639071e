#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "embias/embedding.hpp"

namespace embias {

/// Ordered (g1_term, g2_term) pairs defining a contrast axis, e.g.
/// he/she. Pairing is structural: the direction is induced by the
/// differences x_i - y_i, and resampling always keeps pairs intact.
struct TermPairSet {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string label;

    /// Throws unless every pair has two distinct terms and K >= 1.
    void validate() const;
};

/// Words presumed neutral with respect to the contrast (e.g. profession
/// names). Duplicates are removed on construction, keeping first-seen
/// order.
struct NeutralTermSet {
    std::vector<std::string> terms;
    std::string label;

    static NeutralTermSet from_terms(std::vector<std::string> terms,
                                     std::string label = {});
};

/// File format: one pair per line, two whitespace-separated words
/// ("he she"); '#' starts a comment.
TermPairSet load_term_pairs(const std::filesystem::path& path);
/// File format: one word per line; '#' starts a comment.
NeutralTermSet load_neutral_terms(const std::filesystem::path& path);

/// Contrast direction: unit vector g plus diagnostics. A low
/// explained-variance ratio flags an ill-defined direction (eigenvalue
/// tie); it is reported, never an error.
struct BiasDirection {
    std::vector<double> g;
    double explained_variance_ratio = 0.0;
    int pairs_used = 0;
    std::vector<std::pair<std::string, std::string>> dropped_pairs;
    // g is oriented so that G1 terms have non-negative mean bias.
    std::string orientation = "toward-G1";
};

/// Top principal component of the (centered) vectors by power iteration
/// on the implicit covariance: deterministic start (first vector
/// normalized, axis e1 fallback), convergence at 1e-10, 10k iteration
/// cap. Returns the unit component and top-eigenvalue/trace.
/// Throws DataError("degenerate difference set") on zero covariance.
std::pair<std::vector<double>, double> first_principal_component(
    const std::vector<std::vector<double>>& vectors);

/// Direction induced by the pairs that survive vocabulary lookup: first
/// principal component of {x_i - y_i} u {y_i - x_i}, then oriented
/// toward G1. Throws DataError("no pairs in vocabulary") if nothing
/// survives.
BiasDirection bias_direction(const EmbeddingSpace& space, const TermPairSet& pairs);

/// cosine(vector(term), g), in [-1, 1]. Throws on out-of-vocabulary terms.
double word_bias(const EmbeddingSpace& space, const BiasDirection& direction,
                 std::string_view term);

/// Mean |word_bias| over the neutral terms found in the vocabulary; the
/// denominator is the retained count. Returns the measure and the
/// dropped terms.
std::pair<double, std::vector<std::string>> direct_bias(
    const EmbeddingSpace& space, const BiasDirection& direction,
    const NeutralTermSet& neutral);

/// Space provenance snapshot embedded in every report.
struct SpaceMetaSnapshot {
    std::string label;
    std::string corpus_label;
    std::string source;
    int dimension = 0;
    size_t vocab_size = 0;

    static SpaceMetaSnapshot of(const EmbeddingSpace& space);
};

/// Full per-space bias measurement: direction, signed per-word biases,
/// direct bias, and coverage diagnostics.
struct BiasReport {
    BiasDirection direction;
    std::map<std::string, double> word_biases;  // signed, sorted by term
    double direct_bias = 0.0;
    std::vector<std::string> dropped_terms;
    SpaceMetaSnapshot space_meta;

    std::string to_json() const;
    static BiasReport from_json(const std::string& text);
    static BiasReport load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;
};

BiasReport bias_profile(const EmbeddingSpace& space, const TermPairSet& pairs,
                        const NeutralTermSet& neutral);

}  // namespace embias
