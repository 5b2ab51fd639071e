#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "embias/corpus.hpp"
#include "embias/error.hpp"
#include "embias/train_config.hpp"

namespace embias {

/// Provenance carried with every embedding space: where it came from and,
/// for trained spaces, the full configuration that produced it.
struct EmbeddingMeta {
    std::string corpus_label;  // groups spaces of one corpus across dimensions
    std::string source;        // "sgns" or the file it was loaded from
    std::optional<TrainConfig> train_config;
    std::vector<double> epoch_losses;  // mean pair loss per epoch, if trained
};

/// Dense term-by-dimension matrix (row i = vector of term i) stored as
/// float32, matching the on-disk formats bit for bit. Immutable after
/// construction; all geometry is read-only and safe to share.
class EmbeddingSpace {
public:
    /// Validates: d >= 2, matching sizes, unique terms, finite entries,
    /// no all-zero rows.
    EmbeddingSpace(std::vector<std::string> terms, std::vector<float> matrix,
                   int dim, EmbeddingMeta meta = {});

    int dim() const { return dim_; }
    size_t size() const { return terms_.size(); }
    const std::vector<std::string>& terms() const { return terms_; }
    const std::vector<float>& matrix() const { return data_; }
    const EmbeddingMeta& meta() const { return meta_; }
    EmbeddingMeta& meta() { return meta_; }

    /// Row of `term`, or -1 if absent.
    std::int32_t row(std::string_view term) const {
        auto it = index_.find(term);
        return it == index_.end() ? -1 : it->second;
    }
    bool contains(std::string_view term) const { return row(term) >= 0; }

    std::span<const float> vec(size_t row) const {
        return {data_.data() + row * static_cast<size_t>(dim_),
                static_cast<size_t>(dim_)};
    }
    /// Throws DataError naming the term if absent.
    std::span<const float> vec(std::string_view term) const;

    /// Identifier used in tau matrices and sweep curves: "<label>:d<dim>".
    std::string label() const;

private:
    std::vector<std::string> terms_;
    std::vector<float> data_;
    int dim_ = 0;
    EmbeddingMeta meta_;
    std::unordered_map<std::string, std::int32_t, TransparentStringHash,
                       std::equal_to<>>
        index_;
};

/// Cosine similarity with double accumulation, clamped to [-1, 1] against
/// rounding. Throws DataError("zero-norm vector") on zero input.
template <typename A, typename B>
double cosine(std::span<const A> u, std::span<const B> v) {
    if (u.size() != v.size()) throw DataError("cosine: dimension mismatch");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        const double a = static_cast<double>(u[i]);
        const double b = static_cast<double>(v[i]);
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if (nu == 0.0 || nv == 0.0) throw DataError("zero-norm vector");
    const double c = dot / (std::sqrt(nu) * std::sqrt(nv));
    return c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
}

inline double cosine(std::span<const float> u, std::span<const float> v) {
    return cosine<float, float>(u, v);
}

/// Sorted intersection of the vocabularies. Throws on empty input or
/// empty intersection.
std::vector<std::string> common_vocabulary(
    const std::vector<const EmbeddingSpace*>& spaces);

/// Distinct unordered term pairs, drawn uniformly from all C(n,2)
/// candidates. Deterministic given the seed.
struct WordPairSample {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::uint64_t seed = 0;
};

/// Throws when n exceeds C(|terms|, 2).
WordPairSample sample_random_pairs(const std::vector<std::string>& terms,
                                   size_t n, std::uint64_t seed);

/// Mean |cosine| over the sampled pairs; the concentration statistic that
/// confounds cross-dimension comparisons of cosine-based metrics.
/// Throws DataError listing any sampled term missing from the space.
double average_abs_cosine(const EmbeddingSpace& space, const WordPairSample& sample);

}  // namespace embias
