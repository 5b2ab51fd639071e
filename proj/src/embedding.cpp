#include "embias/embedding.hpp"

#include <algorithm>
#include <set>

#include "embias/rng.hpp"

namespace embias {

EmbeddingSpace::EmbeddingSpace(std::vector<std::string> terms,
                               std::vector<float> matrix, int dim,
                               EmbeddingMeta meta)
    : terms_(std::move(terms)), data_(std::move(matrix)), dim_(dim),
      meta_(std::move(meta)) {
    if (dim_ < 2) throw DataError("embedding dimension must be >= 2");
    if (terms_.empty()) throw DataError("embedding space has no terms");
    if (data_.size() != terms_.size() * static_cast<size_t>(dim_)) {
        throw DataError("embedding matrix shape does not match vocabulary");
    }
    index_.reserve(terms_.size());
    for (size_t i = 0; i < terms_.size(); ++i) {
        auto [it, inserted] = index_.emplace(terms_[i], static_cast<std::int32_t>(i));
        if (!inserted) throw DataError("duplicate term in embedding space: " + terms_[i]);
    }
    for (size_t i = 0; i < terms_.size(); ++i) {
        bool all_zero = true;
        for (float x : vec(i)) {
            if (!std::isfinite(x)) {
                throw DataError("non-finite value in vector of term: " + terms_[i]);
            }
            if (x != 0.0f) all_zero = false;
        }
        if (all_zero) throw DataError("all-zero vector for term: " + terms_[i]);
    }
}

std::span<const float> EmbeddingSpace::vec(std::string_view term) const {
    const std::int32_t r = row(term);
    if (r < 0) throw DataError("term not in vocabulary: " + std::string(term));
    return vec(static_cast<size_t>(r));
}

std::string EmbeddingSpace::label() const {
    const std::string base = meta_.corpus_label.empty() ? "space" : meta_.corpus_label;
    return base + ":d" + std::to_string(dim_);
}

std::vector<std::string> common_vocabulary(
    const std::vector<const EmbeddingSpace*>& spaces) {
    if (spaces.empty()) throw DataError("common_vocabulary: no spaces given");

    std::vector<std::string> common = spaces.front()->terms();
    std::sort(common.begin(), common.end());
    for (size_t s = 1; s < spaces.size(); ++s) {
        std::vector<std::string> next;
        next.reserve(common.size());
        for (auto& term : common) {
            if (spaces[s]->contains(term)) next.push_back(std::move(term));
        }
        common = std::move(next);
    }
    if (common.empty()) throw DataError("no common vocabulary across spaces");
    return common;
}

WordPairSample sample_random_pairs(const std::vector<std::string>& terms,
                                   size_t n, std::uint64_t seed) {
    const size_t m = terms.size();
    if (m < 2) throw DataError("need at least 2 terms to sample pairs");
    const std::uint64_t total = static_cast<std::uint64_t>(m) * (m - 1) / 2;
    if (n == 0) throw DataError("pair sample size must be >= 1");
    if (n > total) {
        throw DataError("requested " + std::to_string(n) + " pairs but only " +
                        std::to_string(total) + " distinct pairs exist");
    }

    Rng rng(seed);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> picked;
    picked.reserve(n);

    if (total <= std::max<std::uint64_t>(4 * n, 1 << 16)) {
        // Dense request: enumerate every pair and take a partial shuffle.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
        all.reserve(total);
        for (std::uint32_t i = 0; i + 1 < m; ++i) {
            for (std::uint32_t j = i + 1; j < m; ++j) all.emplace_back(i, j);
        }
        for (size_t k = 0; k < n; ++k) {
            const size_t pick = k + rng.index(all.size() - k);
            std::swap(all[k], all[pick]);
            picked.push_back(all[k]);
        }
    } else {
        // Sparse request: rejection-sample distinct index pairs.
        std::set<std::uint64_t> seen;
        while (picked.size() < n) {
            std::uint32_t i = static_cast<std::uint32_t>(rng.index(m));
            std::uint32_t j = static_cast<std::uint32_t>(rng.index(m));
            if (i == j) continue;
            if (i > j) std::swap(i, j);
            const std::uint64_t key = static_cast<std::uint64_t>(i) * m + j;
            if (seen.insert(key).second) picked.emplace_back(i, j);
        }
    }

    WordPairSample sample;
    sample.seed = seed;
    sample.pairs.reserve(n);
    for (auto [i, j] : picked) {
        sample.pairs.emplace_back(terms[i], terms[j]);
    }
    return sample;
}

double average_abs_cosine(const EmbeddingSpace& space, const WordPairSample& sample) {
    if (sample.pairs.empty()) throw DataError("empty word-pair sample");
    std::vector<std::string> missing;
    for (const auto& [a, b] : sample.pairs) {
        if (!space.contains(a)) missing.push_back(a);
        if (!space.contains(b)) missing.push_back(b);
    }
    if (!missing.empty()) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        std::string msg = "terms missing from space:";
        for (const auto& t : missing) msg += " " + t;
        throw DataError(msg);
    }

    double sum = 0.0;
    for (const auto& [a, b] : sample.pairs) {
        sum += std::abs(cosine(space.vec(a), space.vec(b)));
    }
    return sum / static_cast<double>(sample.pairs.size());
}

}  // namespace embias
