#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "embias/corpus.hpp"
#include "embias/embedding.hpp"
#include "embias/rng.hpp"
#include "embias/train_config.hpp"

namespace embias {

/// Probability that a token with corpus frequency f = count/total is
/// kept at threshold t: min(1, sqrt(t/f) + t/f). t = 0 keeps everything.
double subsample_keep_probability(std::int64_t count, std::int64_t total, double t);

/// Applies frequent-word subsampling to a stream. Out-of-vocabulary
/// tokens pass through untouched (the trainer drops them later anyway).
TokenStream subsample(const TokenStream& stream, const Vocabulary& vocab, double t,
                      std::uint64_t seed);

/// Walker alias sampler over unigram counts raised to 0.75, renormalized.
class NoiseSampler {
public:
    explicit NoiseSampler(const Vocabulary& vocab, double power = 0.75);

    std::int32_t sample(Rng& rng) const {
        const size_t slot = rng.index(threshold_.size());
        return rng.uniform01() < threshold_[slot]
                   ? static_cast<std::int32_t>(slot)
                   : alias_[slot];
    }

    /// Normalized target distribution, for distribution checks.
    const std::vector<double>& probabilities() const { return probabilities_; }

private:
    std::vector<double> threshold_;
    std::vector<std::int32_t> alias_;
    std::vector<double> probabilities_;
};

/// SGNS loss for one sample: -log s(c.o) - sum_k log s(-c.n_k).
/// Templated so tests can drive it in double against finite differences
/// while the training loop instantiates the identical math in float.
template <typename T>
double sgns_pair_loss(std::span<const T> center, std::span<const T> context,
                      const std::vector<std::vector<T>>& negatives);

struct SgnsGradients {
    std::vector<double> center;
    std::vector<double> context;
    std::vector<std::vector<double>> negatives;
};

/// Analytic gradients of sgns_pair_loss with respect to every input.
SgnsGradients sgns_pair_gradients(std::span<const double> center,
                                  std::span<const double> context,
                                  const std::vector<std::vector<double>>& negatives);

/// Trains skip-gram with negative sampling and returns the center
/// vectors. Single-worker runs are bit-reproducible for a fixed seed;
/// more workers shard documents and update weights Hogwild-style, which
/// trades reproducibility for speed. Throws DataError("no training
/// pairs") when nothing survives subsampling and vocabulary filtering.
EmbeddingSpace train_sgns(const TokenStream& stream, const Vocabulary& vocab,
                          const TrainConfig& config, int workers = 1,
                          std::string corpus_label = {});

}  // namespace embias
