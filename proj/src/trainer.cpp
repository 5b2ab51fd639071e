#include "embias/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <thread>
#include <utility>

#include "embias/error.hpp"

namespace embias {

namespace {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

/// log(sigmoid(x)) without overflow on either tail.
double log_sigmoid(double x) {
    if (x >= 0.0) return -std::log1p(std::exp(-x));
    return x - std::log1p(std::exp(x));
}

}  // namespace

void TrainConfig::validate() const {
    if (dimension < 2) throw DataError("dimension must be >= 2");
    if (window < 1) throw DataError("window must be >= 1");
    if (negatives < 1) throw DataError("negatives must be >= 1");
    if (epochs < 1) throw DataError("epochs must be >= 1");
    if (!(initial_lr > 0.0)) throw DataError("initial_lr must be > 0");
    if (!(subsample_t >= 0.0)) throw DataError("subsample_t must be >= 0");
}

double subsample_keep_probability(std::int64_t count, std::int64_t total, double t) {
    if (t <= 0.0) return 1.0;
    if (count <= 0 || total <= 0) return 1.0;
    const double f = static_cast<double>(count) / static_cast<double>(total);
    const double p = std::sqrt(t / f) + t / f;
    return p < 1.0 ? p : 1.0;
}

TokenStream subsample(const TokenStream& stream, const Vocabulary& vocab, double t,
                      std::uint64_t seed) {
    TokenStream out;
    out.documents.reserve(stream.documents.size());
    Rng rng(seed);
    const std::int64_t total = vocab.total_count();
    for (const auto& doc : stream.documents) {
        std::vector<std::string> kept;
        kept.reserve(doc.size());
        for (const auto& token : doc) {
            const std::int32_t id = vocab.id(token);
            if (id >= 0) {
                const double p = subsample_keep_probability(vocab.count(id), total, t);
                if (p < 1.0 && rng.uniform01() >= p) continue;
            }
            kept.push_back(token);
        }
        out.documents.push_back(std::move(kept));
    }
    return out;
}

NoiseSampler::NoiseSampler(const Vocabulary& vocab, double power) {
    const size_t n = vocab.size();
    if (n == 0) throw DataError("noise distribution needs a non-empty vocabulary");
    probabilities_.resize(n);
    double norm = 0.0;
    for (size_t i = 0; i < n; ++i) {
        probabilities_[i] = std::pow(static_cast<double>(vocab.count(i)), power);
        norm += probabilities_[i];
    }
    if (!(norm > 0.0)) throw DataError("noise distribution has zero mass");
    for (auto& p : probabilities_) p /= norm;

    // Vose alias construction: every slot ends up with a threshold and a
    // fallback id, so sampling is one index draw plus one uniform.
    threshold_.assign(n, 1.0);
    alias_.resize(n);
    std::vector<double> scaled(n);
    std::vector<std::int32_t> small, large;
    for (size_t i = 0; i < n; ++i) {
        scaled[i] = probabilities_[i] * static_cast<double>(n);
        alias_[i] = static_cast<std::int32_t>(i);
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::int32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        const std::int32_t s = small.back();
        const std::int32_t l = large.back();
        small.pop_back();
        threshold_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers are 1.0 up to rounding; pin them so they never alias.
    for (const auto stack : {&small, &large})
        for (const std::int32_t i : *stack) threshold_[i] = 1.0;
}

template <typename T>
double sgns_pair_loss(std::span<const T> center, std::span<const T> context,
                      const std::vector<std::vector<T>>& negatives) {
    const size_t d = center.size();
    double dot = 0.0;
    for (size_t t = 0; t < d; ++t)
        dot += static_cast<double>(center[t]) * static_cast<double>(context[t]);
    double loss = -log_sigmoid(dot);
    for (const auto& neg : negatives) {
        double nd = 0.0;
        for (size_t t = 0; t < d; ++t)
            nd += static_cast<double>(center[t]) * static_cast<double>(neg[t]);
        loss -= log_sigmoid(-nd);
    }
    return loss;
}

template double sgns_pair_loss<float>(std::span<const float>, std::span<const float>,
                                      const std::vector<std::vector<float>>&);
template double sgns_pair_loss<double>(std::span<const double>, std::span<const double>,
                                       const std::vector<std::vector<double>>&);

SgnsGradients sgns_pair_gradients(std::span<const double> center,
                                  std::span<const double> context,
                                  const std::vector<std::vector<double>>& negatives) {
    const size_t d = center.size();
    SgnsGradients g;
    g.center.assign(d, 0.0);
    g.context.assign(d, 0.0);
    g.negatives.assign(negatives.size(), std::vector<double>(d, 0.0));

    double dot = 0.0;
    for (size_t t = 0; t < d; ++t) dot += center[t] * context[t];
    const double pos = sigmoid(dot) - 1.0;  // dL/d(c.o)
    for (size_t t = 0; t < d; ++t) {
        g.center[t] += pos * context[t];
        g.context[t] = pos * center[t];
    }
    for (size_t k = 0; k < negatives.size(); ++k) {
        double nd = 0.0;
        for (size_t t = 0; t < d; ++t) nd += center[t] * negatives[k][t];
        const double neg = sigmoid(nd);  // dL/d(c.n_k)
        for (size_t t = 0; t < d; ++t) {
            g.center[t] += neg * negatives[k][t];
            g.negatives[k][t] = neg * center[t];
        }
    }
    return g;
}

EmbeddingSpace train_sgns(const TokenStream& stream, const Vocabulary& vocab,
                          const TrainConfig& config, int workers,
                          std::string corpus_label) {
    config.validate();
    if (workers < 1 || workers > 1024) throw DataError("workers must be in [1, 1024]");

    const size_t n_vocab = vocab.size();
    const int d = config.dimension;

    // Documents as id sequences; out-of-vocabulary tokens vanish here so
    // windows tighten around retained words, as in the reference trainer.
    std::vector<std::vector<std::int32_t>> docs;
    docs.reserve(stream.documents.size());
    for (const auto& doc : stream.documents) {
        std::vector<std::int32_t> ids;
        ids.reserve(doc.size());
        for (const auto& token : doc) {
            const std::int32_t id = vocab.id(token);
            if (id >= 0) ids.push_back(id);
        }
        if (!ids.empty()) docs.push_back(std::move(ids));
    }

    std::vector<double> keep(n_vocab, 1.0);
    for (size_t i = 0; i < n_vocab; ++i)
        keep[i] =
            subsample_keep_probability(vocab.count(i), vocab.total_count(), config.subsample_t);

    // lr decays over the expected pair count: kept tokens times mean pairs
    // per token, 2 * E[window draw] = window + 1. The schedule only needs
    // the right scale, exactness does not matter.
    double expected_kept = 0.0;
    for (const auto& ids : docs)
        for (const std::int32_t id : ids) expected_kept += keep[id];
    const double scheduled_pairs = std::max(
        1.0, static_cast<double>(config.epochs) * expected_kept * (config.window + 1));

    std::vector<float> syn0(n_vocab * static_cast<size_t>(d));
    std::vector<float> syn1(n_vocab * static_cast<size_t>(d), 0.0f);
    Rng init_rng(derive_seed(config.seed, 0));
    for (auto& w : syn0)
        w = static_cast<float>((init_rng.uniform01() - 0.5) / d);

    const NoiseSampler noise(vocab);
    std::atomic<std::int64_t> pairs_done{0};

    auto run_worker = [&](int epoch, int worker, int n_workers, double& loss_sum,
                          std::int64_t& loss_count) {
        Rng rng(derive_seed(config.seed,
                            1 + static_cast<std::uint64_t>(epoch) * 4096 +
                                static_cast<std::uint64_t>(worker)));
        std::vector<std::int32_t> sent;
        std::vector<float> accum(static_cast<size_t>(d));
        float* const w0 = syn0.data();
        float* const w1 = syn1.data();
        double lsum = 0.0;
        std::int64_t lcount = 0;

        for (size_t di = static_cast<size_t>(worker); di < docs.size();
             di += static_cast<size_t>(n_workers)) {
            sent.clear();
            for (const std::int32_t id : docs[di]) {
                if (keep[id] >= 1.0 || rng.uniform01() < keep[id]) sent.push_back(id);
            }
            for (size_t i = 0; i < sent.size(); ++i) {
                const size_t b = 1 + rng.index(static_cast<size_t>(config.window));
                const size_t lo = i > b ? i - b : 0;
                const size_t hi = std::min(sent.size(), i + b + 1);
                float* const vc = w0 + static_cast<size_t>(sent[i]) * d;
                for (size_t j = lo; j < hi; ++j) {
                    if (j == i) continue;
                    const std::int32_t out = sent[j];
                    const double progress =
                        std::min(1.0, static_cast<double>(pairs_done.load(
                                          std::memory_order_relaxed)) /
                                          scheduled_pairs);
                    const double lr = config.initial_lr * (1.0 - 0.99 * progress);
                    std::fill(accum.begin(), accum.end(), 0.0f);

                    for (int k = 0; k <= config.negatives; ++k) {
                        std::int32_t target;
                        double label;
                        if (k == 0) {
                            target = out;
                            label = 1.0;
                        } else {
                            target = noise.sample(rng);
                            if (target == out) continue;
                            label = 0.0;
                        }
                        float* const vt = w1 + static_cast<size_t>(target) * d;
                        double s = 0.0;
                        for (int t = 0; t < d; ++t)
                            s += static_cast<double>(vc[t]) * vt[t];
                        lsum += label > 0.5 ? -log_sigmoid(s) : -log_sigmoid(-s);
                        const float g = static_cast<float>((label - sigmoid(s)) * lr);
                        for (int t = 0; t < d; ++t) accum[t] += g * vt[t];
                        for (int t = 0; t < d; ++t) vt[t] += g * vc[t];
                    }
                    for (int t = 0; t < d; ++t) vc[t] += accum[t];
                    pairs_done.fetch_add(1, std::memory_order_relaxed);
                    ++lcount;
                }
            }
        }
        loss_sum = lsum;
        loss_count = lcount;
    };

    std::vector<double> epoch_losses;
    epoch_losses.reserve(static_cast<size_t>(config.epochs));
    std::int64_t total_pairs = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::vector<double> sums(static_cast<size_t>(workers), 0.0);
        std::vector<std::int64_t> counts(static_cast<size_t>(workers), 0);
        if (workers == 1) {
            run_worker(epoch, 0, 1, sums[0], counts[0]);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<size_t>(workers));
            for (int w = 0; w < workers; ++w)
                pool.emplace_back(run_worker, epoch, w, workers, std::ref(sums[w]),
                                  std::ref(counts[w]));
            for (auto& th : pool) th.join();
        }
        double sum = 0.0;
        std::int64_t count = 0;
        for (int w = 0; w < workers; ++w) {
            sum += sums[static_cast<size_t>(w)];
            count += counts[static_cast<size_t>(w)];
        }
        epoch_losses.push_back(count > 0 ? sum / static_cast<double>(count) : 0.0);
        total_pairs += count;
    }
    if (total_pairs == 0) throw DataError("no training pairs");

    EmbeddingMeta meta;
    meta.corpus_label = std::move(corpus_label);
    meta.source = "sgns";
    meta.train_config = config;
    meta.epoch_losses = std::move(epoch_losses);
    return EmbeddingSpace(vocab.terms(), std::move(syn0), d, std::move(meta));
}

}  // namespace embias
