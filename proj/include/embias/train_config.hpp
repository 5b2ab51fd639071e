#pragma once

#include <cstdint>

namespace embias {

/// Hyper-parameters for skip-gram-with-negative-sampling training.
/// Every field is recorded in the output's provenance metadata; bias
/// numbers are never reported without the configuration that made them.
struct TrainConfig {
    int dimension = 100;        // embedding dimension, >= 2
    int window = 5;             // max context offset, >= 1
    int negatives = 5;          // noise samples per positive, >= 1
    int epochs = 5;             // >= 1
    double initial_lr = 0.025;  // > 0; decays linearly to initial_lr/100
    double subsample_t = 1e-5;  // frequent-word threshold, >= 0 (0 = off)
    std::uint64_t seed = 1;

    /// Throws DataError naming the first field out of range.
    void validate() const;
};

}  // namespace embias
