#pragma once

#include "sectorinfer/genmodel/params.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace sectorinfer::genmodel {

struct PretrainConfig {
    std::int64_t steps = 600;
    int batch_size = 8;
    double lr = 0.05;
    std::int64_t warmup = 50;
    std::uint64_t seed = 0;
    double noise_density = 0.15;
    double mean_span = 3.0;

    /// Throws Error{Config, "BadPretrainConfig"}.
    void validate() const;
};

struct PretrainResult {
    PlmParams plm;
    /// Mini-batch loss of every step.
    std::vector<double> losses;
};

struct CorruptedPair {
    std::vector<int> input;
    std::vector<int> target;
};

/// Span corruption: about `noise_density` of the tokens, grouped into spans
/// of mean length `mean_span` (at most kNumSentinels spans), are replaced in
/// the input by sentinel tokens; the target lists each sentinel followed by
/// the tokens it hides. Sequences shorter than two tokens come back with an
/// empty target.
CorruptedPair span_corrupt(const std::vector<int>& tokens, double noise_density, double mean_span,
                           std::mt19937_64& rng);

/// Trains theta_1 from a random initialisation (init_plm(shape, seed)) on
/// span corruption over `corpus` (token-id sequences), using a temporary
/// output head that is discarded. Deterministic given the config. Throws
/// Error{Data, "EmptyCorpus"} when no sequence has two or more tokens.
PretrainResult pretrain(const std::vector<std::vector<int>>& corpus, const ModelShape& shape,
                        const PretrainConfig& config);

}  // namespace sectorinfer::genmodel
