#include "sectorinfer/genmodel/pretrain.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/genmodel/transformer.hpp"
#include "sectorinfer/genmodel/vocabulary.hpp"

#include <algorithm>
#include <cmath>

namespace sectorinfer::genmodel {

namespace {

/// Lengths of `k` non-empty segments summing to `total`.
std::vector<int> random_segments(int total, int k, std::mt19937_64& rng) {
    std::vector<int> cuts(static_cast<std::size_t>(total - 1));
    for (int i = 0; i < total - 1; ++i) cuts[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(static_cast<std::size_t>(k - 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> lengths;
    int prev = 0;
    for (const int c : cuts) {
        lengths.push_back(c - prev);
        prev = c;
    }
    lengths.push_back(total - prev);
    return lengths;
}

}  // namespace

void PretrainConfig::validate() const {
    const auto fail = [](const std::string& why) { throw Error(ErrorKind::Config, "BadPretrainConfig", why); };
    if (steps < 0) fail("steps must be >= 0");
    if (batch_size < 1) fail("batch_size must be >= 1");
    if (!(lr > 0.0)) fail("lr must be positive");
    if (warmup < 0) fail("warmup must be >= 0");
    if (!(noise_density > 0.0 && noise_density < 1.0)) fail("noise_density must be in (0, 1)");
    if (!(mean_span >= 1.0)) fail("mean_span must be >= 1");
}

CorruptedPair span_corrupt(const std::vector<int>& tokens, double noise_density, double mean_span,
                           std::mt19937_64& rng) {
    const int n = static_cast<int>(tokens.size());
    CorruptedPair out;
    if (n < 2) {
        out.input = tokens;
        return out;
    }
    const int noise = std::clamp(static_cast<int>(std::lround(n * noise_density)), 1, n - 1);
    int spans = std::max(1, static_cast<int>(std::lround(noise / mean_span)));
    spans = std::min({spans, noise, n - noise, Vocabulary::kNumSentinels});
    const auto noise_len = random_segments(noise, spans, rng);
    const auto keep_len = random_segments(n - noise, spans, rng);
    int pos = 0;
    for (int s = 0; s < spans; ++s) {
        for (int i = 0; i < keep_len[static_cast<std::size_t>(s)]; ++i) out.input.push_back(tokens[static_cast<std::size_t>(pos++)]);
        const int sentinel = Vocabulary::kFirstSentinel + s;
        out.input.push_back(sentinel);
        out.target.push_back(sentinel);
        for (int i = 0; i < noise_len[static_cast<std::size_t>(s)]; ++i) out.target.push_back(tokens[static_cast<std::size_t>(pos++)]);
    }
    return out;
}

PretrainResult pretrain(const std::vector<std::vector<int>>& corpus, const ModelShape& shape,
                        const PretrainConfig& config) {
    config.validate();
    PretrainResult result;
    std::mt19937_64 rng(config.seed);
    result.plm = init_plm(shape, rng());
    if (config.steps == 0) return result;

    std::vector<const std::vector<int>*> usable;
    for (const auto& seq : corpus) {
        if (seq.size() >= 2) usable.push_back(&seq);
    }
    if (usable.empty()) throw Error(ErrorKind::Data, "EmptyCorpus", "no sequence with two or more tokens");

    // The temporary head is trained alongside theta_1 and dropped afterwards.
    ModelParams params{shape, std::move(result.plm), init_head(shape, shape.vocab, rng()), {}};
    ModelParams grad = zeros_like(params);
    const GradMask mask{true, true, false};
    const double scale = 1.0 / static_cast<double>(config.batch_size);
    std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);

    for (std::int64_t step = 1; step <= config.steps; ++step) {
        for (auto* g : tensors(grad, mask)) g->setZero();
        double loss = 0.0;
        for (int b = 0; b < config.batch_size; ++b) {
            const auto& seq = *usable[pick(rng)];
            std::vector<int> clipped(seq.begin(), seq.begin() + std::min<std::ptrdiff_t>(
                                                                    static_cast<std::ptrdiff_t>(seq.size()), shape.max_input));
            auto pair = span_corrupt(clipped, config.noise_density, config.mean_span, rng);
            loss += accumulate_gradient(params, Paradigm::ModelTuning, {std::move(pair.input), std::move(pair.target), -1},
                                        mask, scale, grad);
        }
        loss *= scale;
        if (!std::isfinite(loss)) {
            throw Error(ErrorKind::Model, "Divergence", "non-finite pretraining loss at step " + std::to_string(step));
        }
        const double lr = step < config.warmup
                              ? config.lr * static_cast<double>(step) / static_cast<double>(config.warmup)
                              : config.lr;
        auto values = tensors(params, mask);
        const auto grads = tensors(grad, mask);
        for (std::size_t i = 0; i < values.size(); ++i) *values[i] -= lr * *grads[i];
        result.losses.push_back(loss);
    }
    result.plm = std::move(params.plm);
    return result;
}

}  // namespace sectorinfer::genmodel
