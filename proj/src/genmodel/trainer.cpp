#include "sectorinfer/genmodel/trainer.hpp"

#include "sectorinfer/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace sectorinfer::genmodel {

void TrainConfig::validate() const {
    const auto fail = [](const std::string& why) { throw Error(ErrorKind::Config, "BadTrainConfig", why); };
    if (total_steps < 0) fail("total_steps must be >= 0");
    if (t_prime < 0 || t_prime > total_steps) fail("t_prime must be in [0, total_steps]");
    if (!(eps1 > 0.0) || !(eps2 > 0.0)) fail("learning rates must be positive");
    if (warmup1 < 0 || warmup1 > t_prime) fail("warmup1 must be in [0, t_prime]");
    if (warmup2 < 0) fail("warmup2 must be >= 0");
    if (batch_size < 1) fail("batch_size must be >= 1");
    if (patience < 1) fail("patience must be >= 1");
    if (eval_every < 1) fail("eval_every must be >= 1");
    if (!(clip_norm >= 0.0)) fail("clip_norm must be >= 0");
}

double lr_at(std::int64_t step, const TrainConfig& config) {
    if (step <= config.t_prime) {
        if (step < config.warmup1) return config.eps1 * static_cast<double>(step) / static_cast<double>(config.warmup1);
        return config.eps1;
    }
    const std::int64_t s = step - config.t_prime;
    if (s < config.warmup2) return config.eps2 * static_cast<double>(s) / static_cast<double>(config.warmup2);
    return config.eps2;
}

TrainConfig paradigm_schedule(TrainConfig config) {
    switch (config.paradigm) {
        case Paradigm::Prompting:
        case Paradigm::PromptTuning:
            config.t_prime = config.total_steps;
            config.warmup1 = std::min(config.warmup1, config.t_prime);
            break;
        case Paradigm::ModelTuning:
        case Paradigm::MWayClassification:
            config.t_prime = 0;
            config.warmup1 = 0;
            break;
        case Paradigm::PromptPlusModelTuning: break;
    }
    return config;
}

GradMask update_groups(Paradigm paradigm, std::int64_t step, std::int64_t t_prime) {
    switch (paradigm) {
        case Paradigm::Prompting: return {false, true, false};
        case Paradigm::PromptTuning: return {false, true, true};
        case Paradigm::ModelTuning: return {true, true, false};
        case Paradigm::PromptPlusModelTuning: return {step > t_prime, true, true};
        case Paradigm::MWayClassification: return {true, true, false};
    }
    return {};
}

double accuracy(const ModelParams& params, Paradigm paradigm, std::span<const Example> examples, int max_len) {
    if (examples.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& ex : examples) {
        if (is_discriminative(paradigm)) {
            hits += classify(params, ex.input) == ex.label ? 1 : 0;
        } else {
            hits += generate(params, paradigm, ex.input, max_len) == ex.target ? 1 : 0;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(examples.size());
}

TrainResult train(ModelParams init, std::span<const Example> train_set, std::span<const Example> validation,
                  const TrainConfig& config, const StepObserver& observer) {
    config.validate();
    TrainResult result{std::move(init), {}};
    if (config.total_steps == 0) return result;
    if (train_set.empty() || validation.empty()) {
        throw Error(ErrorKind::Model, "EmptyDataset", "training and validation sets must be non-empty");
    }

    ModelParams& params = result.params;
    ModelParams best = params;
    ModelParams grad = zeros_like(params);
    auto& history = result.history;
    const Paradigm paradigm = config.paradigm;
    const int max_len = params.shape.max_output;

    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t cursor = 0;

    // Phase 1 of prompt + model tuning has a fixed length; early stopping
    // only counts evaluations once the backbone is unfrozen.
    const bool staged = paradigm == Paradigm::PromptPlusModelTuning && config.t_prime < config.total_steps;
    int since_best = 0;
    bool have_best = false;
    double loss_sum = 0.0;
    std::int64_t loss_steps = 0;
    const double scale = 1.0 / static_cast<double>(config.batch_size);

    for (std::int64_t step = 1; step <= config.total_steps; ++step) {
        const GradMask mask = update_groups(paradigm, step, config.t_prime);
        for (auto* g : tensors(grad, mask)) g->setZero();
        double loss = 0.0;
        for (int b = 0; b < config.batch_size; ++b) {
            if (cursor == order.size()) {
                std::shuffle(order.begin(), order.end(), rng);
                cursor = 0;
            }
            loss += accumulate_gradient(params, paradigm, train_set[order[cursor++]], mask, scale, grad);
        }
        loss *= scale;
        if (!std::isfinite(loss)) {
            throw Error(ErrorKind::Model, "Divergence", "non-finite loss at step " + std::to_string(step));
        }

        auto values = tensors(params, mask);
        const auto grads = tensors(grad, mask);
        double lr = lr_at(step, config);
        if (config.clip_norm > 0.0) {
            double sq = 0.0;
            for (const auto* g : grads) sq += g->squaredNorm();
            const double norm = std::sqrt(sq);
            if (norm > config.clip_norm) lr *= config.clip_norm / norm;
        }
        for (std::size_t i = 0; i < values.size(); ++i) *values[i] -= lr * *grads[i];
        if (observer) observer(step, params);

        loss_sum += loss;
        ++loss_steps;
        history.steps_run = step;
        if (step % config.eval_every != 0 && step != config.total_steps) continue;

        EvalPoint point{step, loss_sum / static_cast<double>(loss_steps), accuracy(params, paradigm, validation, max_len)};
        history.evals.push_back(point);
        loss_sum = 0.0;
        loss_steps = 0;
        if (!have_best || point.val_accuracy > history.best_accuracy) {
            have_best = true;
            best = params;
            history.best_accuracy = point.val_accuracy;
            history.best_step = step;
            since_best = 0;
        } else if (!staged || step > config.t_prime) {
            if (++since_best >= config.patience) {
                history.early_stopped = true;
                break;
            }
        }
    }
    params = std::move(best);
    return result;
}

ModelParams initialize_for_training(const PlmParams& plm, const ModelShape& shape, Paradigm paradigm, int classes,
                                    std::uint64_t seed) {
    check_shapes(plm, shape);
    std::mt19937_64 rng(seed);
    const std::uint64_t head_seed = rng();
    const std::uint64_t prompt_seed = rng();
    const int outputs = is_discriminative(paradigm) ? classes : shape.vocab;
    if (outputs < 1) throw Error(ErrorKind::Model, "NoClasses", "M-way head needs at least one class");
    return {shape, plm, init_head(shape, outputs, head_seed), init_prompt(shape, prompt_seed)};
}

}  // namespace sectorinfer::genmodel
