#pragma once

#include "sectorinfer/genmodel/transformer.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sectorinfer::genmodel {

/// Two-phase schedule: steps 1..t_prime train the head (and prompts), later
/// steps also unfreeze the backbone where the paradigm allows it.
struct TrainConfig {
    std::int64_t total_steps = 3000;
    std::int64_t t_prime = 300;
    double eps1 = 0.1;
    double eps2 = 0.01;
    std::int64_t warmup1 = 100;
    std::int64_t warmup2 = 150;
    int batch_size = 8;
    std::uint64_t seed = 0;
    Paradigm paradigm = Paradigm::PromptPlusModelTuning;
    /// Early stopping: evaluations without improvement before stopping.
    int patience = 5;
    std::int64_t eval_every = 100;
    /// Global gradient-norm clip over the updated groups; 0 disables.
    double clip_norm = 0.0;

    /// Throws Error{Config, "BadTrainConfig"}.
    void validate() const;
};

/// Linear warmup 0 -> eps1 over warmup1 steps, plateau to t_prime, then
/// linear warmup 0 -> eps2 over warmup2 steps from t_prime + 1, plateau.
double lr_at(std::int64_t step, const TrainConfig& config);

/// Adapts the two-phase schedule to single-phase paradigms: prompting and
/// prompt tuning run the whole budget in phase 1 (t_prime = T), model tuning
/// and M-way classification the whole budget in phase 2 (t_prime = 0).
TrainConfig paradigm_schedule(TrainConfig config);

/// Parameter groups the optimizer touches at `step`.
GradMask update_groups(Paradigm paradigm, std::int64_t step, std::int64_t t_prime);

struct EvalPoint {
    std::int64_t step = 0;
    /// Mean mini-batch loss since the previous evaluation.
    double train_loss = 0.0;
    double val_accuracy = 0.0;
};

struct TrainHistory {
    std::vector<EvalPoint> evals;
    std::int64_t steps_run = 0;
    std::int64_t best_step = 0;
    double best_accuracy = 0.0;
    bool early_stopped = false;
};

struct TrainResult {
    ModelParams params;
    TrainHistory history;
};

/// Called after every optimizer step with the updated parameters.
using StepObserver = std::function<void(std::int64_t step, const ModelParams& params)>;

/// Exact-match accuracy: generated tokens equal to the target tokens (M-way:
/// arg-max class equal to the label).
double accuracy(const ModelParams& params, Paradigm paradigm, std::span<const Example> examples, int max_len);

/// SGD with the two-phase schedule, periodic validation and early stopping.
/// `init` carries theta_1 (pretrained or from a previous checkpoint) and
/// already-initialised theta_2 / theta_3. Returns the parameters with the best
/// validation accuracy; with total_steps = 0 returns `init` and an empty
/// history. Throws Error{Model, "Divergence"} on a non-finite loss.
TrainResult train(ModelParams init, std::span<const Example> train_set, std::span<const Example> validation,
                  const TrainConfig& config, const StepObserver& observer = {});

/// theta_1 from `plm`, fresh random theta_2 (d x V or d x M) and theta_3.
ModelParams initialize_for_training(const PlmParams& plm, const ModelShape& shape, Paradigm paradigm, int classes,
                                    std::uint64_t seed);

}  // namespace sectorinfer::genmodel
