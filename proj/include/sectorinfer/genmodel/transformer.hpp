#pragma once

#include "sectorinfer/genmodel/params.hpp"

#include <span>
#include <vector>

namespace sectorinfer::genmodel {

/// One encoded training or evaluation pair. `target` holds the sector-name
/// tokens without end-of-sequence; `label` is the class index used by the
/// M-way classifier (-1 when unused).
struct Example {
    std::vector<int> input;
    std::vector<int> target;
    int label = -1;
};

struct ForwardResult {
    double loss = 0.0;
    /// One row per target position (plus end-of-sequence) for generative
    /// paradigms, a single row of M class logits for M-way.
    Mat logits;
};

/// Encoder-decoder forward pass. Soft prompts are prepended when the
/// paradigm uses them. Throws Error{Model, "TokenOutOfRange"} for ids >= V
/// and Error{Model, "EmptyTarget"} for an empty generative target.
ForwardResult forward(const ModelParams& params, Paradigm paradigm, const Example& ex);

/// Loss of one example; adds d(loss)/d(theta) * scale into `grad` for the
/// groups selected in `mask`. `grad` must have the shapes of `params`.
double accumulate_gradient(const ModelParams& params, Paradigm paradigm, const Example& ex, GradMask mask,
                           double scale, ModelParams& grad);

/// Mean loss over the batch and its gradient (zero for masked-out groups).
double batch_gradient(const ModelParams& params, Paradigm paradigm, std::span<const Example> batch, GradMask mask,
                      ModelParams& grad);

/// Mean loss over the batch.
double batch_loss(const ModelParams& params, Paradigm paradigm, std::span<const Example> batch);

/// Row-wise softmax.
Mat softmax_rows(const Mat& logits);

/// Greedy decoding until end-of-sequence or `max_len` tokens. The result
/// excludes end-of-sequence.
std::vector<int> generate(const ModelParams& params, Paradigm paradigm, std::span<const int> input, int max_len);

/// Arg-max class of the M-way head.
int classify(const ModelParams& params, std::span<const int> input);

}  // namespace sectorinfer::genmodel
