#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sectorinfer::genmodel {

using Mat = Eigen::MatrixXd;

enum class Paradigm { Prompting, PromptTuning, ModelTuning, PromptPlusModelTuning, MWayClassification };

std::string_view to_string(Paradigm p);
/// Throws Error{Config, "UnknownParadigm"}.
Paradigm parse_paradigm(std::string_view s);

/// Soft prompts are prepended to the encoder input.
bool uses_prompts(Paradigm p);
/// The decoder is bypassed and the head maps pooled encoder states to M
/// class logits.
bool is_discriminative(Paradigm p);

/// Architecture hyperparameters. Defaults are the desk-scale reference model.
struct ModelShape {
    int vocab = 512;
    int d_model = 64;
    int heads = 4;
    int ffn = 128;
    int encoder_layers = 2;
    int decoder_layers = 2;
    int prompt_length = 20;
    /// Encoder inputs are truncated to this many tokens.
    int max_input = 96;
    /// Upper bound on generated tokens (excluding end-of-sequence).
    int max_output = 8;

    bool operator==(const ModelShape&) const = default;
};

struct AttentionParams {
    Mat wq, wk, wv, wo;  // d x d each
};

struct EncoderLayerParams {
    Mat norm1;  // 1 x d RMSNorm gain
    AttentionParams self_attn;
    Mat norm2;
    Mat w_in;   // d x ffn
    Mat w_out;  // ffn x d
};

struct DecoderLayerParams {
    Mat norm1;
    AttentionParams self_attn;  // causal
    Mat norm2;
    AttentionParams cross_attn;
    Mat norm3;
    Mat w_in;
    Mat w_out;
};

/// Backbone (theta_1): token embeddings, encoder and decoder stacks.
struct PlmParams {
    Mat embedding;  // V x d
    std::vector<EncoderLayerParams> encoder;
    Mat encoder_norm;
    std::vector<DecoderLayerParams> decoder;
    Mat decoder_norm;
};

/// Output head (theta_2): d x V for generation, d x M for M-way
/// classification.
struct HeadParams {
    Mat projection;
};

/// Soft prompt (theta_3): P x d learnable virtual-token embeddings.
struct SoftPrompt {
    Mat vectors;
};

struct ModelParams {
    ModelShape shape;
    PlmParams plm;
    HeadParams head;
    SoftPrompt prompt;
};

/// Which parameter groups a backward pass should produce gradients for.
struct GradMask {
    bool plm = false;
    bool head = false;
    bool prompt = false;

    bool any() const noexcept { return plm || head || prompt; }
};

// Every tensor of a group in a fixed canonical order (used for
// serialization, hashing and generic updates).
std::vector<Mat*> tensors(PlmParams& p);
std::vector<const Mat*> tensors(const PlmParams& p);
std::vector<Mat*> tensors(ModelParams& p, GradMask groups = {true, true, true});
std::vector<const Mat*> tensors(const ModelParams& p, GradMask groups = {true, true, true});

/// Same shapes, all zeros.
PlmParams zeros_like(const PlmParams& p);
ModelParams zeros_like(const ModelParams& p);

/// Random backbone: embeddings ~ N(0,1), gains 1, projections
/// ~ N(0, 1/fan_in).
PlmParams init_plm(const ModelShape& shape, std::uint64_t seed);

/// Random head (d x outputs, N(0, 1/d)) and soft prompt (P x d, N(0,1)).
/// `outputs` is V for generative paradigms and M for classification.
HeadParams init_head(const ModelShape& shape, int outputs, std::uint64_t seed);
SoftPrompt init_prompt(const ModelShape& shape, std::uint64_t seed);

/// Hex SHA-256 over the raw bytes of the listed tensors.
std::string hash_tensors(const std::vector<const Mat*>& ts);
std::string hash_group(const PlmParams& p);
std::string hash_group(const HeadParams& p);
std::string hash_group(const SoftPrompt& p);

bool all_finite(const std::vector<const Mat*>& ts);
std::size_t parameter_count(const std::vector<const Mat*>& ts);

/// Verifies tensor shapes against `shape`; throws Error{Model, "ShapeMismatch"}.
void check_shapes(const PlmParams& p, const ModelShape& shape);

}  // namespace sectorinfer::genmodel
