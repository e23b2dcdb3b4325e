#include "sectorinfer/genmodel/transformer.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/genmodel/vocabulary.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sectorinfer::genmodel {

namespace {

using Vec = Eigen::VectorXd;

constexpr double kNormEps = 1e-6;
constexpr double kGeluA = 0.044715;

struct NormCache {
    Mat xhat;
    Vec inv_rms;
};

struct AttnCache {
    Mat xq, xkv, q, k, v, concat;
    std::vector<Mat> probs;
};

struct FfnCache {
    Mat x, h, g;
};

struct EncoderCache {
    NormCache n1, n2;
    AttnCache attn;
    FfnCache ffn;
};

struct DecoderCache {
    NormCache n1, n2, n3;
    AttnCache self_attn, cross_attn;
    FfnCache ffn;
};

struct EncoderTrace {
    int prompt_rows = 0;
    std::vector<int> tokens;
    std::vector<EncoderCache> layers;
    NormCache final_norm;
    Mat out;
};

struct DecoderTrace {
    std::vector<int> tokens;
    std::vector<DecoderCache> layers;
    NormCache final_norm;
    Mat out;
};

Mat positions(Eigen::Index n, Eigen::Index d) {
    Mat pe(n, d);
    for (Eigen::Index pos = 0; pos < n; ++pos) {
        for (Eigen::Index i = 0; i < d; i += 2) {
            const double angle =
                static_cast<double>(pos) / std::pow(10000.0, static_cast<double>(i) / static_cast<double>(d));
            pe(pos, i) = std::sin(angle);
            if (i + 1 < d) pe(pos, i + 1) = std::cos(angle);
        }
    }
    return pe;
}

Mat rms_forward(const Mat& x, const Mat& gain, NormCache& c) {
    const double d = static_cast<double>(x.cols());
    c.inv_rms = ((x.array().square().rowwise().sum() / d) + kNormEps).rsqrt().matrix();
    c.xhat = (x.array().colwise() * c.inv_rms.array()).matrix();
    return (c.xhat.array().rowwise() * gain.row(0).array()).matrix();
}

Mat rms_backward(const Mat& dy, const Mat& gain, const NormCache& c, Mat* dgain) {
    if (dgain) *dgain += (dy.array() * c.xhat.array()).colwise().sum().matrix();
    const Mat dxhat = (dy.array().rowwise() * gain.row(0).array()).matrix();
    const Vec m = (dxhat.array() * c.xhat.array()).rowwise().sum() / static_cast<double>(dy.cols());
    return ((dxhat.array() - c.xhat.array().colwise() * m.array()).colwise() * c.inv_rms.array()).matrix();
}

Mat attn_forward(const Mat& xq, const Mat& xkv, const AttentionParams& p, int heads, bool causal, AttnCache& c) {
    const Eigen::Index d = p.wq.cols();
    const Eigen::Index dh = d / heads;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
    c.xq = xq;
    c.xkv = xkv;
    c.q.noalias() = xq * p.wq;
    c.k.noalias() = xkv * p.wk;
    c.v.noalias() = xkv * p.wv;
    c.concat.resize(xq.rows(), d);
    c.probs.resize(static_cast<std::size_t>(heads));
    for (int h = 0; h < heads; ++h) {
        Mat s = (c.q.middleCols(h * dh, dh) * c.k.middleCols(h * dh, dh).transpose()) * scale;
        if (causal) {
            for (Eigen::Index i = 0; i < s.rows(); ++i) {
                for (Eigen::Index j = i + 1; j < s.cols(); ++j) s(i, j) = -std::numeric_limits<double>::infinity();
            }
        }
        auto& a = c.probs[static_cast<std::size_t>(h)];
        a = softmax_rows(s);
        c.concat.middleCols(h * dh, dh).noalias() = a * c.v.middleCols(h * dh, dh);
    }
    return c.concat * p.wo;
}

void attn_backward(const Mat& dout, const AttentionParams& p, int heads, const AttnCache& c, AttentionParams* dp,
                   Mat& dxq, Mat& dxkv) {
    const Eigen::Index d = p.wq.cols();
    const Eigen::Index dh = d / heads;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
    if (dp) dp->wo.noalias() += c.concat.transpose() * dout;
    const Mat dconcat = dout * p.wo.transpose();
    Mat dq(c.q.rows(), d);
    Mat dk(c.k.rows(), d);
    Mat dv(c.v.rows(), d);
    for (int h = 0; h < heads; ++h) {
        const auto& a = c.probs[static_cast<std::size_t>(h)];
        const auto doh = dconcat.middleCols(h * dh, dh);
        const Mat da = doh * c.v.middleCols(h * dh, dh).transpose();
        dv.middleCols(h * dh, dh).noalias() = a.transpose() * doh;
        const Vec rs = (da.array() * a.array()).rowwise().sum();
        const Mat ds = (a.array() * (da.array().colwise() - rs.array())).matrix() * scale;
        dq.middleCols(h * dh, dh).noalias() = ds * c.k.middleCols(h * dh, dh);
        dk.middleCols(h * dh, dh).noalias() = ds.transpose() * c.q.middleCols(h * dh, dh);
    }
    if (dp) {
        dp->wq.noalias() += c.xq.transpose() * dq;
        dp->wk.noalias() += c.xkv.transpose() * dk;
        dp->wv.noalias() += c.xkv.transpose() * dv;
    }
    dxq.noalias() = dq * p.wq.transpose();
    dxkv.noalias() = dk * p.wk.transpose();
    dxkv.noalias() += dv * p.wv.transpose();
}

Mat gelu(const Mat& x) {
    const double c = std::sqrt(2.0 / std::numbers::pi);
    return x.unaryExpr([c](double v) { return 0.5 * v * (1.0 + std::tanh(c * (v + kGeluA * v * v * v))); });
}

Mat gelu_grad(const Mat& x) {
    const double c = std::sqrt(2.0 / std::numbers::pi);
    return x.unaryExpr([c](double v) {
        const double t = std::tanh(c * (v + kGeluA * v * v * v));
        return 0.5 * (1.0 + t) + 0.5 * v * (1.0 - t * t) * c * (1.0 + 3.0 * kGeluA * v * v);
    });
}

Mat ffn_forward(const Mat& x, const Mat& w_in, const Mat& w_out, FfnCache& c) {
    c.x = x;
    c.h.noalias() = x * w_in;
    c.g = gelu(c.h);
    return c.g * w_out;
}

Mat ffn_backward(const Mat& dout, const Mat& w_in, const Mat& w_out, const FfnCache& c, Mat* dw_in, Mat* dw_out) {
    if (dw_out) dw_out->noalias() += c.g.transpose() * dout;
    const Mat dh = ((dout * w_out.transpose()).array() * gelu_grad(c.h).array()).matrix();
    if (dw_in) dw_in->noalias() += c.x.transpose() * dh;
    return dh * w_in.transpose();
}

void check_tokens(std::span<const int> ids, int vocab) {
    for (const int t : ids) {
        if (t < 0 || t >= vocab) {
            throw Error(ErrorKind::Model, "TokenOutOfRange",
                        std::to_string(t) + " not in [0, " + std::to_string(vocab) + ")");
        }
    }
}

Mat embed(const Mat& embedding, std::span<const int> tokens, Eigen::Index offset, Eigen::Index rows) {
    Mat x(rows, embedding.cols());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        x.row(offset + static_cast<Eigen::Index>(i)) = embedding.row(tokens[i]);
    }
    return x;
}

EncoderTrace encode(const ModelParams& params, Paradigm paradigm, std::span<const int> input) {
    const auto& plm = params.plm;
    const int heads = params.shape.heads;
    check_tokens(input, static_cast<int>(plm.embedding.rows()));
    EncoderTrace t;
    t.tokens.assign(input.begin(), input.end());
    t.prompt_rows = uses_prompts(paradigm) ? static_cast<int>(params.prompt.vectors.rows()) : 0;
    const Eigen::Index n = t.prompt_rows + static_cast<Eigen::Index>(input.size());
    if (n == 0) throw Error(ErrorKind::Model, "EmptyInput", "encoder input has no tokens");
    Mat x = embed(plm.embedding, input, t.prompt_rows, n);
    if (t.prompt_rows > 0) x.topRows(t.prompt_rows) = params.prompt.vectors;
    x += positions(n, x.cols());
    t.layers.resize(plm.encoder.size());
    for (std::size_t l = 0; l < plm.encoder.size(); ++l) {
        const auto& lp = plm.encoder[l];
        auto& c = t.layers[l];
        const Mat y1 = rms_forward(x, lp.norm1, c.n1);
        x += attn_forward(y1, y1, lp.self_attn, heads, false, c.attn);
        const Mat y2 = rms_forward(x, lp.norm2, c.n2);
        x += ffn_forward(y2, lp.w_in, lp.w_out, c.ffn);
    }
    t.out = rms_forward(x, plm.encoder_norm, t.final_norm);
    return t;
}

/// Returns d(loss)/d(input rows incl. prompt rows).
Mat encode_backward(const ModelParams& params, const EncoderTrace& t, const Mat& dout, GradMask mask,
                    ModelParams& grad) {
    const auto& plm = params.plm;
    const int heads = params.shape.heads;
    auto& gp = grad.plm;
    const bool w = mask.plm;
    Mat dx = rms_backward(dout, plm.encoder_norm, t.final_norm, w ? &gp.encoder_norm : nullptr);
    Mat dxq, dxkv;
    for (std::size_t l = plm.encoder.size(); l-- > 0;) {
        const auto& lp = plm.encoder[l];
        const auto& c = t.layers[l];
        auto* gl = w ? &gp.encoder[l] : nullptr;
        const Mat dy2 = ffn_backward(dx, lp.w_in, lp.w_out, c.ffn, gl ? &gl->w_in : nullptr, gl ? &gl->w_out : nullptr);
        dx += rms_backward(dy2, lp.norm2, c.n2, gl ? &gl->norm2 : nullptr);
        attn_backward(dx, lp.self_attn, heads, c.attn, gl ? &gl->self_attn : nullptr, dxq, dxkv);
        dx += rms_backward(dxq + dxkv, lp.norm1, c.n1, gl ? &gl->norm1 : nullptr);
    }
    if (w) {
        for (std::size_t i = 0; i < t.tokens.size(); ++i) {
            gp.embedding.row(t.tokens[i]) += dx.row(t.prompt_rows + static_cast<Eigen::Index>(i));
        }
    }
    if (mask.prompt && t.prompt_rows > 0) grad.prompt.vectors += dx.topRows(t.prompt_rows);
    return dx;
}

DecoderTrace decode(const ModelParams& params, const Mat& memory, std::span<const int> tokens) {
    const auto& plm = params.plm;
    const int heads = params.shape.heads;
    DecoderTrace t;
    t.tokens.assign(tokens.begin(), tokens.end());
    const auto n = static_cast<Eigen::Index>(tokens.size());
    Mat x = embed(plm.embedding, tokens, 0, n);
    x += positions(n, x.cols());
    t.layers.resize(plm.decoder.size());
    for (std::size_t l = 0; l < plm.decoder.size(); ++l) {
        const auto& lp = plm.decoder[l];
        auto& c = t.layers[l];
        const Mat y1 = rms_forward(x, lp.norm1, c.n1);
        x += attn_forward(y1, y1, lp.self_attn, heads, true, c.self_attn);
        const Mat y2 = rms_forward(x, lp.norm2, c.n2);
        x += attn_forward(y2, memory, lp.cross_attn, heads, false, c.cross_attn);
        const Mat y3 = rms_forward(x, lp.norm3, c.n3);
        x += ffn_forward(y3, lp.w_in, lp.w_out, c.ffn);
    }
    t.out = rms_forward(x, plm.decoder_norm, t.final_norm);
    return t;
}

/// Adds d(loss)/d(memory) into `dmemory`.
void decode_backward(const ModelParams& params, const DecoderTrace& t, const Mat& dout, GradMask mask,
                     ModelParams& grad, Mat& dmemory) {
    const auto& plm = params.plm;
    const int heads = params.shape.heads;
    auto& gp = grad.plm;
    const bool w = mask.plm;
    Mat dx = rms_backward(dout, plm.decoder_norm, t.final_norm, w ? &gp.decoder_norm : nullptr);
    Mat dxq, dxkv;
    for (std::size_t l = plm.decoder.size(); l-- > 0;) {
        const auto& lp = plm.decoder[l];
        const auto& c = t.layers[l];
        auto* gl = w ? &gp.decoder[l] : nullptr;
        const Mat dy3 = ffn_backward(dx, lp.w_in, lp.w_out, c.ffn, gl ? &gl->w_in : nullptr, gl ? &gl->w_out : nullptr);
        dx += rms_backward(dy3, lp.norm3, c.n3, gl ? &gl->norm3 : nullptr);
        attn_backward(dx, lp.cross_attn, heads, c.cross_attn, gl ? &gl->cross_attn : nullptr, dxq, dxkv);
        dmemory += dxkv;
        dx += rms_backward(dxq, lp.norm2, c.n2, gl ? &gl->norm2 : nullptr);
        attn_backward(dx, lp.self_attn, heads, c.self_attn, gl ? &gl->self_attn : nullptr, dxq, dxkv);
        dx += rms_backward(dxq + dxkv, lp.norm1, c.n1, gl ? &gl->norm1 : nullptr);
    }
    if (w) {
        for (std::size_t i = 0; i < t.tokens.size(); ++i) gp.embedding.row(t.tokens[i]) += dx.row(static_cast<Eigen::Index>(i));
    }
}

double cross_entropy(const Mat& logits, std::span<const int> targets) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const double mx = logits.row(i).maxCoeff();
        const double lse = mx + std::log((logits.row(i).array() - mx).exp().sum());
        total += lse - logits(i, targets[static_cast<std::size_t>(i)]);
    }
    return total / static_cast<double>(logits.rows());
}

struct Pass {
    EncoderTrace enc;
    DecoderTrace dec;
    Mat pooled;
    std::vector<int> targets;
    ForwardResult result;
};

Pass run_forward(const ModelParams& params, Paradigm paradigm, const Example& ex) {
    Pass p;
    p.enc = encode(params, paradigm, ex.input);
    if (is_discriminative(paradigm)) {
        const auto classes = static_cast<int>(params.head.projection.cols());
        if (ex.label < 0 || ex.label >= classes) {
            throw Error(ErrorKind::Model, "LabelOutOfRange", std::to_string(ex.label));
        }
        p.targets = {ex.label};
        p.pooled = p.enc.out.colwise().mean();
        p.result.logits = p.pooled * params.head.projection;
    } else {
        if (ex.target.empty()) throw Error(ErrorKind::Model, "EmptyTarget", "target sequence is empty");
        check_tokens(ex.target, static_cast<int>(params.plm.embedding.rows()));
        // Teacher forcing: decoder sees [pad, y0..yk-1] and predicts [y0..yk-1, eos].
        std::vector<int> dec_in{Vocabulary::kPad};
        dec_in.insert(dec_in.end(), ex.target.begin(), ex.target.end());
        p.targets = ex.target;
        p.targets.push_back(Vocabulary::kEos);
        p.dec = decode(params, p.enc.out, dec_in);
        p.result.logits = p.dec.out * params.head.projection;
    }
    p.result.loss = cross_entropy(p.result.logits, p.targets);
    return p;
}

}  // namespace

Mat softmax_rows(const Mat& logits) {
    Mat out(logits.rows(), logits.cols());
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const auto e = (logits.row(i).array() - logits.row(i).maxCoeff()).exp();
        out.row(i) = e / e.sum();
    }
    return out;
}

ForwardResult forward(const ModelParams& params, Paradigm paradigm, const Example& ex) {
    return run_forward(params, paradigm, ex).result;
}

double accumulate_gradient(const ModelParams& params, Paradigm paradigm, const Example& ex, GradMask mask,
                           double scale, ModelParams& grad) {
    Pass p = run_forward(params, paradigm, ex);
    if (!mask.any()) return p.result.loss;
    Mat dlogits = softmax_rows(p.result.logits);
    for (Eigen::Index i = 0; i < dlogits.rows(); ++i) dlogits(i, p.targets[static_cast<std::size_t>(i)]) -= 1.0;
    dlogits *= scale / static_cast<double>(dlogits.rows());

    const bool discriminative = is_discriminative(paradigm);
    const Mat& features = discriminative ? p.pooled : p.dec.out;
    if (mask.head) grad.head.projection.noalias() += features.transpose() * dlogits;
    const bool need_prompt = mask.prompt && p.enc.prompt_rows > 0;
    if (!mask.plm && !need_prompt) return p.result.loss;

    const Mat dfeatures = dlogits * params.head.projection.transpose();
    Mat dmemory;
    if (discriminative) {
        dmemory = Mat::Ones(p.enc.out.rows(), 1) * (dfeatures / static_cast<double>(p.enc.out.rows()));
    } else {
        dmemory = Mat::Zero(p.enc.out.rows(), p.enc.out.cols());
        decode_backward(params, p.dec, dfeatures, mask, grad, dmemory);
    }
    encode_backward(params, p.enc, dmemory, mask, grad);
    return p.result.loss;
}

double batch_gradient(const ModelParams& params, Paradigm paradigm, std::span<const Example> batch, GradMask mask,
                      ModelParams& grad) {
    if (batch.empty()) throw Error(ErrorKind::Model, "EmptyBatch", "no examples");
    for (auto* t : tensors(grad)) t->setZero();
    const double scale = 1.0 / static_cast<double>(batch.size());
    double total = 0.0;
    for (const auto& ex : batch) total += accumulate_gradient(params, paradigm, ex, mask, scale, grad);
    return total * scale;
}

double batch_loss(const ModelParams& params, Paradigm paradigm, std::span<const Example> batch) {
    if (batch.empty()) throw Error(ErrorKind::Model, "EmptyBatch", "no examples");
    double total = 0.0;
    for (const auto& ex : batch) total += forward(params, paradigm, ex).loss;
    return total / static_cast<double>(batch.size());
}

std::vector<int> generate(const ModelParams& params, Paradigm paradigm, std::span<const int> input, int max_len) {
    if (max_len < 1) throw Error(ErrorKind::Model, "BadLength", "max_len must be >= 1");
    const EncoderTrace enc = encode(params, paradigm, input);
    std::vector<int> dec_in{Vocabulary::kPad};
    std::vector<int> out;
    while (static_cast<int>(out.size()) < max_len) {
        const DecoderTrace dec = decode(params, enc.out, dec_in);
        const Mat logits = dec.out.bottomRows(1) * params.head.projection;
        Eigen::Index best = 0;
        logits.row(0).maxCoeff(&best);
        const int tok = static_cast<int>(best);
        if (tok == Vocabulary::kEos) break;
        out.push_back(tok);
        dec_in.push_back(tok);
    }
    return out;
}

int classify(const ModelParams& params, std::span<const int> input) {
    const EncoderTrace enc = encode(params, Paradigm::MWayClassification, input);
    const Mat logits = enc.out.colwise().mean() * params.head.projection;
    Eigen::Index best = 0;
    logits.row(0).maxCoeff(&best);
    return static_cast<int>(best);
}

}  // namespace sectorinfer::genmodel
