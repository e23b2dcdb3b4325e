#include "sectorinfer/genmodel/gradient_check.hpp"

#include "sectorinfer/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sectorinfer::genmodel {

namespace {

GroupCheck check_group(ModelParams& params, const ModelParams& grad, Paradigm paradigm, const Example& ex,
                       GradMask group, double h, std::size_t per_group, std::mt19937_64& rng) {
    auto values = tensors(params, group);
    const auto grads = tensors(grad, group);
    std::size_t total = 0;
    for (const auto* t : values) total += static_cast<std::size_t>(t->size());
    GroupCheck out;
    if (total == 0) return out;
    std::uniform_int_distribution<std::size_t> pick(0, total - 1);
    for (std::size_t s = 0; s < per_group; ++s) {
        std::size_t flat = pick(rng);
        std::size_t ti = 0;
        while (flat >= static_cast<std::size_t>(values[ti]->size())) flat -= static_cast<std::size_t>(values[ti++]->size());
        double& x = values[ti]->data()[flat];
        const double saved = x;
        x = saved + h;
        const double up = forward(params, paradigm, ex).loss;
        x = saved - h;
        const double down = forward(params, paradigm, ex).loss;
        x = saved;
        const double numeric = (up - down) / (2.0 * h);
        const double analytic = grads[ti]->data()[flat];
        out.max_relative_error = std::max(out.max_relative_error, relative_error(analytic, numeric));
        ++out.coordinates;
    }
    return out;
}

}  // namespace

double GradientCheckResult::max_relative_error() const {
    return std::max({plm.max_relative_error, head.max_relative_error, prompt.max_relative_error});
}

double relative_error(double analytic, double numeric, double floor) {
    const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
    return std::abs(analytic - numeric) / denom;
}

GradientCheckResult gradient_check(ModelParams& params, Paradigm paradigm, const Example& ex, double h,
                                   std::size_t per_group, std::uint64_t seed) {
    if (!(h > 0.0)) throw Error(ErrorKind::Model, "BadStep", "h must be positive");
    const GradMask mask{true, true, uses_prompts(paradigm)};
    ModelParams grad = zeros_like(params);
    accumulate_gradient(params, paradigm, ex, mask, 1.0, grad);
    std::mt19937_64 rng(seed);
    GradientCheckResult r;
    r.plm = check_group(params, grad, paradigm, ex, {true, false, false}, h, per_group, rng);
    r.head = check_group(params, grad, paradigm, ex, {false, true, false}, h, per_group, rng);
    if (mask.prompt) r.prompt = check_group(params, grad, paradigm, ex, {false, false, true}, h, per_group, rng);
    return r;
}

}  // namespace sectorinfer::genmodel
