#pragma once

#include "sectorinfer/genmodel/transformer.hpp"

#include <cstdint>

namespace sectorinfer::genmodel {

struct GroupCheck {
    std::size_t coordinates = 0;
    double max_relative_error = 0.0;
};

struct GradientCheckResult {
    GroupCheck plm, head, prompt;

    double max_relative_error() const;
};

/// Relative error used by the check: |a - n| / max(|a|, |n|, floor). The
/// floor keeps coordinates with vanishing gradients from dominating through
/// round-off alone.
double relative_error(double analytic, double numeric, double floor = 1e-5);

/// Compares analytic gradients against central differences
/// (L(theta + h) - L(theta - h)) / 2h on `per_group` random coordinates of
/// each parameter group the paradigm trains. The parameters are restored
/// before returning.
GradientCheckResult gradient_check(ModelParams& params, Paradigm paradigm, const Example& ex, double h,
                                   std::size_t per_group, std::uint64_t seed);

}  // namespace sectorinfer::genmodel
