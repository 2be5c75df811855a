// cwlidar is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "cwl/dual.hpp"
#include "cwl/errors.hpp"

namespace cwl {

/// Evaluates f once with seeded tangents and returns the full gradient.
/// f maps a span of Dual parameters to a Dual scalar; branches taken inside
/// f are fixed by the values at `at` (piecewise-smooth region).
template <typename F>
std::vector<double> Gradient(F &&f, std::span<const double> at) {
    int n = static_cast<int>(at.size());
    if (n > Dual::kMaxTangents)
        throw Error(ErrorCode::kUsage,
                    "gradient supports at most " + std::to_string(Dual::kMaxTangents) +
                        " parameters, got " + std::to_string(n));
    std::vector<Dual> x(at.size());
    for (int k = 0; k < n; ++k) x[k] = Dual::Variable(at[k], k);
    Dual y = f(std::span<const Dual>(x));
    if (!std::isfinite(y.value()))
        throw NonFiniteError(-1, "non-finite value in gradient evaluation");
    std::vector<double> g(at.size());
    for (int k = 0; k < n; ++k) {
        if (!std::isfinite(y.deriv(k)))
            throw NonFiniteError(k, "non-finite derivative for parameter " +
                                        std::to_string(k));
        g[k] = y.deriv(k);
    }
    return g;
}

} // namespace cwl
