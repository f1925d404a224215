#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "schoenberg/spline_operator.hpp"

namespace schoenberg {

enum class Smoothness { linear, smooth, lipschitz, holder };

std::string_view to_string(Smoothness tag);

/// Named closed-form function on [0, 1].
struct TestFunction {
    std::string name;
    RealFunction evaluator;
    Smoothness smoothness = Smoothness::smooth;

    double operator()(double x) const { return evaluator(x); }
};

/// linear, square, sin2pi, abs_half, sqrt_third, broken_line, runge.
const std::vector<TestFunction>& builtin_corpus();

/// Corpus member by name; throws std::invalid_argument listing valid names.
const TestFunction& find_function(std::string_view name);

}  // namespace schoenberg
