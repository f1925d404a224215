#include "schoenberg/corpus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schoenberg {

std::string_view to_string(Smoothness tag) {
    switch (tag) {
        case Smoothness::linear:
            return "linear";
        case Smoothness::smooth:
            return "smooth";
        case Smoothness::lipschitz:
            return "lipschitz";
        case Smoothness::holder:
            return "holder";
    }
    return "smooth";
}

namespace {

// Continuous, breaks at 0.3 and 0.7 (off every dyadic mesh).
double broken_line(double x) {
    if (x < 0.3) {
        return 2.0 * x;
    }
    if (x < 0.7) {
        return 0.6 - (x - 0.3);
    }
    return 0.2 + (x - 0.7);
}

std::vector<TestFunction> make_corpus() {
    return {
        {"linear", [](double x) { return 2.0 * x - 0.5; }, Smoothness::linear},
        {"square", [](double x) { return x * x; }, Smoothness::smooth},
        {"sin2pi", [](double x) { return std::sin(2.0 * std::numbers::pi * x); }, Smoothness::smooth},
        {"abs_half", [](double x) { return std::abs(x - 0.5); }, Smoothness::lipschitz},
        {"sqrt_third", [](double x) { return std::sqrt(std::abs(x - 1.0 / 3.0)); }, Smoothness::holder},
        {"broken_line", broken_line, Smoothness::lipschitz},
        {"runge",
         [](double x) {
             const double u = x - 0.5;
             return 1.0 / (1.0 + 25.0 * u * u);
         },
         Smoothness::smooth},
    };
}

}  // namespace

const std::vector<TestFunction>& builtin_corpus() {
    static const std::vector<TestFunction> corpus = make_corpus();
    return corpus;
}

const TestFunction& find_function(std::string_view name) {
    for (const auto& f : builtin_corpus()) {
        if (f.name == name) {
            return f;
        }
    }
    std::string known;
    for (const auto& f : builtin_corpus()) {
        known += (known.empty() ? "" : ", ") + f.name;
    }
    throw std::invalid_argument("unknown function '" + std::string(name) + "' (known: " + known +
                                ")");
}

}  // namespace schoenberg
