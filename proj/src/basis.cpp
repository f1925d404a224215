#include "schoenberg/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace schoenberg {

namespace {

void check_unit_interval(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("evaluation point " + std::to_string(x) + " outside [0, 1]");
    }
}

void check_degree(int l) {
    if (l < 0) {
        throw std::domain_error("negative spline degree " + std::to_string(l));
    }
}

void check_basis_index(const UniformMesh& mesh, int l, int j) {
    if (j < -l || j > mesh.segments() - 1) {
        throw std::domain_error("basis index " + std::to_string(j) + " outside [" +
                                std::to_string(-l) + ", " +
                                std::to_string(mesh.segments() - 1) + "]");
    }
}

// (t - x)_+^p and its derivatives in t, with (0)_+^0 = 0 so that the
// resulting B-splines are right-continuous.
double truncated_power_derivative(double t, double x, int p, int r) {
    if (r > p || t <= x) {
        return 0.0;
    }
    double falling = 1.0;
    for (int i = 0; i < r; ++i) {
        falling *= static_cast<double>(p - i);
    }
    return falling * std::pow(t - x, p - r);
}

}  // namespace

UniformMesh::UniformMesh(int n, int k) : n_(n), k_(k), h_(0.0) {
    if (n < 1) {
        throw std::domain_error("mesh needs n >= 1 segments, got " + std::to_string(n));
    }
    if (k < 1) {
        throw std::domain_error("mesh needs degree k >= 1, got " + std::to_string(k));
    }
    h_ = 1.0 / static_cast<double>(n);
    knots_.reserve(static_cast<std::size_t>(n + 2 * k + 1));
    for (int i = -k; i <= n + k; ++i) {
        knots_.push_back(knot(i));
    }
}

double UniformMesh::knot(int i) const noexcept {
    if (i <= 0) {
        return 0.0;
    }
    if (i >= n_) {
        return 1.0;
    }
    return static_cast<double>(i) / static_cast<double>(n_);
}

int UniformMesh::span_index(double x) const {
    check_unit_interval(x);
    if (x >= 1.0) {
        return n_ - 1;
    }
    int mu = std::min(static_cast<int>(x * n_), n_ - 1);
    // x * n can round across a knot; settle against the stored values.
    while (mu > 0 && x < knot(mu)) {
        --mu;
    }
    while (mu < n_ - 1 && x >= knot(mu + 1)) {
        ++mu;
    }
    return mu;
}

UniformMesh make_mesh(int n, int k) { return UniformMesh(n, k); }

GrevilleNodes::GrevilleNodes(const UniformMesh& mesh, int order)
    : order_(order), last_(mesh.segments() - 1) {
    if (order < 1 || order > mesh.degree() + 2) {
        throw std::domain_error("Greville order " + std::to_string(order) + " outside [1, " +
                                std::to_string(mesh.degree() + 2) + "]");
    }
    nodes_.reserve(static_cast<std::size_t>(mesh.segments() + order));
    for (int j = -order; j <= last_; ++j) {
        double sum = 0.0;
        for (int i = j + 1; i <= j + order; ++i) {
            sum += mesh.knot(i);
        }
        nodes_.push_back(sum / order);
    }
}

double GrevilleNodes::operator[](int j) const {
    if (j < -order_ || j > last_) {
        throw std::out_of_range("Greville index " + std::to_string(j) + " out of range");
    }
    return nodes_[static_cast<std::size_t>(j + order_)];
}

GrevilleNodes greville_nodes(const UniformMesh& mesh, int l) { return GrevilleNodes(mesh, l); }

BasisSpan basis_span(const UniformMesh& mesh, int l, double x) {
    check_degree(l);
    const int mu = mesh.span_index(x);

    BasisSpan out;
    out.first = mu - l;
    out.values.assign(static_cast<std::size_t>(l + 1), 0.0);
    auto& b = out.values;
    std::vector<double> left(static_cast<std::size_t>(l + 1));
    std::vector<double> right(static_cast<std::size_t>(l + 1));

    b[0] = 1.0;
    for (int r = 1; r <= l; ++r) {
        left[r] = x - mesh.knot(mu + 1 - r);
        right[r] = mesh.knot(mu + r) - x;
        double saved = 0.0;
        for (int s = 0; s < r; ++s) {
            // Multiply before dividing so that x / x stays exactly 1 at the ends.
            const double denom = right[s + 1] + left[r - s];
            const double prev = b[s];
            b[s] = saved + right[s + 1] * prev / denom;
            saved = left[r - s] * prev / denom;
        }
        b[r] = saved;
    }
    return out;
}

double bspline_value(const UniformMesh& mesh, int l, int j, double x) {
    check_unit_interval(x);
    check_degree(l);
    check_basis_index(mesh, l, j);
    const BasisSpan span = basis_span(mesh, l, x);
    const int offset = j - span.first;
    if (offset < 0 || offset > l) {
        return 0.0;
    }
    return span.values[static_cast<std::size_t>(offset)];
}

double bspline_value_reference(const UniformMesh& mesh, int l, int j, double x) {
    check_unit_interval(x);
    check_degree(l);
    check_basis_index(mesh, l, j);
    if (x >= 1.0) {
        return j == mesh.segments() - 1 ? 1.0 : 0.0;
    }
    const double lo = mesh.knot(j);
    const double hi = mesh.knot(j + l + 1);
    if (x < lo || x >= hi) {
        return 0.0;
    }

    std::vector<double> points;
    std::vector<double> values;
    for (int i = j; i <= j + l + 1; ++i) {
        const double t = mesh.knot(i);
        points.push_back(t);
        values.push_back(truncated_power_derivative(t, x, l, 0));
    }
    const DerivativeRule rule = [x, l](int order, double t) {
        return truncated_power_derivative(t, x, l, order);
    };
    return (hi - lo) * divided_difference(points, values, rule);
}

double divided_difference(std::span<const double> points,
                          std::span<const double> values,
                          const DerivativeRule& derivative) {
    if (points.empty() || points.size() != values.size()) {
        throw std::invalid_argument("divided difference needs equally many points and values");
    }
    const std::size_t m = points.size();

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t q = i + 1; q < m; ++q) {
            if (points[q] != points[i]) {
                continue;
            }
            for (std::size_t r = i + 1; r < q; ++r) {
                if (points[r] != points[i]) {
                    throw std::domain_error("repeated divided-difference points must be adjacent");
                }
            }
            if (!derivative) {
                throw std::domain_error("repeated divided-difference points need a derivative rule");
            }
        }
    }

    // Column-by-column Newton table; table[i] holds [p_i, ..., p_{i+r}] g.
    std::vector<double> table(values.begin(), values.end());
    double factorial = 1.0;
    for (std::size_t r = 1; r < m; ++r) {
        factorial *= static_cast<double>(r);
        for (std::size_t i = 0; i + r < m; ++i) {
            const double span = points[i + r] - points[i];
            if (span == 0.0) {
                table[i] = derivative(static_cast<int>(r), points[i]) / factorial;
            } else {
                table[i] = (table[i + 1] - table[i]) / span;
            }
        }
    }
    return table[0];
}

}  // namespace schoenberg
