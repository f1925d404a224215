#include "schoenberg/spline_operator.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace schoenberg {

SplineFunction::SplineFunction(UniformMesh mesh, int degree, std::vector<double> coefficients)
    : mesh_(std::move(mesh)), degree_(degree), coefficients_(std::move(coefficients)) {
    if (degree_ < 0 || degree_ > mesh_.degree()) {
        throw std::domain_error("spline degree " + std::to_string(degree_) + " outside [0, " +
                                std::to_string(mesh_.degree()) + "]");
    }
    const auto expected = static_cast<std::size_t>(mesh_.segments() + degree_);
    if (coefficients_.size() != expected) {
        throw std::invalid_argument("spline of degree " + std::to_string(degree_) + " needs " +
                                    std::to_string(expected) + " coefficients, got " +
                                    std::to_string(coefficients_.size()));
    }
}

double SplineFunction::coefficient(int j) const {
    if (j < -degree_ || j > mesh_.segments() - 1) {
        throw std::out_of_range("coefficient index " + std::to_string(j) + " out of range");
    }
    return coefficients_[static_cast<std::size_t>(j + degree_)];
}

double SplineFunction::operator()(double x) const {
    const BasisSpan span = basis_span(mesh_, degree_, x);
    double sum = 0.0;
    for (std::size_t r = 0; r < span.values.size(); ++r) {
        sum += coefficients_[static_cast<std::size_t>(span.first + degree_) + r] * span.values[r];
    }
    return sum;
}

double eval_spline(const SplineFunction& s, double x) { return s(x); }

CollocationMatrix::CollocationMatrix(const UniformMesh& mesh) : mesh_(mesh) {
    const int k = mesh.degree();
    const int size = mesh.segments() + k;
    entries_ = Eigen::MatrixXd::Zero(size, size);
    const GrevilleNodes xi = greville_nodes(mesh, k);
    for (int i = -k; i < mesh.segments(); ++i) {
        const BasisSpan span = basis_span(mesh, k, xi[i]);
        for (int r = 0; r <= k; ++r) {
            entries_(i + k, span.first + r + k) = span.values[static_cast<std::size_t>(r)];
        }
    }
}

double CollocationMatrix::at(int i, int j) const {
    const int k = mesh_.degree();
    if (i < -k || j < -k || i >= mesh_.segments() || j >= mesh_.segments()) {
        throw std::out_of_range("collocation index out of range");
    }
    return entries_(i + k, j + k);
}

std::vector<double> CollocationMatrix::apply(std::span<const double> v) const {
    if (static_cast<Eigen::Index>(v.size()) != entries_.cols()) {
        throw std::invalid_argument("collocation matrix / vector size mismatch");
    }
    const Eigen::Map<const Eigen::VectorXd> in(v.data(), static_cast<Eigen::Index>(v.size()));
    const Eigen::VectorXd out = entries_ * in;
    return {out.data(), out.data() + out.size()};
}

Eigen::MatrixXd CollocationMatrix::power(int p) const {
    if (p < 0) {
        throw std::domain_error("negative matrix power");
    }
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(entries_.rows(), entries_.cols());
    for (int i = 0; i < p; ++i) {
        result = (result * entries_).eval();
    }
    return result;
}

CollocationMatrix collocation_matrix(const UniformMesh& mesh) { return CollocationMatrix(mesh); }

SplineFunction schoenberg(const UniformMesh& mesh, const RealFunction& f) {
    const GrevilleNodes xi = greville_nodes(mesh, mesh.degree());
    std::vector<double> c;
    c.reserve(xi.size());
    for (const double node : xi.values()) {
        c.push_back(f(node));
    }
    return SplineFunction(mesh, mesh.degree(), std::move(c));
}

SplineFunction schoenberg(const UniformMesh& mesh, const SplineFunction& s) {
    return schoenberg(mesh, RealFunction([&s](double x) { return s(x); }));
}

SplineFunction iterate(const CollocationMatrix& a, const RealFunction& f, int m) {
    if (m < 1) {
        throw std::domain_error("iterate needs m >= 1, got " + std::to_string(m));
    }
    const SplineFunction first = schoenberg(a.mesh(), f);
    std::vector<double> c(first.coefficients().begin(), first.coefficients().end());
    // A^{m-1} c, one product at a time.
    for (int i = 1; i < m; ++i) {
        c = a.apply(c);
    }
    return SplineFunction(a.mesh(), a.mesh().degree(), std::move(c));
}

SplineFunction iterate(const UniformMesh& mesh, const RealFunction& f, int m) {
    if (m < 1) {
        throw std::domain_error("iterate needs m >= 1, got " + std::to_string(m));
    }
    if (m == 1) {
        return schoenberg(mesh, f);
    }
    return iterate(collocation_matrix(mesh), f, m);
}

std::vector<double> backward_difference(const UniformMesh& mesh, int l,
                                        std::span<const double> values) {
    if (l < 1) {
        throw std::domain_error("backward difference needs order l >= 1");
    }
    const auto expected = static_cast<std::size_t>(mesh.segments() + l);
    if (values.size() != expected) {
        throw std::invalid_argument("backward difference of order " + std::to_string(l) +
                                    " needs " + std::to_string(expected) + " values, got " +
                                    std::to_string(values.size()));
    }
    // Order l may exceed the mesh degree by at most 2; beyond that the nodes
    // are never needed, but the formula stays valid on the clamped knots.
    std::vector<double> xi;
    xi.reserve(expected);
    for (int j = -l; j < mesh.segments(); ++j) {
        double sum = 0.0;
        for (int i = j + 1; i <= j + l; ++i) {
            sum += mesh.knot(i);
        }
        xi.push_back(sum / l);
    }

    std::vector<double> out;
    out.reserve(expected - 1);
    for (std::size_t p = 1; p < expected; ++p) {
        const double denom = xi[p] - xi[p - 1];
        if (denom <= 0.0) {
            throw std::logic_error("coincident Greville nodes in backward difference");
        }
        out.push_back((values[p] - values[p - 1]) / denom);
    }
    return out;
}

SplineFunction derivative(const SplineFunction& s) {
    if (s.degree() < 2) {
        throw std::domain_error("derivative needs spline degree >= 2, got " +
                                std::to_string(s.degree()));
    }
    return SplineFunction(s.mesh(), s.degree() - 1,
                          backward_difference(s.mesh(), s.degree(), s.coefficients()));
}

SplineFunction second_derivative(const SplineFunction& s) { return derivative(derivative(s)); }

}  // namespace schoenberg
