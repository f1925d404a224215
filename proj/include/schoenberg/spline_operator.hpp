#pragma once

// The variation-diminishing Schoenberg operator on a clamped uniform mesh,
// its iterates and the derivatives of the resulting splines.

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "schoenberg/basis.hpp"

namespace schoenberg {

using RealFunction = std::function<double(double)>;

/// s = sum_{j=-l}^{n-1} c_j N_{j,l} over the knots of `mesh`.
class SplineFunction {
public:
    SplineFunction(UniformMesh mesh, int degree, std::vector<double> coefficients);

    [[nodiscard]] const UniformMesh& mesh() const noexcept { return mesh_; }
    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] int first_index() const noexcept { return -degree_; }
    [[nodiscard]] std::span<const double> coefficients() const noexcept { return coefficients_; }

    /// c_j for j in [-l, n-1].
    [[nodiscard]] double coefficient(int j) const;

    double operator()(double x) const;

private:
    UniformMesh mesh_;
    int degree_;
    std::vector<double> coefficients_;
};

/// Square matrix A[i][j] = N_{j,k}(xi_{i,k}), rows and columns indexed from -k.
/// Row i of A^p holds the weights of the p-fold operator at xi_{i,k}.
class CollocationMatrix {
public:
    explicit CollocationMatrix(const UniformMesh& mesh);

    [[nodiscard]] const UniformMesh& mesh() const noexcept { return mesh_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(entries_.rows()); }
    [[nodiscard]] const Eigen::MatrixXd& entries() const noexcept { return entries_; }

    /// A[i][j] with signed indices, -k <= i, j <= n-1.
    [[nodiscard]] double at(int i, int j) const;

    /// A * v.
    [[nodiscard]] std::vector<double> apply(std::span<const double> v) const;

    /// A^p by repeated multiplication; A^0 is the identity.
    [[nodiscard]] Eigen::MatrixXd power(int p) const;

private:
    UniformMesh mesh_;
    Eigen::MatrixXd entries_;
};

/// S_{n,k} f: degree-k spline with coefficients f(xi_{j,k}).
SplineFunction schoenberg(const UniformMesh& mesh, const RealFunction& f);

/// Apply S_{n,k} to a spline already living on (possibly another) mesh.
SplineFunction schoenberg(const UniformMesh& mesh, const SplineFunction& s);

double eval_spline(const SplineFunction& s, double x);

CollocationMatrix collocation_matrix(const UniformMesh& mesh);

/// S^m f with coefficients A^{m-1} (f(xi_{j,k}))_j.
SplineFunction iterate(const UniformMesh& mesh, const RealFunction& f, int m);
SplineFunction iterate(const CollocationMatrix& a, const RealFunction& f, int m);

/// Delta_l: (v_j - v_{j-1}) / (xi_{j,l} - xi_{j-1,l}) for j = 1-l, ..., n-1.
/// `values` is indexed -l, ..., n-1.
std::vector<double> backward_difference(const UniformMesh& mesh, int l,
                                        std::span<const double> values);

/// D s as a spline of degree l - 1 (Marsden's formula).
SplineFunction derivative(const SplineFunction& s);

/// D^2 s, i.e. derivative applied twice.
SplineFunction second_derivative(const SplineFunction& s);

}  // namespace schoenberg
