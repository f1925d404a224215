#pragma once

// Clamped uniform knot sequences, Greville nodes and normalized B-splines.
//
// Indexing follows the usual convention for the spline space of degree k on
// n uniform segments: knots x_{-k}, ..., x_{n+k} with x_j = j/n clamped to
// [0, 1], and basis functions N_{j,k} for j = -k, ..., n-1 with support
// [x_j, x_{j+k+1}]. All storage is offset so that index j lives at j + k.

#include <functional>
#include <span>
#include <vector>

namespace schoenberg {

/// Uniform partition of [0, 1] into n segments, extended by k-fold clamped
/// knots at both ends.
class UniformMesh {
public:
    UniformMesh(int n, int k);

    [[nodiscard]] int segments() const noexcept { return n_; }
    [[nodiscard]] int degree() const noexcept { return k_; }
    [[nodiscard]] double gauge() const noexcept { return h_; }

    /// Knot x_i for any integer i; indices outside [0, n] clamp to the ends.
    [[nodiscard]] double knot(int i) const noexcept;

    /// Stored knots x_{-k}, ..., x_{n+k} (n + 2k + 1 values).
    [[nodiscard]] std::span<const double> knots() const noexcept { return knots_; }

    /// Index mu in [0, n-1] with x_mu <= x < x_{mu+1}; x = 1 maps to n-1.
    [[nodiscard]] int span_index(double x) const;

    friend bool operator==(const UniformMesh& a, const UniformMesh& b) noexcept {
        return a.n_ == b.n_ && a.k_ == b.k_;
    }

private:
    int n_;
    int k_;
    double h_;
    std::vector<double> knots_;
};

UniformMesh make_mesh(int n, int k);

/// Greville nodes xi_{j,l} = (x_{j+1} + ... + x_{j+l}) / l, for j = -l, ..., n-1.
class GrevilleNodes {
public:
    GrevilleNodes(const UniformMesh& mesh, int order);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int first_index() const noexcept { return -order_; }
    [[nodiscard]] int last_index() const noexcept { return last_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

    /// xi_{j,l}; j must lie in [-l, n-1].
    [[nodiscard]] double operator[](int j) const;
    [[nodiscard]] std::span<const double> values() const noexcept { return nodes_; }

private:
    int order_;
    int last_;
    std::vector<double> nodes_;
};

/// Greville nodes of order l, 1 <= l <= k + 2.
GrevilleNodes greville_nodes(const UniformMesh& mesh, int l);

/// Values of the l + 1 basis functions of degree l that can be nonzero at x.
struct BasisSpan {
    int first = 0;               ///< index j of values[0]; values cover first..first+l
    std::vector<double> values;
};

/// All nonzero N_{j,l}(x) via the triangular degree-raising recursion.
/// At x = 1 the left-limit convention gives N_{n-1,l}(1) = 1.
BasisSpan basis_span(const UniformMesh& mesh, int l, double x);

/// N_{j,l}(x) for -l <= j <= n-1, 0 <= x <= 1.
double bspline_value(const UniformMesh& mesh, int l, int j, double x);

/// N_{j,l}(x) from the truncated-power definition
/// (x_{j+l+1} - x_j) [x_j, ..., x_{j+l+1}] (. - x)_+^l.
/// Cross-check only; it loses accuracy quickly as n and l grow.
double bspline_value_reference(const UniformMesh& mesh, int l, int j, double x);

/// Supplies g^{(r)}(t) for a confluent divided difference over a run of
/// r + 1 equal points.
using DerivativeRule = std::function<double(int order, double point)>;

/// Divided difference [p_0, ..., p_m] g given values g(p_i).
/// Repeated points must be adjacent and need a derivative rule.
double divided_difference(std::span<const double> points,
                          std::span<const double> values,
                          const DerivativeRule& derivative = {});

}  // namespace schoenberg
