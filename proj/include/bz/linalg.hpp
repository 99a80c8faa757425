#pragma once

#include "bz/error.hpp"
#include "bz/metric_graph.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace bz {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Conductance value 1/length of an edge in the requested scalar type.
template <typename Scalar>
Scalar conductance(const Edge& e) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
        return Rational(1) / e.length;
    } else {
        return Scalar(1) / Scalar(to_double(e.length));
    }
}

/// Weighted Laplacian with conductances 1/l. Edges with a false mask entry
/// are skipped; loops never contribute.
template <typename Scalar>
Mat<Scalar> weighted_laplacian(const MetricGraph& g, const std::vector<bool>& edge_mask = {}) {
    const auto n = static_cast<Eigen::Index>(g.num_vertices());
    Mat<Scalar> lap = Mat<Scalar>::Constant(n, n, Scalar(0));
    for (std::size_t k = 0; k < g.num_edges(); ++k) {
        if (!edge_mask.empty() && !edge_mask[k]) continue;
        const Edge& e = g.edge(k);
        if (e.is_loop()) continue;
        const Scalar c = conductance<Scalar>(e);
        const auto i = static_cast<Eigen::Index>(e.tail);
        const auto j = static_cast<Eigen::Index>(e.head);
        lap(i, i) += c;
        lap(j, j) += c;
        lap(i, j) -= c;
        lap(j, i) -= c;
    }
    return lap;
}

/// Solves a x = b by Gaussian elimination, pivoting on the first nonzero
/// entry of each column. Exact for Rational; throws NumericalError when a is
/// singular.
template <typename Scalar>
Vec<Scalar> gaussian_solve(Mat<Scalar> a, Vec<Scalar> b) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.size() != n) throw InvalidInput("gaussian_solve: dimension mismatch");
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        while (pivot < n && a(pivot, col) == Scalar(0)) ++pivot;
        if (pivot == n) throw NumericalError("gaussian_solve: singular matrix");
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            std::swap(b(pivot), b(col));
        }
        for (Eigen::Index row = col + 1; row < n; ++row) {
            if (a(row, col) == Scalar(0)) continue;
            const Scalar factor = a(row, col) / a(col, col);
            for (Eigen::Index k = col; k < n; ++k) a(row, k) -= factor * a(col, k);
            b(row) -= factor * b(col);
        }
    }
    Vec<Scalar> x(n);
    for (Eigen::Index row = n - 1; row >= 0; --row) {
        Scalar acc = b(row);
        for (Eigen::Index k = row + 1; k < n; ++k) acc -= a(row, k) * x(k);
        x(row) = acc / a(row, row);
    }
    return x;
}

/// Resistance between vertices s and t using only masked edges, or nullopt
/// if they are not connected. Restricts to the component of s and grounds t.
template <typename Scalar>
std::optional<Scalar> grounded_resistance(const MetricGraph& g, std::size_t s, std::size_t t,
                                          const std::vector<bool>& edge_mask = {}) {
    if (s == t) return Scalar(0);
    const auto labels = component_labels(g, edge_mask);
    if (labels[s] != labels[t]) return std::nullopt;

    std::vector<Eigen::Index> local(g.num_vertices(), -1);
    Eigen::Index count = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (labels[v] == labels[s] && v != t) local[v] = count++;

    const Mat<Scalar> full = weighted_laplacian<Scalar>(g, edge_mask);
    Mat<Scalar> reduced = Mat<Scalar>::Constant(count, count, Scalar(0));
    for (std::size_t i = 0; i < g.num_vertices(); ++i) {
        if (local[i] < 0) continue;
        for (std::size_t j = 0; j < g.num_vertices(); ++j) {
            if (local[j] < 0) continue;
            reduced(local[i], local[j]) = full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    Vec<Scalar> rhs = Vec<Scalar>::Constant(count, Scalar(0));
    rhs(local[s]) = Scalar(1);
    const Vec<Scalar> potential = gaussian_solve<Scalar>(std::move(reduced), std::move(rhs));
    return potential(local[s]);
}

}  // namespace bz
