#pragma once

#include "bz/error.hpp"
#include "bz/metric_graph.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace bz {

// Per edge, whether the edge runs head -> tail (e- = head) instead of the
// stored tail -> head.
struct Orientation {
    std::vector<bool> reversed;

    static Orientation natural(const MetricGraph& g) { return {std::vector<bool>(g.num_edges(), false)}; }
    Orientation flipped(std::size_t e) const {
        Orientation o = *this;
        o.reversed.at(e) = !o.reversed.at(e);
        return o;
    }
};

std::size_t initial_vertex(const MetricGraph& g, const Orientation& o, std::size_t e);
std::size_t terminal_vertex(const MetricGraph& g, const Orientation& o, std::size_t e);

/// Edge-indexed complex values; harmonic when the Kirchhoff balance holds
/// at every vertex.
using OneForm = Eigen::VectorXcd;

Eigen::VectorXd edge_lengths(const MetricGraph& g);

/// max_v |sum_{e+ = v} w(e) - sum_{e- = v} w(e)|.
double harmonicity_defect(const MetricGraph& g, const Orientation& o, const OneForm& w);
inline bool is_harmonic(const MetricGraph& g, const Orientation& o, const OneForm& w, double tol = 1e-12) {
    return harmonicity_defect(g, o, w) <= tol;
}

/// Weighted Gram-Schmidt for a Hermitian inner product
/// <x, y> = sum_e x(e) conj(y(e)) weight(e). Two orthogonalization passes
/// per vector. Throws NumericalError when a vector is dependent on its
/// predecessors to relative tolerance `tol`.
template <typename Scalar>
std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> gram_schmidt(
    std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> basis,
    const Eigen::Matrix<typename Eigen::NumTraits<Scalar>::Real, Eigen::Dynamic, 1>& weight, double tol = 1e-10) {
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    auto inner = [&](const auto& x, const auto& y) -> Scalar {
        return (x.array() * y.conjugate().array() * weight.array().template cast<Scalar>()).sum();
    };
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Real original = std::sqrt(std::real(inner(basis[i], basis[i])));
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < i; ++j) basis[i] -= inner(basis[i], basis[j]) * basis[j];
        const Real norm = std::sqrt(std::real(inner(basis[i], basis[i])));
        if (!(norm > tol * original) || norm == Real(0))
            throw NumericalError("gram_schmidt: input vectors are numerically dependent");
        basis[i] /= Scalar(norm);
    }
    return basis;
}

/// Fundamental-cycle forms of a BFS spanning tree rooted at the
/// lexicographically least vertex id, one per non-tree edge in edge order.
/// Throws DisconnectedGraph.
std::vector<OneForm> one_form_space_basis(const MetricGraph& g, const Orientation& o);

/// <w1, w2> = sum_e w1(e) conj(w2(e)) l_e.
std::complex<double> pairing(const MetricGraph& g, const OneForm& w1, const OneForm& w2);

std::vector<OneForm> orthonormal_basis(const MetricGraph& g, const Orientation& o);

/// sum_i |w_i(e)|^2 over an orthonormal basis; equals 1/(l_e + r_e).
double foster_density(const MetricGraph& g, const Orientation& o, std::size_t e);
std::vector<double> foster_densities(const MetricGraph& g, const Orientation& o);
std::vector<double> foster_densities(const std::vector<OneForm>& orthonormal, std::size_t num_edges);

}  // namespace bz
