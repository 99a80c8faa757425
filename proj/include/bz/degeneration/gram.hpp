#pragma once

#include "bz/degeneration/charts.hpp"
#include "bz/degeneration/quadrature.hpp"
#include "bz/nc_model.hpp"
#include "bz/one_forms.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace bz::degen {

// A synthetic degenerating surface: chart contributions plus a bounded
// Hermitian remainder standing in for the regular parts of the surface.
// Indices below graph_genus are graph (residue) forms, the rest are
// holomorphic forms on positive-genus components.
struct SyntheticSurface {
    std::size_t genus = 0;
    std::size_t graph_genus = 0;
    std::vector<NodalChart> nodal_charts;
    std::vector<SmoothChart> smooth_charts;
    Eigen::MatrixXcd remainder;  // empty or genus x genus

    /// Throws InvalidInput. Holomorphic forms must have no residues, and
    /// must vanish on branches of multiplicity > 1.
    void validate() const;
    Eigen::MatrixXcd remainder_or_zero() const;
};

/// The surface consisting of one nodal chart; all its forms are graph forms.
SyntheticSurface single_chart_surface(const NodalChart& chart);

/// Surface modelled on an NC model: one a,b nodal chart per edge with residues
/// omega_j(e) taken from `graph_forms` (orthonormal one-forms), one smooth chart
/// per positive-genus vertex carrying g(v) orthonormal holomorphic forms
/// sqrt((k+1)/pi) w^k dw. Lengths must be the product lengths with scale 1.
SyntheticSurface surface_from_model(const NCModel& model, const std::vector<OneForm>& graph_forms);

// A point of a chart together with its edge coordinate measured from the
// vertex of the branch being integrated (0 for smooth charts).
struct ChartPoint {
    Complex z;
    Complex w;
    double u = 0.0;
};
using PointWeight = std::function<double(const ChartPoint&)>;

struct Moments {
    Eigen::MatrixXcd value;  // M_jk = (i/2) int weight theta_j ^ conj(theta_k)
    double error = 0.0;      // max entry difference base vs doubled grid
};

/// Moments over the side's half annulus restricted to log|x| >= s_low
/// (defaults to the inner radius). Throws NumericalError on nonconvergence.
Moments nodal_side_moments(const NodalChart& chart, Complex t, ChartSide side, const QuadratureSpec& quad,
                           const PointWeight& weight = {}, double s_low = 0.0, bool use_inner = true);
/// Moments over the a sheets of the unit disk of a smooth chart.
Moments smooth_chart_moments(const SmoothChart& chart, Complex t, const QuadratureSpec& quad,
                             const PointWeight& weight = {});

/// (i/2) int over the w-side half annulus of theta_j ^ conj(theta_k).
Complex half_annulus_pairing(const NodalChart& chart, std::size_t j, std::size_t k, Complex t,
                             const QuadratureSpec& quad = QuadratureSpec::from_environment());

template <class M>
class BlockView {
public:
    BlockView(M entries, std::size_t split) : entries_(std::move(entries)), split_(split) {}

    const M& entries() const { return entries_; }
    std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
    std::size_t graph_genus() const { return split_; }
    M B() const { return entries_.topLeftCorner(split_, split_); }
    M C() const { return entries_.topRightCorner(split_, size() - split_); }
    M D() const { return entries_.bottomLeftCorner(size() - split_, split_); }
    M F() const { return entries_.bottomRightCorner(size() - split_, size() - split_); }
    /// max |A_jk - conj(A_kj)|
    double hermitian_defect() const { return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff(); }

private:
    M entries_;
    std::size_t split_;
};

struct GramMatrix : BlockView<Eigen::MatrixXcd> {
    GramMatrix(Eigen::MatrixXcd entries, std::size_t split, double error = 0.0)
        : BlockView(std::move(entries), split), quadrature_error(error) {}
    double quadrature_error;
};

struct GramInverse : BlockView<Eigen::MatrixXcd> {
    using BlockView::BlockView;
};

GramMatrix gram_matrix(const SyntheticSurface& surface, Complex t,
                       const QuadratureSpec& quad = QuadratureSpec::from_environment());

/// Inverse via Cholesky; throws NumericalError if A is not positive definite.
GramInverse invert_gram(const GramMatrix& a);

/// t -> 0 limit of the holomorphic block F, from restrictions of the
/// holomorphic forms to the branches, plus the remainder.
Eigen::MatrixXcd limiting_holomorphic_block(const SyntheticSurface& surface,
                                            const QuadratureSpec& quad = QuadratureSpec::from_environment());

/// sum_jk conj(inv)_jk M_jk: the mass of weight * mu_t given the moments.
double contract(const Eigen::MatrixXcd& inverse, const Eigen::MatrixXcd& moments);

}  // namespace bz::degen

namespace bz::degen {

// t = 0 restriction of the holomorphic forms to one branch through a chart:
// psi_j = sum coeff x^power dx on the unit disk, counted on `sheets` sheets.
// Graph forms (index < graph_genus) restrict to nothing.
struct BranchRestriction {
    struct Term {
        Complex coeff;
        int power = 0;
    };
    int sheets = 1;
    std::vector<std::vector<Term>> forms;
};

BranchRestriction branch_restriction(const NodalChart& chart, ChartSide side, std::size_t graph_genus);
BranchRestriction branch_restriction(const SmoothChart& chart, std::size_t graph_genus);

/// sheets * (i/2) int_disk weight(x) psi_j ^ conj(psi_k); exact when weight is empty.
Eigen::MatrixXcd branch_moments(const BranchRestriction& branch, const QuadratureSpec& quad,
                                const std::function<double(Complex)>& weight = {});

}  // namespace bz::degen
