#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hardylab/series.hpp"

namespace hardylab {

/// One global rank-decision knob (relative singular-value threshold),
/// reported in every certificate. Default 1e-8.
double default_rank_tol();
void set_default_rank_tol(double tol);

/// Orthonormality tolerance accepted at Subspace construction.
inline constexpr double kOrthoTol = 1e-10;

/// A finite-dimensional subspace of the truncated Hardy space, held as a
/// column-orthonormal coefficient matrix. Dimension 0 encodes the zero
/// subspace. Real-field subspaces have exactly real entries and are treated
/// as spans over the reals.
class Subspace {
  public:
    Subspace(Eigen::MatrixXcd basis, Field field, double ortho_tol = kOrthoTol);

    static Subspace zero(int order, Field field = Field::Real);
    static Subspace full(int order, Field field = Field::Real);
    /// Span of a single series (normalized); zero input gives the zero subspace.
    static Subspace span_of(const TruncatedSeries& f);

    int order() const { return static_cast<int>(basis_.rows()); }
    int dim() const { return static_cast<int>(basis_.cols()); }
    Field field() const { return field_; }
    double ortho_tol() const { return ortho_tol_; }
    const Eigen::MatrixXcd& basis() const { return basis_; }
    /// Real basis matrix; FieldError when the field is complex.
    Eigen::MatrixXd real_basis() const;
    TruncatedSeries column(int j) const;

  private:
    Eigen::MatrixXcd basis_;
    Field field_;
    double ortho_tol_;
};

/// Column-orthonormal basis of the span via a rank-revealing factorization.
/// Directions with singular value <= rank_tol * sigma_max are discarded.
/// An empty input list yields the zero subspace of the fallback order.
Subspace orthonormalize(const std::vector<TruncatedSeries>& vectors,
                        double rank_tol = default_rank_tol(), int fallback_order = -1,
                        Field fallback_field = Field::Real);

/// Matrix form of orthonormalize; a real-field matrix must have real entries.
Subspace orthonormalize_columns(const Eigen::MatrixXcd& columns, Field field,
                                double rank_tol = default_rank_tol());

/// Orthogonal projection of f onto S. Complex f projects onto the complex
/// embedding of a real S; projecting real f onto a complex S is a FieldError.
TruncatedSeries project(const Subspace& s, const TruncatedSeries& f);

/// {f in S : f(0) = 0}; dimension is dim S or dim S - 1.
Subspace intersect_zH(const Subspace& s, double rank_tol = default_rank_tol());

/// S ominus T for T contained in S (checked; ContainmentError otherwise).
Subspace complement_in(const Subspace& s, const Subspace& t,
                       double rank_tol = default_rank_tol(),
                       double containment_tol = 1e-8);

/// Operator norm of P_S1 - P_S2: the principal-angle metric for subspace
/// equality. Requires equal order and field.
double projector_distance(const Subspace& s1, const Subspace& s2);

/// Conjugate every basis entry and re-orthonormalize. An involution.
Subspace hat_subspace(const Subspace& s, double rank_tol = default_rank_tol());

/// M + iM: the same basis over the complex field. FieldError on complex input.
Subspace complexify(const Subspace& s);

/// Image of a complex subspace under symmetrization: the real span of
/// {phi(b), phi(ib)} over basis columns. Real input is returned unchanged.
Subspace symmetrize_subspace(const Subspace& s, double rank_tol = default_rank_tol());

/// ||f - P_S f|| <= tol * ||f|| (zero f contained by convention).
bool contains(const Subspace& s, const TruncatedSeries& f, double tol);

/// Operator norm of (I - P_outer) restricted to inner: 0 iff inner ⊂ outer.
double containment_residual(const Subspace& inner, const Subspace& outer);

}  // namespace hardylab
