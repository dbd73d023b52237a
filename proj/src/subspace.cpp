#include "hardylab/subspace.hpp"

#include <cmath>

#include "hardylab/linalg.hpp"

namespace hardylab {

namespace {

double g_rank_tol = 1e-8;

void require_comparable(const Subspace& a, const Subspace& b, const char* op) {
    if (a.order() != b.order())
        throw DimensionMismatchError(std::string(op) + ": order mismatch");
    if (a.field() != b.field())
        throw FieldError(std::string(op) + ": field mismatch (" + field_name(a.field()) +
                         " vs " + field_name(b.field()) + ")");
}

}  // namespace

double default_rank_tol() { return g_rank_tol; }

void set_default_rank_tol(double tol) {
    if (!(tol > 0.0 && tol < 1.0)) throw DomainError("rank tolerance must lie in (0, 1)");
    g_rank_tol = tol;
}

Subspace::Subspace(Eigen::MatrixXcd basis, Field field, double ortho_tol)
    : basis_(std::move(basis)), field_(field), ortho_tol_(ortho_tol) {
    if (basis_.rows() == 0) throw DimensionMismatchError("subspace order must be positive");
    if (basis_.cols() > basis_.rows())
        throw DimensionMismatchError("subspace dimension exceeds order");
    if (field_ == Field::Real && basis_.cols() > 0 &&
        basis_.imag().cwiseAbs().maxCoeff() != 0.0)
        throw FieldError("real-field subspace with complex entries");
    if (basis_.cols() > 0) {
        const Eigen::MatrixXcd gram = basis_.adjoint() * basis_;
        const double err =
            (gram - Eigen::MatrixXcd::Identity(basis_.cols(), basis_.cols())).cwiseAbs().maxCoeff();
        // negated comparison so non-finite entries are rejected too
        if (!(err <= ortho_tol_))
            throw InvariantViolation("basis is not orthonormal (residual " + std::to_string(err) +
                                     ")");
    }
}

Subspace Subspace::zero(int order, Field field) {
    return Subspace(Eigen::MatrixXcd(order, 0), field);
}

Subspace Subspace::full(int order, Field field) {
    return Subspace(Eigen::MatrixXcd::Identity(order, order), field);
}

Subspace Subspace::span_of(const TruncatedSeries& f) {
    if (f.norm() == 0.0) return zero(f.order(), f.field());
    return Subspace(f.coeffs() / f.norm(), f.field());
}

Eigen::MatrixXd Subspace::real_basis() const {
    if (field_ != Field::Real) throw FieldError("real_basis on a complex-field subspace");
    return basis_.real();
}

TruncatedSeries Subspace::column(int j) const {
    if (j < 0 || j >= dim()) throw DimensionMismatchError("column index out of range");
    return TruncatedSeries(basis_.col(j), field_);
}

Subspace orthonormalize(const std::vector<TruncatedSeries>& vectors, double rank_tol,
                        int fallback_order, Field fallback_field) {
    if (vectors.empty()) {
        if (fallback_order <= 0)
            throw DimensionMismatchError("orthonormalize: empty input and no fallback order");
        return Subspace::zero(fallback_order, fallback_field);
    }
    const int order = vectors.front().order();
    const Field field = vectors.front().field();
    Eigen::MatrixXcd cols(order, static_cast<Eigen::Index>(vectors.size()));
    for (size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].order() != order || vectors[j].field() != field)
            throw DimensionMismatchError("orthonormalize: vectors must share order and field");
        cols.col(static_cast<Eigen::Index>(j)) = vectors[j].coeffs();
    }
    return orthonormalize_columns(cols, field, rank_tol);
}

Subspace orthonormalize_columns(const Eigen::MatrixXcd& columns, Field field, double rank_tol) {
    if (field == Field::Real) {
        if (columns.imag().size() > 0 && columns.imag().cwiseAbs().maxCoeff() != 0.0)
            throw FieldError("orthonormalize: complex entries under a real field marker");
        Eigen::MatrixXd b = linalg::orthonormal_range(Eigen::MatrixXd(columns.real()), rank_tol,
                                                      linalg::RankScale::MatrixNorm);
        return Subspace(b.cast<Complex>(), Field::Real);
    }
    Eigen::MatrixXcd b =
        linalg::orthonormal_range(columns, rank_tol, linalg::RankScale::MatrixNorm);
    return Subspace(std::move(b), Field::Complex);
}

TruncatedSeries project(const Subspace& s, const TruncatedSeries& f) {
    if (s.order() != f.order()) throw DimensionMismatchError("project: order mismatch");
    if (s.field() == Field::Complex && f.field() == Field::Real)
        throw FieldError("project: real series onto a complex subspace");
    if (s.dim() == 0) return TruncatedSeries::zero(f.order(), f.field());
    if (s.field() == Field::Real && f.field() == Field::Real) {
        const Eigen::MatrixXd b = s.real_basis();
        const Eigen::VectorXd v = f.coeffs().real();
        Eigen::VectorXd p = b * (b.transpose() * v);
        return TruncatedSeries(p.cast<Complex>(), Field::Real, f.spill());
    }
    // complex f onto a real S projects onto the complex embedding of S
    const Eigen::MatrixXcd& b = s.basis();
    Eigen::VectorXcd p = b * (b.adjoint() * f.coeffs());
    return TruncatedSeries(std::move(p), Field::Complex, f.spill());
}

Subspace intersect_zH(const Subspace& s, double rank_tol) {
    if (s.dim() == 0) return s;
    const Eigen::MatrixXcd row = s.basis().row(0);
    if (row.norm() <= rank_tol) return s;  // every element already vanishes at 0
    if (s.field() == Field::Real) {
        Eigen::MatrixXd r = row.real();
        Eigen::MatrixXd null = linalg::null_space(r, rank_tol);
        return Subspace((s.basis().real() * null).cast<Complex>(), Field::Real);
    }
    Eigen::MatrixXcd null = linalg::null_space(Eigen::MatrixXcd(row), rank_tol);
    return Subspace(s.basis() * null, Field::Complex);
}

Subspace complement_in(const Subspace& s, const Subspace& t, double rank_tol,
                       double containment_tol) {
    require_comparable(s, t, "complement_in");
    if (t.dim() > s.dim()) throw ContainmentError("complement_in: dim T exceeds dim S");
    if (t.dim() > 0) {
        const Eigen::MatrixXcd residual =
            t.basis() - s.basis() * (s.basis().adjoint() * t.basis());
        const double res = linalg::op_norm(residual);
        if (res > containment_tol)
            throw ContainmentError("complement_in: T is not contained in S (residual " +
                                   std::to_string(res) + ")");
    }
    if (t.dim() == 0) return s;
    if (s.dim() == s.order()) {
        // complement inside the whole space: exact orthonormal completion
        if (s.field() == Field::Real) {
            const Eigen::MatrixXd c =
                linalg::orthonormal_completion(Eigen::MatrixXd(t.basis().real()), s.order());
            return Subspace(c.cast<Complex>(), Field::Real);
        }
        return Subspace(linalg::orthonormal_completion(t.basis(), s.order()), Field::Complex);
    }
    Eigen::MatrixXcd rem = s.basis() - t.basis() * (t.basis().adjoint() * s.basis());
    Subspace out = orthonormalize_columns(rem, s.field(), rank_tol);
    if (out.dim() != s.dim() - t.dim())
        throw InvariantViolation("complement_in: unexpected complement dimension");
    return out;
}

double projector_distance(const Subspace& s1, const Subspace& s2) {
    require_comparable(s1, s2, "projector_distance");
    const int n = s1.order();
    if (s1.field() == Field::Real) {
        const Eigen::MatrixXd b1 = s1.real_basis(), b2 = s2.real_basis();
        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
        if (b1.cols() > 0) d += b1 * b1.transpose();
        if (b2.cols() > 0) d -= b2 * b2.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d, Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    }
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    if (s1.dim() > 0) d += s1.basis() * s1.basis().adjoint();
    if (s2.dim() > 0) d -= s2.basis() * s2.basis().adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

Subspace hat_subspace(const Subspace& s, double rank_tol) {
    if (s.field() == Field::Real) return s;
    if (s.dim() == 0) return s;
    return orthonormalize_columns(s.basis().conjugate(), Field::Complex, rank_tol);
}

Subspace complexify(const Subspace& s) {
    if (s.field() != Field::Real) throw FieldError("complexify: input is already complex");
    return Subspace(s.basis(), Field::Complex);
}

Subspace symmetrize_subspace(const Subspace& s, double rank_tol) {
    if (s.field() == Field::Real) return s;
    const int n = s.order(), d = s.dim();
    if (d == 0) return Subspace::zero(n, Field::Real);
    // phi(b) = Re b and phi(ib) = -Im b span the image over the reals
    Eigen::MatrixXd cols(n, 2 * d);
    cols.leftCols(d) = s.basis().real();
    cols.rightCols(d) = -s.basis().imag();
    Eigen::MatrixXd b =
        linalg::orthonormal_range(cols, rank_tol, linalg::RankScale::MatrixNorm);
    return Subspace(b.cast<Complex>(), Field::Real);
}

double containment_residual(const Subspace& inner, const Subspace& outer) {
    if (inner.order() != outer.order())
        throw DimensionMismatchError("containment_residual: order mismatch");
    if (inner.dim() == 0) return 0.0;
    Eigen::MatrixXcd r = inner.basis();
    if (outer.dim() > 0) r -= outer.basis() * (outer.basis().adjoint() * inner.basis());
    return linalg::op_norm(r);
}

bool contains(const Subspace& s, const TruncatedSeries& f, double tol) {
    if (f.norm() == 0.0) return true;
    const TruncatedSeries p = project(s, f);
    double res;
    if (p.field() == f.field()) {
        res = (f - p).norm();
    } else {
        res = (f.as_complex() - p).norm();
    }
    return res <= tol * f.norm();
}

}  // namespace hardylab
