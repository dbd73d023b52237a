#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <type_traits>

#include <Eigen/Dense>

namespace hardylab::linalg {

namespace detail {

// Eigen 3.4.0's BDCSVD deflation can emit non-finite or non-orthonormal
// factors (and out-of-order singular values) on rank-deficient structured
// input, e.g. exactly repeated columns; detect and fall back to the slower
// but dependable Jacobi algorithm.
inline bool svd_values_ok(const Eigen::VectorXd& sv) {
    if (!sv.allFinite()) return false;
    for (Eigen::Index i = 0; i + 1 < sv.size(); ++i)
        if (sv(i) < sv(i + 1)) return false;
    return true;
}

template <class Mat>
bool factor_orthonormal(const Mat& u) {
    if (u.cols() == 0) return true;
    if (!u.allFinite()) return false;
    const Mat gram = u.adjoint() * u;
    const double err =
        (gram - Mat::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
    return err <= 1e-10;
}

}  // namespace detail

/// Largest singular value via the Gram matrix; accurate relative to the top
/// singular value and immune to the BDCSVD deflation defects.
template <class Mat>
double op_norm(const Mat& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const Mat gram = a.rows() >= a.cols() ? Mat(a.adjoint() * a) : Mat(a * a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues()(es.eigenvalues().size() - 1);
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

enum class RankScale {
    MatrixNorm,   // threshold = tol * sigma_max  (span/kernel of arbitrary data)
    UnitColumns,  // threshold = tol * max(1, sigma_max)  (residuals of unit inputs)
};

namespace detail {

inline Eigen::Index rank_at(const Eigen::VectorXd& sv, double rank_tol, RankScale scale) {
    const double smax = sv.size() ? sv(0) : 0.0;
    const double thresh =
        rank_tol * (scale == RankScale::MatrixNorm ? smax : std::max(1.0, smax));
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > thresh) ++rank;
    return rank;
}

// The kept factor must reproduce the input up to the discarded singular
// values (Frobenius); a corrupt factor spans the wrong subspace and fails.
template <class Mat>
bool range_complete(const Mat& v, const Mat& kept, const Eigen::VectorXd& sv,
                    Eigen::Index rank) {
    const double discarded = sv.tail(sv.size() - rank).norm();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double slack = 1e-9 * std::max(1.0, smax) * std::sqrt(double(v.cols()));
    Mat residual = v;
    if (kept.cols() > 0) residual -= kept * (kept.adjoint() * v);
    return residual.norm() <= discarded + slack;
}

}  // namespace detail

/// Orthonormal basis of the range at the given rank tolerance. Singular values
/// are optionally returned (descending, full list).
template <class Mat>
Mat orthonormal_range(const Mat& v, double rank_tol, RankScale scale,
                      Eigen::VectorXd* singular_values = nullptr) {
    if (v.cols() == 0 || v.rows() == 0) {
        if (singular_values) singular_values->resize(0);
        return Mat(v.rows(), 0);
    }
    Eigen::BDCSVD<Mat> svd(v, Eigen::ComputeThinU);
    Eigen::VectorXd sv = svd.singularValues();
    Mat u = svd.matrixU();
    Eigen::Index rank = detail::rank_at(sv, rank_tol, scale);
    if (!detail::svd_values_ok(sv) || !detail::factor_orthonormal(u) ||
        !detail::range_complete(v, Mat(u.leftCols(rank)), sv, rank)) {
        Eigen::JacobiSVD<Mat> jac(v, Eigen::ComputeThinU);
        sv = jac.singularValues();
        u = jac.matrixU();
        rank = detail::rank_at(sv, rank_tol, scale);
    }
    if (singular_values) *singular_values = sv;
    return u.leftCols(rank);
}

/// Orthonormal basis of the null space: right singular vectors whose singular
/// value falls at or below the threshold (plus the trailing dimensions of a
/// wide matrix).
template <class Mat>
Mat null_space(const Mat& a, double rank_tol, RankScale scale = RankScale::UnitColumns) {
    if (a.cols() == 0) return Mat(0, 0);
    if (a.rows() == 0) {
        Mat id = Mat::Identity(a.cols(), a.cols());
        return id;
    }
    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
    Eigen::VectorXd sv = svd.singularValues();
    Mat v = svd.matrixV();
    Eigen::Index rank = detail::rank_at(sv, rank_tol, scale);
    bool ok = detail::svd_values_ok(sv) && detail::factor_orthonormal(v);
    if (ok) {
        // the claimed null space must actually annihilate the matrix
        const Mat null_part = v.rightCols(a.cols() - rank);
        const double discarded = sv.tail(sv.size() - rank).norm();
        const double slack =
            1e-9 * std::max(1.0, sv.size() ? sv(0) : 0.0) * std::sqrt(double(a.cols()));
        ok = null_part.cols() == 0 || (a * null_part).norm() <= discarded + slack;
    }
    if (!ok) {
        Eigen::JacobiSVD<Mat> jac(a, Eigen::ComputeFullV);
        sv = jac.singularValues();
        v = jac.matrixV();
        rank = detail::rank_at(sv, rank_tol, scale);
    }
    return v.rightCols(a.cols() - rank);
}

/// Exact orthonormal completion of a column-orthonormal matrix to the whole
/// space (Householder QR); the complement of its span.
template <class Mat>
Mat orthonormal_completion(const Mat& b, Eigen::Index rows) {
    if (b.cols() == 0) return Mat::Identity(rows, rows);
    Eigen::HouseholderQR<Mat> qr(b);
    const Mat q = qr.householderQ() * Mat::Identity(rows, rows);
    return q.rightCols(rows - b.cols());
}

/// Columns multiplied by z within the truncation (top coefficient dropped).
template <class Mat>
Mat shifted_cols(const Mat& b) {
    Mat out = Mat::Zero(b.rows(), b.cols());
    if (b.rows() > 1) out.bottomRows(b.rows() - 1) = b.topRows(b.rows() - 1);
    return out;
}

/// Columns mapped by the backward shift (coefficients move down one index).
template <class Mat>
Mat backshifted_cols(const Mat& b) {
    Mat out = Mat::Zero(b.rows(), b.cols());
    if (b.rows() > 1) out.topRows(b.rows() - 1) = b.bottomRows(b.rows() - 1);
    return out;
}

/// Multiplication matrix: column j holds the coefficients of z^{j+pre_shift} * g
/// truncated to out_rows.
template <class Mat, class Vec>
Mat mult_matrix(const Vec& g, int out_rows, int in_cols, int pre_shift = 0) {
    Mat a = Mat::Zero(out_rows, in_cols);
    for (int j = 0; j < in_cols; ++j) {
        const int start = j + pre_shift;
        const int len = std::min<int>(static_cast<int>(g.size()), out_rows - start);
        if (len > 0) a.col(j).segment(start, len) = g.head(len);
    }
    return a;
}

/// Rotate each column by a unimodular scalar (sign for real data) so its first
/// significant entry is real positive; a reproducible tie-break for reported bases.
template <class Mat>
void canonicalize_column_phases(Mat& b, double significance = 1e-9) {
    using Scalar = typename Mat::Scalar;
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        for (Eigen::Index i = 0; i < b.rows(); ++i) {
            const Scalar x = b(i, j);
            if (std::abs(x) > significance) {
                if constexpr (std::is_same_v<Scalar, double>) {
                    if (x < 0.0) b.col(j) = -b.col(j);
                } else {
                    b.col(j) *= std::conj(x) / std::abs(x);
                }
                break;
            }
        }
    }
}

}  // namespace hardylab::linalg
