#include "hardylab/engine.hpp"

#include <cmath>

#include "hardylab/linalg.hpp"
#include "hardylab/rng.hpp"

namespace hardylab {

namespace {

constexpr std::uint64_t kEngineStreamSeed = 0x48617264794C6162ULL;

template <class Mat>
struct FieldOps;

template <>
struct FieldOps<Eigen::MatrixXd> {
    static constexpr Field field = Field::Real;
    using Vec = Eigen::VectorXd;
    static Eigen::MatrixXd basis(const Subspace& s) { return s.basis().real(); }
    static Eigen::MatrixXcd storage(const Eigen::MatrixXd& b) { return b.cast<Complex>(); }
    static Subspace wrap(const Eigen::MatrixXd& b) {
        return Subspace(b.cast<Complex>(), Field::Real);
    }
    static Vec coeffs(const TruncatedSeries& f) { return f.coeffs().real(); }
    static TruncatedSeries series(const Vec& v) { return TruncatedSeries::from_real(v); }
    static Vec random_unit(Rng& rng, int n) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x(i) = rng.normal();
        return x / x.norm();
    }
};

template <>
struct FieldOps<Eigen::MatrixXcd> {
    static constexpr Field field = Field::Complex;
    using Vec = Eigen::VectorXcd;
    static Eigen::MatrixXcd basis(const Subspace& s) { return s.basis(); }
    static const Eigen::MatrixXcd& storage(const Eigen::MatrixXcd& b) { return b; }
    static Subspace wrap(const Eigen::MatrixXcd& b) { return Subspace(b, Field::Complex); }
    static Vec coeffs(const TruncatedSeries& f) { return f.coeffs(); }
    static TruncatedSeries series(const Vec& v) { return TruncatedSeries(v, Field::Complex); }
    static Vec random_unit(Rng& rng, int n) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x(i) = rng.cnormal();
        return x / x.norm();
    }
};

template <class Mat>
DefectReport defect_impl(const Subspace& m, double rank_tol, bool almost) {
    using F = FieldOps<Mat>;
    const Subspace w = almost ? m : intersect_zH(m, rank_tol);
    if (w.dim() == 0)
        return DefectReport{0, Subspace::zero(m.order(), m.field()), {}, rank_tol};
    const Mat bm = F::basis(m);
    const Mat tw = linalg::backshifted_cols(F::basis(w));
    const Mat r = tw - bm * (bm.adjoint() * tw);
    Eigen::VectorXd sv;
    Mat range = linalg::orthonormal_range(r, rank_tol, linalg::RankScale::UnitColumns, &sv);
    linalg::canonicalize_column_phases(range);
    DefectReport rep{static_cast<int>(range.cols()), F::wrap(range),
                     std::vector<double>(sv.data(), sv.data() + sv.size()), rank_tol};
    return rep;
}

// Kernel of (I - P_M) A with the kernel of A itself removed: the isometric
// parameter space of the synthesis operator A.
template <class Mat>
Mat synthesis_kernel(const Mat& a, const Mat& bm_pad, double rank_tol) {
    const Mat ra = a - bm_pad * (bm_pad.adjoint() * a);
    const Mat k1 = linalg::null_space(ra, rank_tol);
    const Mat k0 = linalg::null_space(a, rank_tol);
    if (k0.cols() == 0) return k1;
    const Mat rem = k1 - k0 * (k0.adjoint() * k1);
    return linalg::orthonormal_range(rem, rank_tol, linalg::RankScale::UnitColumns);
}

// The isometric parametrization f = g h + z sum_i h_i e_i, built coefficient
// by coefficient: strip the value at 0 through g, backshift, read the defect
// components off, and continue inside M. Returns the stacked lifts of the
// columns of bm; the defect relation makes every step exact up to the
// residual singular values of the defect computation.
template <class Mat>
Mat coefficient_lift(const Mat& bm, const typename FieldOps<Mat>::Vec& gvec, bool case_i,
                     const Mat& be) {
    using Vec = typename FieldOps<Mat>::Vec;
    const int n = static_cast<int>(bm.rows());
    const int d = static_cast<int>(bm.cols());
    const int ndef = static_cast<int>(be.cols());
    const int blocks = (case_i ? 1 : 0) + ndef;
    const int off = case_i ? 1 : 0;
    Mat lift = Mat::Zero(static_cast<Eigen::Index>(blocks) * n, d);
    for (int j = 0; j < d; ++j) {
        Vec f = bm.col(j);
        for (int k = 0; k < n; ++k) {
            Vec w = f;
            if (case_i) {
                const auto hk = f(0) / gvec(0);
                lift(k, j) = hk;
                w -= hk * gvec;
            }
            Vec s = Vec::Zero(n);
            s.head(n - 1) = w.tail(n - 1);
            for (int i = 0; i < ndef; ++i) {
                const auto c = be.col(i).dot(s);
                lift(static_cast<Eigen::Index>(off + i) * n + k, j) = c;
                s -= c * be.col(i);
            }
            f = bm * (bm.adjoint() * s);
        }
    }
    return lift;
}

template <class Mat>
Mat padded_basis(const Subspace& m, int rows) {
    Mat b = Mat::Zero(rows, m.dim());
    b.topRows(m.order()) = FieldOps<Mat>::basis(m);
    return b;
}

template <class Mat>
HittDecomposition hitt_impl(const Subspace& m, double rank_tol) {
    using F = FieldOps<Mat>;
    const TruncatedSeries g = extract_g(m);
    const int n = m.order();
    const Mat gmat = linalg::mult_matrix<Mat>(F::coeffs(g), 2 * n, n, 0);
    const Mat bm_pad = padded_basis<Mat>(m, 2 * n);
    const Mat nb = synthesis_kernel(gmat, bm_pad, rank_tol);
    const Subspace nsub = F::wrap(nb);

    double rep_error = 1.0;
    double iso = 0.0;
    double inv = 0.0;
    int ndef = 0;
    if (nb.cols() > 0) {
        const Mat prod = gmat * nb;
        const Subspace synth =
            orthonormalize_columns(F::storage(Mat(prod.topRows(n))), m.field(), rank_tol);
        rep_error = projector_distance(synth, m);

        for (int j = 0; j < nb.cols(); ++j)
            iso = std::max(iso, std::abs(prod.col(j).norm() - 1.0));
        Rng rng(Rng::mix(kEngineStreamSeed, "hitt-isometry", static_cast<std::uint64_t>(n)));
        for (int t = 0; t < 100; ++t) {
            const auto x = F::random_unit(rng, static_cast<int>(nb.cols()));
            iso = std::max(iso, std::abs((prod * x).norm() - 1.0));
        }

        const Mat tb = linalg::backshifted_cols(nb);
        const Mat ri = tb - nb * (nb.adjoint() * tb);
        inv = linalg::op_norm(ri);
        ndef = defect(nsub, rank_tol).defect;
    }
    return HittDecomposition{g, nsub, rep_error, iso, inv, ndef};
}

template <class Mat>
DefectDecomposition defect_decompose_impl(const Subspace& m, const DefectReport& report,
                                          double rank_tol) {
    using F = FieldOps<Mat>;
    using Vec = typename F::Vec;
    const int ndef = report.defect;
    if (ndef == 0) throw UseHittError("defect_decompose: defect 0, use hitt_decompose");
    if (report.defect_basis.order() != m.order())
        throw DimensionMismatchError("defect_decompose: report order mismatch");

    const int n = m.order();
    const Subspace w = intersect_zH(m, rank_tol);
    const bool case_i = w.dim() < m.dim();
    const int blocks = case_i ? ndef + 1 : ndef;

    Mat a(2 * n, static_cast<Eigen::Index>(blocks) * n);
    std::optional<TruncatedSeries> g;
    int off = 0;
    if (case_i) {
        g = extract_g(m);
        a.leftCols(n) = linalg::mult_matrix<Mat>(F::coeffs(*g), 2 * n, n, 0);
        off = 1;
    }
    const Mat be = F::basis(report.defect_basis);
    for (int i = 0; i < ndef; ++i)
        a.middleCols(static_cast<Eigen::Index>(off + i) * n, n) =
            linalg::mult_matrix<Mat>(Vec(be.col(i)), 2 * n, n, 1);

    // The synthesis operator A always has a wide kernel, so its minimal-norm
    // right inverse is not isometric; the coefficient recursion gives the
    // parametrization the norm identity holds on.
    const Vec gvec = case_i ? Vec(F::coeffs(*g)) : Vec();
    const Mat lift = coefficient_lift<Mat>(F::basis(m), gvec, case_i, be);
    const Mat nb = linalg::orthonormal_range(lift, rank_tol, linalg::RankScale::UnitColumns);
    const StackedSubspace nst{F::wrap(nb), blocks, n};

    double rep_error = 1.0;
    double norm_err = 0.0;
    double inv = 0.0;
    int sdef = 0;
    if (nb.cols() > 0) {
        const Mat prod = a * nb;
        const Subspace synth =
            orthonormalize_columns(F::storage(Mat(prod.topRows(n))), m.field(), rank_tol);
        rep_error = projector_distance(synth, m);

        for (int j = 0; j < nb.cols(); ++j)
            norm_err = std::max(norm_err, std::abs(prod.col(j).squaredNorm() - 1.0));
        Rng rng(Rng::mix(kEngineStreamSeed, "defect-norm-identity",
                         static_cast<std::uint64_t>(n) + blocks));
        for (int t = 0; t < 100; ++t) {
            const auto x = F::random_unit(rng, static_cast<int>(nb.cols()));
            norm_err = std::max(norm_err, std::abs((prod * x).squaredNorm() - 1.0));
        }

        Mat tb(nb.rows(), nb.cols());
        for (int b = 0; b < blocks; ++b)
            tb.middleRows(static_cast<Eigen::Index>(b) * n, n) =
                linalg::backshifted_cols(Mat(nb.middleRows(static_cast<Eigen::Index>(b) * n, n)));
        const Mat ri = tb - nb * (nb.adjoint() * tb);
        inv = linalg::op_norm(ri);
        sdef = static_cast<int>(
            linalg::orthonormal_range(ri, rank_tol, linalg::RankScale::UnitColumns).cols());
    }
    return DefectDecomposition{case_i ? DefectCase::NonVanishing : DefectCase::Vanishing,
                               g,
                               report.defect_basis,
                               nst,
                               rep_error,
                               norm_err,
                               inv,
                               sdef};
}

template <class Mat>
TruncatedSeries beurling_impl(const Subspace& m, BeurlingInfo* info, double rank_tol,
                              double pre_tol, double inner_tol) {
    using F = FieldOps<Mat>;
    const int n = m.order();
    const Mat b = F::basis(m);

    // Shift-invariance can only be checked away from the truncation edge:
    // restrict to the slice of M with negligible top-band coefficients, where
    // multiplication by z is exact.
    const int band = std::min(8, std::max(1, n / 4));
    const Mat vnull = linalg::null_space(Mat(b.bottomRows(band)), 1e-9);
    double shift_res = 0.0;
    if (vnull.cols() > 0) {
        const Mat interior = b * vnull;
        const Mat zint = linalg::shifted_cols(interior);
        const Mat r = zint - b * (b.adjoint() * zint);
        shift_res = linalg::op_norm(r);
    }
    if (info) {
        info->band = band;
        info->shift_invariance_residual = shift_res;
    }
    if (shift_res > pre_tol)
        throw PreconditionError("beurling_extract: shift-invariance residual " +
                                std::to_string(shift_res) + " exceeds " +
                                std::to_string(pre_tol));

    // wandering subspace M ominus zM
    const Mat sm = linalg::orthonormal_range(linalg::shifted_cols(b), rank_tol,
                                             linalg::RankScale::MatrixNorm);
    Mat wand_cols = b;
    if (sm.cols() > 0) wand_cols -= sm * (sm.adjoint() * b);
    const Mat wand =
        linalg::orthonormal_range(wand_cols, rank_tol, linalg::RankScale::UnitColumns);
    if (wand.cols() != 1)
        throw NotCyclicError("beurling_extract: wandering subspace has dimension " +
                             std::to_string(wand.cols()));

    const TruncatedSeries raw = F::series(typename F::Vec(wand.col(0)));
    const auto nrs = normalize_real_symmetric(raw.as_complex());
    const TruncatedSeries theta = (m.field() == Field::Real)
                                      ? TruncatedSeries::from_real(nrs.normalized.coeffs().real())
                                      : nrs.normalized;

    if (info) {
        const Mat resynth_cols = linalg::mult_matrix<Mat>(F::coeffs(theta), n, m.dim(), 0);
        const Subspace resynth =
            orthonormalize_columns(F::storage(resynth_cols), m.field(), rank_tol);
        info->resynthesis_distance = projector_distance(resynth, m);
        info->inner = is_inner(theta, 512, inner_tol);
    }
    return theta;
}

}  // namespace

SeriesTuple StackedSubspace::column_tuple(int j) const {
    if (j < 0 || j >= flat.dim()) throw DimensionMismatchError("column index out of range");
    std::vector<TruncatedSeries> parts;
    parts.reserve(components);
    for (int b = 0; b < components; ++b)
        parts.emplace_back(Eigen::VectorXcd(flat.basis().col(j).segment(
                               static_cast<Eigen::Index>(b) * base_order, base_order)),
                           flat.field());
    return SeriesTuple(std::move(parts));
}

bool is_nearly_invariant(const Subspace& m, double tol) {
    if (m.dim() == 0) throw DegenerateInputError("is_nearly_invariant: zero subspace");
    const Subspace w = intersect_zH(m);
    for (int j = 0; j < w.dim(); ++j)
        if (!contains(m, backshift(w.column(j)), tol)) return false;
    return true;
}

DefectReport defect(const Subspace& m, double rank_tol) {
    if (m.dim() == 0) throw DegenerateInputError("defect: zero subspace");
    return m.field() == Field::Real ? defect_impl<Eigen::MatrixXd>(m, rank_tol, false)
                                    : defect_impl<Eigen::MatrixXcd>(m, rank_tol, false);
}

DefectReport almost_defect(const Subspace& m, double rank_tol) {
    if (m.dim() == 0) throw DegenerateInputError("almost_defect: zero subspace");
    return m.field() == Field::Real ? defect_impl<Eigen::MatrixXd>(m, rank_tol, true)
                                    : defect_impl<Eigen::MatrixXcd>(m, rank_tol, true);
}

TruncatedSeries extract_g(const Subspace& m) {
    if (m.dim() == 0) throw DegenerateInputError("extract_g: zero subspace");
    const Subspace w = intersect_zH(m);
    if (w.dim() == m.dim()) throw CaseTwoError("extract_g: every element of M vanishes at 0");
    const Subspace c = complement_in(m, w);
    if (c.dim() != 1)
        throw InvariantViolation("extract_g: complement dimension " + std::to_string(c.dim()));
    const TruncatedSeries v = c.column(0);
    const Complex v0 = v.coeff(0);
    if (std::abs(v0) < 1e-12)
        throw InvariantViolation("extract_g: extremal vector vanishes at the origin");
    if (m.field() == Field::Real) return v.scaled(v0.real() > 0.0 ? 1.0 : -1.0);
    return v.scaled(std::conj(v0) / std::abs(v0));
}

HittDecomposition hitt_decompose(const Subspace& m, double rank_tol) {
    if (m.dim() == 0) throw DegenerateInputError("hitt_decompose: zero subspace");
    return m.field() == Field::Real ? hitt_impl<Eigen::MatrixXd>(m, rank_tol)
                                    : hitt_impl<Eigen::MatrixXcd>(m, rank_tol);
}

DefectDecomposition defect_decompose(const Subspace& m, const DefectReport& report,
                                     double rank_tol) {
    if (m.dim() == 0) throw DegenerateInputError("defect_decompose: zero subspace");
    return m.field() == Field::Real
               ? defect_decompose_impl<Eigen::MatrixXd>(m, report, rank_tol)
               : defect_decompose_impl<Eigen::MatrixXcd>(m, report, rank_tol);
}

AlmostCharacterization check_almost_characterization(const Subspace& m, double tol,
                                                     double rank_tol) {
    if (m.dim() == 0)
        throw DegenerateInputError("check_almost_characterization: zero subspace");
    AlmostCharacterization out;
    out.tol = tol;
    const DefectReport near = defect(m, rank_tol);
    const DefectReport alm = almost_defect(m, rank_tol);
    out.near_defect = near.defect;
    out.almost_defect = alm.defect;
    const Subspace w = intersect_zH(m, rank_tol);
    out.case_i = w.dim() < m.dim();
    if (!out.case_i) {
        // T*M and T*(M ∩ zH^2) coincide when every element vanishes at 0.
        out.pass = alm.defect == near.defect;
        return out;
    }
    const TruncatedSeries g = extract_g(m);
    const TruncatedSeries tg = backshift(g);
    TruncatedSeries r = tg - project(m, tg);
    if (near.defect > 0) r = r - project(near.defect_basis, r);
    out.g_residual = r.norm();
    out.g_in_extended = out.g_residual <= tol;
    out.pass = out.g_in_extended ? (alm.defect == near.defect)
                                 : (alm.defect == near.defect + 1);
    return out;
}

TruncatedSeries beurling_extract(const Subspace& m, BeurlingInfo* info, double rank_tol,
                                 double pre_tol, double inner_tol) {
    if (m.dim() == 0) throw DegenerateInputError("beurling_extract: zero subspace");
    return m.field() == Field::Real
               ? beurling_impl<Eigen::MatrixXd>(m, info, rank_tol, pre_tol, inner_tol)
               : beurling_impl<Eigen::MatrixXcd>(m, info, rank_tol, pre_tol, inner_tol);
}

ThetaPsiCertificate theta_psi_crosscheck(const Subspace& m, double tol, double rank_tol) {
    if (m.field() != Field::Real)
        throw FieldError("theta_psi_crosscheck: expects a real subspace");
    const HittDecomposition h = hitt_decompose(m, rank_tol);
    ThetaPsiCertificate cert;
    if (h.N.dim() == 0 || h.N.dim() >= m.order()) {
        // N fills the truncated space; there is no proper inner complement.
        cert.proper = false;
        cert.pass = true;
        return cert;
    }
    const Subspace creal = complement_in(Subspace::full(m.order(), Field::Real), h.N, rank_tol);
    const TruncatedSeries psi = beurling_extract(creal, nullptr, rank_tol);

    const Subspace mc = complexify(m);
    const HittDecomposition hc = hitt_decompose(mc, rank_tol);
    if (hc.N.dim() >= m.order()) {
        cert.proper = false;
        cert.pass = true;
        return cert;
    }
    const Subspace cc =
        complement_in(Subspace::full(m.order(), Field::Complex), hc.N, rank_tol);
    const TruncatedSeries theta = beurling_extract(cc, nullptr, rank_tol);

    cert.proper = true;
    cert.theta = theta;
    cert.psi = psi;
    cert.distance = (theta - psi.as_complex()).norm();
    cert.complexification_distance = projector_distance(complexify(h.N), hc.N);
    cert.pass = cert.distance <= tol && cert.complexification_distance <= tol;
    return cert;
}

}  // namespace hardylab
