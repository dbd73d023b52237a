#include "hardylab/generators.hpp"

#include <cmath>

#include "hardylab/linalg.hpp"

namespace hardylab {

namespace {

Eigen::MatrixXcd shift_span_columns(const TruncatedSeries& theta, int order, int count) {
    return linalg::mult_matrix<Eigen::MatrixXcd>(theta.coeffs(), order, count, 0);
}

TruncatedSeries monomial_series(int k, int order) {
    return TruncatedSeries::monomial(k, order);
}

}  // namespace

Complex LaurentSymbol::coeff(int k) const {
    if (k < -half_width || k > half_width) return 0.0;
    return coeffs(k + half_width);
}

bool LaurentSymbol::is_real() const {
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
        if (coeffs(i).imag() != 0.0) return false;
    return true;
}

LaurentSymbol LaurentSymbol::backward(int k) {
    LaurentSymbol s{k, Eigen::VectorXcd::Zero(2 * k + 1)};
    s.coeffs(0) = 1.0;
    return s;
}

LaurentSymbol LaurentSymbol::forward(int k) {
    LaurentSymbol s{k, Eigen::VectorXcd::Zero(2 * k + 1)};
    s.coeffs(2 * k) = 1.0;
    return s;
}

Subspace model_space(const TruncatedSeries& theta, int order, int degree) {
    if (theta.order() != order)
        throw DimensionMismatchError("model_space: theta order mismatch");
    const InnerCertificate cert = is_inner(theta, 256, 1e-6);
    if (!cert.pass)
        throw PreconditionError("model_space: theta failed the innerness certificate "
                                "(deviation " + std::to_string(cert.max_deviation) +
                                ", tail " + std::to_string(cert.tail_bound) + ")");
    if (degree < 0) {
        // Only monomial inner functions carry their degree in the coefficients.
        degree = 0;
        for (int k = 0; k < order; ++k)
            if (std::abs(theta.coeff(k)) > 1e-9 * theta.norm()) degree = k;
    }
    const int count = order - degree;
    if (count <= 0) return Subspace::full(order, theta.field());
    const Subspace span =
        orthonormalize_columns(shift_span_columns(theta, order, count), theta.field());
    Subspace model = complement_in(Subspace::full(order, theta.field()), span);
    if (model.dim() != degree)
        throw InvariantViolation("model_space: expected dimension " + std::to_string(degree) +
                                 ", got " + std::to_string(model.dim()));
    return model;
}

Subspace model_space(const BlaschkeSpec& spec, int order) {
    const TruncatedSeries theta = blaschke_series(spec, order);
    const double tail = blaschke_tail_bound(spec, order);
    const InnerCertificate cert = is_inner(theta, 256, 1e-6, tail);
    if (!cert.pass)
        throw PreconditionError("model_space: spec failed the innerness certificate");
    const int count = order - spec.degree();
    if (count <= 0) return Subspace::full(order, theta.field());
    const Subspace span =
        orthonormalize_columns(shift_span_columns(theta, order, count), theta.field());
    Subspace model = complement_in(Subspace::full(order, theta.field()), span);
    if (model.dim() != spec.degree())
        throw InvariantViolation("model_space: unexpected dimension");
    return model;
}

Subspace shift_invariant_subspace(const BlaschkeSpec& spec, int order) {
    const TruncatedSeries theta = blaschke_series(spec, order);
    const int count = order - spec.degree();
    if (count <= 0) return Subspace::zero(order, theta.field());
    return orthonormalize_columns(shift_span_columns(theta, order, count), theta.field());
}

ToeplitzKernelInstance toeplitz_kernel(const LaurentSymbol& symbol, int order, double rank_tol,
                                       double cert_tol) {
    if (symbol.coeffs.size() != 2 * symbol.half_width + 1)
        throw DimensionMismatchError("toeplitz_kernel: malformed symbol");
    if (symbol.coeffs.norm() == 0.0)
        throw DegenerateInputError("toeplitz_kernel: zero symbol");

    const Field field = symbol.is_real() ? Field::Real : Field::Complex;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(order, order);
    for (int i = 0; i < order; ++i)
        for (int j = std::max(0, i - symbol.half_width);
             j <= std::min(order - 1, i + symbol.half_width); ++j)
            t(i, j) = symbol.coeff(i - j);

    Subspace kernel = Subspace::zero(order, field);
    if (field == Field::Real) {
        Eigen::MatrixXd null = linalg::null_space(Eigen::MatrixXd(t.real()), rank_tol,
                                                  linalg::RankScale::MatrixNorm);
        kernel = Subspace(null.cast<Complex>(), Field::Real);
    } else {
        Eigen::MatrixXcd null = linalg::null_space(t, rank_tol, linalg::RankScale::MatrixNorm);
        kernel = Subspace(std::move(null), Field::Complex);
    }

    // The top rows of the truncated matrix misrepresent the operator, so the
    // invariance certificate is evaluated only on kernel elements with
    // negligible top-band mass.
    NearInvarianceCertificate cert;
    cert.band = std::max(4, order / 8);
    cert.tol = cert_tol;
    cert.kernel_dim = kernel.dim();
    if (kernel.dim() > 0) {
        const Subspace w = intersect_zH(kernel, rank_tol);
        if (w.dim() > 0) {
            const Eigen::MatrixXcd bw = w.basis();
            const Eigen::MatrixXcd vnull =
                linalg::null_space(Eigen::MatrixXcd(bw.bottomRows(cert.band)), 1e-9);
            if (vnull.cols() > 0) {
                const Eigen::MatrixXcd banded = bw * vnull;
                const Eigen::MatrixXcd tw = linalg::backshifted_cols(banded);
                const Eigen::MatrixXcd bk = kernel.basis();
                const Eigen::MatrixXcd r = tw - bk * (bk.adjoint() * tw);
                cert.residual = linalg::op_norm(r);
            }
        }
    }
    cert.pass = cert.residual <= cert_tol;
    return ToeplitzKernelInstance{std::move(kernel), cert};
}

InnerMultiplierInstance inner_multiplier_instance(const BlaschkeSpec& g_spec,
                                                  const BlaschkeSpec& theta_spec, int order,
                                                  double rank_tol, bool with_certificates) {
    if (!g_spec.real_symmetric())
        throw PreconditionError("inner_multiplier_instance: g spec is not real-symmetric");
    if (!theta_spec.real_symmetric())
        throw PreconditionError("inner_multiplier_instance: theta spec is not real-symmetric");
    const TruncatedSeries g = blaschke_series(g_spec, order);
    if (evaluate(g, 0.0).real() <= 0.0)
        throw SignError("inner_multiplier_instance: g(0) <= 0");

    const Subspace model = model_space(theta_spec, order);
    std::vector<TruncatedSeries> products;
    double max_spill = 0.0;
    products.reserve(model.dim());
    for (int j = 0; j < model.dim(); ++j) {
        TruncatedSeries p = multiply(g, model.column(j), order);
        max_spill = std::max(max_spill, p.spill());
        products.push_back(std::move(p));
    }
    Subspace m = orthonormalize(products, rank_tol, order, Field::Real);

    InnerMultiplierInstance inst{std::move(m), g,          model,    g_spec,
                                 theta_spec,   max_spill,  std::nullopt, std::nullopt};
    if (with_certificates) {
        inst.defect_report = defect(inst.M, rank_tol);
        inst.hitt = hitt_decompose(inst.M, rank_tol);
    }
    return inst;
}

DefectInstance defect_instance(const std::optional<TruncatedSeries>& g,
                               const std::vector<TruncatedSeries>& e_list,
                               const StackedSubspace& n_stacked, int order, double rank_tol) {
    const int n = static_cast<int>(e_list.size());
    if (n == 0) throw DimensionMismatchError("defect_instance: empty defect basis");
    for (const auto& e : e_list)
        if (e.order() != order || e.field() != Field::Real)
            throw DimensionMismatchError("defect_instance: e_list entries must be real, given order");
    Eigen::MatrixXd emat(order, n);
    for (int i = 0; i < n; ++i) emat.col(i) = e_list[i].coeffs().real();
    const double gram_err =
        (emat.transpose() * emat - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (gram_err > 1e-8)
        throw PreconditionError("defect_instance: e_list is not orthonormal");

    const int blocks = g ? n + 1 : n;
    if (n_stacked.components != blocks || n_stacked.base_order != order ||
        n_stacked.flat.field() != Field::Real)
        throw DimensionMismatchError("defect_instance: stacked space shape mismatch");
    if (g && (g->order() != order || g->field() != Field::Real))
        throw DimensionMismatchError("defect_instance: g must be real with the given order");

    // stacked backward-shift invariance of the parameter space
    const Eigen::MatrixXd bst = n_stacked.flat.basis().real();
    if (bst.cols() == 0) throw DegenerateInputError("defect_instance: zero parameter space");
    Eigen::MatrixXd tb(bst.rows(), bst.cols());
    for (int b = 0; b < blocks; ++b)
        tb.middleRows(static_cast<Eigen::Index>(b) * order, order) = linalg::backshifted_cols(
            Eigen::MatrixXd(bst.middleRows(static_cast<Eigen::Index>(b) * order, order)));
    const Eigen::MatrixXd inv_res = tb - bst * (bst.transpose() * tb);
    if (linalg::op_norm(inv_res) > 1e-6)
        throw PreconditionError("defect_instance: parameter space is not stacked invariant");

    Eigen::MatrixXd a(2 * order, static_cast<Eigen::Index>(blocks) * order);
    int off = 0;
    if (g) {
        a.leftCols(order) =
            linalg::mult_matrix<Eigen::MatrixXd>(Eigen::VectorXd(g->coeffs().real()), 2 * order,
                                                 order, 0);
        off = 1;
    }
    for (int i = 0; i < n; ++i)
        a.middleCols(static_cast<Eigen::Index>(off + i) * order, order) =
            linalg::mult_matrix<Eigen::MatrixXd>(Eigen::VectorXd(emat.col(i)), 2 * order, order,
                                                 1);

    const Eigen::MatrixXd synth = a * bst;
    double max_spill = 0.0;
    for (Eigen::Index j = 0; j < synth.cols(); ++j)
        max_spill = std::max(max_spill, synth.col(j).tail(order).norm());
    const Eigen::MatrixXd cols = synth.topRows(order);
    Subspace m = orthonormalize_columns(cols.cast<Complex>(), Field::Real, rank_tol);
    if (m.dim() == 0) throw DegenerateInputError("defect_instance: synthesized zero subspace");

    const double ortho = (m.basis().real().transpose() * emat).cwiseAbs().maxCoeff();
    if (ortho > 1e-8)
        throw RejectedInstanceError("defect_instance: defect directions not orthogonal to M "
                                    "(overlap " + std::to_string(ortho) + ")");

    DefectReport report = defect(m, rank_tol);
    if (report.defect > n)
        throw RejectedInstanceError("defect_instance: synthesized defect exceeds n");
    return DefectInstance{std::move(m), g, e_list, n_stacked, std::move(report), max_spill};
}

Subspace random_subspace(std::uint64_t seed, int order, int dim, Field field) {
    if (dim > order) throw DimensionMismatchError("random_subspace: dim exceeds order");
    if (dim == 0) return Subspace::zero(order, field);
    Rng rng = Rng::substream(seed, "random_subspace", 0);
    Eigen::MatrixXcd cols(order, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < order; ++i)
            cols(i, j) = field == Field::Real ? Complex(rng.normal(), 0.0) : rng.cnormal();
    return orthonormalize_columns(cols, field);
}

double modulus_cap(int order, double ceiling) {
    const int exponent = std::max(4, order - 12);
    return std::min(ceiling, std::pow(1e-9, 1.0 / exponent));
}

int max_defect_for_order(int order) {
    const int k_cap = std::max(1, std::min(3, order / 4));
    const int spacing = k_cap + 2;
    const int m1 = order / 2;
    if (m1 + k_cap + 2 > order) return 0;
    return 1 + (order - 2 - k_cap - m1) / spacing;
}

BlaschkeSpec sample_blaschke_spec(Rng& rng, int min_degree, int max_degree, double max_modulus,
                                  bool real_symmetric, bool allow_monomial) {
    const int total = rng.uniform_int(min_degree, max_degree);
    BlaschkeSpec spec;
    if (max_modulus < 0.15) {
        // geometric tails cannot decay within the order; stay exact
        spec.monomial_order = total;
        spec.front = real_symmetric ? Complex(rng.coin() ? 1.0 : -1.0)
                                    : std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
        return spec;
    }
    if (allow_monomial && total > 0 && rng.coin(0.25))
        spec.monomial_order = rng.uniform_int(0, std::min(total, 2));
    int budget = total - spec.monomial_order;
    if (real_symmetric) {
        while (budget > 0) {
            if (budget >= 2 && rng.coin(0.5)) {
                const double r = rng.uniform(0.1, max_modulus);
                const double phi = rng.uniform(0.15 * M_PI, 0.85 * M_PI);
                const Complex a = std::polar(r, phi);
                spec.zeros.push_back(a);
                spec.zeros.push_back(std::conj(a));
                budget -= 2;
            } else {
                const double r = rng.uniform(0.1, max_modulus);
                spec.zeros.push_back(rng.coin() ? r : -r);
                budget -= 1;
            }
        }
        spec.front = rng.coin() ? 1.0 : -1.0;
    } else {
        for (; budget > 0; --budget)
            spec.zeros.push_back(std::polar(rng.uniform(0.1, max_modulus),
                                            rng.uniform(0.0, 2.0 * M_PI)));
        spec.front = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
    }
    spec.canonicalize();
    return spec;
}

BlaschkeSpec sample_multiplier_spec(Rng& rng, int max_degree, double max_modulus) {
    BlaschkeSpec spec = sample_blaschke_spec(rng, 0, max_degree, max_modulus, true, false);
    spec.monomial_order = 0;
    Complex prod = 1.0;
    for (Complex a : spec.zeros) prod *= a;
    // the product is real for a conjugate-closed multiset; the sign of the
    // front constant makes g(0) = front * prod positive
    spec.front = (spec.zeros.empty() || prod.real() > 0.0) ? 1.0 : -1.0;
    return spec;
}

Subspace sample_hat_closed_subspace(std::uint64_t seed, int order, int dim) {
    if (dim > order) throw DimensionMismatchError("sample_hat_closed_subspace: dim > order");
    Rng rng = Rng::substream(seed, "hat-closed-subspace", 0);
    Eigen::MatrixXcd cols(order, dim);
    int j = 0;
    while (j + 1 < dim) {
        Eigen::VectorXcd v(order);
        for (int i = 0; i < order; ++i) v(i) = rng.cnormal();
        cols.col(j) = v;
        cols.col(j + 1) = v.conjugate();
        j += 2;
    }
    if (j < dim) {
        Eigen::VectorXcd v(order);
        for (int i = 0; i < order; ++i) v(i) = Complex(rng.normal(), 0.0);
        cols.col(j) = v;
    }
    return orthonormalize_columns(cols, Field::Complex);
}

DefectInstance sample_defect_instance(std::uint64_t seed, int n, int order, double rank_tol) {
    if (n < 1) throw DomainError("sample_defect_instance: n must be at least 1");
    Rng rng = Rng::substream(seed, "defect-instance", static_cast<std::uint64_t>(n));
    // rich instances use Blaschke components whose tails need room to decay;
    // otherwise everything is a monomial band and the construction is exact
    const bool rich = order >= 96 && n <= 2;
    const int k_cap = std::max(1, std::min(3, order / 4));
    const int k0_cap = std::max(1, std::min(4, order / 4));

    const int spacing = rich ? 32 : k_cap + 2;
    int m1 = order / 2 - rng.uniform_int(0, std::min(4, order / 16));
    m1 = std::max(m1, k0_cap + 1);
    if (m1 + spacing * (n - 1) + k_cap + 1 > order - 1)
        throw DomainError("sample_defect_instance: order too small for this defect");

    std::vector<TruncatedSeries> e_list;
    for (int i = 0; i < n; ++i) e_list.push_back(monomial_series(m1 + spacing * i, order));

    const bool case_i = rng.coin(0.75);
    std::optional<TruncatedSeries> g;
    std::vector<Subspace> parts;
    if (case_i) {
        BlaschkeSpec g_spec;  // identity multiplier unless the band is wide enough
        if (rich) g_spec = sample_multiplier_spec(rng, 2, 0.45);
        g = blaschke_series(g_spec, order);
        if (rich && rng.coin(0.4)) {
            parts.push_back(model_space(sample_blaschke_spec(rng, 1, 2, 0.45, true, false), order));
        } else {
            BlaschkeSpec mono;
            mono.monomial_order = rng.uniform_int(1, k0_cap);
            parts.push_back(model_space(mono, order));
        }
    }
    for (int i = 0; i < n; ++i) {
        if (rich && rng.coin(0.3)) {
            parts.push_back(model_space(sample_blaschke_spec(rng, 1, 1, 0.45, true, false), order));
        } else {
            BlaschkeSpec mono;
            mono.monomial_order = rng.uniform_int(1, k_cap);
            parts.push_back(model_space(mono, order));
        }
    }

    const int blocks = static_cast<int>(parts.size());
    int total_dim = 0;
    for (const auto& p : parts) total_dim += p.dim();
    Eigen::MatrixXcd flat =
        Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(blocks) * order, total_dim);
    int col = 0;
    for (int b = 0; b < blocks; ++b) {
        flat.block(static_cast<Eigen::Index>(b) * order, col, order, parts[b].dim()) =
            parts[b].basis();
        col += parts[b].dim();
    }
    const StackedSubspace nst{Subspace(std::move(flat), Field::Real), blocks, order};
    return defect_instance(g, e_list, nst, order, rank_tol);
}

LaurentSymbol sample_toeplitz_symbol(Rng& rng, int order) {
    const int k = rng.uniform_int(1, 2);
    LaurentSymbol s{k, Eigen::VectorXcd::Zero(2 * k + 1)};
    s.coeffs(0) = 1.0;  // c_{-K}
    // kernel elements decay like |c_0|^{1/K}; keep that inside the cap
    const double reach = std::pow(modulus_cap(order, 0.75), k);
    const double c0_cap = std::min(0.35, reach);
    s.coeffs(k) = rng.uniform(-c0_cap, c0_cap);  // c_0
    if (k == 2 && rng.coin(0.5)) s.coeffs(1) = rng.uniform(-0.2, 0.2) * c0_cap;  // c_{-1}
    return s;
}

}  // namespace hardylab
