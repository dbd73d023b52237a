#include "hardylab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "hardylab/engine.hpp"
#include "hardylab/generators.hpp"
#include "hardylab/io.hpp"
#include "hardylab/rng.hpp"

namespace hardylab::suites {

using io::json;

namespace {

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<Certificate> run_indexed(const std::string& suite, int count, int threads,
                                     const std::function<Certificate(int)>& make) {
    std::vector<Certificate> out(count);
    parallel_for(count, threads, [&](int t) {
        try {
            out[t] = make(t);
        } catch (const std::exception& e) {
            Certificate c;
            c.statement = "error";
            c.pass = false;
            c.residuals = json{{"error", e.what()}};
            out[t] = std::move(c);
        }
        out[t].suite = suite;
        out[t].index = t;
    });
    return out;
}

TruncatedSeries random_complex_series(Rng& rng, int order) {
    Eigen::VectorXcd c(order);
    for (int i = 0; i < order; ++i) c(i) = rng.cnormal();
    return TruncatedSeries(std::move(c), Field::Complex);
}

json base_instance(const SuiteConfig& cfg, int trial) {
    return json{{"order", cfg.order}, {"seed", cfg.seed}, {"trial", trial}};
}

// ---- lemma1: <f,h> = <hat h, hat f> ---------------------------------------

std::vector<Certificate> suite_lemma1(const SuiteConfig& cfg) {
    const int trials = cfg.trials > 0 ? cfg.trials : 1000;
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-12;
    return run_indexed("lemma1", trials, cfg.threads, [&](int t) {
        Rng rng = Rng::substream(cfg.seed, "lemma1", static_cast<std::uint64_t>(t));
        const TruncatedSeries f = random_complex_series(rng, cfg.order);
        const TruncatedSeries h = random_complex_series(rng, cfg.order);
        const double deviation = std::abs(inner_product(f, h) - inner_product(hat(h), hat(f)));
        const double bound = tol * f.norm() * h.norm();
        Certificate c;
        c.statement = "inner-product-hat-symmetry";
        c.pass = deviation <= bound;
        c.residuals = json{{"deviation", deviation}};
        c.tolerances = json{{"relative", tol}, {"bound", bound}};
        c.instance = base_instance(cfg, t);
        return c;
    });
}

// ---- lemma2: hat of a model space is the model space of the hat ------------

std::vector<Certificate> suite_lemma2(const SuiteConfig& cfg) {
    const int trials = cfg.trials > 0 ? cfg.trials : 40;
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-6;
    return run_indexed("lemma2", trials, cfg.threads, [&](int t) {
        Rng rng = Rng::substream(cfg.seed, "lemma2", static_cast<std::uint64_t>(t));
        const bool symmetric = t % 2 == 0;
        const int max_degree = std::min(4, std::max(1, cfg.order / 4));
        const BlaschkeSpec spec = sample_blaschke_spec(
            rng, 1, max_degree, modulus_cap(cfg.order, 0.7), symmetric);
        const TruncatedSeries theta = blaschke_series(spec, cfg.order).as_complex();
        const Subspace k = model_space(theta, cfg.order, spec.degree());
        const Subspace k_hat = model_space(hat(theta), cfg.order, spec.degree());
        const double distance = projector_distance(hat_subspace(k), k_hat);
        Certificate c;
        c.statement = "model-space-hat-commutation";
        c.pass = distance <= tol;
        c.residuals = json{{"projector_distance", distance}};
        c.tolerances = json{{"distance", tol}};
        c.instance = base_instance(cfg, t);
        c.instance["spec"] = io::blaschke_to_json(spec);
        c.instance["real_symmetric"] = symmetric;
        return c;
    });
}

// ---- lemma3: the real complement of phi(N) inside phi(N-perp) --------------

std::vector<Certificate> suite_lemma3(const SuiteConfig& cfg) {
    const int trials = cfg.trials > 0 ? cfg.trials : 100;
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-8;
    return run_indexed("lemma3", trials, cfg.threads, [&](int t) {
        Rng rng = Rng::substream(cfg.seed, "lemma3", static_cast<std::uint64_t>(t));
        const bool hat_closed = t % 2 == 1;
        const int dim = rng.uniform_int(1, std::min(8, std::max(1, cfg.order / 4)));
        const std::uint64_t sub = Rng::mix(cfg.seed, "lemma3-subspace", static_cast<std::uint64_t>(t));
        const Subspace n = hat_closed ? sample_hat_closed_subspace(sub, cfg.order, dim)
                                      : random_subspace(sub, cfg.order, dim, Field::Complex);
        const Subspace a =
            complement_in(Subspace::full(cfg.order, Field::Real), symmetrize_subspace(n));
        const Subspace b =
            symmetrize_subspace(complement_in(Subspace::full(cfg.order, Field::Complex), n));
        const double containment = containment_residual(a, b);
        double equality = 0.0;
        bool pass = containment <= tol;
        if (hat_closed) {
            equality = projector_distance(a, b);
            pass = pass && equality <= tol;
        }
        Certificate c;
        c.statement = hat_closed ? "symmetrized-complement-equality"
                                 : "symmetrized-complement-containment";
        c.pass = pass;
        c.residuals = json{{"containment_residual", containment}};
        if (hat_closed) c.residuals["projector_distance"] = equality;
        c.tolerances = json{{"tol", tol}};
        c.instance = base_instance(cfg, t);
        c.instance["dim"] = dim;
        c.instance["hat_closed"] = hat_closed;
        return c;
    });
}

// ---- beurling: wandering-vector extraction round trip ----------------------

std::vector<Certificate> suite_beurling(const SuiteConfig& cfg) {
    const int trials = cfg.trials > 0 ? cfg.trials : 20;
    const double coeff_tol = cfg.tol > 0 ? cfg.tol : 1e-6;
    const double inner_tol = 1e-8;
    return run_indexed("beurling", trials, cfg.threads, [&](int t) {
        Rng rng = Rng::substream(cfg.seed, "beurling", static_cast<std::uint64_t>(t));
        const int max_degree = std::min(3, std::max(1, cfg.order / 4));
        const BlaschkeSpec spec =
            sample_blaschke_spec(rng, 1, max_degree, modulus_cap(cfg.order, 0.7), true);
        const Subspace m = shift_invariant_subspace(spec, cfg.order);
        BeurlingInfo info;
        const TruncatedSeries theta =
            beurling_extract(m, &info, cfg.rank_tol, 1e-6, inner_tol);
        const TruncatedSeries truth =
            normalize_real_symmetric(blaschke_series(spec, cfg.order).as_complex()).normalized;
        const double coeff_err = (theta.as_complex() - truth).norm();
        Certificate c;
        c.statement = "shift-invariant-generator-roundtrip";
        c.pass = coeff_err <= coeff_tol && info.inner.pass &&
                 info.resynthesis_distance <= coeff_tol;
        c.residuals = json{{"coefficient_error", coeff_err},
                           {"resynthesis_distance", info.resynthesis_distance},
                           {"inner_max_deviation", info.inner.max_deviation},
                           {"inner_tail_bound", info.inner.tail_bound},
                           {"shift_invariance_residual", info.shift_invariance_residual}};
        c.tolerances = json{{"coefficient", coeff_tol}, {"inner", inner_tol}};
        c.instance = base_instance(cfg, t);
        c.instance["spec"] = io::blaschke_to_json(spec);
        return c;
    });
}

// ---- hitt: inner-multiplier decomposition + Toeplitz kernels ----------------

InnerMultiplierInstance hitt_suite_instance(const SuiteConfig& cfg, int t,
                                            bool with_certificates) {
    Rng rng = Rng::substream(cfg.seed, "hitt-instance", static_cast<std::uint64_t>(t));
    const double cap = modulus_cap(cfg.order, 0.6);
    const BlaschkeSpec g_spec = sample_multiplier_spec(rng, 2, cap);
    const int max_degree = std::min(3, std::max(1, cfg.order / 4));
    const BlaschkeSpec theta_spec = sample_blaschke_spec(rng, 1, max_degree, cap, true);
    return inner_multiplier_instance(g_spec, theta_spec, cfg.order, cfg.rank_tol,
                                     with_certificates);
}

std::vector<LaurentSymbol> toeplitz_symbols(const SuiteConfig& cfg, int seeded) {
    std::vector<LaurentSymbol> out;
    out.push_back(LaurentSymbol::backward(1));
    out.push_back(LaurentSymbol::backward(2));
    if (cfg.order >= 32) {
        // the canonical mixed symbol needs room for its kernel tails
        LaurentSymbol mixed{2, Eigen::VectorXcd::Zero(5)};
        mixed.coeffs(0) = 1.0;    // c_{-2}
        mixed.coeffs(2) = -0.25;  // c_0
        out.push_back(mixed);
    }
    for (int t = 0; t < seeded; ++t) {
        Rng rng = Rng::substream(cfg.seed, "toeplitz-symbol", static_cast<std::uint64_t>(t));
        out.push_back(sample_toeplitz_symbol(rng, cfg.order));
    }
    return out;
}

std::vector<Certificate> suite_hitt(const SuiteConfig& cfg) {
    const int trials = cfg.trials > 0 ? cfg.trials : 30;
    const double rep_tol = cfg.tol > 0 ? cfg.tol : 1e-6;
    const double iso_tol = 1e-8;
    const auto symbols = toeplitz_symbols(cfg, std::max(4, trials / 3));
    const int total = trials + static_cast<int>(symbols.size());
    return run_indexed("hitt", total, cfg.threads, [&](int t) {
        Certificate c;
        c.instance = base_instance(cfg, t);
        if (t < trials) {
            const InnerMultiplierInstance inst = hitt_suite_instance(cfg, t, true);
            const auto& h = *inst.hitt;
            c.statement = "isometric-multiplier-decomposition";
            c.pass = h.rep_error <= rep_tol && h.isometry_error <= iso_tol &&
                     h.n_defect == 0 && inst.defect_report->defect == 0;
            c.residuals = json{{"rep_error", h.rep_error},
                               {"isometry_error", h.isometry_error},
                               {"invariance_error", h.invariance_error},
                               {"n_defect", h.n_defect},
                               {"near_invariance_defect", inst.defect_report->defect},
                               {"max_product_spill", inst.max_product_spill}};
            c.tolerances = json{{"rep_error", rep_tol},
                                {"isometry_error", iso_tol},
                                {"n_defect", 0},
                                {"rank_tol", cfg.rank_tol}};
            c.instance["g_spec"] = io::blaschke_to_json(inst.g_spec);
            c.instance["theta_spec"] = io::blaschke_to_json(inst.theta_spec);
        } else {
            const LaurentSymbol& symbol = symbols[t - trials];
            const ToeplitzKernelInstance inst =
                toeplitz_kernel(symbol, cfg.order, cfg.rank_tol, rep_tol);
            c.statement = "toeplitz-kernel-near-invariance";
            c.pass = inst.certificate.pass;
            c.residuals = io::near_invariance_to_json(inst.certificate);
            c.tolerances = json{{"residual", rep_tol}, {"rank_tol", cfg.rank_tol}};
            c.instance["symbol"] = io::symbol_to_json(symbol);
        }
        return c;
    });
}

// ---- defect: exact values + decomposition round trips ----------------------

Certificate defect_exact_case(const SuiteConfig& cfg, int t) {
    const int n = cfg.order;
    Certificate c;
    c.statement = "defect-exact-values";
    c.instance = base_instance(cfg, t);
    switch (t) {
        case 0:
        case 1: {
            const int k = t == 0 ? 2 : 3;
            BlaschkeSpec mono;
            mono.monomial_order = k;
            const DefectReport rep = defect(model_space(mono, n), cfg.rank_tol);
            c.pass = rep.defect == 0;
            c.residuals = json{{"defect", rep.defect}};
            c.tolerances = json{{"defect", 0}};
            c.instance["case"] = "model-space-z^" + std::to_string(k);
            return c;
        }
        case 2: {
            // a truncated Blaschke factor needs room for its geometric tail
            BlaschkeSpec spec;
            if (n >= 32)
                spec.zeros = {0.5};
            else
                spec.monomial_order = 1;
            const DefectReport rep = defect(model_space(spec, n), cfg.rank_tol);
            c.pass = rep.defect == 0;
            c.residuals = json{{"defect", rep.defect}};
            c.tolerances = json{{"defect", 0}};
            c.instance["case"] = n >= 32 ? "model-space-blaschke-half" : "model-space-z";
            return c;
        }
        case 3: {
            const Subspace m = Subspace::span_of(TruncatedSeries::monomial(1, n));
            const DefectReport rep = defect(m, cfg.rank_tol);
            const Subspace ones = Subspace::span_of(TruncatedSeries::monomial(0, n));
            const double dist =
                rep.defect == 1 ? projector_distance(rep.defect_basis, ones) : 1.0;
            c.pass = rep.defect == 1 && dist <= 1e-12;
            c.residuals = json{{"defect", rep.defect}, {"basis_distance", dist}};
            c.tolerances = json{{"defect", 1}, {"basis_distance", 1e-12}};
            c.instance["case"] = "span-z";
            return c;
        }
        default: {
            // span{(z+z^2)/sqrt2}: defect direction (2 + z - z^2)/sqrt6, and the
            // one-dimensional vanishing decomposition satisfies the norm identity.
            Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
            v(1) = v(2) = 1.0 / std::sqrt(2.0);
            const Subspace m = Subspace::span_of(TruncatedSeries::from_real(v));
            const DefectReport rep = defect(m, cfg.rank_tol);
            Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
            e(0) = 2.0;
            e(1) = 1.0;
            e(2) = -1.0;
            e /= std::sqrt(6.0);
            const Subspace expected = Subspace::span_of(TruncatedSeries::from_real(e));
            const double dist =
                rep.defect == 1 ? projector_distance(rep.defect_basis, expected) : 1.0;
            // the lifted parameter is sqrt(3)/(2-z); its mass beyond the
            // truncation is 4^{-order}, which bounds the identity deviation
            const double norm_tol = 1e-8 + 4.0 * std::pow(4.0, -n);
            bool pass = rep.defect == 1 && dist <= 1e-10;
            json residuals{{"defect", rep.defect}, {"basis_distance", dist}};
            if (rep.defect >= 1) {
                const DefectDecomposition dd = defect_decompose(m, rep, cfg.rank_tol);
                residuals["rep_error"] = dd.rep_error;
                residuals["norm_identity_error"] = dd.norm_identity_error;
                residuals["case"] = dd.which == DefectCase::Vanishing ? "ii" : "i";
                pass = pass && dd.which == DefectCase::Vanishing && dd.rep_error <= 1e-8 &&
                       dd.norm_identity_error <= norm_tol;
            }
            c.pass = pass;
            c.residuals = residuals;
            c.tolerances = json{{"defect", 1}, {"basis_distance", 1e-10},
                                {"norm_identity_error", norm_tol}};
            c.instance["case"] = "span-(z+z^2)";
            return c;
        }
    }
}

std::vector<Certificate> suite_defect(const SuiteConfig& cfg) {
    const int fixed = 5;
    const int trials = cfg.trials > 0 ? cfg.trials : 30;
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-6;
    return run_indexed("defect", fixed + trials, cfg.threads, [&](int t) {
        if (t < fixed) return defect_exact_case(cfg, t);
        const int rt = t - fixed;
        const int n_defect = std::min(1 + rt % 2, std::max(1, max_defect_for_order(cfg.order)));
        const std::uint64_t sub = Rng::mix(cfg.seed, "defect-roundtrip", static_cast<std::uint64_t>(rt));
        const DefectInstance inst = sample_defect_instance(sub, n_defect, cfg.order, cfg.rank_tol);
        const DefectDecomposition dd = defect_decompose(inst.M, inst.report, cfg.rank_tol);
        Certificate c;
        c.statement = "defect-decomposition-roundtrip";
        c.pass = inst.report.defect <= n_defect && dd.rep_error <= tol &&
                 dd.norm_identity_error <= tol && dd.stacked_defect == 0;
        c.residuals = json{{"defect", inst.report.defect},
                           {"rep_error", dd.rep_error},
                           {"norm_identity_error", dd.norm_identity_error},
                           {"invariance_error", dd.invariance_error},
                           {"stacked_defect", dd.stacked_defect},
                           {"case", dd.which == DefectCase::Vanishing ? "ii" : "i"},
                           {"max_synthesis_spill", inst.max_synthesis_spill}};
        c.tolerances = json{{"max_defect", n_defect},
                            {"rep_error", tol},
                            {"norm_identity_error", tol},
                            {"stacked_defect", 0},
                            {"rank_tol", cfg.rank_tol}};
        c.instance = base_instance(cfg, t);
        c.instance["n"] = n_defect;
        c.instance["instance_seed"] = sub;
        return c;
    });
}

// ---- almost: characterization of almost invariance --------------------------

std::vector<Certificate> suite_almost(const SuiteConfig& cfg) {
    const int fixed = 3;
    const int trials = cfg.trials > 0 ? cfg.trials : 60;
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-8;
    const int half = trials / 2;
    return run_indexed("almost", fixed + trials, cfg.threads, [&](int t) {
        Certificate c;
        c.statement = "almost-invariance-characterization";
        c.instance = base_instance(cfg, t);
        c.tolerances = json{{"tol", tol}, {"rank_tol", cfg.rank_tol}};
        if (t == 0) {
            // span{1+z}: nearly invariant with defect 0, T*g outside M, almost
            // defect exactly 1.
            Eigen::VectorXd v = Eigen::VectorXd::Zero(cfg.order);
            v(0) = v(1) = 1.0 / std::sqrt(2.0);
            const Subspace m = Subspace::span_of(TruncatedSeries::from_real(v));
            const AlmostCharacterization a = check_almost_characterization(m, tol, cfg.rank_tol);
            c.pass = a.pass && a.near_defect == 0 && !a.g_in_extended && a.almost_defect == 1;
            c.residuals = io::almost_to_json(a);
            c.instance["case"] = "span-(1+z)";
            return c;
        }
        if (t == 1) {
            BlaschkeSpec mono;
            mono.monomial_order = 2;
            const AlmostCharacterization a =
                check_almost_characterization(model_space(mono, cfg.order), tol, cfg.rank_tol);
            c.pass = a.pass && a.near_defect == 0 && a.almost_defect == 0;
            c.residuals = io::almost_to_json(a);
            c.instance["case"] = "model-space-z^2";
            return c;
        }
        if (t == 2) {
            const Subspace m = Subspace::span_of(TruncatedSeries::monomial(1, cfg.order));
            const AlmostCharacterization a = check_almost_characterization(m, tol, cfg.rank_tol);
            c.pass = a.pass && !a.case_i && a.near_defect == 1;
            c.residuals = io::almost_to_json(a);
            c.instance["case"] = "span-z";
            return c;
        }
        const int rt = t - fixed;
        Subspace m = Subspace::zero(cfg.order);
        if (rt < half) {
            m = hitt_suite_instance(cfg, rt, false).M;
            c.instance["family"] = "inner-multiplier";
            c.instance["trial"] = rt;
        } else {
            const int dt = rt - half;
            const std::uint64_t sub =
                Rng::mix(cfg.seed, "defect-roundtrip", static_cast<std::uint64_t>(dt));
            const int nd = std::min(1 + dt % 2, std::max(1, max_defect_for_order(cfg.order)));
            m = sample_defect_instance(sub, nd, cfg.order, cfg.rank_tol).M;
            c.instance["family"] = "defect-instance";
            c.instance["trial"] = dt;
        }
        const AlmostCharacterization a = check_almost_characterization(m, tol, cfg.rank_tol);
        c.pass = a.pass;
        c.residuals = io::almost_to_json(a);
        return c;
    });
}

// ---- theta-psi: real and complexified inner generators agree ----------------

std::vector<Certificate> suite_theta_psi(const SuiteConfig& cfg) {
    const int trials = cfg.trials > 0 ? cfg.trials : 10;
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-6;
    return run_indexed("theta-psi", trials, cfg.threads, [&](int t) {
        const InnerMultiplierInstance inst = hitt_suite_instance(cfg, t, false);
        const ThetaPsiCertificate tp = theta_psi_crosscheck(inst.M, tol, cfg.rank_tol);
        Certificate c;
        c.statement = "inner-generator-field-agreement";
        c.pass = tp.proper && tp.pass;
        c.residuals = json{{"distance", tp.distance},
                           {"complexification_distance", tp.complexification_distance},
                           {"proper", tp.proper}};
        c.tolerances = json{{"distance", tol}};
        c.instance = base_instance(cfg, t);
        c.instance["g_spec"] = io::blaschke_to_json(inst.g_spec);
        c.instance["theta_spec"] = io::blaschke_to_json(inst.theta_spec);
        return c;
    });
}

}  // namespace

json Certificate::to_json() const {
    return json{{"suite", suite},         {"index", index}, {"statement", statement},
                {"pass", pass},           {"residuals", residuals},
                {"tolerances", tolerances}, {"instance", instance}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"lemma1",  "lemma2", "lemma3",
                                                   "beurling", "hitt",  "defect",
                                                   "almost",  "theta-psi"};
    return names;
}

bool is_suite_name(const std::string& name) {
    for (const auto& n : suite_names())
        if (n == name) return true;
    return false;
}

std::vector<Certificate> run_suite(const std::string& name, const SuiteConfig& config) {
    if (name == "lemma1") return suite_lemma1(config);
    if (name == "lemma2") return suite_lemma2(config);
    if (name == "lemma3") return suite_lemma3(config);
    if (name == "beurling") return suite_beurling(config);
    if (name == "hitt") return suite_hitt(config);
    if (name == "defect") return suite_defect(config);
    if (name == "almost") return suite_almost(config);
    if (name == "theta-psi") return suite_theta_psi(config);
    throw DomainError("unknown suite: " + name);
}

std::vector<Certificate> run_all(const SuiteConfig& config) {
    std::vector<Certificate> out;
    for (const auto& name : suite_names()) {
        auto certs = run_suite(name, config);
        out.insert(out.end(), std::make_move_iterator(certs.begin()),
                   std::make_move_iterator(certs.end()));
    }
    return out;
}

}  // namespace hardylab::suites
