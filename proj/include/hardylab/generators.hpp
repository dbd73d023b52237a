#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hardylab/engine.hpp"
#include "hardylab/inner.hpp"
#include "hardylab/rng.hpp"
#include "hardylab/series.hpp"
#include "hardylab/subspace.hpp"

namespace hardylab {

/// A trigonometric polynomial symbol c_{-K} zbar^K + ... + c_K z^K.
struct LaurentSymbol {
    int half_width = 0;          // K
    Eigen::VectorXcd coeffs;     // length 2K+1, index k + K holds c_k

    Complex coeff(int k) const;  // 0 outside [-K, K]
    bool is_real() const;
    static LaurentSymbol backward(int k = 1);  // c_{-k} = 1
    static LaurentSymbol forward(int k = 1);   // c_k = 1
};

struct NearInvarianceCertificate {
    bool pass = false;
    double residual = 0.0;  // invariance residual on the guard-banded slice
    int band = 0;           // width of the masked top band
    double tol = 0.0;
    int kernel_dim = 0;
};

struct ToeplitzKernelInstance {
    Subspace kernel;
    NearInvarianceCertificate certificate;
};

struct InnerMultiplierInstance {
    Subspace M;
    TruncatedSeries g;
    Subspace model;  // the model space of theta used in the synthesis
    BlaschkeSpec g_spec;
    BlaschkeSpec theta_spec;
    double max_product_spill = 0.0;
    std::optional<DefectReport> defect_report;  // defect 0 certifies near-invariance
    std::optional<HittDecomposition> hitt;      // verification triple for the instance
};

struct DefectInstance {
    Subspace M;
    std::optional<TruncatedSeries> g;
    std::vector<TruncatedSeries> e_list;
    StackedSubspace N;
    DefectReport report;  // asserts defect(M) <= n
    double max_synthesis_spill = 0.0;
};

/// Model space of an inner function: the complement of span{theta z^j} within
/// the order-N space. `degree` is the dimension of the true model space
/// (zeros plus monomial order); when negative it is inferred from the highest
/// significant coefficient, which is only valid for monomial inner functions.
Subspace model_space(const TruncatedSeries& theta, int order, int degree = -1);

/// Model space directly from a Blaschke spec (degree and tail bound known).
Subspace model_space(const BlaschkeSpec& spec, int order);

/// Truncated span of {theta z^j : j = 0..order-1-degree}: the shift-invariant
/// subspace theta H^2 at truncation.
Subspace shift_invariant_subspace(const BlaschkeSpec& spec, int order);

/// Kernel of the truncated Toeplitz matrix T[i,j] = c_{i-j}, with a
/// near-invariance certificate evaluated on the guard-banded slice.
ToeplitzKernelInstance toeplitz_kernel(const LaurentSymbol& symbol, int order,
                                       double rank_tol = default_rank_tol(),
                                       double cert_tol = 1e-6);

/// M = g * model_space(theta) for a real-symmetric inner multiplier g with
/// g(0) > 0; the canonical nearly invariant example family. with_certificates
/// controls whether the defect report and decomposition triple are attached.
InnerMultiplierInstance inner_multiplier_instance(const BlaschkeSpec& g_spec,
                                                  const BlaschkeSpec& theta_spec, int order,
                                                  double rank_tol = default_rank_tol(),
                                                  bool with_certificates = true);

/// Synthesize M = {g h + z sum h_i e_i} over a stacked backward-shift
/// invariant parameter space. The e_i must be orthonormal and come out
/// orthogonal to M (checked; RejectedInstanceError otherwise).
DefectInstance defect_instance(const std::optional<TruncatedSeries>& g,
                               const std::vector<TruncatedSeries>& e_list,
                               const StackedSubspace& n_stacked, int order,
                               double rank_tol = default_rank_tol());

/// Orthonormalized Gaussian columns from a deterministic stream; identical
/// seeds give bit-identical bases.
Subspace random_subspace(std::uint64_t seed, int order, int dim, Field field = Field::Real);

// Seeded samplers used by the verification suites. All draw through named
// substreams of the given seed, so instances are reproducible in isolation.

/// Largest zero modulus whose geometric tail stays near 1e-9 at this
/// truncation order, capped by `ceiling`. Below 0.15 the samplers fall back
/// to monomial inner functions (exact at every order).
double modulus_cap(int order, double ceiling);

/// Largest defect the banded monomial synthesis of sample_defect_instance can
/// fit at this order.
int max_defect_for_order(int order);

/// Random Blaschke spec of degree in [min_degree, max_degree], zero moduli
/// <= max_modulus; real-symmetric on request (conjugate-paired zeros).
/// max_modulus below 0.15 yields a pure monomial spec.
BlaschkeSpec sample_blaschke_spec(Rng& rng, int min_degree, int max_degree,
                                  double max_modulus, bool real_symmetric,
                                  bool allow_monomial = true);

/// Real-symmetric multiplier spec with g(0) > 0 (no monomial factor).
BlaschkeSpec sample_multiplier_spec(Rng& rng, int max_degree, double max_modulus);

/// Random complex subspace that is closed under the hat involution.
Subspace sample_hat_closed_subspace(std::uint64_t seed, int order, int dim);

/// Stacked-invariant defect instance of defect at most n.
DefectInstance sample_defect_instance(std::uint64_t seed, int n, int order,
                                      double rank_tol = default_rank_tol());

/// Random Laurent symbol with anti-analytic part, small half-width; the kind
/// whose truncated Toeplitz kernels are nontrivial. The analytic coefficient
/// is kept small enough that the kernel decays within the order.
LaurentSymbol sample_toeplitz_symbol(Rng& rng, int order);

}  // namespace hardylab
