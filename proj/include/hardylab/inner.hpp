#pragma once

#include <complex>
#include <vector>

#include "hardylab/series.hpp"

namespace hardylab {

/// A finite Blaschke product times a monomial:
/// front * z^k * prod_j (a_j - z)/(1 - conj(a_j) z), all |a_j| < 1, |front| = 1.
struct BlaschkeSpec {
    std::vector<Complex> zeros;
    Complex front = 1.0;
    int monomial_order = 0;

    /// Number of zeros plus the monomial order; the dimension of the model space.
    int degree() const { return static_cast<int>(zeros.size()) + monomial_order; }
    /// True iff the zero multiset is closed under conjugation and front is +-1.
    bool real_symmetric() const;
    /// Largest zero modulus (0 when there are no zeros).
    double max_zero_modulus() const;
    /// Sort zeros by modulus then argument for reproducible serialization.
    void canonicalize();
    /// Spec of the hat of the product: conjugated zeros and front.
    BlaschkeSpec conjugated() const;
    /// Throws DomainError / InvariantViolation when the invariants fail.
    void validate() const;
};

/// Taylor coefficients of the product to the given order, by repeated
/// power-series division. Real-field output for a real-symmetric spec
/// (conjugate pairs are combined into real quadratic factors, so the
/// imaginary parts are exactly zero).
TruncatedSeries blaschke_series(const BlaschkeSpec& spec, int order);

/// l2 mass of the coefficients of the product beyond `order` (computed from an
/// extended expansion plus a geometric remainder bound).
double blaschke_tail_bound(const BlaschkeSpec& spec, int order);

struct InnerCertificate {
    bool pass = false;
    double max_deviation = 0.0;  // max | |f(e^it)| - 1 | over the grid
    double tail_bound = 0.0;     // mass of the series beyond the truncation order
    int grid_size = 0;
};

/// Certify innerness by boundary sampling plus a tail estimate. When the
/// caller knows the tail mass (e.g. from a BlaschkeSpec) it passes it as
/// tail_bound_hint; otherwise the tail is estimated from the trailing
/// coefficients' geometric decay.
InnerCertificate is_inner(const TruncatedSeries& f, int grid_size, double tol,
                          double tail_bound_hint = -1.0);

struct RealSymmetricNormalization {
    Complex lambda;             // unimodular; normalized = lambda * f
    TruncatedSeries normalized; // first significant coefficient real positive
    bool real_symmetric = false;
};

/// Rotate f by a unimodular scalar so its first significant coefficient is
/// real positive; flags whether the result is hat-symmetric within tol.
RealSymmetricNormalization normalize_real_symmetric(const TruncatedSeries& f,
                                                    double tol = 1e-10);

/// ||f - hat(f)|| <= tol * ||f||.
bool is_hat_symmetric(const TruncatedSeries& f, double tol);

}  // namespace hardylab
