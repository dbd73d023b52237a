#include "hardylab/inner.hpp"

#include <algorithm>
#include <cmath>

namespace hardylab {

namespace {

constexpr double kUnimodularTol = 1e-12;

// Multiply the working series by (a - z), then divide by (1 - conj(a) z):
// division recurrence c_n = b_n + conj(a) c_{n-1}.
void apply_factor(Eigen::VectorXcd& c, Complex a) {
    const Complex abar = std::conj(a);
    Complex prev_c = 0.0;   // c_{n-1} of the input
    Complex prev_out = 0.0; // c_{n-1} of the output
    for (Eigen::Index n = 0; n < c.size(); ++n) {
        const Complex b = a * c(n) - prev_c;
        prev_c = c(n);
        c(n) = b + abar * prev_out;
        prev_out = c(n);
    }
}

// Real factor pair: multiply by (p0 + p1 z + z^2), divide by (1 + q1 z + q2 z^2).
// Entirely real arithmetic so real-symmetric specs give exactly real output.
void apply_real_quadratic(Eigen::VectorXd& c, double p0, double p1, double q1, double q2) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(c.size());
    for (Eigen::Index n = 0; n < c.size(); ++n) {
        b(n) = p0 * c(n);
        if (n >= 1) b(n) += p1 * c(n - 1);
        if (n >= 2) b(n) += c(n - 2);
    }
    for (Eigen::Index n = 0; n < c.size(); ++n) {
        c(n) = b(n);
        if (n >= 1) c(n) -= q1 * c(n - 1);
        if (n >= 2) c(n) -= q2 * c(n - 2);
    }
}

void apply_real_linear(Eigen::VectorXd& c, double a) {
    double prev_c = 0.0, prev_out = 0.0;
    for (Eigen::Index n = 0; n < c.size(); ++n) {
        const double b = a * c(n) - prev_c;
        prev_c = c(n);
        c(n) = b + a * prev_out;
        prev_out = c(n);
    }
}

Eigen::VectorXcd series_complex(const BlaschkeSpec& spec, int order) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(order);
    c(spec.monomial_order) = spec.front;
    for (Complex a : spec.zeros) apply_factor(c, a);
    return c;
}

Eigen::VectorXd series_real(const BlaschkeSpec& spec, int order) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(order);
    c(spec.monomial_order) = spec.front.real();
    std::vector<Complex> upper;
    for (Complex a : spec.zeros) {
        if (a.imag() == 0.0)
            apply_real_linear(c, a.real());
        else if (a.imag() > 0.0)
            upper.push_back(a);
    }
    for (Complex a : upper) {
        const double m2 = std::norm(a);
        const double tr = 2.0 * a.real();
        apply_real_quadratic(c, m2, -tr, -tr, m2);
    }
    return c;
}

}  // namespace

bool BlaschkeSpec::real_symmetric() const {
    if (front.imag() != 0.0 || std::abs(front.real()) != 1.0) return false;
    std::vector<Complex> pool(zeros.begin(), zeros.end());
    while (!pool.empty()) {
        const Complex a = pool.back();
        pool.pop_back();
        if (a.imag() == 0.0) continue;
        auto it = std::find(pool.begin(), pool.end(), std::conj(a));
        if (it == pool.end()) return false;  // unpaired complex zero
        pool.erase(it);
    }
    return true;
}

double BlaschkeSpec::max_zero_modulus() const {
    double r = 0.0;
    for (Complex a : zeros) r = std::max(r, std::abs(a));
    return r;
}

void BlaschkeSpec::canonicalize() {
    std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return std::arg(a) < std::arg(b);
    });
}

BlaschkeSpec BlaschkeSpec::conjugated() const {
    BlaschkeSpec out = *this;
    for (Complex& a : out.zeros) a = std::conj(a);
    out.front = std::conj(out.front);
    return out;
}

void BlaschkeSpec::validate() const {
    for (Complex a : zeros)
        if (!(std::abs(a) < 1.0)) throw DomainError("Blaschke zero outside the open disk");
    if (std::abs(std::abs(front) - 1.0) > kUnimodularTol)
        throw InvariantViolation("Blaschke front constant is not unimodular");
    if (monomial_order < 0) throw InvariantViolation("negative monomial order");
}

TruncatedSeries blaschke_series(const BlaschkeSpec& spec, int order) {
    spec.validate();
    if (spec.monomial_order >= order)
        throw DimensionMismatchError("monomial order exceeds truncation order");
    if (spec.real_symmetric())
        return TruncatedSeries::from_real(series_real(spec, order));
    return TruncatedSeries(series_complex(spec, order), Field::Complex);
}

double blaschke_tail_bound(const BlaschkeSpec& spec, int order) {
    const double r = spec.max_zero_modulus();
    if (r == 0.0) return spec.monomial_order >= order ? 1.0 : 0.0;
    const int pad = 64;
    const Eigen::VectorXcd ext = series_complex(spec, order + pad);
    const double segment = ext.tail(pad).norm();
    const double last = std::abs(ext(order + pad - 1));
    const double remainder = last * r / std::sqrt(1.0 - r * r);
    return segment + remainder;
}

InnerCertificate is_inner(const TruncatedSeries& f, int grid_size, double tol,
                          double tail_bound_hint) {
    if (grid_size < 64) throw DomainError("is_inner: grid_size must be at least 64");
    InnerCertificate cert;
    cert.grid_size = grid_size;

    const double two_pi = 2.0 * M_PI;
    for (int g = 0; g < grid_size; ++g) {
        const Complex w = std::polar(1.0, two_pi * g / grid_size);
        Complex acc = 0.0;
        for (int n = f.order() - 1; n >= 0; --n) acc = acc * w + f.coeff(n);
        cert.max_deviation = std::max(cert.max_deviation, std::abs(std::abs(acc) - 1.0));
    }

    if (tail_bound_hint >= 0.0) {
        cert.tail_bound = tail_bound_hint;
    } else {
        // Estimate geometric continuation from the trailing coefficients.
        const int m = std::min(8, f.order() / 4);
        const double band = f.coeffs().tail(m).norm();
        if (band <= 1e-12 * std::max(f.norm(), 1.0)) {
            cert.tail_bound = band;
        } else {
            const double hi = std::abs(f.coeff(f.order() - 1));
            const double lo = std::abs(f.coeff(f.order() - 1 - m));
            double rate = (lo > 0.0 && hi > 0.0) ? std::pow(hi / lo, 1.0 / m) : 1.0;
            cert.tail_bound = (rate < 0.999 && hi > 0.0)
                                  ? hi * rate / std::sqrt(1.0 - rate * rate)
                                  : 1.0;
        }
    }

    cert.pass = cert.max_deviation <= tol && cert.tail_bound <= tol;
    return cert;
}

RealSymmetricNormalization normalize_real_symmetric(const TruncatedSeries& f, double tol) {
    const double scale = f.norm();
    if (scale == 0.0) throw DegenerateInputError("normalize_real_symmetric: zero series");
    int k = -1;
    for (int n = 0; n < f.order(); ++n) {
        if (std::abs(f.coeff(n)) > 1e-9 * scale) {
            k = n;
            break;
        }
    }
    if (k < 0) throw DegenerateInputError("normalize_real_symmetric: no significant coefficient");

    const Complex a = f.coeff(k);
    Complex lambda;
    if (a.imag() == 0.0)
        lambda = a.real() > 0.0 ? 1.0 : -1.0;  // keep real input exactly real
    else
        lambda = std::conj(a) / std::abs(a);

    RealSymmetricNormalization out{lambda, f.scaled(lambda), false};
    const double asym = (out.normalized - hat(out.normalized)).norm();
    out.real_symmetric = asym <= tol * out.normalized.norm();
    return out;
}

bool is_hat_symmetric(const TruncatedSeries& f, double tol) {
    return (f - hat(f)).norm() <= tol * f.norm();
}

}  // namespace hardylab
