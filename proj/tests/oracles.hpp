// Test-only oracles, deliberately independent of the library's code paths:
// a single polynomial long division for Blaschke coefficients, closed-form
// principal angles for lines, and dense projection arithmetic.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hardylab/inner.hpp"
#include "hardylab/series.hpp"

namespace oracles {

using hardylab::Complex;

// Expand numerator front * z^k * prod (a_j - z) and denominator
// prod (1 - conj(a_j) z) as full polynomials, then divide once.
inline Eigen::VectorXcd blaschke_long_division(const hardylab::BlaschkeSpec& spec, int order) {
    std::vector<Complex> num{spec.front};
    for (int k = 0; k < spec.monomial_order; ++k) num.insert(num.begin(), 0.0);
    for (Complex a : spec.zeros) {
        std::vector<Complex> next(num.size() + 1, 0.0);
        for (size_t i = 0; i < num.size(); ++i) {
            next[i] += a * num[i];       // constant term of (a - z)
            next[i + 1] -= num[i];       // -z term
        }
        num = std::move(next);
    }
    std::vector<Complex> den{1.0};
    for (Complex a : spec.zeros) {
        std::vector<Complex> next(den.size() + 1, 0.0);
        for (size_t i = 0; i < den.size(); ++i) {
            next[i] += den[i];
            next[i + 1] -= std::conj(a) * den[i];
        }
        den = std::move(next);
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(order);
    for (int n = 0; n < order; ++n) {
        Complex c = n < static_cast<int>(num.size()) ? num[n] : Complex(0.0);
        for (int j = 1; j <= n && j < static_cast<int>(den.size()); ++j)
            c -= den[j] * out(n - j);
        out(n) = c;  // den[0] = 1
    }
    return out;
}

// Projector distance between two one-dimensional spans: the sine of the
// principal angle between the unit vectors.
inline double line_distance(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
    const Complex c = (u.adjoint() * v)(0) / (u.norm() * v.norm());
    const double cos2 = std::min(1.0, std::norm(c));
    return std::sqrt(1.0 - cos2);
}

// Dense one-step defect oracle for a one-dimensional real M = span{w}:
// the normalized residual of backshift(w) against the projection onto w.
inline Eigen::VectorXd residual_direction(const Eigen::VectorXd& w) {
    const Eigen::VectorXd unit = w / w.norm();
    Eigen::VectorXd t = Eigen::VectorXd::Zero(w.size());
    t.head(w.size() - 1) = unit.tail(w.size() - 1);
    const Eigen::VectorXd r = t - unit * (unit.dot(t));
    return r / r.norm();
}

}  // namespace oracles
