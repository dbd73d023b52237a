#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hardylab/errors.hpp"

namespace hardylab {

using Complex = std::complex<double>;

/// Scalar field a series or subspace lives over.
enum class Field { Real, Complex };

inline const char* field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

/// A Hardy-space function represented by its first N Taylor coefficients.
///
/// `spill` tracks the l2-mass of coefficients discarded by the operation that
/// produced this value; freshly constructed input has spill 0. A real-field
/// series has exactly zero imaginary parts (enforced at construction).
class TruncatedSeries {
  public:
    TruncatedSeries(Eigen::VectorXcd coeffs, Field field, double spill = 0.0);

    static TruncatedSeries zero(int order, Field field = Field::Real);
    static TruncatedSeries from_real(const Eigen::VectorXd& coeffs, double spill = 0.0);
    /// scale * z^k at the given order. Real field requires a real scale.
    static TruncatedSeries monomial(int k, int order, Complex scale = 1.0,
                                    Field field = Field::Real);
    /// Convenience: build a real series from an initializer list of low-order coefficients.
    static TruncatedSeries from_list(std::initializer_list<double> coeffs, int order);

    int order() const { return static_cast<int>(coeffs_.size()); }
    Field field() const { return field_; }
    double spill() const { return spill_; }
    const Eigen::VectorXcd& coeffs() const { return coeffs_; }
    Complex coeff(int n) const { return coeffs_(n); }
    double norm() const { return coeffs_.norm(); }
    double squared_norm() const { return coeffs_.squaredNorm(); }

    /// The same coefficients with a complex field marker (real -> complex embedding).
    TruncatedSeries as_complex() const;
    /// Real coefficient vector; FieldError when the field is complex.
    Eigen::VectorXd real_coeffs() const;

    TruncatedSeries operator+(const TruncatedSeries& rhs) const;
    TruncatedSeries operator-(const TruncatedSeries& rhs) const;
    TruncatedSeries scaled(Complex s) const;

  private:
    Eigen::VectorXcd coeffs_;
    Field field_;
    double spill_;
};

/// A tuple of m series sharing order and field (stacked coefficient vectors).
struct SeriesTuple {
    explicit SeriesTuple(std::vector<TruncatedSeries> entries);

    int components() const { return static_cast<int>(entries.size()); }
    int order() const { return entries.front().order(); }
    Field field() const { return entries.front().field(); }
    /// Concatenated coefficient vector, component-by-component.
    Eigen::VectorXcd stacked() const;
    double norm() const { return stacked().norm(); }

    std::vector<TruncatedSeries> entries;
};

/// Coefficient inner product <f,h> = sum a_n conj(b_n).
Complex inner_product(const TruncatedSeries& f, const TruncatedSeries& h);

/// Coefficient-wise conjugation: the hat involution F(z) -> conj(F(conj z)).
TruncatedSeries hat(const TruncatedSeries& f);

/// (f + hat(f))/2; the result is real-field with exactly zero imaginary parts.
TruncatedSeries symmetrize(const TruncatedSeries& f);

/// Unique split f = u + i v with u, v real-field. Returns (u, v).
std::pair<TruncatedSeries, TruncatedSeries> real_imag_split(const TruncatedSeries& f);

/// Multiplication by z. Drops the top coefficient into spill (quadrature accumulation).
TruncatedSeries shift(const TruncatedSeries& f);

/// (f - f(0))/z. Never spills.
TruncatedSeries backshift(const TruncatedSeries& f);

/// Cauchy product truncated to out_order; spill records the discarded tail mass.
TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& h, int out_order);

/// Horner evaluation at a point of the open disk; DomainError when |w| >= 1.
Complex evaluate(const TruncatedSeries& f, Complex w);

}  // namespace hardylab
