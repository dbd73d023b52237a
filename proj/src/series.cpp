#include "hardylab/series.hpp"

#include <cmath>

namespace hardylab {

namespace {

void require_same_shape(const TruncatedSeries& f, const TruncatedSeries& h, const char* op) {
    if (f.order() != h.order())
        throw DimensionMismatchError(std::string(op) + ": order mismatch (" +
                                     std::to_string(f.order()) + " vs " +
                                     std::to_string(h.order()) + ")");
    if (f.field() != h.field())
        throw DimensionMismatchError(std::string(op) + ": field mismatch (" +
                                     field_name(f.field()) + " vs " + field_name(h.field()) + ")");
}

}  // namespace

TruncatedSeries::TruncatedSeries(Eigen::VectorXcd coeffs, Field field, double spill)
    : coeffs_(std::move(coeffs)), field_(field), spill_(spill) {
    if (coeffs_.size() == 0) throw DimensionMismatchError("series order must be positive");
    if (spill_ < 0.0) throw InvariantViolation("negative spill");
    if (field_ == Field::Real) {
        for (Eigen::Index n = 0; n < coeffs_.size(); ++n)
            if (coeffs_(n).imag() != 0.0)
                throw FieldError("real-field series with nonzero imaginary part at index " +
                                 std::to_string(n));
    }
}

TruncatedSeries TruncatedSeries::zero(int order, Field field) {
    return TruncatedSeries(Eigen::VectorXcd::Zero(order), field);
}

TruncatedSeries TruncatedSeries::from_real(const Eigen::VectorXd& coeffs, double spill) {
    return TruncatedSeries(coeffs.cast<Complex>(), Field::Real, spill);
}

TruncatedSeries TruncatedSeries::monomial(int k, int order, Complex scale, Field field) {
    if (k < 0 || k >= order) throw DimensionMismatchError("monomial degree outside order");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(order);
    c(k) = scale;
    return TruncatedSeries(std::move(c), field);
}

TruncatedSeries TruncatedSeries::from_list(std::initializer_list<double> coeffs, int order) {
    if (static_cast<int>(coeffs.size()) > order)
        throw DimensionMismatchError("coefficient list longer than order");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(order);
    int i = 0;
    for (double x : coeffs) c(i++) = x;
    return TruncatedSeries(std::move(c), Field::Real);
}

TruncatedSeries TruncatedSeries::as_complex() const {
    return TruncatedSeries(coeffs_, Field::Complex, spill_);
}

Eigen::VectorXd TruncatedSeries::real_coeffs() const {
    if (field_ != Field::Real) throw FieldError("real_coeffs on a complex-field series");
    return coeffs_.real();
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& rhs) const {
    require_same_shape(*this, rhs, "add");
    return TruncatedSeries(coeffs_ + rhs.coeffs_, field_, std::hypot(spill_, rhs.spill_));
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& rhs) const {
    require_same_shape(*this, rhs, "subtract");
    return TruncatedSeries(coeffs_ - rhs.coeffs_, field_, std::hypot(spill_, rhs.spill_));
}

TruncatedSeries TruncatedSeries::scaled(Complex s) const {
    Field f = field_;
    if (f == Field::Real && s.imag() != 0.0) f = Field::Complex;
    return TruncatedSeries(coeffs_ * s, f, spill_ * std::abs(s));
}

SeriesTuple::SeriesTuple(std::vector<TruncatedSeries> e) : entries(std::move(e)) {
    if (entries.empty()) throw DimensionMismatchError("empty tuple");
    for (const auto& s : entries) {
        if (s.order() != entries.front().order() || s.field() != entries.front().field())
            throw DimensionMismatchError("tuple entries must share order and field");
    }
}

Eigen::VectorXcd SeriesTuple::stacked() const {
    const int n = order();
    Eigen::VectorXcd out(static_cast<Eigen::Index>(n) * components());
    for (int i = 0; i < components(); ++i) out.segment(i * n, n) = entries[i].coeffs();
    return out;
}

Complex inner_product(const TruncatedSeries& f, const TruncatedSeries& h) {
    require_same_shape(f, h, "inner_product");
    // sum a_n conj(b_n): Eigen dot conjugates its left operand.
    return h.coeffs().dot(f.coeffs());
}

TruncatedSeries hat(const TruncatedSeries& f) {
    return TruncatedSeries(f.coeffs().conjugate(), f.field(), f.spill());
}

TruncatedSeries symmetrize(const TruncatedSeries& f) {
    // (a + conj a)/2 has exactly zero imaginary part in IEEE arithmetic.
    return TruncatedSeries(f.coeffs().real().cast<Complex>(), Field::Real, f.spill());
}

std::pair<TruncatedSeries, TruncatedSeries> real_imag_split(const TruncatedSeries& f) {
    TruncatedSeries re(f.coeffs().real().cast<Complex>(), Field::Real, f.spill());
    TruncatedSeries im(f.coeffs().imag().cast<Complex>(), Field::Real, f.spill());
    return {re, im};
}

TruncatedSeries shift(const TruncatedSeries& f) {
    const int n = f.order();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
    c.tail(n - 1) = f.coeffs().head(n - 1);
    const double dropped = std::abs(f.coeff(n - 1));
    return TruncatedSeries(std::move(c), f.field(), std::hypot(f.spill(), dropped));
}

TruncatedSeries backshift(const TruncatedSeries& f) {
    const int n = f.order();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
    c.head(n - 1) = f.coeffs().tail(n - 1);
    return TruncatedSeries(std::move(c), f.field(), f.spill());
}

TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& h, int out_order) {
    if (f.field() != h.field()) throw FieldError("multiply: operands in different fields");
    if (out_order <= 0) throw DimensionMismatchError("multiply: out_order must be positive");
    const int full = f.order() + h.order() - 1;
    Eigen::VectorXcd prod = Eigen::VectorXcd::Zero(full);
    for (int i = 0; i < f.order(); ++i) {
        const Complex a = f.coeff(i);
        if (a == 0.0) continue;
        prod.segment(i, h.order()) += a * h.coeffs();
    }
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(out_order);
    const int keep = std::min(out_order, full);
    c.head(keep) = prod.head(keep);
    const double tail = (full > out_order) ? prod.tail(full - out_order).norm() : 0.0;
    return TruncatedSeries(std::move(c), f.field(), tail);
}

Complex evaluate(const TruncatedSeries& f, Complex w) {
    if (std::abs(w) >= 1.0) throw DomainError("evaluate: |w| >= 1");
    Complex acc = 0.0;
    for (int n = f.order() - 1; n >= 0; --n) acc = acc * w + f.coeff(n);
    return acc;
}

}  // namespace hardylab
