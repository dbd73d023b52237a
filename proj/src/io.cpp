#include "hardylab/io.hpp"

namespace hardylab::io {

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2)
        return Complex(j.at(0).get<double>(), j.at(1).get<double>());
    throw DomainError("expected a number or [re,im] pair");
}

Field field_from_json(const json& j) {
    const std::string f = j.get<std::string>();
    if (f == "real") return Field::Real;
    if (f == "complex") return Field::Complex;
    throw DomainError("unknown field marker: " + f);
}

json coeff_entry(Complex z, Field field) {
    if (field == Field::Real) return json(z.real());
    return complex_to_json(z);
}

}  // namespace

json series_to_json(const TruncatedSeries& f) {
    json coeffs = json::array();
    for (int n = 0; n < f.order(); ++n) coeffs.push_back(coeff_entry(f.coeff(n), f.field()));
    return json{{"field", field_name(f.field())}, {"order", f.order()}, {"coeffs", coeffs}};
}

TruncatedSeries series_from_json(const json& j) {
    const Field field = field_from_json(j.at("field"));
    const int order = j.at("order").get<int>();
    const json& coeffs = j.at("coeffs");
    if (static_cast<int>(coeffs.size()) != order)
        throw DimensionMismatchError("series: coeffs length does not match order");
    Eigen::VectorXcd c(order);
    for (int n = 0; n < order; ++n) c(n) = complex_from_json(coeffs.at(n));
    return TruncatedSeries(std::move(c), field);
}

json blaschke_to_json(const BlaschkeSpec& spec) {
    json zeros = json::array();
    for (Complex a : spec.zeros) zeros.push_back(complex_to_json(a));
    return json{{"zeros", zeros},
                {"front", complex_to_json(spec.front)},
                {"monomial_order", spec.monomial_order}};
}

BlaschkeSpec blaschke_from_json(const json& j) {
    BlaschkeSpec spec;
    for (const auto& z : j.at("zeros")) spec.zeros.push_back(complex_from_json(z));
    spec.front = complex_from_json(j.at("front"));
    spec.monomial_order = j.value("monomial_order", 0);
    spec.validate();
    return spec;
}

json subspace_to_json(const Subspace& s) {
    json basis = json::array();
    for (int jcol = 0; jcol < s.dim(); ++jcol) {
        json col = json::array();
        for (int i = 0; i < s.order(); ++i) col.push_back(coeff_entry(s.basis()(i, jcol), s.field()));
        basis.push_back(std::move(col));
    }
    return json{{"field", field_name(s.field())}, {"order", s.order()}, {"basis", basis}};
}

Subspace subspace_from_json(const json& j) {
    const Field field = field_from_json(j.at("field"));
    const int order = j.at("order").get<int>();
    const json& basis = j.at("basis");
    Eigen::MatrixXcd b(order, static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
        const json& col = basis.at(c);
        if (static_cast<int>(col.size()) != order)
            throw DimensionMismatchError("subspace: column length does not match order");
        for (int i = 0; i < order; ++i) b(i, c) = complex_from_json(col.at(i));
    }
    return Subspace(std::move(b), field);
}

json symbol_to_json(const LaurentSymbol& s) {
    json coeffs = json::array();
    for (Eigen::Index i = 0; i < s.coeffs.size(); ++i)
        coeffs.push_back(complex_to_json(s.coeffs(i)));
    return json{{"half_width", s.half_width}, {"coeffs", coeffs}};
}

LaurentSymbol symbol_from_json(const json& j) {
    LaurentSymbol s;
    s.half_width = j.at("half_width").get<int>();
    const json& coeffs = j.at("coeffs");
    if (static_cast<int>(coeffs.size()) != 2 * s.half_width + 1)
        throw DimensionMismatchError("symbol: expected 2K+1 coefficients");
    s.coeffs.resize(coeffs.size());
    for (Eigen::Index i = 0; i < s.coeffs.size(); ++i)
        s.coeffs(i) = complex_from_json(coeffs.at(i));
    return s;
}

json inner_certificate_to_json(const InnerCertificate& c) {
    return json{{"pass", c.pass},
                {"max_deviation", c.max_deviation},
                {"tail_bound", c.tail_bound},
                {"grid_size", c.grid_size}};
}

json defect_report_to_json(const DefectReport& r) {
    return json{{"defect", r.defect},
                {"defect_basis", subspace_to_json(r.defect_basis)},
                {"residual_singular_values", r.residual_singular_values},
                {"tol_used", r.tol_used}};
}

json stacked_to_json(const StackedSubspace& s) {
    return json{{"components", s.components},
                {"base_order", s.base_order},
                {"flat", subspace_to_json(s.flat)}};
}

json hitt_to_json(const HittDecomposition& h) {
    return json{{"g", series_to_json(h.g)},
                {"N", subspace_to_json(h.N)},
                {"rep_error", h.rep_error},
                {"isometry_error", h.isometry_error},
                {"invariance_error", h.invariance_error},
                {"n_defect", h.n_defect}};
}

json defect_decomposition_to_json(const DefectDecomposition& d) {
    json out{{"case", d.which == DefectCase::NonVanishing ? "i" : "ii"},
             {"defect_basis", subspace_to_json(d.defect_basis)},
             {"N", stacked_to_json(d.N)},
             {"rep_error", d.rep_error},
             {"norm_identity_error", d.norm_identity_error},
             {"invariance_error", d.invariance_error},
             {"stacked_defect", d.stacked_defect}};
    if (d.g) out["g"] = series_to_json(*d.g);
    return out;
}

json almost_to_json(const AlmostCharacterization& a) {
    return json{{"pass", a.pass},          {"case", a.case_i ? "i" : "ii"},
                {"near_defect", a.near_defect}, {"almost_defect", a.almost_defect},
                {"g_residual", a.g_residual},   {"g_in_extended", a.g_in_extended},
                {"tol", a.tol}};
}

json theta_psi_to_json(const ThetaPsiCertificate& c) {
    json out{{"proper", c.proper},
             {"pass", c.pass},
             {"distance", c.distance},
             {"complexification_distance", c.complexification_distance}};
    if (c.theta) out["theta"] = series_to_json(*c.theta);
    if (c.psi) out["psi"] = series_to_json(*c.psi);
    return out;
}

json near_invariance_to_json(const NearInvarianceCertificate& c) {
    return json{{"pass", c.pass},
                {"residual", c.residual},
                {"band", c.band},
                {"tol", c.tol},
                {"kernel_dim", c.kernel_dim}};
}

}  // namespace hardylab::io
