#pragma once

#include <string>

#include <json.hpp>

#include "hardylab/engine.hpp"
#include "hardylab/generators.hpp"
#include "hardylab/inner.hpp"
#include "hardylab/series.hpp"
#include "hardylab/subspace.hpp"

namespace hardylab::io {

using nlohmann::json;

// Series literal: {"field":"real"|"complex","order":N,"coeffs":[...]} with
// real coefficients as plain numbers and complex ones as [re,im] pairs.
// Serialization round-trips doubles bit-exactly.
json series_to_json(const TruncatedSeries& f);
TruncatedSeries series_from_json(const json& j);

// {"zeros":[[re,im],...],"front":[re,im],"monomial_order":k}
json blaschke_to_json(const BlaschkeSpec& spec);
BlaschkeSpec blaschke_from_json(const json& j);

// {"field":...,"order":N,"basis":[[...column-major...]]}; loading re-verifies
// orthonormality through the Subspace constructor.
json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const json& j);

// {"half_width":K,"coeffs":[[re,im],...]} for c_{-K}..c_K
json symbol_to_json(const LaurentSymbol& s);
LaurentSymbol symbol_from_json(const json& j);

json inner_certificate_to_json(const InnerCertificate& c);
json defect_report_to_json(const DefectReport& r);
json stacked_to_json(const StackedSubspace& s);
json hitt_to_json(const HittDecomposition& h);
json defect_decomposition_to_json(const DefectDecomposition& d);
json almost_to_json(const AlmostCharacterization& a);
json theta_psi_to_json(const ThetaPsiCertificate& c);
json near_invariance_to_json(const NearInvarianceCertificate& c);

}  // namespace hardylab::io
