#pragma once

#include <optional>
#include <vector>

#include "hardylab/inner.hpp"
#include "hardylab/series.hpp"
#include "hardylab/subspace.hpp"

namespace hardylab {

/// Near-invariance defect data: the canonical defect space is the orthonormal
/// range of (I - P_M) T* applied to the vanishing part of M; any admissible
/// defect space must contain it, so its dimension is the defect.
struct DefectReport {
    int defect = 0;
    Subspace defect_basis;
    std::vector<double> residual_singular_values;  // descending, full list
    double tol_used = 0.0;
};

/// A subspace of the m-fold stacked coefficient space (tuples of series),
/// with the stacked l2 inner product.
struct StackedSubspace {
    Subspace flat;  // order = components * base_order
    int components = 1;
    int base_order = 0;

    int dim() const { return flat.dim(); }
    SeriesTuple column_tuple(int j) const;
};

/// M = gN with multiplication by g isometric on N.
struct HittDecomposition {
    TruncatedSeries g;
    Subspace N;
    double rep_error = 0.0;        // projector distance between gN and M
    double isometry_error = 0.0;   // max | ||gh|| - 1 | over unit h in N
    double invariance_error = 0.0; // backward-shift invariance residual of N
    int n_defect = 0;              // defect of N (0 for a genuine decomposition)
};

enum class DefectCase { NonVanishing, Vanishing };  // case i / case ii

/// f = gh + z sum_i h_i e_i over a stacked backward-shift invariant N
/// (case i), or f = z sum_i h_i e_i (case ii), with the norm identity
/// ||f||^2 = ||h||^2 + sum ||h_i||^2.
struct DefectDecomposition {
    DefectCase which = DefectCase::NonVanishing;
    std::optional<TruncatedSeries> g;  // case i only
    Subspace defect_basis;
    StackedSubspace N;
    double rep_error = 0.0;
    double norm_identity_error = 0.0;
    double invariance_error = 0.0;  // stacked backward-shift residual of N
    int stacked_defect = 0;
};

struct AlmostCharacterization {
    bool pass = false;
    bool case_i = false;
    int near_defect = 0;
    int almost_defect = 0;
    double g_residual = 0.0;     // ||(I - P_{M + F}) T* g||, case i
    bool g_in_extended = false;  // T* g lies in M ⊕ F
    double tol = 0.0;
};

struct BeurlingInfo {
    double resynthesis_distance = 0.0;    // span{theta z^j} vs M
    double shift_invariance_residual = 0.0;
    int band = 0;
    InnerCertificate inner;
};

struct ThetaPsiCertificate {
    bool proper = false;  // the invariant part has a proper inner complement
    bool pass = false;
    double distance = 0.0;
    // projector distance between the complexification of the real N and the
    // complex engine's parameter space (they coincide in exact arithmetic)
    double complexification_distance = 0.0;
    std::optional<TruncatedSeries> theta;  // from the complexified route
    std::optional<TruncatedSeries> psi;    // from the real route
};

/// True iff T* maps every element of M vanishing at 0 back into M (at tol).
bool is_nearly_invariant(const Subspace& m, double tol);

/// Canonical near-invariance defect of M.
DefectReport defect(const Subspace& m, double rank_tol = default_rank_tol());

/// Defect of the full backward-shift orbit T*M (almost-invariance defect).
/// Always at least defect(M).
DefectReport almost_defect(const Subspace& m, double rank_tol = default_rank_tol());

/// The unit vector spanning M ominus (M ∩ zH^2), signed so g(0) > 0.
/// CaseTwoError when every element of M vanishes at 0.
TruncatedSeries extract_g(const Subspace& m);

/// Decompose a nearly invariant M (not contained in zH^2) as M = gN.
HittDecomposition hitt_decompose(const Subspace& m, double rank_tol = default_rank_tol());

/// Decompose M with defect n >= 1 via its synthesis operator; UseHittError
/// when the report says defect 0.
DefectDecomposition defect_decompose(const Subspace& m, const DefectReport& report,
                                     double rank_tol = default_rank_tol());

/// Instance-level check of the almost-invariance characterization: M is
/// almost invariant with the same defect iff (case i) T*g stays in M ⊕ F.
AlmostCharacterization check_almost_characterization(const Subspace& m, double tol = 1e-8,
                                                     double rank_tol = default_rank_tol());

/// Extract the inner generator of a shift-invariant subspace from its
/// wandering subspace M ominus zM. The optional info records the
/// resynthesis distance and an innerness certificate.
TruncatedSeries beurling_extract(const Subspace& m, BeurlingInfo* info = nullptr,
                                 double rank_tol = default_rank_tol(),
                                 double pre_tol = 1e-6, double inner_tol = 1e-8);

/// Compare the inner function of the real route (complement of N inside the
/// real space) with the one from the complexified route; they must agree
/// after sign normalization.
ThetaPsiCertificate theta_psi_crosscheck(const Subspace& m, double tol = 1e-6,
                                         double rank_tol = default_rank_tol());

}  // namespace hardylab
