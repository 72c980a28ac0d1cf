// Pullbacks of the Fubini-Study (1,1)-form under the Thetanullwert maps,
// expressed as Hermitian coefficient matrices over the independent Siegel
// coordinates Z_ij (i <= j). The sqrt(-1)/2 prefactor of the form is
// carried symbolically: only coefficient matrices are stored and compared.
// Also: the heat-equation consistency check, the scaled second-order form,
// the equivalence residuals between differently indexed maps, and the
// block-slice degeneration report.

#pragma once

#include "siegeltheta/nullwerte.hpp"

namespace siegeltheta {

/// Coefficient matrix H of a (1,1)-form sum H_ab dZ_a wedge conj(dZ_b),
/// a, b ranging over sym_labels(genus). Hermitian, positive semidefinite
/// within tolerance for pullbacks of a Kaehler metric.
struct HermitianForm {
    int genus = 0;
    Eigen::MatrixXcd entries;

    HermitianForm() = default;
    HermitianForm(int g, Eigen::MatrixXcd m);  // validates Hermitian + PSD
};

/// Holomorphic jet of a coordinate map H_g -> C^{N+1}: the value vector and
/// one derivative vector per independent coordinate Z_ij (columns ordered
/// by sym_labels(genus)).
struct MapJet {
    int genus = 0;
    Eigen::VectorXcd value;
    Eigen::MatrixXcd derivs;  // rows: map coordinates, cols: sym_count(genus)
};

enum class NullwertMap { second, squared, sj, prime };
enum class FormSide { low, high };
enum class SliceSelect { first, last };

/// Value and analytic Z_ij-derivatives of the selected Thetanullwert map.
MapJet nullwert_jet(NullwertMap map_id, const SiegelPoint& z, const Precision& prec = {});

/// Compose a jet with the square-weighted Veronese embedding.
MapJet veronese_jet(const MapJet& jet);

/// Coefficient matrix of dd-bar log ||F||^2:
/// H_ab = (<d_a F, d_b F> ||F||^2 - <d_a F, F><F, d_b F>) / ||F||^4.
/// Invariant under rescaling the jet by a nonzero constant.
HermitianForm fs_pullback(const MapJet& jet);

/// max over i <= j of |4 pi i (1 + delta_ij) dtheta_u/dZ_ij - d^2theta_u/dz_i dz_j|
/// / (1 + |d^2 theta_u/dz_i dz_j|) at z = 0.
double heat_consistency(const Eigen::VectorXi& u, const SiegelPoint& z,
                        const Precision& prec = {});

/// 8 pi times the pullback form of the second-order Thetanullwert map.
HermitianForm prym_form(const SiegelPoint& tau, const Precision& prec = {});

/// Relative max-norm difference between the two equal scaled forms:
/// low:  8 pi (second)   vs 4 pi (squared)  on H_n;
/// high: 4 pi (sj)       vs 8 pi (prime)    on H_g, g >= 2.
double equivalent_forms_residual(const SiegelPoint& z, FormSide side,
                                 const Precision& prec = {});

/// Norm of the projectivized derivative of the primed Thetanullwert map
/// along the slice coordinate: ||dF - (<dF,F>/||F||^2) F|| / ||F|| with dF
/// the Z_11-derivative at diag(y, Pi') (first) or the Z_gg-derivative at
/// diag(Pi', y) (last).
double restricted_derivative_norm(const SiegelPoint& pi_prime, Complex y,
                                  SliceSelect slice, const Precision& prec = {});

// Calibrated thresholds for the slice dichotomy. The first-slice derivative
// vanishes identically; the last-slice floor was frozen from a calibration
// sweep over random (Pi', y) with Im y in [0.5, 1.5] and the random_siegel
// sampling domain.
inline constexpr double kFirstSliceTol = 1e-8;
inline constexpr double kLastSliceFloor = 1e-3;

/// Slice comparison at a block point and its swap image.
struct NondescentReport {
    int genus = 0;
    double first_slice_norm = 0.0;   // projectivized derivative, first slice
    double last_slice_norm = 0.0;    // projectivized derivative, last slice
    double first_slice_form = 0.0;   // pullback form entry on the first slice
    double last_slice_form = 0.0;    // pullback form entry on the last slice
    double first_threshold = kFirstSliceTol;
    double last_floor = kLastSliceFloor;
    double swap_residual = 0.0;      // |swap . diag(y0, Pi') - diag(Pi', y0)|
    bool swap_exact = false;         // swap_residual <= 1e-12
    bool differ = false;             // forms on the two slices differ
};

NondescentReport nondescent_report(const SiegelPoint& pi_prime, Complex y0,
                                   const Precision& prec = {});

}  // namespace siegeltheta
