// Evaluation of theta functions with characteristics,
//
//   theta[eps; eps'](Z; z) =
//     sum_{m in Z^g} exp(pi i (m+eps/2)^T Z (m+eps/2)
//                        + 2 pi i (m+eps/2)^T (z+eps'/2)),
//
// of second-order theta functions
//
//   theta_u(Z; z) = theta[u; 0](2Z; 2z),
//
// and of their z- and Z-derivatives, with a certified truncation bound
// driven by the smallest eigenvalue of Im(Z). Characteristics are
// arbitrary integer vectors and are honored verbatim (no internal mod-2
// reduction); reduce_characteristic exposes the representative/sign law.
//
// Convention note: eps'/2 enters only the linear factor of the series.
// Some references carry an extra global exponential prefactor; squared
// and paired quantities are unaffected, but single unreduced values may
// differ from other libraries by such a factor.

#pragma once

#include <utility>
#include <vector>

#include "siegeltheta/siegel.hpp"

namespace siegeltheta {

struct Characteristic {
    Eigen::VectorXi eps;
    Eigen::VectorXi eps_prime;

    Characteristic() = default;
    Characteristic(Eigen::VectorXi e, Eigen::VectorXi ep);

    int genus() const { return static_cast<int>(eps.size()); }
    /// (eps . eps_prime) mod 2, in {0, 1}. Invariant under shifts of either
    /// vector by even integer vectors.
    int parity() const;
    bool is_even() const { return parity() == 0; }
};

struct Precision {
    double tol = 1e-12;   // absolute error target on the series value
#ifdef NDEBUG
    bool cross_check = false;
#else
    bool cross_check = true;  // re-sum with enlarged radius and compare
#endif
};

/// Value and derivatives of one theta series at (Z, z). grad_tau is packed
/// over pairs (i, j) with i <= j in lexicographic order; Z_ij and Z_ji are
/// treated as a single variable.
struct ThetaJet {
    Complex value{};
    Eigen::VectorXcd grad_z;
    Eigen::MatrixXcd hess_z;
    Eigen::VectorXcd grad_tau;
};

// Packing helpers for the independent coordinates Z_ij, i <= j.
int sym_count(int g);
int sym_index(int i, int j, int g);
std::vector<std::pair<int, int>> sym_labels(int g);

/// Smallest radius R (an integer, returned as double) such that the lattice
/// tail sum over ||m + eps/2|| > R is provably below tol, using
/// |term| <= exp(-pi lambda_min ||w||^2 + 2 pi ||Im(z)|| ||w||).
double truncation_radius(const SiegelPoint& z_matrix, const Eigen::VectorXcd& z,
                         const Characteristic& chi, double tol);

Complex theta_char(const Characteristic& chi, const SiegelPoint& z_matrix,
                   const Eigen::VectorXcd& z, const Precision& prec = {});

/// theta_u(Z; z) = theta[u; 0](2Z; 2z). Independent of shifting u by even
/// vectors.
Complex theta_second_order(const Eigen::VectorXi& u, const SiegelPoint& z_matrix,
                           const Eigen::VectorXcd& z, const Precision& prec = {});

/// Term-wise differentiated sum. With second_order_mode the jet is that of
/// theta_u (u = chi.eps, chi.eps_prime must vanish), chain-rule factors
/// from theta[u;0](2Z; 2z) included.
ThetaJet theta_jet(const Characteristic& chi, const SiegelPoint& z_matrix,
                   const Eigen::VectorXcd& z, const Precision& prec = {},
                   bool second_order_mode = false);

/// Mod-2 representative and the sign s with
/// theta_char(chi, ., .) = s * theta_char(reduced, ., .);
/// s = (-1)^{eps . b} where eps_prime = reduced.eps_prime + 2b.
std::pair<Characteristic, int> reduce_characteristic(const Characteristic& chi);

/// Test oracle: plain summation over the full box [-box, box]^g in odometer
/// order, no truncation logic, no reduction tree.
Complex brute_force_theta(const Characteristic& chi, const SiegelPoint& z_matrix,
                          const Eigen::VectorXcd& z, int box);

}  // namespace siegeltheta
