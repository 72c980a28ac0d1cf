// Thetanullwert maps into projective space, the square-weighted Veronese
// embedding, the pair/characteristic mixing matrix relating them, and the
// factorization residuals that measure commutativity of the induced
// diagrams. Index orderings are lexicographic throughout, first coordinate
// most significant, so every matrix and coordinate vector is reproducible
// bit for bit.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "siegeltheta/theta.hpp"

namespace siegeltheta {

/// Nonzero coordinate vector up to scale, with the label of each slot.
struct ProjectivePoint {
    Eigen::VectorXcd coords;
    std::vector<std::string> labels;
};

/// Rows indexed by unordered pairs {u, u'} of {0,1}^n vectors, columns by
/// even characteristics; satisfies M M^H = 2^{-n} I.
struct MixingMatrix {
    int n = 0;
    Eigen::MatrixXcd entries;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
};

/// u in {0,1}^n from its lexicographic index (first coordinate most
/// significant).
Eigen::VectorXi bit_vector(int index, int n);

std::string bits_label(const Eigen::VectorXi& v);
std::string char_label(const Characteristic& chi);          // "01|10"
std::string pair_label(const Eigen::VectorXi& u, const Eigen::VectorXi& v);  // "01,10"

/// All (eps, sigma) in {0,1}^n x {0,1}^n with eps . sigma even,
/// lexicographic by (eps, sigma); length (4^n + 2^n)/2.
std::vector<Characteristic> even_characteristics(int n);

/// All unordered pairs {u, u'} with u <= u' lexicographic, ordered by
/// (u, u'); same length as even_characteristics(n).
std::vector<std::pair<Eigen::VectorXi, Eigen::VectorXi>> pair_labels(int n);

/// [theta_u(tau; 0)]_{u in {0,1}^n}, lexicographic u.
ProjectivePoint theta_null_second(const SiegelPoint& tau, const Precision& prec = {});

/// [theta[eps; sigma](tau; 0)^2] over even_characteristics(n).
ProjectivePoint theta_null_squared(const SiegelPoint& tau, const Precision& prec = {});

/// [theta[0 eps; 0 sigma](Pi; 0) * theta[0 eps; 1 sigma](Pi; 0)] over
/// even_characteristics(g-1); genus g >= 2.
ProjectivePoint theta_null_sj(const SiegelPoint& pi, const Precision& prec = {});

/// [theta[(0,u); (1,0,...,0)](2 Pi; 0)]_{u in {0,1}^{g-1}}; genus g >= 2.
ProjectivePoint theta_null_prime(const SiegelPoint& pi, const Precision& prec = {});

/// Square-weighted degree-2 embedding: coordinate x_u^2 at {u, u},
/// sqrt(2) x_u x_{u'} at {u, u'}. ||v2(x)||^2 = ||x||^4 exactly.
ProjectivePoint veronese(const ProjectivePoint& x);

MixingMatrix mixing_matrix(int n);

/// Fubini-Study angle arccos(|<x, y>| / (||x|| ||y||)) in [0, pi/2].
double projective_distance(const ProjectivePoint& x, const ProjectivePoint& y);

/// Distance between v2(second-order nulls) and M * (squared nulls) at tau.
double sj_factorization_residual_low(const SiegelPoint& tau, const Precision& prec = {});

/// Distance between v2(primed nulls) and M * (paired nulls) at Pi.
double sj_factorization_residual_high(const SiegelPoint& pi, const Precision& prec = {});

/// Distance between the paired-null vector of Pi (genus g) and the squared
/// nulls of tau (genus g-1). Near zero only for matched period/Prym pairs;
/// a diagnostic value otherwise.
double schottky_jung_residual(const SiegelPoint& pi, const SiegelPoint& tau,
                              const Precision& prec = {});

}  // namespace siegeltheta
