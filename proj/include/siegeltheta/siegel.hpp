// Types and operations for the Siegel upper half space H_g (complex
// symmetric g x g matrices with positive definite imaginary part),
// integer symplectic matrices, their fractional-linear action on H_g,
// block-diagonal embeddings and the block-swap matrix.

#pragma once

#include <complex>
#include <cstdint>
#include <Eigen/Dense>

namespace siegeltheta {

using Complex = std::complex<double>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// A point of H_g. Construction validates symmetry (within tol, then
/// symmetrizes) and positive definiteness of the imaginary part.
/// Immutable after construction.
class SiegelPoint {
public:
    explicit SiegelPoint(Eigen::MatrixXcd entries, double tol = 1e-12);

    int genus() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    Eigen::MatrixXd imag_part() const { return entries_.imag(); }

    /// Smallest eigenvalue of Im(Z); +inf for the empty genus-0 point.
    double min_imag_eigenvalue() const { return lambda_min_; }

private:
    Eigen::MatrixXcd entries_;
    double lambda_min_;
};

/// Validating constructor as a free function. Symmetrizes input that is
/// asymmetric within tol; rejects anything worse. The positive
/// definiteness test is a Cholesky factorization whose pivots must
/// exceed 1e-13 * trace(Im Z); the failing pivot index is reported.
SiegelPoint validate_siegel(const Eigen::MatrixXcd& entries, double tol = 1e-12);

/// diag(Z1, Z2) in H_{g1+g2}. The genus-0 point is the neutral element.
SiegelPoint block_diag(const SiegelPoint& z1, const SiegelPoint& z2);

/// Integer matrix M with M^T J M = J exactly, J = [[0, I], [-I, 0]].
class SymplecticMatrix {
public:
    explicit SymplecticMatrix(IntMatrix entries);

    int genus() const { return static_cast<int>(entries_.rows()) / 2; }
    const IntMatrix& entries() const { return entries_; }

private:
    IntMatrix entries_;
};

/// True iff M^T J M = J in exact integer arithmetic.
bool symplectic_check(const IntMatrix& m);

/// blockdiag(A, A) with A = [[0, I_{g-1}], [1, 0]]; satisfies A^T = A^{-1}.
/// Conjugation by this matrix swaps the two factors of diag(z, Pi') in H_g.
SymplecticMatrix swap_matrix(int g);

/// Fractional-linear action Z -> (AZ + B)(CZ + D)^{-1} with M given in
/// row blocks [[A, B], [C, D]]. Throws if CZ + D is numerically singular.
SiegelPoint sp_action(const SymplecticMatrix& m, const SiegelPoint& z);

/// Deterministic pseudo-random point: X + i(R^T R + 0.1 I) with X
/// symmetric, entries in [-spread, spread], R entries in [-1, 1].
/// Redraws while cond(Im) exceeds 1e3.
SiegelPoint random_siegel(int g, std::uint64_t seed, double spread);

}  // namespace siegeltheta
