#include "siegeltheta/siegel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "siegeltheta/rng.hpp"

namespace siegeltheta {

namespace {

// Cholesky with an explicit pivot threshold so near-boundary points fail
// loudly instead of silently corrupting downstream truncation bounds.
// Returns the index of the failing pivot, or -1 on success.
int cholesky_pivot_failure(const Eigen::MatrixXd& y, double pivot_floor) {
    const int n = static_cast<int>(y.rows());
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double d = y(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > pivot_floor)) return j;
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = y(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return -1;
}

IntMatrix standard_symplectic_form(int g) {
    IntMatrix j = IntMatrix::Zero(2 * g, 2 * g);
    for (int i = 0; i < g; ++i) {
        j(i, g + i) = 1;
        j(g + i, i) = -1;
    }
    return j;
}

constexpr double kConditionCap = 1e3;  // redraw cap for random_siegel

}  // namespace

SiegelPoint::SiegelPoint(Eigen::MatrixXcd entries, double tol) {
    if (entries.rows() != entries.cols()) {
        throw std::domain_error("SiegelPoint: entries must be square, got " +
                                std::to_string(entries.rows()) + "x" +
                                std::to_string(entries.cols()));
    }
    const int g = static_cast<int>(entries.rows());
    if (g == 0) {
        entries_ = std::move(entries);
        lambda_min_ = std::numeric_limits<double>::infinity();
        return;
    }

    const double scale = entries.cwiseAbs().maxCoeff();
    const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol * (1.0 + scale)) {
        throw std::domain_error("SiegelPoint: asymmetry " + std::to_string(asym) +
                                " exceeds tolerance");
    }
    entries_ = 0.5 * (entries + entries.transpose());

    const Eigen::MatrixXd y = entries_.imag();
    const double pivot_floor = 1e-13 * y.trace();
    const int bad = cholesky_pivot_failure(y, pivot_floor);
    if (bad >= 0) {
        throw std::domain_error(
            "SiegelPoint: imaginary part not positive definite (pivot " +
            std::to_string(bad) + ")");
    }
    lambda_min_ = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(y)
                      .eigenvalues()
                      .minCoeff();
}

SiegelPoint validate_siegel(const Eigen::MatrixXcd& entries, double tol) {
    return SiegelPoint(entries, tol);
}

SiegelPoint block_diag(const SiegelPoint& z1, const SiegelPoint& z2) {
    const int g1 = z1.genus(), g2 = z2.genus();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g1 + g2, g1 + g2);
    m.topLeftCorner(g1, g1) = z1.entries();
    m.bottomRightCorner(g2, g2) = z2.entries();
    return SiegelPoint(std::move(m));
}

bool symplectic_check(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    if (m.rows() % 2 != 0) {
        throw std::domain_error("symplectic_check: dimension must be even");
    }
    const int g = static_cast<int>(m.rows()) / 2;
    const IntMatrix j = standard_symplectic_form(g);
    return (m.transpose() * j * m) == j;
}

SymplecticMatrix::SymplecticMatrix(IntMatrix entries) : entries_(std::move(entries)) {
    if (!symplectic_check(entries_)) {
        throw std::domain_error("SymplecticMatrix: M^T J M != J");
    }
}

SymplecticMatrix swap_matrix(int g) {
    if (g < 2) throw std::domain_error("swap_matrix: genus must be >= 2");
    IntMatrix a = IntMatrix::Zero(g, g);
    for (int i = 0; i + 1 < g; ++i) a(i, i + 1) = 1;
    a(g - 1, 0) = 1;
    IntMatrix m = IntMatrix::Zero(2 * g, 2 * g);
    m.topLeftCorner(g, g) = a;
    m.bottomRightCorner(g, g) = a;
    return SymplecticMatrix(std::move(m));
}

SiegelPoint sp_action(const SymplecticMatrix& m, const SiegelPoint& z) {
    const int g = z.genus();
    if (m.genus() != g) {
        throw std::domain_error("sp_action: genus mismatch");
    }
    const Eigen::MatrixXcd blocks = m.entries().cast<Complex>();
    const Eigen::MatrixXcd a = blocks.topLeftCorner(g, g);
    const Eigen::MatrixXcd b = blocks.topRightCorner(g, g);
    const Eigen::MatrixXcd c = blocks.bottomLeftCorner(g, g);
    const Eigen::MatrixXcd d = blocks.bottomRightCorner(g, g);

    const Eigen::MatrixXcd den = c * z.entries() + d;
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(den);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (!(smin > 0.0) || smax / smin > 1e12) {
        throw std::domain_error("sp_action: CZ + D numerically singular");
    }
    const Eigen::MatrixXcd num = a * z.entries() + b;
    Eigen::MatrixXcd result = den.transpose().partialPivLu().solve(num.transpose()).transpose();
    // Output is symmetric up to roundoff; the constructor symmetrizes.
    return SiegelPoint(std::move(result), 1e-9);
}

SiegelPoint random_siegel(int g, std::uint64_t seed, double spread) {
    if (g < 1) throw std::domain_error("random_siegel: genus must be >= 1");
    if (!(spread > 0.0)) throw std::domain_error("random_siegel: spread must be positive");
    Rng rng(seed);
    for (;;) {
        Eigen::MatrixXd x(g, g), r(g, g);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) x(i, j) = rng.uniform(-spread, spread);
        x = 0.5 * (x + x.transpose()).eval();
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) r(i, j) = rng.uniform(-1.0, 1.0);
        const Eigen::MatrixXd y = r.transpose() * r + 0.1 * Eigen::MatrixXd::Identity(g, g);
        const Eigen::VectorXd ev =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(y).eigenvalues();
        if (ev.maxCoeff() / ev.minCoeff() > kConditionCap) continue;
        return SiegelPoint(x + Complex(0, 1) * y.cast<Complex>());
    }
}

}  // namespace siegeltheta
