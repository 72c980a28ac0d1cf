#include "siegeltheta/fubini.hpp"

#include <cmath>
#include <stdexcept>

namespace siegeltheta {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

Eigen::VectorXi prepend(int head, const Eigen::VectorXi& tail) {
    Eigen::VectorXi out(tail.size() + 1);
    out(0) = head;
    out.tail(tail.size()) = tail;
    return out;
}

Eigen::VectorXi e1(int g) {
    Eigen::VectorXi v = Eigen::VectorXi::Zero(g);
    v(0) = 1;
    return v;
}

// <x, y> linear in the first slot: sum_k x_k conj(y_k).
Complex inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    return y.dot(x);  // Eigen's dot conjugates its object argument
}

}  // namespace

HermitianForm::HermitianForm(int g, Eigen::MatrixXcd m)
    : genus(g), entries(std::move(m)) {
    const int dim = sym_count(g);
    if (entries.rows() != dim || entries.cols() != dim) {
        throw std::domain_error("HermitianForm: size does not match genus");
    }
    const double scale = entries.cwiseAbs().maxCoeff();
    const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10 * (1.0 + scale)) {
        throw std::runtime_error("HermitianForm: matrix not Hermitian");
    }
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(entries).eigenvalues();
    if (ev.minCoeff() < -1e-9 * std::max(scale, 1.0)) {
        throw std::runtime_error("HermitianForm: matrix not positive semidefinite");
    }
}

MapJet nullwert_jet(NullwertMap map_id, const SiegelPoint& z, const Precision& prec) {
    const int g = z.genus();
    const int m = sym_count(g);
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(g);
    MapJet jet;
    jet.genus = g;

    switch (map_id) {
        case NullwertMap::second: {
            if (g < 1) throw std::domain_error("nullwert_jet: genus must be >= 1");
            const int count = 1 << g;
            jet.value.resize(count);
            jet.derivs.resize(count, m);
            for (int k = 0; k < count; ++k) {
                const ThetaJet t =
                    theta_jet(Characteristic(bit_vector(k, g), Eigen::VectorXi::Zero(g)),
                              z, zero, prec, /*second_order_mode=*/true);
                jet.value(k) = t.value;
                jet.derivs.row(k) = t.grad_tau.transpose();
            }
            break;
        }
        case NullwertMap::squared: {
            if (g < 1) throw std::domain_error("nullwert_jet: genus must be >= 1");
            const auto chars = even_characteristics(g);
            const int count = static_cast<int>(chars.size());
            jet.value.resize(count);
            jet.derivs.resize(count, m);
            for (int k = 0; k < count; ++k) {
                const ThetaJet t = theta_jet(chars[k], z, zero, prec);
                jet.value(k) = t.value * t.value;
                jet.derivs.row(k) = (2.0 * t.value) * t.grad_tau.transpose();
            }
            break;
        }
        case NullwertMap::sj: {
            if (g < 2) throw std::domain_error("nullwert_jet: sj map needs genus >= 2");
            const auto chars = even_characteristics(g - 1);
            const int count = static_cast<int>(chars.size());
            jet.value.resize(count);
            jet.derivs.resize(count, m);
            for (int k = 0; k < count; ++k) {
                const Eigen::VectorXi eps = prepend(0, chars[k].eps);
                const ThetaJet a = theta_jet(
                    Characteristic(eps, prepend(0, chars[k].eps_prime)), z, zero, prec);
                const ThetaJet b = theta_jet(
                    Characteristic(eps, prepend(1, chars[k].eps_prime)), z, zero, prec);
                jet.value(k) = a.value * b.value;
                jet.derivs.row(k) =
                    (a.grad_tau * b.value + b.grad_tau * a.value).transpose();
            }
            break;
        }
        case NullwertMap::prime: {
            if (g < 2) throw std::domain_error("nullwert_jet: prime map needs genus >= 2");
            const SiegelPoint doubled(2.0 * z.entries());
            const int count = 1 << (g - 1);
            jet.value.resize(count);
            jet.derivs.resize(count, m);
            for (int k = 0; k < count; ++k) {
                const ThetaJet t = theta_jet(
                    Characteristic(prepend(0, bit_vector(k, g - 1)), e1(g)),
                    doubled, zero, prec);
                jet.value(k) = t.value;
                // argument 2 Pi: derivative in Pi_ij doubles
                jet.derivs.row(k) = 2.0 * t.grad_tau.transpose();
            }
            break;
        }
    }
    if (!(jet.value.cwiseAbs().maxCoeff() > 0.0)) {
        throw std::runtime_error("nullwert_jet: value vector vanished; numerical fault");
    }
    return jet;
}

MapJet veronese_jet(const MapJet& jet) {
    const auto len = jet.value.size();
    const double sqrt2 = std::sqrt(2.0);
    MapJet out;
    out.genus = jet.genus;
    const auto count = len * (len + 1) / 2;
    out.value.resize(count);
    out.derivs.resize(count, jet.derivs.cols());
    int k = 0;
    for (int a = 0; a < len; ++a) {
        for (int b = a; b < len; ++b) {
            if (a == b) {
                out.value(k) = jet.value(a) * jet.value(a);
                out.derivs.row(k) = 2.0 * jet.value(a) * jet.derivs.row(a);
            } else {
                out.value(k) = sqrt2 * jet.value(a) * jet.value(b);
                out.derivs.row(k) = sqrt2 * (jet.derivs.row(a) * jet.value(b) +
                                             jet.derivs.row(b) * jet.value(a));
            }
            ++k;
        }
    }
    return out;
}

HermitianForm fs_pullback(const MapJet& jet) {
    const double n2 = jet.value.squaredNorm();
    if (!(n2 > 0.0)) throw std::domain_error("fs_pullback: zero value vector");
    const int m = static_cast<int>(jet.derivs.cols());

    // P_ab = <D_a, D_b>, q_a = <D_a, F>  (both linear in the first slot)
    const Eigen::MatrixXcd p = jet.derivs.transpose() * jet.derivs.conjugate();
    const Eigen::VectorXcd q = jet.derivs.transpose() * jet.value.conjugate();
    Eigen::MatrixXcd h = (p * n2 - q * q.adjoint()) / (n2 * n2);
    // exact Hermitian symmetrization of roundoff
    h = 0.5 * (h + h.adjoint()).eval();
    return HermitianForm(jet.genus, std::move(h));
}

double heat_consistency(const Eigen::VectorXi& u, const SiegelPoint& z,
                        const Precision& prec) {
    const int g = z.genus();
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(g);
    const ThetaJet jet = theta_jet(Characteristic(u, Eigen::VectorXi::Zero(g)), z, zero,
                                   prec, /*second_order_mode=*/true);
    double worst = 0.0;
    for (int i = 0; i < g; ++i) {
        for (int j = i; j < g; ++j) {
            const Complex lhs = Complex(0.0, 4.0 * kPi) * (i == j ? 2.0 : 1.0) *
                                jet.grad_tau(sym_index(i, j, g));
            const Complex rhs = jet.hess_z(i, j);
            worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
        }
    }
    return worst;
}

HermitianForm prym_form(const SiegelPoint& tau, const Precision& prec) {
    HermitianForm h = fs_pullback(nullwert_jet(NullwertMap::second, tau, prec));
    h.entries *= 8.0 * kPi;
    return h;
}

double equivalent_forms_residual(const SiegelPoint& z, FormSide side,
                                 const Precision& prec) {
    Eigen::MatrixXcd a, b;
    if (side == FormSide::low) {
        a = 8.0 * kPi * fs_pullback(nullwert_jet(NullwertMap::second, z, prec)).entries;
        b = 4.0 * kPi * fs_pullback(nullwert_jet(NullwertMap::squared, z, prec)).entries;
    } else {
        a = 4.0 * kPi * fs_pullback(nullwert_jet(NullwertMap::sj, z, prec)).entries;
        b = 8.0 * kPi * fs_pullback(nullwert_jet(NullwertMap::prime, z, prec)).entries;
    }
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return (a - b).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

double restricted_derivative_norm(const SiegelPoint& pi_prime, Complex y,
                                  SliceSelect slice, const Precision& prec) {
    if (!(y.imag() > 0.0)) {
        throw std::domain_error("restricted_derivative_norm: Im(y) must be positive");
    }
    Eigen::MatrixXcd ym(1, 1);
    ym(0, 0) = y;
    const SiegelPoint y_point(ym);
    const int g = pi_prime.genus() + 1;

    const SiegelPoint block = (slice == SliceSelect::first)
                                  ? block_diag(y_point, pi_prime)
                                  : block_diag(pi_prime, y_point);
    const int coord = (slice == SliceSelect::first) ? sym_index(0, 0, g)
                                                    : sym_index(g - 1, g - 1, g);
    const MapJet jet = nullwert_jet(NullwertMap::prime, block, prec);
    const Eigen::VectorXcd d = jet.derivs.col(coord);
    const double n2 = jet.value.squaredNorm();
    const Eigen::VectorXcd proj = d - (inner(d, jet.value) / n2) * jet.value;
    return proj.norm() / std::sqrt(n2);
}

NondescentReport nondescent_report(const SiegelPoint& pi_prime, Complex y0,
                                   const Precision& prec) {
    if (!(y0.imag() > 0.0)) {
        throw std::domain_error("nondescent_report: Im(y0) must be positive");
    }
    NondescentReport rep;
    const int g = pi_prime.genus() + 1;
    rep.genus = g;

    rep.first_slice_norm =
        restricted_derivative_norm(pi_prime, y0, SliceSelect::first, prec);
    rep.last_slice_norm =
        restricted_derivative_norm(pi_prime, y0, SliceSelect::last, prec);
    // diagonal form entry along a slice = squared projectivized derivative
    rep.first_slice_form = rep.first_slice_norm * rep.first_slice_norm;
    rep.last_slice_form = rep.last_slice_norm * rep.last_slice_norm;

    Eigen::MatrixXcd ym(1, 1);
    ym(0, 0) = y0;
    const SiegelPoint y_point(ym);
    const SiegelPoint first_block = block_diag(y_point, pi_prime);
    const SiegelPoint last_block = block_diag(pi_prime, y_point);
    const SiegelPoint swapped = sp_action(swap_matrix(g), first_block);
    rep.swap_residual =
        (swapped.entries() - last_block.entries()).cwiseAbs().maxCoeff();
    rep.swap_exact = rep.swap_residual <= 1e-12;

    rep.differ = rep.swap_exact && rep.first_slice_norm <= rep.first_threshold &&
                 rep.last_slice_norm >= rep.last_floor;
    return rep;
}

}  // namespace siegeltheta
