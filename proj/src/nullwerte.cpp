#include "siegeltheta/nullwerte.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace siegeltheta {

namespace {

constexpr double kNullFloor = 1e-6;  // an all-zero null vector is a numerical fault

void check_nonzero(const ProjectivePoint& p, const char* what) {
    if (p.coords.size() == 0 || !(p.coords.cwiseAbs().maxCoeff() > kNullFloor)) {
        throw std::runtime_error(std::string(what) +
                                 ": all coordinates vanish; numerical fault");
    }
}

Eigen::VectorXi prepend(int head, const Eigen::VectorXi& tail) {
    Eigen::VectorXi out(tail.size() + 1);
    out(0) = head;
    out.tail(tail.size()) = tail;
    return out;
}

// Unit-vector-first characteristic (1, 0, ..., 0) of length g.
Eigen::VectorXi e1(int g) {
    Eigen::VectorXi v = Eigen::VectorXi::Zero(g);
    v(0) = 1;
    return v;
}

}  // namespace

Eigen::VectorXi bit_vector(int index, int n) {
    Eigen::VectorXi v(n);
    for (int i = 0; i < n; ++i) v(i) = (index >> (n - 1 - i)) & 1;
    return v;
}

std::string bits_label(const Eigen::VectorXi& v) {
    std::string s;
    s.reserve(v.size());
    for (int i = 0; i < v.size(); ++i) s += static_cast<char>('0' + v(i));
    return s;
}

std::string char_label(const Characteristic& chi) {
    return bits_label(chi.eps) + "|" + bits_label(chi.eps_prime);
}

std::string pair_label(const Eigen::VectorXi& u, const Eigen::VectorXi& v) {
    return bits_label(u) + "," + bits_label(v);
}

std::vector<Characteristic> even_characteristics(int n) {
    if (n < 1) throw std::domain_error("even_characteristics: n must be >= 1");
    std::vector<Characteristic> out;
    out.reserve(((1 << (2 * n)) + (1 << n)) / 2);
    for (int e = 0; e < (1 << n); ++e) {
        const Eigen::VectorXi eps = bit_vector(e, n);
        for (int s = 0; s < (1 << n); ++s) {
            const Eigen::VectorXi sigma = bit_vector(s, n);
            if (eps.dot(sigma) % 2 == 0) out.emplace_back(eps, sigma);
        }
    }
    return out;
}

std::vector<std::pair<Eigen::VectorXi, Eigen::VectorXi>> pair_labels(int n) {
    if (n < 1) throw std::domain_error("pair_labels: n must be >= 1");
    std::vector<std::pair<Eigen::VectorXi, Eigen::VectorXi>> out;
    out.reserve(((1 << (2 * n)) + (1 << n)) / 2);
    for (int a = 0; a < (1 << n); ++a)
        for (int b = a; b < (1 << n); ++b)
            out.emplace_back(bit_vector(a, n), bit_vector(b, n));
    return out;
}

ProjectivePoint theta_null_second(const SiegelPoint& tau, const Precision& prec) {
    const int n = tau.genus();
    if (n < 1) throw std::domain_error("theta_null_second: genus must be >= 1");
    const SiegelPoint doubled(2.0 * tau.entries());
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n);

    ProjectivePoint p;
    p.coords.resize(1 << n);
    for (int k = 0; k < (1 << n); ++k) {
        const Eigen::VectorXi u = bit_vector(k, n);
        p.coords(k) = theta_char(Characteristic(u, Eigen::VectorXi::Zero(n)),
                                 doubled, zero, prec);
        p.labels.push_back(bits_label(u));
    }
    check_nonzero(p, "theta_null_second");
    return p;
}

ProjectivePoint theta_null_squared(const SiegelPoint& tau, const Precision& prec) {
    const int n = tau.genus();
    if (n < 1) throw std::domain_error("theta_null_squared: genus must be >= 1");
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n);

    ProjectivePoint p;
    const auto chars = even_characteristics(n);
    p.coords.resize(static_cast<int>(chars.size()));
    for (std::size_t k = 0; k < chars.size(); ++k) {
        const Complex v = theta_char(chars[k], tau, zero, prec);
        p.coords(static_cast<int>(k)) = v * v;
        p.labels.push_back(char_label(chars[k]));
    }
    check_nonzero(p, "theta_null_squared");
    return p;
}

ProjectivePoint theta_null_sj(const SiegelPoint& pi, const Precision& prec) {
    const int g = pi.genus();
    if (g < 2) throw std::domain_error("theta_null_sj: genus must be >= 2");
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(g);

    ProjectivePoint p;
    const auto chars = even_characteristics(g - 1);
    p.coords.resize(static_cast<int>(chars.size()));
    for (std::size_t k = 0; k < chars.size(); ++k) {
        const Eigen::VectorXi eps = prepend(0, chars[k].eps);
        const Complex a =
            theta_char(Characteristic(eps, prepend(0, chars[k].eps_prime)), pi, zero, prec);
        const Complex b =
            theta_char(Characteristic(eps, prepend(1, chars[k].eps_prime)), pi, zero, prec);
        p.coords(static_cast<int>(k)) = a * b;
        p.labels.push_back(char_label(chars[k]));
    }
    check_nonzero(p, "theta_null_sj");
    return p;
}

ProjectivePoint theta_null_prime(const SiegelPoint& pi, const Precision& prec) {
    const int g = pi.genus();
    if (g < 2) throw std::domain_error("theta_null_prime: genus must be >= 2");
    const SiegelPoint doubled(2.0 * pi.entries());
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(g);

    ProjectivePoint p;
    p.coords.resize(1 << (g - 1));
    for (int k = 0; k < (1 << (g - 1)); ++k) {
        const Eigen::VectorXi u = bit_vector(k, g - 1);
        p.coords(k) =
            theta_char(Characteristic(prepend(0, u), e1(g)), doubled, zero, prec);
        p.labels.push_back(bits_label(u));
    }
    check_nonzero(p, "theta_null_prime");
    return p;
}

ProjectivePoint veronese(const ProjectivePoint& x) {
    const auto len = x.coords.size();
    int n = 0;
    while ((1 << n) < len) ++n;
    if ((1 << n) != len || len < 2) {
        throw std::domain_error("veronese: coordinate count must be a power of two >= 2");
    }
    const double sqrt2 = std::sqrt(2.0);
    ProjectivePoint out;
    const auto pairs = pair_labels(n);
    out.coords.resize(static_cast<int>(pairs.size()));
    int k = 0;
    for (int a = 0; a < len; ++a) {
        for (int b = a; b < len; ++b) {
            out.coords(k) = (a == b) ? x.coords(a) * x.coords(a)
                                     : sqrt2 * x.coords(a) * x.coords(b);
            out.labels.push_back(pair_label(pairs[k].first, pairs[k].second));
            ++k;
        }
    }
    return out;
}

MixingMatrix mixing_matrix(int n) {
    if (n < 1) throw std::domain_error("mixing_matrix: n must be >= 1");
    const auto pairs = pair_labels(n);
    const auto chars = even_characteristics(n);
    const int dim = static_cast<int>(pairs.size());
    const double base = std::pow(2.0, -n);
    const double sqrt2 = std::sqrt(2.0);

    MixingMatrix m;
    m.n = n;
    m.entries = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const Eigen::VectorXi& u = pairs[r].first;
        const Eigen::VectorXi& up = pairs[r].second;
        Eigen::VectorXi usum(n);
        for (int i = 0; i < n; ++i) usum(i) = (u(i) + up(i)) % 2;
        const bool usum_zero = usum.maxCoeff() == 0 && usum.minCoeff() == 0;
        for (int c = 0; c < dim; ++c) {
            if (chars[c].eps != usum) continue;
            // For even (eps, sigma) the sign is the same computed from u or u'.
            const double sign = (u.dot(chars[c].eps_prime) % 2 == 0) ? 1.0 : -1.0;
            m.entries(r, c) = (usum_zero ? base : sqrt2 * base) * sign;
        }
        m.row_labels.push_back(pair_label(u, up));
    }
    for (const auto& chi : chars) m.col_labels.push_back(char_label(chi));
    return m;
}

double projective_distance(const ProjectivePoint& x, const ProjectivePoint& y) {
    if (x.coords.size() != y.coords.size()) {
        throw std::domain_error("projective_distance: length mismatch");
    }
    const double nx = x.coords.norm();
    const double ny = y.coords.norm();
    if (!(nx > 0.0) || !(ny > 0.0)) {
        throw std::domain_error("projective_distance: zero vector");
    }
    // Angle with cos = |<x,y>|/(|x||y|), evaluated through atan2 of the
    // parallel and orthogonal components so that near-zero angles keep full
    // precision (acos alone bottoms out near sqrt(eps)).
    const Eigen::VectorXcd xhat = x.coords / nx;
    const Complex c = xhat.dot(y.coords);
    const Eigen::VectorXcd perp = y.coords - c * xhat;
    return std::atan2(perp.norm(), std::abs(c));
}

namespace {

ProjectivePoint apply_mixing(const MixingMatrix& m, const ProjectivePoint& p) {
    ProjectivePoint out;
    out.coords = m.entries * p.coords;
    out.labels = m.row_labels;
    return out;
}

}  // namespace

double sj_factorization_residual_low(const SiegelPoint& tau, const Precision& prec) {
    const ProjectivePoint lhs = veronese(theta_null_second(tau, prec));
    const ProjectivePoint rhs =
        apply_mixing(mixing_matrix(tau.genus()), theta_null_squared(tau, prec));
    return projective_distance(lhs, rhs);
}

double sj_factorization_residual_high(const SiegelPoint& pi, const Precision& prec) {
    const ProjectivePoint lhs = veronese(theta_null_prime(pi, prec));
    const ProjectivePoint rhs =
        apply_mixing(mixing_matrix(pi.genus() - 1), theta_null_sj(pi, prec));
    return projective_distance(lhs, rhs);
}

double schottky_jung_residual(const SiegelPoint& pi, const SiegelPoint& tau,
                              const Precision& prec) {
    if (pi.genus() != tau.genus() + 1) {
        throw std::domain_error("schottky_jung_residual: genera must differ by one");
    }
    return projective_distance(theta_null_sj(pi, prec), theta_null_squared(tau, prec));
}

}  // namespace siegeltheta
