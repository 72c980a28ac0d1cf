#include "siegeltheta/theta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace siegeltheta {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const Complex kPiI(0.0, kPi);
const Complex kTwoPiI(0.0, 2.0 * kPi);

constexpr int kMaxRadius = 512;
constexpr double kLambdaFloor = 1e-10;

struct LatticePoint {
    Eigen::VectorXi m;
    Eigen::VectorXd w;  // m + eps/2
    double norm2;
};

// All m in Z^g with ||m + shift|| <= radius, sorted by ||m + shift||
// ascending with lexicographic tie-break on m. g = 0 yields the single
// empty point.
std::vector<LatticePoint> lattice_ball(const Eigen::VectorXd& shift, double radius) {
    const int g = static_cast<int>(shift.size());
    std::vector<LatticePoint> points;
    if (g == 0) {
        points.push_back({Eigen::VectorXi(0), Eigen::VectorXd(0), 0.0});
        return points;
    }
    Eigen::VectorXi lo(g), hi(g), m(g);
    for (int i = 0; i < g; ++i) {
        lo(i) = static_cast<int>(std::ceil(-shift(i) - radius));
        hi(i) = static_cast<int>(std::floor(-shift(i) + radius));
        if (lo(i) > hi(i)) return points;
    }
    m = lo;
    const double r2 = radius * radius;
    for (;;) {
        Eigen::VectorXd w = m.cast<double>() + shift;
        const double n2 = w.squaredNorm();
        if (n2 <= r2) points.push_back({m, std::move(w), n2});
        int axis = g - 1;
        while (axis >= 0 && m(axis) == hi(axis)) m(axis--) = lo(axis);
        if (axis < 0) break;
        ++m(axis);
    }
    std::sort(points.begin(), points.end(),
              [](const LatticePoint& a, const LatticePoint& b) {
                  if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
                  return std::lexicographical_compare(
                      a.m.data(), a.m.data() + a.m.size(),
                      b.m.data(), b.m.data() + b.m.size());
              });
    return points;
}

// Pairwise (tree) reduction; deterministic for a fixed input order.
template <typename T>
T pairwise_reduce(std::vector<T>& buf) {
    std::size_t n = buf.size();
    while (n > 1) {
        std::size_t k = 0;
        for (std::size_t i = 0; i + 1 < n; i += 2) buf[k++] = buf[i] + buf[i + 1];
        if (n % 2) buf[k++] = buf[n - 1];
        n = k;
    }
    return buf[0];
}

// Upper bound for sum over ||w|| > K of mult(||w||) exp(-pi lam r^2 + 2 pi b r),
// counting at most (2k+3)^g lattice points per unit shell [k, k+1).
double tail_bound(int k_start, double lam, double b, int g, bool jet_multiplier) {
    double total = 0.0;
    const double peak = b / lam;
    for (int k = k_start; k < k_start + 8000; ++k) {
        const double r_hi = k + 1.0;
        const double r_star = std::clamp(peak, static_cast<double>(k), r_hi);
        const double exponent = -kPi * lam * r_star * r_star + 2.0 * kPi * b * r_star;
        double term = std::pow(2.0 * k + 3.0, g) * std::exp(exponent);
        if (jet_multiplier) {
            const double p = 1.0 + 4.0 * kPi * r_hi;  // covers all derivative prefactors
            term *= p * p;
        }
        total += term;
        if (k > peak + 1.0 && term < 1e-280) break;
    }
    return total;
}

int radius_search(double lam, double b, int g, double tol, bool jet_multiplier) {
    if (!(lam > kLambdaFloor)) {
        throw std::domain_error("theta: Im(Z) numerically degenerate (lambda_min = " +
                                std::to_string(lam) + ")");
    }
    for (int k = 1; k <= kMaxRadius; ++k) {
        if (tail_bound(k, lam, b, g, jet_multiplier) < tol) return k;
    }
    throw std::domain_error("theta: truncation radius exceeds cap; input too close to degenerate");
}

void check_dims(const Characteristic& chi, const SiegelPoint& zm,
                const Eigen::VectorXcd& z) {
    if (chi.genus() != zm.genus() || z.size() != zm.genus()) {
        throw std::domain_error("theta: genus mismatch between characteristic, matrix and argument");
    }
}

void check_precision(const Precision& prec) {
    if (!(prec.tol >= 1e-15)) {
        throw std::domain_error("theta: precision target below 1e-15 is not certifiable");
    }
}

Complex series_term(const Eigen::MatrixXcd& z_entries, const Eigen::VectorXcd& v,
                    const Eigen::VectorXd& w) {
    const int g = static_cast<int>(w.size());
    Complex quad(0.0, 0.0), lin(0.0, 0.0);
    for (int i = 0; i < g; ++i) {
        const double wi = w(i);
        for (int j = 0; j < g; ++j) quad += wi * z_entries(i, j) * w(j);
        lin += wi * v(i);
    }
    return std::exp(kPiI * quad + kTwoPiI * lin);
}

// Flattened jet layout: [value | grad_z (g) | hess_z (g*g row-major) |
// grad_tau (sym_count)].
int flat_len(int g) { return 1 + g + g * g + sym_count(g); }

Eigen::VectorXcd flat_term(const Eigen::MatrixXcd& z_entries, const Eigen::VectorXcd& v,
                           const Eigen::VectorXd& w) {
    const int g = static_cast<int>(w.size());
    Eigen::VectorXcd flat(flat_len(g));
    const Complex t = series_term(z_entries, v, w);
    flat(0) = t;
    for (int i = 0; i < g; ++i) flat(1 + i) = t * kTwoPiI * w(i);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            flat(1 + g + i * g + j) = t * (kTwoPiI * w(i)) * (kTwoPiI * w(j));
    int k = 1 + g + g * g;
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j)
            flat(k++) = t * kPiI * w(i) * w(j) * (i == j ? 1.0 : 2.0);
    return flat;
}

// Shared evaluation path. Returns the full flattened sum (or just the value
// when want_jet is false, with the remaining slots zero).
Eigen::VectorXcd evaluate_flat(const Characteristic& chi, const SiegelPoint& zm,
                               const Eigen::VectorXcd& z, const Precision& prec,
                               bool want_jet) {
    check_dims(chi, zm, z);
    check_precision(prec);
    const int g = zm.genus();
    const Eigen::VectorXd shift = chi.eps.cast<double>() / 2.0;
    Eigen::VectorXcd v = z + chi.eps_prime.cast<Complex>() / 2.0;

    if (g == 0) {
        Eigen::VectorXcd flat = Eigen::VectorXcd::Zero(1);
        flat(0) = Complex(1.0, 0.0);
        return flat;
    }

    const double b = z.imag().norm();
    // Evaluate a notch tighter than requested so reduction roundoff stays
    // inside the certified budget.
    const int radius = radius_search(zm.min_imag_eigenvalue(), b, g, 0.25 * prec.tol, want_jet);
    const int outer = prec.cross_check ? radius + 2 : radius;
    const auto points = lattice_ball(shift, static_cast<double>(outer));

    const auto sum_prefix = [&](double max_norm2) -> Eigen::VectorXcd {
        if (want_jet) {
            std::vector<Eigen::VectorXcd> terms;
            terms.reserve(points.size());
            for (const auto& p : points) {
                if (p.norm2 > max_norm2) break;
                terms.push_back(flat_term(zm.entries(), v, p.w));
            }
            if (terms.empty()) return Eigen::VectorXcd::Zero(flat_len(g));
            return pairwise_reduce(terms);
        }
        std::vector<Complex> terms;
        terms.reserve(points.size());
        for (const auto& p : points) {
            if (p.norm2 > max_norm2) break;
            terms.push_back(series_term(zm.entries(), v, p.w));
        }
        Eigen::VectorXcd flat = Eigen::VectorXcd::Zero(flat_len(g));
        if (!terms.empty()) flat(0) = pairwise_reduce(terms);
        return flat;
    };

    Eigen::VectorXcd full = sum_prefix(static_cast<double>(outer) * outer + 0.5);
    if (prec.cross_check) {
        const Eigen::VectorXcd inner =
            sum_prefix(static_cast<double>(radius) * radius + 0.5);
        const double drift = (full - inner).cwiseAbs().maxCoeff();
        if (drift > prec.tol) {
            throw std::runtime_error(
                "theta: cross-check failed, enlarged radius moved the value by " +
                std::to_string(drift));
        }
    }
    return full;
}

Eigen::VectorXi zeros_like(const Eigen::VectorXi& u) {
    return Eigen::VectorXi::Zero(u.size());
}

}  // namespace

Characteristic::Characteristic(Eigen::VectorXi e, Eigen::VectorXi ep)
    : eps(std::move(e)), eps_prime(std::move(ep)) {
    if (eps.size() != eps_prime.size()) {
        throw std::domain_error("Characteristic: eps and eps_prime lengths differ");
    }
}

int Characteristic::parity() const {
    const long long d = eps.cast<long long>().dot(eps_prime.cast<long long>());
    return static_cast<int>(((d % 2) + 2) % 2);
}

int sym_count(int g) { return g * (g + 1) / 2; }

int sym_index(int i, int j, int g) {
    if (i > j) std::swap(i, j);
    return i * g - i * (i - 1) / 2 + (j - i);
}

std::vector<std::pair<int, int>> sym_labels(int g) {
    std::vector<std::pair<int, int>> out;
    out.reserve(sym_count(g));
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) out.emplace_back(i, j);
    return out;
}

double truncation_radius(const SiegelPoint& z_matrix, const Eigen::VectorXcd& z,
                         const Characteristic& chi, double tol) {
    check_dims(chi, z_matrix, z);
    if (!(tol > 0.0)) throw std::domain_error("truncation_radius: tol must be positive");
    if (z_matrix.genus() == 0) return 0.0;
    const double b = z.imag().norm();
    return static_cast<double>(
        radius_search(z_matrix.min_imag_eigenvalue(), b, z_matrix.genus(), tol, false));
}

Complex theta_char(const Characteristic& chi, const SiegelPoint& z_matrix,
                   const Eigen::VectorXcd& z, const Precision& prec) {
    return evaluate_flat(chi, z_matrix, z, prec, false)(0);
}

Complex theta_second_order(const Eigen::VectorXi& u, const SiegelPoint& z_matrix,
                           const Eigen::VectorXcd& z, const Precision& prec) {
    const SiegelPoint doubled(2.0 * z_matrix.entries());
    return theta_char(Characteristic(u, zeros_like(u)), doubled, 2.0 * z, prec);
}

ThetaJet theta_jet(const Characteristic& chi, const SiegelPoint& z_matrix,
                   const Eigen::VectorXcd& z, const Precision& prec,
                   bool second_order_mode) {
    const int g = z_matrix.genus();
    Eigen::VectorXcd flat;
    if (second_order_mode) {
        if (chi.eps_prime.size() != 0 && chi.eps_prime.cwiseAbs().maxCoeff() != 0) {
            throw std::domain_error("theta_jet: second-order mode requires eps_prime = 0");
        }
        const SiegelPoint doubled(2.0 * z_matrix.entries());
        flat = evaluate_flat(Characteristic(chi.eps, zeros_like(chi.eps)), doubled,
                             2.0 * z, prec, true);
    } else {
        flat = evaluate_flat(chi, z_matrix, z, prec, true);
    }

    ThetaJet jet;
    jet.value = flat(0);
    jet.grad_z = flat.segment(1, g);
    jet.hess_z = Eigen::MatrixXcd(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) jet.hess_z(i, j) = flat(1 + g + i * g + j);
    jet.grad_tau = flat.segment(1 + g + g * g, sym_count(g));
    if (second_order_mode) {
        // chain rule through theta[u;0](2Z; 2z)
        jet.grad_z *= 2.0;
        jet.hess_z *= 4.0;
        jet.grad_tau *= 2.0;
    }
    return jet;
}

std::pair<Characteristic, int> reduce_characteristic(const Characteristic& chi) {
    const int g = chi.genus();
    Eigen::VectorXi r(g), rp(g), b(g);
    for (int i = 0; i < g; ++i) {
        r(i) = ((chi.eps(i) % 2) + 2) % 2;
        rp(i) = ((chi.eps_prime(i) % 2) + 2) % 2;
        b(i) = (chi.eps_prime(i) - rp(i)) / 2;
    }
    const long long dot = chi.eps.cast<long long>().dot(b.cast<long long>());
    const int sign = (((dot % 2) + 2) % 2 == 0) ? 1 : -1;
    return {Characteristic(std::move(r), std::move(rp)), sign};
}

Complex brute_force_theta(const Characteristic& chi, const SiegelPoint& z_matrix,
                          const Eigen::VectorXcd& z, int box) {
    check_dims(chi, z_matrix, z);
    if (box < 0) throw std::domain_error("brute_force_theta: box must be >= 0");
    const int g = z_matrix.genus();
    if (g == 0) return Complex(1.0, 0.0);
    const Eigen::VectorXd shift = chi.eps.cast<double>() / 2.0;
    const Eigen::VectorXcd v = z + chi.eps_prime.cast<Complex>() / 2.0;

    Eigen::VectorXi m = Eigen::VectorXi::Constant(g, -box);
    Complex sum(0.0, 0.0);
    for (;;) {
        sum += series_term(z_matrix.entries(), v, m.cast<double>() + shift);
        int axis = g - 1;
        while (axis >= 0 && m(axis) == box) m(axis--) = -box;
        if (axis < 0) break;
        ++m(axis);
    }
    return sum;
}

}  // namespace siegeltheta
