#include "siegeltheta/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "siegeltheta/rng.hpp"

namespace siegeltheta {

namespace {

Eigen::VectorXcd random_z(Rng& rng, int g, double re_span, double im_span) {
    Eigen::VectorXcd z(g);
    for (int i = 0; i < g; ++i) {
        z(i) = Complex(rng.uniform(-re_span, re_span), rng.uniform(-im_span, im_span));
    }
    return z;
}

Eigen::VectorXi random_ints(Rng& rng, int g, int lo, int hi) {
    Eigen::VectorXi v(g);
    for (int i = 0; i < g; ++i) v(i) = rng.uniform_int(lo, hi);
    return v;
}

double parity_sample(Rng& rng, int g, const Precision& prec) {
    const Characteristic chi(random_ints(rng, g, 0, 2), random_ints(rng, g, 0, 2));
    const SiegelPoint z_matrix = random_siegel(g, rng.raw(), 0.8);
    const Eigen::VectorXcd z = random_z(rng, g, 0.5, 0.2);
    const Complex at_plus = theta_char(chi, z_matrix, z, prec);
    const Complex at_minus = theta_char(chi, z_matrix, -z, prec);
    const double sign = chi.is_even() ? 1.0 : -1.0;
    return std::abs(at_minus - sign * at_plus) / (1.0 + std::abs(at_plus));
}

double addition_sample(Rng& rng, int g, const Precision& prec) {
    const Eigen::VectorXi alpha = random_ints(rng, g, 0, 1);
    const Eigen::VectorXi beta = random_ints(rng, g, 0, 1);
    const Eigen::VectorXi eps = random_ints(rng, g, 0, 1);
    const SiegelPoint z_matrix = random_siegel(g, rng.raw(), 0.8);
    const SiegelPoint doubled(2.0 * z_matrix.entries());
    const Eigen::VectorXcd z = random_z(rng, g, 0.3, 0.15);
    const Eigen::VectorXcd x = random_z(rng, g, 0.3, 0.15);

    const Complex lhs =
        theta_char(Characteristic(alpha, beta), doubled, 2.0 * z, prec) *
        theta_char(Characteristic(alpha + eps, beta), doubled, 2.0 * x, prec);

    Complex rhs(0.0, 0.0);
    for (int s = 0; s < (1 << g); ++s) {
        Eigen::VectorXi sigma(g);
        for (int i = 0; i < g; ++i) sigma(i) = (s >> (g - 1 - i)) & 1;
        const double sign = (alpha.dot(sigma) % 2 == 0) ? 1.0 : -1.0;
        rhs += sign *
               theta_char(Characteristic(eps, beta + sigma), z_matrix, z + x, prec) *
               theta_char(Characteristic(eps, sigma), z_matrix, z - x, prec);
    }
    rhs /= std::pow(2.0, g);
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

double blocks_sample(Rng& rng, int g, const Precision& prec) {
    const int k = rng.uniform_int(1, g - 1);
    const SiegelPoint z1 = random_siegel(k, rng.raw(), 0.8);
    const SiegelPoint z2 = random_siegel(g - k, rng.raw(), 0.8);
    const Characteristic chi(random_ints(rng, g, 0, 1), random_ints(rng, g, 0, 1));
    const Eigen::VectorXcd z = random_z(rng, g, 0.4, 0.2);

    const Complex whole = theta_char(chi, block_diag(z1, z2), z, prec);
    const Complex part1 = theta_char(
        Characteristic(chi.eps.head(k), chi.eps_prime.head(k)), z1, z.head(k), prec);
    const Complex part2 =
        theta_char(Characteristic(chi.eps.tail(g - k), chi.eps_prime.tail(g - k)), z2,
                   z.tail(g - k), prec);
    return std::abs(whole - part1 * part2) / (1.0 + std::abs(part1 * part2));
}

double heat_sample(Rng& rng, int g, const Precision& prec) {
    const Eigen::VectorXi u = random_ints(rng, g, 0, 2);
    const SiegelPoint z_matrix = random_siegel(g, rng.raw(), 0.8);
    return heat_consistency(u, z_matrix, prec);
}

double veronese_sample(Rng& rng, int g, const Precision& prec) {
    const SiegelPoint tau = random_siegel(g, rng.raw(), 0.8);
    const MapJet jet = nullwert_jet(NullwertMap::second, tau, prec);
    const Eigen::MatrixXcd composed = fs_pullback(veronese_jet(jet)).entries;
    const Eigen::MatrixXcd doubled = 2.0 * fs_pullback(jet).entries;
    const double scale = std::max(doubled.cwiseAbs().maxCoeff(), 1e-300);
    return (composed - doubled).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

double suite_default_tol(Suite suite) {
    switch (suite) {
        case Suite::parity: return 1e-10;
        case Suite::addition: return 1e-9;
        case Suite::blocks: return 1e-10;
        case Suite::heat: return 1e-8;
        case Suite::sj_low: return 1e-9;
        case Suite::sj_high: return 1e-9;
        case Suite::veronese: return 1e-9;
    }
    throw std::logic_error("unknown suite");
}

int suite_min_genus(Suite suite) {
    switch (suite) {
        case Suite::blocks:
        case Suite::sj_high: return 2;
        default: return 1;
    }
}

std::string suite_name(Suite suite) {
    switch (suite) {
        case Suite::parity: return "parity";
        case Suite::addition: return "addition";
        case Suite::blocks: return "blocks";
        case Suite::heat: return "heat";
        case Suite::sj_low: return "sj-low";
        case Suite::sj_high: return "sj-high";
        case Suite::veronese: return "veronese";
    }
    throw std::logic_error("unknown suite");
}

SuiteResult run_suite(Suite suite, int genus, int samples, std::uint64_t seed,
                      double tol, const Precision& prec) {
    if (genus < suite_min_genus(suite)) {
        throw std::domain_error("suite " + suite_name(suite) + " requires genus >= " +
                                std::to_string(suite_min_genus(suite)));
    }
    if (samples < 1) throw std::domain_error("samples must be >= 1");

    SuiteResult result;
    result.suite = suite;
    result.genus = genus;
    result.tol = tol;
    result.total = samples;

    Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(suite) + 1);
    for (int i = 0; i < samples; ++i) {
        double res = 0.0;
        switch (suite) {
            case Suite::parity: res = parity_sample(rng, genus, prec); break;
            case Suite::addition: res = addition_sample(rng, genus, prec); break;
            case Suite::blocks: res = blocks_sample(rng, genus, prec); break;
            case Suite::heat: res = heat_sample(rng, genus, prec); break;
            case Suite::sj_low:
                res = sj_factorization_residual_low(random_siegel(genus, rng.raw(), 0.8), prec);
                break;
            case Suite::sj_high:
                res = sj_factorization_residual_high(random_siegel(genus, rng.raw(), 0.8), prec);
                break;
            case Suite::veronese: res = veronese_sample(rng, genus, prec); break;
        }
        result.residuals.push_back(res);
        result.max_residual = std::max(result.max_residual, res);
        if (res <= tol) ++result.passed;
    }
    return result;
}

}  // namespace siegeltheta
