#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "siegeltheta/nullwerte.hpp"
#include "siegeltheta/rng.hpp"
#include "siegeltheta/verify.hpp"

using namespace siegeltheta;

namespace {

const Precision kOracle{1e-12, true};

SiegelPoint h1(Complex v) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = v;
    return SiegelPoint(m);
}

Characteristic char1(int e, int ep) {
    Eigen::VectorXi a(1), b(1);
    a << e;
    b << ep;
    return Characteristic(a, b);
}

Complex bf1(int e, int ep, Complex tau) {
    return brute_force_theta(char1(e, ep), h1(tau), Eigen::VectorXcd::Zero(1), 30);
}

}  // namespace

TEST_CASE("even characteristics: order, counts, exclusions") {
    const auto e1 = even_characteristics(1);
    REQUIRE(e1.size() == 3);
    CHECK(char_label(e1[0]) == "0|0");
    CHECK(char_label(e1[1]) == "0|1");
    CHECK(char_label(e1[2]) == "1|0");  // (1,1) excluded

    CHECK(even_characteristics(2).size() == 10);
    CHECK(even_characteristics(3).size() == 36);
    for (const auto& chi : even_characteristics(3)) CHECK(chi.is_even());

    CHECK_THROWS_AS(even_characteristics(0), std::domain_error);
}

TEST_CASE("pair labels: order and count parity with the characteristics") {
    const auto p1 = pair_labels(1);
    REQUIRE(p1.size() == 3);
    CHECK(pair_label(p1[0].first, p1[0].second) == "0,0");
    CHECK(pair_label(p1[1].first, p1[1].second) == "0,1");
    CHECK(pair_label(p1[2].first, p1[2].second) == "1,1");

    for (int n = 1; n <= 4; ++n) {
        CHECK(pair_labels(n).size() == even_characteristics(n).size());
    }
    CHECK(pair_labels(2).size() == 10);
}

TEST_CASE("second-order nulls at tau = i against the box-sum oracle") {
    const ProjectivePoint p = theta_null_second(h1(Complex(0, 1)), kOracle);
    REQUIRE(p.coords.size() == 2);
    CHECK(p.labels[0] == "0");
    CHECK(p.labels[1] == "1");
    // oracle: theta[u;0](2i; 0) by plain box sum
    CHECK(std::abs(p.coords(0) - bf1(0, 0, Complex(0, 2))) < 1e-12);
    CHECK(std::abs(p.coords(1) - bf1(1, 0, Complex(0, 2))) < 1e-12);
    // frozen decimals (independently cross-checked)
    CHECK(p.coords(0).real() == doctest::Approx(1.0037348854877391).epsilon(1e-12));
    CHECK(p.coords(1).real() == doctest::Approx(0.41576060259602703).epsilon(1e-12));
}

TEST_CASE("second-order nulls are positive on scaled imaginary identity points") {
    for (int n = 1; n <= 3; ++n) {
        for (double t : {0.4, 1.0, 2.5}) {
            const SiegelPoint tau =
                validate_siegel(Complex(0, t) * Eigen::MatrixXcd::Identity(n, n));
            const ProjectivePoint p = theta_null_second(tau, kOracle);
            for (int k = 0; k < p.coords.size(); ++k) {
                CHECK(p.coords(k).real() > 0.0);
                CHECK(std::abs(p.coords(k).imag()) < 1e-12);
            }
        }
    }
}

TEST_CASE("squared nulls at tau = i") {
    const ProjectivePoint p = theta_null_squared(h1(Complex(0, 1)), kOracle);
    REQUIRE(p.coords.size() == 3);
    CHECK(p.labels[0] == "0|0");
    const Complex t00 = bf1(0, 0, Complex(0, 1));
    const Complex t01 = bf1(0, 1, Complex(0, 1));
    const Complex t10 = bf1(1, 0, Complex(0, 1));
    CHECK(std::abs(p.coords(0) - t00 * t00) < 1e-11);
    CHECK(std::abs(p.coords(1) - t01 * t01) < 1e-11);
    CHECK(std::abs(p.coords(2) - t10 * t10) < 1e-11);
    // theta[0;1](i) = theta[1;0](i) analytically
    CHECK(std::abs(p.coords(1) - p.coords(2)) < 1e-12);
    // frozen decimals
    CHECK(p.coords(0).real() == doctest::Approx(1.1803405990160962).epsilon(1e-12));
    CHECK(p.coords(1).real() == doctest::Approx(0.83462684167407319).epsilon(1e-12));
}

TEST_CASE("squared nulls are invariant under even shifts of the characteristic") {
    Rng rng(101);
    for (int rep = 0; rep < 5; ++rep) {
        const int n = rng.uniform_int(1, 2);
        const SiegelPoint tau = random_siegel(n, rng.raw(), 0.7);
        const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n);
        const auto chars = even_characteristics(n);
        const auto& chi = chars[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(chars.size()) - 1))];
        Eigen::VectorXi shift(n);
        for (int i = 0; i < n; ++i) shift(i) = 2 * rng.uniform_int(-1, 1);
        const Complex a = theta_char(chi, tau, zero, kOracle);
        const Complex b =
            theta_char(Characteristic(chi.eps + shift, chi.eps_prime), tau, zero, kOracle);
        CHECK(std::abs(a * a - b * b) <= 1e-11 * (1 + std::abs(a * a)));
    }
}

TEST_CASE("paired nulls factor over diag(i, 2i) per the block rule") {
    const SiegelPoint pi = block_diag(h1(Complex(0, 1)), h1(Complex(0, 2)));
    const ProjectivePoint p = theta_null_sj(pi, kOracle);
    REQUIRE(p.coords.size() == 3);
    // coordinate at (0|0): theta[00;00](Pi) * theta[00;10](Pi)
    //   = theta[0;0](i) theta[0;0](2i) * theta[0;1](i) theta[0;0](2i)
    const Complex expect =
        bf1(0, 0, Complex(0, 1)) * bf1(0, 1, Complex(0, 1)) *
        bf1(0, 0, Complex(0, 2)) * bf1(0, 0, Complex(0, 2));
    CHECK(std::abs(p.coords(0) - expect) < 1e-11);
    CHECK(p.labels[0] == "0|0");
}

TEST_CASE("primed nulls factor over diag(i, i)") {
    const SiegelPoint pi = block_diag(h1(Complex(0, 1)), h1(Complex(0, 1)));
    const ProjectivePoint p = theta_null_prime(pi, kOracle);
    REQUIRE(p.coords.size() == 2);
    // theta[(0,u);(1,0)](2 diag(i,i)) = theta[0;1](2i) * theta[u;0](2i)
    const Complex common = bf1(0, 1, Complex(0, 2));
    CHECK(std::abs(p.coords(0) - common * bf1(0, 0, Complex(0, 2))) < 1e-11);
    CHECK(std::abs(p.coords(1) - common * bf1(1, 0, Complex(0, 2))) < 1e-11);
    // parity of ((0,u); (1,0)) is even for every u
    CHECK(Characteristic((Eigen::VectorXi(2) << 0, 1).finished(),
                         (Eigen::VectorXi(2) << 1, 0).finished())
              .is_even());
}

TEST_CASE("primed nulls factor over diag(Pi', z) for g = 2, 3") {
    Rng rng(202);
    for (int g = 2; g <= 3; ++g) {
        const SiegelPoint pi_prime = random_siegel(g - 1, rng.raw(), 0.7);
        const Complex y(rng.uniform(-0.3, 0.3), rng.uniform(0.6, 1.4));
        const SiegelPoint block = block_diag(pi_prime, h1(y));
        const ProjectivePoint p = theta_null_prime(block, kOracle);

        const SiegelPoint doubled_prime(2.0 * pi_prime.entries());
        const SiegelPoint doubled_y = h1(2.0 * y);
        const Eigen::VectorXcd zero_h = Eigen::VectorXcd::Zero(g - 1);
        const Eigen::VectorXcd zero_1 = Eigen::VectorXcd::Zero(1);
        for (int k = 0; k < (1 << (g - 1)); ++k) {
            const Eigen::VectorXi u = bit_vector(k, g - 1);
            Eigen::VectorXi head(g - 1), head_ep(g - 1);
            head(0) = 0;
            head.tail(g - 2) = u.head(g - 2);
            head_ep.setZero();
            head_ep(0) = 1;
            const Complex a = theta_char(Characteristic(head, head_ep), doubled_prime,
                                         zero_h, kOracle);
            const Complex b = theta_char(char1(u(g - 2), 0), doubled_y, zero_1, kOracle);
            CHECK(std::abs(p.coords(k) - a * b) <= 1e-10 * (1 + std::abs(a * b)));
        }
    }
}

TEST_CASE("veronese embedding: direct values and the norm identity") {
    ProjectivePoint x;
    x.coords = Eigen::VectorXcd(2);
    x.coords << Complex(1, 0), Complex(1, 0);
    x.labels = {"0", "1"};
    const ProjectivePoint v = veronese(x);
    REQUIRE(v.coords.size() == 3);
    CHECK(std::abs(v.coords(0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(v.coords(1) - Complex(std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(v.coords(2) - Complex(1, 0)) < 1e-15);
    CHECK(v.labels[1] == "0,1");

    x.coords << Complex(1, 0), Complex(0, 0);
    const ProjectivePoint v2 = veronese(x);
    CHECK(std::abs(v2.coords(0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(v2.coords(1)) < 1e-15);
    CHECK(std::abs(v2.coords(2)) < 1e-15);

    Rng rng(33);
    for (int n = 1; n <= 3; ++n) {
        ProjectivePoint y;
        y.coords = Eigen::VectorXcd(1 << n);
        for (int k = 0; k < (1 << n); ++k) {
            y.coords(k) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        }
        const double lhs = veronese(y).coords.squaredNorm();
        const double rhs = std::pow(y.coords.squaredNorm(), 2);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * rhs);
    }

    ProjectivePoint bad;
    bad.coords = Eigen::VectorXcd::Ones(3);
    CHECK_THROWS_AS(veronese(bad), std::domain_error);
}

TEST_CASE("mixing matrix: displayed n=1 values, scaled unitarity, support pattern") {
    const MixingMatrix m1 = mixing_matrix(1);
    Eigen::MatrixXd expect(3, 3);
    const double s = std::sqrt(2.0) / 2.0;
    expect << 0.5, 0.5, 0.0, 0.0, 0.0, s, 0.5, -0.5, 0.0;
    CHECK((m1.entries.real() - expect).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(m1.entries.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(m1.row_labels[1] == "0,1");
    CHECK(m1.col_labels[2] == "1|0");

    for (int n = 1; n <= 4; ++n) {
        const MixingMatrix m = mixing_matrix(n);
        const int dim = static_cast<int>(m.entries.rows());
        const Eigen::MatrixXcd gram = m.entries * m.entries.adjoint();
        const Eigen::MatrixXcd target =
            std::pow(2.0, -n) * Eigen::MatrixXcd::Identity(dim, dim);
        CHECK((gram - target).cwiseAbs().maxCoeff() <= 1e-12);

        // each row is supported on a single first-characteristic block
        const auto pairs = pair_labels(n);
        const auto chars = even_characteristics(n);
        for (int r = 0; r < dim; ++r) {
            Eigen::VectorXi usum(n);
            for (int i = 0; i < n; ++i) {
                usum(i) = (pairs[r].first(i) + pairs[r].second(i)) % 2;
            }
            for (int c = 0; c < dim; ++c) {
                if (chars[c].eps != usum) CHECK(m.entries(r, c) == Complex(0, 0));
            }
        }
    }
}

TEST_CASE("projective distance: invariances and reference angles") {
    ProjectivePoint x, y;
    x.coords = Eigen::VectorXcd(2);
    y.coords = Eigen::VectorXcd(2);

    x.coords << Complex(1, 0), Complex(2, 1);
    y.coords = Complex(0, 3) * x.coords;
    CHECK(projective_distance(x, y) <= 1e-8);

    x.coords << Complex(1, 0), Complex(0, 0);
    y.coords << Complex(0, 0), Complex(1, 0);
    CHECK(projective_distance(x, y) == doctest::Approx(1.5707963267948966));

    y.coords << Complex(1, 0), Complex(1, 0);
    CHECK(projective_distance(x, y) == doctest::Approx(0.78539816339744831));

    ProjectivePoint z;
    z.coords = Eigen::VectorXcd::Zero(2);
    CHECK_THROWS_AS(projective_distance(x, z), std::domain_error);
    z.coords = Eigen::VectorXcd::Ones(3);
    CHECK_THROWS_AS(projective_distance(x, z), std::domain_error);
}

TEST_CASE("factorization residual, low diagram") {
    CHECK(sj_factorization_residual_low(h1(Complex(0, 1)), kOracle) <= 1e-11);
    for (int n = 1; n <= 3; ++n) {
        const SuiteResult r = run_suite(Suite::sj_low, n, 6, 13, 1e-9, kOracle);
        CHECK(r.all_passed());
    }
}

TEST_CASE("factorization residual, high diagram") {
    const SiegelPoint pi = block_diag(h1(Complex(0, 1)), h1(Complex(0, 1)));
    CHECK(sj_factorization_residual_high(pi, kOracle) <= 1e-11);
    for (int g = 2; g <= 3; ++g) {
        const SuiteResult r = run_suite(Suite::sj_high, g, 6, 17, 1e-9, kOracle);
        CHECK(r.all_passed());
    }
}

TEST_CASE("factorization residual is scale invariant") {
    const SiegelPoint tau = random_siegel(2, 404, 0.7);
    const ProjectivePoint a = veronese(theta_null_second(tau, kOracle));
    ProjectivePoint b = a;
    b.coords *= Complex(0.0, 2.5);
    CHECK(projective_distance(a, b) <= 1e-8);
}

TEST_CASE("distance is unchanged under a common coordinate permutation") {
    const SiegelPoint pi = random_siegel(2, 505, 0.7);
    const ProjectivePoint a = veronese(theta_null_prime(pi, kOracle));
    const ProjectivePoint b = [&] {
        ProjectivePoint m;
        m.coords = mixing_matrix(1).entries * theta_null_sj(pi, kOracle).coords;
        return m;
    }();
    const double base = projective_distance(a, b);

    Eigen::PermutationMatrix<Eigen::Dynamic> perm(3);
    perm.indices() << 2, 0, 1;
    ProjectivePoint ap, bp;
    ap.coords = perm * a.coords;
    bp.coords = perm * b.coords;
    CHECK(projective_distance(ap, bp) == doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("pair residual between unrelated points is visibly nonzero") {
    Rng rng(55);
    for (int rep = 0; rep < 6; ++rep) {
        const int g = rng.uniform_int(2, 3);
        const SiegelPoint pi = random_siegel(g, rng.raw(), 0.8);
        const SiegelPoint tau = random_siegel(g - 1, rng.raw(), 0.8);
        CHECK(schottky_jung_residual(pi, tau, kOracle) > 0.01);
    }
    CHECK_THROWS_AS(
        schottky_jung_residual(random_siegel(2, 1, 0.5), random_siegel(2, 2, 0.5)),
        std::domain_error);
}

TEST_CASE("null maps never vanish on random inputs") {
    Rng rng(66);
    for (int rep = 0; rep < 25; ++rep) {
        const int g = rng.uniform_int(1, 3);
        const SiegelPoint z = random_siegel(g, rng.raw(), 0.9);
        CHECK(theta_null_second(z, kOracle).coords.cwiseAbs().maxCoeff() > 1e-6);
        CHECK(theta_null_squared(z, kOracle).coords.cwiseAbs().maxCoeff() > 1e-6);
        if (g >= 2) {
            CHECK(theta_null_sj(z, kOracle).coords.cwiseAbs().maxCoeff() > 1e-6);
            CHECK(theta_null_prime(z, kOracle).coords.cwiseAbs().maxCoeff() > 1e-6);
        }
    }
    CHECK_THROWS_AS(theta_null_sj(h1(Complex(0, 1)), kOracle), std::domain_error);
    CHECK_THROWS_AS(theta_null_prime(h1(Complex(0, 1)), kOracle), std::domain_error);
}
