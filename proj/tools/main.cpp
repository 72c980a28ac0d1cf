// Command-line front end: series evaluation, Thetanullwert maps, identity
// verification suites, pullback forms, and the block-slice degeneration
// report. Structured output goes to stdout, diagnostics to stderr.
//
// Exit codes: 0 success, 1 identity/check failure, 2 usage/parse error,
// 3 domain error.

#include <iomanip>
#include <iostream>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "siegeltheta/serialize.hpp"
#include "siegeltheta/verify.hpp"

namespace st = siegeltheta;

namespace {

enum class Format { text, json, csv };

std::string fmt_num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string fmt_complex(const st::Complex& c) {
    std::ostringstream os;
    os << std::setprecision(17) << c.real() << (c.imag() < 0 ? " - " : " + ")
       << std::abs(c.imag()) << "i";
    return os.str();
}

struct GlobalOptions {
    double tol = 1e-12;
    std::uint64_t seed = 0;
    Format format = Format::text;
    st::Precision precision() const { return st::Precision{tol, false}; }
};

int run_eval(const GlobalOptions& g, const std::string& char_text,
             const std::string& tau_text, const std::string& z_text,
             bool second_order) {
    const st::Characteristic chi = st::parse_characteristic(char_text);
    const st::SiegelPoint tau(st::parse_matrix_arg(tau_text));

    const Eigen::VectorXcd z = z_text.empty() ? Eigen::VectorXcd::Zero(tau.genus())
                                              : st::parse_vector_arg(z_text);

    st::Complex value;
    double radius = 0.0;
    if (second_order) {
        if (chi.eps_prime.cwiseAbs().maxCoeff() != 0) {
            throw std::domain_error("--second-order requires eps' = 0");
        }
        value = st::theta_second_order(chi.eps, tau, z, g.precision());
        radius = st::truncation_radius(st::SiegelPoint(2.0 * tau.entries()), 2.0 * z,
                                       chi, g.tol);
    } else {
        value = st::theta_char(chi, tau, z, g.precision());
        radius = st::truncation_radius(tau, z, chi, g.tol);
    }

    switch (g.format) {
        case Format::json: {
            st::Json out{{"char", st::char_label(chi)},
                         {"second_order", second_order},
                         {"value", st::complex_to_json(value)},
                         {"truncation_radius", radius}};
            std::cout << out.dump(2) << "\n";
            break;
        }
        case Format::csv:
            std::cout << "value_re,value_im,truncation_radius\n"
                      << fmt_num(value.real()) << "," << fmt_num(value.imag()) << ","
                      << fmt_num(radius) << "\n";
            break;
        case Format::text:
            std::cout << "value = " << fmt_complex(value) << "\n"
                      << "truncation_radius = " << fmt_num(radius) << "\n";
            break;
    }
    return 0;
}

st::ProjectivePoint compute_map(const std::string& map_name, const st::SiegelPoint& tau,
                                const st::Precision& prec) {
    if (map_name == "second") return st::theta_null_second(tau, prec);
    if (map_name == "squared") return st::theta_null_squared(tau, prec);
    if (map_name == "sj") return st::theta_null_sj(tau, prec);
    if (map_name == "prime") return st::theta_null_prime(tau, prec);
    throw std::invalid_argument("unknown map: " + map_name);
}

int run_nullwerte(const GlobalOptions& g, const std::string& map_name,
                  const std::string& tau_text) {
    const st::SiegelPoint tau(st::parse_matrix_arg(tau_text));
    const st::ProjectivePoint p = compute_map(map_name, tau, g.precision());

    switch (g.format) {
        case Format::json: {
            st::Json out = st::to_json(p);
            out["map"] = map_name;
            out["genus"] = tau.genus();
            std::cout << out.dump(2) << "\n";
            break;
        }
        case Format::csv:
            std::cout << "label,re,im\n";
            for (int i = 0; i < p.coords.size(); ++i) {
                std::cout << p.labels[i] << "," << fmt_num(p.coords(i).real()) << ","
                          << fmt_num(p.coords(i).imag()) << "\n";
            }
            break;
        case Format::text:
            for (int i = 0; i < p.coords.size(); ++i) {
                std::cout << p.labels[i] << ": " << fmt_complex(p.coords(i)) << "\n";
            }
            break;
    }
    return 0;
}

int run_verify(const GlobalOptions& g, const std::string& suite_name, int genus,
               int samples, std::uint64_t seed, double tol, bool tol_given) {
    const std::map<std::string, st::Suite> suites = {
        {"parity", st::Suite::parity},     {"addition", st::Suite::addition},
        {"blocks", st::Suite::blocks},     {"heat", st::Suite::heat},
        {"sj-low", st::Suite::sj_low},     {"sj-high", st::Suite::sj_high},
        {"veronese", st::Suite::veronese}};

    std::vector<st::Suite> selected;
    if (suite_name == "all") {
        for (const auto& [name, s] : suites) {
            if (genus >= st::suite_min_genus(s)) selected.push_back(s);
        }
    } else {
        auto it = suites.find(suite_name);
        if (it == suites.end()) throw std::invalid_argument("unknown suite: " + suite_name);
        selected.push_back(it->second);
    }

    bool all_ok = true;
    st::Json json_out = st::Json::array();
    if (g.format == Format::csv) std::cout << "suite,sample,residual,pass\n";
    for (const st::Suite s : selected) {
        const double thr = tol_given ? tol : st::suite_default_tol(s);
        const st::SuiteResult r =
            st::run_suite(s, genus, samples, seed, thr, g.precision());
        all_ok = all_ok && r.all_passed();
        switch (g.format) {
            case Format::json: {
                st::Json jr{{"suite", st::suite_name(s)},
                            {"genus", r.genus},
                            {"tol", r.tol},
                            {"residuals", r.residuals},
                            {"max_residual", r.max_residual},
                            {"passed", r.passed},
                            {"total", r.total}};
                json_out.push_back(std::move(jr));
                break;
            }
            case Format::csv:
                for (std::size_t i = 0; i < r.residuals.size(); ++i) {
                    std::cout << st::suite_name(s) << "," << i << ","
                              << fmt_num(r.residuals[i]) << ","
                              << (r.residuals[i] <= r.tol ? "1" : "0") << "\n";
                }
                break;
            case Format::text:
                for (std::size_t i = 0; i < r.residuals.size(); ++i) {
                    std::cout << st::suite_name(s) << " sample " << i << " residual "
                              << fmt_num(r.residuals[i])
                              << (r.residuals[i] <= r.tol ? "" : "  FAIL") << "\n";
                }
                std::cout << (r.all_passed() ? "PASS " : "FAIL ") << r.passed << "/"
                          << r.total << " (suite " << st::suite_name(s)
                          << ", max residual " << fmt_num(r.max_residual) << ", tol "
                          << fmt_num(r.tol) << ")\n";
                break;
        }
    }
    if (g.format == Format::json) std::cout << json_out.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

int run_form(const GlobalOptions& g, const std::string& map_name,
             const std::string& tau_text, bool check_equivalence) {
    const st::SiegelPoint tau(st::parse_matrix_arg(tau_text));
    const st::Precision prec = g.precision();

    st::NullwertMap map_id;
    double scale;
    st::FormSide side;
    if (map_name == "second") {
        map_id = st::NullwertMap::second; scale = 8.0; side = st::FormSide::low;
    } else if (map_name == "squared") {
        map_id = st::NullwertMap::squared; scale = 4.0; side = st::FormSide::low;
    } else if (map_name == "sj") {
        map_id = st::NullwertMap::sj; scale = 4.0; side = st::FormSide::high;
    } else if (map_name == "prime") {
        map_id = st::NullwertMap::prime; scale = 8.0; side = st::FormSide::high;
    } else {
        throw std::invalid_argument("unknown map: " + map_name);
    }

    constexpr double kPi = 3.141592653589793238462643383279502884;
    st::HermitianForm form = st::fs_pullback(st::nullwert_jet(map_id, tau, prec));
    form.entries *= scale * kPi;

    double residual = -1.0;
    if (check_equivalence) residual = st::equivalent_forms_residual(tau, side, prec);

    switch (g.format) {
        case Format::json: {
            st::Json out = st::to_json(form);
            out["map"] = map_name;
            out["normalization"] = fmt_num(scale) + "*pi";
            if (check_equivalence) out["equivalence_residual"] = residual;
            std::cout << out.dump(2) << "\n";
            break;
        }
        case Format::csv: {
            const auto labels = st::sym_labels(form.genus);
            std::cout << "row_i,row_j,col_i,col_j,re,im\n";
            for (std::size_t a = 0; a < labels.size(); ++a) {
                for (std::size_t b = 0; b < labels.size(); ++b) {
                    const st::Complex v = form.entries(a, b);
                    std::cout << labels[a].first + 1 << "," << labels[a].second + 1 << ","
                              << labels[b].first + 1 << "," << labels[b].second + 1 << ","
                              << fmt_num(v.real()) << "," << fmt_num(v.imag()) << "\n";
                }
            }
            if (check_equivalence) {
                std::cout << "equivalence_residual,,,,," << fmt_num(residual) << "\n";
            }
            break;
        }
        case Format::text: {
            const auto labels = st::sym_labels(form.genus);
            std::cout << "pullback form (" << fmt_num(scale) << "*pi normalization)\n";
            for (std::size_t a = 0; a < labels.size(); ++a) {
                for (std::size_t b = 0; b < labels.size(); ++b) {
                    std::cout << "H[(" << labels[a].first + 1 << "," << labels[a].second + 1
                              << "),(" << labels[b].first + 1 << "," << labels[b].second + 1
                              << ")] = " << fmt_complex(form.entries(a, b)) << "\n";
                }
            }
            if (check_equivalence) {
                std::cout << "equivalence_residual = " << fmt_num(residual) << "\n";
            }
            break;
        }
    }
    return 0;
}

int run_degeneration(const GlobalOptions& g, const std::string& pi_prime_text,
                     const std::string& y0_text) {
    const st::SiegelPoint pi_prime(st::parse_matrix_arg(pi_prime_text));
    const st::Complex y0 = st::parse_complex_arg(y0_text);
    const st::NondescentReport rep = st::nondescent_report(pi_prime, y0, g.precision());

    switch (g.format) {
        case Format::json:
            std::cout << st::to_json(rep).dump(2) << "\n";
            break;
        case Format::csv: {
            const st::Json j = st::to_json(rep);
            std::cout << "field,value\n";
            for (auto it = j.begin(); it != j.end(); ++it) {
                std::cout << it.key() << ",";
                if (it.value().is_number_float()) {
                    std::cout << fmt_num(it.value().get<double>());
                } else {
                    std::cout << it.value().dump();
                }
                std::cout << "\n";
            }
            break;
        }
        case Format::text:
            std::cout << "genus = " << rep.genus << "\n"
                      << "first_slice_norm = " << fmt_num(rep.first_slice_norm)
                      << " (threshold " << fmt_num(rep.first_threshold) << ")\n"
                      << "last_slice_norm = " << fmt_num(rep.last_slice_norm)
                      << " (floor " << fmt_num(rep.last_floor) << ")\n"
                      << "first_slice_form = " << fmt_num(rep.first_slice_form) << "\n"
                      << "last_slice_form = " << fmt_num(rep.last_slice_form) << "\n"
                      << "swap_residual = " << fmt_num(rep.swap_residual)
                      << (rep.swap_exact ? " (exact)" : " (NOT exact)") << "\n"
                      << "differ = " << (rep.differ ? "true" : "false") << "\n";
            break;
    }
    return rep.differ ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"theta functions, Thetanullwert maps and Fubini-Study pullbacks "
                 "on the Siegel upper half space"};
    app.require_subcommand(1);

    GlobalOptions global;
    std::map<std::string, Format> format_names{
        {"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};
    auto* tol_opt = app.add_option("--tol", global.tol, "series accuracy target "
                                   "(env THETA_TOL)")
        ->check(CLI::Range(1e-15, 1e-6))
        ->capture_default_str();
    app.add_option("--seed", global.seed, "base seed for randomized commands")
        ->capture_default_str();
    app.add_option("--format", global.format, "output format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case))
        ->default_str("text");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate one theta series");
    std::string eval_char, eval_tau, eval_z;
    bool eval_second = false;
    eval->add_option("--char", eval_char, "characteristic \"e1..eg|e1'..eg'\"")->required();
    eval->add_option("--tau", eval_tau, "Siegel matrix (JSON, shorthand, or file)")->required();
    eval->add_option("--z", eval_z, "argument vector (JSON, default 0)");
    eval->add_flag("--second-order", eval_second, "evaluate theta_u (eps' must be 0)");

    // nullwerte
    auto* nullw = app.add_subcommand("nullwerte", "Thetanullwert coordinate vector");
    std::string nullw_map, nullw_tau;
    nullw->add_option("--map", nullw_map, "second|squared|sj|prime")->required();
    nullw->add_option("--tau", nullw_tau, "Siegel matrix")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "randomized identity suites");
    std::string verify_suite;
    int verify_genus = 2, verify_samples = 20;
    std::uint64_t verify_seed = 0;
    double verify_tol = 0.0;
    verify->add_option("--suite", verify_suite,
                       "parity|addition|blocks|heat|sj-low|sj-high|veronese|all")
        ->required();
    verify->add_option("--genus", verify_genus, "genus of sampled points")
        ->check(CLI::Range(1, 6))->capture_default_str();
    verify->add_option("--samples", verify_samples, "number of samples")
        ->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--seed", verify_seed, "suite seed")->capture_default_str();
    auto* verify_tol_opt =
        verify->add_option("--tol", verify_tol, "residual threshold (default per suite)");

    // form
    auto* form = app.add_subcommand("form", "Fubini-Study pullback form");
    std::string form_map, form_tau;
    bool form_check = false;
    form->add_option("--map", form_map, "second|squared|sj|prime")->required();
    form->add_option("--tau", form_tau, "Siegel matrix")->required();
    form->add_flag("--check-equivalence", form_check,
                   "also print the matching-side equivalence residual");

    // degeneration
    auto* degen = app.add_subcommand("degeneration", "block-slice non-descent report");
    std::string degen_pi, degen_y0;
    degen->add_option("--pi-prime", degen_pi, "Siegel matrix of genus g-1")->required();
    degen->add_option("--y0", degen_y0, "upper half plane point, e.g. \"i\"")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (tol_opt->count() == 0) {
            if (const char* env = std::getenv("THETA_TOL")) {
                std::size_t used = 0;
                double v = 0.0;
                try {
                    v = std::stod(env, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != std::string(env).size() || !(v >= 1e-15) || !(v <= 1e-6)) {
                    std::cerr << "usage error: THETA_TOL must be a number in "
                                 "[1e-15, 1e-6], got \"" << env << "\"\n";
                    return 2;
                }
                global.tol = v;
            }
        }
        if (*eval) return run_eval(global, eval_char, eval_tau, eval_z, eval_second);
        if (*nullw) return run_nullwerte(global, nullw_map, nullw_tau);
        if (*verify) {
            return run_verify(global, verify_suite, verify_genus, verify_samples,
                              verify_seed, verify_tol, verify_tol_opt->count() > 0);
        }
        if (*form) return run_form(global, form_map, form_tau, form_check);
        if (*degen) return run_degeneration(global, degen_pi, degen_y0);
    } catch (const st::Json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
