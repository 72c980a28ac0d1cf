// End-to-end checks of the command-line tool: exit code contract, the
// documented examples, output determinism, and the THETA_TOL override.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd =
        env + " " + std::string(SIEGELTHETA_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("eval: documented example values") {
    const RunResult r = run_cli(
        R"cli(--format json eval --char "0|0" --tau "[[[0,1]]]" --z "[[0,0]]")cli");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("value")[0].get<double>() == doctest::Approx(1.0864348112).epsilon(1e-9));
    CHECK(std::abs(j.at("value")[1].get<double>()) < 1e-12);
    CHECK(j.at("truncation_radius").get<double>() > 0);

    const RunResult odd = run_cli(R"cli(--format json eval --char "1|1" --tau "i")cli");
    CHECK(odd.exit_code == 0);
    const auto jo = nlohmann::json::parse(odd.out);
    CHECK(std::abs(jo.at("value")[0].get<double>()) < 1e-12);
    CHECK(std::abs(jo.at("value")[1].get<double>()) < 1e-12);
}

TEST_CASE("exit codes are disjoint: 0/1/2/3") {
    // 0: success
    CHECK(run_cli(R"cli(eval --char "0|0" --tau "i")cli").exit_code == 0);
    // 1: identity failure at an unreachable tolerance
    CHECK(run_cli(R"cli(verify --suite parity --genus 1 --samples 5 --tol 1e-30)cli")
              .exit_code == 1);
    // 2: parse errors
    CHECK(run_cli(R"cli(eval --char "0|0" --tau "[[")cli").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli(R"cli(eval --tau "i")cli").exit_code == 2);  // missing --char
    // 3: domain errors
    CHECK(run_cli(R"cli(eval --char "0|0" --tau "[[1]]")cli").exit_code == 3);  // Im = 0
    CHECK(run_cli(R"cli(nullwerte --map sj --tau "i")cli").exit_code == 3);
    CHECK(run_cli(R"cli(degeneration --pi-prime "i" --y0 "-i")cli").exit_code == 3);
}

TEST_CASE("nullwerte: labels and counts per map") {
    const RunResult r = run_cli(R"cli(--format json nullwerte --map second --tau "i")cli");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("labels").size() == 2);
    CHECK(j.at("coords").size() == 2);

    const RunResult sq =
        run_cli(R"cli(--format json nullwerte --map squared --tau "diag(i,2i)")cli");
    const auto jq = nlohmann::json::parse(sq.out);
    CHECK(jq.at("labels").size() == 10);  // (4^2 + 2^2)/2

    const RunResult sj =
        run_cli(R"cli(--format json nullwerte --map sj --tau "diag(i,2i)")cli");
    const auto js = nlohmann::json::parse(sj.out);
    CHECK(js.at("labels").size() == 3);  // (4^1 + 2^1)/2
}

TEST_CASE("verify: passing suite reports PASS k/k") {
    const RunResult r = run_cli("verify --suite sj-low --genus 2 --samples 5 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS 5/5") != std::string::npos);

    const RunResult heat = run_cli("verify --suite heat --genus 2 --samples 5");
    CHECK(heat.exit_code == 0);
    CHECK(heat.out.find("PASS 5/5") != std::string::npos);

    // sj-high needs genus >= 2
    CHECK(run_cli("verify --suite sj-high --genus 1 --samples 2").exit_code == 3);
}

TEST_CASE("form: positive 1x1 entry and the equivalence residual") {
    const RunResult r =
        run_cli(R"cli(--format json form --map second --tau "i" --check-equivalence)cli");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("entries")[0][0][0].get<double>() > 0.0);
    CHECK(j.at("equivalence_residual").get<double>() <= 1e-7);
}

TEST_CASE("degeneration: documented example and failure-free JSON schema") {
    const RunResult r =
        run_cli(R"cli(--format json degeneration --pi-prime "i" --y0 "i")cli");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("differ") == true);
    CHECK(j.at("first_slice_norm").get<double>() <= 1e-8);
    CHECK(j.at("last_slice_norm").get<double>() >= 1e-3);
    CHECK(j.at("swap_residual").get<double>() <= 1e-12);
}

TEST_CASE("byte-identical output across repeated runs") {
    const std::string cmds[] = {
        R"cli(--format json eval --char "01|10" --tau "diag(i,2i)" --z "[[0.1,0.05],[0,0.1]]")cli",
        R"cli(--format json nullwerte --map prime --tau "diag(i,i)")cli",
        R"cli(--format csv verify --suite parity --genus 2 --samples 4 --seed 9)cli",
        R"cli(--format json form --map squared --tau "i")cli",
        R"cli(--format text degeneration --pi-prime "i" --y0 "i")cli",
    };
    for (const auto& c : cmds) {
        const RunResult a = run_cli(c);
        const RunResult b = run_cli(c);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("THETA_TOL environment variable sets the series tolerance") {
    const RunResult ok = run_cli(R"cli(eval --char "0|0" --tau "i")cli", "THETA_TOL=1e-10");
    CHECK(ok.exit_code == 0);
    // out-of-range tolerance is a usage error
    const RunResult bad = run_cli(R"cli(eval --char "0|0" --tau "i")cli", "THETA_TOL=1e-3");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("csv mode flattens complex values into re/im columns") {
    const RunResult r = run_cli(R"cli(--format csv nullwerte --map second --tau "i")cli");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("label,re,im\n", 0) == 0);
    CHECK(r.out.find("0,1.00373488548") != std::string::npos);
}
