#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(FLUXGATE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe))
        result.output.append(buf, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_temp_config(const std::string& name, const std::string& body) {
    const std::string path = "/tmp/fluxgate_test_" + name + ".json";
    std::ofstream out(path);
    out << body;
    return path;
}

const char* kPaperConfig = R"({
  "qubits": [
    {"levels_ghz": [0, 5, 15, 18], "g_mhz": 100},
    {"levels_ghz": [0, 5, 15, 18], "g_mhz": 100}
  ],
  "cavity": {"nu_ghz": 3, "Q": 1e4, "n_max": 2},
  "drive": {"omega_mhz": 300},
  "mode": "sequential_ideal"
})";

}  // namespace

TEST_CASE("simulate emits the worked-regime report") {
    const auto path = write_temp_config("paper", kPaperConfig);
    const auto result = run_cli("simulate --config " + path);
    REQUIRE(result.exit_code == 0);

    const auto report = nlohmann::json::parse(result.output);
    CHECK(std::abs(report["total_time_ns"].get<double>() - 15.0) < 1e-8);
    CHECK(report["process_fidelity"].get<double>() >= 1.0 - 1e-10);
    CHECK(report["avg_leakage"].get<double>() <= 1e-10);
    CHECK(report["mode"] == "sequential_ideal");
    CHECK(report["schedule"].size() == 9);
    CHECK(report["config"]["drive"]["omega_mhz"].get<double>() ==
          doctest::Approx(300.0));
}

TEST_CASE("simulate reports are byte-identical across runs") {
    const auto path = write_temp_config("paper", kPaperConfig);
    const auto first = run_cli("simulate --config " + path);
    const auto second = run_cli("simulate --config " + path);
    REQUIRE(first.exit_code == 0);
    CHECK(first.output == second.output);
}

TEST_CASE("concurrent fidelity matches the frozen oracle fixture") {
    std::ifstream in(std::string(FLUXGATE_FIXTURE_DIR) + "/omega_over_g_3.json");
    REQUIRE(in.good());
    const auto fixture = nlohmann::json::parse(in);

    const auto path = write_temp_config("paper", kPaperConfig);
    const auto result = run_cli("simulate --config " + path + " --mode concurrent");
    REQUIRE(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.output);
    CHECK(std::abs(report["process_fidelity"].get<double>() -
                   fixture["fidelity"].get<double>()) < 1e-6);
}

TEST_CASE("missing config file exits with code 2") {
    const auto result = run_cli("simulate --config /tmp/does_not_exist_461.json");
    CHECK(result.exit_code == 2);
}

TEST_CASE("validate accepts good configs and rejects bad ones") {
    const auto good = write_temp_config("paper", kPaperConfig);
    CHECK(run_cli("validate --config " + good).exit_code == 0);

    std::string detuned = kPaperConfig;
    detuned.replace(detuned.find("\"nu_ghz\": 3"), 11, "\"nu_ghz\": 2.9");
    const auto bad = write_temp_config("detuned", detuned);
    CHECK(run_cli("validate --config " + bad).exit_code == 2);

    std::string negative_q = kPaperConfig;
    negative_q.replace(negative_q.find("\"Q\": 1e4"), 8, "\"Q\": -5");
    const auto bad_q = write_temp_config("negq", negative_q);
    CHECK(run_cli("validate --config " + bad_q).exit_code == 2);
}

TEST_CASE("sweep csv output") {
    const auto path = write_temp_config("paper", kPaperConfig);
    const auto result =
        run_cli("sweep --config " + path +
                " --mode concurrent --axis omega_over_g --values 3,10 --format csv");
    REQUIRE(result.exit_code == 0);

    std::stringstream lines(result.output);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "axis_value,fidelity,leakage,total_time_ns");
    int rows = 0;
    for (std::string line; std::getline(lines, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("sweep rejects unknown axes with a config error") {
    const auto path = write_temp_config("paper", kPaperConfig);
    CHECK(run_cli("sweep --config " + path + " --axis bogus --values 1")
              .exit_code == 2);
}

TEST_CASE("reproduce-paper passes on the built-in regime") {
    const auto result = run_cli("reproduce-paper");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("FAIL") == std::string::npos);
    CHECK(result.output.find("total_time_ns") != std::string::npos);
}

TEST_CASE("perturbing g1 breaks only the timing check") {
    const auto result = run_cli("reproduce-paper --g1-scale 1.1");
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("FAIL  total_time_ns") != std::string::npos);
    CHECK(result.output.find("PASS  gate_matrix_max_deviation") !=
          std::string::npos);
}

TEST_CASE("fixture regeneration requires --dev and is byte-stable") {
    CHECK(run_cli("fixture").exit_code == 2);
    const auto first = run_cli("fixture --dev --omega-over-g 3 --dt-frac 1e4");
    const auto second = run_cli("fixture --dev --omega-over-g 3 --dt-frac 1e4");
    REQUIRE(first.exit_code == 0);
    CHECK(first.output == second.output);
    const auto parsed = nlohmann::json::parse(first.output);
    CHECK(parsed.contains("config_hash"));
    CHECK(parsed.contains("dt"));
}
