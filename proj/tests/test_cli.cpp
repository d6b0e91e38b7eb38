#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string command = std::string(LOSRNET_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

json report_of(const CliResult& result) {
    // the JSON report is the trailing object on stdout
    const auto start = result.output.find("{\n  \"schema\"");
    REQUIRE(start != std::string::npos);
    return json::parse(result.output.substr(start));
}

std::string fixture(const std::string& name) {
    return std::string(LOSRNET_SOURCE_DIR) + "/fixtures/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("bounds subcommand emits the catalog record") {
    const CliResult result = run_cli("bounds 3 2");
    CHECK(result.exit_code == 0);
    const json report = report_of(result);
    CHECK(report["schema"] == "losrnet/v1");
    CHECK(report["payload"]["lower"] == 0.548);
    CHECK(report["payload"]["upper"] == 0.618);

    const json multi = report_of(run_cli("bounds 4 2"));
    CHECK(multi["payload"]["lower"] == 0.5);
    CHECK(multi["payload"]["upper"] == 0.5);

    const json nine = report_of(run_cli("bounds 3 9"));
    CHECK(std::abs(nine["payload"]["upper"].get<double>() - 1.0 / 3.0) <= 1e-12);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("bounds 2 2").exit_code == 2);
    CHECK(run_cli("bounds").exit_code == 2);
    CHECK(run_cli("definitely-not-a-subcommand").exit_code == 2);
    CHECK(run_cli("assemble 3 4 0.5,0.5,0.5").exit_code == 2);  // unsupported family
    CHECK(run_cli("assemble 3 2 0.5,0.5").exit_code == 2);      // wrong length
}

TEST_CASE("extraction on the path fixture") {
    const CliResult result = run_cli("extract " + fixture("graphs/path3.edges") + " 0 1 2");
    CHECK(result.exit_code == 0);
    const json report = report_of(result);
    CHECK(report["payload"]["graph_replay_verified"] == true);
    CHECK(report["payload"]["operations"] == 1);
    CHECK(std::abs(report["payload"]["statevector_fidelity"].get<double>() - 1.0) <= 1e-9);
}

TEST_CASE("extraction on the 3x3 cluster with corner targets") {
    const CliResult result =
        run_cli("extract " + fixture("graphs/cluster_3x3.edges") + " 0 2 8");
    CHECK(result.exit_code == 0);
    const json report = report_of(result);
    CHECK(report["payload"]["graph_replay_verified"] == true);
    CHECK(std::abs(report["payload"]["statevector_fidelity"].get<double>() - 1.0) <= 1e-9);
}

TEST_CASE("disconnected graphs exit with code 3") {
    CHECK(run_cli("extract " + fixture("graphs/two_components.edges") + " 0 1 2").exit_code == 3);
}

TEST_CASE("assemble writes the product state for product sources") {
    const std::string out = "/tmp/losrnet_test_assemble.txt";
    const CliResult result = run_cli("--out " + out + " assemble 2 2 1,0");
    CHECK(result.exit_code == 0);
    const json report = report_of(result);
    CHECK(std::abs(report["payload"]["ghz_fidelity"].get<double>() - 0.5) <= 1e-12);

    std::ifstream in(out);
    REQUIRE(in.good());
    int rows = 0, cols = 0;
    in >> rows >> cols;
    CHECK(rows == 8);
    CHECK(cols == 8);
    double re = 0.0, im = 0.0;
    in >> re >> im;
    CHECK(re == 1.0);
    CHECK(im == 0.0);
}

TEST_CASE("assemble reports the uniform qutrit fidelity 4/9") {
    const CliResult result = run_cli("assemble 3 3 1,1,1");
    CHECK(result.exit_code == 0);
    const json report = report_of(result);
    CHECK(std::abs(report["payload"]["ghz_fidelity"].get<double>() - 4.0 / 9.0) <= 1e-12);
}

TEST_CASE("optimize payloads are byte-identical across reruns with one seed") {
    const std::string out_a = "/tmp/losrnet_opt_a.json";
    const std::string out_b = "/tmp/losrnet_opt_b.json";
    CHECK(run_cli("--seed 5 --out " + out_a + " optimize --din 2 --restarts 6").exit_code == 0);
    CHECK(run_cli("--seed 5 --out " + out_b + " optimize --din 2 --restarts 6").exit_code == 0);
    CHECK(read_file(out_a) == read_file(out_b));

    const json payload = json::parse(read_file(out_a));
    CHECK(std::abs(payload["best_value"].get<double>() - 0.51704017) <= 1e-6);
}

TEST_CASE("check-inequalities reports nonnegative network slacks") {
    const CliResult result = run_cli("--seed 3 check-inequalities --samples 10");
    CHECK(result.exit_code == 0);
    const json payload = report_of(result)["payload"];
    CHECK(payload["worst_network_finner_slack"].get<double>() >= -1e-9);
    CHECK(payload["worst_network_gisin_slack"].get<double>() >= -1e-9);
    CHECK(payload["ghz_finner_slack"].get<double>() < 0.0);
    CHECK(std::abs(payload["extremal_state_fidelity"].get<double>() - 0.618) <= 1e-3);
    CHECK(payload["extremal_state_finner_slack"].get<double>() >= -1e-9);
    CHECK(payload["extremal_state_gisin_slack"].get<double>() >= -1e-9);
}
