// Command-line front end: reproducible reports for the triangle-network
// constructions, fidelity bounds, graph-state extraction and inequality
// checks. Structured reports go to stdout as JSON; --out writes the
// deterministic artifact (CSV, matrix text, certificate, or payload JSON).
//
// Exit codes: 0 success, 2 usage error, 3 domain precondition, 4 numerical
// failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "losrnet/bounds.hpp"
#include "losrnet/channels.hpp"
#include "losrnet/fidelity.hpp"
#include "losrnet/graphs.hpp"
#include "losrnet/network.hpp"
#include "losrnet/optimize.hpp"
#include "losrnet/tensor.hpp"

using json = nlohmann::ordered_json;
using namespace losrnet;

namespace {

constexpr const char* kSchema = "losrnet/v1";
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumerical = 4;

struct ReportClock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void emit_report(const std::string& command, std::uint64_t seed, const json& payload,
                 const ReportClock& clock) {
    json report;
    report["schema"] = kSchema;
    report["command"] = command;
    report["seed"] = seed;
    report["duration_ms"] = clock.elapsed_ms();
    report["payload"] = payload;
    std::cout << report.dump(2) << "\n";
}

void write_artifact(const std::string& path, const std::string& contents) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open output path: " + path);
    out << contents;
    if (!out) throw std::ios_base::failure("cannot write output path: " + path);
}

std::string format_double(double value, const char* fmt) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), fmt, value);
    return buffer;
}

std::string matrix_to_text(const ComplexMatrix& m) {
    std::ostringstream out;
    out << m.rows() << " " << m.cols() << "\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out << " ";
            out << format_double(m(r, c).real(), "%.17g") << " "
                << format_double(m(r, c).imag(), "%.17g");
        }
        out << "\n";
    }
    return out.str();
}

SchmidtVector parse_lambda_csv(const std::string& csv, int expected_length) {
    std::vector<double> values;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse coefficient '" + item + "'");
        }
    }
    if (static_cast<int>(values.size()) != expected_length) {
        throw std::invalid_argument("expected " + std::to_string(expected_length) +
                                    " comma-separated coefficients, got " +
                                    std::to_string(values.size()));
    }
    RealVector lambda = Eigen::Map<const RealVector>(values.data(), values.size());
    if (lambda.minCoeff() < 0.0) {
        throw std::invalid_argument("Schmidt coefficients must be nonnegative");
    }
    const double norm = lambda.norm();
    if (norm <= 0.0) throw std::invalid_argument("Schmidt coefficients must not all vanish");
    return SchmidtVector(lambda / norm);
}

ChoiMatrix channel_for(int d_in, int d_out) {
    if (d_out == 2) return build_choi(generate_eta_din_2(d_in));
    if (d_out == d_in && d_out % 2 == 1 && d_out >= 3) return build_choi(generate_eta_odd(d_out));
    throw CLI::ValidationError(
        "no construction for (d_in=" + std::to_string(d_in) + ", d_out=" + std::to_string(d_out) +
        "); supported families: d_out=2 with any d_in>=2, and odd d_out=d_in>=3");
}

json bound_to_json(const BoundRecord& record) {
    return json{{"parties", record.parties},
                {"dimension", record.dimension},
                {"lower", record.lower},
                {"upper", record.upper},
                {"provenance", record.provenance}};
}

int run_reproduce_table(std::uint64_t seed, int restarts, const std::string& out_path) {
    ReportClock clock;
    const auto rows = optimal_schmidt_table(10, restarts, seed);

    std::ostringstream csv;
    csv << "d_in,fidelity,coefficients\n";
    json payload_rows = json::array();
    for (const auto& row : rows) {
        std::ostringstream coeffs;
        for (Eigen::Index i = 0; i < row.schmidt_coefficients.size(); ++i) {
            if (i > 0) coeffs << " ";
            coeffs << format_double(row.schmidt_coefficients(i), "%.5f");
        }
        csv << row.d_in << "," << format_double(row.fidelity, "%.8f") << "," << coeffs.str()
            << "\n";
        payload_rows.push_back(json{{"d_in", row.d_in},
                                    {"fidelity", format_double(row.fidelity, "%.8f")},
                                    {"coefficients", coeffs.str()}});
    }
    write_artifact(out_path, csv.str());
    if (out_path.empty()) std::cout << csv.str();
    emit_report("reproduce-table", seed, json{{"rows", payload_rows}}, clock);
    return 0;
}

int run_bounds(int parties, int dimension, std::uint64_t seed, const std::string& out_path) {
    ReportClock clock;
    const json payload = bound_to_json(ghz_bound_catalog(parties, dimension));
    write_artifact(out_path, payload.dump(2) + "\n");
    emit_report("bounds", seed, payload, clock);
    return 0;
}

int run_extract(const std::string& graph_file, int a, int b, int c, std::uint64_t seed,
                const std::string& out_path) {
    ReportClock clock;
    std::ifstream in(graph_file);
    if (!in) {
        std::cerr << "error: cannot open graph file '" << graph_file << "'\n";
        return kExitUsage;
    }
    Graph g = parse_edge_list(in);
    if (!is_connected(g)) {
        std::cerr << "error: graph must be connected\n";
        return kExitDomain;
    }
    if (g.vertex_count() < 3 || a == b || a == c || b == c || a < 0 || b < 0 || c < 0 ||
        a >= g.vertex_count() || b >= g.vertex_count() || c >= g.vertex_count()) {
        std::cerr << "error: need three distinct valid target vertices\n";
        return kExitUsage;
    }

    const ExtractionCertificate cert = extract_ghz(g, a, b, c, seed);
    const bool graph_ok = certificate_isolates_triangle(g, cert);
    const std::string cert_text = to_text(cert);

    json payload;
    payload["vertices"] = g.vertex_count();
    payload["edges"] = g.edge_count();
    payload["operations"] = cert.ops.size();
    payload["graph_replay_verified"] = graph_ok;
    if (g.vertex_count() <= 12) {
        payload["statevector_fidelity"] = verify_certificate_statevector(g, cert);
    } else {
        payload["statevector_fidelity"] = nullptr;
    }
    payload["certificate"] = cert_text;

    write_artifact(out_path, cert_text);
    if (out_path.empty()) std::cout << cert_text;
    emit_report("extract", seed, payload, clock);
    return graph_ok ? 0 : kExitNumerical;
}

int run_assemble(int d_in, int d_out, const std::string& lambda_csv, std::uint64_t seed,
                 const std::string& out_path) {
    ReportClock clock;
    const SchmidtVector lambda = parse_lambda_csv(lambda_csv, d_in);
    const ChoiMatrix choi = channel_for(d_in, d_out);
    const ComplexMatrix rho =
        assemble_triangle_structured(TriangleConfig::symmetric(choi, lambda));
    const double fidelity = fidelity_with_pure(rho, ghz_state(3, d_out));

    const std::string matrix_text = matrix_to_text(rho);
    write_artifact(out_path, matrix_text);
    if (out_path.empty()) std::cout << matrix_text;

    json payload;
    payload["d_in"] = d_in;
    payload["d_out"] = d_out;
    payload["ghz_fidelity"] = fidelity;
    payload["matrix_rows"] = rho.rows();
    emit_report("assemble", seed, payload, clock);
    return 0;
}

int run_optimize(int d_in, int d_out, int restarts, std::uint64_t seed,
                 const std::string& out_path) {
    ReportClock clock;
    SchmidtObjective objective;
    if (d_out == 2) {
        objective = [d_in](const SchmidtVector& lambda) {
            return fidelity_recursive(lambda, d_in);
        };
    } else if (d_out == d_in && d_out % 2 == 1) {
        objective = [d_in](const SchmidtVector& lambda) { return fidelity_odd(lambda, d_in); };
    } else {
        throw CLI::ValidationError("optimize supports d_out=2 or odd d_out=d_in");
    }
    const OptimizationReport report = maximize_schmidt(objective, d_in, restarts, seed);

    json payload;
    payload["d_in"] = d_in;
    payload["d_out"] = d_out;
    payload["best_value"] = report.best_value;
    payload["argmax_squared"] = std::vector<double>(
        report.argmax.values().data(), report.argmax.values().data() + report.argmax.size());
    payload["restarts"] = report.restarts;
    payload["iterations"] = report.iterations;
    payload["converged"] = report.converged;
    write_artifact(out_path, payload.dump(2) + "\n");
    emit_report("optimize", seed, payload, clock);
    return 0;
}

int run_check_inequalities(int samples, int d_in, int d_out, double step, std::uint64_t seed,
                           const std::string& out_path) {
    ReportClock clock;
    const ChoiMatrix choi = channel_for(d_in, d_out);

    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> exponential(1.0);
    double worst_finner = std::numeric_limits<double>::infinity();
    double worst_gisin = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        RealVector p(d_in);
        for (int i = 0; i < d_in; ++i) p(i) = exponential(rng);
        const SchmidtVector lambda((p / p.sum()).cwiseSqrt());
        const ComplexMatrix rho =
            assemble_triangle_structured(TriangleConfig::symmetric(choi, lambda));
        worst_finner = std::min(worst_finner, finner_check_state(rho, d_out).slack);
        if (d_out == 2) worst_gisin = std::min(worst_gisin, gisin_check(rho).applicable());
    }

    // The GHZ statistics themselves violate the triangle constraint.
    const StateVector ghz = ghz_state(3, d_out);
    const ComplexMatrix ghz_rho = ghz.amplitudes * ghz.amplitudes.adjoint();
    const double ghz_finner = finner_check_state(ghz_rho, d_out).slack;

    json payload;
    payload["samples"] = samples;
    payload["d_in"] = d_in;
    payload["d_out"] = d_out;
    payload["worst_network_finner_slack"] = worst_finner;
    if (d_out == 2) payload["worst_network_gisin_slack"] = worst_gisin;
    payload["ghz_finner_slack"] = ghz_finner;

    if (d_out == 2) {
        const CorrelatorBoundResult bound = ghz3_bound_positive_branch(step, 1e-8);
        const ComplexMatrix extremal =
            ghz_symmetric_extremal_state({bound.z1, bound.z2, bound.z3});
        payload["upper_bound_scan"] = bound.value;
        payload["extremal_state_fidelity"] = fidelity_with_pure(extremal, ghz_state(3, 2));
        payload["extremal_state_finner_slack"] = finner_check_state(extremal, 2).slack;
        payload["extremal_state_gisin_slack"] = gisin_check(extremal).applicable();
    }

    write_artifact(out_path, payload.dump(2) + "\n");
    emit_report("check-inequalities", seed, payload, clock);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triangle-network GHZ constructions, bounds and graph-state extraction"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string out_path;
    app.add_option("--seed", seed, "Seed for randomized subcommands")->capture_default_str();
    app.add_option("--out", out_path, "Write the artifact to this path");

    auto* table = app.add_subcommand("reproduce-table", "Optimal sources for d_in = 2..10");
    int table_restarts = 32;
    table->add_option("--restarts", table_restarts, "Restarts per dimension")
        ->capture_default_str();

    auto* bounds_cmd = app.add_subcommand("bounds", "Fidelity window for GHZ_{N,d}");
    int parties = 0, dimension = 0;
    bounds_cmd->add_option("N", parties, "Number of parties (>= 3)")->required();
    bounds_cmd->add_option("d", dimension, "Local dimension (>= 2)")->required();

    auto* extract = app.add_subcommand("extract", "GHZ extraction certificate for a graph state");
    std::string graph_file;
    int va = 0, vb = 1, vc = 2;
    extract->add_option("graph", graph_file, "Edge-list file ('n' header, 'i j' lines)")
        ->required();
    extract->add_option("a", va, "Target vertex in set A")->required();
    extract->add_option("b", vb, "Target vertex in set B")->required();
    extract->add_option("c", vc, "Target vertex in set C")->required();

    auto* assemble = app.add_subcommand("assemble", "Assemble a triangle-network output state");
    int a_din = 2, a_dout = 2;
    std::string lambda_csv;
    assemble->add_option("d_in", a_din, "Source dimension")->required();
    assemble->add_option("d_out", a_dout, "Output dimension")->required();
    assemble->add_option("lambda", lambda_csv, "Comma-separated Schmidt coefficients")
        ->required();

    auto* optimize = app.add_subcommand("optimize", "Maximize a construction's GHZ fidelity");
    int o_din = 2, o_dout = 2, o_restarts = 32;
    optimize->add_option("--din", o_din, "Source dimension")->required();
    optimize->add_option("--dout", o_dout, "Output dimension")->capture_default_str();
    optimize->add_option("--restarts", o_restarts, "Restart count")->capture_default_str();

    auto* check = app.add_subcommand("check-inequalities",
                                     "Triangle inequalities on assembled network states");
    int c_samples = 50, c_din = 2, c_dout = 2;
    double c_step = 1e-2;
    check->add_option("--samples", c_samples, "Number of random sources")->capture_default_str();
    check->add_option("--din", c_din, "Source dimension")->capture_default_str();
    check->add_option("--dout", c_dout, "Output dimension")->capture_default_str();
    check->add_option("--step", c_step, "Scan step for the upper bound")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (table->parsed()) return run_reproduce_table(seed, table_restarts, out_path);
        if (bounds_cmd->parsed()) return run_bounds(parties, dimension, seed, out_path);
        if (extract->parsed()) return run_extract(graph_file, va, vb, vc, seed, out_path);
        if (assemble->parsed()) return run_assemble(a_din, a_dout, lambda_csv, seed, out_path);
        if (optimize->parsed()) return run_optimize(o_din, o_dout, o_restarts, seed, out_path);
        if (check->parsed()) {
            return run_check_inequalities(c_samples, c_din, c_dout, c_step, seed, out_path);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
