// SPDX-License-Identifier: Apache-2.0
//
// linkopt — design, sweep, simulate, and compare rate/power adaptation
// schemes for flat block-fading channels.
//
// Exit status: 0 success, 1 numeric non-convergence, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkopt/design.hpp"
#include "linkopt/sim.hpp"

namespace {

using namespace linkopt;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNonConverged = 1;
constexpr int kExitUsage = 2;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

struct GbarRange {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    bool is_range = false;

    std::vector<double> points() const {
        std::vector<double> out;
        if (!is_range) {
            out.push_back(start);
            return out;
        }
        for (double g = start; g <= stop + 1e-9; g += step) out.push_back(g);
        return out;
    }
};

GbarRange parse_gbar(const std::string& text) {
    GbarRange r;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        r.start = std::stod(text);
        return r;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw CLI::ValidationError("--gbar-db", "range must be start:stop:step");
    r.start = std::stod(text.substr(0, c1));
    r.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    r.step = std::stod(text.substr(c2 + 1));
    r.is_range = true;
    if (!(r.step > 0.0) || r.stop < r.start)
        throw CLI::ValidationError("--gbar-db", "empty range");
    return r;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << text << "\n";
}

DesignSpec make_spec(const std::string& scheme, int n_codes, int k_levels,
                     std::optional<double> outage_cap, std::uint64_t seed) {
    DesignSpec spec;
    spec.kind = policy_kind_from_string(scheme);
    spec.n_codes = n_codes;
    spec.n_power_levels =
        spec.kind == PolicyKind::DiscretePower ? k_levels : 1;
    spec.outage_cap = outage_cap;
    spec.solver.seed = seed;
    if (spec.kind != PolicyKind::DiscretePower && k_levels != 1)
        throw CLI::ValidationError("-K", "K > 1 needs --scheme discrete");
    return spec;
}

json design_to_json(const DesignResult& res, const FadingModel& model) {
    json j = json::parse(policy_to_json(res.policy, model));
    j["masa"] = j["ase"];  // the file's quantized policy is the canonical one
    if (res.lambda) j["lambda"] = *res.lambda;
    j["avg_power"] = res.metrics.avg_power;
    j["solver"] = {{"n_evals", res.report.n_evals},
                   {"n_restarts", res.report.n_restarts},
                   {"converged", res.report.converged}};
    return j;
}

int cmd_design(const std::string& scheme, int n_codes, int k_levels,
               const GbarRange& gbar, std::optional<double> outage_cap,
               std::uint64_t seed, const std::string& out_path) {
    const FadingModel model = FadingModel::rayleigh(db_to_linear(gbar.start));
    const DesignSpec spec = make_spec(scheme, n_codes, k_levels, outage_cap, seed);
    const DesignResult res = design(spec, model);
    emit(design_to_json(res, model).dump(2), out_path);
    return res.report.converged ? kExitOk : kExitNonConverged;
}

int cmd_sweep(const std::string& scheme, int n_codes, int k_levels,
              const GbarRange& gbar, std::optional<double> outage_cap,
              std::uint64_t seed, const std::string& out_path,
              const std::string& format) {
    if (!gbar.is_range)
        throw CLI::ValidationError("--gbar-db", "sweep needs start:stop:step");
    std::ostringstream csv;
    csv << "gbar_db,scheme,n_codes,n_power_levels,masa,p_no_tx,c_ora,c_opra,"
           "converged\n";
    json rows = json::array();
    bool all_converged = true;
    for (double gdb : gbar.points()) {
        const FadingModel model = FadingModel::rayleigh(db_to_linear(gdb));
        const CapacityPoint cap = capacity_opra(model);
        double masa = std::nan("");
        double p_no_tx = std::nan("");
        bool converged = false;
        try {
            const DesignSpec spec =
                make_spec(scheme, n_codes, k_levels, outage_cap, seed);
            const DesignResult res = design(spec, model);
            masa = res.masa;
            p_no_tx = res.metrics.p_no_tx;
            converged = res.report.converged;
        } catch (const std::runtime_error&) {
            converged = false;  // row stays flagged, sweep continues
        }
        all_converged = all_converged && converged;
        char line[256];
        std::snprintf(line, sizeof line, "%.6f,%s,%d,%d,%.9f,%.9f,%.9f,%.9f,%d\n",
                      gdb, scheme.c_str(), n_codes,
                      scheme == "discrete" ? k_levels : 1, masa, p_no_tx,
                      cap.c_ora, cap.c_opra, converged ? 1 : 0);
        csv << line;
        rows.push_back({{"gbar_db", gdb},
                        {"scheme", scheme},
                        {"n_codes", n_codes},
                        {"n_power_levels", scheme == "discrete" ? k_levels : 1},
                        {"masa", masa},
                        {"p_no_tx", p_no_tx},
                        {"c_ora", cap.c_ora},
                        {"c_opra", cap.c_opra},
                        {"converged", converged}});
    }
    emit(format == "json" ? json(rows).dump(2) : csv.str(), out_path);
    return all_converged ? kExitOk : kExitNonConverged;
}

int cmd_simulate(const std::string& policy_path, const std::string& scheme,
                 int n_codes, int k_levels, const GbarRange& gbar,
                 std::optional<double> outage_cap, long long n_blocks,
                 std::uint64_t seed, const std::string& out_path) {
    std::optional<ParsedPolicy> parsed;
    if (!policy_path.empty()) {
        std::ifstream f(policy_path);
        if (!f) throw std::runtime_error("cannot read " + policy_path);
        std::stringstream ss;
        ss << f.rdbuf();
        parsed = policy_from_json(ss.str());
    } else {
        const FadingModel model =
            FadingModel::rayleigh(db_to_linear(gbar.start));
        const DesignSpec spec =
            make_spec(scheme, n_codes, k_levels, outage_cap, seed);
        const DesignResult res = design(spec, model);
        parsed = policy_from_json(policy_to_json(res.policy, model));
    }
    SimConfig cfg;
    cfg.n_blocks = n_blocks;
    cfg.seed = seed;
    const SimReport rep = simulate(parsed->policy, parsed->model, cfg);
    const PolicyMetrics analytic = metrics(parsed->policy, parsed->model);
    json j{{"n_blocks", rep.n_blocks},
           {"seed", seed},
           {"ase_hat", rep.ase_hat},
           {"ase_se", rep.ase_se},
           {"power_hat", rep.power_hat},
           {"power_se", rep.power_se},
           {"p_no_tx_hat", rep.p_no_tx_hat},
           {"outage_violations", rep.outage_violations},
           {"analytic", {{"ase", analytic.ase},
                         {"avg_power", analytic.avg_power},
                         {"p_no_tx", analytic.p_no_tx}}}};
    emit(j.dump(2), out_path);
    return kExitOk;
}

json scheme_row(const std::string& scheme, int n_codes, int k_levels,
                const FadingModel& model, std::uint64_t seed) {
    if (scheme == "art2") {
        const ArtResult art = art_two_region(model);
        return {{"scheme", "art2"},
                {"throughput", art.art},
                {"p_outage", art.p_outage},
                {"p_no_tx", 0.0}};
    }
    if (scheme == "c-ora")
        return {{"scheme", "c-ora"},
                {"throughput", capacity_ora(model)},
                {"p_outage", 0.0},
                {"p_no_tx", 0.0}};
    if (scheme == "c-opra")
        return {{"scheme", "c-opra"},
                {"throughput", capacity_opra(model).c_opra},
                {"p_outage", 0.0},
                {"p_no_tx", 0.0}};
    const DesignSpec spec = make_spec(scheme, n_codes, k_levels, std::nullopt, seed);
    const DesignResult res = design(spec, model);
    return {{"scheme", scheme},
            {"n_codes", n_codes},
            {"n_power_levels", spec.n_power_levels},
            {"throughput", res.masa},
            {"p_outage", 0.0},
            {"p_no_tx", res.metrics.p_no_tx}};
}

int cmd_compare(const std::string& scheme_pair, int n_codes, int k_levels,
                const GbarRange& gbar, std::uint64_t seed,
                const std::string& out_path) {
    const FadingModel model = FadingModel::rayleigh(db_to_linear(gbar.start));
    std::vector<std::string> schemes;
    std::stringstream ss(scheme_pair);
    std::string item;
    while (std::getline(ss, item, ',')) schemes.push_back(item);
    if (schemes.empty()) throw CLI::ValidationError("--scheme", "none given");
    if (schemes.size() == 1 && schemes[0] == "art2") {
        // the canonical comparison: zero-outage single-rate vs expected-rate
        schemes = {"constant", "art2"};
        n_codes = 1;
    }
    json rows = json::array();
    for (const auto& s : schemes)
        rows.push_back(scheme_row(s, n_codes, k_levels, model, seed));
    json j{{"gbar_db", gbar.start}, {"rows", rows}};
    if (rows.size() == 2) {
        j["delta_throughput"] = static_cast<double>(rows[1]["throughput"]) -
                                static_cast<double>(rows[0]["throughput"]);
    }
    emit(j.dump(2), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-adaptation scheme designer for flat block-fading channels"};
    app.require_subcommand(1);

    std::string scheme = "constant";
    int n_codes = 4;
    int k_levels = 1;
    std::string gbar_text = "10";
    std::optional<double> outage_cap;
    std::uint64_t seed = 42;
    long long n_blocks = 1'000'000;
    std::string out_path;
    std::string format = "json";
    std::string policy_path;

    auto add_common = [&](CLI::App* cmd, bool with_format) {
        cmd->add_option("--scheme", scheme,
                        "constant|discrete|continuous (compare also: art2, "
                        "c-ora, c-opra; comma pair allowed)");
        cmd->add_option("-N,--codes", n_codes, "number of codes");
        cmd->add_option("-K,--power-levels", k_levels,
                        "power levels per code (discrete only)");
        cmd->add_option("--gbar-db", gbar_text,
                        "average SNR in dB, or start:stop:step");
        cmd->add_option("--outage-cap", outage_cap,
                        "max probability of no transmission");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        if (with_format)
            cmd->add_option("--format", format, "json|csv")
                ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* design_cmd = app.add_subcommand("design", "optimize one scheme");
    add_common(design_cmd, false);
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "design across an SNR range");
    add_common(sweep_cmd, true);
    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "Monte-Carlo validation of a policy");
    add_common(sim_cmd, false);
    sim_cmd->add_option("--policy", policy_path, "policy JSON file");
    sim_cmd->add_option("--blocks", n_blocks, "number of fading blocks");
    CLI::App* cmp_cmd =
        app.add_subcommand("compare", "side-by-side scheme metrics");
    add_common(cmp_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        const GbarRange gbar = parse_gbar(gbar_text);
        if (outage_cap && !(*outage_cap > 0.0 && *outage_cap < 1.0))
            throw CLI::ValidationError("--outage-cap", "must be in (0,1)");
        if (design_cmd->parsed())
            return cmd_design(scheme, n_codes, k_levels, gbar, outage_cap,
                              seed, out_path);
        if (sweep_cmd->parsed())
            return cmd_sweep(scheme, n_codes, k_levels, gbar, outage_cap,
                             seed, out_path, format);
        if (sim_cmd->parsed())
            return cmd_simulate(policy_path, scheme, n_codes, k_levels, gbar,
                                outage_cap, n_blocks, seed, out_path);
        if (cmp_cmd->parsed())
            return cmd_compare(scheme, n_codes, k_levels, gbar, seed,
                               out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonConverged;
    }
    return kExitUsage;
}
