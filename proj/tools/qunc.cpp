// Copyright 2026 The qunc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qunc command-line front end.
//
//   qunc fig1     [--samples N] [--out file.csv]
//   qunc fig3     [--samples N] [--seed S] [--out file.csv]
//   qunc audit    [--samples N] [--seed S] [--dims 2,3,4] [--out file.json]
//   qunc qsl      (--config scenario.json | --scenario name) [--trajectory file.csv] [--out file.json]
//   qunc fidelity [--r x y z] [--s x y z] [--m x y z] [--seed S] [--starts N] [--out file.json]
//   qunc hexagon  [--samples N] [--seed S] [--out file.csv]
//
// Exit codes: 0 success, 1 audit assertion failure, 2 usage or configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qunc/io.hpp"
#include "qunc/protocol.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    write(out);
    if (!out) throw UsageError("write failed for " + path);
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int d = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            dims.push_back(d);
        } catch (const std::exception&) {
            throw UsageError("bad dimension '" + item + "'");
        }
    }
    if (dims.empty()) throw UsageError("no dimensions given");
    for (int d : dims)
        if (d < 2) throw UsageError("dimension must be >= 2, got " + std::to_string(d));
    return dims;
}

qunc::Vec3 to_vec3(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

qunc::json vec_json(const qunc::Vec3& v) { return {v.x(), v.y(), v.z()}; }

qunc::Scenario bundled_scenario(const std::string& name) {
    for (auto& sc : qunc::scenarios::bundled())
        if (sc.name == name) return sc;
    throw UsageError("unknown scenario '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qunc: uncertainty relations workbench"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    int samples = -1;
    std::string out_path;
    std::string config_path;

    auto add_common = [&](CLI::App* sub, bool stochastic) {
        sub->add_option("--samples", samples, "Number of samples or grid points");
        sub->add_option("--out", out_path, "Output path (stdout if omitted)");
        if (stochastic) sub->add_option("--seed", seed, "RNG seed");
    };

    auto* fig1 = app.add_subcommand("fig1", "Qutrit family curves: sum of variances and its bounds");
    add_common(fig1, false);

    auto* fig3 = app.add_subcommand("fig3", "Purity of the normalized uncertainty matrix vs incompatibility");
    add_common(fig3, true);

    auto* audit = app.add_subcommand("audit", "Randomized audit of every inequality family");
    add_common(audit, true);
    std::string dims_text = "2,3,4";
    audit->add_option("--dims", dims_text, "Comma-separated dimensions");

    auto* qsl = app.add_subcommand("qsl", "Reverse speed-limit report for a Lindblad scenario");
    add_common(qsl, false);
    std::string scenario_name;
    std::string trajectory_path;
    qsl->add_option("--config", config_path, "JSON scenario file");
    qsl->add_option("--scenario", scenario_name, "Bundled scenario name");
    qsl->add_option("--trajectory", trajectory_path, "Write t, Bures angle, sin^2 to this CSV");
    bool list_scenarios = false;
    qsl->add_flag("--list", list_scenarios, "List bundled scenarios");

    auto* fid = app.add_subcommand("fidelity", "Construct B and the two-measurement fidelity bound");
    add_common(fid, true);
    std::vector<double> r_in{0, 0, 0}, s_in{0.6, 0, 0}, m_in{0, 0, 1};
    int starts = qunc::kProtocolMinStarts;
    fid->add_option("--r", r_in, "Bloch vector of rho")->expected(3);
    fid->add_option("--s", s_in, "Bloch vector of the target")->expected(3);
    fid->add_option("--m", m_in, "Unit direction of A")->expected(3);
    fid->add_option("--starts", starts, "Newton starts (>= 32)");

    auto* hex = app.add_subcommand("hexagon", "Hexagon identity residuals for three observables");
    add_common(hex, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*fig1) {
            const int points = samples < 0 ? 101 : samples;
            if (points < 1) throw UsageError("--samples must be >= 1");
            const auto rows = qunc::fig1_table(qunc::uniform_grid(0.0, 1.0, points));
            emit(out_path, [&](std::ostream& o) { qunc::write_fig1_csv(o, rows); });
        } else if (*fig3) {
            const int n = samples < 0 ? 60000 : samples;
            if (n < 1) throw UsageError("--samples must be >= 1");
            const auto pts = qunc::purity_scatter(static_cast<std::size_t>(n), seed);
            emit(out_path, [&](std::ostream& o) { qunc::write_fig3_csv(o, pts); });
        } else if (*audit) {
            qunc::AuditConfig cfg;
            cfg.dims = parse_dims(dims_text);
            cfg.samples = samples < 0 ? 1000 : samples;
            if (cfg.samples < 1) throw UsageError("--samples must be >= 1");
            cfg.seed = seed;
            const auto res = qunc::run_audit(cfg);
            emit(out_path, [&](std::ostream& o) { o << qunc::audit_to_json(res).dump(2) << '\n'; });
            for (const auto& f : res.families)
                if (!f.passes())
                    std::cerr << "audit: " << f.name << " failed on " << f.violations << " of " << f.checked
                              << " instances\n";
            return res.passes() ? kExitOk : kExitAuditFail;
        } else if (*qsl) {
            if (list_scenarios) {
                for (const auto& sc : qunc::scenarios::bundled()) std::cout << sc.name << '\n';
                return kExitOk;
            }
            if (config_path.empty() == scenario_name.empty())
                throw UsageError("qsl needs exactly one of --config or --scenario");
            const qunc::Scenario sc =
                config_path.empty() ? bundled_scenario(scenario_name) : qunc::load_scenario(config_path);
            const auto outcome = qunc::run_scenario(sc);
            emit(out_path, [&](std::ostream& o) { o << qunc::qsl_report_to_json(outcome).dump(2) << '\n'; });
            if (!trajectory_path.empty())
                emit(trajectory_path, [&](std::ostream& o) { qunc::write_trajectory_csv(o, outcome.trajectory); });
        } else if (*fid) {
            const qunc::Vec3 m = to_vec3(m_in);
            if (m.norm() < 1e-12) throw UsageError("--m must be nonzero");
            const qunc::Vec3 m_hat = m.normalized();
            const qunc::BlochVector r{to_vec3(r_in)}, s{to_vec3(s_in)};
            qunc::Rng rng(seed);
            const auto sol = qunc::construct_B(r, s, m_hat, rng, starts);
            qunc::json j;
            j["r"] = vec_json(r.r);
            j["s"] = vec_json(s.r);
            j["m"] = vec_json(m_hat);
            j["status"] = qunc::to_string(sol.status);
            j["lambda"] = sol.lambda;
            j["n"] = vec_json(sol.nHat);
            j["residual"] = qunc::finite_or_null(sol.residual);
            j["printed_residual"] = qunc::finite_or_null(sol.printedResidual);
            j["matrix_residual"] = qunc::finite_or_null(sol.matrixResidual);
            j["sign"] = sol.sign;
            j["starts"] = sol.starts;
            j["converged_starts"] = sol.converged;
            if (sol.accepted()) {
                const auto fb = qunc::fidelity_lower_bound(qunc::qubit_from_bloch(r), m_hat, sol);
                j["fidelity_bound"] = fb.bound;
                j["fidelity_sq"] = fb.trueFidelitySq;
                j["trace_K"] = fb.traceK;
                j["sum_variances"] = fb.sumVariances;
                j["canonical_form"] = fb.canonicalForm;
            }
            emit(out_path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
        } else if (*hex) {
            const int n = samples < 0 ? 200 : samples;
            if (n < 1) throw UsageError("--samples must be >= 1");
            const auto rows = qunc::hexagon_table(n, seed);
            emit(out_path, [&](std::ostream& o) { qunc::write_hexagon_csv(o, rows); });
        }
    } catch (const UsageError& e) {
        std::cerr << "qunc: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qunc::Error& e) {
        std::cerr << "qunc: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}
