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

#pragma once

// CSV tables and JSON (de)serialization. Complex matrices in JSON are row-major nested
// arrays of [re, im] pairs; a bare number is accepted as a real entry.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qunc/experiments.hpp"

namespace qunc {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// CSV

inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), cols_(header.size()) {
        write_line(header);
    }
    void row(const std::vector<double>& values) {
        if (values.size() != cols_) throw ParamError("CSV row width does not match header");
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (double v : values) cells.push_back(format_number(v));
        write_line(cells);
    }

private:
    void write_line(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }
    std::ostream& out_;
    std::size_t cols_;
};

inline void write_fig1_csv(std::ostream& out, const std::vector<Fig1Row>& rows) {
    CsvWriter w(out, {"p", "sum_variances", "robertson", "theorem2_pb", "theorem4_reverse"});
    for (const auto& r : rows) w.row({r.p, r.sumVariances, r.robertson, r.theorem2, r.theorem4});
}

inline void write_fig3_csv(std::ostream& out, const std::vector<ScatterPoint>& pts) {
    CsvWriter w(out, {"angle", "blochRadius", "purity_of_rho"});
    for (const auto& p : pts) w.row({p.angle, p.blochRadius, p.purity});
}

inline void write_hexagon_csv(std::ostream& out, const std::vector<HexagonRow>& rows) {
    CsvWriter w(out, {"index", "dim", "variant1_residual", "variant2_residual", "sum_norms", "decomp_a_residual",
                      "decomp_b_residual", "algebra_residual", "pairwise_bound", "sum_variances"});
    for (const auto& r : rows)
        w.row({double(r.index), double(r.dim), r.variant1, r.variant2, r.sumNorms, r.residualA, r.residualB,
               r.residualAlgebra, r.pairwiseBound, r.sumVariances});
}

inline void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
    CsvWriter w(out, {"t", "bures_angle", "sin2_bures"});
    for (std::size_t k = 0; k < t.size(); ++k) w.row({t.times[k], t.bures[k], t.sinSqBures[k]});
}

// ---------------------------------------------------------------------------
// JSON matrices

inline json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw ConfigError(what + ": expected a non-empty array of rows");
    const std::size_t n = j.size();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != n) throw ConfigError(what + ": matrix must be square");
        for (std::size_t k = 0; k < n; ++k) {
            const json& e = row[k];
            if (e.is_number()) {
                m(i, k) = cplx(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
            } else {
                throw ConfigError(what + ": entries must be [re, im] pairs");
            }
        }
    }
    return m;
}

inline double number_from_json(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
    if (!j[key].is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
    return j[key].get<double>();
}

inline Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
    for (const char* key : {"hamiltonian", "rho0"})
        if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
    Scenario sc;
    sc.name = j.value("name", std::string("custom"));
    sc.generator.H = matrix_from_json(j["hamiltonian"], "hamiltonian");
    if (j.contains("jump_ops")) {
        if (!j["jump_ops"].is_array()) throw ConfigError("jump_ops must be an array of matrices");
        for (std::size_t k = 0; k < j["jump_ops"].size(); ++k)
            sc.generator.jumpOps.push_back(matrix_from_json(j["jump_ops"][k], "jump_ops[" + std::to_string(k) + "]"));
    }
    if (j.contains("rates")) {
        if (!j["rates"].is_array()) throw ConfigError("rates must be an array of numbers");
        for (const auto& r : j["rates"]) {
            if (!r.is_number()) throw ConfigError("rates must be numbers");
            sc.generator.rates.push_back(r.get<double>());
        }
    }
    sc.rho0 = matrix_from_json(j["rho0"], "rho0");
    sc.tau = number_from_json(j, "tau");
    sc.dt = number_from_json(j, "dt");
    try {
        sc.generator.validate();
        if (sc.rho0.rows() != sc.generator.dim()) throw DimensionError("rho0 and hamiltonian dimensions differ");
        DensityMatrix check(sc.rho0);
        (void)check;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

inline json scenario_to_json(const Scenario& sc) {
    json j;
    j["name"] = sc.name;
    j["hamiltonian"] = matrix_to_json(sc.generator.H);
    j["jump_ops"] = json::array();
    for (const auto& l : sc.generator.jumpOps) j["jump_ops"].push_back(matrix_to_json(l));
    j["rates"] = sc.generator.rates;
    j["rho0"] = matrix_to_json(sc.rho0);
    j["tau"] = sc.tau;
    j["dt"] = sc.dt;
    return j;
}

// ---------------------------------------------------------------------------
// Reports

inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json qsl_report_to_json(const ScenarioOutcome& o) {
    const QslReport& r = o.report;
    json j;
    j["scenario"] = o.scenario.name;
    j["tau"] = r.tau;
    j["dt"] = o.scenario.dt;
    j["steps"] = o.trajectory.size() - 1;
    j["projections"] = o.trajectory.projections;
    j["max_drift"] = o.trajectory.maxDrift;
    j["assumptions"] = {{"monotone", r.assumptions.monotone},
                        {"constant_sign", r.assumptions.constantSign},
                        {"sign", r.assumptions.sign},
                        {"degenerate", r.assumptions.degenerate},
                        {"max_abs_overlap", r.assumptions.maxAbsOverlap},
                        {"passes", r.assumptions.passes()}};
    j["branch"] = r.branch;
    j["entropy0"] = r.entropy0;
    j["log_dim"] = r.logDim;
    j["lambda_reverse"] = finite_or_null(r.lambdaReverse);
    j["sin2_bures_final"] = r.sinSqFinal;
    j["integrated"] = {{"checked", r.integratedChecked},
                       {"lhs", finite_or_null(r.integratedLhs)},
                       {"rhs", finite_or_null(r.integratedRhs)},
                       {"holds", r.integratedHolds}};
    j["time_bound"] = {{"valid", r.timeBoundValid}, {"value", finite_or_null(r.timeBound)}};
    j["pointwise"] = {{"checked", r.pointwise.checked},
                      {"reason", r.pointwise.reason},
                      {"max_violation", finite_or_null(r.pointwise.maxViolation)},
                      {"max_pb_violation", finite_or_null(r.pointwise.maxPbViolation)}};
    j["reason"] = r.reason;
    return j;
}

inline json audit_to_json(const AuditResult& res) {
    json j;
    j["seed"] = res.config.seed;
    j["samples"] = res.config.samples;
    j["dims"] = res.config.dims;
    j["passes"] = res.passes();
    json fams = json::array();
    for (const auto& f : res.families) {
        json fj;
        fj["name"] = f.name;
        fj["asserted"] = f.asserted;
        fj["checked"] = f.checked;
        fj["violations"] = f.violations;
        fj["tolerance"] = f.tolerance;
        fj["worst_violation"] = finite_or_null(f.worst);
        fj["status"] = !f.asserted ? "diagnostic" : (f.passes() ? "pass" : "fail");
        json ces = json::array();
        for (int idx : f.counterexamples) {
            const Instance in = make_instance(idx, res.config.dims, res.config.seed);
            ces.push_back({{"instance", idx},
                           {"dim", in.dim},
                           {"rho", matrix_to_json(in.rho.matrix())},
                           {"psi", matrix_to_json(in.psi.vector())},
                           {"A", matrix_to_json(in.a)},
                           {"B", matrix_to_json(in.b)},
                           {"C", matrix_to_json(in.c)}});
        }
        fj["counterexamples"] = ces;
        fams.push_back(fj);
    }
    j["families"] = fams;
    return j;
}

}  // namespace qunc
