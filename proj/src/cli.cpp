// Copyright 2026 The sedyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sedyn/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "sedyn/errors.hpp"
#include "sedyn/exact_oracle.hpp"
#include "sedyn/kernels/kernels.hpp"
#include "sedyn/loschmidt.hpp"
#include "sedyn/quench_analysis.hpp"
#include "sedyn/replica_tm.hpp"
#include "sedyn/scan_io.hpp"

namespace sedyn::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// TOML through CLI11; a document starting with '{' is read as JSON, nested objects becoming sections.
class JsonOrTomlConfig : public CLI::ConfigTOML {
  public:
    std::vector<CLI::ConfigItem> from_config(std::istream& is) const override {
        std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
        auto first = text.find_first_not_of(" \t\r\n");
        if (first == std::string::npos || text[first] != '{') {
            std::istringstream ss(text);
            return CLI::ConfigTOML::from_config(ss);
        }
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            throw CLI::ConversionError(std::string("config: ") + e.what());
        }
        std::vector<CLI::ConfigItem> items;
        flatten(doc, {}, items);
        return items;
    }

  private:
    static std::string scalar(const json& v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_boolean()) {
            return v.get<bool>() ? "true" : "false";
        }
        return v.dump();
    }

    static void flatten(const json& obj, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& out) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (it->is_object()) {
                auto p = parents;
                p.push_back(it.key());
                flatten(*it, p, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = it.key();
            if (it->is_array()) {
                for (const auto& v : *it) {
                    item.inputs.push_back(scalar(v));
                }
            } else {
                item.inputs.push_back(scalar(*it));
            }
            out.push_back(std::move(item));
        }
    }
};

QuenchSpec make_spec(const RunConfig& cfg) {
    if (cfg.n_sites) {
        return QuenchSpec::finite(cfg.lambda0, cfg.lambda1, *cfg.n_sites);
    }
    QuenchSpec s = QuenchSpec::thermodynamic(cfg.lambda0, cfg.lambda1, cfg.quadrature_points);
    std::get<ThermodynamicLimit>(s.size).safety = cfg.quadrature_safety;
    return s;
}

MomentOptions moment_options(const RunConfig& cfg) {
    MomentOptions m;
    m.max_block_len = cfg.max_block_len;
    m.threads = cfg.threads;
    return m;
}

json config_json(const RunConfig& c) {
    json j{{"subcommand", c.subcommand},
           {"lambda0", c.lambda0},
           {"lambda1", c.lambda1},
           {"quadrature_points", c.quadrature_points},
           {"quadrature_safety", c.quadrature_safety},
           {"L", c.L_range},
           {"t", c.t_range},
           {"tol", c.tol},
           {"eps", c.epsilon},
           {"threads", c.threads},
           {"reproducible", c.reproducible},
           {"checkpoint_every", c.checkpoint_every},
           {"strict", c.strict},
           {"max_block_len", c.max_block_len},
           {"mps", c.mps},
           {"bond_dim", c.bond_dim},
           {"seed", c.seed},
           {"samples", c.samples},
           {"k", c.k},
           {"echo_horizon", c.echo_horizon}};
    j["preset"] = c.preset ? json(*c.preset) : json(nullptr);
    j["N"] = c.n_sites ? json(*c.n_sites) : json(nullptr);
    j["horizon"] = c.horizon ? json(*c.horizon) : json(nullptr);
    return j;
}

/// Collects output files and writes the manifest at the end.
class Outputs {
  public:
    Outputs(const RunConfig& cfg, std::string stem)
        : cfg_(cfg), stem_(cfg.tag.empty() ? std::move(stem) : cfg.tag), start_(std::chrono::steady_clock::now()) {
        fs::create_directories(cfg.out_dir);
    }

    std::string path(const std::string& suffix) const { return (fs::path(cfg_.out_dir) / (stem_ + suffix)).string(); }

    void write(const std::string& suffix, const std::string& body) {
        std::ofstream f(path(suffix), std::ios::binary);
        if (!f) {
            throw ResourceError("cannot write " + path(suffix));
        }
        f << body;
        files_[stem_ + suffix] = fnv1a_hex(body);
    }

    void finish(json results) {
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json m{{"tool", "sedyn"},
               {"version", SEDYN_VERSION},
               {"config", config_json(cfg_)},
               {"isa", std::string(kernels::isa_name(kernels::active_kernels().isa))},
               {"threads", resolve_thread_count(cfg_.threads)},
               {"wall_time_s", wall},
               {"outputs", files_},
               {"results", std::move(results)}};
        std::ofstream f(path(".json"));
        f << m.dump(2) << '\n';
    }

  private:
    const RunConfig& cfg_;
    std::string stem_;
    std::chrono::steady_clock::time_point start_;
    std::map<std::string, std::string> files_;
};

std::string stem_for(const RunConfig& cfg) {
    std::ostringstream s;
    s << cfg.subcommand << "_" << format_real(cfg.lambda0) << "_" << format_real(cfg.lambda1);
    if (cfg.n_sites) {
        s << "_N" << *cfg.n_sites;
    }
    return s.str();
}

ScanResult run_scan(const RunConfig& cfg, const QuenchSpec& spec, const std::vector<int>& L_grid,
                    const std::vector<double>& t_grid, bool dephased, Outputs& out) {
    ScanOptions opts;
    opts.moments = moment_options(cfg);
    opts.dephased = dephased;
    const std::string ckpt = out.path(".checkpoint.csv");
    if (cfg.resume && fs::exists(ckpt)) {
        std::ifstream in(ckpt);
        read_scan_checkpoint(in, spec, t_grid, opts);
    } else {
        std::ofstream(ckpt, std::ios::trunc) << kScanCsvHeader << '\n';
    }
    std::size_t flushed = 0;
    const auto every = static_cast<std::size_t>(std::max(1, cfg.checkpoint_every));
    opts.on_row = [&](const ScanResult& partial, std::size_t i) {
        if ((i + 1) % every != 0 && i + 1 != partial.L_grid.size()) {
            return;
        }
        std::ofstream f(ckpt, std::ios::app);
        for (; flushed <= i; flushed++) {
            write_scan_rows(f, partial, flushed);
        }
    };
    ScanResult scan = time_scan(spec, L_grid, t_grid, opts);
    std::ostringstream csv;
    write_scan_csv(csv, scan);
    out.write(".csv", csv.str());
    fs::remove(ckpt);
    return scan;
}

void gnuplot(const RunConfig& cfg, Outputs& out, const std::string& body) {
    if (cfg.gnuplot) {
        out.write(".gp", body);
    }
}

int cmd_scan_time(const RunConfig& cfg) {
    const QuenchSpec spec = make_spec(cfg);
    auto L = parse_int_range(cfg.L_range.empty() ? "1..8" : cfg.L_range);
    auto t = parse_real_range(cfg.t_range.empty() ? "0:8:0.1" : cfg.t_range);
    Outputs out(cfg, stem_for(cfg));
    ScanResult scan = run_scan(cfg, spec, L, t, true, out);
    json dep = json::array();
    for (const auto& r : scan.dephased_row) {
        dep.push_back(to_json(r));
    }
    std::string csv = fs::path(out.path(".csv")).filename().string();
    gnuplot(cfg, out,
            "set datafile separator ','\nset key left\nset xlabel 't'\nset ylabel 'M2'\n"
            "plot for [L=" + std::to_string(L.front()) + ":" + std::to_string(L.back()) + "] '" + csv +
                "' using ($3==L && strcol(4) ne 'dephased' ? $4 : 1/0):8 with lines title sprintf('L=%d', L)\n");
    out.finish({{"spec", to_json(spec)}, {"L_grid", L}, {"t_grid", t}, {"dephased", dep}});
    return kOk;
}

int cmd_equilibration(const RunConfig& cfg) {
    const QuenchSpec spec = make_spec(cfg);
    auto L = parse_int_range(cfg.L_range.empty() ? "1..10" : cfg.L_range);
    auto t = parse_real_range(cfg.t_range.empty() ? "0:20:0.05" : cfg.t_range);
    const double horizon = cfg.horizon.value_or(t.back());
    Outputs out(cfg, stem_for(cfg));
    ScanResult scan = run_scan(cfg, spec, L, t, true, out);
    const double v_lr = max_group_velocity(cfg.lambda1);

    std::ostringstream csv;
    csv << "L,L_over_vLR,tau,status,M2_dephased\n";
    json rows = json::array();
    std::vector<double> x, y;
    bool all_eq = true;
    for (std::size_t i = 0; i < L.size(); i++) {
        const double ref = scan.dephased_row[i].M2;
        Equilibration eq = equilibration_time(t, scan.series(L[i], &SEReport::M2), ref, cfg.tol, horizon);
        const bool ok = eq.status == EquilibrationStatus::Equilibrated;
        all_eq = all_eq && ok;
        csv << L[i] << ',' << format_real(L[i] / v_lr) << ',' << (ok ? format_real(*eq.time) : "") << ','
            << (ok ? "EQUILIBRATED" : "NOT_EQUILIBRATED") << ',' << format_real(ref) << '\n';
        json r{{"L", L[i]}, {"status", ok ? "EQUILIBRATED" : "NOT_EQUILIBRATED"}, {"M2_dephased", ref},
               {"absolute_fallback", eq.absolute_fallback}};
        r["tau"] = ok ? json(*eq.time) : json(nullptr);
        rows.push_back(r);
        if (ok) {
            x.push_back(L[i]);
            y.push_back(*eq.time);
        }
    }
    out.write("_tau.csv", csv.str());
    json res{{"spec", to_json(spec)}, {"tol", cfg.tol}, {"horizon", horizon}, {"v_LR", v_lr}, {"tau", rows}};
    if (x.size() >= 2) {
        LinearFit f = linear_fit(x, y);
        res["fit"] = {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}, {"slope_times_vLR", f.slope * v_lr}};
    }
    std::string tau = fs::path(out.path("_tau.csv")).filename().string();
    gnuplot(cfg, out,
            "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'L/v_LR'\nset ylabel 'tau'\n"
            "plot '" + tau + "' using 2:3 with linespoints\n");
    out.finish(res);
    return (!all_eq && cfg.strict) ? kUnresolved : kOk;
}

int cmd_se_length(const RunConfig& cfg) {
    const QuenchSpec spec = make_spec(cfg);
    auto L = parse_int_range(cfg.L_range.empty() ? "1..12" : cfg.L_range);
    auto t = parse_real_range(cfg.t_range.empty() ? "0:2:0.25" : cfg.t_range);
    Outputs out(cfg, stem_for(cfg));
    ScanResult scan = run_scan(cfg, spec, L, t, false, out);
    LocalityProfile p2 = locality_profile(scan, LocalityKind::T2, cfg.epsilon);
    LocalityProfile p4 = locality_profile(scan, LocalityKind::T4, cfg.epsilon);
    std::ostringstream c2, c4;
    write_locality_csv(c2, p2);
    write_locality_csv(c4, p4);
    out.write("_T2.csv", c2.str());
    out.write("_T4.csv", c4.str());
    SpreadingVelocity sv = spreading_velocity(p2.fit, p4.fit);
    json res{{"spec", to_json(spec)}, {"T2", to_json(p2)}, {"T4", to_json(p4)},
             {"v_LR", max_group_velocity(cfg.lambda1)}};
    res["v_s"] = sv.v_s ? json(*sv.v_s) : json("UNRESOLVED");
    std::string f2 = fs::path(out.path("_T2.csv")).filename().string();
    gnuplot(cfg, out,
            "set datafile separator ','\nset logscale y\nset xlabel 'L'\nset ylabel '|d2 T2|'\n"
            "plot '" + f2 + "' using 3:4 with points notitle\n");
    out.finish(res);
    bool unresolved = !sv.v_s;
    for (const auto& l : p2.l_eps) {
        unresolved = unresolved || !l;
    }
    for (const auto& l : p4.l_eps) {
        unresolved = unresolved || !l;
    }
    return (unresolved && cfg.strict) ? kUnresolved : kOk;
}

int cmd_loschmidt(const RunConfig& cfg) {
    RunConfig c = cfg;
    if (!c.n_sites) {
        c.n_sites = 100;
    }
    const QuenchSpec spec = make_spec(c);
    std::vector<double> t =
        cfg.t_range.empty() ? default_echo_grid(*c.n_sites, cfg.echo_horizon) : parse_real_range(cfg.t_range);
    Outputs out(c, stem_for(c));
    EchoSeries s = echo_series(spec, t);
    RevivalReport rep = revival_times(s);
    std::ostringstream csv;
    write_echo_csv(csv, s);
    out.write(".csv", csv.str());
    json res{{"spec", to_json(spec)}, {"revivals", to_json(rep)}, {"v_LR_expected", max_group_velocity(c.lambda1)}};
    res["v_LR"] = rep.t_revival ? json(lr_speed(*rep.t_revival, *c.n_sites)) : json(nullptr);
    std::string f = fs::path(out.path(".csv")).filename().string();
    gnuplot(c, out,
            "set datafile separator ','\nset key autotitle columnhead\nset xlabel 't/N'\nset ylabel 'LE'\n"
            "plot '" + f + "' using ($1/" + std::to_string(*c.n_sites) + "):2 with lines\n");
    out.finish(res);
    return (!rep.t_revival && cfg.strict) ? kUnresolved : kOk;
}

int cmd_replica(const RunConfig& cfg) {
    auto L = parse_int_range(cfg.L_range.empty() ? "4..10" : cfg.L_range);
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::pair<std::string, UniformMps>> states;
    for (int n = 0; n < std::max(1, cfg.samples); n++) {
        if (cfg.mps == "random") {
            states.emplace_back("random_" + std::to_string(n), random_mps(cfg.bond_dim, rng));
        } else if (cfg.mps == "cat") {
            states.emplace_back("cat", cat_mps());
            break;
        } else if (cfg.mps == "product-zero") {
            states.emplace_back("product_zero", product_mps(1.0, 0.0));
            break;
        } else if (cfg.mps == "product-magic") {
            states.emplace_back("product_magic", product_mps(std::cos(M_PI / 8), std::sin(M_PI / 8)));
            break;
        } else {
            throw InvalidInput("unknown --mps " + cfg.mps);
        }
    }
    std::vector<int> ks = cfg.k == 0 ? std::vector<int>{1, 2} : std::vector<int>{cfg.k};
    Outputs out(cfg, "replica_" + cfg.mps);
    std::ostringstream csv;
    csv << "state,k,L,dense,predicted,rel_dev,bound,within,low_confidence\n";
    json reports = json::array();
    bool flagged = false;
    for (const auto& [name, mps] : states) {
        for (int k : ks) {
            ReplicaScaling s = scaling_params(mps, k);
            json per_L = json::array();
            for (int l : L) {
                const double dense = dense_string_expectation(mps, k, l);
                TPrediction p = predict_T(s, l);
                const double predicted = std::exp2(-p.value);
                const double rel = std::abs(dense - predicted) / predicted;
                const double bound = std::exp2(p.error_bound) - 1;
                const bool within = rel <= bound * (1 + 1e-6) + 1e-12;
                flagged = flagged || p.low_confidence || p.degenerate;
                csv << name << ',' << k << ',' << l << ',' << format_real(dense) << ',' << format_real(predicted)
                    << ',' << format_real(rel) << ',' << format_real(bound) << ',' << (within ? 1 : 0) << ','
                    << (p.low_confidence ? 1 : 0) << '\n';
                per_L.push_back({{"L", l}, {"dense", dense}, {"predicted", predicted}, {"T_predicted", p.value},
                                 {"rel_dev", rel}, {"bound", bound}, {"within", within},
                                 {"low_confidence", p.low_confidence}});
            }
            json r{{"state", name}, {"k", k},   {"D", mps.bond_dim()}, {"m", s.m},
                   {"q", s.q},      {"F", s.F}, {"F_envelope", s.F_envelope}, {"degenerate", s.degenerate},
                   {"per_L", per_L}};
            r["xi"] = std::isfinite(s.xi) ? json(s.xi) : json("inf");
            reports.push_back(r);
        }
    }
    out.write(".csv", csv.str());
    out.finish({{"reports", reports}});
    return (flagged && cfg.strict) ? kUnresolved : kOk;
}

int cmd_oracle_check(const RunConfig& cfg) {
    const int N = cfg.n_sites.value_or(12);
    auto Ls = parse_int_range(cfg.L_range.empty() ? "4" : cfg.L_range);
    auto ts = parse_real_range(cfg.t_range.empty() ? "0,0.5,1,2" : cfg.t_range);
    if (N > oracle::kMaxSites) {
        throw ResourceError("oracle limited to N <= " + std::to_string(oracle::kMaxSites));
    }
    Outputs out(cfg, "oracle_check");
    const QuenchSpec spec = QuenchSpec::finite(cfg.lambda0, cfg.lambda1, N);
    oracle::DenseState psi0 = oracle::ground_state(N, cfg.lambda0);
    std::ostringstream csv;
    csv << "L,t,M2_fermion,M2_dense,dM2,max_dP,max_dGamma\n";
    double worst_m2 = 0, worst_p = 0;
    for (int L : Ls) {
        for (double t : ts) {
            oracle::DenseState psi = oracle::evolve(psi0, cfg.lambda1, t);
            MajoranaCorrelation g = evolved_correlation(spec, L, t);
            double dg = (g.gamma() - oracle::majorana_correlation(psi, L)).cwiseAbs().maxCoeff();
            Eigen::MatrixXcd rho = oracle::reduced_density(psi, L);
            SEReport a = se_report(g, moment_options(cfg));
            SEReport b = se_report(oracle::brute_moments(rho));
            double dp = 0;
            for (std::uint32_t x = 0; x < (1u << L); x++) {
                for (std::uint32_t z = 0; z < (1u << L); z++) {
                    PauliString p{x, z, L};
                    dp = std::max(dp, std::abs(pauli_expectation(p, g) - oracle::pauli_expectation(rho, p)));
                }
            }
            worst_m2 = std::max(worst_m2, std::abs(a.M2 - b.M2));
            worst_p = std::max(worst_p, dp);
            csv << L << ',' << format_real(t) << ',' << format_real(a.M2) << ',' << format_real(b.M2) << ','
                << format_real(std::abs(a.M2 - b.M2)) << ',' << format_real(dp) << ',' << format_real(dg) << '\n';
        }
    }
    const int n_le = std::min(N, 10);
    const QuenchSpec le_spec = QuenchSpec::finite(cfg.lambda0, cfg.lambda1, n_le);
    oracle::DenseState le0 = oracle::ground_state(n_le, cfg.lambda0);
    double worst_le = 0;
    for (double t : {0.3, 0.7, 1.5}) {
        worst_le = std::max(worst_le, std::abs(loschmidt_echo(le_spec, t) -
                                               oracle::fidelity(le0, oracle::evolve(le0, cfg.lambda1, t))));
    }
    out.write(".csv", csv.str());
    const bool pass = worst_m2 <= 1e-6 && worst_p <= 1e-7 && worst_le <= 1e-9;
    out.finish({{"N", N},
                {"max_dM2", worst_m2},
                {"max_dPauli", worst_p},
                {"LE_N", n_le},
                {"max_dLE", worst_le},
                {"pass", pass}});
    std::cout << "oracle-check: max|dM2|=" << worst_m2 << " max|d<P>|=" << worst_p << " max|dLE|=" << worst_le
              << (pass ? " PASS" : " FAIL") << '\n';
    return pass ? kOk : kNumerical;
}

}  // namespace

std::optional<std::pair<double, double>> preset_couplings(const std::string& name) {
    static const std::map<std::string, std::pair<double, double>> presets{
        {"large-0.5", {1e4, 0.5}},
        {"large-critical", {1e4, 1.0}},
        {"small", {0.5, 0.6}},
        {"small-critical", {0.9, 1.0}},
    };
    auto it = presets.find(name);
    if (it == presets.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<int> parse_int_range(const std::string& text) {
    std::vector<int> out;
    try {
        auto dots = text.find("..");
        if (dots != std::string::npos) {
            int a = std::stoi(text.substr(0, dots));
            int b = std::stoi(text.substr(dots + 2));
            for (int v = a; v <= b; v++) {
                out.push_back(v);
            }
        } else {
            std::stringstream ss(text);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                out.push_back(std::stoi(cell));
            }
        }
    } catch (const std::logic_error&) {
        throw InvalidInput("bad integer range '" + text + "'");
    }
    if (out.empty()) {
        throw InvalidInput("empty integer range '" + text + "'");
    }
    for (std::size_t i = 1; i < out.size(); i++) {
        if (out[i] <= out[i - 1]) {
            throw InvalidInput("range must be increasing: '" + text + "'");
        }
    }
    return out;
}

std::vector<double> parse_real_range(const std::string& text) {
    std::vector<double> out;
    try {
        if (text.find(':') != std::string::npos) {
            std::stringstream ss(text);
            std::string a, b, c;
            std::getline(ss, a, ':');
            std::getline(ss, b, ':');
            std::getline(ss, c, ':');
            const double start = std::stod(a), stop = std::stod(b), step = std::stod(c);
            if (!(step > 0) || stop < start) {
                throw InvalidInput("bad real range '" + text + "'");
            }
            const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
            for (long i = 0; i <= n; i++) {
                out.push_back(start + static_cast<double>(i) * step);
            }
        } else {
            std::stringstream ss(text);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                out.push_back(std::stod(cell));
            }
        }
    } catch (const std::logic_error&) {
        throw InvalidInput("bad real range '" + text + "'");
    }
    if (out.empty()) {
        throw InvalidInput("empty real range '" + text + "'");
    }
    for (std::size_t i = 1; i < out.size(); i++) {
        if (!(out[i] > out[i - 1])) {
            throw InvalidInput("range must be increasing: '" + text + "'");
        }
    }
    return out;
}

int execute(const RunConfig& cfg) {
    if (!(cfg.tol > 0 && cfg.tol < 1) || !(cfg.epsilon > 0 && cfg.epsilon < 1)) {
        throw InvalidInput("tolerances must lie in (0, 1)");
    }
    if (cfg.subcommand == "scan-time") {
        return cmd_scan_time(cfg);
    }
    if (cfg.subcommand == "equilibration") {
        return cmd_equilibration(cfg);
    }
    if (cfg.subcommand == "se-length") {
        return cmd_se_length(cfg);
    }
    if (cfg.subcommand == "loschmidt") {
        return cmd_loschmidt(cfg);
    }
    if (cfg.subcommand == "replica") {
        return cmd_replica(cfg);
    }
    if (cfg.subcommand == "oracle-check") {
        return cmd_oracle_check(cfg);
    }
    throw InvalidInput("unknown subcommand '" + cfg.subcommand + "'");
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Stabilizer-entropy dynamics after a transverse-field Ising quench"};
    app.config_formatter(std::make_shared<JsonOrTomlConfig>());
    app.set_config("--config", "", "JSON or TOML file; command-line flags take precedence");
    app.set_version_flag("--version", SEDYN_VERSION);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string preset;
    int n_sites = 0;
    double horizon = -1;
    app.add_option("--quench", preset, "large-0.5 | large-critical | small | small-critical");
    app.add_option("--lambda0", cfg.lambda0, "initial field");
    app.add_option("--lambda1", cfg.lambda1, "post-quench field");
    app.add_option("--N", n_sites, "finite periodic chain length (default: thermodynamic limit)");
    app.add_option("--quadrature", cfg.quadrature_points, "minimum quadrature nodes (thermodynamic limit)");
    app.add_option("--quadrature-safety", cfg.quadrature_safety, "nodes per unit of eps_max t");
    app.add_option("--L", cfg.L_range, "block sizes: a..b or a,b,c");
    app.add_option("--t", cfg.t_range, "times: start:stop:step or a,b,c");
    app.add_option("--tol", cfg.tol, "relative equilibration tolerance");
    app.add_option("--eps", cfg.epsilon, "locality tolerance");
    app.add_option("--horizon", horizon, "equilibration horizon (default: last time)");
    app.add_option("--echo-horizon", cfg.echo_horizon, "echo horizon in units of N");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_option("--tag", cfg.tag, "output file stem");
    app.add_option("--threads", cfg.threads, "worker threads (0: SEDYN_THREADS or hardware)");
    app.add_flag("--reproducible,!--no-reproducible", cfg.reproducible, "fixed-order reductions");
    app.add_option("--checkpoint-every", cfg.checkpoint_every, "persist rows every n completed L");
    app.add_flag("--resume", cfg.resume, "continue from an existing checkpoint");
    app.add_flag("--strict", cfg.strict, "exit 3 on UNRESOLVED / NOT_EQUILIBRATED outcomes");
    app.add_flag("--gnuplot", cfg.gnuplot, "also write a gnuplot script");
    app.add_option("--max-L", cfg.max_block_len, "largest block accepted by the moment sums");
    app.add_option("--mps", cfg.mps, "random | cat | product-zero | product-magic");
    app.add_option("--D", cfg.bond_dim, "bond dimension of random MPS");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--samples", cfg.samples, "number of random MPS");
    app.add_option("--k", cfg.k, "replica number 1 or 2 (0: both)");

    const std::pair<const char*, const char*> subcommands[] = {
        {"scan-time", "purity, S2, W, M2, T2, T4 over an (L, t) grid plus the dephased row"},
        {"equilibration", "equilibration time tau(L) and its linear fit"},
        {"se-length", "locality lengths of T2 and T4 and the spreading velocity"},
        {"loschmidt", "Loschmidt echo, revivals and the extracted v_LR"},
        {"replica", "replica transfer-matrix scaling of uniform MPS"},
        {"oracle-check", "free-fermion results against the dense statevector"},
    };
    for (const auto& [name, about] : subcommands) {
        app.add_subcommand(name, about)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (n_sites > 0) {
        cfg.n_sites = n_sites;
    }
    if (horizon >= 0) {
        cfg.horizon = horizon;
    }
    if (!preset.empty()) {
        auto c = preset_couplings(preset);
        if (!c) {
            std::cerr << "unknown preset '" << preset << "'\n";
            return kUsage;
        }
        cfg.preset = preset;
        if (app.count("--lambda0") == 0) {
            cfg.lambda0 = c->first;
        }
        if (app.count("--lambda1") == 0) {
            cfg.lambda1 = c->second;
        }
    }

    try {
        return execute(cfg);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return kNumerical;
    } catch (const ResolutionError& e) {
        std::cerr << "resolution error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("sedyn");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace sedyn::cli
