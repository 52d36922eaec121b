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

#include "sedyn/scan_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace sedyn {

const char* const kScanCsvHeader = "lambda0,lambda1,L,t,purity,S2,W,M2,T2,T4";

std::string format_real(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

void write_row(std::ostream& os, const QuenchSpec& spec, const std::string& t, const SEReport& r) {
    os << format_real(spec.lambda0) << ',' << format_real(spec.lambda1) << ',' << r.L << ',' << t << ','
       << format_real(r.purity) << ',' << format_real(r.S2) << ',' << format_real(r.W) << ',' << format_real(r.M2)
       << ',' << format_real(r.T2) << ',' << format_real(r.T4) << '\n';
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

}  // namespace

void write_scan_rows(std::ostream& os, const ScanResult& scan, std::size_t i) {
    for (std::size_t j = 0; j < scan.t_grid.size(); j++) {
        write_row(os, scan.spec, format_real(scan.t_grid[j]), scan.table[i][j]);
    }
    if (i < scan.dephased_row.size()) {
        write_row(os, scan.spec, "dephased", scan.dephased_row[i]);
    }
}

void write_scan_csv(std::ostream& os, const ScanResult& scan) {
    os << kScanCsvHeader << '\n';
    for (std::size_t i = 0; i < scan.L_grid.size(); i++) {
        for (std::size_t j = 0; j < scan.t_grid.size(); j++) {
            write_row(os, scan.spec, format_real(scan.t_grid[j]), scan.table[i][j]);
        }
    }
    for (const SEReport& r : scan.dephased_row) {
        write_row(os, scan.spec, "dephased", r);
    }
}

void read_scan_checkpoint(std::istream& is, const QuenchSpec& spec, const std::vector<double>& t_grid,
                          ScanOptions& opts) {
    std::map<int, std::map<double, SEReport>> rows;
    std::map<int, SEReport> deph;
    std::string line;
    while (std::getline(is, line)) {
        auto c = split(line);
        if (c.size() != 10 || c[0] == "lambda0") {
            continue;
        }
        try {
            if (std::stod(c[0]) != spec.lambda0 || std::stod(c[1]) != spec.lambda1) {
                continue;
            }
            SEReport r;
            r.L = std::stoi(c[2]);
            r.purity = std::stod(c[4]);
            r.S2 = std::stod(c[5]);
            r.W = std::stod(c[6]);
            r.M2 = std::stod(c[7]);
            r.T2 = std::stod(c[8]);
            r.T4 = std::stod(c[9]);
            if (c[3] == "dephased") {
                deph[r.L] = r;
            } else {
                rows[r.L][std::stod(c[3])] = r;
            }
        } catch (const std::exception&) {
            continue;
        }
    }
    for (auto& [L, by_t] : rows) {
        std::vector<SEReport> v;
        for (double t : t_grid) {
            auto it = by_t.find(t);
            if (it == by_t.end()) {
                break;
            }
            v.push_back(it->second);
        }
        if (v.size() == t_grid.size()) {
            opts.completed.emplace_back(L, std::move(v));
        }
    }
    for (auto& [L, r] : deph) {
        opts.completed_dephased.emplace_back(L, r);
    }
}

void write_locality_csv(std::ostream& os, const LocalityProfile& p) {
    os << "kind,t,L,abs_d2,l_eps\n";
    const char* kind = p.kind == LocalityKind::T2 ? "T2" : "T4";
    for (std::size_t j = 0; j < p.t_grid.size(); j++) {
        for (std::size_t i = 0; i < p.interior_L.size(); i++) {
            os << kind << ',' << format_real(p.t_grid[j]) << ',' << p.interior_L[i] << ','
               << format_real(p.abs_d2[j][i]) << ',';
            if (p.l_eps[j]) {
                os << *p.l_eps[j];
            }
            os << '\n';
        }
    }
}

void write_echo_csv(std::ostream& os, const EchoSeries& s) {
    os << "t,LE,rate\n";
    for (std::size_t j = 0; j < s.t.size(); j++) {
        os << format_real(s.t[j]) << ',' << format_real(s.echo[j]) << ',' << format_real(s.rate[j]) << '\n';
    }
}

nlohmann::json to_json(const QuenchSpec& spec) {
    nlohmann::json j{{"lambda0", spec.lambda0}, {"lambda1", spec.lambda1}};
    if (auto* fc = std::get_if<FiniteChain>(&spec.size)) {
        j["size"] = {{"kind", "finite"}, {"n_sites", fc->n_sites}};
    } else {
        const auto& tl = std::get<ThermodynamicLimit>(spec.size);
        j["size"] = {{"kind", "thermodynamic"},
                     {"quadrature_points", tl.quadrature_points},
                     {"safety", tl.safety},
                     {"adaptive", tl.adaptive}};
    }
    return j;
}

nlohmann::json to_json(const SEReport& r) {
    return {{"L", r.L},   {"purity", r.purity}, {"S2", r.S2}, {"W", r.W},
            {"M2", r.M2}, {"T2", r.T2},         {"T4", r.T4}};
}

nlohmann::json to_json(const VelocityFit& f) {
    const char* st = f.status == FitStatus::Accepted      ? "ACCEPTED"
                     : f.status == FitStatus::PoorFit     ? "POOR_FIT"
                                                          : "INSUFFICIENT_WINDOW";
    return {{"status", st},        {"slope", f.slope},     {"intercept", f.intercept}, {"rms", f.rms},
            {"t_begin", f.t_begin}, {"t_end", f.t_end}, {"points", f.points}};
}

nlohmann::json to_json(const LocalityProfile& p) {
    nlohmann::json l = nlohmann::json::array();
    for (const auto& v : p.l_eps) {
        l.push_back(v ? nlohmann::json(*v) : nlohmann::json("UNRESOLVED"));
    }
    return {{"kind", p.kind == LocalityKind::T2 ? "T2" : "T4"},
            {"epsilon", p.epsilon},
            {"t_grid", p.t_grid},
            {"interior_L", p.interior_L},
            {"l_eps", l},
            {"fit", to_json(p.fit)}};
}

nlohmann::json to_json(const RevivalReport& r) {
    nlohmann::json peaks = nlohmann::json::array();
    for (const auto& p : r.peaks) {
        peaks.push_back({{"t", p.t}, {"LE", p.echo}, {"prominence", p.prominence}});
    }
    nlohmann::json j{{"status", r.status == RevivalStatus::Found ? "FOUND" : "NO_REVIVAL"},
                     {"baseline", r.baseline},
                     {"peaks", peaks}};
    j["T_rev"] = r.t_revival ? nlohmann::json(*r.t_revival) : nlohmann::json(nullptr);
    return j;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace sedyn
