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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sedyn::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kNumerical = 2,
    kUnresolved = 3,
};

struct RunConfig {
    std::string subcommand;
    std::optional<std::string> preset;
    double lambda0 = 1e4;
    double lambda1 = 0.5;
    /// Finite periodic chain when set, thermodynamic limit otherwise.
    std::optional<int> n_sites;
    int quadrature_points = 2048;
    double quadrature_safety = 4.0;
    std::string L_range;  // "a..b" or "a,b,c"; empty selects the subcommand default
    std::string t_range;  // "start:stop:step" or "a,b,c"
    double tol = 0.05;
    double epsilon = 0.01;
    std::optional<double> horizon;
    std::string out_dir = ".";
    std::string tag;
    int threads = 0;
    bool reproducible = true;
    int checkpoint_every = 1;
    bool resume = false;
    bool strict = false;
    bool gnuplot = false;
    int max_block_len = 14;
    // replica
    std::string mps = "random";
    int bond_dim = 2;
    std::uint64_t seed = 7;
    int samples = 1;
    int k = 0;  // 0: both replicas
    // loschmidt
    double echo_horizon = 1.0;  // in units of N
};

/// Named quenches: large-0.5, large-critical, small, small-critical.
std::optional<std::pair<double, double>> preset_couplings(const std::string& name);

/// "1..8" or "2,4,6".
std::vector<int> parse_int_range(const std::string& text);
/// "0:8:0.1" (inclusive) or "0,0.5,1".
std::vector<double> parse_real_range(const std::string& text);

/// Parses flags and an optional --config file (JSON or TOML; flags win), then dispatches.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

/// Dispatch on an already-built config.
int execute(const RunConfig& cfg);

}  // namespace sedyn::cli
