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
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sedyn/loschmidt.hpp"
#include "sedyn/quench_analysis.hpp"

namespace sedyn {

/// Header line of every scan CSV.
extern const char* const kScanCsvHeader;

/// Shortest round-trip decimal form.
std::string format_real(double x);

/// One row per (L, t) then one per L with t = "dephased".
void write_scan_csv(std::ostream& os, const ScanResult& scan);

/// Rows of a single L; used for checkpoints.
void write_scan_rows(std::ostream& os, const ScanResult& scan, std::size_t L_index);

/// Parses rows written by write_scan_csv into resume data; rows not matching spec or t_grid are ignored.
void read_scan_checkpoint(std::istream& is, const QuenchSpec& spec, const std::vector<double>& t_grid,
                          ScanOptions& opts);

/// Columns: kind, t, L, abs_d2, l_eps (empty when unresolved).
void write_locality_csv(std::ostream& os, const LocalityProfile& p);

void write_echo_csv(std::ostream& os, const EchoSeries& s);

nlohmann::json to_json(const QuenchSpec& spec);
nlohmann::json to_json(const SEReport& r);
nlohmann::json to_json(const VelocityFit& f);
nlohmann::json to_json(const LocalityProfile& p);
nlohmann::json to_json(const RevivalReport& r);

/// 64-bit FNV-1a of a byte string, hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace sedyn
