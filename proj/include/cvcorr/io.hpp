// Copyright 2026 The cvcorr Authors
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

// CSV and JSON serialization. Numbers are written in shortest round-trip
// form so output is byte-identical across runs.

#ifndef CVCORR_IO_HPP
#define CVCORR_IO_HPP

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "cvcorr/analysis.hpp"
#include "cvcorr/fit.hpp"
#include "cvcorr/qkd.hpp"
#include "cvcorr/state_factory.hpp"
#include "cvcorr/tomography.hpp"

namespace cvcorr {

inline constexpr const char *kVersion = "0.1.0";

using Json = nlohmann::ordered_json;
/// Ordered key/value pairs echoed into output headers.
using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string format_number(double x);

/// "# key: value" lines.
void write_csv_metadata(std::ostream &out, const Metadata &meta);
Json metadata_json(const Metadata &meta);

Json covariance_to_json(const Covariance &v);
Covariance covariance_from_json(const Json &j);
std::string covariance_to_csv(const Covariance &v);
Covariance covariance_from_csv(const std::string &text);

/// Model kind: "jpa" present means realistic, else "coupling_beta" present
/// means coupler, else ideal.
Scenario scenario_from_json(const Json &j);
Json scenario_to_json(const Scenario &s);

Json report_to_json(const CorrelationReport &r, double s_db, double n);
std::string report_csv_header();
std::string report_csv_row(const CorrelationReport &r, double s_db, double n);

void write_sweep_csv(std::ostream &out, const SweepGrid &grid, const Metadata &meta);
Json sweep_to_json(const SweepGrid &grid, const Metadata &meta);

Json key_result_to_json(const KeyResult &k, double s_db, double noise_q);
std::string qkd_csv_header();
std::string qkd_csv_row(double s_db, double noise_q, const KeyResult &k);

/// s_db,n,d_a,d_b,e_f[,sd_a,sd_b,se_f] with a header row. '#' lines are
/// skipped. ParseError messages carry the 1-based line number.
std::vector<MeasurementRecord> read_fit_csv(std::istream &in);
void write_fit_csv(std::ostream &out, const std::vector<MeasurementRecord> &records, const Metadata &meta);
Json fit_result_to_json(const FitResult &r, const Metadata &meta);

/// I1,Q1,I2,Q2 header then rows.
QuadratureSamples read_tomo_csv(std::istream &in);
void write_tomo_csv(std::ostream &out, const QuadratureSamples &s, const Metadata &meta);
Json cumulant_report_to_json(const CumulantReport &r);

}  // namespace cvcorr

#endif  // CVCORR_IO_HPP
