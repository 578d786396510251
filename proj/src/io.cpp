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

#include "cvcorr/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "cvcorr/errors.hpp"

namespace cvcorr {

namespace {

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_number(const std::string &field, std::size_t line_no) {
    double value = 0.0;
    const char *begin = field.data();
    const char *end = begin + field.size();
    if (!field.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": '" + field + "' is not a number");
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": non-finite value");
    }
    return value;
}

// Reads non-comment, non-blank lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream &in) {
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        lines.emplace_back(no, t);
    }
    return lines;
}

double json_number(const Json &j, const char *key) {
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    if (!j.at(key).is_number()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' is not a number");
    return j.at(key).get<double>();
}

}  // namespace

std::string format_number(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw Error(ErrorCode::NumericalError, "number formatting failed");
    return std::string(buf, ptr);
}

void write_csv_metadata(std::ostream &out, const Metadata &meta) {
    out << "# cvcorr " << kVersion << '\n';
    for (const auto &[key, value] : meta) out << "# " << key << ": " << value << '\n';
}

Json metadata_json(const Metadata &meta) {
    Json j;
    j["tool"] = "cvcorr";
    j["version"] = kVersion;
    for (const auto &[key, value] : meta) j[key] = value;
    return j;
}

Json covariance_to_json(const Covariance &v) {
    Json j;
    j["n_modes"] = v.modes();
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < v.matrix().rows(); ++r) {
        for (Eigen::Index c = 0; c < v.matrix().cols(); ++c) entries.push_back(v.matrix()(r, c));
    }
    j["entries"] = std::move(entries);
    return j;
}

Covariance covariance_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("n_modes") || !j.contains("entries")) {
        throw Error(ErrorCode::ParseError, "covariance JSON needs 'n_modes' and 'entries'");
    }
    if (!j.at("n_modes").is_number_integer() || j.at("n_modes").get<long long>() < 1) {
        throw Error(ErrorCode::ParseError, "'n_modes' must be a positive integer");
    }
    const auto dim = 2 * j.at("n_modes").get<Eigen::Index>();
    const auto &entries = j.at("entries");
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != dim * dim) {
        throw Error(ErrorCode::DimensionMismatch, "'entries' must hold (2 n_modes)^2 numbers");
    }
    Covariance::Matrix m(dim, dim);
    for (Eigen::Index k = 0; k < dim * dim; ++k) {
        const auto &e = entries.at(static_cast<std::size_t>(k));
        if (!e.is_number()) throw Error(ErrorCode::ParseError, "covariance entry is not a number");
        m(k / dim, k % dim) = e.get<double>();
    }
    return Covariance(std::move(m));
}

std::string covariance_to_csv(const Covariance &v) {
    std::string out;
    for (Eigen::Index r = 0; r < v.matrix().rows(); ++r) {
        for (Eigen::Index c = 0; c < v.matrix().cols(); ++c) {
            if (c > 0) out += ',';
            out += format_number(v.matrix()(r, c));
        }
        out += '\n';
    }
    return out;
}

Covariance covariance_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::vector<std::vector<double>> rows;
    for (const auto &[no, line] : content_lines(in)) {
        std::vector<double> row;
        for (const auto &f : split(line)) row.push_back(parse_number(f, no));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(no) + ": ragged covariance row");
        }
        rows.push_back(std::move(row));
    }
    const auto dim = static_cast<Eigen::Index>(rows.size());
    if (dim == 0 || static_cast<Eigen::Index>(rows.front().size()) != dim) {
        throw Error(ErrorCode::DimensionMismatch, "covariance CSV must be square");
    }
    Covariance::Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return Covariance(std::move(m));
}

Scenario scenario_from_json(const Json &j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "scenario must be a JSON object");
    Scenario s;
    if (j.contains("squeezing_db")) s.squeezing_db = json_number(j, "squeezing_db");
    if (j.contains("noise_photons")) s.noise_photons = json_number(j, "noise_photons");
    if (j.contains("coupling_beta")) {
        s.model.kind = ModelKind::Coupler;
        s.model.coupling_beta = json_number(j, "coupling_beta");
    }
    if (j.contains("jpa")) {
        const auto &jpa = j.at("jpa");
        if (!jpa.is_object()) throw Error(ErrorCode::ParseError, "'jpa' must be an object");
        s.model.kind = ModelKind::Realistic;
        s.model.jpa.chi1 = json_number(jpa, "chi1");
        s.model.jpa.chi2 = json_number(jpa, "chi2");
    }
    return s;
}

Json scenario_to_json(const Scenario &s) {
    Json j = Json::object();
    if (s.squeezing_db) j["squeezing_db"] = *s.squeezing_db;
    if (s.noise_photons) j["noise_photons"] = *s.noise_photons;
    if (s.model.kind != ModelKind::Ideal) j["coupling_beta"] = s.model.coupling_beta;
    if (s.model.kind == ModelKind::Realistic) j["jpa"] = {{"chi1", s.model.jpa.chi1}, {"chi2", s.model.jpa.chi2}};
    return j;
}

Json report_to_json(const CorrelationReport &r, double s_db, double n) {
    return Json{{"S_db", s_db},      {"n", n},         {"D_A", r.d_a},         {"D_B", r.d_b},
                {"E_F", r.e_f},      {"I_AB", r.i_ab}, {"delta_A", r.delta_a}, {"delta_B", r.delta_b},
                {"delta_AB", r.delta_ab}};
}

std::string report_csv_header() { return "S_db,n,D_A,D_B,E_F,I_AB,delta_A,delta_B,delta_AB"; }

std::string report_csv_row(const CorrelationReport &r, double s_db, double n) {
    std::string row;
    for (double x : {s_db, n, r.d_a, r.d_b, r.e_f, r.i_ab, r.delta_a, r.delta_b, r.delta_ab}) {
        if (!row.empty()) row += ',';
        row += format_number(x);
    }
    return row;
}

void write_sweep_csv(std::ostream &out, const SweepGrid &grid, const Metadata &meta) {
    write_csv_metadata(out, meta);
    out << report_csv_header() << ",status\n";
    for (std::size_t si = 0; si < grid.s_values.size(); ++si) {
        for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni) {
            const auto &cell = grid.at(si, ni);
            const double s = grid.s_values[si];
            const double n = grid.n_values[ni];
            if (cell.ok()) {
                out << report_csv_row(*cell.report, s, n) << ",ok\n";
            } else {
                out << format_number(s) << ',' << format_number(n) << ",,,,,,,,failed: " << cell.error << '\n';
            }
        }
    }
}

Json sweep_to_json(const SweepGrid &grid, const Metadata &meta) {
    Json j;
    j["meta"] = metadata_json(meta);
    j["s_values"] = grid.s_values;
    j["n_values"] = grid.n_values;
    Json reports = Json::array();
    for (std::size_t si = 0; si < grid.s_values.size(); ++si) {
        for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni) {
            const auto &cell = grid.at(si, ni);
            if (cell.ok()) {
                reports.push_back(report_to_json(*cell.report, grid.s_values[si], grid.n_values[ni]));
            } else {
                reports.push_back(
                    Json{{"S_db", grid.s_values[si]}, {"n", grid.n_values[ni]}, {"error", cell.error}});
            }
        }
    }
    j["reports"] = std::move(reports);
    return j;
}

Json key_result_to_json(const KeyResult &k, double s_db, double noise_q) {
    return Json{{"S_db", s_db},
                {"n_q", noise_q},
                {"I_s_bits", k.shannon_mi},
                {"holevo_bits", k.holevo},
                {"K_bits", k.key},
                {"secure", k.secure()}};
}

std::string qkd_csv_header() { return "S_db,n_q,I_s_bits,holevo_bits,K_bits"; }

std::string qkd_csv_row(double s_db, double noise_q, const KeyResult &k) {
    return format_number(s_db) + ',' + format_number(noise_q) + ',' + format_number(k.shannon_mi) + ',' +
           format_number(k.holevo) + ',' + format_number(k.key);
}

std::vector<MeasurementRecord> read_fit_csv(std::istream &in) {
    const auto lines = content_lines(in);
    if (lines.empty()) throw Error(ErrorCode::ParseError, "line 1: empty fit input");
    const auto header = split(lines.front().second);
    const std::vector<std::string> required{"s_db", "n", "d_a", "d_b", "e_f"};
    const std::vector<std::string> with_errors{"s_db", "n", "d_a", "d_b", "e_f", "sd_a", "sd_b", "se_f"};
    if (header != required && header != with_errors) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lines.front().first) +
                                               ": expected header s_db,n,d_a,d_b,e_f[,sd_a,sd_b,se_f]");
    }
    std::vector<MeasurementRecord> records;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto &[no, line] = lines[k];
        const auto fields = split(line);
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(no) + ": expected " +
                                                   std::to_string(header.size()) + " fields, found " +
                                                   std::to_string(fields.size()));
        }
        MeasurementRecord rec;
        rec.s_db = parse_number(fields[0], no);
        rec.n = parse_number(fields[1], no);
        rec.d_a = parse_number(fields[2], no);
        rec.d_b = parse_number(fields[3], no);
        rec.e_f = parse_number(fields[4], no);
        if (fields.size() == 8) {
            rec.std_errors = std::array<double, 3>{parse_number(fields[5], no), parse_number(fields[6], no),
                                                   parse_number(fields[7], no)};
        }
        if (rec.n < 0.0 || rec.s_db < 0.0) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(no) + ": S and n must be >= 0");
        }
        records.push_back(rec);
    }
    if (records.empty()) throw Error(ErrorCode::ParseError, "line " + std::to_string(lines.back().first) + ": no data rows");
    return records;
}

void write_fit_csv(std::ostream &out, const std::vector<MeasurementRecord> &records, const Metadata &meta) {
    write_csv_metadata(out, meta);
    const bool errors = !records.empty() && records.front().std_errors.has_value();
    out << "s_db,n,d_a,d_b,e_f" << (errors ? ",sd_a,sd_b,se_f" : "") << '\n';
    for (const auto &r : records) {
        out << format_number(r.s_db) << ',' << format_number(r.n) << ',' << format_number(r.d_a) << ','
            << format_number(r.d_b) << ',' << format_number(r.e_f);
        if (errors) {
            const auto se = r.std_errors.value_or(std::array<double, 3>{0.0, 0.0, 0.0});
            out << ',' << format_number(se[0]) << ',' << format_number(se[1]) << ',' << format_number(se[2]);
        }
        out << '\n';
    }
}

Json fit_result_to_json(const FitResult &r, const Metadata &meta) {
    Json j;
    j["meta"] = metadata_json(meta);
    j["chi1"] = r.chi1;
    j["chi2"] = r.chi2;
    j["initial_cost"] = r.initial_cost;
    j["final_cost"] = r.final_cost;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["clamp_activations"] = r.clamp_activations;
    j["records_used"] = r.records_used;
    j["warnings"] = r.warnings;
    return j;
}

QuadratureSamples read_tomo_csv(std::istream &in) {
    const auto lines = content_lines(in);
    if (lines.empty()) throw Error(ErrorCode::ParseError, "line 1: empty sample input");
    if (split(lines.front().second) != std::vector<std::string>{"I1", "Q1", "I2", "Q2"}) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lines.front().first) + ": expected header I1,Q1,I2,Q2");
    }
    SampleMatrix data(static_cast<Eigen::Index>(lines.size() - 1), 4);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto &[no, line] = lines[k];
        const auto fields = split(line);
        if (fields.size() != 4) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(no) + ": expected 4 fields, found " +
                                                   std::to_string(fields.size()));
        }
        for (int c = 0; c < 4; ++c) data(static_cast<Eigen::Index>(k - 1), c) = parse_number(fields[c], no);
    }
    return QuadratureSamples(std::move(data));
}

void write_tomo_csv(std::ostream &out, const QuadratureSamples &s, const Metadata &meta) {
    write_csv_metadata(out, meta);
    out << "I1,Q1,I2,Q2\n";
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        out << format_number(s.data()(k, 0)) << ',' << format_number(s.data()(k, 1)) << ','
            << format_number(s.data()(k, 2)) << ',' << format_number(s.data()(k, 3)) << '\n';
    }
}

Json cumulant_report_to_json(const CumulantReport &r) {
    Json j;
    j["samples"] = r.samples;
    j["max_order"] = r.max_order;
    j["threshold_sigma"] = r.threshold;
    j["gaussian"] = r.gaussian;
    j["max_abs_z"] = r.max_abs_z;
    Json entries = Json::array();
    for (const auto &e : r.entries) {
        entries.push_back(Json{{"orders", e.orders},
                               {"value", e.value},
                               {"std_error", e.std_error},
                               {"normalized", e.normalized},
                               {"z", e.z}});
    }
    j["cumulants"] = std::move(entries);
    return j;
}

}  // namespace cvcorr
