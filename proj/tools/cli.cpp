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

#include "cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "cvcorr/analysis.hpp"
#include "cvcorr/errors.hpp"
#include "cvcorr/fit.hpp"
#include "cvcorr/io.hpp"
#include "cvcorr/qkd.hpp"
#include "cvcorr/tomography.hpp"

namespace cvcorr::cli {

namespace {

constexpr const char *kGridHelp =
    "Grids: start:stop:step (both endpoints included when stop lies within half a step of the last point), "
    "a comma-separated list, or a single number.";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double to_number(const std::string &text, const std::string &what) {
    double value = 0.0;
    const char *begin = text.data();
    const char *end = begin + text.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw UsageError(what + ": '" + text + "' is not a number");
    }
    return value;
}

long long to_integer(const std::string &text, const std::string &what) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError(what + ": '" + text + "' is not an integer");
    }
    return value;
}

// Option values as strings; config-file entries only fill slots the command
// line left empty.
class Settings {
   public:
    std::optional<std::string> &slot(const std::string &key) { return values_[key]; }

    bool has(const std::string &key) const {
        const auto it = values_.find(key);
        return it != values_.end() && it->second.has_value();
    }

    std::string str(const std::string &key, const std::string &fallback = {}) const {
        return has(key) ? *values_.at(key) : fallback;
    }

    double number(const std::string &key, double fallback) const {
        return has(key) ? to_number(*values_.at(key), "--" + key) : fallback;
    }

    long long integer(const std::string &key, long long fallback) const {
        return has(key) ? to_integer(*values_.at(key), "--" + key) : fallback;
    }

    std::string required(const std::string &key) const {
        if (!has(key)) throw UsageError("missing required setting --" + key);
        return *values_.at(key);
    }

    void merge(const Json &config) {
        if (!config.is_object()) throw UsageError("config file must hold a JSON object");
        for (const auto &[key, value] : config.items()) {
            if (key == "jpa") {
                if (!value.is_object()) throw UsageError("config 'jpa' must be an object");
                fill("chi1", value.value("chi1", Json()));
                fill("chi2", value.value("chi2", Json()));
                continue;
            }
            std::string name = key;
            if (key == "squeezing_db") name = "s";
            if (key == "noise_photons") name = "n";
            if (key == "coupling_beta") name = "beta";
            if (values_.find(name) == values_.end() || name == "config") {
                throw UsageError("unknown config key '" + key + "'");
            }
            fill(name, value);
        }
    }

    Metadata echo(const std::string &command) const {
        Metadata meta{{"command", command}};
        for (const auto &[key, value] : values_) {
            if (!value || key == "threads" || key == "out" || key == "config" || key == "threshold-out") continue;
            meta.emplace_back(key, *value);
        }
        return meta;
    }

   private:
    void fill(const std::string &key, const Json &value) {
        auto &target = values_[key];
        if (target || value.is_null()) return;
        if (value.is_string()) {
            target = value.get<std::string>();
        } else if (value.is_boolean()) {
            target = value.get<bool>() ? "true" : "false";
        } else if (value.is_number_integer()) {
            target = std::to_string(value.get<long long>());
        } else if (value.is_number()) {
            target = format_number(value.get<double>());
        } else {
            throw UsageError("config key '" + key + "' must be a string or a number");
        }
    }

    std::map<std::string, std::optional<std::string>> values_;
};

void add(CLI::App *cmd, Settings &s, const std::string &key, const std::string &help) {
    cmd->add_option("--" + key, s.slot(key), help);
}

void add_common(CLI::App *cmd, Settings &s, bool threads) {
    add(cmd, s, "config", "JSON config file; command-line flags win on conflict");
    add(cmd, s, "out", "output file (default: standard output)");
    add(cmd, s, "format", "csv or json");
    if (threads) add(cmd, s, "threads", "worker threads (default: $CVCORR_THREADS or 1)");
}

void add_model(CLI::App *cmd, Settings &s) {
    add(cmd, s, "model", "ideal, coupler or realistic (default: inferred from beta/chi, else ideal)");
    add(cmd, s, "beta", "directional coupler power coupling (default 0.01)");
    add(cmd, s, "chi1", "amplifier noise prefactor (default 0)");
    add(cmd, s, "chi2", "amplifier noise exponent (default 1)");
}

void load_config(Settings &s) {
    if (!s.has("config")) return;
    std::ifstream in(s.str("config"));
    if (!in) throw UsageError("cannot read config file '" + s.str("config") + "'");
    Json config;
    try {
        config = Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    s.merge(config);
}

ModelSpec resolve_model(const Settings &s) {
    ModelSpec m;
    if (s.has("model")) {
        try {
            m.kind = parse_model_kind(s.str("model"));
        } catch (const Error &e) {
            throw UsageError(e.what());
        }
    } else if (s.has("chi1") || s.has("chi2")) {
        m.kind = ModelKind::Realistic;
    } else if (s.has("beta")) {
        m.kind = ModelKind::Coupler;
    }
    m.coupling_beta = s.number("beta", 0.01);
    m.jpa.chi1 = s.number("chi1", 0.0);
    m.jpa.chi2 = s.number("chi2", 1.0);
    if (m.kind != ModelKind::Ideal && !(m.coupling_beta > 0.0 && m.coupling_beta < 1.0)) {
        throw UsageError("--beta must lie in (0, 1)");
    }
    return m;
}

std::vector<double> grid_setting(const Settings &s, const std::string &key, const std::string &what) {
    if (!s.has(key)) throw UsageError("missing " + what + " axis (--" + key + ")");
    try {
        return parse_grid(s.str(key));
    } catch (const Error &e) {
        throw UsageError("--" + key + ": " + e.what());
    }
}

std::string format_setting(const Settings &s, const std::string &fallback) {
    const std::string f = s.str("format", fallback);
    if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
    return f;
}

int thread_count(const Settings &s) {
    std::string text;
    if (s.has("threads")) {
        text = s.str("threads");
    } else if (const char *env = std::getenv("CVCORR_THREADS")) {
        text = env;
    } else {
        return 1;
    }
    const long long n = to_integer(text, "threads");
    if (n < 1 || n > 1024) throw UsageError("thread count must be a positive integer");
    return static_cast<int>(n);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)> &body) {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k = next++; k < count; k = next++) body(k);
    };
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
}

void emit(const Settings &s, const std::string &key, const std::string &payload, std::ostream &out) {
    if (!s.has(key)) {
        out << payload;
        return;
    }
    std::ofstream file(s.str(key), std::ios::binary);
    if (!file) throw UsageError("cannot write '" + s.str(key) + "'");
    file << payload;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------

int run_sweep(const Settings &s, std::ostream &out, std::ostream &err) {
    const auto model = resolve_model(s);
    const auto s_axis = grid_setting(s, "s", "S");
    const auto n_axis = grid_setting(s, "n", "n");
    const auto format = format_setting(s, "csv");
    const int threads = thread_count(s);

    SweepGrid grid;
    try {
        grid = sweep(model, s_axis, n_axis, threads);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
    const auto meta = s.echo("sweep");
    std::ostringstream payload;
    if (format == "csv") {
        write_sweep_csv(payload, grid, meta);
    } else {
        payload << dump(sweep_to_json(grid, meta));
    }
    emit(s, "out", payload.str(), out);
    if (grid.failures() > 0) {
        err << "sweep: " << grid.failures() << " cell(s) failed\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int run_features(const Settings &s, std::ostream &out, std::ostream &err) {
    const auto model = resolve_model(s);
    const auto format = format_setting(s, "csv");
    const auto meta = s.echo("features");
    std::ostringstream payload;

    if (s.has("minimize")) {
        CrossoverTarget target;
        try {
            target = parse_crossover_target(s.str("minimize"));
        } catch (const Error &e) {
            throw UsageError(e.what());
        }
        const auto range = grid_setting(s, "range", "S range");
        if (range.size() != 2) throw UsageError("--range must be lo:hi:step or lo,hi with two points");
        const auto m = minimize_crossover(model, target, range.front(), range.back());
        if (format == "csv") {
            write_csv_metadata(payload, meta);
            payload << "target,S_min_db,n_min\n"
                    << to_string(m.target) << ',' << format_number(m.s_db) << ',' << format_number(m.n_c) << '\n';
        } else {
            payload << dump(Json{{"meta", metadata_json(meta)},
                                 {"target", to_string(m.target)},
                                 {"S_min_db", m.s_db},
                                 {"n_min", m.n_c}});
        }
        emit(s, "out", payload.str(), out);
        return kExitOk;
    }

    const auto s_axis = grid_setting(s, "s", "S");
    std::vector<Flavor> flavors;
    const std::string flavor = s.str("flavor", "all");
    if (flavor == "all") {
        flavors = {Flavor::A, Flavor::B, Flavor::AB};
    } else {
        try {
            flavors = {parse_flavor(flavor)};
        } catch (const Error &e) {
            throw UsageError(e.what());
        }
    }
    const int threads = thread_count(s);

    struct Row {
        std::optional<double> n_sd;
        std::vector<std::optional<double>> n_c;
        std::vector<std::string> failures;
    };
    std::vector<Row> rows(s_axis.size());
    parallel_for(s_axis.size(), threads, [&](std::size_t k) {
        Row &row = rows[k];
        try {
            row.n_sd = sudden_death_point(model, s_axis[k]);
        } catch (const Error &e) {
            row.failures.push_back(std::string("n_sd: ") + e.what());
        }
        for (auto f : flavors) {
            try {
                row.n_c.emplace_back(crossover_point(model, s_axis[k], f).n_c);
            } catch (const Error &e) {
                row.n_c.emplace_back();
                row.failures.push_back("n_c_" + to_string(f) + ": " + e.what());
            }
        }
    });

    bool any_ok = false;
    auto field = [](const std::optional<double> &v) { return v ? format_number(*v) : std::string(); };
    if (format == "csv") {
        write_csv_metadata(payload, meta);
        payload << "S_db,n_sd";
        for (auto f : flavors) payload << ",n_c_" << to_string(f);
        payload << ",status\n";
    }
    Json json_rows = Json::array();
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const Row &row = rows[k];
        any_ok = any_ok || row.n_sd || std::any_of(row.n_c.begin(), row.n_c.end(), [](auto &v) { return v.has_value(); });
        std::string status = "ok";
        if (!row.failures.empty()) {
            status = "no_root";
            for (const auto &f : row.failures) err << "features: S=" << format_number(s_axis[k]) << " dB: " << f << '\n';
        }
        if (format == "csv") {
            payload << format_number(s_axis[k]) << ',' << field(row.n_sd);
            for (const auto &v : row.n_c) payload << ',' << field(v);
            payload << ',' << status << '\n';
        } else {
            Json j{{"S_db", s_axis[k]}};
            j["n_sd"] = row.n_sd ? Json(*row.n_sd) : Json();
            for (std::size_t i = 0; i < flavors.size(); ++i) {
                j["n_c_" + to_string(flavors[i])] = row.n_c[i] ? Json(*row.n_c[i]) : Json();
            }
            j["status"] = status;
            j["failures"] = row.failures;
            json_rows.push_back(std::move(j));
        }
    }
    if (format == "json") payload << dump(Json{{"meta", metadata_json(meta)}, {"rows", std::move(json_rows)}});
    emit(s, "out", payload.str(), out);
    return any_ok ? kExitOk : kExitNumeric;
}

int run_qkd(const Settings &s, std::ostream &out, std::ostream &err) {
    const auto s_axis = grid_setting(s, "s", "S");
    const auto nq_axis = grid_setting(s, "nq", "n_q");
    const double beta = s.number("cloner-beta", kDefaultClonerCoupling);
    if (!(beta > 0.0 && beta < 1.0)) throw UsageError("--cloner-beta must lie in (0, 1)");
    for (double nq : nq_axis) {
        if (nq < 0.0) throw UsageError("--nq values must be >= 0");
    }
    for (double sv : s_axis) {
        if (sv < 0.0) throw UsageError("--s values must be >= 0");
    }
    const auto format = format_setting(s, "csv");
    const int threads = thread_count(s);

    const std::size_t cols = nq_axis.size();
    std::vector<std::optional<KeyResult>> cells(s_axis.size() * cols);
    std::vector<std::string> errors(cells.size());
    parallel_for(cells.size(), threads, [&](std::size_t k) {
        try {
            cells[k] = secret_key(QkdScenario::from_db(s_axis[k / cols], nq_axis[k % cols], beta));
        } catch (const Error &e) {
            errors[k] = e.what();
        }
    });
    std::vector<std::optional<double>> thresholds(s_axis.size());
    std::vector<std::string> threshold_errors(s_axis.size());
    parallel_for(s_axis.size(), threads, [&](std::size_t k) {
        try {
            thresholds[k] = key_threshold(s_axis[k], 1e-10, beta);
        } catch (const Error &e) {
            threshold_errors[k] = e.what();
        }
    });

    const auto meta = s.echo("qkd");
    std::ostringstream payload;
    std::ostringstream curve;
    std::size_t failures = 0;
    for (std::size_t k = 0; k < errors.size(); ++k) {
        if (!cells[k]) {
            ++failures;
            err << "qkd: S=" << format_number(s_axis[k / cols]) << " dB, n_q=" << format_number(nq_axis[k % cols])
                << ": " << errors[k] << '\n';
        }
    }
    if (format == "csv") {
        write_csv_metadata(payload, meta);
        payload << qkd_csv_header() << '\n';
        for (std::size_t k = 0; k < cells.size(); ++k) {
            const double sv = s_axis[k / cols];
            const double nq = nq_axis[k % cols];
            if (cells[k]) {
                payload << qkd_csv_row(sv, nq, *cells[k]) << '\n';
            } else {
                payload << format_number(sv) << ',' << format_number(nq) << ",,,\n";
            }
        }
        write_csv_metadata(curve, meta);
        curve << "S_db,n_q_threshold,status\n";
        for (std::size_t k = 0; k < s_axis.size(); ++k) {
            curve << format_number(s_axis[k]) << ','
                  << (thresholds[k] ? format_number(*thresholds[k]) : std::string()) << ','
                  << (thresholds[k] ? "ok" : "no_root") << '\n';
        }
    } else {
        Json grid = Json::array();
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (cells[k]) {
                grid.push_back(key_result_to_json(*cells[k], s_axis[k / cols], nq_axis[k % cols]));
            } else {
                grid.push_back(Json{{"S_db", s_axis[k / cols]}, {"n_q", nq_axis[k % cols]}, {"error", errors[k]}});
            }
        }
        Json curve_json = Json::array();
        for (std::size_t k = 0; k < s_axis.size(); ++k) {
            Json row{{"S_db", s_axis[k]}};
            row["n_q_threshold"] = thresholds[k] ? Json(*thresholds[k]) : Json();
            if (!thresholds[k]) row["error"] = threshold_errors[k];
            curve_json.push_back(std::move(row));
        }
        payload << dump(Json{{"meta", metadata_json(meta)}, {"grid", std::move(grid)}, {"threshold", std::move(curve_json)}});
    }
    emit(s, "out", payload.str(), out);
    if (format == "csv" && s.has("threshold-out")) emit(s, "threshold-out", curve.str(), out);
    return failures > 0 ? kExitNumeric : kExitOk;
}

int run_fit(const Settings &s, std::ostream &out, std::ostream &err) {
    const std::string path = s.required("input");
    std::istringstream in(read_file(path));
    std::vector<MeasurementRecord> records;
    try {
        records = read_fit_csv(in);
    } catch (const Error &e) {
        throw UsageError(path + ": " + e.what());
    }
    FitOptions options;
    options.weights.w_a = s.number("w-a", options.weights.w_a);
    options.weights.w_b = s.number("w-b", options.weights.w_b);
    options.weights.w_f = s.number("w-f", options.weights.w_f);
    options.coupling_beta = s.number("beta", options.coupling_beta);
    options.initial.chi1 = s.number("chi1-init", options.initial.chi1);
    options.initial.chi2 = s.number("chi2-init", options.initial.chi2);
    options.max_iterations = static_cast<int>(s.integer("max-iter", options.max_iterations));
    if (options.max_iterations < 1) throw UsageError("--max-iter must be positive");
    if (!(options.coupling_beta > 0.0 && options.coupling_beta < 1.0)) throw UsageError("--beta must lie in (0, 1)");
    const auto format = format_setting(s, "json");

    FitResult result;
    try {
        result = fit(records, options);
    } catch (const Error &e) {
        if (e.code() == ErrorCode::DomainError) throw UsageError(e.what());
        throw;
    }
    for (const auto &w : result.warnings) err << "fit: warning: " << w << '\n';
    const auto meta = s.echo("fit");
    std::ostringstream payload;
    if (format == "json") {
        payload << dump(fit_result_to_json(result, meta));
    } else {
        write_csv_metadata(payload, meta);
        payload << "chi1,chi2,final_cost,iterations,converged\n"
                << format_number(result.chi1) << ',' << format_number(result.chi2) << ','
                << format_number(result.final_cost) << ',' << result.iterations << ','
                << (result.converged ? "true" : "false") << '\n';
    }
    emit(s, "out", payload.str(), out);
    return kExitOk;
}

Json verdict_json(const ValidationVerdict<double> &v) {
    Json violations = Json::array();
    for (auto x : v.violations) violations.push_back(to_string(x));
    return Json{{"clean", v.clean()},
                {"violations", std::move(violations)},
                {"min_symplectic_eigenvalue", v.min_symplectic_eigenvalue}};
}

int run_tomo(const Settings &s, std::ostream &out, std::ostream &err) {
    const std::string path = s.required("input");
    std::istringstream in(read_file(path));
    std::optional<QuadratureSamples> samples;
    try {
        samples = read_tomo_csv(in);
    } catch (const Error &e) {
        throw UsageError(path + ": " + e.what());
    }
    const double threshold = s.number("threshold", 5.0);
    const int max_order = static_cast<int>(s.integer("max-order", 4));
    if (max_order < 2 || max_order > 4) throw UsageError("--max-order must be 2, 3 or 4");
    if (!(threshold > 0.0)) throw UsageError("--threshold must be positive");
    const auto format = format_setting(s, "json");

    const Covariance v = covariance_from_samples(*samples);
    const auto verdict = validate(v);
    const auto report = cumulants(*samples, max_order, threshold);
    const auto meta = s.echo("tomo");
    std::ostringstream payload;
    if (format == "json") {
        Json j;
        j["meta"] = metadata_json(meta);
        j["samples"] = samples->size();
        j["covariance"] = covariance_to_json(v);
        j["validation"] = verdict_json(verdict);
        try {
            const auto r = correlation_report(physical_projection(v));
            j["correlations"] = Json{{"D_A", r.d_a}, {"D_B", r.d_b}, {"E_F", r.e_f}, {"I_AB", r.i_ab}};
        } catch (const Error &e) {
            err << "tomo: correlations unavailable: " << e.what() << '\n';
        }
        j["cumulants"] = cumulant_report_to_json(report);
        payload << dump(j);
    } else {
        write_csv_metadata(payload, meta);
        payload << "# gaussian: " << (report.gaussian ? "true" : "false") << '\n' << covariance_to_csv(v);
    }
    emit(s, "out", payload.str(), out);
    return kExitOk;
}

int run_validate(const Settings &s, std::ostream &out, std::ostream &) {
    const std::string path = s.required("input");
    const std::string text = read_file(path);
    std::optional<Covariance> v;
    try {
        const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
        v = json ? covariance_from_json(Json::parse(text)) : covariance_from_csv(text);
    } catch (const Error &e) {
        throw UsageError(path + ": " + e.what());
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(path + ": " + e.what());
    }
    const auto verdict = validate(*v);
    Json j = verdict_json(verdict);
    j["meta"] = metadata_json(s.echo("validate"));
    emit(s, "out", dump(j), out);
    return verdict.clean() ? kExitOk : kExitNumeric;
}

int run_gen_synthetic(const Settings &s, std::ostream &out, std::ostream &) {
    const std::string kind = s.str("kind", "fit");
    const auto seed = static_cast<std::uint64_t>(s.integer("seed", 0));
    const auto meta = s.echo("gen-synthetic");
    std::ostringstream payload;
    if (kind == "fit") {
        const JpaNoiseModel chi{s.number("chi1", 0.05), s.number("chi2", 0.56)};
        const double beta = s.number("beta", 0.01);
        const double amplitude = s.number("amplitude", 0.0);
        if (amplitude < 0.0) throw UsageError("--amplitude must be >= 0");
        const auto s_axis = s.has("s") ? grid_setting(s, "s", "S") : default_synthetic_s();
        const auto n_axis = s.has("n") ? grid_setting(s, "n", "n") : default_synthetic_n();
        write_fit_csv(payload, synthetic_records(chi, s_axis, n_axis, amplitude, seed, beta), meta);
    } else if (kind == "tomo") {
        const auto model = resolve_model(s);
        const double s_db = s.number("s", 20.0 * std::log10(std::exp(1.0)));
        const double n = s.number("n", 0.0);
        const long long count = s.integer("samples", 100000);
        if (count < 2) throw UsageError("--samples must be at least 2");
        const std::string dist = s.str("distribution", "gaussian");
        if (dist == "gaussian") {
            write_tomo_csv(payload, gaussian_samples(model.state(s_db, n), count, seed), meta);
        } else if (dist == "uniform") {
            write_tomo_csv(payload, uniform_samples(count, seed), meta);
        } else {
            throw UsageError("--distribution must be gaussian or uniform");
        }
    } else {
        throw UsageError("--kind must be fit or tomo");
    }
    emit(s, "out", payload.str(), out);
    return kExitOk;
}

}  // namespace

std::vector<double> parse_grid(const std::string &spec) {
    auto number = [&](const std::string &t) {
        try {
            return to_number(t, "grid");
        } catch (const UsageError &e) {
            throw Error(ErrorCode::ParseError, e.what());
        }
    };
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string part;
        while (std::getline(ss, part, ':')) parts.push_back(part);
        if (parts.size() != 3) throw Error(ErrorCode::ParseError, "grid '" + spec + "' must be start:stop:step");
        const double start = number(parts[0]);
        const double stop = number(parts[1]);
        const double step = number(parts[2]);
        if (!(step > 0.0)) throw Error(ErrorCode::ParseError, "grid step must be positive");
        if (stop < start - 0.5 * step) throw Error(ErrorCode::ParseError, "grid '" + spec + "' is empty");
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 0.5)) + 1;
        if (count > 10'000'000) throw Error(ErrorCode::ParseError, "grid '" + spec + "' is too large");
        for (long long k = 0; k < count; ++k) values.push_back(start + static_cast<double>(k) * step);
    } else {
        std::stringstream ss(spec);
        std::string part;
        while (std::getline(ss, part, ',')) values.push_back(number(part));
    }
    if (values.empty()) throw Error(ErrorCode::ParseError, "grid is empty");
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (!(values[k] > values[k - 1])) throw Error(ErrorCode::ParseError, "grid values must be strictly increasing");
    }
    return values;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Correlation, entanglement and key-rate analysis of noisy two-mode squeezed states"};
    app.footer(kGridHelp);
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::map<std::string, Settings> settings;
    std::map<std::string, std::function<int(const Settings &, std::ostream &, std::ostream &)>> handlers;

    auto *sweep_cmd = app.add_subcommand("sweep", "correlation report over an (S, n) grid");
    {
        auto &s = settings["sweep"];
        add(sweep_cmd, s, "s", "squeezing levels in dB (grid)");
        add(sweep_cmd, s, "n", "injected noise photons (grid)");
        add_model(sweep_cmd, s);
        add_common(sweep_cmd, s, true);
        handlers["sweep"] = run_sweep;
    }
    auto *features_cmd = app.add_subcommand("features", "sudden-death and crossover points per squeezing level");
    {
        auto &s = settings["features"];
        add(features_cmd, s, "s", "squeezing levels in dB (grid)");
        add(features_cmd, s, "flavor", "A, B, AB or all (default all)");
        add(features_cmd, s, "minimize", "minimize n_c over S instead: A, B, AB or mean");
        add(features_cmd, s, "range", "S interval for --minimize, lo:hi:step or lo,hi (default 2,12)");
        add_model(features_cmd, s);
        add_common(features_cmd, s, true);
        handlers["features"] = [](const Settings &st, std::ostream &o, std::ostream &e) {
            Settings copy = st;
            if (!copy.has("range")) copy.slot("range") = "2,12";
            return run_features(copy, o, e);
        };
    }
    auto *qkd_cmd = app.add_subcommand("qkd", "secret key over an (S, n_q) grid and the K = 0 threshold curve");
    {
        auto &s = settings["qkd"];
        add(qkd_cmd, s, "s", "squeezing levels in dB (grid)");
        add(qkd_cmd, s, "nq", "quadrature noise photons (grid)");
        add(qkd_cmd, s, "cloner-beta", "entangling-cloner coupling (default 1e-4)");
        add(qkd_cmd, s, "threshold-out", "CSV file for the threshold curve (csv format)");
        add_common(qkd_cmd, s, true);
        handlers["qkd"] = run_qkd;
    }
    auto *fit_cmd = app.add_subcommand("fit", "fit the amplifier noise law to measured records");
    {
        auto &s = settings["fit"];
        add(fit_cmd, s, "input", "CSV s_db,n,d_a,d_b,e_f[,sd_a,sd_b,se_f]");
        add(fit_cmd, s, "w-a", "weight of D_A residuals (default 0.5)");
        add(fit_cmd, s, "w-b", "weight of D_B residuals (default 0.5)");
        add(fit_cmd, s, "w-f", "weight of E_F residuals (default 1)");
        add(fit_cmd, s, "beta", "coupler coupling of the model (default 0.01)");
        add(fit_cmd, s, "chi1-init", "initial chi1 (default 0)");
        add(fit_cmd, s, "chi2-init", "initial chi2 (default 1)");
        add(fit_cmd, s, "max-iter", "iteration limit (default 2000)");
        add_common(fit_cmd, s, false);
        handlers["fit"] = run_fit;
    }
    auto *tomo_cmd = app.add_subcommand("tomo", "covariance and cumulants from quadrature samples");
    {
        auto &s = settings["tomo"];
        add(tomo_cmd, s, "input", "CSV with header I1,Q1,I2,Q2");
        add(tomo_cmd, s, "threshold", "Gaussianity threshold in standard errors (default 5)");
        add(tomo_cmd, s, "max-order", "highest cumulant order, 2 to 4 (default 4)");
        add_common(tomo_cmd, s, false);
        handlers["tomo"] = run_tomo;
    }
    auto *validate_cmd = app.add_subcommand("validate", "check a covariance matrix (.json or .csv); exit 3 if unphysical");
    {
        auto &s = settings["validate"];
        add(validate_cmd, s, "input", "covariance file");
        add(validate_cmd, s, "config", "JSON config file");
        add(validate_cmd, s, "out", "output file (default: standard output)");
        handlers["validate"] = run_validate;
    }
    auto *gen_cmd = app.add_subcommand("gen-synthetic", "synthetic fit records or quadrature samples");
    {
        auto &s = settings["gen-synthetic"];
        add(gen_cmd, s, "kind", "fit or tomo (default fit)");
        add(gen_cmd, s, "seed", "random seed (default 0)");
        add(gen_cmd, s, "amplitude", "fit: Gaussian perturbation of each observable (default 0)");
        add(gen_cmd, s, "s", "fit: S grid (default 2:10:2); tomo: squeezing in dB (default r = 1)");
        add(gen_cmd, s, "n", "fit: n grid; tomo: injected noise (default 0)");
        add(gen_cmd, s, "samples", "tomo: number of samples (default 100000)");
        add(gen_cmd, s, "distribution", "tomo: gaussian or uniform (default gaussian)");
        add_model(gen_cmd, s);
        add(gen_cmd, s, "config", "JSON config file");
        add(gen_cmd, s, "out", "output file (default: standard output)");
        handlers["gen-synthetic"] = run_gen_synthetic;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForVersion &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    Settings &s = settings[name];
    try {
        load_config(s);
        return handlers[name](s, out, err);
    } catch (const UsageError &e) {
        err << name << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error &e) {
        err << name << ": " << e.what() << '\n';
        return e.code() == ErrorCode::ParseError ? kExitUsage : kExitNumeric;
    }
}

}  // namespace cvcorr::cli
