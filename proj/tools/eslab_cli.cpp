// Command-line frontend over the eslab C API. Every subcommand prints one
// OutputRecord per result line: JSON objects by default, CSV with --csv.
// Records can be cached in an append-only JSON-lines file (--cache or
// ES_LAB_CACHE), keyed by (command, parameters, version).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eslab.h"

using json = nlohmann::json;

namespace {

struct Fatal {
    std::string message;
    int exit_code;
};

void ensure(eslab_status status) {
    if (status == ESLAB_OK) return;
    int code = 1;
    if (status == ESLAB_INVALID_ARGUMENT) code = 2;
    throw Fatal{eslab_last_error(), code};
}

struct PrimesHandle {
    eslab_primes* handle = nullptr;
    explicit PrimesHandle(uint64_t limit) { ensure(eslab_primes_create(limit, &handle)); }
    ~PrimesHandle() { eslab_primes_free(handle); }
    PrimesHandle(const PrimesHandle&) = delete;
    PrimesHandle& operator=(const PrimesHandle&) = delete;
};

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { eslab_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json make_record(const std::string& command, const json& parameters,
                 const json& results) {
    return json{{"command", command},
                {"parameters", parameters},
                {"results", results},
                {"version", eslab_version()},
                {"timestamp", utc_timestamp()}};
}

// Append-only JSON-lines cache keyed by (command, parameters, version).
class Cache {
public:
    explicit Cache(std::string path) : path_(std::move(path)) {}

    bool enabled() const { return !path_.empty(); }

    std::optional<json> lookup(const std::string& command, const json& parameters) {
        if (!enabled()) return std::nullopt;
        load();
        for (const json& record : records_) {
            if (record.value("command", "") == command &&
                record.value("version", "") == eslab_version() &&
                record.contains("parameters") && record["parameters"] == parameters)
                return record;
        }
        return std::nullopt;
    }

    void append(const json& record) {
        if (!enabled()) return;
        load();
        std::ofstream out(path_, std::ios::app);
        if (!out) throw Fatal{"cannot open cache file " + path_, 1};
        out << record.dump() << "\n";
        records_.push_back(record);
    }

private:
    void load() {
        if (loaded_) return;
        loaded_ = true;
        std::ifstream in(path_);
        if (!in) return;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json record = json::parse(line, nullptr, false);
            if (!record.is_discarded()) records_.push_back(std::move(record));
        }
    }

    std::string path_;
    bool loaded_ = false;
    std::vector<json> records_;
};

json run_cached(Cache& cache, const std::string& command, const json& parameters,
                const std::function<json()>& compute) {
    if (auto hit = cache.lookup(command, parameters)) {
        std::cerr << "eslab: cache hit for " << command << "\n";
        return *hit;
    }
    json record = make_record(command, parameters, compute());
    cache.append(record);
    return record;
}

std::string csv_field(const json& value) {
    std::string s = value.is_string() ? value.get<std::string>() : value.dump();
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += "\"";
    return quoted;
}

void emit(const std::vector<json>& records, bool csv) {
    if (records.empty()) return;
    if (!csv) {
        for (const json& record : records) std::cout << record.dump() << "\n";
        return;
    }
    const json& first = records.front();
    std::string header = "command";
    for (const auto& item : first["parameters"].items())
        header += "," + csv_field(item.key());
    for (const auto& item : first["results"].items())
        header += "," + csv_field(item.key());
    header += ",version,timestamp";
    std::cout << header << "\n";
    for (const json& record : records) {
        std::string row = csv_field(record["command"]);
        for (const auto& item : record["parameters"].items())
            row += "," + csv_field(item.value());
        for (const auto& item : record["results"].items())
            row += "," + csv_field(item.value());
        row += "," + csv_field(record["version"]);
        row += "," + csv_field(record["timestamp"]);
        std::cout << row << "\n";
    }
}

json cmd_ghat(uint64_t k, const std::string& mode) {
    PrimesHandle primes(k);
    json results;
    if (mode == "log") {
        double value = 0;
        ensure(eslab_ghat_log(k, primes.handle, &value));
        results["log_ghat"] = value;
        return results;
    }
    if (mode == "decompose") {
        eslab_breakdown breakdown{};
        ensure(eslab_decompose(k, primes.handle, &breakdown));
        results["log_ghat"] = breakdown.log_ghat;
        results["log_f_small"] = breakdown.log_f_small;
        results["log_f1"] = breakdown.log_f1;
        results["log_f0"] = breakdown.log_f0;
        if (breakdown.exact_available) {
            OwnedString modulus, residues, num, den;
            ensure(eslab_prime_power_modulus(k, primes.handle, &modulus.ptr));
            ensure(eslab_dominating_residue_count(k, primes.handle, &residues.ptr));
            ensure(eslab_ghat(k, primes.handle, &num.ptr, &den.ptr));
            results["modulus"] = modulus.str();
            results["residue_count"] = residues.str();
            results["numerator"] = num.str();
            results["denominator"] = den.str();
        }
        return results;
    }
    OwnedString num, den;
    ensure(eslab_ghat(k, primes.handle, &num.ptr, &den.ptr));
    results["numerator"] = num.str();
    results["denominator"] = den.str();
    return results;
}

json cmd_search(uint64_t k, const std::string& method, uint64_t bound,
                uint32_t workers) {
    PrimesHandle primes(k);
    eslab_search_config config{};
    config.k = k;
    config.scan_bound = bound;
    config.use_wheel = method == "wheel" ? 1 : 0;
    config.wheel_budget = 0;
    config.workers = workers;
    eslab_search_result* result = nullptr;
    ensure(eslab_search(&config, primes.handle, &result));

    uint64_t g = eslab_search_result_g(result);
    size_t cert_count = eslab_search_result_cert_count(result);
    bool cert_ok = true;
    for (size_t i = 0; i < cert_count && cert_ok; ++i) {
        uint64_t p = 0;
        ensure(eslab_search_result_cert_prime(result, i, &p));
        int dominated = 0;
        ensure(eslab_dominates(g, k, p, &dominated));
        cert_ok = dominated != 0;
    }
    std::fprintf(stderr, "eslab: search k=%llu finished in %.3f s\n",
                 static_cast<unsigned long long>(k),
                 eslab_search_result_elapsed_seconds(result));

    json results;
    results["g"] = g;
    results["candidates_tested"] = eslab_search_result_candidates_tested(result);
    results["certificate_primes"] = cert_count;
    results["certificate_ok"] = cert_ok;
    eslab_search_result_free(result);
    return results;
}

json cmd_ratio(uint64_t k) {
    PrimesHandle primes(k + 1);
    eslab_ratio_certificate* cert = nullptr;
    ensure(eslab_ratio_certificate_create(k, primes.handle, &cert));
    OwnedString ratio_num, ratio_den, bound_num, bound_den;
    eslab_status s1 = eslab_ratio_cert_ratio(cert, &ratio_num.ptr, &ratio_den.ptr);
    eslab_status s2 = eslab_ratio_cert_bound(cert, &bound_num.ptr, &bound_den.ptr);
    json results;
    results["m_identity_ok"] = eslab_ratio_cert_m_identity_ok(cert) != 0;
    results["r_identity_ok"] = eslab_ratio_cert_r_identity_ok(cert) != 0;
    results["digit_increment_ok"] = eslab_ratio_cert_digit_increment_ok(cert) != 0;
    results["bound_ok"] = eslab_ratio_cert_bound_ok(cert) != 0;
    results["ratio_numerator"] = ratio_num.str();
    results["ratio_denominator"] = ratio_den.str();
    results["bound_numerator"] = bound_num.str();
    results["bound_denominator"] = bound_den.str();
    eslab_ratio_certificate_free(cert);
    ensure(s1);
    ensure(s2);
    return results;
}

json cmd_constant(double tolerance) {
    eslab_constant constant{};
    ensure(eslab_growth_constant(tolerance, &constant));
    json results;
    results["value"] = constant.value;
    results["lower"] = constant.lower;
    results["upper"] = constant.upper;
    results["terms_used"] = constant.terms_used;
    results["value_text"] = constant.value_text;
    return results;
}

json cmd_pieces(uint64_t k) {
    PrimesHandle primes(k);
    eslab_f0_pieces pieces{};
    ensure(eslab_f0_pieces_compute(k, primes.handle, &pieces));
    json results;
    results["piece_tail"] = pieces.piece_tail;
    results["piece_logp"] = pieces.piece_logp;
    results["piece_neg"] = pieces.piece_neg;
    results["f0_direct"] = pieces.f0_direct;
    return results;
}

json cmd_psi(uint64_t x) {
    PrimesHandle primes(x);
    double value = 0;
    ensure(eslab_chebyshev_weighted_sum(x, primes.handle, &value));
    return json{{"value", value}};
}

json cmd_mertens(uint64_t x) {
    PrimesHandle primes(x);
    double value = 0;
    ensure(eslab_mertens_product(x, primes.handle, &value));
    return json{{"value", value}};
}

json cmd_fixtures() {
    PrimesHandle primes(377);
    OwnedString n376, d376, n377, d377;
    ensure(eslab_ghat(376, primes.handle, &n376.ptr, &d376.ptr));
    ensure(eslab_ghat(377, primes.handle, &n377.ptr, &d377.ptr));
    int comparison = 0;
    ensure(eslab_ghat_compare(377, 376, primes.handle, &comparison));
    json results;
    results["g_376"] = eslab_known_g(376);
    results["g_377"] = eslab_known_g(377);
    results["ghat_376_numerator"] = n376.str();
    results["ghat_376_denominator"] = d376.str();
    results["ghat_377_numerator"] = n377.str();
    results["ghat_377_denominator"] = d377.str();
    results["ghat_377_less_than_376"] = comparison < 0;
    return results;
}

std::vector<uint64_t> log_spaced(uint64_t kmin, uint64_t kmax, uint32_t points) {
    if (kmin < 3) throw Fatal{"converge: require kmin >= 3", 2};
    if (kmax < kmin) throw Fatal{"converge: require kmax >= kmin", 2};
    std::vector<uint64_t> ks;
    if (points == 0) return ks;
    double lo = std::log(static_cast<double>(kmin));
    double hi = std::log(static_cast<double>(kmax));
    for (uint32_t i = 0; i < points; ++i) {
        double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        auto k = static_cast<uint64_t>(std::llround(std::exp(lo + t * (hi - lo))));
        k = std::max(kmin, std::min(kmax, k));
        if (ks.empty() || ks.back() != k) ks.push_back(k);
    }
    return ks;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"eslab — Erdos–Selfridge function toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    bool csv = false;
    std::string cache_path;
    app.add_flag("--csv", csv, "emit CSV instead of JSON");
    app.add_option("--cache", cache_path, "append-only JSON-lines results cache")
        ->envname("ES_LAB_CACHE");

    uint64_t k = 0, x = 0, bound = 0, kmin = 0, kmax = 0;
    uint32_t workers = 1, points = 4;
    double tolerance = 1e-6;
    std::string method = "wheel";
    bool mode_exact = false, mode_log = false, mode_decompose = false;

    CLI::App* ghat = app.add_subcommand("ghat", "exact or log-space estimate of g(k)");
    ghat->add_option("--k", k, "target k")->required();
    auto* flag_exact = ghat->add_flag("--exact", mode_exact, "exact fraction (default)");
    auto* flag_log = ghat->add_flag("--log", mode_log, "log-space value");
    auto* flag_dec = ghat->add_flag("--decompose", mode_decompose, "three-factor split");
    flag_exact->excludes(flag_log);
    flag_exact->excludes(flag_dec);
    flag_log->excludes(flag_dec);

    CLI::App* search = app.add_subcommand("search", "compute g(k) with certificate");
    search->add_option("--k", k, "target k")->required();
    search->add_option("--method", method, "naive or wheel")
        ->check(CLI::IsMember({"naive", "wheel"}));
    search->add_option("--bound", bound, "scan bound (default 10*ceil(ghat))");
    search->add_option("--workers", workers, "worker threads");

    CLI::App* ratio = app.add_subcommand("ratio", "exact step certificate at prime k+1");
    ratio->add_option("--k", k, "k with k+1 prime")->required();

    CLI::App* constant = app.add_subcommand("constant", "growth constant bracket");
    constant->add_option("--tol", tolerance, "bracket width tolerance");

    CLI::App* pieces = app.add_subcommand("pieces", "three-piece split of log_f0");
    pieces->add_option("--k", k, "target k (>= 100)")->required();

    CLI::App* converge =
        app.add_subcommand("converge", "normalized log ghat over log-spaced k");
    converge->add_option("--kmin", kmin, "smallest k")->required();
    converge->add_option("--kmax", kmax, "largest k")->required();
    converge->add_option("--points", points, "number of log-spaced points");

    CLI::App* psi = app.add_subcommand("psi", "sum of floor(log_p x) log p over p <= x");
    psi->add_option("--x", x, "upper limit")->required();

    CLI::App* mertens = app.add_subcommand("mertens", "product of p/(p-1) over p <= x");
    mertens->add_option("--x", x, "upper limit")->required();

    app.add_subcommand("fixtures", "known g values next to exact ghat");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "eslab: " << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    }

    try {
        Cache cache(cache_path);
        std::vector<json> records;
        if (ghat->parsed()) {
            std::string mode = mode_log ? "log" : (mode_decompose ? "decompose" : "exact");
            json params{{"k", k}, {"mode", mode}};
            records.push_back(
                run_cached(cache, "ghat", params, [&] { return cmd_ghat(k, mode); }));
        } else if (search->parsed()) {
            json params{{"k", k}, {"method", method}, {"bound", bound}};
            records.push_back(run_cached(cache, "search", params, [&] {
                return cmd_search(k, method, bound, workers);
            }));
        } else if (ratio->parsed()) {
            json params{{"k", k}};
            records.push_back(
                run_cached(cache, "ratio", params, [&] { return cmd_ratio(k); }));
        } else if (constant->parsed()) {
            json params{{"tol", tolerance}};
            records.push_back(run_cached(cache, "constant", params,
                                         [&] { return cmd_constant(tolerance); }));
        } else if (pieces->parsed()) {
            json params{{"k", k}};
            records.push_back(
                run_cached(cache, "pieces", params, [&] { return cmd_pieces(k); }));
        } else if (converge->parsed()) {
            for (uint64_t kv : log_spaced(kmin, kmax, points)) {
                json params{{"k", kv}};
                records.push_back(run_cached(cache, "converge", params, [&] {
                    PrimesHandle primes(kv);
                    double log_ghat_value = 0, normalized = 0;
                    ensure(eslab_convergence_row(kv, primes.handle, &log_ghat_value,
                                                 &normalized));
                    return json{{"log_ghat", log_ghat_value}, {"normalized", normalized}};
                }));
            }
        } else if (psi->parsed()) {
            json params{{"x", x}};
            records.push_back(run_cached(cache, "psi", params, [&] { return cmd_psi(x); }));
        } else if (mertens->parsed()) {
            json params{{"x", x}};
            records.push_back(
                run_cached(cache, "mertens", params, [&] { return cmd_mertens(x); }));
        } else {
            records.push_back(
                run_cached(cache, "fixtures", json::object(), cmd_fixtures));
        }
        emit(records, csv);
        return 0;
    } catch (const Fatal& fatal) {
        std::cerr << "eslab: " << fatal.message << "\n";
        return fatal.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "eslab: " << e.what() << "\n";
        return 1;
    }
}
