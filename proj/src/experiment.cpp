#include "idnc/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "idnc/rng.hpp"
#include "json.hpp"

namespace idnc {

const char* sweep_axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::P: return "p";
        case SweepAxis::Mu: return "mu";
        case SweepAxis::M: return "M";
        case SweepAxis::N: return "N";
    }
    throw std::logic_error("bad axis");
}

void SweepConfig::validate() const {
    if (values.empty()) throw std::invalid_argument("sweep.values is empty");
    if (policies.empty()) throw std::invalid_argument("policies is empty");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (num_receivers < 1 || num_packets < 1) throw std::invalid_argument("M and N must be >= 1");
    if (!(mean_p > 0.0 && mean_p < 1.0)) throw std::invalid_argument("p out of (0,1)");
    if (!(mean_mu > 0.0 && mean_mu <= 1.0)) throw std::invalid_argument("mu out of (0,1]");
    if (max_timeslots_factor < 1) throw std::invalid_argument("max_timeslots_factor must be >= 1");
    if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
    for (double v : values) {
        switch (axis) {
            case SweepAxis::P:
                if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("swept p out of (0,1)");
                break;
            case SweepAxis::Mu:
                if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("swept mu out of (0,1]");
                break;
            case SweepAxis::M:
            case SweepAxis::N:
                if (v < 1.0 || v != std::floor(v))
                    throw std::invalid_argument("swept M/N must be positive integers");
                break;
        }
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream is(s);
    while (std::getline(is, token, ',')) {
        token = trim(token);
        if (!token.empty()) out.push_back(token);
    }
    return out;
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw std::invalid_argument("line " + std::to_string(line) + ": expected true/false, got " + v);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument("line " + std::to_string(line) + ": bad number " + v);
    }
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    cfg.policies.clear();
    bool axis_seen = false;
    bool values_seen = false;

    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        raw = trim(raw);
        if (raw.empty()) continue;
        const auto eq = raw.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(raw.substr(0, eq));
        const std::string value = trim(raw.substr(eq + 1));

        if (key == "sweep.axis") {
            if (axis_seen)
                throw std::invalid_argument("line " + std::to_string(line) + ": duplicate sweep axis");
            axis_seen = true;
            if (value == "p") cfg.axis = SweepAxis::P;
            else if (value == "mu") cfg.axis = SweepAxis::Mu;
            else if (value == "M") cfg.axis = SweepAxis::M;
            else if (value == "N") cfg.axis = SweepAxis::N;
            else throw std::invalid_argument("line " + std::to_string(line) + ": bad axis " + value);
        } else if (key == "sweep.values") {
            values_seen = true;
            cfg.values.clear();
            for (const auto& tok : split_list(value)) cfg.values.push_back(parse_double(tok, line));
        } else if (key == "M") {
            cfg.num_receivers = static_cast<int>(parse_double(value, line));
        } else if (key == "N") {
            cfg.num_packets = static_cast<int>(parse_double(value, line));
        } else if (key == "mu") {
            cfg.mean_mu = parse_double(value, line);
        } else if (key == "p") {
            cfg.mean_p = parse_double(value, line);
        } else if (key == "reciprocal") {
            cfg.reciprocal = parse_bool(value, line);
        } else if (key == "m") {
            cfg.bias_exponent = parse_double(value, line);
        } else if (key == "policies") {
            for (const auto& tok : split_list(value)) cfg.policies.push_back(policy_from_name(tok));
        } else if (key == "trials") {
            cfg.trials = static_cast<int>(parse_double(value, line));
        } else if (key == "seed") {
            cfg.master_seed = static_cast<std::uint64_t>(parse_double(value, line));
        } else if (key == "max_timeslots_factor") {
            cfg.max_timeslots_factor = static_cast<int>(parse_double(value, line));
        } else if (key == "secondary_weighting") {
            if (value == "psi") cfg.secondary_weighting = SecondaryWeighting::PsiBased;
            else if (value == "zero") cfg.secondary_weighting = SecondaryWeighting::ZeroWeight;
            else throw std::invalid_argument("line " + std::to_string(line) + ": bad weighting " + value);
        } else if (key == "recompute_modified") {
            cfg.recompute_modified = parse_bool(value, line);
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "format") {
            cfg.format = value;
        } else {
            throw std::invalid_argument("line " + std::to_string(line) + ": unknown key " + key);
        }
    }
    if (!axis_seen || !values_seen)
        throw std::invalid_argument("config needs sweep.axis and sweep.values");
    cfg.validate();
    return cfg;
}

namespace {

struct PointParams {
    double mean_p;
    double mean_mu;
    int num_receivers;
    int num_packets;
};

PointParams point_params(const SweepConfig& cfg, double value) {
    PointParams p{cfg.mean_p, cfg.mean_mu, cfg.num_receivers, cfg.num_packets};
    switch (cfg.axis) {
        case SweepAxis::P: p.mean_p = value; break;
        case SweepAxis::Mu: p.mean_mu = value; break;
        case SweepAxis::M: p.num_receivers = static_cast<int>(value); break;
        case SweepAxis::N: p.num_packets = static_cast<int>(value); break;
    }
    return p;
}

struct TrialResult {
    double completion = 0.0;
    double decoding = 0.0;
    bool truncated = false;
};

}  // namespace

std::vector<ExperimentRow> run_experiment(const SweepConfig& cfg, int threads) {
    cfg.validate();
    if (std::getenv("IDNC_SINGLE_THREAD") != nullptr) threads = 1;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;

    const int points = static_cast<int>(cfg.values.size());
    const int policies = static_cast<int>(cfg.policies.size());
    const long total_trials = static_cast<long>(points) * policies * cfg.trials;
    std::vector<TrialResult> results(total_trials);

    const auto run_one = [&](long task) {
        const int trial = static_cast<int>(task % cfg.trials);
        const int policy_idx = static_cast<int>(task / cfg.trials % policies);
        const int point_idx = static_cast<int>(task / cfg.trials / policies);
        const PolicyKind policy = cfg.policies[policy_idx];
        const PointParams pp = point_params(cfg, cfg.values[point_idx]);

        std::mt19937_64 rng(derive_seed(cfg.master_seed, point_idx,
                                        static_cast<std::uint64_t>(policy), trial));
        const FrameConfig frame = make_trial_config(
            pp.mean_p, pp.mean_mu, pp.num_receivers, pp.num_packets, cfg.reciprocal, policy,
            cfg.bias_exponent, cfg.secondary_weighting, cfg.recompute_modified,
            cfg.max_timeslots_factor * pp.num_packets, rng);
        const FrameMetrics metrics = run_frame(frame, rng);
        results[task] = {static_cast<double>(metrics.completion_delay),
                         metrics.mean_decoding_delay, metrics.truncated};
    };

    if (threads == 1) {
        for (long task = 0; task < total_trials; ++task) run_one(task);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (long task = next.fetch_add(1); task < total_trials; task = next.fetch_add(1))
                    run_one(task);
            });
        }
        for (auto& th : pool) th.join();
    }

    // aggregate in deterministic task order
    std::vector<ExperimentRow> rows;
    rows.reserve(static_cast<std::size_t>(points) * policies);
    for (int point = 0; point < points; ++point) {
        for (int policy = 0; policy < policies; ++policy) {
            ExperimentRow row;
            row.sweep_value = cfg.values[point];
            row.policy = cfg.policies[policy];
            row.trials = cfg.trials;

            double sum_c = 0.0, sum_d = 0.0;
            long kept = 0;
            const long base = (static_cast<long>(point) * policies + policy) * cfg.trials;
            for (int t = 0; t < cfg.trials; ++t) {
                const TrialResult& r = results[base + t];
                if (r.truncated) {
                    ++row.truncated_count;
                    continue;
                }
                sum_c += r.completion;
                sum_d += r.decoding;
                ++kept;
            }
            if (kept > 0) {
                row.mean_completion_delay = sum_c / kept;
                row.mean_decoding_delay = sum_d / kept;
            }
            if (kept > 1) {
                double var_c = 0.0, var_d = 0.0;
                for (int t = 0; t < cfg.trials; ++t) {
                    const TrialResult& r = results[base + t];
                    if (r.truncated) continue;
                    var_c += (r.completion - row.mean_completion_delay) *
                             (r.completion - row.mean_completion_delay);
                    var_d += (r.decoding - row.mean_decoding_delay) *
                             (r.decoding - row.mean_decoding_delay);
                }
                const double scale = 1.96 / std::sqrt(static_cast<double>(kept));
                row.ci95_completion = scale * std::sqrt(var_c / (kept - 1));
                row.ci95_decoding = scale * std::sqrt(var_d / (kept - 1));
            }
            rows.push_back(row);
        }
    }
    return rows;
}

namespace {

std::string real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
    std::string out =
        "sweep_value,policy,mean_completion_delay,ci95_completion,"
        "mean_decoding_delay,ci95_decoding,trials,truncated_count\n";
    for (const auto& r : rows) {
        out += real17(r.sweep_value);
        out += ',';
        out += policy_name(r.policy);
        out += ',';
        out += real17(r.mean_completion_delay);
        out += ',';
        out += real17(r.ci95_completion);
        out += ',';
        out += real17(r.mean_decoding_delay);
        out += ',';
        out += real17(r.ci95_decoding);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += std::to_string(r.truncated_count);
        out += '\n';
    }
    return out;
}

std::string rows_to_json(const std::vector<ExperimentRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json obj;
        obj["sweep_value"] = r.sweep_value;
        obj["policy"] = policy_name(r.policy);
        obj["mean_completion_delay"] = r.mean_completion_delay;
        obj["ci95_completion"] = r.ci95_completion;
        obj["mean_decoding_delay"] = r.mean_decoding_delay;
        obj["ci95_decoding"] = r.ci95_decoding;
        obj["trials"] = r.trials;
        obj["truncated_count"] = r.truncated_count;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

}  // namespace idnc
