#include "cli.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "smddc/analytic.hpp"
#include "smddc/simulator.hpp"

namespace smddc::cli {
namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

std::string format_cell(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(std::uint64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(const std::vector<double>& xs) const {
            std::string s;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (i) s += ';';
                s += format_double(xs[i]);
            }
            return s;
        }
    };
    return std::visit(Visitor{}, cell);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string q = "\"";
    for (char c : field) {
        if (c == '"') q += '"';
        q += c;
    }
    q += '"';
    return q;
}

nlohmann::ordered_json json_cell(const Cell& cell) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) return format_double(v);  // JSON has no inf/nan
            return v;
        }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
        nlohmann::ordered_json operator()(const std::vector<double>& xs) const {
            auto arr = nlohmann::ordered_json::array();
            for (double x : xs) arr.push_back(x);
            return arr;
        }
    };
    return std::visit(Visitor{}, cell);
}

Cell optional_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

void echo_config(Row& row, const SystemConfig& c) {
    row.emplace_back("policy", policy_name(c.policy));
    row.emplace_back("gamma", c.gamma);
    row.emplace_back("omega", c.omega);
    row.emplace_back("omega_far", optional_cell(c.omega_far));
    row.emplace_back("n0", c.n0);
    row.emplace_back("k", static_cast<long long>(c.k));
    row.emplace_back("depth", static_cast<long long>(c.depth));
    row.emplace_back("sigma2", c.sigma2);
    row.emplace_back("margin", c.margin);
    row.emplace_back("w", static_cast<long long>(c.w));
    row.emplace_back("ws", static_cast<long long>(c.w_s));
    row.emplace_back("trials", c.trials);
    row.emplace_back("seed", c.seed);
}

std::vector<double> to_vector(const PacketCountDistribution& d) {
    return {d.probs().begin(), d.probs().end()};
}

bool is_oma_like(const PolicyKind& p) {
    if (std::holds_alternative<Oma>(p)) return true;
    const auto* sym = std::get_if<SymmetricNoma>(&p);
    return sym != nullptr && sym->depth == 1;
}

// Closed-form quantities shared by `analytic` and `sweep`. Beyond depth 2 (sym
// with L > 2, FO) only beta1 and beta2 have closed forms; the distribution is
// then the depth-2 one, which bounds the deeper policy from the pessimistic side.
struct AnalyticPoint {
    double beta1 = 0.0;
    std::optional<double> beta2;
    PacketCountDistribution dist{std::vector<double>{1.0}};
    bool truncated = false;
};

AnalyticPoint analytic_point(const SystemConfig& c) {
    const PolicyKind& p = c.policy;
    const PowerLadder ladder = PowerLadder::build(c.gamma, c.n0, std::max(2, required_depth(p)), c.margin);
    AnalyticPoint a;
    a.beta1 = beta1(ladder.rho(1), c.omega);
    if (is_oma_like(p)) {
        a.dist = alphas_from_betas(std::vector<double>{a.beta1});
        return a;
    }
    if (std::holds_alternative<SymmetricNoma>(p))
        a.beta2 = beta2_symmetric(ladder.rho(1), ladder.rho(2), c.omega);
    else
        a.beta2 = beta2_sdo(ladder.rho(1), ladder.rho(2), c.omega, c.k);
    a.dist = alphas_from_betas(std::vector<double>{a.beta1, *a.beta2});
    a.truncated = std::holds_alternative<FoNoma>(p) || required_depth(p) > 2;
    return a;
}

ChernoffBound closed_form_bound(const PacketCountDistribution& dist, const SessionSpec& spec) {
    if (dist.max_packets() == 1) return chernoff_oma(dist[1], spec);
    if (dist.max_packets() == 2) return chernoff_noma2(dist, spec);
    return chernoff_generic(dist, spec);
}

void apply_axis(SystemConfig& c, Axis axis, double value) {
    auto as_int = [&](const char* what) {
        if (value != std::floor(value) || value < 1 || value > 1e9)
            throw std::invalid_argument(std::string(what) + " must be a positive integer");
        return static_cast<int>(value);
    };
    switch (axis) {
        case Axis::Omega: c.omega = value; break;
        case Axis::SessionLength: c.w_s = as_int("ws"); break;
        case Axis::Gamma: c.gamma = value; break;
        case Axis::Channels: c.k = as_int("k"); break;
        case Axis::Depth:
            c.depth = as_int("depth");
            if (std::holds_alternative<SymmetricNoma>(c.policy)) c.policy = SymmetricNoma{c.depth};
            break;
    }
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

Axis parse_axis(std::string_view name) {
    if (name == "omega") return Axis::Omega;
    if (name == "w_s" || name == "ws") return Axis::SessionLength;
    if (name == "gamma") return Axis::Gamma;
    if (name == "k") return Axis::Channels;
    if (name == "depth") return Axis::Depth;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

std::string axis_name(Axis axis) {
    switch (axis) {
        case Axis::Omega: return "omega";
        case Axis::SessionLength: return "w_s";
        case Axis::Gamma: return "gamma";
        case Axis::Channels: return "k";
        case Axis::Depth: return "depth";
    }
    return "?";
}

PolicyKind parse_policy(std::string_view name, int depth) {
    if (name == "oma") return Oma{};
    if (name == "sym") return SymmetricNoma{depth};
    if (name == "sdo") return SdoNoma{};
    if (name == "fo") return FoNoma{};
    throw std::invalid_argument("unknown policy '" + std::string(name) + "' (expected oma|sym|sdo|fo)");
}

std::vector<double> parse_values(std::string_view spec) {
    if (spec.find(':') != std::string_view::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) throw std::invalid_argument("range must be start:step:end");
        const double start = parse_number(parts[0]);
        const double step = parse_number(parts[1]);
        const double end = parse_number(parts[2]);
        if (!(step > 0.0) || end < start) throw std::invalid_argument("range needs step > 0 and end >= start");
        const auto count = static_cast<long long>(std::floor((end - start) / step + 1e-9)) + 1;
        if (count > 100000) throw std::invalid_argument("range has too many points");
        std::vector<double> out;
        for (long long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
    std::vector<double> out;
    for (const auto& part : split(spec, ',')) out.push_back(parse_number(part));
    if (out.empty()) throw std::invalid_argument("no sweep values");
    return out;
}

std::vector<Row> cmd_ladder(const SystemConfig& config) {
    const PowerLadder ladder = PowerLadder::build(config.gamma, config.n0, config.depth, config.margin);
    std::vector<Row> rows;
    for (int l = 1; l <= ladder.depth(); ++l) {
        Row row;
        row.emplace_back("level", static_cast<long long>(l));
        row.emplace_back("rho", ladder.rho(l));
        row.emplace_back("sinr", ladder.sinr_at_level(l));
        echo_config(row, config);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Row> cmd_analytic(const SystemConfig& config) {
    config.validate();
    const AnalyticPoint a = analytic_point(config);
    const SessionSpec spec = config.session();
    const ChernoffBound bound = closed_form_bound(a.dist, spec);

    Row row;
    echo_config(row, config);
    row.emplace_back("beta1", a.beta1);
    row.emplace_back("beta2", optional_cell(a.beta2));
    if (config.omega_far) {
        const PowerLadder ladder = PowerLadder::build(config.gamma, config.n0, 1, config.margin);
        row.emplace_back("beta1_far", beta1_far(ladder.rho(1), config.sigma2, *config.omega_far));
    }
    row.emplace_back("alphas", to_vector(a.dist));
    row.emplace_back("mean_packets", mean_packets(a.dist));
    row.emplace_back("chernoff_bound", bound.bound);
    row.emplace_back("chernoff_feasible", bound.feasible);
    row.emplace_back("lambda_star", bound.lambda_star);
    row.emplace_back("exact_p_se", exact_session_error(a.dist, spec));
    if (a.beta2) {
        const NomaFactor eta = noma_factor(a.dist[0], *a.beta2);
        row.emplace_back("eta", eta.eta);
        row.emplace_back("z_star", eta.z_star);
    }
    row.emplace_back("depth2_truncated", a.truncated);
    return {row};
}

std::vector<Row> cmd_simulate(const SystemConfig& config, unsigned workers, std::ostream* diag) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const SessionStats stats = estimate_session_error(config.policy, config, config.trials, config.seed, workers);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (diag) *diag << "simulate: runtime_s=" << elapsed.count() << "\n";

    Row row;
    echo_config(row, config);
    row.emplace_back("errors", stats.errors);
    row.emplace_back("p_hat", stats.p_hat);
    row.emplace_back("std_error", stats.standard_error());
    row.emplace_back("ci95_halfwidth", stats.ci95_halfwidth);
    return {row};
}

std::vector<Row> cmd_sweep(const SystemConfig& base, const std::vector<std::string>& policies, Axis axis,
                           const std::vector<double>& values, unsigned workers) {
    std::vector<Row> rows;
    for (double value : values) {
        for (const auto& name : policies) {
            SystemConfig c = base;
            Row row;
            row.emplace_back("axis", axis_name(axis));
            row.emplace_back("value", value);
            try {
                c.policy = parse_policy(name, c.depth);
                apply_axis(c, axis, value);
                c.validate();
            } catch (const std::exception& e) {
                echo_config(row, c);
                row.emplace_back("error", std::string(e.what()));
                rows.push_back(std::move(row));
                continue;
            }
            echo_config(row, c);

            Cell p_hat, ci95, errors, bound, feasible, lambda, exact, mean, eta, source;
            std::string error;
            try {
                const SessionStats stats = estimate_session_error(c.policy, c, c.trials, c.seed, workers);
                p_hat = stats.p_hat;
                ci95 = stats.ci95_halfwidth;
                errors = stats.errors;

                const AnalyticPoint a = analytic_point(c);
                const SessionSpec spec = c.session();
                if (a.truncated) {
                    const PacketCountDistribution empirical = estimate_alphas(c.policy, c, c.trials, workers);
                    const ChernoffBound b = chernoff_generic(empirical, spec);
                    bound = b.bound;
                    feasible = b.feasible;
                    lambda = b.lambda_star;
                    exact = exact_session_error(empirical, spec);
                    mean = mean_packets(empirical);
                    source = std::string("empirical");
                } else {
                    const ChernoffBound b = closed_form_bound(a.dist, spec);
                    bound = b.bound;
                    feasible = b.feasible;
                    lambda = b.lambda_star;
                    exact = exact_session_error(a.dist, spec);
                    mean = mean_packets(a.dist);
                    source = std::string("analytic");
                }
                if (a.beta2) eta = noma_factor(a.dist[0], *a.beta2).eta;
            } catch (const std::exception& e) {
                error = e.what();
            }
            row.emplace_back("p_hat", p_hat);
            row.emplace_back("ci95_halfwidth", ci95);
            row.emplace_back("errors", errors);
            row.emplace_back("chernoff_bound", bound);
            row.emplace_back("chernoff_feasible", feasible);
            row.emplace_back("lambda_star", lambda);
            row.emplace_back("exact_p_se", exact);
            row.emplace_back("dist_source", source);
            row.emplace_back("mean_packets", mean);
            row.emplace_back("eta", eta);
            row.emplace_back("error", error);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string to_csv(const std::vector<Row>& rows) {
    if (rows.empty()) return {};
    // Rows may differ in columns (error rows); the header is the union in first-seen order.
    std::vector<std::string> header;
    for (const auto& row : rows)
        for (const auto& [key, _] : row)
            if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);

    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += csv_quote(header[i]);
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out += ',';
            for (const auto& [key, cell] : row) {
                if (key == header[i]) {
                    out += csv_quote(format_cell(cell));
                    break;
                }
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_json(std::string_view command, const std::vector<Row>& rows) {
    nlohmann::ordered_json doc;
    doc["command"] = std::string(command);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& [key, cell] : row) obj[key] = json_cell(cell);
        arr.push_back(std::move(obj));
    }
    doc["rows"] = std::move(arr);
    return doc.dump(2) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uplink short-message delivery: OMA vs opportunistic NOMA"};
    app.require_subcommand(1);

    SystemConfig config;
    std::optional<double> gamma_db;
    std::optional<double> omega_db;
    std::optional<double> omega_far;
    std::string policy = "sym";
    std::string format = "csv";
    std::string out_path;
    std::string axis;
    std::string values;
    unsigned workers = 0;

    auto add_common = [&](CLI::App* sub, bool multi_policy) {
        auto* g = sub->add_option("--gamma", config.gamma, "target SINR (linear)");
        auto* gdb = sub->add_option("--gamma-db", gamma_db, "target SINR in dB");
        g->excludes(gdb);
        auto* o = sub->add_option("--omega", config.omega, "near-user power budget (linear)");
        auto* odb = sub->add_option("--omega-db", omega_db, "near-user power budget in dB");
        o->excludes(odb);
        sub->add_option("--omega-far", omega_far, "far-user power budget (linear)");
        sub->add_option("--n0", config.n0, "noise power")->capture_default_str();
        sub->add_option("--k", config.k, "channels / users")->capture_default_str();
        sub->add_option("--depth", config.depth, "power levels L")->capture_default_str();
        sub->add_option("--sigma2", config.sigma2, "far-user mean gain")->capture_default_str();
        sub->add_option("--margin", config.margin, "multiplicative SINR margin")->capture_default_str();
        sub->add_option("--w", config.w, "packets per stream")->capture_default_str();
        sub->add_option("--ws", config.w_s, "slots per session")->capture_default_str();
        sub->add_option("--policy", policy, multi_policy ? "oma|sym|sdo|fo, comma-separated" : "oma|sym|sdo|fo")
            ->capture_default_str();
        sub->add_option("--trials", config.trials, "Monte Carlo sessions")->capture_default_str();
        sub->add_option("--seed", config.seed, "64-bit seed")->capture_default_str();
        sub->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        sub->add_option("--out", out_path, "write data here instead of stdout");
        sub->add_option("--workers", workers, "worker threads (0 = all cores)")->capture_default_str();
    };

    auto* ladder_cmd = app.add_subcommand("ladder", "print the received-power ladder");
    auto* analytic_cmd = app.add_subcommand("analytic", "closed-form probabilities, bounds and NOMA factor");
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo session error estimate");
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep over one axis");
    add_common(ladder_cmd, false);
    add_common(analytic_cmd, false);
    add_common(simulate_cmd, false);
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--axis", axis, "omega|w_s|gamma|k|depth")->required();
    sweep_cmd->add_option("--values", values, "comma list or start:step:end")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    std::string command;
    std::string payload;
    try {
        if (gamma_db) config.gamma = from_db(*gamma_db);
        if (omega_db) config.omega = from_db(*omega_db);
        config.omega_far = omega_far;

        std::vector<Row> rows;
        if (ladder_cmd->parsed()) {
            command = "ladder";
            rows = cmd_ladder(config);
        } else if (sweep_cmd->parsed()) {
            command = "sweep";
            const auto names = split(policy, ',');
            for (const auto& n : names) (void)parse_policy(n, config.depth);
            config.policy = parse_policy(names.front(), config.depth);
            rows = cmd_sweep(config, names, parse_axis(axis), parse_values(values), workers);
        } else {
            config.policy = parse_policy(policy, config.depth);
            if (analytic_cmd->parsed()) {
                command = "analytic";
                rows = cmd_analytic(config);
            } else {
                command = "simulate";
                rows = cmd_simulate(config, workers, &err);
            }
        }
        payload = format == "json" ? to_json(command, rows) : to_csv(rows);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (out_path.empty()) {
        out << payload;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << out_path << "\n";
            return 3;
        }
        file << payload;
    }
    return 0;
}

}  // namespace smddc::cli
