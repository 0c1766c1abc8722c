#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

namespace sqg::cli {

namespace fs = std::filesystem;

const std::vector<ExperimentInfo>& experiments()
{
    static const std::vector<ExperimentInfo> list{
        {"fig3", "average phase-gate fidelity vs gamma3/g, closed form and simulation"},
        {"fig4a", "target probability per iteration under level decay"},
        {"fig4b", "searched-state fidelity per iteration under level decay"},
        {"fig5a", "target probability per iteration under cavity decay"},
        {"fig5b", "searched-state fidelity per iteration under cavity decay"},
        {"fig6", "average fidelity over the (gamma3/g, kappa/g) grid"},
        {"fig7", "average fidelity vs omega12/g3 with off-resonant leakage"},
        {"grover", "one Grover run: per-iteration records for the configured target and noise"},
        {"timing", "phase-gate and algorithm durations"},
        {"schedule", "pulse schedule listing of the phase gate"},
    };
    return list;
}

json default_config()
{
    const DeviceParams d = paper_device();
    const FigureGrid g;
    return json{
        {"experiment", "fig3"},
        {"out", "out"},
        {"seed", 0},
        {"random_samples", 0},
        {"target", "111"},
        {"iterations", 6},
        {"device",
         {{"g1", d.g[0]},
          {"g2", d.g[1]},
          {"g3", d.g[2]},
          {"delta_c", d.delta_c},
          {"omega", d.omega_default},
          {"gamma3", d.gamma3},
          {"gamma2", d.gamma2},
          {"kappa", d.kappa}}},
        {"noise", {{"gamma3", false}, {"kappa", false}, {"offresonant_leakage", false}, {"kappa_during_pulses", false}}},
        {"grid",
         {{"gamma3_over_g", g.gamma3_over_g},
          {"level_decay_runs", g.level_decay_runs},
          {"cavity_decay_runs", g.cavity_decay_runs},
          {"kappa_over_g", g.kappa_over_g},
          {"omega12_over_g3", g.omega12_over_g3},
          {"k_max", g.k_max}}},
    };
}

json load_config_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("cannot parse " + path.string() + ": " + e.what());
    }
}

void apply_override(json& tree, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set expects key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);

    json value = json::parse(text, nullptr, false);
    if (value.is_discarded())
        value = text;

    json* node = &tree;
    std::size_t start = 0;
    for (;;) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty())
            throw ConfigError("malformed key '" + key + "'");
        if (!node->is_object())
            *node = json::object();
        node = &(*node)[part];
        if (dot == std::string::npos)
            break;
        start = dot + 1;
    }
    *node = std::move(value);
}

json merged(const json& base, const json& over)
{
    if (!base.is_object() || !over.is_object())
        return over;
    json out = base;
    for (const auto& [k, v] : over.items())
        out[k] = out.contains(k) ? merged(out[k], v) : v;
    return out;
}

namespace {

std::string valid_ids()
{
    std::string s;
    for (const auto& e : experiments())
        s += (s.empty() ? "" : ", ") + e.id;
    return s;
}

bool same_kind(const json& want, const json& got)
{
    if (want.is_number_integer())
        return got.is_number_integer() || (got.is_number_float() && std::floor(got.get<double>()) == got.get<double>());
    if (want.is_number())
        return got.is_number();
    return want.type() == got.type();
}

const char* kind_name(const json& j)
{
    if (j.is_number_integer())
        return "an integer";
    if (j.is_number())
        return "a number";
    if (j.is_boolean())
        return "true or false";
    if (j.is_string())
        return "a string";
    if (j.is_array())
        return "a list of numbers";
    return "an object";
}

void check_shape(const json& want, const json& got, const std::string& prefix, std::vector<Diagnostic>& out)
{
    for (const auto& [k, v] : got.items()) {
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (!want.contains(k)) {
            out.push_back({key, "unknown key"});
            continue;
        }
        const json& w = want.at(k);
        if (!same_kind(w, v)) {
            out.push_back({key, std::string("must be ") + kind_name(w)});
            continue;
        }
        if (w.is_object())
            check_shape(w, v, key, out);
        if (w.is_array()) {
            if (v.empty())
                out.push_back({key, "grid must not be empty"});
            for (const auto& x : v)
                if (!x.is_number()) {
                    out.push_back({key, "grid entries must be numbers"});
                    break;
                }
        }
    }
}

}  // namespace

std::vector<Diagnostic> check_config(const json& tree)
{
    std::vector<Diagnostic> out;
    if (!tree.is_object()) {
        out.push_back({"", "config must be a JSON object"});
        return out;
    }
    const json schema = default_config();
    check_shape(schema, tree, "", out);
    auto bad = [&](const std::string& key) {
        for (const auto& d : out)
            if (d.key == key)
                return true;
        return false;
    };

    const json t = merged(schema, tree);
    if (!bad("experiment")) {
        const auto id = t["experiment"].get<std::string>();
        bool known = false;
        for (const auto& e : experiments())
            known = known || e.id == id;
        if (!known)
            out.push_back({"experiment", "unknown experiment '" + id + "' (valid: " + valid_ids() + ")"});
    }
    if (!bad("target")) {
        try {
            (void)LogicalState::parse(t["target"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            out.push_back({"target", e.what()});
        }
    }
    for (const char* k : {"iterations", "random_samples", "seed"})
        if (!bad(k) && t[k].get<double>() < 0)
            out.push_back({k, "must be nonnegative"});
    if (!bad("grid.k_max") && t["grid"]["k_max"].get<double>() < 0)
        out.push_back({"grid.k_max", "must be nonnegative"});

    if (t["device"].is_object()) {
        for (const auto& [k, v] : t["device"].items()) {
            const std::string key = "device." + k;
            if (bad(key) || !v.is_number())
                continue;
            const double x = v.get<double>();
            const bool positive = k == "g1" || k == "g2" || k == "g3" || k == "delta_c" || k == "omega";
            if (!std::isfinite(x) || x < 0 || (positive && x == 0))
                out.push_back({key, positive ? "must be positive" : "must be nonnegative"});
        }
    }
    if (t["grid"].is_object()) {
        for (const auto& [k, v] : t["grid"].items()) {
            const std::string key = "grid." + k;
            if (bad(key) || !v.is_array())
                continue;
            for (const auto& x : v)
                if (x.is_number() && !(x.get<double>() >= 0)) {
                    out.push_back({key, "grid entries must be nonnegative"});
                    break;
                }
        }
    }
    return out;
}

RunConfig resolve(const json& tree)
{
    const auto diags = check_config(tree);
    if (!diags.empty())
        throw ConfigError(diags.front().key + ": " + diags.front().message);
    const json t = merged(default_config(), tree);

    RunConfig c;
    c.experiment = t["experiment"].get<std::string>();
    c.out = t["out"].get<std::string>();
    c.seed = static_cast<std::uint64_t>(t["seed"].get<double>());
    c.random_samples = static_cast<int>(t["random_samples"].get<double>());
    c.target = LogicalState::parse(t["target"].get<std::string>());
    c.iterations = static_cast<int>(t["iterations"].get<double>());

    const json& d = t["device"];
    c.params.g = {d["g1"].get<double>(), d["g2"].get<double>(), d["g3"].get<double>()};
    c.params.delta_c = d["delta_c"].get<double>();
    c.params.omega_default = d["omega"].get<double>();
    c.params.gamma3 = d["gamma3"].get<double>();
    c.params.gamma2 = d["gamma2"].get<double>();
    c.params.kappa = d["kappa"].get<double>();

    const json& n = t["noise"];
    c.noise.enable_gamma3 = n["gamma3"].get<bool>();
    c.noise.enable_kappa = n["kappa"].get<bool>();
    c.noise.enable_offresonant_leakage = n["offresonant_leakage"].get<bool>();
    c.noise.kappa_during_pulses = n["kappa_during_pulses"].get<bool>();

    const json& g = t["grid"];
    c.grid.gamma3_over_g = g["gamma3_over_g"].get<std::vector<double>>();
    c.grid.level_decay_runs = g["level_decay_runs"].get<std::vector<double>>();
    c.grid.cavity_decay_runs = g["cavity_decay_runs"].get<std::vector<double>>();
    c.grid.kappa_over_g = g["kappa_over_g"].get<std::vector<double>>();
    c.grid.omega12_over_g3 = g["omega12_over_g3"].get<std::vector<double>>();
    c.grid.k_max = static_cast<int>(g["k_max"].get<double>());
    c.grid.target = c.target.index();
    c.grid.params = c.params;
    return c;
}

json to_json(const RunConfig& c)
{
    return json{
        {"experiment", c.experiment},
        {"out", c.out.string()},
        {"seed", c.seed},
        {"random_samples", c.random_samples},
        {"target", c.target.str()},
        {"iterations", c.iterations},
        {"device",
         {{"g1", c.params.g[0]},
          {"g2", c.params.g[1]},
          {"g3", c.params.g[2]},
          {"delta_c", c.params.delta_c},
          {"omega", c.params.omega_default},
          {"gamma3", c.params.gamma3},
          {"gamma2", c.params.gamma2},
          {"kappa", c.params.kappa}}},
        {"noise",
         {{"gamma3", c.noise.enable_gamma3},
          {"kappa", c.noise.enable_kappa},
          {"offresonant_leakage", c.noise.enable_offresonant_leakage},
          {"kappa_during_pulses", c.noise.kappa_during_pulses}}},
        {"grid",
         {{"gamma3_over_g", c.grid.gamma3_over_g},
          {"level_decay_runs", c.grid.level_decay_runs},
          {"cavity_decay_runs", c.grid.cavity_decay_runs},
          {"kappa_over_g", c.grid.kappa_over_g},
          {"omega12_over_g3", c.grid.omega12_over_g3},
          {"k_max", c.grid.k_max}}},
    };
}

std::string format_csv(const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out += (i ? "," : "") + table.header[i];
    out += '\n';
    char buf[64];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            // Fold -0 into 0 so identical values print identically.
            std::snprintf(buf, sizeof buf, "%.12g", row[i] == 0.0 ? 0.0 : row[i]);
            if (i)
                out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < len; ++i) {
        s += hex[digest[i] >> 4];
        s += hex[digest[i] & 15];
    }
    return s;
}

namespace {

Table grover_table(const RunConfig& c)
{
    GroverConfig g;
    g.target = c.target;
    g.iterations = c.iterations;
    g.noise = c.noise;
    g.params = c.params;
    const RunResult r = grover_run(g);
    Table t;
    t.header = {"k",           "target_probability", "target_probability_conditional", "fidelity_joint",
                "fidelity_conditional", "norm_squared", "leakage", "ideal_probability"};
    for (const auto& rec : r.records)
        t.rows.push_back({double(rec.k), rec.target_probability, rec.target_probability_conditional,
                          rec.fidelity_joint, rec.fidelity_conditional, rec.norm_squared, rec.leakage,
                          ideal_success_probability(rec.k)});
    return t;
}

std::string timing_csv(const RunConfig& c)
{
    const TimingBudget b = timing_budget(c.params, c.iterations);
    std::string out = "quantity,ns,gt\n";
    char buf[160];
    auto line = [&](const std::string& name, double seconds) {
        std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g\n", name.c_str(), seconds * 1e9, seconds * b.g_ref);
        out += buf;
    };
    for (const auto& term : b.terms)
        line(term.name, term.seconds);
    line("tau_gate", b.tau_gate);
    line("tau_single", b.tau_single);
    line("tau_algorithm_k" + std::to_string(c.iterations), b.tau_algorithm(c.iterations));
    return out;
}

void write_file(const fs::path& path, const std::string& bytes)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path.string());
    f << bytes;
}

}  // namespace

RunOutput run(const RunConfig& c)
{
    validate(c.params);
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + c.out.string() + ": " + ec.message());

    std::vector<std::pair<std::string, std::string>> files;  // name, bytes
    if (c.experiment == "grover") {
        files.emplace_back("grover.csv", format_csv(grover_table(c)));
    } else if (c.experiment == "timing") {
        files.emplace_back("timing.csv", timing_csv(c));
    } else if (c.experiment == "schedule") {
        files.emplace_back("schedule.txt", dump_schedule(phase_gate_schedule(c.params), c.params));
    } else {
        Table t = figure_data(parse_figure(c.experiment), c.grid);
        if (c.experiment == "fig3" && c.random_samples > 0) {
            t.header.emplace_back("favg_random");
            for (auto& row : t.rows)
                row.push_back(favg_combined_random(row[0] * c.params.g1(), 0.0, c.params, c.random_samples, c.seed));
        }
        files.emplace_back(c.experiment + ".csv", format_csv(t));
    }

    RunOutput out;
    json manifest{{"version", kVersion}, {"experiment", c.experiment}, {"config", to_json(c)}};
    manifest["outputs"] = json::array();
    for (const auto& [name, bytes] : files) {
        const fs::path p = c.out / name;
        write_file(p, bytes);
        out.files.push_back(p);
        manifest["outputs"].push_back({{"file", name}, {"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}});
    }
    const fs::path mp = c.out / "manifest.json";
    write_file(mp, manifest.dump(2) + "\n");
    out.files.push_back(mp);
    return out;
}

namespace {

void print_diagnostics(const std::vector<Diagnostic>& diags)
{
    for (const auto& d : diags)
        std::cerr << "config error: " << (d.key.empty() ? "<root>" : d.key) << ": " << d.message << "\n";
}

}  // namespace

int main_entry(int argc, char** argv)
{
    CLI::App app{"Three-SQUID cavity Grover search simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string experiment;
    std::string out_dir;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;

    auto* run_cmd = app.add_subcommand("run", "run one experiment and write CSV plus manifest.json");
    run_cmd->add_option("--experiment", experiment, "experiment id (see list-experiments)");
    run_cmd->add_option("--config", config_path, "JSON config file");
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--set", sets, "override key=value (dotted keys, repeatable)");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "seed for the random-state average");

    auto* val_cmd = app.add_subcommand("validate", "check a config file without running it");
    val_cmd->add_option("--config,config", config_path, "JSON config file")->required();
    val_cmd->add_option("--set", sets, "override key=value (dotted keys, repeatable)");

    auto* list_cmd = app.add_subcommand("list-experiments", "print the experiment ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (list_cmd->parsed()) {
        for (const auto& e : experiments())
            std::cout << e.id << "\t" << e.description << "\n";
        return kExitOk;
    }

    json tree = json::object();
    try {
        if (!config_path.empty())
            tree = load_config_file(config_path);
        for (const auto& s : sets)
            apply_override(tree, s);
        if (!experiment.empty())
            tree["experiment"] = experiment;
        if (!out_dir.empty())
            tree["out"] = out_dir;
        if (seed_opt->count() > 0)
            tree["seed"] = seed;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    const auto diags = check_config(tree);
    if (val_cmd->parsed()) {
        print_diagnostics(diags);
        if (diags.empty())
            std::cout << "ok\n";
        return diags.empty() ? kExitOk : kExitConfig;
    }
    if (!diags.empty()) {
        print_diagnostics(diags);
        return kExitConfig;
    }

    try {
        const RunConfig c = resolve(tree);
        for (const auto& w : validity_warnings(c.params))
            std::cerr << "warning: " << w << "\n";
        const RunOutput r = run(c);
        for (const auto& f : r.files)
            std::cout << f.string() << "\n";
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace sqg::cli
