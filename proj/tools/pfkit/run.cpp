#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cli.hpp"

namespace pfkit::cli {

namespace {

json read_document(const std::string& path, std::istream& in) {
    std::string text;
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    } else {
        std::ifstream file(path);
        if (!file) throw MalformedInput("<document>", "could not open '" + path + "'");
        std::ostringstream buf;
        buf << file.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedInput("<document>", std::string("is not valid JSON: ") + e.what());
    }
}

void flatten(const json& node, const std::string& path, std::ostream& os) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) flatten(value, path.empty() ? key : path + "." + key, os);
        return;
    }
    os << path << ": " << (node.is_string() ? node.get<std::string>() : node.dump()) << '\n';
}

}  // namespace

std::string render_text(const json& report) {
    std::ostringstream os;
    if (report.value("command", "") == "fuzz") {
        os << "fuzz count=" << report["count"] << " seed=" << report["seed"] << " overall_max=" << report["overall_max"]
           << " failed_trials=" << report["failed_trials"] << " missing_metric=" << report["missing_metric"]
           << " status=" << report["status"].get<std::string>() << '\n';
        return os.str();
    }
    flatten(report, "", os);
    return os.str();
}

double default_tolerance() {
    if (const char* env = std::getenv("PFKIT_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && std::isfinite(v) && v > 0.0) return v;
    }
    return kDefaultTol;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear pseudo-fermion toolkit on C^2", "pfkit"};
    app.require_subcommand(1);

    double tol = default_tolerance();
    std::string output = "json";
    app.add_option("--tol", tol, "Residual tolerance (default 1e-10, or $PFKIT_TOL)");
    app.add_option("--output", output, "Report format")->check(CLI::IsMember({"json", "text"}));

    std::string input_path;
    auto* verify = app.add_subcommand("verify", "Validate an operator pair {a, b} and build its structure");
    verify->add_option("input", input_path, "JSON document (default: standard input)");
    auto* metric = app.add_subcommand("metric", "Search for a positive metric S with S H = H^dag S");
    metric->add_option("input", input_path, "JSON document (default: standard input)");
    auto* coherent = app.add_subcommand("coherent", "Bi-coherent states and resolution of the identity");
    coherent->add_option("input", input_path, "JSON document (default: standard input)");

    auto* model = app.add_subcommand("model", "Run a closed-form model: car, alpha, two-level, biortho");
    std::string model_name;
    model->add_option("name", model_name, "Model name")->required();
    std::map<std::string, std::string> flag_values;
    const std::pair<const char*, const char*> model_flags[] = {
        {"k", "car: vacuum coefficient (re or re,im); alpha: overall scale"},
        {"beta", "car: ladder coefficient (re or re,im)"},
        {"branch", "car: 1 = creation-like a, 2 = annihilation-like a"},
        {"alpha", "alpha: deformation in (-1, 1)"},
        {"delta", "two-level: loss rate"},
        {"omega", "two-level: coupling (re or re,im)"},
        {"theta", "biortho: boost parameter"},
        {"phi", "biortho: phase"},
        {"eps0", "biortho: lower level"},
        {"eps1", "biortho: upper level"},
    };
    for (const auto& [flag, help] : model_flags) model->add_option(std::string("--") + flag, flag_values[flag], help);

    auto* fuzz = app.add_subcommand("fuzz", "Run the full pipeline on random pairs");
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    fuzz->add_option("--count", count, "Number of trials")->required();
    fuzz->add_option("--seed", seed, "Base seed");
    fuzz->add_option("--jobs", jobs, "Worker threads");

    for (auto* sub : {verify, metric, coherent, model, fuzz}) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!(std::isfinite(tol) && tol > 0.0)) throw UsageError("--tol must be a positive finite number");

        CommandResult result;
        if (*verify) {
            result = cmd_verify(read_document(input_path, in), tol);
        } else if (*metric) {
            result = cmd_metric(read_document(input_path, in), tol);
        } else if (*coherent) {
            result = cmd_coherent(read_document(input_path, in), tol);
        } else if (*model) {
            ModelRef ref{model_name, {}};
            for (const auto& [key, value] : flag_values)
                if (!value.empty()) ref.params[key] = parse_complex_flag(value, "--" + key);
            result = cmd_model(ref, tol);
        } else {
            result = cmd_fuzz(count, seed, jobs);
        }

        out << (output == "text" ? render_text(result.report) : result.report.dump() + "\n");
        if (result.exit_code != kExitOk) {
            const json& r = result.report;
            if (r.contains("error"))
                err << "pfkit: " << r["error"]["message"].get<std::string>() << '\n';
            else if (r.value("status", "") != "ok" && r.value("status", "") != "PositiveMetricFound")
                err << "pfkit: " << r.value("command", "") << ": " << r.value("status", "") << '\n';
            else
                err << "pfkit: " << result.report.value("command", "") << ": residuals exceed tolerance\n";
        }
        return result.exit_code;
    } catch (const MalformedInput& e) {
        err << "pfkit: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "pfkit: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace pfkit::cli
