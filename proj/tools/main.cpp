// stabreduce: canonical stabilizer reduction on computable models.
//
// Reports on stdout, one-line JSON diagnostics on stderr. Exit codes:
// 0 success, 1 rejected input (domain or unsupported), 2 failed checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stabreduce/driver.hpp"
#include "stabreduce/error.hpp"
#include "stabreduce/model_io.hpp"

namespace {

using namespace stabreduce;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int degree_bound_for(const ModelDocument& m) {
    if (m.degree_bound > 0) return m.degree_bound;
    if (const char* env = std::getenv("STABREDUCE_DEGREE_BOUND")) {
        std::string s(env);
        long v = 0;
        try {
            size_t used = 0;
            v = std::stol(s, &used);
            if (used != s.size()) v = 0;
        } catch (const std::exception&) {
            v = 0;
        }
        SR_REQUIRE(v >= 2 && v <= 64,
                   "STABREDUCE_DEGREE_BOUND: expected an integer between 2 and 64, got '" +
                       s + "'");
        return int(v);
    }
    return 16;
}

std::vector<IntVec> divisor_rays(const Fan& fan, const std::string& arg) {
    std::vector<IntVec> rays = fan.rays();
    std::vector<IntVec> out;
    std::istringstream in(arg);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        long idx = -1;
        try {
            size_t used = 0;
            idx = std::stol(tok, &used);
            if (used != tok.size()) idx = -1;
        } catch (const std::exception&) {
            idx = -1;
        }
        SR_REQUIRE(idx >= 0 && idx < long(rays.size()),
                   "--divisor: ray index '" + tok + "' out of range, the fan has " +
                       std::to_string(rays.size()) + " rays");
        out.push_back(rays[size_t(idx)]);
    }
    return out;
}

int run_analyze(const std::string& path) {
    ModelDocument m = parse_model(read_file(path));
    std::cout << analysis_report(m, degree_bound_for(m)) << "\n";
    return 0;
}

int run_reduce(const std::string& path, const std::string& divisor) {
    ModelDocument m = parse_model(read_file(path));
    switch (m.kind) {
        case ModelDocument::Kind::fan: {
            std::vector<IntVec> rays = m.initial_divisor;
            if (!divisor.empty()) rays = divisor_rays(m.fan_model->fan, divisor);
            ToricTrace t = reduce(*m.fan_model, rays);
            TraceCheck check = verify_trace(t);
            std::cout << trace_report(t, check) << "\n";
            return check.ok ? 0 : 2;
        }
        case ModelDocument::Kind::monomial: {
            SR_REQUIRE(divisor.empty(),
                       "--divisor: the monomial driver derives its divisors from the blowup");
            MonomialTrace t = reduce_monomial(*m.monomial_model);
            TraceCheck check = verify_trace(t);
            std::cout << trace_report(t, check) << "\n";
            return check.ok ? 0 : 2;
        }
        default:
            throw DomainError("reduce: only fan and monomial models run the reduction loop");
    }
}

int run_export(const std::string& path, const std::string& format) {
    ModelDocument m = parse_model(read_file(path));
    SR_REQUIRE(m.kind == ModelDocument::Kind::fan,
               "export: only fan models have a fan to export");
    if (format == "dot")
        std::cout << fan_to_dot(m.fan_model->fan);
    else
        std::cout << fan_to_json(m.fan_model->fan) << "\n";
    return 0;
}

int run_builtin_checks() {
    std::vector<BuiltinCheck> checks = builtin_checks();
    int fails = 0;
    for (const BuiltinCheck& c : checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.pass) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
        if (!c.pass) ++fails;
    }
    std::cout << checks.size() - fails << "/" << checks.size() << " checks passed\n";
    return fails == 0 ? 0 : 2;
}

std::string diagnostic(const char* kind, const std::string& message) {
    nlohmann::ordered_json d;
    d["error"] = kind;
    d["message"] = message;
    return d.dump();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical stabilizer reduction on computable models"};
    app.require_subcommand(1);

    std::string analyze_path;
    CLI::App* analyze =
        app.add_subcommand("analyze", "report group, stability, and fixed-point data");
    analyze->add_option("file", analyze_path, "model document (JSON)")->required();

    std::string reduce_path, divisor;
    CLI::App* reduce_cmd =
        app.add_subcommand("reduce", "run the reduction loop and print the verified trace");
    reduce_cmd->add_option("file", reduce_path, "model document (JSON)")->required();
    reduce_cmd->add_option("--divisor", divisor,
                           "comma-separated ray indices carried as the initial divisor");

    CLI::App* verify =
        app.add_subcommand("verify-paper", "check the built-in worked examples");

    std::string export_path, format = "json";
    CLI::App* exp = app.add_subcommand("export", "write the fan of a model");
    exp->add_option("file", export_path, "model document (JSON)")->required();
    exp->add_option("--format", format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << diagnostic("usage", e.what()) << "\n";
        return 1;
    }

    try {
        if (*analyze) return run_analyze(analyze_path);
        if (*reduce_cmd) return run_reduce(reduce_path, divisor);
        if (*verify) return run_builtin_checks();
        if (*exp) return run_export(export_path, format);
    } catch (const UnsupportedError& e) {
        std::cerr << diagnostic("unsupported", e.what()) << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << diagnostic("domain", e.what()) << "\n";
        return 1;
    } catch (const CheckError& e) {
        std::cerr << diagnostic("check", e.what()) << "\n";
        return 2;
    }
    return 0;
}
