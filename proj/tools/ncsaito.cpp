#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "ncsaito/derive.hpp"
#include "ncsaito/jacobi.hpp"
#include "ncsaito/parser.hpp"
#include "ncsaito/saito.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

using ncsaito::Error;
using ncsaito::ErrorCode;
using Json = nlohmann::ordered_json;

struct JobConfig {
    std::vector<std::string> vars;
    int trunc = 12;
    int nmax = 10;
    std::int64_t size_guard = ncsaito::kDefaultSizeGuard;
    std::string output = "json";
};

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotCertifiedFinite:
        case ErrorCode::NotQuasiHomogeneous:
        case ErrorCode::NonRationalSpectrum:
        case ErrorCode::WeightOutOfRange:
            return 3;
        case ErrorCode::LevelTooLarge:
            return 4;
        default:
            return 2;
    }
}

Json config_json(const JobConfig& cfg) {
    return Json{{"vars", cfg.vars},
                {"trunc", cfg.trunc},
                {"nmax", cfg.nmax},
                {"size_guard", cfg.size_guard},
                {"output", cfg.output}};
}

void emit(const JobConfig& cfg, const std::string& command, const Json& payload) {
    Json doc;
    doc["tool"] = "ncsaito";
    doc["version"] = kToolVersion;
    doc["command"] = command;
    doc["config"] = config_json(cfg);
    doc["truncation"] = cfg.trunc;
    doc["certified_mod_degree"] = cfg.trunc + 1;
    for (const auto& [key, value] : payload.items()) doc[key] = value;
    if (cfg.output == "text") {
        for (const auto& [key, value] : doc.items()) {
            if (key == "config") continue;
            std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                      << "\n";
        }
    } else {
        std::cout << doc.dump(2) << "\n";
    }
}

std::vector<std::string> split_vars(const std::string& spec) {
    std::vector<std::string> vars;
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        if (comma == std::string::npos) comma = spec.size();
        std::string name = spec.substr(start, comma - start);
        if (!name.empty()) vars.push_back(name);
        start = comma + 1;
    }
    return vars;
}

ncsaito::Superpotential parse_potential(const JobConfig& cfg, const std::string& expr) {
    return ncsaito::canonicalize(ncsaito::parse_series(expr, cfg.vars, cfg.trunc));
}

ncsaito::Derivation parse_derivation(const JobConfig& cfg, const std::string& spec) {
    const int n = static_cast<int>(cfg.vars.size());
    std::vector<ncsaito::Series> images(static_cast<std::size_t>(n),
                                        ncsaito::Series(n, cfg.trunc));
    std::size_t start = 0;
    while (start < spec.size()) {
        std::size_t semi = spec.find(';', start);
        if (semi == std::string::npos) semi = spec.size();
        std::string part = spec.substr(start, semi - start);
        start = semi + 1;
        std::size_t eq = part.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ParseError, "derivation entry needs the form var=EXPR");
        std::string name = part.substr(0, eq);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        int idx = -1;
        for (int i = 0; i < n; ++i)
            if (cfg.vars[static_cast<std::size_t>(i)] == name) idx = i;
        if (idx < 0)
            throw Error(ErrorCode::UnknownVariable, "variable '" + name + "' not declared");
        images[static_cast<std::size_t>(idx)] =
            ncsaito::parse_series(part.substr(eq + 1), cfg.vars, cfg.trunc);
    }
    return ncsaito::Derivation(n, cfg.trunc, std::move(images));
}

Json images_json(const JobConfig& cfg, const std::vector<ncsaito::Series>& images) {
    Json out = Json::object();
    for (std::size_t i = 0; i < images.size(); ++i)
        out[cfg.vars[i]] = ncsaito::series_to_string(images[i], cfg.vars);
    return out;
}

Json weights_json(const std::vector<ncsaito::Rat>& ws) {
    Json out = Json::array();
    for (const auto& w : ws) out.push_back(ncsaito::rat_to_string(w));
    return out;
}

std::string comm_poly_to_string(const ncsaito::CommPoly& p, const std::vector<std::string>& vars) {
    if (p.empty()) return "0";
    std::string out;
    for (const auto& [exponents, c] : p) {
        ncsaito::Rat a = c;
        if (out.empty()) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        std::string mono;
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            if (exponents[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (exponents[i] > 1) mono += "^" + std::to_string(exponents[i]);
        }
        bool unit_coeff = (a == 1) && !mono.empty();
        if (!unit_coeff) out += ncsaito::rat_to_string(a);
        if (!mono.empty()) {
            if (!unit_coeff) out += "*";
            out += mono;
        }
    }
    return out;
}

int run_command(const std::string& command, const JobConfig& cfg, const std::string& expr,
                const std::string& var_name, const std::string& theta_expr,
                const std::string& derivation_spec) {
    using namespace ncsaito;

    if (command == "canon") {
        Superpotential phi = parse_potential(cfg, expr);
        emit(cfg, command, {{"canonical", series_to_string(phi.rep(), cfg.vars)}});
        return 0;
    }
    if (command == "order") {
        Superpotential phi = parse_potential(cfg, expr);
        emit(cfg, command, {{"order", phi.order()}});
        return 0;
    }
    if (command == "cyc-diff") {
        Superpotential phi = parse_potential(cfg, expr);
        int idx = -1;
        for (std::size_t i = 0; i < cfg.vars.size(); ++i)
            if (cfg.vars[i] == var_name) idx = static_cast<int>(i);
        if (idx < 0)
            throw Error(ErrorCode::UnknownVariable, "variable '" + var_name + "' not declared");
        emit(cfg, command,
             {{"variable", var_name},
              {"derivative", series_to_string(cyclic_derivative(phi, idx), cfg.vars)}});
        return 0;
    }
    if (command == "jacobi") {
        Superpotential phi = parse_potential(cfg, expr);
        JacobiReport report = finite_dim_certificate(phi, cfg.nmax, cfg.size_guard);
        Json payload;
        payload["finite"] = report.finite;
        if (report.finite) {
            payload["nil_degree"] = report.nil_degree;
            payload["dimension"] = report.dimension;
            Json words = Json::array();
            for (const Word& w : report.normal_words) words.push_back(word_to_string(w, cfg.vars));
            payload["normal_words"] = words;
        } else {
            payload["searched_to"] = report.searched_to;
        }
        emit(cfg, command, payload);
        return 0;
    }
    if (command == "class") {
        Superpotential phi = parse_potential(cfg, expr);
        Superpotential theta = parse_potential(cfg, theta_expr);
        JacobiReport report = finite_dim_certificate(phi, cfg.nmax, cfg.size_guard);
        Series residue = class_in_hh0(theta, phi, report, cfg.size_guard);
        emit(cfg, command,
             {{"residue", series_to_string(residue, cfg.vars)}, {"zero", residue.is_zero()}});
        return 0;
    }
    if (command == "quasi") {
        Superpotential phi = parse_potential(cfg, expr);
        JacobiReport report = finite_dim_certificate(phi, cfg.nmax, cfg.size_guard);
        emit(cfg, command, {{"quasi_homogeneous", is_quasi_homogeneous(phi, report, cfg.size_guard)}});
        return 0;
    }
    if (command == "weights") {
        Superpotential phi = parse_potential(cfg, expr);
        JacobiReport report = finite_dim_certificate(phi, cfg.nmax, cfg.size_guard);
        WeightsResult wr = weights(phi, report, cfg.size_guard);
        emit(cfg, command,
             {{"weights", weights_json(wr.type.weights)},
              {"canonical_type", weights_json(canonical_type(wr.type).weights)}});
        return 0;
    }
    if (command == "normalize") {
        Superpotential phi = parse_potential(cfg, expr);
        JacobiReport report = finite_dim_certificate(phi, cfg.nmax, cfg.size_guard);
        NormalizationResult nr = normalize(phi, report, cfg.size_guard);
        emit(cfg, command,
             {{"type", weights_json(nr.type.weights)},
              {"canonical_type", weights_json(canonical_type(nr.type).weights)},
              {"transform", images_json(cfg, nr.transform.images())},
              {"normal_form", series_to_string(nr.normal_form.rep(), cfg.vars)},
              {"euler", images_json(cfg, nr.euler.images())}});
        return 0;
    }
    if (command == "jc") {
        Derivation xi = parse_derivation(cfg, derivation_spec);
        JCDecomposition jc = jordan_chevalley(xi);
        emit(cfg, command,
             {{"eigenvalues", weights_json(jc.eigenvalues)},
              {"semisimple", images_json(cfg, jc.semisimple.images())},
              {"nilpotent", images_json(cfg, jc.nilpotent.images())},
              {"conjugator", images_json(cfg, jc.conjugator.images())}});
        return 0;
    }
    if (command == "abelianize") {
        Superpotential phi = parse_potential(cfg, expr);
        emit(cfg, command, {{"abelianization", comm_poly_to_string(abelianize(phi), cfg.vars)}});
        return 0;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noncommutative Saito calculus on complete free algebras"};
    app.require_subcommand(1);

    JobConfig cfg;
    std::string vars_spec;
    std::string expr, var_name, theta_expr, derivation_spec;

    auto add_common = [&](CLI::App* cmd, bool needs_expr) {
        cmd->add_option("--vars", vars_spec, "Comma-separated ordered variable names")->required();
        cmd->add_option("--trunc", cfg.trunc, "Series truncation degree");
        cmd->add_option("--nmax", cfg.nmax, "Finiteness certificate search bound");
        cmd->add_option("--size-guard", cfg.size_guard, "Maximum monomial-basis size");
        cmd->add_option("--output", cfg.output, "Output format: json or text")
            ->check(CLI::IsMember({"json", "text"}));
        if (needs_expr) cmd->add_option("expr", expr, "Superpotential expression")->required();
    };

    for (const char* name : {"canon", "order", "jacobi", "quasi", "weights", "normalize",
                             "abelianize"})
        add_common(app.add_subcommand(name), true);

    auto* cyc = app.add_subcommand("cyc-diff");
    add_common(cyc, true);
    cyc->add_option("--var", var_name, "Variable to differentiate by")->required();

    auto* cls = app.add_subcommand("class");
    add_common(cls, true);
    cls->add_option("--theta", theta_expr, "Class representative to reduce")->required();

    auto* jc = app.add_subcommand("jc");
    add_common(jc, false);
    jc->add_option("--derivation", derivation_spec, "Derivation as \"x=EXPR;y=EXPR\"")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cfg.vars = split_vars(vars_spec);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        if (cfg.vars.empty())
            throw Error(ErrorCode::InvalidArgument, "--vars must declare at least one variable");
        if (cfg.trunc < 2)
            throw Error(ErrorCode::InvalidArgument, "--trunc must be >= 2");
        if (cfg.size_guard <= 0)
            throw Error(ErrorCode::InvalidArgument, "--size-guard must be positive");
        return run_command(command, cfg, expr, var_name, theta_expr, derivation_spec);
    } catch (const Error& e) {
        Json err{{"error", {{"code", ncsaito::error_code_name(e.code())},
                            {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "ncsaito: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "ncsaito: " << e.what() << "\n";
        return 2;
    }
}
