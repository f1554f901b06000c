#include "escortdyn/cli/config.hpp"

#include <fstream>
#include <map>
#include <set>

#include "escortdyn/errors.hpp"

namespace escortdyn::cli {
namespace {

using nlohmann::json;

// Parameter key per family; families absent here take no parameter.
const std::map<std::string, std::string>& parameter_keys() {
    static const std::map<std::string, std::string> keys{{"scaled", "beta"}, {"power", "q"}, {"constant", "c"}};
    return keys;
}

const std::set<std::string>& builtins() {
    static const std::set<std::string> names{"rsp", "rsp_escort_quadratic", "neg_identity", "exp_decay"};
    return names;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

const json& require(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) {
        throw ConfigError("missing '" + key + "' in " + where);
    }
    return j.at(key);
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) {
        throw ConfigError(what + " must be a number");
    }
    return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& what) {
    if (!j.is_array()) {
        throw ConfigError(what + " must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : j) {
        out.push_back(number(v, what + " entry"));
    }
    return out;
}

EscortSpec parse_escort(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("escort must be an object");
    }
    EscortSpec spec;
    const json& family = require(j, "family", "escort");
    if (!family.is_string()) {
        throw ConfigError("escort.family must be a string");
    }
    spec.family = family.get<std::string>();
    const auto it = parameter_keys().find(spec.family);
    if (it != parameter_keys().end()) {
        reject_unknown_keys(j, {"family", it->second}, "escort");
        spec.param = number(require(j, it->second, "escort"), "escort." + it->second);
    } else if (spec.family == "identity" || spec.family == "exponential") {
        reject_unknown_keys(j, {"family"}, "escort");
    } else {
        throw ConfigError("unknown escort family '" + spec.family + "'");
    }
    return spec;
}

LandscapeSpec parse_landscape(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("landscape must be an object");
    }
    LandscapeSpec spec;
    if (j.contains("builtin")) {
        reject_unknown_keys(j, {"builtin"}, "landscape");
        if (!j.at("builtin").is_string() || !builtins().contains(j.at("builtin").get<std::string>())) {
            throw ConfigError("landscape.builtin must be one of rsp, rsp_escort_quadratic, neg_identity, exp_decay");
        }
        spec.builtin = j.at("builtin").get<std::string>();
        return spec;
    }
    reject_unknown_keys(j, {"matrix", "form"}, "landscape");
    const json& rows = require(j, "matrix", "landscape");
    if (!rows.is_array()) {
        throw ConfigError("landscape.matrix must be an array of rows");
    }
    for (const auto& row : rows) {
        spec.matrix.push_back(numbers(row, "landscape.matrix row"));
    }
    if (j.contains("form")) {
        if (!j.at("form").is_string()) {
            throw ConfigError("landscape.form must be a string");
        }
        spec.form = j.at("form").get<std::string>();
    }
    if (spec.form != "linear" && spec.form != "escort" && spec.form != "escort_log") {
        throw ConfigError("landscape.form must be linear, escort or escort_log");
    }
    return spec;
}

void check_point(const std::vector<double>& x, const std::string& what) {
    try {
        SimplexPoint{x};
    } catch (const DomainError& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

void validate(const RunConfig& c) {
    check_point(c.x0, "x0");
    if (c.reference) {
        check_point(*c.reference, "reference");
        if (c.reference->size() != c.x0.size()) {
            throw ConfigError("reference and x0 have different dimensions");
        }
    }
    if (!(c.step > 0.0) || !std::isfinite(c.step)) {
        throw ConfigError("step must be positive");
    }
    if (!(c.t_end >= c.step) || !std::isfinite(c.t_end)) {
        throw ConfigError("t_end must be at least step");
    }
    if (c.observe_every == 0) {
        throw ConfigError("observe_every must be at least 1");
    }
    if (c.output && c.output->format != "csv" && c.output->format != "json") {
        throw ConfigError("output.format must be csv or json");
    }
    if (c.output && c.output->path.empty()) {
        throw ConfigError("output.path must not be empty");
    }
    // Building the escort and landscape surfaces parameter and shape errors now
    // rather than mid-run.
    make_landscape(c.landscape, make_escort(c.escort), c.x0.size());
}

}  // namespace

RunConfig parse_config(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    reject_unknown_keys(j, {"escort", "landscape", "x0", "t_end", "step", "observe_every", "reference", "seed", "output"},
                        "config");
    RunConfig c;
    c.escort = parse_escort(require(j, "escort", "config"));
    c.landscape = parse_landscape(require(j, "landscape", "config"));
    c.x0 = numbers(require(j, "x0", "config"), "x0");
    c.t_end = number(require(j, "t_end", "config"), "t_end");
    if (j.contains("step")) {
        c.step = number(j.at("step"), "step");
    }
    if (j.contains("observe_every")) {
        if (!j.at("observe_every").is_number_integer() || j.at("observe_every").get<std::int64_t>() < 1) {
            throw ConfigError("observe_every must be a positive integer");
        }
        c.observe_every = j.at("observe_every").get<std::size_t>();
    }
    if (j.contains("reference") && !j.at("reference").is_null()) {
        c.reference = numbers(j.at("reference"), "reference");
    }
    if (j.contains("seed")) {
        const json& seed = j.at("seed");
        if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
            throw ConfigError("seed must be a nonnegative integer");
        }
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("output") && !j.at("output").is_null()) {
        const json& o = j.at("output");
        if (!o.is_object()) {
            throw ConfigError("output must be an object");
        }
        reject_unknown_keys(o, {"path", "format"}, "output");
        OutputSpec out;
        const json& path = require(o, "path", "output");
        if (!path.is_string()) {
            throw ConfigError("output.path must be a string");
        }
        out.path = path.get<std::string>();
        if (o.contains("format")) {
            if (!o.at("format").is_string()) {
                throw ConfigError("output.format must be a string");
            }
            out.format = o.at("format").get<std::string>();
        }
        c.output = out;
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& c) {
    json escort{{"family", c.escort.family}};
    if (c.escort.param) {
        escort[parameter_keys().at(c.escort.family)] = *c.escort.param;
    }
    json landscape;
    if (c.landscape.builtin) {
        landscape["builtin"] = *c.landscape.builtin;
    } else {
        landscape["matrix"] = c.landscape.matrix;
        landscape["form"] = c.landscape.form;
    }
    json j{{"escort", escort},         {"landscape", landscape},         {"x0", c.x0}, {"t_end", c.t_end},
           {"step", c.step},           {"observe_every", c.observe_every}, {"seed", c.seed}};
    if (c.reference) {
        j["reference"] = *c.reference;
    }
    if (c.output) {
        j["output"] = {{"path", c.output->path}, {"format", c.output->format}};
    }
    return j;
}

Escort make_escort(const EscortSpec& spec) {
    if (spec.family == "identity") {
        return Escort::identity();
    }
    if (spec.family == "exponential") {
        return Escort::exponential();
    }
    if (!spec.param) {
        throw ConfigError("escort family '" + spec.family + "' needs a parameter");
    }
    if (spec.family == "scaled") {
        return Escort::scaled(*spec.param);
    }
    if (spec.family == "power") {
        return Escort::power(*spec.param);
    }
    if (spec.family == "constant") {
        return Escort::constant(*spec.param);
    }
    throw ConfigError("unknown escort family '" + spec.family + "'");
}

FitnessLandscape make_landscape(const LandscapeSpec& spec, const Escort& phi, std::size_t n) {
    if (spec.builtin) {
        const std::string& name = *spec.builtin;
        if ((name == "rsp" || name == "rsp_escort_quadratic") && n != 3) {
            throw ConfigError("builtin landscape '" + name + "' needs a 3-type state");
        }
        if (name == "rsp") {
            return FitnessLandscape::matrix_linear(rsp_matrix());
        }
        if (name == "rsp_escort_quadratic") {
            return FitnessLandscape::matrix_escort(rsp_matrix(), Escort::power(2.0));
        }
        if (name == "neg_identity") {
            return neg_identity_landscape(n);
        }
        if (name == "exp_decay") {
            return exp_decay_landscape();
        }
        throw ConfigError("unknown builtin landscape '" + name + "'");
    }
    if (spec.matrix.size() != n) {
        throw ConfigError("landscape.matrix must be " + std::to_string(n) + " x " + std::to_string(n));
    }
    for (const auto& row : spec.matrix) {
        if (row.size() != n) {
            throw ConfigError("landscape.matrix must be square");
        }
    }
    Matrix a = Matrix::from_rows(spec.matrix);
    if (spec.form == "escort") {
        return FitnessLandscape::matrix_escort(std::move(a), phi);
    }
    if (spec.form == "escort_log") {
        return FitnessLandscape::matrix_escort_log(std::move(a), phi);
    }
    return FitnessLandscape::matrix_linear(std::move(a));
}

IntegrateOptions make_options(const RunConfig& c) {
    IntegrateOptions o{.t_end = c.t_end, .step = c.step, .observe_every = c.observe_every};
    if (c.reference) {
        o.reference = SimplexPoint(*c.reference);
    }
    return o;
}

}  // namespace escortdyn::cli
