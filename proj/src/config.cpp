#include "jxfrft/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

namespace jxfrft::cli {

namespace {

std::string join_diagnostics(const std::vector<std::string>& diags) {
    std::ostringstream os;
    os << "invalid config:";
    for (const auto& d : diags) {
        os << "\n  - " << d;
    }
    return os.str();
}

/// Collects diagnostics while walking a document.
class Checker {
public:
    void fail(const std::string& path, const std::string& message) { diags_.push_back(path + ": " + message); }
    bool ok() const { return diags_.empty(); }
    void raise_if_failed() const {
        if (!diags_.empty()) {
            throw ConfigError(diags_);
        }
    }

    void allowed_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [key, _] : obj.items()) {
            if (!allowed.contains(key)) {
                fail(path + "/" + key, "unknown key");
            }
        }
    }

    std::optional<double> real(const json& obj, const char* key, const std::string& path) {
        if (!obj.contains(key)) {
            return std::nullopt;
        }
        try {
            return parse_real(obj.at(key), path + "/" + key);
        } catch (const UsageError& e) {
            diags_.emplace_back(e.what());
            return std::nullopt;
        }
    }

    std::optional<int> integer(const json& obj, const char* key, const std::string& path) {
        if (!obj.contains(key)) {
            return std::nullopt;
        }
        const auto& v = obj.at(key);
        if (!v.is_number_integer()) {
            fail(path + "/" + key, "expected an integer");
            return std::nullopt;
        }
        return v.get<int>();
    }

    std::optional<bool> boolean(const json& obj, const char* key, const std::string& path) {
        if (!obj.contains(key)) {
            return std::nullopt;
        }
        if (!obj.at(key).is_boolean()) {
            fail(path + "/" + key, "expected true or false");
            return std::nullopt;
        }
        return obj.at(key).get<bool>();
    }

    std::optional<std::string> string(const json& obj, const char* key, const std::string& path) {
        if (!obj.contains(key)) {
            return std::nullopt;
        }
        if (!obj.at(key).is_string()) {
            fail(path + "/" + key, "expected a string");
            return std::nullopt;
        }
        return obj.at(key).get<std::string>();
    }

    std::vector<int> int_list(const json& obj, const char* key, const std::string& path) {
        std::vector<int> out;
        const auto& v = obj.at(key);
        if (!v.is_array() || v.empty()) {
            fail(path + "/" + key, "expected a non-empty array of integers");
            return out;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_integer()) {
                fail(path + "/" + key + "/" + std::to_string(i), "expected an integer");
            } else {
                out.push_back(v[i].get<int>());
            }
        }
        return out;
    }

private:
    std::vector<std::string> diags_;
};

ProfileKind parse_profile_kind(const std::string& name) {
    if (name == "gaussian") return ProfileKind::gaussian;
    if (name == "tophat") return ProfileKind::tophat;
    if (name == "single_site") return ProfileKind::single_site;
    if (name == "custom") return ProfileKind::custom;
    throw UsageError("unknown profile kind '" + name + "' (gaussian, tophat, single_site, custom)");
}

TransformPayload parse_transform(const json& p, Checker& check) {
    TransformPayload out;
    check.allowed_keys(p, "/payload", {"profile", "overlay", "overlay_scale"});
    if (!p.contains("profile") || !p.at("profile").is_object()) {
        check.fail("/payload/profile", "required object");
        return out;
    }
    const auto& prof = p.at("profile");
    const std::string path = "/payload/profile";
    check.allowed_keys(prof, path, {"kind", "center", "width", "phase_ramp", "amplitudes"});
    if (auto kind = check.string(prof, "kind", path)) {
        try {
            out.profile.kind = parse_profile_kind(*kind);
        } catch (const UsageError& e) {
            check.fail(path + "/kind", e.what());
        }
    } else {
        check.fail(path + "/kind", "required");
    }
    if (auto v = check.real(prof, "center", path)) out.profile.center = *v;
    if (auto v = check.real(prof, "width", path)) {
        if (!(*v > 0.0)) check.fail(path + "/width", "must be positive");
        out.profile.width = *v;
    }
    if (auto v = check.real(prof, "phase_ramp", path)) out.profile.phase_ramp = *v;
    if (out.profile.kind == ProfileKind::custom) {
        if (!prof.contains("amplitudes") || !prof.at("amplitudes").is_array()) {
            check.fail(path + "/amplitudes", "custom profiles need an array of [re, im] pairs");
        } else {
            const auto& amps = prof.at("amplitudes");
            for (std::size_t i = 0; i < amps.size(); ++i) {
                const auto& a = amps[i];
                if (a.is_number()) {
                    out.profile.custom.emplace_back(a.get<double>(), 0.0);
                } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
                    out.profile.custom.emplace_back(a[0].get<double>(), a[1].get<double>());
                } else {
                    check.fail(path + "/amplitudes/" + std::to_string(i), "expected a number or [re, im]");
                }
            }
        }
    }
    if (auto v = check.boolean(p, "overlay", "/payload")) out.overlay = *v;
    if (auto v = check.real(p, "overlay_scale", "/payload")) {
        if (!(*v > 0.0)) check.fail("/payload/overlay_scale", "must be positive");
        out.overlay_scale = *v;
    }
    return out;
}

BiphotonPayload parse_biphoton(const json& p, Checker& check) {
    BiphotonPayload out;
    check.allowed_keys(p, "/payload", {"kind", "sites", "beamsplitter"});
    if (auto kind = check.string(p, "kind", "/payload")) {
        if (*kind == "separable") {
            out.input.kind = TwoPhotonKind::separable;
        } else if (*kind == "path_entangled") {
            out.input.kind = TwoPhotonKind::path_entangled;
        } else {
            check.fail("/payload/kind", "expected 'separable' or 'path_entangled'");
        }
    }
    if (!p.contains("sites") || !p.at("sites").is_array() || p.at("sites").size() != 2) {
        check.fail("/payload/sites", "required pair of site labels [m, n]");
    } else {
        try {
            out.input.m = parse_real(p.at("sites")[0], "/payload/sites/0");
            out.input.n = parse_real(p.at("sites")[1], "/payload/sites/1");
            if (out.input.m == out.input.n) {
                check.fail("/payload/sites", "the two preparation sites must differ (m != n)");
            }
        } catch (const UsageError& e) {
            check.fail("/payload/sites", e.what());
        }
    }
    if (auto v = check.boolean(p, "beamsplitter", "/payload")) out.beamsplitter = *v;
    if (out.beamsplitter && out.input.kind != TwoPhotonKind::separable) {
        check.fail("/payload/beamsplitter", "beam-splitter preparation takes a separable pair");
    }
    return out;
}

ContinuumPayload parse_continuum(const json& p, Checker& check) {
    ContinuumPayload out;
    check.allowed_keys(p, "/payload", {"levels", "sizes"});
    if (p.contains("levels")) out.levels = check.int_list(p, "levels", "/payload");
    if (p.contains("sizes")) out.sizes = check.int_list(p, "sizes", "/payload");
    for (int n : out.sizes) {
        if (n < 2) check.fail("/payload/sizes", "every N must be >= 2");
    }
    if (!out.sizes.empty()) {
        const int min_size = *std::min_element(out.sizes.begin(), out.sizes.end());
        for (int level : out.levels) {
            if (level < 0 || level >= min_size) {
                check.fail("/payload/levels", "levels must satisfy 0 <= level < min(N)");
                break;
            }
        }
    }
    return out;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : UsageError(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

double physical_length(const LatticeSpec& spec, double order) {
    const double length = order / spec.kappa0();
    if (!std::isfinite(length)) {
        throw NumericError("propagation length Z / kappa0 overflows for Z = " + std::to_string(order));
    }
    return length;
}

double parse_real(const json& value, const std::string& where) {
    if (value.is_number()) {
        const double v = value.get<double>();
        if (!std::isfinite(v)) {
            throw UsageError(where + ": not finite");
        }
        return v;
    }
    if (!value.is_string()) {
        throw UsageError(where + ": expected a number or a string such as \"pi/2\"");
    }
    const std::string text = value.get<std::string>();
    // [sign][coef][*]pi[/den]  or a plain decimal
    static const std::regex pi_form(R"(^\s*([+-]?)\s*(\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d+)?))?\s*$)");
    std::smatch match;
    if (std::regex_match(text, match, pi_form)) {
        double v = std::numbers::pi;
        if (match[2].matched) v = std::stod(match[2].str()) * std::numbers::pi;
        if (match[3].matched) {
            const double den = std::stod(match[3].str());
            if (den == 0.0) throw UsageError(where + ": division by zero in '" + text + "'");
            v /= den;
        }
        return match[1].str() == "-" ? -v : v;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size() && std::isfinite(v)) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw UsageError(where + ": cannot read '" + text + "' as a real number");
}

Command parse_command(const std::string& name) {
    if (name == "lattice") return Command::lattice;
    if (name == "transform") return Command::transform;
    if (name == "biphoton") return Command::biphoton;
    if (name == "continuum") return Command::continuum;
    throw UsageError("unknown command '" + name + "' (lattice, transform, biphoton, continuum)");
}

std::string to_string(Command command) {
    switch (command) {
    case Command::lattice: return "lattice";
    case Command::transform: return "transform";
    case Command::biphoton: return "biphoton";
    case Command::continuum: return "continuum";
    }
    return "?";
}

RunConfig parse_config(const json& doc) {
    Checker check;
    RunConfig cfg;
    if (!doc.is_object()) {
        throw ConfigError({"/: config must be a JSON object"});
    }
    check.allowed_keys(doc, "", {"command", "lattice", "payload", "z_values", "output"});

    bool have_command = false;
    if (auto name = check.string(doc, "command", "")) {
        try {
            cfg.command = parse_command(*name);
            have_command = true;
        } catch (const UsageError& e) {
            check.fail("/command", e.what());
        }
    } else if (!doc.contains("command")) {
        check.fail("/command", "required");
    }
    // the rest of the document is read according to the command
    if (!have_command) {
        check.raise_if_failed();
    }

    if (doc.contains("lattice")) {
        const auto& lat = doc.at("lattice");
        if (!lat.is_object()) {
            check.fail("/lattice", "expected an object");
        } else {
            check.allowed_keys(lat, "/lattice", {"N", "kappa0"});
            const auto n = check.integer(lat, "N", "/lattice");
            const double kappa0 = check.real(lat, "kappa0", "/lattice").value_or(1.0);
            if (!n) {
                check.fail("/lattice/N", "required integer >= 2");
            } else if (*n < 2) {
                check.fail("/lattice/N", "must be >= 2");
            } else if (!(kappa0 > 0.0)) {
                check.fail("/lattice/kappa0", "must be > 0");
            } else {
                cfg.lattice.emplace(*n, kappa0);
            }
        }
    } else if (cfg.command != Command::continuum) {
        check.fail("/lattice", "required for command '" + to_string(cfg.command) + "'");
    }

    const json empty = json::object();
    const json& payload = doc.contains("payload") ? doc.at("payload") : empty;
    if (!payload.is_object()) {
        check.fail("/payload", "expected an object");
    } else {
        switch (cfg.command) {
        case Command::lattice:
            check.allowed_keys(payload, "/payload", {});
            cfg.payload = LatticePayload{};
            break;
        case Command::transform: cfg.payload = parse_transform(payload, check); break;
        case Command::biphoton: cfg.payload = parse_biphoton(payload, check); break;
        case Command::continuum: cfg.payload = parse_continuum(payload, check); break;
        }
    }

    if (doc.contains("z_values")) {
        const auto& zs = doc.at("z_values");
        if (!zs.is_array() || zs.empty()) {
            check.fail("/z_values", "expected a non-empty array");
        } else {
            for (std::size_t i = 0; i < zs.size(); ++i) {
                const std::string where = "/z_values/" + std::to_string(i);
                try {
                    if (zs[i].is_object()) {
                        if (zs[i].size() != 1 || !zs[i].contains("cm")) {
                            throw UsageError(where + ": object form must be {\"cm\": length}");
                        }
                        const double cm = parse_real(zs[i].at("cm"), where + "/cm");
                        if (!cfg.lattice) throw UsageError(where + ": cm lengths need a lattice kappa0");
                        cfg.z_values.push_back(cm * cfg.lattice->kappa0());
                    } else {
                        cfg.z_values.push_back(parse_real(zs[i], where));
                    }
                } catch (const UsageError& e) {
                    check.fail(where, e.what());
                }
            }
        }
    } else {
        cfg.z_values.push_back(std::numbers::pi / 2.0);
    }

    if (doc.contains("output")) {
        const auto& out = doc.at("output");
        if (!out.is_object()) {
            check.fail("/output", "expected an object");
        } else {
            check.allowed_keys(out, "/output", {"path", "format"});
            if (auto p = check.string(out, "path", "/output")) cfg.output.path = *p;
            if (auto f = check.string(out, "format", "/output")) {
                if (*f == "csv") {
                    cfg.output.format = OutputFormat::csv;
                } else if (*f == "json") {
                    cfg.output.format = OutputFormat::json;
                } else {
                    check.fail("/output/format", "expected 'csv' or 'json'");
                }
            }
        }
    }

    if (cfg.lattice && std::holds_alternative<BiphotonPayload>(cfg.payload)) {
        const auto& bp = std::get<BiphotonPayload>(cfg.payload);
        for (double s : {bp.input.m, bp.input.n}) {
            if (!cfg.lattice->contains(s)) {
                std::ostringstream msg;
                msg << "site " << s << " is not a lattice label (" << -cfg.lattice->j() << ".." << cfg.lattice->j() << ")";
                check.fail("/payload/sites", msg.str());
            }
        }
    }

    check.raise_if_failed();
    return cfg;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError({"/: not valid JSON (" + std::string(e.what()) + ")"});
    }
}

std::vector<std::string> preset_names(Command command) {
    switch (command) {
    case Command::lattice: return {"n8"};
    case Command::transform: return {"fig2a", "fig2b", "figS1a", "figS1b"};
    case Command::biphoton: return {"fig4a", "fig4b", "fig4a-center"};
    case Command::continuum: return {"s2"};
    }
    return {};
}

json preset_document(Command command, const std::string& name) {
    // Classical demos run on N = 25 so the six-channel shift and a FWHM-5
    // Gaussian both fit; kappa0 is the classical sample's 0.21 cm^-1.
    const json classical_lattice = {{"N", 25}, {"kappa0", 0.21}};
    const json classical_z = json::array({0, "pi/8", "pi/4", "3pi/8", "pi/2"});
    const json quantum_lattice = {{"N", 8}, {"kappa0", 0.6}};

    switch (command) {
    case Command::lattice:
        if (name == "n8") {
            return {{"command", "lattice"}, {"lattice", quantum_lattice}};
        }
        break;
    case Command::transform: {
        json profile;
        if (name == "fig2a") {
            profile = {{"kind", "gaussian"}, {"center", 0}, {"width", 5}};
        } else if (name == "fig2b") {
            profile = {{"kind", "gaussian"}, {"center", -6}, {"width", 5}};
        } else if (name == "figS1a") {
            profile = {{"kind", "tophat"}, {"center", -10.5}, {"width", 4}};
        } else if (name == "figS1b") {
            profile = {{"kind", "tophat"}, {"center", 0}, {"width", 9}, {"phase_ramp", "pi/8"}};
        } else {
            break;
        }
        const bool overlay = name == "fig2a" || name == "fig2b";
        return {{"command", "transform"},
                {"lattice", classical_lattice},
                {"payload", {{"profile", profile}, {"overlay", overlay}}},
                {"z_values", classical_z}};
    }
    case Command::biphoton:
        if (name == "fig4a" || name == "fig4b") {
            return {{"command", "biphoton"},
                    {"lattice", quantum_lattice},
                    {"payload", {{"kind", "separable"}, {"sites", {-3.5, 3.5}}, {"beamsplitter", name == "fig4b"}}},
                    {"z_values", {"pi/2"}}};
        }
        if (name == "fig4a-center") {
            return {{"command", "biphoton"},
                    {"lattice", quantum_lattice},
                    {"payload", {{"kind", "separable"}, {"sites", {-0.5, 0.5}}, {"beamsplitter", false}}},
                    {"z_values", {"pi/2"}}};
        }
        break;
    case Command::continuum:
        if (name == "s2") {
            return {{"command", "continuum"},
                    {"payload", {{"levels", {0, 1, 2, 3, 4}}, {"sizes", {21, 41, 81, 161}}}}};
        }
        break;
    }
    std::string known;
    for (const auto& n : preset_names(command)) {
        known += (known.empty() ? "" : ", ") + n;
    }
    throw UsageError("unknown preset '" + name + "' for command '" + to_string(command) + "' (known: " + known + ")");
}

} // namespace jxfrft::cli
