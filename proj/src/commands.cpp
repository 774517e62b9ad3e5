#include "jxfrft/commands.hpp"

#include "jxfrft/biphoton.hpp"
#include "jxfrft/continuum.hpp"
#include "jxfrft/errors.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace jxfrft::cli {

namespace {

using io::Cell;
using io::Table;

json lattice_json(const LatticeSpec& spec) {
    return {{"N", spec.size()}, {"j", spec.j()}, {"kappa0", spec.kappa0()}, {"gamma", spec.gamma()}};
}

std::int64_t as_int(int v) { return static_cast<std::int64_t>(v); }

bool near_quarter(double order) {
    return std::abs(std::remainder(order - std::numbers::pi / 2.0, 2.0 * std::numbers::pi)) < 1e-12;
}

/// |FrFT|^2 of the continuum Gaussian matching the lattice input, normalized
/// to unit sum over the lattice grid.
std::vector<double> overlay_intensity(const LatticeSpec& spec, const InputProfileSpec& profile, double scale,
                                      double order) {
    const double sigma_sites = profile.width / (2.0 * std::sqrt(std::numbers::ln2));
    const double width = sigma_sites / scale;
    const double shift = profile.center / scale;
    std::vector<double> grid(spec.size());
    for (int i = 0; i < spec.size(); ++i) {
        grid[i] = spec.label(i) / scale;
    }
    const double reduced = std::remainder(order, 2.0 * std::numbers::pi);
    std::vector<double> out(spec.size());
    if (std::abs(std::sin(reduced)) < 1e-12 && std::cos(reduced) < 0.0) {
        // parity limit: f(-x)
        for (int i = 0; i < spec.size(); ++i) {
            const double d = -grid[i] - shift;
            out[i] = std::exp(-d * d / (width * width));
        }
    } else {
        const auto values = continuous_frft_gaussian(width, shift, order, grid);
        for (int i = 0; i < spec.size(); ++i) {
            out[i] = std::norm(values[i]);
        }
    }
    double total = 0.0;
    for (double v : out) total += v;
    if (total > 0.0) {
        for (double& v : out) v /= total;
    }
    return out;
}

std::string profile_kind_name(ProfileKind kind) {
    switch (kind) {
    case ProfileKind::gaussian: return "gaussian";
    case ProfileKind::tophat: return "tophat";
    case ProfileKind::single_site: return "single_site";
    case ProfileKind::custom: return "custom";
    }
    return "?";
}

json report_json(const SuppressionReport& r) {
    return {{"rule", to_string(r.rule)},
            {"max_suppressed", r.max_suppressed},
            {"max_allowed", r.max_allowed},
            {"ratio", r.ratio},
            {"pass", r.pass}};
}

} // namespace

CommandResult run_lattice(const RunConfig& cfg) {
    const LatticeSpec& spec = cfg.lattice.value();
    const JxMatrix jx = build_jx(spec);
    const SpectralBasis basis = numeric_basis(jx);
    const SpectralBasis closed = analytic_basis(spec);
    const auto exact = exact_eigenvalues(spec);

    CommandResult res;
    Table couplings{"couplings", {"bond", "i_left", "m_left", "i_right", "m_right", "value"}, {}};
    Table eigenvalues{"eigenvalues", {"col", "beta_exact", "beta_numeric"}, {}};
    Table vectors{"eigenvectors", {"i", "m", "col", "beta", "value"}, {}};

    json sites = json::array();
    for (int i = 0; i < spec.size(); ++i) {
        sites.push_back({{"i", i}, {"m", spec.label(i)}});
    }
    json coupling_json = json::array();
    for (int b = 0; b + 1 < spec.size(); ++b) {
        couplings.rows.push_back({as_int(b), as_int(b), spec.label(b), as_int(b + 1), spec.label(b + 1), jx.offdiag[b]});
        coupling_json.push_back({{"bond", b}, {"i", b}, {"m", spec.label(b)}, {"value", jx.offdiag[b]}});
    }
    double max_err = 0.0;
    json columns = json::array();
    for (int c = 0; c < basis.size(); ++c) {
        max_err = std::max(max_err, std::abs(basis.eigenvalues(c) - exact[c]));
        eigenvalues.rows.push_back({as_int(c), exact[c], basis.eigenvalues(c)});
        json values = json::array();
        for (int i = 0; i < spec.size(); ++i) {
            vectors.rows.push_back({as_int(i), spec.label(i), as_int(c), exact[c], basis.vectors(i, c)});
            values.push_back(basis.vectors(i, c));
        }
        columns.push_back({{"col", c}, {"beta", exact[c]}, {"values", values}});
    }
    const double analytic_dev = (basis.vectors - closed.vectors).cwiseAbs().maxCoeff();

    res.document = {{"command", "lattice"},
                    {"lattice", lattice_json(spec)},
                    {"sites", sites},
                    {"couplings", coupling_json},
                    {"eigenvalues",
                     {{"exact", exact},
                      {"numeric", std::vector<double>(basis.eigenvalues.data(), basis.eigenvalues.data() + basis.size())},
                      {"max_error", max_err}}},
                    {"eigenvectors",
                     {{"sign_convention", "component at site -j positive"},
                      {"orthonormality_defect", orthonormality_defect(basis)},
                      {"analytic_max_deviation", analytic_dev},
                      {"columns", columns}}}};
    res.tables = {std::move(couplings), std::move(eigenvalues), std::move(vectors)};
    return res;
}

CommandResult run_transform(const RunConfig& cfg) {
    const LatticeSpec& spec = cfg.lattice.value();
    const auto& payload = std::get<TransformPayload>(cfg.payload);
    if (payload.overlay && payload.profile.kind != ProfileKind::gaussian) {
        throw UsageError("the continuous-FrFT overlay is only defined for gaussian profiles");
    }
    const SpectralBasis basis = numeric_basis(build_jx(spec));
    const Field input = make_input(spec, payload.profile);
    const double scale = payload.overlay_scale.value_or(std::pow(spec.gamma(), 0.25));
    const bool ramped = payload.profile.phase_ramp != 0.0 &&
                        (payload.profile.kind == ProfileKind::gaussian || payload.profile.kind == ProfileKind::tophat);

    CommandResult res;
    Table fields{"fields", {"z_order", "z_cm", "i", "m", "re", "im", "intensity"}, {}};
    if (payload.overlay) {
        fields.header.emplace_back("overlay_intensity");
    }
    Table summary{"summary", {"z_order", "z_cm", "norm", "centroid", "variance"}, {}};
    if (ramped) {
        summary.header.emplace_back("best_shift");
        summary.header.emplace_back("displacement_distance");
    }

    json results = json::array();
    for (double z : cfg.z_values) {
        const Field out = propagate(input, basis, z);
        const Eigen::VectorXd intensity = out.intensities();
        const double z_cm = physical_length(spec, z);
        std::vector<double> overlay;
        if (payload.overlay) {
            overlay = overlay_intensity(spec, payload.profile, scale, z);
        }
        json site_rows = json::array();
        for (int i = 0; i < spec.size(); ++i) {
            const cplx a = out.amplitudes(i);
            std::vector<Cell> row{z, z_cm, as_int(i), spec.label(i), a.real(), a.imag(), intensity(i)};
            json site = {{"i", i}, {"m", spec.label(i)}, {"re", a.real()}, {"im", a.imag()}, {"intensity", intensity(i)}};
            if (payload.overlay) {
                row.emplace_back(overlay[i]);
                site["overlay_intensity"] = overlay[i];
            }
            fields.rows.push_back(std::move(row));
            site_rows.push_back(std::move(site));
        }
        const double c = centroid(spec, intensity);
        const double v = variance(spec, intensity);
        std::vector<Cell> srow{z, z_cm, out.norm(), c, v};
        json entry = {{"z_order", z}, {"z_cm", z_cm}, {"norm", out.norm()}, {"centroid", c}, {"variance", v}};
        if (ramped) {
            const auto d = displacement_check(spec, basis, payload.profile, z);
            srow.emplace_back(as_int(d.best_shift));
            srow.emplace_back(d.distance);
            entry["displacement"] = {{"best_shift", d.best_shift}, {"distance", d.distance}};
        }
        summary.rows.push_back(std::move(srow));
        entry["sites"] = std::move(site_rows);
        results.push_back(std::move(entry));
    }

    json profile = {{"kind", profile_kind_name(payload.profile.kind)},
                    {"center", payload.profile.center},
                    {"width", payload.profile.width},
                    {"phase_ramp", payload.profile.phase_ramp}};
    res.document = {{"command", "transform"}, {"lattice", lattice_json(spec)}, {"profile", profile}};
    if (payload.overlay) {
        res.document["overlay"] = {{"scale", scale}};
    }
    res.document["results"] = std::move(results);
    res.tables = {std::move(fields), std::move(summary)};
    return res;
}

CommandResult run_biphoton(const RunConfig& cfg) {
    const LatticeSpec& spec = cfg.lattice.value();
    const auto& payload = std::get<BiphotonPayload>(cfg.payload);
    const TwoPhotonInput input = payload.beamsplitter ? apply_beamsplitter(payload.input) : payload.input;
    const SpectralBasis basis = numeric_basis(build_jx(spec));

    CommandResult res;
    Table long_table{"gamma", {"z_order", "k_i", "l_i", "k", "l", "gamma"}, {}};
    Table dense{"gamma_dense", {"z_order", "k_i", "k"}, {}};
    for (int l = 0; l < spec.size(); ++l) {
        dense.header.push_back("l_i=" + std::to_string(l));
    }
    Table density_table{"density", {"z_order", "k_i", "k", "intensity"}, {}};
    Table suppression{"suppression", {"z_order", "rule", "max_suppressed", "max_allowed", "ratio", "pass"}, {}};

    json results = json::array();
    for (double z : cfg.z_values) {
        const GreenMatrix g = green_spectral(basis, z);
        const CorrelationMatrix gamma = correlation(g, input);
        const PhotonDensity density = photon_density(g, input);

        json dense_json = json::array();
        for (int k = 0; k < spec.size(); ++k) {
            std::vector<Cell> drow{z, as_int(k), spec.label(k)};
            json row = json::array();
            for (int l = 0; l < spec.size(); ++l) {
                long_table.rows.push_back({z, as_int(k), as_int(l), spec.label(k), spec.label(l), gamma.gamma(k, l)});
                drow.emplace_back(gamma.gamma(k, l));
                row.push_back(gamma.gamma(k, l));
            }
            dense.rows.push_back(std::move(drow));
            dense_json.push_back(std::move(row));
            density_table.rows.push_back({z, as_int(k), spec.label(k), density.intensities(k)});
        }
        json reports = json::array();
        for (ParityRule rule : {ParityRule::even_suppressed, ParityRule::odd_suppressed}) {
            const auto r = suppression_report(gamma, rule);
            suppression.rows.push_back({z, to_string(rule), r.max_suppressed, r.max_allowed, r.ratio, r.pass});
            reports.push_back(report_json(r));
        }
        const TwoPhotonInput sep{TwoPhotonKind::separable, input.m, input.n};
        const TwoPhotonInput ent{TwoPhotonKind::path_entangled, input.m, input.n};
        const auto rot = rotation_comparison(correlation(g, sep), correlation(g, ent));

        results.push_back({{"z_order", z},
                           {"z_cm", physical_length(spec, z)},
                           {"gamma_total", gamma.total()},
                           {"gamma", dense_json},
                           {"density", std::vector<double>(density.intensities.data(),
                                                           density.intensities.data() + density.intensities.size())},
                           {"density_total", density.total()},
                           {"suppression", reports},
                           {"rotation_check", {{"distance", rot.distance}, {"pass", rot.pass}}}});
    }

    res.document = {{"command", "biphoton"},
                    {"lattice", lattice_json(spec)},
                    {"input",
                     {{"kind", to_string(input.kind)},
                      {"sites", {input.m, input.n}},
                      {"prepared_with_beamsplitter", payload.beamsplitter}}},
                    {"results", std::move(results)}};

    const bool outermost = std::abs(std::abs(input.m) - spec.j()) < 1e-12 && std::abs(input.m + input.n) < 1e-12;
    const bool at_quarter = std::any_of(cfg.z_values.begin(), cfg.z_values.end(), near_quarter);
    if (spec.size() % 2 == 0 && outermost && at_quarter) {
        const auto cal = calibrate_outermost(spec, basis);
        res.document["outermost_calibration"] = {{"constant", cal.constant}, {"max_residual", cal.max_residual}};
        std::ostringstream note;
        note << "outermost-pair closed form calibration constant = " << io::format_double(cal.constant)
             << " (max residual " << io::format_double(cal.max_residual) << ")";
        res.log.push_back(note.str());
    }
    res.tables = {std::move(long_table), std::move(dense), std::move(density_table), std::move(suppression)};
    return res;
}

CommandResult run_continuum(const RunConfig& cfg) {
    const auto& payload = std::get<ContinuumPayload>(cfg.payload);
    const ConvergenceTable table = convergence_study(payload.levels, payload.sizes);

    CommandResult res;
    Table out{"overlaps", {"N", "level", "overlap"}, {}};
    json entries = json::array();
    for (const auto& e : table.entries) {
        out.rows.push_back({as_int(e.sites), as_int(e.level), e.overlap});
        entries.push_back({{"N", e.sites}, {"level", e.level}, {"overlap", e.overlap}});
    }
    res.document = {{"command", "continuum"},
                    {"levels", payload.levels},
                    {"sizes", payload.sizes},
                    {"entries", entries},
                    {"monotone", table.monotone()}};
    res.tables = {std::move(out)};
    return res;
}

CommandResult run(const RunConfig& cfg) {
    switch (cfg.command) {
    case Command::lattice: return run_lattice(cfg);
    case Command::transform: return run_transform(cfg);
    case Command::biphoton: return run_biphoton(cfg);
    case Command::continuum: return run_continuum(cfg);
    }
    throw UsageError("unknown command");
}

std::vector<std::string> csv_paths(const std::string& path, const CommandResult& result) {
    std::vector<std::string> paths{path};
    const std::filesystem::path p(path);
    std::filesystem::path stem = p;
    if (p.extension() == ".csv") {
        stem.replace_extension();
    }
    for (std::size_t t = 1; t < result.tables.size(); ++t) {
        paths.push_back(stem.string() + "." + result.tables[t].name + ".csv");
    }
    return paths;
}

std::vector<std::string> emit(const CommandResult& result, const OutputSpec& output, std::ostream& out) {
    auto open = [](const std::string& path) {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw UsageError("cannot open output file '" + path + "'");
        }
        return f;
    };
    std::vector<std::string> written;
    if (output.format == OutputFormat::json) {
        const std::string text = result.document.dump(2) + "\n";
        if (output.path) {
            auto f = open(*output.path);
            f << text;
            written.push_back(*output.path);
        } else {
            out << text;
        }
        return written;
    }
    if (!output.path) {
        io::write_csv(out, result.tables.front());
        return written;
    }
    const auto paths = csv_paths(*output.path, result);
    for (std::size_t t = 0; t < paths.size(); ++t) {
        auto f = open(paths[t]);
        io::write_csv(f, result.tables[t]);
        written.push_back(paths[t]);
    }
    return written;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Jx-lattice discrete fractional Fourier transform toolkit"};
    std::string command;
    std::string config_path;
    std::string out_path;
    std::string format;
    std::string preset;
    app.add_option("command", command, "lattice | transform | biphoton | continuum")
        ->required()
        ->check(CLI::IsMember({"lattice", "transform", "biphoton", "continuum"}));
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_path, "output path (JSON file, or primary CSV table)");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--preset", preset,
                   "built-in scenario: n8 (lattice); fig2a, fig2b, figS1a, figS1b (transform); "
                   "fig4a, fig4b, fig4a-center (biphoton); s2 (continuum)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "dfrft: " << e.what() << "\n" << "run 'dfrft --help' for usage\n";
        return 2;
    }

    try {
        const Command cmd = parse_command(command);
        if (config_path.empty() && preset.empty()) {
            throw UsageError("either --config or --preset is required");
        }
        json doc = preset.empty() ? json::object() : preset_document(cmd, preset);
        if (!config_path.empty()) {
            const json user = load_json_file(config_path);
            if (!user.is_object()) {
                throw ConfigError({"/: config must be a JSON object"});
            }
            if (user.contains("command") && user.at("command") != command) {
                throw ConfigError({"/command: config is for '" + user.at("command").dump() + "' but '" + command +
                                   "' was requested"});
            }
            doc.merge_patch(user);
        }
        doc["command"] = command;

        RunConfig cfg = parse_config(doc);
        if (!out_path.empty()) cfg.output.path = out_path;
        if (!format.empty()) cfg.output.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;

        const CommandResult result = run(cfg);
        for (const auto& line : result.log) {
            err << "dfrft: " << line << "\n";
        }
        emit(result, cfg.output, out);
        return 0;
    } catch (const UsageError& e) {
        err << "dfrft: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "dfrft: invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "dfrft: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        err << "dfrft: numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "dfrft: numeric failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace jxfrft::cli
