#pragma once

#include "jxfrft/biphoton.hpp"
#include "jxfrft/errors.hpp"
#include "jxfrft/lattice.hpp"
#include "jxfrft/transform.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace jxfrft::cli {

using json = nlohmann::ordered_json;

enum class Command { lattice, transform, biphoton, continuum };
enum class OutputFormat { json, csv };

/// Config failed validation; carries one diagnostic per problem.
class ConfigError : public UsageError {
public:
    explicit ConfigError(std::vector<std::string> diagnostics);
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    std::vector<std::string> diagnostics_;
};

struct LatticePayload {};

struct TransformPayload {
    InputProfileSpec profile;
    bool overlay = false;
    /// Site-to-continuum scale x = m / scale; default gamma^{1/4}.
    std::optional<double> overlay_scale;
};

struct BiphotonPayload {
    TwoPhotonInput input;
    /// Prepare the pair with a 50:50 coupler (separable -> path-entangled).
    bool beamsplitter = false;
};

struct ContinuumPayload {
    std::vector<int> levels{0, 1, 2, 3, 4};
    std::vector<int> sizes{21, 41, 81, 161};
};

using Payload = std::variant<LatticePayload, TransformPayload, BiphotonPayload, ContinuumPayload>;

struct OutputSpec {
    std::optional<std::string> path;
    OutputFormat format = OutputFormat::json;
};

struct RunConfig {
    Command command = Command::lattice;
    std::optional<LatticeSpec> lattice;
    Payload payload;
    /// Transform orders Z (already converted from cm where given that way).
    std::vector<double> z_values;
    OutputSpec output;
};

/// z = Z / kappa0, in cm.
double physical_length(const LatticeSpec& spec, double order);

/// Parses a real given either as a JSON number or as a string like "pi/2",
/// "3pi/4", "-pi", "0.25" (exact multiples of pi for reproducible orders).
double parse_real(const json& value, const std::string& where);

Command parse_command(const std::string& name);
std::string to_string(Command command);

/// Validates and converts a config document.
RunConfig parse_config(const json& doc);

json load_json_file(const std::string& path);

/// Names of built-in presets for a command.
std::vector<std::string> preset_names(Command command);

/// Base document for a preset; throws UsageError for unknown names.
json preset_document(Command command, const std::string& name);

} // namespace jxfrft::cli
