#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "specgsa/experiment/config.hpp"
#include "specgsa/experiment/scaling.hpp"

namespace specgsa::experiment {

inline constexpr const char* kCsvHeader =
    "n,d,gsa_radial,gsa_radial_se,gsa_window,gsa_window_se,q_radial,q_radial_se,upper_bound,scale_ref,goodness,seed,"
    "runtime_s";

/// Shortest round-trip decimal, locale independent.
std::string format_number(double value);

void write_csv(std::ostream& out, std::span<const ScalingRecord> records, bool timings);
std::string csv_string(std::span<const ScalingRecord> records, bool timings);

/// Log-log plot of gsa_radial against n with the fitted slope line (when at
/// least three records exist) and the 2 sqrt(n)/sqrt(pi d) bound.
void write_svg(std::ostream& out, std::span<const ScalingRecord> records);

struct Manifest {
    std::string tool_version;
    ExperimentConfig config;
    std::vector<ScalingRecord> records;
    double wall_clock_seconds = 0.0;
    std::string host;
};

std::string tool_version();
std::string host_fingerprint();

/// Manifest text is itself a loadable config: the config echo comes first,
/// run metadata follows under `manifest.` and `record.` keys.
void write_manifest(std::ostream& out, const Manifest& manifest);

struct OutputPaths {
    std::filesystem::path csv;
    std::filesystem::path svg;
    std::filesystem::path manifest;

    static OutputPaths in_directory(const std::filesystem::path& dir);
};

/// Throws IoError naming the path that could not be written.
void emit_outputs(std::span<const ScalingRecord> records, const Manifest& manifest, const OutputPaths& paths);

} // namespace specgsa::experiment
