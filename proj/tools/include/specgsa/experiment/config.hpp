#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace specgsa::experiment {

/// How d is chosen for each n: a fixed value, or round(n^(3/4) / k) clamped to >= 2.
struct DRule {
    enum class Kind { fixed, proportional };
    Kind kind = Kind::proportional;
    std::size_t fixed_d = 8;
    double k = 8.0;

    std::size_t d_for(std::size_t n) const;
    std::string to_text() const;
    /// "fixed:<d>" or "proportional:<k>".
    static DRule parse(std::string_view text);
};

struct ExperimentConfig {
    std::string mode = "scaling";
    std::vector<std::size_t> n_values{64, 128, 256, 512, 1024};
    DRule d_rule;
    std::size_t samples = 100'000;
    std::uint64_t seed = 1;
    std::optional<double> window;
    unsigned workers = 1;
    std::size_t probes = 2'000;
    std::size_t restarts = 5;
    /// Write measured runtimes into the CSV (breaks byte-for-byte reruns).
    bool timings = false;
    std::string out_dir = "out";
    /// verify: replace the sandwich instance with an all-zero family.
    bool inject_zero_family = false;
};

/// Flat `key = value` text; `#` starts a comment. Keys under `manifest.` and
/// `record.` are informational and ignored, any other unknown key is an error.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
/// Applies a single key = value assignment (used for files and CLI overrides).
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);
std::string config_to_text(const ExperimentConfig& config);

/// The (n, d) grid in ascending n then d, deduplicated. Throws
/// InvalidParameter when some pair has d < 1 or n/d < 4; pairs with
/// n/d < 16 produce a warning.
struct GridPlan {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::string> warnings;
};
GridPlan plan_grid(const ExperimentConfig& config);

} // namespace specgsa::experiment
