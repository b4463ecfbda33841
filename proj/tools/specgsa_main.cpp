// specgsa: command-line front end for random-spectrahedron GSA experiments.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#ifdef SPECGSA_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "specgsa/errors.hpp"
#include "specgsa/estimators.hpp"
#include "specgsa/experiment/config.hpp"
#include "specgsa/experiment/output.hpp"
#include "specgsa/experiment/scaling.hpp"
#include "specgsa/experiment/verify.hpp"

namespace ex = specgsa::experiment;

namespace {

/// Shared flags; anything given on the command line overrides the config file.
struct CommonFlags {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;

    void add(CLI::App* app, bool with_grid) {
        app->add_option("--config", config_path, "key = value config file (flags win)");
        add_override(app, "--seed", "seed", "master seed");
        add_override(app, "--samples", "samples", "Monte Carlo samples per estimator");
        add_override(app, "--window", "window", "window width for window estimators (default: auto)");
        add_override(app, "--workers", "workers", "worker threads; never changes results");
        add_override(app, "--out", "out", "output directory");
        add_override(app, "--probes", "probes", "goodness sphere probes");
        add_override(app, "--restarts", "restarts", "goodness optimizer restarts per direction");
        if (with_grid) {
            add_override(app, "--n-values", "n_values", "comma-separated n grid");
            add_override(app, "--d-rule", "d_rule", "fixed:<d> or proportional:<k>");
        }
    }

    void add_override(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(
            flag, [this, key](const std::string& v) { overrides.emplace_back(key, v); }, help);
    }

    ex::ExperimentConfig resolve(const std::string& mode) const {
        ex::ExperimentConfig config = config_path.empty() ? ex::ExperimentConfig{} : ex::load_config(config_path);
        config.mode = mode;
        for (const auto& [k, v] : overrides) {
            ex::apply_setting(config, k, v);
        }
        return config;
    }
};

void print_estimate(const char* label, const specgsa::Estimate& e) {
    std::cout << label << " = " << ex::format_number(e.value) << " +- " << ex::format_number(e.std_error)
              << "  (m = " << e.samples << ", skipped = " << e.skipped << ", " << specgsa::to_string(e.method);
    if (e.window) {
        std::cout << ", window = " << ex::format_number(*e.window);
    }
    std::cout << ")\n";
}

int run_gen(std::size_t n, std::size_t d, std::uint64_t seed, std::optional<double> threshold,
            const std::string& path) {
    specgsa::Spectrahedron s = specgsa::instance_from_seed(seed, n, d);
    if (threshold) {
        s = specgsa::Spectrahedron(s.family(), *threshold);
    }
    specgsa::save_instance(path, s);
    std::cout << "wrote " << path << " (n = " << n << ", d = " << d << ", threshold = "
              << ex::format_number(s.threshold()) << ")\n";
    return 0;
}

int run_gsa(const ex::ExperimentConfig& config, const std::string& instance_path, std::size_t n, std::size_t d) {
    const specgsa::Spectrahedron s = instance_path.empty() ? specgsa::instance_from_seed(config.seed, n, d)
                                                           : specgsa::load_instance(instance_path);
    std::cout << "instance: n = " << s.n() << ", d = " << s.d() << ", threshold = " << ex::format_number(s.threshold())
              << '\n';
    auto stream = specgsa::make_stream(config.seed, specgsa::kInstanceStreamId - 1);
    const auto g = specgsa::goodness_probe(s, stream, config.probes, config.restarts);
    std::cout << "goodness: " << specgsa::to_string(g.verdict) << " (min |W_v| = " << ex::format_number(g.min_norm)
              << ", max |W_v| = " << ex::format_number(g.max_norm) << ", band [" << ex::format_number(0.5 * std::sqrt(s.n()))
              << ", " << ex::format_number(2.0 * std::sqrt(s.n())) << "])\n";
    const std::uint64_t seed = ex::sample_seed_for(config.seed);
    const auto radial = specgsa::estimate_radial(s, config.samples, seed, config.workers);
    print_estimate("q_radial", radial.q);
    print_estimate("gsa_radial", radial.gsa);
    if (config.samples >= specgsa::kMinWindowSamples) {
        const auto sweep = specgsa::estimate_gsa_window_sweep(s, config.samples, config.window, seed, config.workers);
        print_estimate("gsa_window(w/2)", sweep.half);
        print_estimate("gsa_window(w)", sweep.base);
        print_estimate("gsa_window(2w)", sweep.twice);
    }
    const double q_bound = 1.0 / (2.0 * std::sqrt(std::numbers::pi * static_cast<double>(s.d())));
    std::cout << "q upper bound 1/(2 sqrt(pi d)) = " << ex::format_number(q_bound) << '\n';
    std::cout << "gsa upper bound 2 sqrt(n)/sqrt(pi d) = " << ex::format_number(ex::gsa_upper_bound(s.n(), s.d()))
              << '\n';
    return 0;
}

int run_scaling_cmd(const ex::ExperimentConfig& config) {
    const auto plan = ex::plan_grid(config);
    for (const auto& w : plan.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    const auto start = std::chrono::steady_clock::now();
    const auto records = ex::run_scaling(config);
    ex::Manifest manifest{ex::tool_version(), config, records,
                          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(),
                          ex::host_fingerprint()};
    const auto paths = ex::OutputPaths::in_directory(config.out_dir);
    ex::emit_outputs(records, manifest, paths);
    std::cout << ex::csv_string(records, config.timings);
    if (records.size() >= 3) {
        const auto fit = ex::fit_loglog_slope(records);
        std::cout << "log-log slope of gsa_radial vs n: " << ex::format_number(fit.slope) << " +- "
                  << ex::format_number(fit.halfwidth) << " (95%)\n";
    }
    std::cout << "wrote " << paths.csv.string() << ", " << paths.svg.string() << ", " << paths.manifest.string()
              << '\n';
    return 0;
}

int run_verify_cmd(const ex::ExperimentConfig& config) {
    const auto report = ex::run_verify_suite(config);
    std::cout << ex::format_report(report);
    return report.all_passed() ? 0 : 1;
}

int run_net(std::size_t d, double eps, std::size_t probes, std::uint64_t seed, const std::string& out) {
    const auto net = specgsa::epsilon_net(d, eps);
    auto stream = specgsa::make_stream(seed, 0);
    const auto cov = specgsa::probe_net_coverage(net, eps, stream, probes);
    const double bound = std::pow(3.0 / eps, static_cast<double>(d));
    std::cout << "net size " << net.size() << " (bound (3/eps)^d = " << ex::format_number(bound) << ")\n";
    std::cout << "coverage " << cov.covered << '/' << cov.probes << " probes within eps, max distance "
              << ex::format_number(cov.max_distance) << '\n';
    if (!out.empty()) {
        std::ofstream file(out);
        if (!file) {
            throw specgsa::IoError("cannot open '" + out + "' for writing");
        }
        for (const auto& p : net) {
            for (std::size_t i = 0; i < p.size(); ++i) {
                file << (i ? "," : "") << ex::format_number(p[i]);
            }
            file << '\n';
        }
    }
    return net.size() <= bound && cov.covered == cov.probes ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random spectrahedra: Gaussian surface area estimation and checks"};
    app.set_version_flag("--version", ex::tool_version());
    app.require_subcommand(1);

    std::size_t n = 64;
    std::size_t d = 4;
    std::uint64_t seed = 1;
    std::optional<double> threshold;
    std::string path;

    auto* gen = app.add_subcommand("gen", "draw a GOE family and freeze it to a snapshot");
    gen->add_option("--n", n, "number of matrices")->required();
    gen->add_option("--d", d, "matrix dimension")->required();
    gen->add_option("--seed", seed, "instance seed");
    gen->add_option("--threshold", threshold, "threshold t (default 2 sqrt(n d))");
    gen->add_option("--out", path, "snapshot path")->required();

    CommonFlags gsa_flags;
    std::string instance_path;
    auto* gsa = app.add_subcommand("gsa", "estimate q(t) and GSA on one instance");
    gsa_flags.add(gsa, false);
    gsa->add_option("--instance", instance_path, "snapshot written by `gen`");
    gsa->add_option("--n", n, "n when drawing from --seed");
    gsa->add_option("--d", d, "d when drawing from --seed");

    CommonFlags scaling_flags;
    auto* scaling = app.add_subcommand("scaling", "GSA across an (n, d) grid; writes CSV, SVG and manifest");
    scaling_flags.add(scaling, true);
    scaling->add_flag_function(
        "--timings", [&](std::int64_t) { scaling_flags.overrides.emplace_back("timings", "true"); },
        "record measured runtimes in the CSV");

    CommonFlags verify_flags;
    auto* verify = app.add_subcommand("verify", "run the supporting-fact check suite");
    verify_flags.add(verify, false);
    verify->add_flag_function(
        "--inject-zero-family", [&](std::int64_t) { verify_flags.overrides.emplace_back("inject_zero_family", "true"); },
        "use an all-zero family for the goodness/sandwich stage");

    double eps = 0.3;
    std::size_t net_probes = 10'000;
    std::string net_out;
    auto* net = app.add_subcommand("net", "greedy epsilon-net of the sphere S^(d-1)");
    net->add_option("--d", d, "sphere dimension d (S^(d-1) in R^d)")->required();
    net->add_option("--eps", eps, "net radius in (0, 1/2]")->required();
    net->add_option("--probes", net_probes, "random coverage probes");
    net->add_option("--seed", seed, "probe seed");
    net->add_option("--out", net_out, "write net points as CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            return run_gen(n, d, seed, threshold, path);
        }
        if (*gsa) {
            return run_gsa(gsa_flags.resolve("gsa"), instance_path, n, d);
        }
        if (*scaling) {
            return run_scaling_cmd(scaling_flags.resolve("scaling"));
        }
        if (*verify) {
            return run_verify_cmd(verify_flags.resolve("verify"));
        }
        if (*net) {
            return run_net(d, eps, net_probes, seed, net_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
