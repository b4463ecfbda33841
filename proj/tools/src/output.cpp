#include "specgsa/experiment/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <sys/utsname.h>

#include "specgsa/errors.hpp"

#ifndef SPECGSA_VERSION
#define SPECGSA_VERSION "dev"
#endif

namespace specgsa::experiment {

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, std::span<const ScalingRecord> records, bool timings) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.n << ',' << r.d << ',' << format_number(r.gsa_radial.value) << ','
            << format_number(r.gsa_radial.std_error) << ',' << format_number(r.gsa_window.value) << ','
            << format_number(r.gsa_window.std_error) << ',' << format_number(r.q_radial.value) << ','
            << format_number(r.q_radial.std_error) << ',' << format_number(r.upper_bound) << ','
            << format_number(r.scale_ref) << ',' << to_string(r.goodness.verdict) << ',' << r.instance_seed << ','
            << format_number(timings ? r.runtime_seconds : 0.0) << '\n';
    }
}

std::string csv_string(std::span<const ScalingRecord> records, bool timings) {
    std::ostringstream out;
    write_csv(out, records, timings);
    return out.str();
}

namespace {

struct Axis {
    double lo;
    double hi;
    double pixel_lo;
    double pixel_hi;

    double map(double v) const { return pixel_lo + (v - lo) / (hi - lo) * (pixel_hi - pixel_lo); }
};

std::string fmt(double v, int precision = 4) {
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

} // namespace

void write_svg(std::ostream& out, std::span<const ScalingRecord> records) {
    constexpr double width = 640.0;
    constexpr double height = 440.0;
    constexpr double left = 70.0;
    constexpr double right = 20.0;
    constexpr double top = 30.0;
    constexpr double bottom = 50.0;

    out << R"(<?xml version="1.0" encoding="UTF-8"?>)" << '\n';
    out << R"(<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width=")" << width << R"(" height=")" << height
        << R"(" viewBox="0 0 )" << width << ' ' << height << R"(">)" << '\n';
    out << R"(<rect x="0" y="0" width=")" << width << R"(" height=")" << height << R"(" fill="white"/>)" << '\n';
    out << R"(<text x=")" << width / 2 << R"(" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">)"
        << "Gaussian surface area vs n (log-log)</text>\n";

    if (records.empty()) {
        out << R"(<text x=")" << width / 2 << R"(" y=")" << height / 2
            << R"(" text-anchor="middle" font-family="sans-serif" font-size="12">no records</text>)" << '\n';
        out << "</svg>\n";
        return;
    }

    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (const auto& r : records) {
        const double lx = std::log10(static_cast<double>(r.n));
        x_lo = std::min(x_lo, lx);
        x_hi = std::max(x_hi, lx);
        for (double v : {r.gsa_radial.value, r.upper_bound}) {
            if (v > 0.0) {
                y_lo = std::min(y_lo, std::log10(v));
                y_hi = std::max(y_hi, std::log10(v));
            }
        }
    }
    if (x_hi - x_lo < 1e-9) {
        x_lo -= 0.1;
        x_hi += 0.1;
    }
    if (!std::isfinite(y_lo)) {
        y_lo = -1.0;
        y_hi = 1.0;
    }
    const double pad_y = std::max(0.05, 0.08 * (y_hi - y_lo));
    const double pad_x = 0.05 * (x_hi - x_lo);
    const Axis ax{x_lo - pad_x, x_hi + pad_x, left, width - right};
    const Axis ay{y_lo - pad_y, y_hi + pad_y, height - bottom, top};

    out << R"(<g stroke="black" stroke-width="1">)" << '\n';
    out << R"(<line x1=")" << left << R"(" y1=")" << height - bottom << R"(" x2=")" << width - right << R"(" y2=")"
        << height - bottom << R"("/>)" << '\n';
    out << R"(<line x1=")" << left << R"(" y1=")" << top << R"(" x2=")" << left << R"(" y2=")" << height - bottom
        << R"("/>)" << '\n';
    out << "</g>\n";

    out << R"(<g font-family="sans-serif" font-size="10" text-anchor="middle">)" << '\n';
    for (const auto& r : records) {
        const double px = ax.map(std::log10(static_cast<double>(r.n)));
        out << R"(<text x=")" << fmt(px, 6) << R"(" y=")" << height - bottom + 15 << R"(">)" << r.n << "</text>\n";
    }
    out << R"(<text x=")" << (left + width - right) / 2 << R"(" y=")" << height - 12 << R"(">n</text>)" << '\n';
    out << "</g>\n";
    out << R"(<g font-family="sans-serif" font-size="10" text-anchor="end">)" << '\n';
    for (int k = 0; k <= 4; ++k) {
        const double ly = ay.lo + (ay.hi - ay.lo) * k / 4.0;
        out << R"(<text x=")" << left - 5 << R"(" y=")" << fmt(ay.map(ly) + 3, 6) << R"(">)" << fmt(std::pow(10, ly), 3)
            << "</text>\n";
    }
    out << "</g>\n";

    // Upper bound curve.
    out << R"(<polyline fill="none" stroke="#c0392b" stroke-dasharray="6,3" points=")";
    for (const auto& r : records) {
        out << fmt(ax.map(std::log10(static_cast<double>(r.n))), 6) << ',' << fmt(ay.map(std::log10(r.upper_bound)), 6)
            << ' ';
    }
    out << R"("/>)" << '\n';

    if (records.size() >= 3) {
        try {
            const SlopeFit fit = fit_loglog_slope(records);
            auto line_y = [&](double lx) { return (fit.intercept + fit.slope * lx * std::log(10.0)) / std::log(10.0); };
            out << R"(<line stroke="#2c3e50" stroke-width="1.5" x1=")" << fmt(ax.map(x_lo), 6) << R"(" y1=")"
                << fmt(ay.map(line_y(x_lo)), 6) << R"(" x2=")" << fmt(ax.map(x_hi), 6) << R"(" y2=")"
                << fmt(ay.map(line_y(x_hi)), 6) << R"("/>)" << '\n';
            out << R"(<text x=")" << left + 10 << R"(" y=")" << top + 15
                << R"(" font-family="sans-serif" font-size="11">fitted slope )" << fmt(fit.slope, 4) << " &#177; "
                << fmt(fit.halfwidth, 2) << "</text>\n";
        } catch (const InvalidParameter&) {
            // Non-positive estimates: no fit line.
        }
    }

    out << R"(<g fill="#2980b9">)" << '\n';
    for (const auto& r : records) {
        if (r.gsa_radial.value > 0.0) {
            out << R"(<circle r="4" cx=")" << fmt(ax.map(std::log10(static_cast<double>(r.n))), 6) << R"(" cy=")"
                << fmt(ay.map(std::log10(r.gsa_radial.value)), 6) << R"("/>)" << '\n';
        }
    }
    out << "</g>\n";
    out << R"(<text x=")" << width - right - 5 << R"(" y=")" << top + 15
        << R"(" font-family="sans-serif" font-size="11" text-anchor="end" fill="#c0392b">2&#8730;n/&#8730;(&#960;d))"
        << "</text>\n";
    out << "</svg>\n";
}

std::string tool_version() { return SPECGSA_VERSION; }

std::string host_fingerprint() {
    utsname info{};
    std::string out;
    if (uname(&info) == 0) {
        out = std::string(info.sysname) + "-" + info.machine;
    } else {
        out = "unknown";
    }
    return out + "-" + std::to_string(std::thread::hardware_concurrency()) + "cpu";
}

void write_manifest(std::ostream& out, const Manifest& m) {
    out << "# specgsa run manifest; loadable with --config to reproduce this run\n";
    out << config_to_text(m.config);
    out << "manifest.tool_version = " << m.tool_version << '\n';
    out << "manifest.master_seed = " << m.config.seed << '\n';
    out << "manifest.wall_clock_s = " << format_number(m.wall_clock_seconds) << '\n';
    out << "manifest.host = " << m.host << '\n';
    out << "manifest.records = " << m.records.size() << '\n';
    for (std::size_t i = 0; i < m.records.size(); ++i) {
        const auto& r = m.records[i];
        const std::string p = "record." + std::to_string(i) + ".";
        out << p << "n = " << r.n << '\n';
        out << p << "d = " << r.d << '\n';
        out << p << "instance_seed = " << r.instance_seed << '\n';
        out << p << "sample_seed = " << sample_seed_for(r.instance_seed) << '\n';
        if (r.rejected_seed != 0) {
            out << p << "rejected_seed = " << r.rejected_seed << '\n';
        }
        out << p << "goodness = " << to_string(r.goodness.verdict) << '\n';
        out << p << "goodness_min_norm = " << format_number(r.goodness.min_norm) << '\n';
        out << p << "goodness_max_norm = " << format_number(r.goodness.max_norm) << '\n';
        out << p << "window = " << format_number(r.window) << '\n';
        out << p << "skipped = " << r.gsa_radial.skipped << '\n';
        out << p << "runtime_s = " << format_number(r.runtime_seconds) << '\n';
    }
}

OutputPaths OutputPaths::in_directory(const std::filesystem::path& dir) {
    return {dir / "scaling.csv", dir / "scaling.svg", dir / "manifest.txt"};
}

namespace {

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    writer(out);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

} // namespace

void emit_outputs(std::span<const ScalingRecord> records, const Manifest& manifest, const OutputPaths& paths) {
    for (const auto* p : {&paths.csv, &paths.svg, &paths.manifest}) {
        if (p->has_parent_path()) {
            std::error_code ec;
            std::filesystem::create_directories(p->parent_path(), ec);
            if (ec) {
                throw IoError("cannot create directory '" + p->parent_path().string() + "': " + ec.message());
            }
        }
    }
    write_file(paths.csv, [&](std::ostream& out) { write_csv(out, records, manifest.config.timings); });
    write_file(paths.svg, [&](std::ostream& out) { write_svg(out, records); });
    write_file(paths.manifest, [&](std::ostream& out) { write_manifest(out, manifest); });
}

} // namespace specgsa::experiment
