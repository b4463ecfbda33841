#include "specgsa/experiment/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "specgsa/errors.hpp"

namespace specgsa::experiment {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InvalidParameter("config: cannot parse '" + std::string(text) + "' for key '" + std::string(key) + "'");
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw InvalidParameter("config: '" + std::string(key) + "' expects true/false, got '" + std::string(text) + "'");
}

std::string join_sizes(const std::vector<std::size_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += std::to_string(values[i]);
    }
    return out;
}

std::string number_text(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

std::size_t DRule::d_for(std::size_t n) const {
    if (kind == Kind::fixed) {
        return fixed_d;
    }
    const double raw = std::pow(static_cast<double>(n), 0.75) / k;
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(raw)));
}

std::string DRule::to_text() const {
    return kind == Kind::fixed ? "fixed:" + std::to_string(fixed_d) : "proportional:" + number_text(k);
}

DRule DRule::parse(std::string_view text) {
    const auto colon = text.find(':');
    const auto kind = trim(text.substr(0, colon));
    const auto arg = colon == std::string_view::npos ? std::string_view{} : trim(text.substr(colon + 1));
    DRule rule;
    if (kind == "fixed") {
        rule.kind = Kind::fixed;
        if (!arg.empty()) {
            rule.fixed_d = parse_number<std::size_t>("d_rule", arg);
        }
        if (rule.fixed_d == 0) {
            throw InvalidParameter("config: fixed d must be at least 1");
        }
    } else if (kind == "proportional") {
        rule.kind = Kind::proportional;
        if (!arg.empty()) {
            rule.k = parse_number<double>("d_rule", arg);
        }
        if (!(rule.k > 0.0)) {
            throw InvalidParameter("config: proportional k must be positive");
        }
    } else {
        throw InvalidParameter("config: d_rule must be fixed:<d> or proportional:<k>, got '" + std::string(text) +
                               "'");
    }
    return rule;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key.starts_with("manifest.") || key.starts_with("record.")) {
        return;
    }
    if (key == "mode") {
        c.mode = std::string(value);
    } else if (key == "n_values") {
        c.n_values.clear();
        std::string_view rest = value;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto item = trim(rest.substr(0, comma));
            if (!item.empty()) {
                c.n_values.push_back(parse_number<std::size_t>(key, item));
            }
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
    } else if (key == "d_rule") {
        c.d_rule = DRule::parse(value);
    } else if (key == "samples") {
        c.samples = parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
        c.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "window") {
        if (value.empty() || value == "auto") {
            c.window.reset();
        } else {
            c.window = parse_number<double>(key, value);
        }
    } else if (key == "workers") {
        c.workers = parse_number<unsigned>(key, value);
    } else if (key == "probes") {
        c.probes = parse_number<std::size_t>(key, value);
    } else if (key == "restarts") {
        c.restarts = parse_number<std::size_t>(key, value);
    } else if (key == "timings") {
        c.timings = parse_bool(key, value);
    } else if (key == "out") {
        c.out_dir = std::string(value);
    } else if (key == "inject_zero_family") {
        c.inject_zero_family = parse_bool(key, value);
    } else {
        throw InvalidParameter("config: unknown key '" + std::string(key) + "'");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig config;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidParameter("config line " + std::to_string(line_no) + ": expected key = value");
        }
        apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string config_to_text(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "mode = " << c.mode << '\n';
    out << "n_values = " << join_sizes(c.n_values) << '\n';
    out << "d_rule = " << c.d_rule.to_text() << '\n';
    out << "samples = " << c.samples << '\n';
    out << "seed = " << c.seed << '\n';
    out << "window = " << (c.window ? number_text(*c.window) : std::string("auto")) << '\n';
    out << "workers = " << c.workers << '\n';
    out << "probes = " << c.probes << '\n';
    out << "restarts = " << c.restarts << '\n';
    out << "timings = " << (c.timings ? "true" : "false") << '\n';
    out << "out = " << c.out_dir << '\n';
    out << "inject_zero_family = " << (c.inject_zero_family ? "true" : "false") << '\n';
    return out.str();
}

GridPlan plan_grid(const ExperimentConfig& config) {
    GridPlan plan;
    for (std::size_t n : config.n_values) {
        const std::size_t d = config.d_rule.d_for(n);
        if (n == 0 || d == 0) {
            throw InvalidParameter("grid: n and d must be at least 1");
        }
        if (n < 4 * d) {
            throw InvalidParameter("grid: (n, d) = (" + std::to_string(n) + ", " + std::to_string(d) +
                                   ") violates n/d >= 4");
        }
        if (n < 16 * d) {
            plan.warnings.push_back("(n, d) = (" + std::to_string(n) + ", " + std::to_string(d) +
                                    ") has n/d < 16, outside the safe regime");
        }
        plan.pairs.emplace_back(n, d);
    }
    std::sort(plan.pairs.begin(), plan.pairs.end());
    plan.pairs.erase(std::unique(plan.pairs.begin(), plan.pairs.end()), plan.pairs.end());
    return plan;
}

} // namespace specgsa::experiment
