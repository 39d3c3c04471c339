#include "wavescope/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wavescope {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ValidationError("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& s, int line, const std::string& key) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) {
            fail(line, "invalid number for " + key + ": '" + s + "'");
        }
        return v;
    } catch (const std::invalid_argument&) {
        fail(line, "invalid number for " + key + ": '" + s + "'");
    } catch (const std::out_of_range&) {
        fail(line, "number out of range for " + key + ": '" + s + "'");
    }
}

int parse_int(const std::string& s, int line, const std::string& key) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        fail(line, "invalid integer for " + key + ": '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    bool saw_alpha0 = false;
    bool saw_formats = false;

    std::istringstream stream(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(stream, raw_line)) {
        ++line_no;
        const size_t hash = raw_line.find('#');
        std::string line = hash == std::string::npos ? raw_line : raw_line.substr(0, hash);
        std::istringstream tokens(line);
        std::string token;
        while (tokens >> token) {
            const size_t eq = token.find('=');
            if (eq == std::string::npos || eq == 0) {
                fail(line_no, "expected key=value, got '" + token + "'");
            }
            const std::string key = token.substr(0, eq);
            const std::string value = token.substr(eq + 1);
            if (value.empty()) {
                fail(line_no, "empty value for key '" + key + "'");
            }
            if (key == "alpha0") {
                config.alpha0 = parse_number(value, line_no, key);
                saw_alpha0 = true;
            } else if (key == "lambda") {
                if (value.rfind("sweep(", 0) == 0 && value.back() == ')') {
                    const auto parts =
                        split(value.substr(6, value.size() - 7), ',');
                    if (parts.size() != 3) {
                        fail(line_no, "sweep expects sweep(lo,hi,steps)");
                    }
                    SweepSpec sw;
                    sw.lo = parse_number(parts[0], line_no, "sweep lo");
                    sw.hi = parse_number(parts[1], line_no, "sweep hi");
                    sw.steps = parse_int(parts[2], line_no, "sweep steps");
                    config.lambda_sweep = sw;
                    config.lambda.reset();
                } else {
                    config.lambda = parse_number(value, line_no, key);
                    config.lambda_sweep.reset();
                }
            } else if (key == "epsilon") {
                config.epsilon = parse_number(value, line_no, key);
            } else if (key == "grid") {
                const auto parts = split(value, 'x');
                if (parts.size() != 2) {
                    fail(line_no, "grid expects NXxNY, e.g. 800x400");
                }
                config.grid_nx = parse_int(parts[0], line_no, "grid nx");
                config.grid_ny = parse_int(parts[1], line_no, "grid ny");
            } else if (key == "formats") {
                config.outputs.clear();
                for (const auto& f : split(value, ',')) {
                    if (f != "svg" && f != "csv" && f != "json") {
                        fail(line_no, "unknown format '" + f + "'");
                    }
                    config.outputs.insert(f);
                }
                saw_formats = true;
            } else if (key == "out_dir") {
                config.out_dir = value;
            } else if (key == "streamline_levels") {
                config.streamline_levels = parse_int(value, line_no, key);
            } else if (key == "amplitude_sign") {
                if (value == "positive") {
                    config.amplitude_sign = AmplitudeSign::Positive;
                } else if (value == "negative") {
                    config.amplitude_sign = AmplitudeSign::Negative;
                } else {
                    fail(line_no, "amplitude_sign must be positive or negative");
                }
            } else if (key == "seeds") {
                // (x,y);(x,y);...
                for (const auto& pair : split(value, ';')) {
                    if (pair.size() < 5 || pair.front() != '(' || pair.back() != ')') {
                        fail(line_no, "seeds expects (x,y);(x,y)");
                    }
                    const auto xy = split(pair.substr(1, pair.size() - 2), ',');
                    if (xy.size() != 2) {
                        fail(line_no, "seeds expects (x,y);(x,y)");
                    }
                    config.seed_overrides.emplace_back(
                        parse_number(xy[0], line_no, "seed x"),
                        parse_number(xy[1], line_no, "seed y"));
                }
            } else {
                fail(line_no, "unknown key '" + key + "'");
            }
        }
    }
    (void)saw_formats;
    if (!saw_alpha0) {
        throw ValidationError("config: missing required key alpha0");
    }
    if (!config.lambda && !config.lambda_sweep) {
        throw ValidationError("config: missing required key lambda");
    }
    validate_config(config);
    return config;
}

void validate_config(const RunConfig& config) {
    if (!std::isfinite(config.alpha0)) {
        throw ValidationError("config: alpha0 must be finite");
    }
    if (config.alpha0 == 0.0) {
        throw ValidationError("config: alpha0 = 0 is constant vorticity, out of scope");
    }
    if (config.epsilon < 0.0 || !std::isfinite(config.epsilon)) {
        throw ValidationError("config: epsilon must be >= 0");
    }
    if (config.grid_nx < 16 || config.grid_ny < 16) {
        throw ValidationError("config: grid must be at least 16x16");
    }
    if (config.outputs.empty()) {
        throw ValidationError("config: outputs must be non-empty");
    }
    if (config.streamline_levels < 1) {
        throw ValidationError("config: streamline_levels must be >= 1");
    }
    if (config.lambda_sweep && config.lambda_sweep->steps < 2) {
        throw ValidationError("config: sweep steps must be >= 2");
    }
}

std::string config_to_text(const RunConfig& config) {
    char buf[128];
    std::string out;
    auto kv = [&](const char* key, const std::string& value) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    };
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    kv("alpha0", num(config.alpha0));
    if (config.lambda_sweep) {
        std::snprintf(buf, sizeof buf, "sweep(%.17g,%.17g,%d)", config.lambda_sweep->lo,
                      config.lambda_sweep->hi, config.lambda_sweep->steps);
        kv("lambda", buf);
    } else if (config.lambda) {
        kv("lambda", num(*config.lambda));
    }
    kv("epsilon", num(config.epsilon));
    std::snprintf(buf, sizeof buf, "%dx%d", config.grid_nx, config.grid_ny);
    kv("grid", buf);
    std::string formats;
    for (const auto& f : config.outputs) {
        if (!formats.empty()) formats += ',';
        formats += f;
    }
    kv("formats", formats);
    kv("out_dir", config.out_dir);
    kv("streamline_levels", std::to_string(config.streamline_levels));
    kv("amplitude_sign", to_string(config.amplitude_sign));
    if (!config.seed_overrides.empty()) {
        std::string seeds;
        for (const auto& [x, y] : config.seed_overrides) {
            if (!seeds.empty()) seeds += ';';
            std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", x, y);
            seeds += buf;
        }
        kv("seeds", seeds);
    }
    return out;
}

} // namespace wavescope
