#include "wavescope/document.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace wavescope {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PortraitDocument run_portrait(const RunConfig& config) {
    validate_config(config);
    if (!config.lambda) {
        throw ValidationError("run_portrait: config must carry a single lambda");
    }
    PortraitDocument doc;
    doc.config = config;

    const WaveParameters params = WaveParameters::make(
        config.alpha0, *config.lambda, config.epsilon, config.amplitude_sign);
    const HamiltonianField field(params);

    doc.wave_class = to_string(params.wave_class());
    doc.theta0 = params.theta0();
    doc.theta1 = params.theta1();
    doc.amplitude = params.amplitude();
    doc.admissibility = to_string(params.admissibility());
    if (params.admissibility() == LambdaAdmissibility::PositivityOnly) {
        doc.warnings.push_back(
            "lambda outside the stated bifurcation interval (positivity only)");
    }

    doc.layers = decompose_layers(field);
    doc.stagnation = stagnation_levels(params);

    const double eps = params.epsilon();
    const double y_top = 1.0 + 2.0 * eps;

    // 0-isoclines: vertical lines X = -pi, 0, pi and horizontal lines at
    // the zeros of G in [0, 1].
    for (double x : {-kPi, 0.0, kPi}) {
        IsoclineBranch b;
        b.kind = IsoclineKind::ZeroVertical;
        b.anchor_level = x;
        b.samples = {{x, 0.0}, {x, y_top}};
        doc.isoclines.push_back(std::move(b));
    }
    {
        std::vector<double> levels{0.0};
        if (params.wave_class() == WaveClass::W1) {
            for (int m = 1;; ++m) {
                const double y = m * kPi / params.theta1();
                if (y > y_top) break;
                levels.push_back(y);
            }
        }
        for (double y : levels) {
            IsoclineBranch b;
            b.kind = IsoclineKind::ZeroHorizontal;
            b.anchor_level = y;
            b.samples = {{-kPi, y}, {kPi, y}};
            doc.isoclines.push_back(std::move(b));
        }
    }

    // Infinity isoclines: one traced branch per stagnation level.
    for (const auto& level : doc.stagnation) {
        if (eps == 0.0) {
            IsoclineBranch b;
            b.kind = IsoclineKind::Infinity;
            b.anchor_level = level.y0;
            b.samples = {{-kPi, level.y0}, {kPi, level.y0}};
            doc.isoclines.push_back(std::move(b));
            continue;
        }
        try {
            auto b = trace_infinity_isocline(field, level.y0);
            if (b.crosses_bed) {
                doc.warnings.push_back(
                    "infinity isocline crosses the flat bed; clipped to Y >= 0 when rendered");
            }
            doc.isoclines.push_back(std::move(b));
        } catch (const NumericalError& e) {
            doc.warnings.push_back(std::string("isocline tracing failed: ") + e.what());
        }
    }

    // Critical points.
    auto set = find_critical_points(field);
    doc.critical_points = std::move(set.points);
    for (auto& w : set.warnings) {
        doc.warnings.push_back(std::move(w));
    }
    if (eps == 0.0) {
        // find_critical_points already warned; make the laminar case explicit.
        doc.warnings.push_back("laminar flow; no critical points isolated");
    }

    // Seed overrides: extra Newton starts requested by the user.
    for (const auto& [sx, sy] : config.seed_overrides) {
        try {
            const auto r = num::newton_2d(
                [&](num::Vec2 q) { return field.velocity(q.x, q.y); },
                [&](num::Vec2 q) { return field.velocity_jacobian(q.x, q.y); },
                {sx, sy}, 1e-12, 50);
            bool known = false;
            for (const auto& cp : doc.critical_points) {
                double dx = std::abs(cp.x - r.p.x);
                dx = std::min(dx, 2.0 * kPi - dx);
                if (dx < 1e-8 && std::abs(cp.y - r.p.y) < 1e-8) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                CriticalPoint cp;
                cp.x = r.p.x;
                cp.y = r.p.y;
                cp.hessian = field.hessian(cp.x, cp.y);
                const double det = cp.hessian.det();
                cp.kind = std::abs(det) < 1e-12 ? CriticalKind::Degenerate
                          : det < 0.0           ? CriticalKind::Saddle
                                                : CriticalKind::Center;
                cp.provenance = CriticalProvenance::InfinityIsoclineAtNPi;
                doc.critical_points.push_back(cp);
            }
        } catch (const NumericalError&) {
            doc.warnings.push_back("seed override did not converge");
        }
    }

    // Streamlines as H-level contours. Levels: critical-point H values
    // (separatrices) plus a uniform fill.
    {
        num::Grid2D grid;
        grid.nx = config.grid_nx;
        grid.ny = config.grid_ny;
        grid.x0 = -kPi;
        grid.y0 = 0.0;
        grid.dx = 2.0 * kPi / (grid.nx - 1);
        grid.dy = y_top / (grid.ny - 1);
        grid.values.resize(static_cast<size_t>(grid.nx) * grid.ny);
        double h_min = 0.0, h_max = 0.0;
        for (int j = 0; j < grid.ny; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                const double h = field.hamiltonian(grid.x(i), grid.y(j));
                grid.values[static_cast<size_t>(j) * grid.nx + i] = h;
                if (i == 0 && j == 0) {
                    h_min = h_max = h;
                } else {
                    h_min = std::min(h_min, h);
                    h_max = std::max(h_max, h);
                }
            }
        }
        std::vector<std::pair<double, bool>> levels; // (level, separatrix)
        for (const auto& cp : doc.critical_points) {
            levels.emplace_back(field.hamiltonian(cp.x, cp.y), true);
        }
        for (int k = 1; k <= config.streamline_levels; ++k) {
            levels.emplace_back(h_min + (h_max - h_min) * k / (config.streamline_levels + 1.0),
                                false);
        }
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end(),
                                 [](const auto& a, const auto& b) {
                                     return std::abs(a.first - b.first) < 1e-14;
                                 }),
                     levels.end());
        for (const auto& [level, separatrix] : levels) {
            auto contour = num::marching_squares(grid, level);
            PortraitDocument::StreamlineLevel sl;
            sl.level = level;
            sl.separatrix = separatrix;
            sl.polylines = std::move(contour.polylines);
            doc.streamlines.push_back(std::move(sl));
        }
    }

    // Surface curve amplitude from the kinematic condition V = U eta_X at
    // Y = 1 (first order): eta_hat = -G(1) / U0(1).
    {
        const double u0_surface = params.background_current(1.0);
        if (std::abs(u0_surface) < 1e-8) {
            doc.surface_eta_hat = 0.0;
            doc.warnings.push_back("surface amplitude undefined (U0(1) ~ 0); drawn flat");
        } else {
            doc.surface_eta_hat = -params.shape(1.0) / u0_surface;
        }
    }

    // Speed heat map, coarse raster.
    {
        doc.heat_nx = std::min(config.grid_nx, 160);
        doc.heat_ny = std::min(config.grid_ny, 80);
        doc.speed.resize(static_cast<size_t>(doc.heat_nx) * doc.heat_ny);
        for (int j = 0; j < doc.heat_ny; ++j) {
            for (int i = 0; i < doc.heat_nx; ++i) {
                const double x = -kPi + 2.0 * kPi * (i + 0.5) / doc.heat_nx;
                const double y = y_top * (j + 0.5) / doc.heat_ny;
                doc.speed[static_cast<size_t>(j) * doc.heat_nx + i] =
                    num::norm(field.velocity(x, y));
            }
        }
    }

    return doc;
}

namespace {

using json = nlohmann::ordered_json;

json vec2_list(const std::vector<num::Vec2>& pts) {
    json arr = json::array();
    for (const auto& p : pts) {
        arr.push_back(json::array({p.x, p.y}));
    }
    return arr;
}

std::vector<num::Vec2> vec2_list_from(const json& arr) {
    std::vector<num::Vec2> pts;
    pts.reserve(arr.size());
    for (const auto& p : arr) {
        pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    return pts;
}

json config_json(const RunConfig& c) {
    json j;
    j["alpha0"] = c.alpha0;
    if (c.lambda_sweep) {
        j["lambda_sweep"] = {{"lo", c.lambda_sweep->lo},
                             {"hi", c.lambda_sweep->hi},
                             {"steps", c.lambda_sweep->steps}};
    } else {
        j["lambda"] = c.lambda.value_or(0.0);
    }
    j["epsilon"] = c.epsilon;
    j["grid"] = {c.grid_nx, c.grid_ny};
    j["formats"] = c.outputs;
    j["out_dir"] = c.out_dir;
    j["streamline_levels"] = c.streamline_levels;
    j["amplitude_sign"] = to_string(c.amplitude_sign);
    json seeds = json::array();
    for (const auto& [x, y] : c.seed_overrides) {
        seeds.push_back(json::array({x, y}));
    }
    j["seeds"] = seeds;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.alpha0 = j.at("alpha0").get<double>();
    if (j.contains("lambda_sweep")) {
        SweepSpec sw;
        sw.lo = j["lambda_sweep"].at("lo").get<double>();
        sw.hi = j["lambda_sweep"].at("hi").get<double>();
        sw.steps = j["lambda_sweep"].at("steps").get<int>();
        c.lambda_sweep = sw;
    } else {
        c.lambda = j.at("lambda").get<double>();
    }
    c.epsilon = j.at("epsilon").get<double>();
    c.grid_nx = j.at("grid").at(0).get<int>();
    c.grid_ny = j.at("grid").at(1).get<int>();
    c.outputs = j.at("formats").get<std::set<std::string>>();
    c.out_dir = j.at("out_dir").get<std::string>();
    c.streamline_levels = j.at("streamline_levels").get<int>();
    c.amplitude_sign = j.at("amplitude_sign").get<std::string>() == "negative"
                           ? AmplitudeSign::Negative
                           : AmplitudeSign::Positive;
    for (const auto& s : j.at("seeds")) {
        c.seed_overrides.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
    }
    return c;
}

} // namespace

nlohmann::ordered_json document_to_json(const PortraitDocument& doc) {
    json j;
    j["schema"] = "wavescope-portrait/1";
    j["config"] = config_json(doc.config);
    j["wave_class"] = doc.wave_class;
    j["theta0"] = doc.theta0;
    j["theta1"] = doc.theta1;
    j["amplitude"] = doc.amplitude;
    j["admissibility"] = doc.admissibility;

    json layers = json::array();
    for (const auto& l : doc.layers) {
        layers.push_back(json::array({l.y_low, l.y_high}));
    }
    j["layers"] = layers;

    json stag = json::array();
    for (const auto& s : doc.stagnation) {
        stag.push_back({{"y0", s.y0},
                        {"lambda", s.lambda},
                        {"index", s.multiplicity_index},
                        {"feasible", s.feasible}});
    }
    j["stagnation"] = stag;

    json cps = json::array();
    for (const auto& cp : doc.critical_points) {
        cps.push_back({{"x", cp.x},
                       {"y", cp.y},
                       {"kind", to_string(cp.kind)},
                       {"provenance", to_string(cp.provenance)},
                       {"hessian", json::array({cp.hessian.xx, cp.hessian.xy,
                                                cp.hessian.yx, cp.hessian.yy})}});
    }
    j["critical_points"] = cps;

    json isos = json::array();
    for (const auto& b : doc.isoclines) {
        isos.push_back({{"kind", to_string(b.kind)},
                        {"anchor_level", b.anchor_level},
                        {"max_deviation", b.max_deviation},
                        {"crosses_bed", b.crosses_bed},
                        {"samples", vec2_list(b.samples)}});
    }
    j["isoclines"] = isos;

    json sls = json::array();
    for (const auto& sl : doc.streamlines) {
        json polys = json::array();
        for (const auto& p : sl.polylines) {
            polys.push_back(vec2_list(p));
        }
        sls.push_back({{"level", sl.level},
                       {"separatrix", sl.separatrix},
                       {"polylines", polys}});
    }
    j["streamlines"] = sls;

    j["surface_eta_hat"] = doc.surface_eta_hat;
    j["heat_nx"] = doc.heat_nx;
    j["heat_ny"] = doc.heat_ny;
    j["speed"] = doc.speed;
    j["warnings"] = doc.warnings;
    return j;
}

PortraitDocument document_from_json(const nlohmann::ordered_json& j) {
    PortraitDocument doc;
    doc.config = config_from_json(j.at("config"));
    doc.wave_class = j.at("wave_class").get<std::string>();
    doc.theta0 = j.at("theta0").get<double>();
    doc.theta1 = j.at("theta1").get<double>();
    doc.amplitude = j.at("amplitude").get<double>();
    doc.admissibility = j.at("admissibility").get<std::string>();
    for (const auto& l : j.at("layers")) {
        doc.layers.push_back({l.at(0).get<double>(), l.at(1).get<double>()});
    }
    for (const auto& s : j.at("stagnation")) {
        doc.stagnation.push_back({s.at("y0").get<double>(), s.at("lambda").get<double>(),
                                  s.at("index").get<int>(), s.at("feasible").get<bool>()});
    }
    for (const auto& c : j.at("critical_points")) {
        CriticalPoint cp;
        cp.x = c.at("x").get<double>();
        cp.y = c.at("y").get<double>();
        const auto& h = c.at("hessian");
        cp.hessian = {h.at(0).get<double>(), h.at(1).get<double>(), h.at(2).get<double>(),
                      h.at(3).get<double>()};
        const std::string kind = c.at("kind").get<std::string>();
        cp.kind = kind == "center"   ? CriticalKind::Center
                  : kind == "saddle" ? CriticalKind::Saddle
                                     : CriticalKind::Degenerate;
        cp.provenance = c.at("provenance").get<std::string>() == "common_zero_at_half_pi"
                            ? CriticalProvenance::LayerBoundaryLine
                            : CriticalProvenance::InfinityIsoclineAtNPi;
        doc.critical_points.push_back(cp);
    }
    for (const auto& b : j.at("isoclines")) {
        IsoclineBranch br;
        const std::string kind = b.at("kind").get<std::string>();
        br.kind = kind == "zero_isocline_vertical"     ? IsoclineKind::ZeroVertical
                  : kind == "zero_isocline_horizontal" ? IsoclineKind::ZeroHorizontal
                                                       : IsoclineKind::Infinity;
        br.anchor_level = b.at("anchor_level").get<double>();
        br.max_deviation = b.at("max_deviation").get<double>();
        br.crosses_bed = b.at("crosses_bed").get<bool>();
        br.samples = vec2_list_from(b.at("samples"));
        doc.isoclines.push_back(std::move(br));
    }
    for (const auto& s : j.at("streamlines")) {
        PortraitDocument::StreamlineLevel sl;
        sl.level = s.at("level").get<double>();
        sl.separatrix = s.at("separatrix").get<bool>();
        for (const auto& p : s.at("polylines")) {
            sl.polylines.push_back(vec2_list_from(p));
        }
        doc.streamlines.push_back(std::move(sl));
    }
    doc.surface_eta_hat = j.at("surface_eta_hat").get<double>();
    doc.heat_nx = j.at("heat_nx").get<int>();
    doc.heat_ny = j.at("heat_ny").get<int>();
    doc.speed = j.at("speed").get<std::vector<double>>();
    doc.warnings = j.at("warnings").get<std::vector<std::string>>();
    return doc;
}

SweepDocument run_sweep(const RunConfig& config) {
    validate_config(config);
    if (!config.lambda_sweep) {
        throw ValidationError("run_sweep: config must carry lambda=sweep(lo,hi,steps)");
    }
    SweepDocument doc;
    doc.config = config;
    doc.result = sweep_merge_tracking(config.alpha0, config.epsilon,
                                      config.lambda_sweep->lo, config.lambda_sweep->hi,
                                      config.lambda_sweep->steps);
    return doc;
}

nlohmann::ordered_json sweep_to_json(const SweepDocument& doc) {
    json j;
    j["schema"] = "wavescope-sweep/1";
    j["config"] = config_json(doc.config);
    json samples = json::array();
    for (const auto& s : doc.result.samples) {
        json pts = json::array();
        for (const auto& cp : s.points) {
            pts.push_back({{"x", cp.x}, {"y", cp.y}, {"kind", to_string(cp.kind)}});
        }
        samples.push_back(
            {{"lambda", s.lambda}, {"feasible", s.feasible}, {"critical_points", pts}});
    }
    j["samples"] = samples;
    j["merge_lambdas"] = doc.result.merge_lambdas;
    if (doc.result.pi_half_saddle_lo) {
        j["pi_half_saddle_interval"] =
            json::array({*doc.result.pi_half_saddle_lo, *doc.result.pi_half_saddle_hi});
    } else {
        j["pi_half_saddle_interval"] = json::array();
    }
    return j;
}

} // namespace wavescope
