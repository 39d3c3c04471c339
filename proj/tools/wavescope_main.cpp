#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wavescope/document.hpp"
#include "wavescope/exports.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw wavescope::IoError("cannot read config: " + path);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct PortraitArgs {
    std::string config_path;
    std::optional<double> alpha0;
    std::optional<double> lambda;
    std::optional<double> epsilon;
    std::optional<std::string> out_dir;
    std::optional<std::string> formats;
};

int cmd_portrait(const PortraitArgs& args) {
    wavescope::RunConfig config = wavescope::parse_config(read_file(args.config_path));
    if (args.alpha0) config.alpha0 = *args.alpha0;
    if (args.lambda) {
        config.lambda = *args.lambda;
        config.lambda_sweep.reset();
    }
    if (args.epsilon) config.epsilon = *args.epsilon;
    if (args.out_dir) config.out_dir = *args.out_dir;
    if (args.formats) {
        config.outputs.clear();
        std::istringstream parts(*args.formats);
        std::string f;
        while (std::getline(parts, f, ',')) {
            if (f != "svg" && f != "csv" && f != "json") {
                throw wavescope::ValidationError("unknown format '" + f + "'");
            }
            config.outputs.insert(f);
        }
    }
    wavescope::validate_config(config);

    const auto doc = wavescope::run_portrait(config);
    wavescope::export_portrait_outputs(doc, config.out_dir);
    for (const auto& w : doc.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    std::cout << "portrait: " << doc.wave_class << ", "
              << doc.critical_points.size() << " critical points, "
              << doc.stagnation.size() << " stagnation levels -> " << config.out_dir
              << "\n";
    return 0;
}

int cmd_region(const std::string& range, int resolution, const std::string& out_dir) {
    double lo = 0.0, hi = 0.0;
    int steps = 0;
    if (std::sscanf(range.c_str(), "%lf:%lf:%d", &lo, &hi, &steps) != 3 || steps < 2) {
        throw wavescope::ValidationError(
            "--alpha0-range expects LO:HI:STEPS with STEPS >= 2, got '" + range + "'");
    }
    std::vector<double> grid;
    for (int i = 0; i < steps; ++i) {
        const double a = lo + (hi - lo) * i / (steps - 1);
        if (a == 0.0) continue; // constant vorticity, out of scope
        grid.push_back(a);
    }
    const auto bands = wavescope::feasible_region_sample(grid, resolution);
    wavescope::export_region_csv(bands, out_dir);
    std::cout << "region: " << bands.size() << " alpha0 samples -> " << out_dir << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, std::optional<std::string> out_dir) {
    wavescope::RunConfig config = wavescope::parse_config(read_file(config_path));
    if (out_dir) config.out_dir = *out_dir;
    const auto doc = wavescope::run_sweep(config);
    wavescope::write_text_file(std::filesystem::path(config.out_dir) / "sweep.json",
                               wavescope::sweep_to_json(doc).dump(2) + "\n");
    std::cout << "sweep: " << doc.result.samples.size() << " samples, "
              << doc.result.merge_lambdas.size() << " collision lambdas -> "
              << config.out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavescope: phase portraits of linear water waves with affine vorticity"};
    app.require_subcommand(1);

    PortraitArgs pa;
    auto* portrait = app.add_subcommand("portrait", "Render one phase portrait");
    portrait->add_option("--config", pa.config_path, "key=value config file")->required();
    double pa_alpha0 = 0, pa_lambda = 0, pa_epsilon = 0;
    std::string pa_out, pa_formats;
    auto* o_alpha0 = portrait->add_option("--alpha0", pa_alpha0, "override alpha0");
    auto* o_lambda = portrait->add_option("--lambda", pa_lambda, "override lambda");
    auto* o_epsilon = portrait->add_option("--epsilon", pa_epsilon, "override epsilon");
    auto* o_out = portrait->add_option("--out", pa_out, "output directory");
    auto* o_formats =
        portrait->add_option("--formats", pa_formats, "comma list of svg,csv,json");

    std::string region_range;
    int region_resolution = 32;
    std::string region_out = "out";
    auto* region =
        app.add_subcommand("region", "Sample the feasible stagnation region");
    region->add_option("--alpha0-range", region_range, "LO:HI:STEPS")->required();
    region->add_option("--resolution", region_resolution,
                       "lambda certificates per alpha0");
    region->add_option("--out", region_out, "output directory");

    std::string sweep_config;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Track critical points over a lambda sweep");
    sweep->add_option("--config", sweep_config, "config with lambda=sweep(lo,hi,steps)")
        ->required();
    auto* o_sweep_out = sweep->add_option("--out", sweep_out, "output directory");

    std::string figures_out = "figures";
    auto* figures =
        app.add_subcommand("reproduce-figures", "Regenerate the reference figure bundle");
    figures->add_option("--out", figures_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*portrait) {
            if (*o_alpha0) pa.alpha0 = pa_alpha0;
            if (*o_lambda) pa.lambda = pa_lambda;
            if (*o_epsilon) pa.epsilon = pa_epsilon;
            if (*o_out) pa.out_dir = pa_out;
            if (*o_formats) pa.formats = pa_formats;
            return cmd_portrait(pa);
        }
        if (*region) {
            return cmd_region(region_range, region_resolution, region_out);
        }
        if (*sweep) {
            return cmd_sweep(sweep_config,
                             *o_sweep_out ? std::optional<std::string>(sweep_out)
                                          : std::nullopt);
        }
        if (*figures) {
            const int rc = wavescope::reproduce_figures(figures_out);
            if (rc == 0) {
                std::cout << "reproduce-figures: all structural checks passed -> "
                          << figures_out << "\n";
            }
            return rc == 0 ? 0 : 2;
        }
    } catch (const wavescope::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const wavescope::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const wavescope::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
