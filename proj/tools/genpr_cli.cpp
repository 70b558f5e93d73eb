// genpr: k-NN precision/recall metrics and high-dimensional support experiments.
//
// Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <genpr/genpr.hpp>

namespace {

constexpr int exit_usage = 1;
constexpr int exit_data = 2;
constexpr int exit_numeric = 3;

int exit_code_for(const genpr::Error& e) {
    switch (e.kind()) {
    case genpr::ErrorKind::config:
        return exit_usage;
    case genpr::ErrorKind::domain:
    case genpr::ErrorKind::numeric:
        return exit_numeric;
    default:
        return exit_data;
    }
}

void emit_result(const genpr::SweepResult& result, const std::string& out, const std::string& svg) {
    if (out.empty() || out == "-") {
        std::cout << genpr::to_csv(result);
    } else {
        genpr::write_csv(result, out);
    }
    if (!svg.empty()) {
        const std::vector<genpr::MetricId> metrics(genpr::all_metrics.begin(), genpr::all_metrics.end());
        genpr::render_svg(result, metrics, svg);
    }
}

void print_report(const genpr::MetricReport& r) {
    std::printf("n_real         %zu\n", r.n_real);
    std::printf("n_gen          %zu\n", r.n_gen);
    std::printf("k              %zu\n", r.k);
    for (const auto m : genpr::all_metrics) {
        std::printf("%-14s %s\n", std::string(genpr::to_string(m)).c_str(),
                    genpr::format_double(genpr::metric_value(r, m)).c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-NN precision/recall metrics for generative models and high-dimensional support experiments"};
    app.require_subcommand(1);

    // sweep
    std::string family = "sphere";
    std::string dims = "2,4,8,16,32,64,128,256,512";
    std::string radii = "0.5:1.5:0.05";
    std::size_t n = 10000;
    std::size_t k = genpr::default_k;
    std::size_t trials = 5;
    std::uint64_t seed = 0;
    std::string out = "-";
    std::string svg;
    bool fast = false;
    auto* sweep = app.add_subcommand("sweep", "Radius x dimension sweep over a synthetic support family");
    sweep->add_option("--family", family, "sphere | cube | gaussian")->capture_default_str();
    sweep->add_option("--dims", dims, "Dimensions, comma list or start:stop:step")->capture_default_str();
    sweep->add_option("--radii", radii, "Radius factors, comma list or start:stop:step")->capture_default_str();
    auto* n_opt = sweep->add_option("--n", n, "Samples per cloud")->capture_default_str();
    sweep->add_option("--k", k, "Neighbor index K")->capture_default_str();
    sweep->add_option("--trials", trials, "Repetitions per grid point")->capture_default_str();
    sweep->add_option("--seed", seed, "Random seed")->capture_default_str();
    sweep->add_option("--out", out, "CSV output path ('-' for stdout)")->capture_default_str();
    sweep->add_option("--svg", svg, "Also render an SVG chart to this path");
    sweep->add_flag("--fast", fast, "Use n=2000 unless --n is given");

    // feature-sweep
    std::string real_path, gen_path, scales = "0.5:1.5:0.05";
    auto* fsweep = app.add_subcommand("feature-sweep", "Scale generated features about their mean and evaluate");
    fsweep->add_option("--real", real_path, "Real features (FV32)")->required();
    fsweep->add_option("--gen", gen_path, "Generated features (FV32)")->required();
    fsweep->add_option("--scales", scales, "Scale factors")->capture_default_str();
    fsweep->add_option("--k", k, "Neighbor index K")->capture_default_str();
    fsweep->add_option("--out", out, "CSV output path ('-' for stdout)")->capture_default_str();
    fsweep->add_option("--svg", svg, "Also render an SVG chart to this path");

    // contrast-sweep
    std::string images_path, contrasts = "0:2:0.1";
    std::size_t embed_dim = 64;
    auto* csweep = app.add_subcommand("contrast-sweep", "Adjust image contrast, embed randomly, and evaluate");
    csweep->add_option("--images", images_path, "Images (IMU8)")->required();
    csweep->add_option("--real", real_path, "Real features (FV32), same dimension as --embed-dim")->required();
    csweep->add_option("--contrasts", contrasts, "Contrast factors")->capture_default_str();
    csweep->add_option("--embed-dim", embed_dim, "Random embedding dimension")->capture_default_str();
    csweep->add_option("--k", k, "Neighbor index K")->capture_default_str();
    csweep->add_option("--seed", seed, "Seed of the random embedding")->capture_default_str();
    csweep->add_option("--out", out, "CSV output path ('-' for stdout)")->capture_default_str();
    csweep->add_option("--svg", svg, "Also render an SVG chart to this path");

    // metrics
    auto* metrics = app.add_subcommand("metrics", "Evaluate all six metrics for two FV32 feature files");
    metrics->add_option("--real", real_path, "Real features (FV32)")->required();
    metrics->add_option("--gen", gen_path, "Generated features (FV32)")->required();
    metrics->add_option("--k", k, "Neighbor index K")->capture_default_str();

    // embed
    auto* embed = app.add_subcommand("embed", "Random linear embedding of an IMU8 image file to FV32");
    embed->add_option("--images", images_path, "Images (IMU8)")->required();
    embed->add_option("--out", out, "FV32 output path")->required();
    embed->add_option("--dim", embed_dim, "Embedding dimension")->capture_default_str();
    embed->add_option("--seed", seed, "Seed of the random embedding")->capture_default_str();

    // cap
    std::size_t cap_d = 3;
    double phi = std::numbers::pi / 3;
    auto* cap = app.add_subcommand("cap", "Hyperspherical cap volume and area fractions");
    cap->add_option("--d", cap_d, "Ambient dimension (>= 2)")->required();
    cap->add_option("--phi", phi, "Colatitude angle in radians, (0, pi/2]")->required();

    // nn-event
    std::size_t nn_d = 64, nn_n = 1000, nn_trials = 50;
    double threshold = std::numbers::sqrt2;
    std::string which = "min_exceeds";
    auto* nn = app.add_subcommand("nn-event", "Monte Carlo nearest/farthest-neighbor events on the unit sphere");
    nn->add_option("--d", nn_d, "Ambient dimension")->capture_default_str();
    nn->add_option("--n", nn_n, "Points per trial")->capture_default_str();
    nn->add_option("--t", threshold, "Distance threshold")->capture_default_str();
    nn->add_option("--which", which, "min_exceeds | max_below | fraction")->capture_default_str();
    nn->add_option("--trials", nn_trials, "Number of trials")->capture_default_str();
    nn->add_option("--seed", seed, "Random seed")->capture_default_str();

    // plot
    std::string csv_in, metric_list = "precision,recall,sym_precision,sym_recall";
    auto* plot = app.add_subcommand("plot", "Render a sweep CSV as SVG");
    plot->add_option("--in", csv_in, "Sweep CSV")->required();
    plot->add_option("--out", out, "SVG output path")->required();
    plot->add_option("--metrics", metric_list, "Comma-separated metric names")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        if (*sweep) {
            genpr::SweepConfig cfg;
            const auto fam = genpr::parse_family(family);
            if (!fam) {
                throw genpr::ConfigError("unknown family '" + family + "'");
            }
            cfg.family = *fam;
            cfg.dims = genpr::parse_int_grid(dims);
            cfg.radii = genpr::parse_grid(radii);
            cfg.n = (fast && n_opt->count() == 0) ? 2000 : n;
            cfg.k = k;
            cfg.trials = trials;
            cfg.seed = seed;
            emit_result(genpr::run_synthetic_sweep(cfg), out, svg);
        } else if (*fsweep) {
            const auto grid = genpr::parse_grid(scales);
            emit_result(genpr::run_feature_sweep(real_path, gen_path, grid, k, ""), out, svg);
        } else if (*csweep) {
            const auto grid = genpr::parse_grid(contrasts);
            emit_result(genpr::run_contrast_sweep(images_path, real_path, grid, embed_dim, k, seed, ""), out, svg);
        } else if (*metrics) {
            print_report(genpr::evaluate_suite(genpr::read_features(real_path), genpr::read_features(gen_path), k));
        } else if (*embed) {
            const auto images = genpr::read_images(images_path);
            genpr::write_features(genpr::random_embed(images, embed_dim, genpr::embedding_stream(seed)), out);
        } else if (*cap) {
            const genpr::CapQuery q{cap_d, phi};
            std::printf("d                %zu\n", q.d);
            std::printf("phi              %s\n", genpr::format_double(q.phi).c_str());
            std::printf("volume_fraction  %s\n", genpr::format_double(genpr::cap_volume_fraction(q)).c_str());
            std::printf("area_fraction    %s\n", genpr::format_double(genpr::cap_area_fraction(q)).c_str());
            if (std::sin(q.phi) < 1.0) {
                std::printf("volume_approx    %s\n",
                            genpr::format_double(genpr::cap_fraction_approx(q, genpr::CapMeasure::volume)).c_str());
                std::printf("area_approx      %s\n",
                            genpr::format_double(genpr::cap_fraction_approx(q, genpr::CapMeasure::area)).c_str());
            }
        } else if (*nn) {
            const genpr::RngSpec rng{seed, 0};
            if (which == "fraction") {
                const double f = genpr::nn_fraction(nn_d, nn_n, threshold, nn_trials, rng);
                std::printf("nn_fraction %s\n", genpr::format_double(f).c_str());
            } else if (which == "min_exceeds" || which == "max_below") {
                const auto ev = which == "min_exceeds" ? genpr::NnEvent::min_exceeds : genpr::NnEvent::max_below;
                const auto est = genpr::nn_distance_event(nn_d, nn_n, threshold, ev, nn_trials, rng);
                std::printf("event      %s\n", std::string(genpr::to_string(ev)).c_str());
                std::printf("d          %zu\nn          %zu\n", est.d, est.n);
                std::printf("t          %s\n", genpr::format_double(est.threshold_factor).c_str());
                std::printf("hits       %zu / %zu\n", est.hits, est.trials);
                std::printf("frequency  %s\n", genpr::format_double(est.frequency).c_str());
            } else {
                throw genpr::ConfigError("--which must be min_exceeds, max_below or fraction");
            }
        } else if (*plot) {
            std::vector<genpr::MetricId> ids;
            for (const auto& name : genpr::detail::split(metric_list, ',')) {
                ids.push_back(genpr::parse_metric(name));
            }
            genpr::render_svg(genpr::read_csv(csv_in), ids, out);
        }
    } catch (const genpr::Error& e) {
        std::cerr << "genpr: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "genpr: " << e.what() << "\n";
        return exit_data;
    }
    return 0;
}
