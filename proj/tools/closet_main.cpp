// closet: cloth state representation toolkit.
//
// Subcommands cover the full pipeline: synthetic fold dataset generation,
// disk computation and rendering, CloSE extraction, semantic labeling,
// fold planning and batch evaluation.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "closet/disk.hpp"
#include "closet/error.hpp"
#include "closet/extract.hpp"
#include "closet/metrics.hpp"
#include "closet/plan.hpp"
#include "closet/semantics.hpp"
#include "closet/serialize.hpp"
#include "closet/synth.hpp"

namespace {

using namespace closet;

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::EmptyDisk:
        case ErrorKind::NoFoldFound:
        case ErrorKind::AmbiguousOrientation:
        case ErrorKind::MultiFoldUnpaired:
        case ErrorKind::DegenerateConfiguration:
            return 3;
        default:
            return 2;
    }
}

std::vector<ClothShape> parse_shapes(const std::string& spec) {
    std::vector<ClothShape> shapes;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string token = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos);
        if (!token.empty()) shapes.push_back(shape_from_name(token));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (shapes.empty()) throw Error(ErrorKind::InvalidPolygon, "no shapes given");
    return shapes;
}

void add_fit_options(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--eps", cfg.eps, "zenithal derivative step");
    cmd->add_option("--k1", cfg.fit.k1, "fit loss weight k1");
    cmd->add_option("--k2", cfg.fit.k2, "fit loss weight k2");
    cmd->add_option("--k3", cfg.fit.k3, "fit loss weight k3");
    cmd->add_option("--tau", cfg.fit.tau, "fit loss bandwidth tau");
    cmd->add_option("--n-inits", cfg.fit.n_inits, "optimizer starts");
    cmd->add_option("--rel-threshold", cfg.rel_threshold, "corner detection threshold");
}

EvalParams eval_params(const Config& cfg) {
    EvalParams p;
    p.eps = cfg.eps;
    p.fit = cfg.fit;
    p.rel_threshold = cfg.rel_threshold;
    p.layer_height = cfg.layer_height;
    return p;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"closet: cloth state representation toolkit"};
    app.require_subcommand(1);

    Config cfg;

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic fold dataset (JSON lines)");
    std::string gen_shapes = "square";
    std::size_t gen_count = 46;
    std::string gen_out;
    FoldDistribution gen_folds;
    gen->add_option("--shape", gen_shapes, "comma-separated shapes");
    gen->add_option("--count", gen_count, "number of samples")->check(CLI::PositiveNumber);
    gen->add_option("--seed", cfg.seed, "random seed");
    gen->add_option("--sigma", cfg.sigma, "vertex noise standard deviation");
    gen->add_option("--n-segments", cfg.n_segments, "border segments per sample");
    gen->add_option("--layer-height", cfg.layer_height, "fold layer height");
    gen->add_option("--fold-max-offset", gen_folds.max_offset, "fold line offset bound");
    gen->add_option("--fold-min-side", gen_folds.min_side_fraction, "min vertex share per side");
    gen->add_option("--out", gen_out, "output dataset path")->required();

    // disk
    auto* disk = app.add_subcommand("disk", "compute a border's disk (CSV + P6 raster)");
    std::string disk_border, disk_out;
    int disk_size = 512;
    disk->add_option("--border", disk_border, "border JSON file")->required();
    disk->add_option("--out", disk_out, "output prefix")->required();
    disk->add_option("--eps", cfg.eps, "zenithal derivative step");
    disk->add_option("--size", disk_size, "raster size in pixels");

    // close
    auto* close_cmd = app.add_subcommand("close", "extract the CloSE state from two borders");
    std::string close_start, close_end, close_out;
    close_cmd->add_option("--start", close_start, "start border JSON")->required();
    close_cmd->add_option("--end", close_end, "end border JSON")->required();
    close_cmd->add_option("--out", close_out, "optional output path");
    add_fit_options(close_cmd, cfg);

    // label
    auto* label_cmd = app.add_subcommand("label", "semantic label for a CloSE file");
    std::string label_close, label_out;
    label_cmd->add_option("--close", label_close, "CloSE JSON file")->required();
    label_cmd->add_option("--out", label_out, "optional output path");

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "fold plan between two CloSE states");
    std::string plan_border, plan_current, plan_goal, plan_out;
    plan_cmd->add_option("--border", plan_border, "flat border JSON")->required();
    plan_cmd->add_option("--current", plan_current, "current CloSE JSON")->required();
    plan_cmd->add_option("--goal", plan_goal, "goal CloSE JSON")->required();
    plan_cmd->add_option("--out", plan_out, "optional output path");
    plan_cmd->add_option("--layer-height", cfg.layer_height, "fold layer height");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "run the evaluation protocol on a dataset");
    std::string eval_dataset, eval_out;
    eval_cmd->add_option("--dataset", eval_dataset, "dataset JSONL file")->required();
    eval_cmd->add_option("--out", eval_out, "output prefix")->required();
    eval_cmd->add_option("--layer-height", cfg.layer_height, "fold layer height");
    add_fit_options(eval_cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            std::vector<DatasetEntry> entries;
            for (ClothShape s : parse_shapes(gen_shapes)) entries.push_back({s, gen_folds, cfg.sigma});
            auto samples =
                generate_dataset(entries, gen_count, cfg.seed, cfg.n_segments, cfg.layer_height);
            write_dataset(gen_out, samples);
            std::printf("wrote %zu samples to %s\n", samples.size(), gen_out.c_str());
        } else if (disk->parsed()) {
            BorderCurve b = read_border(disk_border);
            DGLIDisk d = compute_disk(b, cfg.eps);
            const std::string config_line = "config: " + config_to_json(cfg).dump();
            write_text(disk_out + ".csv", disk_to_csv(d, config_line));
            write_ppm(disk_out + ".ppm", render_disk(d, disk_size), config_line);
            std::printf("wrote %s.csv and %s.ppm (%zu segments, %zu layers)\n", disk_out.c_str(),
                        disk_out.c_str(), d.segments(), d.layers());
        } else if (close_cmd->parsed()) {
            BorderCurve start = read_border(close_start);
            BorderCurve end = read_border(close_end);
            if (start.vertices.size() != end.vertices.size())
                throw Error(ErrorKind::DimensionMismatch, "start and end vertex counts differ");
            CloSE c = extract_close(compute_disk(start, cfg.eps), compute_disk(end, cfg.eps),
                                    cfg.fit, cfg.rel_threshold);
            nlohmann::json out = close_to_json(c);
            out["config"] = config_to_json(cfg);
            std::printf("%s\n", out.dump(2).c_str());
            if (!close_out.empty()) write_text(close_out, out.dump(2) + "\n");
        } else if (label_cmd->parsed()) {
            CloSE c = read_close(label_close);
            SemanticLabel l = label(c);
            nlohmann::json out = label_to_json(l);
            out["config"] = config_to_json(cfg);
            std::printf("%s\n%s\n", out.dump(2).c_str(), l.sentence.c_str());
            if (!label_out.empty()) write_text(label_out, out.dump(2) + "\n");
        } else if (plan_cmd->parsed()) {
            BorderCurve border = read_border(plan_border);
            CloSE current = read_close(plan_current);
            CloSE goal = read_close(plan_goal);
            auto steps = plan(border, current, goal, cfg.layer_height);
            nlohmann::json out{{"config", config_to_json(cfg)}, {"steps", plan_to_json(steps)}};
            std::printf("%s\n", out.dump(2).c_str());
            for (std::size_t i = 0; i < steps.size(); ++i)
                std::printf("%zu. %s\n", i + 1, steps[i].description.c_str());
            if (steps.empty()) std::printf("already at the goal state; nothing to do\n");
            if (!plan_out.empty()) write_text(plan_out, out.dump(2) + "\n");
        } else if (eval_cmd->parsed()) {
            auto dataset = read_dataset(eval_dataset);
            EvalReport report = evaluate(dataset, eval_params(cfg));
            write_text(eval_out + ".json", report_to_json(report, cfg).dump(2) + "\n");
            write_text(eval_out + ".csv", report_to_csv(report));
            std::printf("samples: %zu ok, %zu failed\n", report.n_success, report.n_failure);
            std::printf("rmse mean %.4f var %.4f | frechet mean %.4f var %.4f\n", report.rmse_mean,
                        report.rmse_var, report.frechet_mean, report.frechet_var);
            for (const auto& [kind, count] : report.failure_counts)
                std::printf("  failures[%s] = %zu\n", kind.c_str(), count);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
