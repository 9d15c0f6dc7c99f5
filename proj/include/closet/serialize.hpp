#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "closet/extract.hpp"
#include "closet/geometry.hpp"
#include "closet/metrics.hpp"
#include "closet/plan.hpp"
#include "closet/semantics.hpp"
#include "closet/synth.hpp"

namespace closet {

// Tool configuration, echoed into every structured output.
struct Config {
    double eps = kDefaultDgliEps;
    std::size_t n_segments = 80;
    FitParams fit;
    double rel_threshold = kDefaultCornerThreshold;
    double cover_eps = 0.04;
    double layer_height = 0.02;
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

nlohmann::json config_to_json(const Config& c);

// Border files: JSON array of [x, y, z] triples, implicitly closed.
nlohmann::json border_to_json(const BorderCurve& b);
BorderCurve border_from_json(const nlohmann::json& j);
BorderCurve read_border(const std::string& path);
void write_border(const std::string& path, const BorderCurve& b);

// CloSE files: {"corners": [...], "folds": [[f1, f2], ...], "n_segments": N}.
nlohmann::json close_to_json(const CloSE& c);
CloSE close_from_json(const nlohmann::json& j);
CloSE read_close(const std::string& path);

// Dataset files: JSON lines, one fold sample per line.
nlohmann::json sample_to_json(const FoldSample& s);
FoldSample sample_from_json(const nlohmann::json& j);
void write_dataset(const std::string& path, const std::vector<FoldSample>& samples);
std::vector<FoldSample> read_dataset(const std::string& path);

nlohmann::json label_to_json(const SemanticLabel& l);
nlohmann::json plan_to_json(const std::vector<PlanStep>& steps);

nlohmann::json report_to_json(const EvalReport& r, const Config& c);
// Flat CSV: sample_id,shape,rmse,frechet,status.
std::string report_to_csv(const EvalReport& r);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

} // namespace closet
