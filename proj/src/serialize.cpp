#include "closet/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "closet/error.hpp"

namespace closet {

using nlohmann::json;

nlohmann::json config_to_json(const Config& c) {
    return json{{"eps", c.eps},
                {"n_segments", c.n_segments},
                {"k1", c.fit.k1},
                {"k2", c.fit.k2},
                {"k3", c.fit.k3},
                {"tau", c.fit.tau},
                {"n_inits", c.fit.n_inits},
                {"rel_threshold", c.rel_threshold},
                {"cover_eps", c.cover_eps},
                {"layer_height", c.layer_height},
                {"sigma", c.sigma},
                {"seed", c.seed}};
}

json border_to_json(const BorderCurve& b) {
    json arr = json::array();
    for (const Vec3& v : b.vertices) arr.push_back(json::array({v.x, v.y, v.z}));
    return arr;
}

BorderCurve border_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorKind::DegenerateInput, "border JSON must be an array");
    BorderCurve b;
    for (const json& row : j) {
        if (!row.is_array() || row.size() != 3)
            throw Error(ErrorKind::DegenerateInput, "border vertex must be [x, y, z]");
        b.vertices.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
    }
    validate_border(b);
    return b;
}

BorderCurve read_border(const std::string& path) {
    try {
        return border_from_json(json::parse(read_text(path)));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::DegenerateInput, path + ": " + e.what());
    }
}

void write_border(const std::string& path, const BorderCurve& b) {
    write_text(path, border_to_json(b).dump() + "\n");
}

json close_to_json(const CloSE& c) {
    json folds = json::array();
    for (const auto& f : c.folds) folds.push_back(json::array({f.first, f.second}));
    return json{{"corners", c.corners}, {"folds", folds}, {"n_segments", c.n_segments}};
}

CloSE close_from_json(const json& j) {
    CloSE c;
    if (!j.is_object() || !j.contains("corners") || !j.contains("folds"))
        throw Error(ErrorKind::MalformedClose, "CloSE JSON needs corners and folds");
    for (const json& t : j.at("corners")) c.corners.push_back(t.get<double>());
    for (const json& f : j.at("folds")) {
        if (!f.is_array() || f.size() != 2)
            throw Error(ErrorKind::MalformedClose, "fold must be [f1, f2]");
        c.folds.push_back({f[0].get<double>(), f[1].get<double>()});
    }
    c.n_segments = j.value("n_segments", 0u);
    return c;
}

CloSE read_close(const std::string& path) {
    try {
        return close_from_json(json::parse(read_text(path)));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedClose, path + ": " + e.what());
    }
}

json sample_to_json(const FoldSample& s) {
    return json{{"start", border_to_json(s.start)},
                {"end", border_to_json(s.end)},
                {"gt_fold", json::array({s.gt_fold.first, s.gt_fold.second})},
                {"gt_folded_corners", s.gt_folded_corners},
                {"meta",
                 json{{"shape", s.meta.shape},
                      {"sigma", s.meta.sigma},
                      {"seed", s.meta.seed},
                      {"n_segments", s.meta.n_segments},
                      {"layer_height", s.meta.layer_height}}}};
}

FoldSample sample_from_json(const json& j) {
    FoldSample s;
    s.start = border_from_json(j.at("start"));
    s.end = border_from_json(j.at("end"));
    s.gt_fold = {j.at("gt_fold")[0].get<double>(), j.at("gt_fold")[1].get<double>()};
    for (const json& c : j.at("gt_folded_corners")) s.gt_folded_corners.push_back(c.get<int>());
    const json& m = j.at("meta");
    s.meta.shape = m.value("shape", "");
    s.meta.sigma = m.value("sigma", 0.0);
    s.meta.seed = m.value("seed", std::uint64_t(0));
    s.meta.n_segments = m.value("n_segments", std::size_t(0));
    s.meta.layer_height = m.value("layer_height", 0.02);
    return s;
}

void write_dataset(const std::string& path, const std::vector<FoldSample>& samples) {
    std::string out;
    for (const FoldSample& s : samples) out += sample_to_json(s).dump() + "\n";
    write_text(path, out);
}

std::vector<FoldSample> read_dataset(const std::string& path) {
    std::istringstream in(read_text(path));
    std::vector<FoldSample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            samples.push_back(sample_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::DegenerateInput,
                        path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (samples.empty()) throw Error(ErrorKind::DegenerateInput, path + ": empty dataset");
    return samples;
}

json label_to_json(const SemanticLabel& l) {
    json positions = json::array();
    for (const FoldEdgePosition& p : l.fold_edge_positions)
        positions.push_back(json{{"edge", p.edge},
                                 {"fraction", p.fraction},
                                 {"through_corner", p.through_corner}});
    return json{{"n_corners", l.n_corners},
                {"folded_corner_indices", l.folded_corner_indices},
                {"fold_edge_positions", positions},
                {"tags", l.tags},
                {"sentence", l.sentence}};
}

json plan_to_json(const std::vector<PlanStep>& steps) {
    auto vec = [](const Vec3& v) { return json::array({v.x, v.y, v.z}); };
    json arr = json::array();
    for (const PlanStep& s : steps) {
        json picks = json::array(), places = json::array(), ways = json::array();
        for (const Vec3& p : s.picks) picks.push_back(vec(p));
        for (const Vec3& p : s.places) places.push_back(vec(p));
        for (const auto& w : s.waypoints) ways.push_back(json::array({vec(w[0]), vec(w[1]), vec(w[2])}));
        arr.push_back(json{{"action", s.action == PlanAction::fold ? "fold" : "unfold"},
                           {"description", s.description},
                           {"picks", picks},
                           {"places", places},
                           {"waypoints", ways}});
    }
    return arr;
}

json report_to_json(const EvalReport& r, const Config& c) {
    json samples = json::array();
    for (const SampleResult& s : r.samples) {
        json row{{"sample_id", s.index}, {"shape", s.shape}, {"status", s.status}};
        if (s.ok) {
            row["rmse"] = s.rmse;
            row["frechet"] = s.frechet;
            row["fold_error"] = s.fold_error;
        }
        samples.push_back(row);
    }
    return json{{"config", config_to_json(c)},
                {"n_success", r.n_success},
                {"n_failure", r.n_failure},
                {"rmse_mean", r.rmse_mean},
                {"rmse_var", r.rmse_var},
                {"frechet_mean", r.frechet_mean},
                {"frechet_var", r.frechet_var},
                {"fold_error_mean", r.fold_error_mean},
                {"failures", r.failure_counts},
                {"samples", samples}};
}

std::string report_to_csv(const EvalReport& r) {
    std::string out = "sample_id,shape,rmse,frechet,status\n";
    char buf[160];
    for (const SampleResult& s : r.samples) {
        if (s.ok)
            std::snprintf(buf, sizeof(buf), "%zu,%s,%.17g,%.17g,%s\n", s.index, s.shape.c_str(),
                          s.rmse, s.frechet, s.status.c_str());
        else
            std::snprintf(buf, sizeof(buf), "%zu,%s,,,%s\n", s.index, s.shape.c_str(),
                          s.status.c_str());
        out += buf;
    }
    return out;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::DegenerateInput, "cannot open " + path + " for writing");
    f.write(content.data(), std::streamsize(content.size()));
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::DegenerateInput, "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace closet
