#include "serialization.hpp"

#include <stdexcept>

namespace rarenet {

ordered_json model_to_json(const GraphModel& model) {
    ordered_json j;
    j["kind"] = model.name();
    j["dim"] = model.dim;
    if (model.kind == GraphKind::knn)
        j["k"] = model.k;
    else
        j["beta"] = model.beta;
    return j;
}

GraphModel model_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "knn")
        return GraphModel::knn_model(j.at("dim").get<int>(), j.at("k").get<int>());
    if (kind == "beta_skeleton") {
        if (j.contains("dim") && j.at("dim").get<int>() != 2)
            throw std::invalid_argument("model: beta_skeleton requires dim = 2");
        return GraphModel::beta_model(j.at("beta").get<double>());
    }
    throw std::invalid_argument("model: unknown kind '" + kind + "'");
}

ordered_json variant_to_json(const ScoreVariant& variant) {
    ordered_json j;
    j["tag"] = variant.name();
    j["alpha"] = variant.alpha;
    return j;
}

ScoreVariant variant_from_json(const ordered_json& j) {
    return ScoreVariant::parse(j.at("tag").get<std::string>(),
                               j.at("alpha").get<double>());
}

ordered_json seed_to_json(Seed seed) {
    ordered_json j;
    j["root"] = seed.root;
    j["stream"] = seed.stream;
    return j;
}

Seed seed_from_json(const ordered_json& j) {
    Seed s{0, 0};
    s.root = j.at("root").get<std::uint64_t>();
    s.stream = j.value("stream", std::uint64_t{0});
    return s;
}

ordered_json box_to_json(const Box& box) {
    ordered_json j;
    j["lower"] = box.lower;
    j["upper"] = box.upper;
    return j;
}

Box box_from_json(const ordered_json& j) {
    Box b;
    b.lower = j.at("lower").get<std::vector<double>>();
    b.upper = j.at("upper").get<std::vector<double>>();
    if (b.lower.size() != b.upper.size() || b.lower.empty())
        throw std::invalid_argument("box: lower/upper must be same nonzero length");
    for (std::size_t i = 0; i < b.lower.size(); ++i)
        if (!(b.lower[i] < b.upper[i]))
            throw std::invalid_argument("box: lower must be strictly below upper");
    return b;
}

ordered_json points_to_json(const PointConfig& config) {
    ordered_json arr = ordered_json::array();
    for (long long i = 0; i < config.size(); ++i) {
        auto p = config.point(i);
        arr.push_back(std::vector<double>(p.begin(), p.end()));
    }
    return arr;
}

PointConfig points_from_json(const ordered_json& j, int expect_dim) {
    if (!j.is_array()) throw std::invalid_argument("points: expected an array");
    int dim = expect_dim;
    if (dim == 0) {
        if (j.empty()) throw std::invalid_argument("points: cannot infer dimension");
        dim = static_cast<int>(j.at(0).size());
    }
    PointConfig cfg = PointConfig::empty(dim);
    for (const auto& row : j) {
        const auto p = row.get<std::vector<double>>();
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("points: inconsistent dimension");
        cfg.append(p);
    }
    return cfg;
}

ordered_json volume_to_json(const VolumeEstimate& est) {
    ordered_json j;
    j["value"] = est.value;
    j["std_error"] = est.std_error;
    j["bracket"] = est.bracket;
    switch (est.method) {
        case VolumeMethod::closed_form: j["method"] = "closed_form"; break;
        case VolumeMethod::monte_carlo: j["method"] = "monte_carlo"; break;
        case VolumeMethod::quadrature: j["method"] = "quadrature"; break;
    }
    j["samples_or_depth"] = est.samples_or_depth;
    return j;
}

}  // namespace rarenet
