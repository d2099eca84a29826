#include "lorval/body_io.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <fstream>
#include <memory>

#include "lorval/errors.hpp"

namespace lorval {

namespace {

Vec to_vec(const Json& row) {
    if (!row.is_array() || row.empty()) throw InputError("expected a numeric array");
    Vec v(row.size());
    for (size_t i = 0; i < row.size(); ++i) {
        if (!row[i].is_number()) throw InputError("expected a number");
        v(static_cast<Eigen::Index>(i)) = row[i].get<double>();
    }
    return v;
}

int get_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw InputError(std::string("missing integer field ") + key);
    return j[key].get<int>();
}

}  // namespace

Json body_to_json(const ConvexBody& K) {
    return std::visit(
        [](const auto& b) -> Json {
            using T = std::decay_t<decltype(b)>;
            Json j;
            if constexpr (std::is_same_v<T, Polytope>) {
                j["type"] = "polytope";
                Json rows = Json::array();
                for (const auto& v : b.vertices) rows.push_back(std::vector<double>(v.data(), v.data() + v.size()));
                j["vertices"] = rows;
            } else if constexpr (std::is_same_v<T, RotationBody>) {
                j["type"] = "rotation";
                j["n"] = b.n;
                Json rows = Json::array();
                for (const auto& g : b.profile.generators) rows.push_back({g.x(), g.y()});
                j["profile"] = rows;
            } else {
                j["type"] = "double_cone";
                j["n"] = b.n;
                j["eps"] = b.eps;
                j["k"] = b.k;
            }
            return j;
        },
        K);
}

ConvexBody body_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type")) throw InputError("body JSON needs a type field");
    const std::string type = j["type"].get<std::string>();
    if (type == "polytope") {
        Polytope p;
        if (!j.contains("vertices") || !j["vertices"].is_array()) throw InputError("polytope needs vertices");
        for (const auto& row : j["vertices"]) p.vertices.push_back(to_vec(row));
        if (p.vertices.empty()) throw InputError("polytope needs vertices");
        const auto d = p.vertices.front().size();
        for (const auto& v : p.vertices)
            if (v.size() != d) throw InputError("vertices have inconsistent dimension");
        if (static_cast<long>(p.vertices.size()) < d + 1) throw InputError("polytope is not full-dimensional");
        return p;
    }
    if (type == "rotation") {
        int n = get_int(j, "n");
        if (n < 2) throw InputError("dimension must be at least 2");
        std::vector<Vec2> gens;
        for (const auto& row : j.at("profile")) {
            Vec v = to_vec(row);
            if (v.size() != 2) throw InputError("profile points are 2D");
            gens.emplace_back(v(0), v(1));
        }
        return RotationBody{Profile2D::from_generators(gens), n};
    }
    if (type == "double_cone") {
        int n = get_int(j, "n");
        double eps = j.value("eps", 0.0);
        int k = j.contains("k") ? get_int(j, "k") : std::max(1, n - 2);
        return StretchedCone::make(n, eps, k);
    }
    throw InputError("unknown body type: " + type);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
}

ConvexBody load_body(const std::string& path) { return body_from_json(read_json_file(path)); }

ZonalMeasure measure_from_json(const Json& j) {
    ZonalMeasure m;
    if (j.contains("atoms")) {
        for (const auto& a : j["atoms"]) {
            Vec v = to_vec(a);
            if (v.size() != 2) throw InputError("atoms are [beta, mass] pairs");
            if (v(1) < 0) throw InputError("negative atom mass");
            if (std::abs(v(0)) > std::numbers::pi / 2) throw InputError("atom elevation outside [-pi/2, pi/2]");
            m.atoms.push_back({v(0), v(1)});
        }
    }
    if (j.contains("density")) {
        const Json& d = j["density"];
        if (d.contains("constant")) {
            double c = d["constant"].get<double>();
            m.density = [c](double) { return c; };
        } else {
            std::vector<double> s = d.at("samples").get<std::vector<double>>();
            if (s.size() < 4) throw InputError("density needs at least 4 samples");
            const double lo = -std::numbers::pi / 2, step = std::numbers::pi / (s.size() - 1);
            auto spline = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
                s.begin(), s.end(), lo, step);
            m.density = [spline](double b) { return std::max(0.0, (*spline)(b)); };
        }
    }
    return m;
}

ZonalMeasure load_measure(const std::string& path) { return measure_from_json(read_json_file(path)); }

}  // namespace lorval
