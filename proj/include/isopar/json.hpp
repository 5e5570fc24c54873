#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "isopar/classify.hpp"
#include "isopar/clifford.hpp"
#include "isopar/fkm.hpp"
#include "isopar/geometry.hpp"
#include "isopar/homotopy.hpp"

// JSON encodings of the report types.  Field order is fixed so that equal
// inputs give byte-identical documents.

namespace isopar {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// {m, k, dim, matrices}: each matrix a row-major array of dim*dim integers.
inline ojson to_json(const CliffordSystem& sys) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["m"] = sys.m;
    j["k"] = sys.k;
    j["dim"] = sys.dim;
    j["matrices"] = ojson::array();
    for (const auto& p : sys.matrices) j["matrices"].push_back(p.data());
    return j;
}

inline CliffordSystem clifford_system_from_json(const ojson& j) {
    CliffordSystem sys;
    sys.m = j.at("m").get<std::int64_t>();
    sys.k = j.at("k").get<std::int64_t>();
    sys.dim = j.at("dim").get<std::size_t>();
    for (const auto& flat : j.at("matrices")) {
        const auto values = flat.get<std::vector<std::int64_t>>();
        if (values.size() != sys.dim * sys.dim) throw DomainError("matrix array has wrong length");
        IntMatrix p(sys.dim);
        for (std::size_t r = 0; r < sys.dim; ++r)
            for (std::size_t c = 0; c < sys.dim; ++c) p(r, c) = values[r * sys.dim + c];
        sys.matrices.push_back(std::move(p));
    }
    return sys;
}

inline ojson to_json(const CliffordReport& rep) {
    return ojson{{"passed", rep.passed}, {"violations", rep.violations}};
}

inline ojson to_json(const CartanMunznerReport& rep) {
    ojson j;
    j["passed"] = rep.passed;
    j["samples"] = rep.samples;
    j["sphere_samples"] = rep.sphere_samples;
    j["seed"] = rep.seed;
    j["tol"] = rep.tol;
    j["grad_identity"] = {{"expected", "|grad F|^2 = 16 <x,x>^3"}, {"max_rel_residual", rep.grad_residual}, {"ok", rep.grad_ok}};
    j["laplacian_identity"] = {{"expected_constant", rep.laplacian_constant},
                               {"observed_min", rep.laplacian_ratio_min},
                               {"observed_max", rep.laplacian_ratio_max},
                               {"max_residual", rep.laplacian_residual},
                               {"ok", rep.laplacian_ok}};
    j["sphere_range"] = {{"min", rep.sphere_min}, {"max", rep.sphere_max}, {"ok", rep.range_ok}};
    return j;
}

inline ojson to_json(const ExactIdentityReport& rep) {
    return ojson{{"passed", rep.passed},
                 {"samples", rep.samples},
                 {"grad_failures", rep.grad_failures},
                 {"laplacian_failures", rep.laplacian_failures}};
}

inline ojson to_json(const CurvatureReport& rep) {
    ojson j;
    j["n"] = rep.n;
    j["level"] = rep.level;
    j["g"] = rep.g;
    j["multiplicities"] = rep.multiplicities;
    j["cluster_values"] = rep.cluster_values;
    j["theta"] = rep.theta;
    j["H"] = rep.mean_curvature;
    j["A2"] = rep.squared_norm;
    j["scal"] = rep.scalar_curvature();
    j["scal_paper"] = rep.scalar_curvature_reference();
    j["scal_delta"] = rep.scalar_curvature_delta();
    j["spread"] = rep.spread;
    j["progression_residual"] = rep.progression_residual;
    j["max_residual_sphere"] = rep.max_residual_sphere;
    j["max_residual_level"] = rep.max_residual_level;
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    return j;
}

inline ojson to_json(const AbelianGroup& a) {
    return ojson{{"rank", a.rank}, {"torsion", a.torsion}};
}

inline ojson to_json(const Verdict& v) {
    ojson j;
    j["admissible"] = v.admissible;
    j["cases"] = ojson::array();
    for (auto c : v.cases) j["cases"].push_back(std::string(to_string(c)));
    j["g"] = v.g ? ojson(*v.g) : ojson(nullptr);
    return j;
}

inline ojson to_json(const StolzVerdict& v) {
    return ojson{{"admissible", v.admissible}, {"reason", std::string(to_string(v.reason))}};
}

} // namespace isopar
