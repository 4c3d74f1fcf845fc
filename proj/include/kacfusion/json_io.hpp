// Deterministic emission of tables and reports: JSON objects with sorted keys,
// exact fraction strings for weights, floats rounded to 12 significant digits,
// complex matrices as [re, im] pairs in row-major order, and a sparse CSV form
// for fusion tensors.

#pragma once

#include "kacfusion/modular.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace kacfusion {

using Json = nlohmann::json; // object keys are kept sorted

inline double round_sig(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

inline Json to_json(const FiniteWeight& w, long long level) {
    Json j;
    j["labels"] = Json::array();
    for (const auto& x : w.labels) j["labels"].push_back(rat_to_string(x));
    j["level"] = level;
    return j;
}

inline Json to_json(const WeightBasis& b) {
    Json arr = Json::array();
    for (const auto& lw : b.weights) arr.push_back(to_json(lw.finite, lw.level));
    return arr;
}

inline Json to_json(const Cmat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({round_sig(m(i, j).real()), round_sig(m(i, j).imag())}));
        rows.push_back(row);
    }
    return rows;
}

inline Json tensor_to_json(const std::map<std::pair<int, int>, std::map<int, long long>>& tensor) {
    Json arr = Json::array();
    for (const auto& [key, row] : tensor)
        for (const auto& [c, val] : row)
            arr.push_back(Json::array({key.first, key.second, c, val}));
    return arr;
}

inline Json to_json(const FusionAlgebra& alg) {
    Json j;
    j["type"] = to_string(alg.basis.data->atype);
    j["level"] = alg.basis.level;
    j["basis"] = to_json(alg.basis);
    j["N"] = tensor_to_json(alg.tensor);
    j["provenance"] = to_string(alg.provenance);
    j["identity_index"] = alg.basis.identity_index();
    if (alg.provenance != Provenance::KacWalton || alg.max_rounding_residue > 0)
        j["max_rounding_residue"] = round_sig(alg.max_rounding_residue);
    if (!alg.embedded_basis.empty()) j["embedded_basis"] = alg.embedded_basis;
    return j;
}

inline Json to_json(const QuotientAlgebra& q) {
    Json j;
    j["type"] = to_string(q.basis.data->atype);
    j["level"] = q.level;
    j["source_level"] = q.source.basis.level;
    j["basis"] = to_json(q.basis);
    j["c"] = tensor_to_json(q.tensor);
    Json proj = Json::array();
    for (auto [idx, sign] : q.projection)
        proj.push_back(idx < 0 ? Json() : Json::array({idx, sign}));
    j["projection"] = proj;
    return j;
}

inline Json to_json(const ModularAction& m) {
    Json j;
    j["r"] = m.r;
    j["basis"] = to_json(m.basis);
    j["S"] = to_json(m.s);
    j["T"] = to_json(m.t);
    j["u21r"] = to_json(m.u21r);
    Json res;
    for (const auto& [k, v] : m.relations_residuals) res[k] = round_sig(v);
    j["relations_residuals"] = res;
    return j;
}

inline Json to_json(const GradingReport& rep) {
    Json j;
    j["holds"] = rep.holds;
    j["violations"] = Json::array();
    for (const auto& t : rep.violations) j["violations"].push_back(Json::array({t[0], t[1], t[2]}));
    return j;
}

inline Json to_json(const SignTwistReport& rep) {
    Json j;
    j["applicable"] = rep.applicable;
    j["conjecture_holds"] = rep.conjecture_holds;
    j["counterexamples"] = Json::array();
    for (const auto& t : rep.counterexamples)
        j["counterexamples"].push_back(Json::array({t[0], t[1], t[2]}));
    return j;
}

inline Json to_json(const TwoThirdsReport& rep) {
    Json j;
    j["applicable"] = rep.applicable;
    j["holds"] = rep.holds;
    j["violations"] = Json::array();
    for (const auto& t : rep.violations) j["violations"].push_back(Json::array({t[0], t[1], t[2]}));
    j["negative_constants"] = Json::array();
    for (const auto& t : rep.negative_constants)
        j["negative_constants"].push_back(Json::array({t[0], t[1], t[2]}));
    return j;
}

// one row per nonzero entry: lambda,mu,nu,N
inline std::string tensor_to_csv(const std::map<std::pair<int, int>, std::map<int, long long>>& tensor) {
    std::ostringstream os;
    os << "lambda,mu,nu,N\n";
    for (const auto& [key, row] : tensor)
        for (const auto& [c, val] : row)
            os << key.first << ',' << key.second << ',' << c << ',' << val << '\n';
    return os.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

} // namespace kacfusion
