#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wcmc/core.hpp"
#include "wcmc/poisson.hpp"
#include "wcmc/transport.hpp"

namespace wcmc::io {

using nlohmann::json;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline json space_to_json(const FiniteStateSpace& s) {
    json j;
    j["n"] = s.n;
    if (!s.labels.empty()) j["labels"] = s.labels;
    return j;
}

inline FiniteStateSpace space_from_json(const json& j) {
    if (!j.contains("n") || !j["n"].is_number_unsigned())
        throw IoError("document lacks a valid state count \"n\"");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return FiniteStateSpace(j["n"].get<std::size_t>(), std::move(labels));
}

inline json matrix_rows(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& rows, std::size_t n, const char* what) {
    if (!rows.is_array() || rows.size() != n)
        throw IoError(std::string(what) + ": expected " + std::to_string(n) + " rows");
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw IoError(std::string(what) + ": row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j].get<double>();
    }
    return m;
}

inline json kernel_to_json(const FiniteKernel& p) {
    json j = space_to_json(p.space);
    j["rows"] = matrix_rows(p.rows);
    return j;
}

inline json distribution_to_json(const Distribution& d) {
    json j = space_to_json(d.space);
    j["weights"] = d.weights;
    return j;
}

inline json function_to_json(const StateFunction& f) {
    json j = space_to_json(f.space);
    j["values"] = f.values;
    return j;
}

inline json metric_to_json(const MetricSpec& d) {
    json j = space_to_json(d.space);
    j["cost"] = matrix_rows(d.cost);
    j["kind"] = metric_kind_name(d.kind);
    if (!d.weights.empty()) j["weights"] = d.weights;
    return j;
}

inline json profile_to_json(const ContractionProfile& p) {
    json j;
    j["taus"] = p.taus;
    j["m"] = p.m;
    j["lambda"] = p.lambda;
    j["tail"] = p.certified_tail;
    json wit = json::array();
    for (const auto& [x, y] : p.witnesses) wit.push_back(json::array({x, y}));
    j["witnesses"] = std::move(wit);
    return j;
}

inline FiniteKernel kernel_from_json(const json& j) {
    FiniteStateSpace space = space_from_json(j);
    if (!j.contains("rows")) throw IoError("kernel document lacks \"rows\"");
    FiniteKernel p(space, matrix_from_json(j["rows"], space.n, "kernel"));
    const ValidationReport rep = validate_kernel(p);
    if (!rep.ok()) throw IoError("kernel invalid: " + rep.summary());
    return p;
}

inline Distribution distribution_from_json(const json& j) {
    FiniteStateSpace space = space_from_json(j);
    if (!j.contains("weights")) throw IoError("distribution document lacks \"weights\"");
    auto w = j["weights"].get<std::vector<double>>();
    if (w.size() != space.n) throw IoError("distribution weight count mismatch");
    Distribution d(space, std::move(w));
    const ValidationReport rep = validate_distribution(d);
    if (!rep.ok()) throw IoError("distribution invalid: " + rep.summary());
    return d;
}

inline StateFunction function_from_json(const json& j) {
    FiniteStateSpace space = space_from_json(j);
    if (!j.contains("values")) throw IoError("function document lacks \"values\"");
    auto v = j["values"].get<std::vector<double>>();
    if (v.size() != space.n) throw IoError("function value count mismatch");
    for (double x : v)
        if (!std::isfinite(x)) throw IoError("function has a non-finite value");
    return StateFunction(space, std::move(v));
}

inline MetricSpec metric_from_json(const json& j) {
    FiniteStateSpace space = space_from_json(j);
    if (!j.contains("cost")) throw IoError("metric document lacks \"cost\"");
    MetricKind kind = MetricKind::general;
    if (j.contains("kind")) {
        const std::string k = j["kind"].get<std::string>();
        if (k == "trivial") kind = MetricKind::trivial;
        else if (k == "line") kind = MetricKind::line;
        else if (k == "v-weighted") kind = MetricKind::v_weighted;
        else if (k != "general") throw IoError("metric kind unknown: " + k);
    }
    std::vector<double> weights;
    if (j.contains("weights")) weights = j["weights"].get<std::vector<double>>();
    MetricSpec d(space, matrix_from_json(j["cost"], space.n, "metric"), kind, std::move(weights));
    const ValidationReport rep = validate_metric(d);
    if (!rep.ok()) throw IoError("metric invalid: " + rep.summary());
    return d;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("cannot parse " + path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

inline FiniteKernel load_kernel(const std::string& path) {
    return kernel_from_json(load_json_file(path));
}
inline Distribution load_distribution(const std::string& path) {
    return distribution_from_json(load_json_file(path));
}
inline StateFunction load_function(const std::string& path) {
    return function_from_json(load_json_file(path));
}
inline MetricSpec load_metric(const std::string& path) {
    return metric_from_json(load_json_file(path));
}

// name,lhs,rhs,slack,holds
inline std::string certificates_csv(const std::vector<BoundCertificate>& certs) {
    std::ostringstream os;
    os << "name,lhs,rhs,slack,holds\n";
    for (const auto& c : certs)
        os << c.name << ',' << format_double(c.lhs) << ',' << format_double(c.rhs) << ','
           << format_double(c.slack) << ',' << (c.holds ? "true" : "false") << '\n';
    return os.str();
}

} // namespace wcmc::io
