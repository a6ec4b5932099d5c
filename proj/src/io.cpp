#include "qmcap/io.hpp"

#include <fstream>

namespace qmcap::io {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(field + ": complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> reals_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw SchemaError(field + ": expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw SchemaError(field + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

json to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const DensityMatrix& rho) {
    return json{{"dim", rho.dim()}, {"matrix", to_json(rho.mat)}};
}

json to_json(const POVM& povm) {
    json elements = json::array();
    for (const Matrix& e : povm.elements) elements.push_back(to_json(e));
    json j{{"dim", povm.dim()}, {"elements", std::move(elements)}};
    if (povm.has_weights()) j["weights"] = povm.weights;
    if (!povm.labels.empty()) j["labels"] = povm.labels;
    return j;
}

json to_json(const Ensemble& pi) {
    json states = json::array();
    for (const Matrix& s : pi.states) states.push_back(to_json(s));
    json j{{"probs", pi.probs}, {"states", std::move(states)}};
    if (pi.has_weights()) j["weights"] = pi.weights;
    return j;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty())
        throw SchemaError(field + ": matrix must be a nested array of rows");
    const std::size_t n = j.size();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw SchemaError(field + ": matrix must be square, row-major");
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = complex_from_json(j[i][k], field);
    }
    return m;
}

DensityMatrix state_from_json(const json& j) {
    if (!j.contains("matrix")) throw SchemaError("matrix: missing field");
    Matrix m = matrix_from_json(j["matrix"], "matrix");
    if (j.contains("dim") &&
        j["dim"].get<Eigen::Index>() != m.rows())
        throw SchemaError("dim: does not match matrix size");
    return DensityMatrix(m);
}

POVM povm_from_json(const json& j) {
    if (!j.contains("elements") || !j["elements"].is_array() ||
        j["elements"].empty())
        throw SchemaError("elements: missing or empty");
    POVM povm;
    for (const auto& e : j["elements"])
        povm.elements.push_back(matrix_from_json(e, "elements"));
    if (j.contains("dim") && j["dim"].get<int>() != povm.dim())
        throw SchemaError("dim: does not match element size");
    if (j.contains("weights")) {
        povm.weights = reals_from_json(j["weights"], "weights");
        if (povm.weights.size() != povm.elements.size())
            throw SchemaError("weights: count must match elements");
    }
    if (j.contains("labels")) {
        if (!j["labels"].is_array())
            throw SchemaError("labels: expected an array of strings");
        for (const auto& l : j["labels"]) {
            if (!l.is_string()) throw SchemaError("labels: expected strings");
            povm.labels.push_back(l.get<std::string>());
        }
    }
    return povm;
}

Ensemble ensemble_from_json(const json& j) {
    if (!j.contains("probs")) throw SchemaError("probs: missing field");
    if (!j.contains("states") || !j["states"].is_array())
        throw SchemaError("states: missing or not an array");
    Ensemble pi;
    pi.probs = reals_from_json(j["probs"], "probs");
    for (const auto& s : j["states"])
        pi.states.push_back(matrix_from_json(s, "states"));
    if (pi.probs.size() != pi.states.size())
        throw SchemaError("probs: count must match states");
    if (j.contains("weights"))
        pi.weights = reals_from_json(j["weights"], "weights");
    return pi;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return j;
}

void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace qmcap::io
