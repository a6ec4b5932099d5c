#pragma once

#include <json.hpp>
#include <string>

#include "qmcap/quantum.hpp"

namespace qmcap::io {

/// Raised when a JSON document does not match the expected schema; the
/// message names the offending field.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON conventions: complex number = [re, im]; matrix = row-major nested
// arrays of complex; state file = {"dim", "matrix"}; POVM file =
// {"dim", "elements", "weights"?, "labels"?}; ensemble file =
// {"probs", "states"}.

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const POVM& povm);
nlohmann::json to_json(const Ensemble& pi);

Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);
DensityMatrix state_from_json(const nlohmann::json& j);
POVM povm_from_json(const nlohmann::json& j);
Ensemble ensemble_from_json(const nlohmann::json& j);

nlohmann::json load_file(const std::string& path);
void save_file(const std::string& path, const nlohmann::json& j);

}  // namespace qmcap::io
