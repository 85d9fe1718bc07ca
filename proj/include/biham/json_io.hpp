#pragma once

#include <json.hpp>

#include "biham/linalg.hpp"
#include "biham/observables.hpp"
#include "biham/reduction.hpp"

namespace biham::json_io {

using nlohmann::json;

/// [re, im]
json complex_to_json(Complex z);
/// Accepts [re, im] or a plain number.
Complex complex_from_json(const json& j);

/// Rows of [re, im] pairs.
json matrix_entries(const ComplexMatrix& X);
/// {"n": n, "entries": rows}
json matrix_to_json(const ComplexMatrix& X);
/// Accepts {"n", "entries"} or a bare array of rows; a flat array is read as a diagonal.
/// A square array of rows always wins over the diagonal reading.
ComplexMatrix matrix_from_json(const json& j);

/// {"g": matrix, "L": matrix}
PhasePoint phase_point_from_json(const json& j);

/// {"Q": matrix or diagonal, "L": matrix}, or {"g", "L"} which is projected.
ReducedPoint reduced_point_from_json(const json& j, double tol_reg = kDefaultTolReg);

json read_file(const std::string& path);

}  // namespace biham::json_io
