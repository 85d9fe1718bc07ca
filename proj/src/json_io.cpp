#include "biham/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace biham::json_io {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("expected a number or [re, im]");
}

json matrix_entries(const ComplexMatrix& X) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < X.cols(); ++j) row.push_back(complex_to_json(X(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const ComplexMatrix& X) { return {{"n", X.rows()}, {"entries", matrix_entries(X)}}; }

ComplexMatrix matrix_from_json(const json& j) {
  const json& rows = j.is_object() ? j.at("entries") : j;
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument("matrix: expected a nonempty array");
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (j.is_object() && j.contains("n") && j.at("n").get<Eigen::Index>() != n)
    throw std::invalid_argument("matrix: n does not match the number of rows");
  bool square = true;
  for (const json& row : rows) square = square && row.is_array() && static_cast<Eigen::Index>(row.size()) == n;
  const bool flat = !square && (!rows[0].is_array() || (rows[0].size() == 2 && rows[0][0].is_number()));
  ComplexMatrix X = ComplexMatrix::Zero(n, n);
  if (flat) {
    for (Eigen::Index i = 0; i < n; ++i) X(i, i) = complex_from_json(rows[static_cast<std::size_t>(i)]);
    return X;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw std::invalid_argument("matrix: rows must have length n");
    for (Eigen::Index k = 0; k < n; ++k) X(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return X;
}

PhasePoint phase_point_from_json(const json& j) {
  return make_phase_point(matrix_from_json(j.at("g")), matrix_from_json(j.at("L")));
}

ReducedPoint reduced_point_from_json(const json& j, double tol_reg) {
  if (j.contains("Q")) return make_reduced_point(matrix_from_json(j.at("Q")), matrix_from_json(j.at("L")), tol_reg);
  return project(phase_point_from_json(j), tol_reg).point;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace biham::json_io
