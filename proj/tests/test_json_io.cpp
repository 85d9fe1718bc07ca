#include <doctest.h>

#include "biham/json_io.hpp"
#include "support.hpp"

using namespace biham;
using namespace biham::json_io;
using testing::mat;

TEST_CASE("complex values") {
  CHECK(complex_to_json(Complex(1, -2)) == json::array({1.0, -2.0}));
  CHECK(complex_from_json(json::array({0.5, 3})) == Complex(0.5, 3));
  CHECK(complex_from_json(json(4)) == Complex(4, 0));
  CHECK_THROWS(complex_from_json(json("x")));
  CHECK_THROWS(complex_from_json(json::array({1, 2, 3})));
}

TEST_CASE("matrix round trip") {
  const ComplexMatrix X = mat({{1, Complex(0, 2)}, {3, -4}});
  const json j = matrix_to_json(X);
  CHECK(j["n"] == 2);
  CHECK(matrix_from_json(j) == X);
  CHECK(matrix_from_json(matrix_entries(X)) == X);
  CHECK(matrix_from_json(json::array({1, 2})) == mat({{1, 0}, {0, 2}}));
  CHECK_THROWS(matrix_from_json(json::parse(R"([[1, 2], [3]])")));
}

TEST_CASE("points") {
  const json p = json::parse(R"({"g": [[2, 0], [0, 1]], "L": [[1, 2], [3, 4]]})");
  const PhasePoint pp = phase_point_from_json(p);
  CHECK(pp.g == mat({{2, 0}, {0, 1}}));
  const ReducedPoint rp = reduced_point_from_json(p);
  CHECK(rp.Q == mat({{1, 0}, {0, 2}}));
  CHECK(rp.L == mat({{4, 3}, {2, 1}}));
  const ReducedPoint rq = reduced_point_from_json(json::parse(R"({"Q": [1, 3], "L": [[0, 1], [1, 0]]})"));
  CHECK(rq.Q == mat({{1, 0}, {0, 3}}));
  CHECK_THROWS_AS(reduced_point_from_json(json::parse(R"({"g": [[1, 0], [0, 1]], "L": [[0, 0], [0, 0]]})")),
                  NotRegular);
  CHECK_THROWS(reduced_point_from_json(json::parse(R"({"L": [[0, 0], [0, 0]]})")));
  CHECK_THROWS_AS(read_file("/nonexistent/file.json"), std::invalid_argument);
}
