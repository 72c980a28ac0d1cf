// JSON schemas and argument parsing. Complex numbers serialize as
// two-element arrays [re, im]; matrices as row-major nested arrays; a
// Siegel point as {"genus": g, "entries": [[...]]}. Inline shorthand
// ("i", "2i", "1+2i", "diag(i,2i)") is accepted for small matrices;
// canonical input remains JSON.

#pragma once

#include <string>

#include <json.hpp>

#include "siegeltheta/fubini.hpp"

namespace siegeltheta {

using Json = nlohmann::json;

Json complex_to_json(const Complex& c);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json to_json(const SiegelPoint& p);
Json to_json(const ProjectivePoint& p);
Json to_json(const MixingMatrix& m);
Json to_json(const HermitianForm& h);   // labels are 1-based (i, j) pairs
Json to_json(const NondescentReport& r);

/// Accepts {"genus": ..., "entries": ...} or a bare nested array.
SiegelPoint siegel_from_json(const Json& j, double tol = 1e-12);

/// "i", "-2i", "1+2i", "1.5", "[0,1]".
Complex parse_complex_arg(const std::string& text);

/// Shorthand ("i", "diag(i,2i)"), inline JSON, or a path to a JSON file.
Eigen::MatrixXcd parse_matrix_arg(const std::string& text);

/// JSON array whose elements are numbers or [re, im] pairs, e.g. "[[0,0]]".
Eigen::VectorXcd parse_vector_arg(const std::string& text);

/// "01|10" (one digit per entry) or "0,1|1,0" (signed integers allowed).
Characteristic parse_characteristic(const std::string& text);

}  // namespace siegeltheta
