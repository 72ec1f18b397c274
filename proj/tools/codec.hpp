#pragma once

// JSON encodings of the library's values. Decoders throw ParseError for
// anything malformed; encoders produce text the decoders accept.

#include <optional>
#include <string>
#include <vector>

#include "canht/borel.hpp"
#include "canht/heights.hpp"
#include "canht/quotient.hpp"
#include "json.hpp"

namespace canht::cli {

using json = nlohmann::ordered_json;

// Either --cyclotomic M or --minpoly FILE; neither means Q.
struct FieldSpec {
  std::optional<int> cyclotomic;
  std::optional<std::string> minpoly_file;
  bool declared() const { return cyclotomic || minpoly_file; }
};

NumberField resolve_field(const FieldSpec& spec);
// {"coefficients": [...], "monogenic": bool} or a bare coefficient array,
// lowest degree first.
NumberField field_from_json(const json& j);
json field_to_json(const NumberField& K);

// Rounds to 12 significant digits.
double round12(double x);

FieldElem element_from_json(const NumberField& K, const json& j);
json element_to_json(const FieldElem& x);
std::vector<FieldElem> elements_from_json(const NumberField& K, const json& j);
json elements_to_json(const std::vector<FieldElem>& xs);

// Square array of rows, or {"matrix": rows}.
MatrixK matrix_from_json(const NumberField& K, const json& j);
json matrix_to_json(const MatrixK& m);

json height_to_json(const HeightValue& h);

// {"translate": [q_1, ..., q_t], "lattice": [v_1, ..., v_r]} with each v_i an
// integer vector of length t.
TorsionCoset coset_from_json(const json& j);
json coset_to_json(const TorsionCoset& c);

// {"a", "b", "c", "diag": [lambda, mu, epsilon]} over K. Without a declared
// field, "diag_roots": [[k, n], ...] gives exp(2 pi i k / n) and the field
// becomes Q(zeta_lcm) of the denominators.
BorelElement borel_from_json(const FieldSpec& spec, const json& j);
json borel_to_json(const BorelElement& p);

// Reads a required member, or throws ParseError naming it.
const json& member(const json& j, const char* key);
long long integer_from_json(const json& j, const char* what);

}  // namespace canht::cli
