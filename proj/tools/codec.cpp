#include "codec.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "canht/error.hpp"

namespace canht::cli {

namespace {

Rational rational_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError(std::string(what) + " must be an integer or a string \"p/q\"");
}

}  // namespace

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing member \"") + key + "\"");
  return j.at(key);
}

long long integer_from_json(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

NumberField field_from_json(const json& j) {
  const json& coeffs = j.is_object() ? member(j, "coefficients") : j;
  if (!coeffs.is_array() || coeffs.size() < 2) throw ParseError("defining polynomial needs at least two coefficients");
  std::vector<Rational> c;
  for (const auto& x : coeffs) c.push_back(rational_from_json(x, "coefficient"));
  bool monogenic = false;
  if (j.is_object() && j.contains("monogenic")) {
    if (!j["monogenic"].is_boolean()) throw ParseError("\"monogenic\" must be a boolean");
    monogenic = j["monogenic"].get<bool>();
  }
  return NumberField::create(QPoly(c), monogenic);
}

NumberField resolve_field(const FieldSpec& spec) {
  if (spec.cyclotomic && spec.minpoly_file) throw ParseError("--cyclotomic and --minpoly are exclusive");
  if (spec.cyclotomic) return NumberField::cyclotomic(*spec.cyclotomic);
  if (!spec.minpoly_file) return NumberField();
  std::ifstream in(*spec.minpoly_file);
  if (!in) throw ParseError("cannot read " + *spec.minpoly_file);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(*spec.minpoly_file + ": " + e.what());
  }
  return field_from_json(j);
}

json field_to_json(const NumberField& K) {
  json j;
  j["degree"] = K.degree();
  j["defining_polynomial"] = K.defining_poly().str('x');
  if (K.cyclotomic_order() > 0)
    j["cyclotomic"] = K.cyclotomic_order();
  else
    j["cyclotomic"] = nullptr;
  return j;
}

double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

FieldElem element_from_json(const NumberField& K, const json& j) {
  if (j.is_number_integer()) return FieldElem(K, Rational(j.get<long long>()));
  if (!j.is_string()) throw ParseError("field elements are strings or integers");
  return FieldElem::parse(K, j.get<std::string>());
}

json element_to_json(const FieldElem& x) { return x.str(); }

std::vector<FieldElem> elements_from_json(const NumberField& K, const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of field elements");
  std::vector<FieldElem> out;
  for (const auto& x : j) out.push_back(element_from_json(K, x));
  return out;
}

json elements_to_json(const std::vector<FieldElem>& xs) {
  json j = json::array();
  for (const auto& x : xs) j.push_back(element_to_json(x));
  return j;
}

MatrixK matrix_from_json(const NumberField& K, const json& j) {
  const json& rows = j.is_object() ? member(j, "matrix") : j;
  if (!rows.is_array() || rows.empty()) throw ParseError("a matrix is a nonempty array of rows");
  std::vector<std::vector<FieldElem>> m;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != rows.size()) throw ParseError("matrix must be square");
    m.push_back(elements_from_json(K, row));
  }
  return MatrixK(K, std::move(m));
}

json matrix_to_json(const MatrixK& m) {
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(element_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json height_to_json(const HeightValue& h) {
  json j;
  j["value"] = round12(h.value);
  j["abs_error"] = round12(h.abs_error);
  j["exact_zero"] = h.exact_zero;
  return j;
}

TorsionCoset coset_from_json(const json& j) {
  const json& tr = member(j, "translate");
  if (!tr.is_array() || tr.empty()) throw ParseError("translate must be a nonempty array");
  std::vector<Rational> translate;
  for (const auto& x : tr) translate.push_back(rational_from_json(x, "translate entry"));
  const std::size_t t = translate.size();
  const json& gens = member(j, "lattice");
  if (!gens.is_array()) throw ParseError("lattice must be an array of integer vectors");
  ZMatrix basis(t, std::vector<BigInt>(gens.size()));
  for (std::size_t c = 0; c < gens.size(); ++c) {
    if (!gens[c].is_array() || gens[c].size() != t) throw ParseError("lattice vectors must have the translate's length");
    for (std::size_t i = 0; i < t; ++i) basis[i][c] = static_cast<long>(integer_from_json(gens[c][i], "lattice entry"));
  }
  return TorsionCoset::make(SubtorusLattice::make(static_cast<int>(t), std::move(basis)), std::move(translate));
}

json coset_to_json(const TorsionCoset& c) {
  json j;
  json tr = json::array();
  for (const auto& q : c.translate) tr.push_back(q.str());
  j["translate"] = std::move(tr);
  json gens = json::array();
  for (int col = 0; col < c.lattice.rank(); ++col) {
    json v = json::array();
    for (const auto& row : c.lattice.basis) v.push_back(row[static_cast<std::size_t>(col)].get_si());
    gens.push_back(std::move(v));
  }
  j["lattice"] = std::move(gens);
  return j;
}

BorelElement borel_from_json(const FieldSpec& spec, const json& j) {
  NumberField K;
  std::vector<FieldElem> diag;
  if (j.is_object() && j.contains("diag_roots")) {
    if (spec.declared()) throw ParseError("\"diag_roots\" selects its own field; drop --cyclotomic/--minpoly");
    const json& roots = j["diag_roots"];
    if (!roots.is_array() || roots.size() != 3) throw ParseError("\"diag_roots\" needs three [k, n] pairs");
    std::vector<std::pair<long long, long long>> kn;
    long long L = 1;
    for (const auto& r : roots) {
      if (!r.is_array() || r.size() != 2) throw ParseError("\"diag_roots\" entries are [k, n]");
      long long k = integer_from_json(r[0], "root exponent"), n = integer_from_json(r[1], "root order");
      if (n < 1 || n > 1000) throw ParseError("root orders must lie in 1..1000");
      kn.emplace_back(k, n);
      L = std::lcm(L, n);
    }
    if (L > 10000) throw ParseError("lcm of the root orders is too large");
    K = NumberField::cyclotomic(static_cast<int>(L));
    FieldElem zeta = L == 2 ? FieldElem(K, Rational(-1)) : FieldElem::generator(K);
    for (const auto& [k, n] : kn) diag.push_back(zeta.pow(((k % n + n) % n) * (L / n)));
  } else {
    K = resolve_field(spec);
    diag = elements_from_json(K, member(j, "diag"));
    if (diag.size() != 3) throw ParseError("\"diag\" needs three entries");
  }
  return BorelElement(element_from_json(K, member(j, "a")), element_from_json(K, member(j, "b")),
                      element_from_json(K, member(j, "c")), diag[0], diag[1], diag[2]);
}

json borel_to_json(const BorelElement& p) {
  json j;
  j["a"] = element_to_json(p.a());
  j["b"] = element_to_json(p.b());
  j["c"] = element_to_json(p.c());
  j["diag"] = elements_to_json({p.lambda(), p.mu(), p.epsilon()});
  return j;
}

}  // namespace canht::cli
