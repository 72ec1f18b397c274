#include "commands.hpp"

#include <charconv>

#include "canht/error.hpp"

namespace canht::cli {

namespace {

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw ParseError(std::string(what) + " must be an integer");
  return v;
}

json optional_order(const char* flag, const std::optional<long long>& n) {
  json j;
  j[flag] = n.has_value();
  if (n)
    j["order"] = *n;
  else
    j["order"] = nullptr;
  return j;
}

json height(const std::string& mode, const Options& opt, const json& in) {
  NumberField K = resolve_field(opt.field);
  if (mode == "weil") {
    const json& x = in.is_object() ? member(in, "element") : in;
    return height_to_json(weil_height(element_from_json(K, x), opt.eps));
  }
  if (mode == "projective") {
    const json& p = in.is_object() ? member(in, "point") : in;
    return height_to_json(projective_height(K, elements_from_json(K, p), opt.eps));
  }
  MatrixK g = matrix_from_json(K, in);
  if (mode == "canonical") return height_to_json(canonical_height_glt(g, opt.eps));

  std::optional<NumberField> splitting;
  if (in.is_object() && in.contains("splitting_cyclotomic"))
    splitting = NumberField::cyclotomic(static_cast<int>(integer_from_json(in["splitting_cyclotomic"], "splitting_cyclotomic")));
  if (mode == "breuillard") {
    BreuillardResult r = breuillard_height(g, splitting, opt.eps);
    json j;
    j["exact"] = r.exact;
    j["value"] = r.exact ? height_to_json(r.value) : json(nullptr);
    j["lower"] = height_to_json(r.lower);
    j["upper"] = height_to_json(r.upper);
    j["eigenvalues"] = elements_to_json(r.eigenvalues);
    if (!r.eigenvalues.empty())
      j["field"] = field_to_json(r.eigenvalues.front().field());
    else
      j["field"] = nullptr;
    return j;
  }
  if (mode == "sandwich") {
    SandwichReport r = check_sandwich(g, splitting, opt.eps);
    json j;
    j["lower"] = height_to_json(r.lower);
    j["middle"] = height_to_json(r.middle);
    j["upper"] = height_to_json(r.upper);
    j["holds"] = r.holds;
    j["lower_equality"] = r.lower_equality;
    j["upper_equality"] = r.upper_equality;
    return j;
  }
  throw ParseError("unknown height mode \"" + mode + "\"");
}

json classify(const std::string& mode, const Options& opt, const json& in) {
  NumberField K = resolve_field(opt.field);
  MatrixK g = matrix_from_json(K, in);
  if (mode == "torsion") return optional_order("torsion", is_torsion(g));
  if (mode == "u-torsion") return optional_order("unipotent_torsion", is_unipotent_torsion(g));
  if (mode == "jordan") {
    JordanPair jp = jordan_chevalley(g);
    json j;
    j["semisimple"] = matrix_to_json(jp.semisimple_part);
    j["unipotent"] = matrix_to_json(jp.unipotent_part);
    return j;
  }
  if (mode == "fiber") {
    FiberInvariant f = pi_invariants(g);
    json j;
    j["invariants"] = elements_to_json(f.coefficients);
    j["det_nonzero"] = f.det_nonzero;
    j["closed_representative"] = matrix_to_json(closed_class_representative(g));
    return j;
  }
  throw ParseError("unknown classify mode \"" + mode + "\"");
}

json intersect_curves(const std::vector<std::string>& args) {
  if (args.size() != 2) throw ParseError("intersect curves takes k1 and k2");
  const int k1 = parse_int(args[0], "k1"), k2 = parse_int(args[1], "k2");
  SpecialCurveIntersection r = intersect_special_curves(k1, k2);
  json j;
  j["k1"] = k1;
  j["k2"] = k2;
  j["orders"] = r.orders;
  j["field"] = field_to_json(r.field);
  json points = json::array(), exps = json::array(), fibers = json::array();
  FieldElem zeta = r.L == 2 ? FieldElem(r.field, Rational(-1)) : FieldElem::generator(r.field);
  for (const auto& p : r.points) {
    points.push_back(json::array({element_to_json(p.trace), element_to_json(p.det)}));
    exps.push_back(p.lambda_exponent);
    fibers.push_back(to_string(classify_intersection_fiber(k1, zeta.pow(p.lambda_exponent))));
  }
  j["points"] = std::move(points);
  j["lambda_exponents"] = std::move(exps);
  j["fibers"] = std::move(fibers);
  return j;
}

json intersect_cosets(const json& in) {
  TorsionCoset c1 = coset_from_json(member(in, "first"));
  TorsionCoset c2 = coset_from_json(member(in, "second"));
  json comps = json::array();
  for (const auto& c : intersect_torsion_cosets(c1, c2)) comps.push_back(coset_to_json(c));
  json j;
  j["empty"] = comps.empty();
  j["components"] = std::move(comps);
  return j;
}

json sl2(const Options& opt, const json& in) {
  NumberField K = resolve_field(opt.field);
  const json& x = in.is_object() ? member(in, "tau") : in;
  json j;
  j["fiber"] = to_string(sl2_fiber_classify(element_from_json(K, x)));
  return j;
}

json borel(const Request& req, const Options& opt, const json& in) {
  BorelElement p = borel_from_json(opt.field, in);
  if (req.mode == "torsion") {
    json j = optional_order("torsion", borel_is_torsion_strata(p));
    auto diag = classify_diagonal(p);
    if (diag)
      j["stratum"] = to_string(diag->stratum);
    else
      j["stratum"] = nullptr;
    j["closure_equation"] = borel_closure_equation(p);
    j["field"] = field_to_json(p.field());
    return j;
  }
  if (req.mode == "pow") {
    if (req.args.size() != 1) throw ParseError("borel pow takes the exponent n");
    json j = borel_to_json(borel_pow(p, parse_int(req.args[0], "n")));
    j["field"] = field_to_json(p.field());
    return j;
  }
  throw ParseError("unknown borel mode \"" + req.mode + "\"");
}

}  // namespace

bool Request::needs_input() const { return !(command == "intersect" && mode == "curves"); }

json run(const Request& req, const Options& opt, const json& input) {
  if (req.command == "height") return height(req.mode, opt, input);
  if (req.command == "classify") return classify(req.mode, opt, input);
  if (req.command == "intersect") {
    if (req.mode == "curves") return intersect_curves(req.args);
    if (req.mode == "cosets") return intersect_cosets(input);
    throw ParseError("unknown intersect mode \"" + req.mode + "\"");
  }
  if (req.command == "sl2-fiber") return sl2(opt, input);
  if (req.command == "borel") return borel(req, opt, input);
  throw ParseError("unknown command \"" + req.command + "\"");
}

}  // namespace canht::cli
