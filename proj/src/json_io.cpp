#include "ballmap/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ballmap {

Json rational_to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

Json rvec_to_json(const RVec& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(rational_to_json(q));
  return a;
}

RVec rvec_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  RVec v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Json to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coeff", format_rational(c)}});
  return {{"nvars", p.nvars()}, {"terms", terms}};
}

MultiPoly multipoly_from_json(const Json& j) {
  MultiPoly p(j.at("nvars").get<int>());
  for (const auto& t : j.at("terms")) {
    auto e = t.at("exp").get<std::vector<int>>();
    for (int k : e)
      if (k < 0) throw std::invalid_argument("negative exponent");
    p.add_term(e, rational_from_json(t.at("coeff")));
  }
  return p;
}

Json to_json(const UniPoly& p) {
  Json c = Json::array();
  for (const auto& q : p.coeffs()) c.push_back(format_rational(q));
  return {{"coeffs", c}};
}

UniPoly unipoly_from_json(const Json& j) { return UniPoly(rvec_from_json(j.at("coeffs"))); }

Json to_json(const PolyMap& f) {
  Json stages = Json::array();
  for (const auto& s : f.stages()) {
    Json comps = Json::array();
    for (const auto& c : s.comps) comps.push_back(to_json(c));
    stages.push_back({{"nin", s.nin}, {"components", comps}});
  }
  return {{"nvars", f.nvars()},   {"nout", f.nout()},         {"trace", f.trace()},
          {"float_tag", f.float_tag()}, {"stages", stages}};
}

PolyMap polymap_from_json(const Json& j) {
  int nvars = j.at("nvars").get<int>();
  std::vector<Stage> stages;
  if (j.contains("stages")) {
    for (const auto& s : j.at("stages")) {
      Stage st{s.at("nin").get<int>(), {}};
      for (const auto& c : s.at("components")) st.comps.push_back(multipoly_from_json(c));
      stages.push_back(std::move(st));
    }
  } else if (j.contains("components")) {
    Stage st{nvars, {}};
    for (const auto& c : j.at("components")) st.comps.push_back(multipoly_from_json(c));
    stages.push_back(std::move(st));
  }
  PolyMap f = PolyMap::from_stages(nvars, std::move(stages));
  if (j.contains("trace"))
    for (const auto& t : j.at("trace")) f.add_trace(t.get<std::string>());
  if (j.contains("float_tag")) f.set_float_tag(j.at("float_tag").get<bool>());
  if (j.contains("nout") && j.at("nout").get<int>() != f.nout())
    throw std::invalid_argument("declared nout disagrees with stages");
  return f;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << "\n";
}

}  // namespace ballmap
