#include "singfold/families.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>
#include <stdexcept>

namespace singfold {

namespace {

QPoly P(const std::string& s) { return parse_polynomial(s); }

AffineAction action(std::string name, const std::string& x, const std::string& y, const std::string& z) {
  return AffineAction{std::move(name), {{"x", P(x)}, {"y", P(y)}, {"z", P(z)}}};
}

Stratum stratum(std::string id, std::string condition, std::vector<std::string> eqs, std::vector<std::string> ineqs,
                const std::string& qtype, std::string pre, std::vector<std::string> free,
                std::map<std::string, std::string> sampler) {
  Stratum s;
  s.id = std::move(id);
  s.condition = std::move(condition);
  for (auto& e : eqs) s.equations.push_back(P(e));
  for (auto& e : ineqs) s.inequations.push_back(P(e));
  s.quotient_type = TypeMultiset::parse(qtype);
  s.prequotient = std::move(pre);
  s.free_symbols = std::move(free);
  for (auto& [k, v] : sampler) s.sampler[k] = P(v);
  return s;
}

// parameters given by the roots of a cubic in w = z^2
std::map<std::string, std::string> cubic_roots_sampler(const std::string& r1, const std::string& r2,
                                                        const std::string& r3, bool negate) {
  const std::string sum = "(" + r1 + ")+(" + r2 + ")+(" + r3 + ")";
  const std::string e2 = "(" + r1 + ")*(" + r2 + ")+(" + r1 + ")*(" + r3 + ")+(" + r2 + ")*(" + r3 + ")";
  const std::string prod = "(" + r1 + ")*(" + r2 + ")*(" + r3 + ")";
  const std::string t2 = negate ? "-(" + sum + ")" : "(" + sum + ")";
  const std::string t4 = "(" + e2 + ")-(" + t2 + ")^2/4";
  const std::string c = negate ? "-(" + prod + ")" : "(" + prod + ")";
  const std::string t6 = c + "-(" + t2 + ")*(" + t4 + ")/6-(" + t2 + ")^3/108";
  return {{"t2", t2}, {"t4", t4}, {"t6", t6}};
}

const char* kB3H1 = "t6 + t2*t4/6 + t2^3/108";
const char* kB3H2 = "-t2^6/432 + t2^4*t4/12 - t2^2*t4^2/4 - 9*t2*t4*t6 + 4*t4^3 + 27*t6^2";
const char* kC3H = "t2^6/6912 - t2^4*t4/192 + t2^2*t4^2/64 + 9/16*t2*t4*t6 - t4^3/4 - 27/16*t6^2";
const char* kF4H1 =
    "t2^12 - 144*t2^9*t6 + 576*t2^8*t8 + 5184*t2^6*t6^2 - 13824*t2^5*t6*t8 - 138240*t2^4*t8^2 - 69120*t2^3*t6^3 "
    "- 331776*t12*t2^3*t6 + 829440*t2^2*t6^2*t8 + 3981312*t12*t2^2*t8 - 5308416*t2*t6*t8^2 - 248832*t6^4 "
    "+ 3981312*t12*t6^2 + 7077888*t8^3 - 15925248*t12^2";

CaseDescriptor make_b2() {
  CaseDescriptor d;
  d.meta = case_meta("A3B2D4");
  d.quotient_variables = {"X", "W", "Z"};
  d.fiber_text = "z^4 + t2*z^2 + t4 + t2^2/8 - x*y";
  d.quotient_text = "Z*(X^2 - 4*Z^2) + W^2 - 4*t2*Z^2 - 4*(t4 + t2^2/8)*Z";
  d.generators = {action("sigma", "y", "x", "-z")};
  d.parameters = {"t2", "t4"};
  d.weights = {{"x", 2}, {"y", 2}, {"z", 1}, {"t2", 2}, {"t4", 4}};
  d.quotient_generators = {{"X", P("x + y"), 1}, {"W", P("z*(x - y)"), -1}, {"Z", P("z^2"), 1}};
  d.strata = {
      stratum("origin", "t = 0", {"t2", "t4"}, {}, "D4", "A3", {}, {{"t2", "0"}, {"t4", "0"}}),
      stratum("t4=-t2^2/8", "t4 = -t2^2/8, t2 != 0", {"t4 + t2^2/8"}, {"t2"}, "A3", "A1", {"s1"},
              {{"t2", "s1"}, {"t4", "-s1^2/8"}}),
      stratum("t4=t2^2/8", "t4 = t2^2/8, t2 != 0", {"t4 - t2^2/8"}, {"t2"}, "A1^3", "A1@2+p+p", {"s1"},
              {{"t2", "s1"}, {"t4", "s1^2/8"}}),
      stratum("generic", "generic", {}, {}, "A1+A1", "p+p", {"s1", "s2"}, {{"t2", "s1"}, {"t4", "s2"}}),
  };
  return d;
}

CaseDescriptor make_b3() {
  CaseDescriptor d;
  d.meta = case_meta("A5B3D5");
  d.quotient_variables = {"X", "W", "Z"};
  d.fiber_text = "z^6 + t2*z^4 + (t4 + t2^2/4)*z^2 + t6 + t2*t4/6 + t2^3/108 - x*y";
  d.quotient_text =
      "Z*(X^2 + 4*Z^3) + W^2 + 4*t2*Z^3 + 4*(t4 + t2^2/4)*Z^2 + 4*(t6 + t2*t4/6 + t2^3/108)*Z";
  d.generators = {action("sigma", "-y", "-x", "-z")};
  d.parameters = {"t2", "t4", "t6"};
  d.weights = {{"x", 3}, {"y", 3}, {"z", 1}, {"t2", 2}, {"t4", 4}, {"t6", 6}};
  d.quotient_generators = {{"X", P("x - y"), 1}, {"W", P("z*(x + y)"), -1}, {"Z", P("z^2"), 1}};
  d.named_loci = {{"H1", P(kB3H1)}, {"H2", P(kB3H2)}};
  const std::string h1 = kB3H1, h2 = kB3H2;
  d.strata = {
      stratum("origin", "t = 0", {"t2", "t4", "t6"}, {}, "D5", "A5", {}, {{"t2", "0"}, {"t4", "0"}, {"t6", "0"}}),
      stratum("H1&t4=0", "H1, t4 = 0, t2 != 0", {h1, "t4"}, {"t2"}, "A3+A1", "A1+A1@2", {"s1"},
              cubic_roots_sampler("0", "s1", "s1", true)),
      stratum("H1&t4=-t2^2/4", "H1, t4 = -t2^2/4 != 0", {h1, "t4 + t2^2/4"}, {"t4"}, "D4", "A3", {"s1"},
              cubic_roots_sampler("0", "0", "s1", true)),
      stratum("H1", "H1, t4 != 0", {h1}, {"t4"}, "A3", "A1", {"s1", "s2"}, cubic_roots_sampler("0", "s1", "s2", true)),
      stratum("H2&t4=t2^2/12", "H2, t4 = t2^2/12 != 0", {h2, "t4 - t2^2/12"}, {"t4"}, "A2+A1+A1", "p+p+A2@2",
              {"s1"}, cubic_roots_sampler("s1", "s1", "s1", true)),
      stratum("H2", "H2, t != 0", {h2}, {}, "A1^3", "p+p+A1@2", {"s1", "s2"},
              cubic_roots_sampler("s1", "s1", "s2", true)),
      stratum("generic", "generic", {}, {}, "A1+A1", "p+p", {"s1", "s2", "s3"},
              {{"t2", "s1"}, {"t4", "s2"}, {"t6", "s3"}}),
  };
  return d;
}

CaseDescriptor make_c3() {
  CaseDescriptor d;
  d.meta = case_meta("D4C3D6");
  d.quotient_variables = {"X", "Y", "W"};
  d.fiber_text = "z^2 - x*y*(x + y) + t2/2*x*y + t4/4*x - (t6 + t2*t4/6 + t2^3/108)/4";
  d.quotient_text =
      "-1/64*X^5 + X*Y^2 - W^2 + t2/32*X^4 + (-3/128*t2^2 - 1/32*t4)*X^3"
      " + (7/192*t2*t4 + 1/32*t6 + 7/864*t2^3)*X^2"
      " + (-1/32*t6*t2 - 5/384*t2^2*t4 - 35/27648*t2^4 - 1/64*t4^2)*X"
      " + (1/4*t6 + 1/24*t2*t4 + 1/432*t2^3)*Y"
      " + 1/128*t6*t2^2 + 1/32*t6*t4 + 11/6912*t2^3*t4 + 1/192*t2*t4^2 + 1/13824*t2^5";
  d.generators = {action("sigma", "x", "-x - y + t2/2", "-z")};
  d.parameters = {"t2", "t4", "t6"};
  d.weights = {{"x", 2}, {"y", 2}, {"z", 3}, {"t2", 2}, {"t4", 4}, {"t6", 6}};
  const std::string u = "(y + x/2 - t2/4)";
  d.quotient_generators = {{"X", P("x"), 1},
                           {"Y", P(u + "^2 - x^2/8 + t2*x/8 - t2^2/32 - t4/8"), 1},
                           {"W", P("z*" + u), 1}};
  d.named_loci = {{"L", P(kB3H1)}, {"H", P(kC3H)}};
  const std::string l = kB3H1, h = kC3H;
  d.strata = {
      stratum("origin", "t = 0", {"t2", "t4", "t6"}, {}, "D6", "D4", {}, {{"t2", "0"}, {"t4", "0"}, {"t6", "0"}}),
      stratum("L&t4=-t2^2/4", "L, t4 = -t2^2/4 != 0", {l, "t4 + t2^2/4"}, {"t4"}, "D4+A1", "A3+p", {"s1"},
              cubic_roots_sampler("0", "0", "s1", false)),
      stratum("L&H", "L, H, t != 0", {l, h}, {"t2"}, "A3+A1+A1", "A1@2+A1+p", {"s1"},
              cubic_roots_sampler("0", "s1", "s1", false)),
      stratum("L", "L, t != 0", {l}, {}, "A1^4", "A1@2+p+p+p", {"s1", "s2"},
              cubic_roots_sampler("0", "s1", "s2", false)),
      stratum("H&t4=t2^2/12", "H, t4 = t2^2/12 != 0", {h, "t4 - t2^2/12"}, {"t4"}, "A5", "A2", {"s1"},
              cubic_roots_sampler("s1", "s1", "s1", false)),
      stratum("H", "H, t != 0", {h}, {}, "A3+A1", "A1+p", {"s1", "s2"}, cubic_roots_sampler("s1", "s1", "s2", false)),
      stratum("generic", "generic", {}, {}, "A1^3", "p+p+p", {"s1", "s2", "s3"},
              {{"t2", "s1"}, {"t4", "s2"}, {"t6", "s3"}}),
  };
  return d;
}

const char* kG2Fiber = "z^2 - x*y*(x + y) + t2/2*x*y - (t6 + t2^3/108)/4";
const char* kG2Anti = "(x - y)*(2*x + y - t2/2)*(x + 2*y - t2/2)";
const char* kG2Q = "12*((x - t2/6)^2 + (x - t2/6)*(y - t2/6) + (y - t2/6)^2) - 3*t2^2/4";

std::vector<Stratum> g2_strata(const std::vector<std::string>& types, const std::vector<std::string>& pre) {
  return {
      stratum("origin", "t = 0", {"t2", "t6"}, {}, types[0], pre[0], {}, {{"t2", "0"}, {"t6", "0"}}),
      stratum("t6=-t2^3/108", "t6 = -t2^3/108, t2 != 0", {"t6 + t2^3/108"}, {"t2"}, types[1], pre[1], {"s1"},
              {{"t2", "s1"}, {"t6", "-s1^3/108"}}),
      stratum("t6=t2^3/108", "t6 = t2^3/108, t2 != 0", {"t6 - t2^3/108"}, {"t2"}, types[2], pre[2], {"s1"},
              {{"t2", "s1"}, {"t6", "s1^3/108"}}),
      stratum("generic", "generic", {}, {}, types[3], pre[3], {"s1", "s2"}, {{"t2", "s1"}, {"t6", "s2"}}),
  };
}

CaseDescriptor make_g2_z3() {
  CaseDescriptor d;
  d.meta = case_meta("D4G2E6");
  d.quotient_variables = {"X", "Y", "Z"};
  d.fiber_text = kG2Fiber;
  d.quotient_text =
      "11664*X^4 - Y^3 - Z^2 - 324*t2*X^2*Y - (189*t2^3 + 5832*t6)*X^2 + (81*t2*t6 + 15/16*t2^4)*Y"
      " + 11/32*t2^6 + 189/4*t2^3*t6 + 729*t6^2";
  d.generators = {action("rho", "y", "-x - y + t2/2", "z")};
  d.parameters = {"t2", "t6"};
  d.weights = {{"x", 2}, {"y", 2}, {"z", 3}, {"t2", 2}, {"t6", 6}};
  d.quotient_generators = {{"X", P("z"), 1}, {"Y", P(kG2Q), 1}, {"Z", P(kG2Anti), -432}};
  d.strata = g2_strata({"E6", "A2+A2+A1", "A5", "A2+A2"}, {"D4", "A1@3+p+p", "A1", "p+p"});
  return d;
}

CaseDescriptor make_g2_s3() {
  CaseDescriptor d;
  d.meta = case_meta("D4G2E7");
  d.quotient_variables = {"X", "Y", "Z"};
  d.fiber_text = kG2Fiber;
  d.quotient_text =
      "X^3*Y - 11664*Y^3 + Z^2 + 324*t2*X*Y^2 + (189*t2^3 + 5832*t6)*Y^2 - (15/16*t2^4 + 81*t2*t6)*X*Y"
      " - (11/32*t2^6 + 189/4*t2^3*t6 + 729*t6^2)*Y";
  d.generators = {action("rho", "y", "-x - y + t2/2", "z"), action("sigma", "x", "-x - y + t2/2", "-z")};
  d.parameters = {"t2", "t6"};
  d.weights = {{"x", 2}, {"y", 2}, {"z", 3}, {"t2", 2}, {"t6", 6}};
  d.quotient_generators = {
      {"X", P(kG2Q), 1}, {"Y", P("z^2"), 1}, {"Z", P(std::string("z*") + kG2Anti), -432}};
  d.strata = g2_strata({"E7", "A3+A2+A1", "D5+A1", "A2+A1+A1+A1"}, {"D4", "A1@3", "A1", "smooth"});
  return d;
}

CaseDescriptor make_f4() {
  CaseDescriptor d;
  d.meta = case_meta("E6F4E7");
  d.quotient_variables = {"X", "Y", "Z"};
  const std::string c6 = "1/48*(t6 - t2^3/8)";
  const std::string c8 = "1/48*(-t8 + t6*t2/4 - t2^4/192)";
  const std::string c12 = "1/576*(t12 - t8*t2^2/8 - t6^2/8 + t6*t2^3/96)";
  d.fiber_text = "-1/4*x^4 + y^3 + z^2 - t2/4*x^2*y + " + c6 + "*x^2 + " + c8 + "*y + " + c12;
  d.quotient_text = "-1/4*X^3 + X*Y^3 + Z^2 - t2/4*X^2*Y + " + c6 + "*X^2 + " + c8 + "*X*Y + " + c12 + "*X";
  d.generators = {action("sigma", "-x", "y", "-z")};
  d.parameters = {"t2", "t6", "t8", "t12"};
  d.weights = {{"x", 3}, {"y", 4}, {"z", 6}, {"t2", 2}, {"t6", 6}, {"t8", 8}, {"t12", 12}};
  d.quotient_generators = {{"X", P("x^2"), 1}, {"Y", P("y"), 1}, {"Z", P("x*z"), 1}};
  QPoly h1 = P(kF4H1);
  QPoly h2 = h1.substitute({{"t6", P("-t6")}, {"t12", P("-t12")}});
  d.named_loci = {{"H1", h1}, {"H2", h2}};
  const std::string H1 = h1.to_string(), H2 = h2.to_string();
  const std::string plus = "t8 + t2^4/192 - t2*t6/4", minus = "t8 + t2^4/192 + t2*t6/4";
  const std::string d4 = "96*t2^2*t8 - t2^6 - 96*t6^2";

  // H1 chart in (t2, t6, y1)
  auto on_h1 = [](const std::string& t2, const std::string& t6, const std::string& y1) {
    const std::string t8 = "(" + t6 + ")*(" + t2 + ")/4 - (" + t2 + ")^4/192 + 144*(" + y1 + ")^2";
    const std::string t12 = "1152*(" + y1 + ")^3 + (" + t8 + ")*(" + t2 + ")^2/8 + (" + t6 + ")^2/8 - (" + t6 +
                            ")*(" + t2 + ")^3/96";
    return std::map<std::string, std::string>{{"t2", t2}, {"t6", t6}, {"t8", t8}, {"t12", t12}};
  };
  // H2 chart in (t2, X0, y0)
  auto on_h2 = [](const std::string& t2, const std::string& x0, const std::string& y0) {
    const std::string a = "(" + t2 + ")", X = "(" + x0 + ")", Y = "(" + y0 + ")";
    return std::map<std::string, std::string>{
        {"t2", t2},
        {"t6", "24*" + X + " + " + a + "^3/8 + 12*" + a + "*" + Y},
        {"t8", "-6*" + X + "*" + a + " + 5*" + a + "^4/192 + 3*" + a + "^2*" + Y + " + 144*" + Y + "^2"},
        {"t12", "-72*" + X + "^2 - " + X + "*" + a + "^3/4 - 72*" + X + "*" + a + "*" + Y + " + " + a +
                    "^6/256 + 5*" + a + "^4*" + Y + "/8 + 36*" + a + "^2*" + Y + "^2 + 1152*" + Y + "^3"}};
  };
  // D4-type curve on H1: t6 = t2*u with y1 = (t2^2 - 8u)/96
  auto d4_curve = [&](const std::string& u) {
    return on_h1("s1", "s1*(" + u + ")", "(8*(" + u + ") - s1^2)/96");
  };
  const std::string row9s = "(s2 + 1)^2/16";
  d.strata = {
      stratum("origin", "t = 0", {"t2", "t6", "t8", "t12"}, {}, "E7", "E6", {},
              {{"t2", "0"}, {"t6", "0"}, {"t8", "0"}, {"t12", "0"}}),
      stratum("H1&D6", "H1, t2^3 = 8*t6, t2 != 0", {H1, d4, "t2^3 - 8*t6"}, {"t2"}, "D6", "D4", {"s1"},
              d4_curve("s1^2/8")),
      stratum("H1&D5", "H1, t2^3 = -8*t6, t2 != 0", {H1, d4, "t2^3 + 8*t6"}, {"t2"}, "D5+A1", "A5+p", {"s1"},
              d4_curve("-s1^2/8")),
      stratum("H1&H2&plus", "H1, H2, plus curve, t2 != 0", {H1, H2, plus}, {"t2"}, "A5+A1", "A2+A1@2", {"s1"},
              on_h2("s1", "s1^3/108", "-s1^2/36")),
      stratum("H1&H2&minus", "H1, H2, minus curve, t2 != 0", {H1, H2, minus}, {"t2"}, "A3+A2+A1", "A2@2+A1+p",
              {"s1"}, on_h2("s1", "s1^3/216", "-s1^2/48")),
      stratum("H1&D4", "H1, D4 locus, t2 != 0", {H1, d4}, {"t2"}, "D4+A1", "A3+p", {"s1", "s2"}, d4_curve("s2")),
      stratum("H1&plus", "H1, plus surface", {H1, plus}, {}, "A5", "A2", {"s1", "s2"},
              on_h1("s1", "s2", "0")),
      stratum("H1&H2", "H1, H2, t2 != 0", {H1, H2}, {"t2"}, "A3+A1+A1", "A1@2+A1+p", {"s1", "s2"},
              on_h2("s1", "s1^3*(1/108 + s2*" + row9s + ")", "s1^2*(-1/36 + " + row9s + ")")),
      stratum("H2&minus", "H2, minus surface, t2 != 0", {H2, minus}, {"t2"}, "A2+A1^3", "A2@2+p+p+p",
              {"s1", "s2"}, on_h2("s1", "s2", "-s1^2/48")),
      stratum("H1", "H1", {H1}, {}, "A3+A1", "A1+p", {"s1", "s2", "s3"}, on_h1("s1", "s2", "s3")),
      stratum("H2", "H2, t2 != 0", {H2}, {"t2"}, "A1^4", "A1@2+p+p+p", {"s1", "s2", "s3"},
              on_h2("s1", "s2", "s3")),
      stratum("generic", "generic", {}, {}, "A1^3", "p+p+p", {"s1", "s2", "s3", "s4"},
              {{"t2", "s1"}, {"t6", "s2"}, {"t8", "s3"}, {"t12", "s4"}}),
  };
  for (auto& s : d.strata) s.prequotient_required = false;
  return d;
}

void finish(CaseDescriptor& d) {
  d.fiber_variables = {"x", "y", "z"};
  d.fiber = P(d.fiber_text);
  d.quotient = P(d.quotient_text);
}

std::map<std::string, CaseDescriptor> build_all() {
  std::map<std::string, CaseDescriptor> m;
  for (auto make : {make_b2, make_b3, make_c3, make_g2_z3, make_g2_s3, make_f4}) {
    CaseDescriptor d = make();
    finish(d);
    m.emplace(d.meta.id, std::move(d));
  }
  return m;
}

}  // namespace

const Stratum& CaseDescriptor::stratum(const std::string& id) const {
  for (const auto& s : strata)
    if (s.id == id) return s;
  throw std::invalid_argument("unknown stratum '" + id + "' for case " + meta.id);
}

const CaseDescriptor& descriptor(const std::string& case_id) {
  static const std::map<std::string, CaseDescriptor> all = build_all();
  auto it = all.find(case_id);
  if (it == all.end()) throw std::invalid_argument("unknown case id: " + case_id);
  return it->second;
}

AffineAction compose(const AffineAction& g, const AffineAction& h) {
  AffineAction r;
  r.name = g.name + "*" + h.name;
  for (const auto& [v, img] : g.images) r.images[v] = img.substitute(h.images);
  return r;
}

bool same_action(const AffineAction& a, const AffineAction& b) {
  for (const auto& [v, img] : a.images) {
    auto it = b.images.find(v);
    if (it == b.images.end() || it->second != img) return false;
  }
  return a.images.size() == b.images.size();
}

std::vector<AffineAction> group_elements(const CaseDescriptor& d) {
  AffineAction id{"id", {}};
  for (const auto& v : d.fiber_variables) id.images[v] = var(v);
  std::vector<AffineAction> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : d.generators) {
      AffineAction n = compose(g, elems[i]);
      bool known = std::any_of(elems.begin(), elems.end(), [&](const AffineAction& e) { return same_action(e, n); });
      if (!known) elems.push_back(std::move(n));
      if (elems.size() > 64) throw std::runtime_error("group closure does not terminate");
    }
  return elems;
}

bool CheckReport::ok() const {
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.ok; });
}

void CheckReport::add(std::string what, bool ok, std::string detail) {
  lines.push_back({std::move(what), ok, std::move(detail)});
}

CheckReport verify_equivariance(const std::string& case_id) {
  const CaseDescriptor& d = descriptor(case_id);
  CheckReport r;
  for (const auto& g : d.generators) {
    QPoly moved = d.fiber.substitute(g.images);
    r.add("F o " + g.name + " = F", moved == d.fiber);
    for (const auto& q : d.quotient_generators)
      r.add(q.name + " invariant under " + g.name, q.poly.substitute(g.images) == q.poly);
  }
  auto group = group_elements(d);
  const std::map<std::string, int> orders{{"Z/2", 2}, {"Z/3", 3}, {"S3", 6}};
  r.add("group order", static_cast<int>(group.size()) == orders.at(d.meta.omega),
        std::to_string(group.size()));
  const AffineAction& id = group[0];
  auto power = [&](const AffineAction& g, int n) {
    AffineAction p = id;
    for (int i = 0; i < n; ++i) p = compose(g, p);
    return p;
  };
  if (d.meta.omega == "S3") {
    const AffineAction& rho = d.generators[0];
    const AffineAction& sigma = d.generators[1];
    r.add("rho^3 = id", same_action(power(rho, 3), id));
    r.add("sigma^2 = id", same_action(power(sigma, 2), id));
    r.add("sigma rho sigma = rho^-1", same_action(compose(sigma, compose(rho, sigma)), power(rho, 2)));
  } else {
    const int n = orders.at(d.meta.omega);
    r.add(d.generators[0].name + "^" + std::to_string(n) + " = id", same_action(power(d.generators[0], n), id));
  }
  return r;
}

QPoly specialise(const QPoly& p, const ParamPoint& t) {
  std::map<std::string, QPoly> b;
  for (const auto& [k, v] : t) b[k] = QPoly(v);
  return p.substitute(b);
}

QPoly fiber_at(const CaseDescriptor& d, const ParamPoint& t) { return specialise(d.fiber, t); }
QPoly quotient_at(const CaseDescriptor& d, const ParamPoint& t) { return specialise(d.quotient, t); }

std::string format_point(const CaseDescriptor& d, const ParamPoint& t) {
  std::string s;
  for (const auto& p : d.parameters) {
    if (!s.empty()) s += ",";
    auto it = t.find(p);
    s += p + "=" + (it == t.end() ? std::string("0") : it->second.get_str());
  }
  return s;
}

ParamPoint parse_point(const CaseDescriptor& d, const std::string& text) {
  ParamPoint t;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected name=value in '" + item + "'");
    std::string key = item.substr(0, eq);
    if (std::find(d.parameters.begin(), d.parameters.end(), key) == d.parameters.end())
      throw std::invalid_argument("unknown parameter '" + key + "' for case " + d.meta.id);
    if (t.count(key)) throw std::invalid_argument("parameter given twice: " + key);
    t[key] = parse_rational(item.substr(eq + 1));
  }
  for (const auto& p : d.parameters)
    if (!t.count(p)) throw std::invalid_argument("missing parameter " + p);
  return t;
}

static bool vanishes(const QPoly& p, const ParamPoint& t) { return specialise(p, t).is_zero(); }

std::string stratum_membership(const std::string& case_id, const ParamPoint& t) {
  const CaseDescriptor& d = descriptor(case_id);
  for (const auto& p : d.parameters)
    if (!t.count(p)) throw std::invalid_argument("missing parameter " + p);
  for (const auto& s : d.strata) {
    bool in = std::all_of(s.equations.begin(), s.equations.end(), [&](const QPoly& e) { return vanishes(e, t); }) &&
              std::none_of(s.inequations.begin(), s.inequations.end(),
                           [&](const QPoly& e) { return vanishes(e, t); });
    if (in) return s.id;
  }
  throw std::logic_error("no stratum matched");
}

namespace {

Rational draw(std::mt19937_64& rng, int range, int max_den) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

std::vector<ParamPoint> sample_stratum(const std::string& case_id, const std::string& stratum_id, int count,
                                       std::uint64_t seed) {
  const CaseDescriptor& d = descriptor(case_id);
  const Stratum& s = d.stratum(stratum_id);
  if (count < 0) throw std::invalid_argument("negative sample count");
  std::uint64_t key = 1469598103934665603ULL;  // FNV-1a of the stratum key
  for (unsigned char c : case_id + "/" + stratum_id) key = (key ^ c) * 1099511628211ULL;
  std::mt19937_64 rng(seed * 1000003ULL + key % 1000003ULL);
  std::vector<ParamPoint> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000 * (count + 1)) throw std::runtime_error("sampler for " + stratum_id + " keeps missing");
    std::map<std::string, QPoly> free;
    for (const auto& f : s.free_symbols) free[f] = QPoly(draw(rng, 6, 3));
    ParamPoint t;
    for (const auto& p : d.parameters) {
      QPoly v = s.sampler.at(p).substitute(free);
      if (!v.is_constant()) throw std::logic_error("sampler leaves free symbols");
      t[p] = v.constant_term();
    }
    if (stratum_membership(case_id, t) != stratum_id) continue;
    // the origin has a single point; others avoid repeats
    if (std::find(out.begin(), out.end(), t) != out.end() && !s.free_symbols.empty()) continue;
    out.push_back(t);
  }
  return out;
}

std::vector<ParamPoint> random_points(const std::string& case_id, int count, std::uint64_t seed) {
  const CaseDescriptor& d = descriptor(case_id);
  const auto& ids = case_ids();
  const auto index = static_cast<std::uint64_t>(std::find(ids.begin(), ids.end(), case_id) - ids.begin());
  std::mt19937_64 rng(seed * 7919ULL + index);
  std::vector<ParamPoint> out;
  for (int i = 0; i < count; ++i) {
    ParamPoint t;
    for (const auto& p : d.parameters) t[p] = draw(rng, 4, 2);
    out.push_back(t);
  }
  return out;
}

std::string PreConfiguration::to_string() const {
  std::vector<std::pair<std::string, int>> keys;
  for (const auto& [k, n] : orbits) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return simple_type_less(a.first, b.first);
    return a.second > b.second;
  });
  std::string s;
  auto put = [&](const std::string& item) { s += (s.empty() ? "" : "+") + item; };
  for (const auto& k : keys)
    for (int i = 0; i < orbits.at(k); ++i) put(k.first + (k.second > 1 ? "@" + std::to_string(k.second) : ""));
  for (int i = 0; i < smooth_fixed; ++i) put("p");
  return s.empty() ? "smooth" : s;
}

PreConfiguration PreConfiguration::parse(const std::string& text) {
  PreConfiguration c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '+')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.empty() || item == "smooth") continue;
    if (item[0] == 'p' && std::all_of(item.begin() + 1, item.end(), ::isdigit)) {
      ++c.smooth_fixed;
      continue;
    }
    int orbit = 1;
    auto at = item.find('@');
    if (at != std::string::npos) {
      orbit = std::stoi(item.substr(at + 1));
      item = item.substr(0, at);
    }
    simple_type_rank(item);
    ++c.orbits[{item, orbit}];
  }
  return c;
}

namespace {

// fixed locus of affine maps: particular solution plus direction vectors, or nullopt if empty
struct AffineLocus {
  std::vector<Rational> base;
  std::vector<std::vector<Rational>> directions;
};

std::optional<AffineLocus> fixed_locus(const std::vector<AffineAction>& maps, const std::vector<std::string>& vars,
                                       const ParamPoint& t) {
  const std::size_t n = vars.size();
  Matrix<Rational> rows;
  for (const auto& g : maps)
    for (const auto& v : vars) {
      QPoly e = (specialise(g.images.at(v), t) - var(v)).with_variables(vars);
      if (e.total_degree() > 1) throw std::invalid_argument("group action is not affine");
      std::vector<Rational> row(n + 1);
      std::map<std::string, Rational> zero;
      for (std::size_t i = 0; i < n; ++i) {
        zero[vars[i]] = 0;
      }
      for (std::size_t i = 0; i < n; ++i) {
        QPoly c = e.differentiate(vars[i]);
        row[i] = c.constant_term();
      }
      row[n] = -e.evaluate(zero).constant_term();
      rows.push_back(row);
    }
  auto rr = rref(rows);
  if (!rr.pivots.empty() && rr.pivots.back() == static_cast<int>(n)) return std::nullopt;
  AffineLocus locus;
  locus.base.assign(n, 0);
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) locus.base[rr.pivots[i]] = rr.matrix[i][n];
  Matrix<Rational> coeffs;
  for (const auto& r : rr.matrix) coeffs.push_back(std::vector<Rational>(r.begin(), r.begin() + n));
  locus.directions = nullspace(coeffs, n);
  return locus;
}

// points of F = 0 on an affine locus of dimension at most 1, as branches over extension rings
std::vector<SingularPoint> points_on_locus(const QPoly& F, const AffineLocus& L, const std::vector<std::string>& vars) {
  if (L.directions.size() > 1) throw SingularityError("fixed locus of dimension > 1");
  std::vector<SingularPoint> out;
  if (L.directions.empty()) {
    std::map<std::string, Rational> at;
    for (std::size_t i = 0; i < vars.size(); ++i) at[vars[i]] = L.base[i];
    if (!F.evaluate(at).is_zero()) return out;
    SingularPoint p{rational_ring(), vars, {}};
    for (const auto& b : L.base) p.coordinates.push_back(AlgebraicScalar(rational_ring(), UPoly::constant(b)));
    out.push_back(p);
    return out;
  }
  std::map<std::string, QPoly> line;
  for (std::size_t i = 0; i < vars.size(); ++i)
    line[vars[i]] = QPoly(L.base[i]) + QPoly(L.directions[0][i]) * var("fixed_s");
  QPoly f = F.substitute(line);
  if (f.is_zero()) throw SingularityError("fiber contains a fixed line");
  std::vector<Rational> c;
  for (const auto& k : f.coefficients_in("fixed_s")) c.push_back(k.constant_term());
  UPoly u(c);
  if (u.degree() < 1) return out;
  RingPtr ring = make_extension(u, "s");
  AlgebraicScalar s = AlgebraicScalar::generator(ring);
  SingularPoint p{ring, vars, {}};
  for (std::size_t i = 0; i < vars.size(); ++i)
    p.coordinates.push_back(AlgebraicScalar(ring, UPoly::constant(L.base[i])) + s * L.directions[0][i]);
  out.push_back(p);
  return out;
}

bool same_point(const std::vector<AlgebraicScalar>& a, const std::vector<AlgebraicScalar>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!decide_zero(a[i] - b[i])) return false;
  return true;
}

std::vector<AlgebraicScalar> image_of(const std::vector<QPoly>& images, const SingularPoint& p) {
  std::vector<AlgebraicScalar> out;
  for (const auto& f : images) out.push_back(evaluate_at(f, p));
  return out;
}

// orbit sizes of a branch, splitting it when conjugate points disagree
void tally_orbits(const SingularPointRecord& rec, const std::vector<std::vector<QPoly>>& group_images,
                  std::map<std::pair<std::string, int>, int>& points) {
  std::vector<SingularPoint> queue{rec.point};
  while (!queue.empty()) {
    SingularPoint q = queue.back();
    queue.pop_back();
    try {
      std::vector<std::vector<AlgebraicScalar>> distinct;
      for (const auto& g : group_images) {
        auto img = image_of(g, q);
        bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const auto& o) { return same_point(o, img); });
        if (!seen) distinct.push_back(std::move(img));
      }
      points[{rec.type, static_cast<int>(distinct.size())}] += q.ring->degree();
    } catch (const SplitException& e) {
      const std::string gen = q.ring->generator();
      queue.push_back(reduce_point(q, make_extension(e.event.factor_a, gen)));
      queue.push_back(reduce_point(q, make_extension(e.event.factor_b, gen)));
    }
  }
}

}  // namespace

PreConfiguration prequotient_configuration(const CaseDescriptor& d, const ParamPoint& t) {
  QPoly F = fiber_at(d, t);
  auto group = group_elements(d);
  std::vector<std::vector<QPoly>> images;
  for (const auto& g : group) {
    std::vector<QPoly> row;
    for (const auto& v : d.fiber_variables) row.push_back(specialise(g.images.at(v), t));
    images.push_back(row);
  }
  std::map<std::pair<std::string, int>, int> points;
  for (const auto& branch : singular_points(F, d.fiber_variables))
    for (const auto& rec : classify_branch(F, branch)) tally_orbits(rec, images, points);
  PreConfiguration c;
  int singular_fixed = 0;
  for (const auto& [k, n] : points) {
    if (n % k.second != 0) throw std::logic_error("orbit count does not divide");
    c.orbits[k] = n / k.second;
    if (k.second == 1) singular_fixed += n;
  }
  auto locus = fixed_locus(d.generators, d.fiber_variables, t);
  int fixed_on_fiber = 0;
  if (locus)
    for (const auto& p : points_on_locus(F, *locus, d.fiber_variables)) fixed_on_fiber += p.ring->degree();
  c.smooth_fixed = fixed_on_fiber - singular_fixed;
  if (c.smooth_fixed < 0) throw std::logic_error("more singular fixed points than fixed points");
  return c;
}

namespace {

// quotient equation with sqrt(c)-scaled variables replaced by their rational parts
QPoly rational_quotient(const CaseDescriptor& d, const QPoly& q) {
  QPoly out = q;
  for (const auto& g : d.quotient_generators) {
    if (g.sqrt_factor == 1) continue;
    int idx = out.variable_index(g.name);
    if (idx < 0) continue;
    QPoly::TermMap terms;
    for (const auto& [e, c] : out.terms()) {
      if (e[idx] % 2) throw std::logic_error("quotient equation is odd in " + g.name);
      Rational f = c;
      for (int k = 0; k < e[idx] / 2; ++k) f *= g.sqrt_factor;
      terms[e] += f;
    }
    out = QPoly(out.variables(), terms);
  }
  return out;
}

}  // namespace

CheckReport theorem2_spotcheck(const std::string& case_id, int count, std::uint64_t seed) {
  const CaseDescriptor& d = descriptor(case_id);
  CheckReport r;
  auto group = group_elements(d);
  const bool b_type = d.meta.inhomogeneous_type[0] == 'B';
  const int rank = d.meta.rank;
  for (const auto& t : random_points(case_id, count, seed)) {
    const std::string at = format_point(d, t);
    QPoly F = fiber_at(d, t);
    QPoly Q = rational_quotient(d, quotient_at(d, t));
    std::vector<QPoly> gens;
    for (const auto& g : d.quotient_generators) gens.push_back(specialise(g.poly, t));
    FiberConfiguration conf;
    try {
      conf = fiber_configuration(quotient_at(d, t), d.quotient_variables);
    } catch (const std::exception& e) {
      r.add("quotient fiber at " + at, false, e.what());
      continue;
    }
    r.add("quotient fiber singular at " + at, !conf.smooth(), conf.type.to_string());

    // every point with nontrivial stabiliser maps to a singular point
    bool fixed_ok = true;
    int fixed_points = 0;
    for (std::size_t gi = 1; gi < group.size(); ++gi) {
      auto locus = fixed_locus({group[gi]}, d.fiber_variables, t);
      if (!locus) continue;
      for (const auto& p : points_on_locus(F, *locus, d.fiber_variables)) {
        fixed_points += p.ring->degree();
        SingularPoint img{p.ring, d.quotient_variables, image_of(gens, p)};
        std::vector<QPoly> checks{Q};
        for (const auto& v : d.quotient_variables) checks.push_back(Q.differentiate(v));
        for (const auto& c : checks)
          if (!evaluate_at(c, img).is_zero()) fixed_ok = false;
      }
    }
    r.add("fixed points map to singular points at " + at, fixed_ok, std::to_string(fixed_points) + " fixed points");

    if (b_type) {
      // sigma-fixed point (a, (-1)^r a, 0) with a^2 = (-1)^r f_2r
      const int sign = rank % 2 ? -1 : 1;
      Rational f2r = F.evaluate({{"x", 0}, {"y", 0}, {"z", 0}}).constant_term();
      RingPtr ring = make_extension(UPoly(std::vector<Rational>{-sign * f2r, 0, 1}), "a");
      AlgebraicScalar a = AlgebraicScalar::generator(ring);
      SingularPoint p{ring, d.fiber_variables, {a, a * sign, AlgebraicScalar(ring, UPoly())}};
      bool on = evaluate_at(F, p).is_zero();
      bool fixed = same_point(image_of({group[1].images.at("x"), group[1].images.at("y"), group[1].images.at("z")}, p),
                              p.coordinates);
      SingularPoint img{ring, d.quotient_variables, image_of(gens, p)};
      bool sing = evaluate_at(Q, img).is_zero();
      for (const auto& v : d.quotient_variables) sing = sing && evaluate_at(Q.differentiate(v), img).is_zero();
      r.add("explicit fixed point at " + at, on && fixed && sing);
    }
  }
  return r;
}

}  // namespace singfold
