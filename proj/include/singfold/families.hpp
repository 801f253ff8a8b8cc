#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "singfold/singclass.hpp"

namespace singfold {

using ParamPoint = std::map<std::string, Rational>;

// Affine substitution on (x, y, z) with parameter-dependent coefficients.
struct AffineAction {
  std::string name;
  std::map<std::string, QPoly> images;
};

// Quotient generator sqrt(sqrt_factor) * poly, named after its quotient variable.
struct GeneratorSpec {
  std::string name;
  QPoly poly;
  Rational sqrt_factor = 1;
};

struct Stratum {
  std::string id;
  std::string condition;
  std::vector<QPoly> equations;
  std::vector<QPoly> inequations;
  TypeMultiset quotient_type;
  std::string prequotient;  // Omega-orbit notation, e.g. "p+p+A1@2"
  bool prequotient_required = true;
  // sampling: parameters as polynomials in free symbols s1, s2, ...
  std::vector<std::string> free_symbols;
  std::map<std::string, QPoly> sampler;
};

struct CaseDescriptor {
  CaseMeta meta;
  std::vector<std::string> fiber_variables;     // x, y, z
  std::vector<std::string> quotient_variables;  // e.g. X, W, Z
  QPoly fiber;
  QPoly quotient;
  std::vector<AffineAction> generators;
  std::vector<std::string> parameters;
  std::map<std::string, int> weights;
  std::vector<GeneratorSpec> quotient_generators;
  std::vector<Stratum> strata;  // most specific first; the last one is generic
  std::map<std::string, QPoly> named_loci;  // discriminant components
  std::string fiber_text, quotient_text;
  const Stratum& stratum(const std::string& id) const;
};

const CaseDescriptor& descriptor(const std::string& case_id);

AffineAction compose(const AffineAction& g, const AffineAction& h);  // g after h
bool same_action(const AffineAction& a, const AffineAction& b);
std::vector<AffineAction> group_elements(const CaseDescriptor& d);

struct CheckLine {
  std::string what;
  bool ok = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckLine> lines;
  bool ok() const;
  void add(std::string what, bool ok, std::string detail = {});
};

CheckReport verify_equivariance(const std::string& case_id);

// parameter point helpers
QPoly specialise(const QPoly& p, const ParamPoint& t);
QPoly fiber_at(const CaseDescriptor& d, const ParamPoint& t);
QPoly quotient_at(const CaseDescriptor& d, const ParamPoint& t);
std::string format_point(const CaseDescriptor& d, const ParamPoint& t);
ParamPoint parse_point(const CaseDescriptor& d, const std::string& text);

std::string stratum_membership(const std::string& case_id, const ParamPoint& t);
std::vector<ParamPoint> sample_stratum(const std::string& case_id, const std::string& stratum_id, int count,
                                       std::uint64_t seed);
std::vector<ParamPoint> random_points(const std::string& case_id, int count, std::uint64_t seed);

// Singular configuration of the fiber before the quotient, with Omega-orbits.
struct PreConfiguration {
  std::map<std::pair<std::string, int>, int> orbits;  // (type, orbit size) -> number of orbits
  int smooth_fixed = 0;
  std::string to_string() const;
  static PreConfiguration parse(const std::string& text);
  friend bool operator==(const PreConfiguration& a, const PreConfiguration& b) {
    return a.orbits == b.orbits && a.smooth_fixed == b.smooth_fixed;
  }
};

PreConfiguration prequotient_configuration(const CaseDescriptor& d, const ParamPoint& t);

struct QuotientChart {
  std::vector<std::pair<std::string, QPoly>> auto_generators;  // (weight label, invariant)
  std::vector<int> auto_weights;
  QPoly auto_relation;  // in g1, g2, g3 and parameters
  int relation_weight = 0;
  std::map<std::string, QPoly> change;  // auto generator -> polynomial in paper generator polys
  Rational scalar;  // auto relation after the change = scalar * paper relation
  CheckReport checks;
};

QuotientChart derive_quotient_chart(const std::string& case_id, int degree_bound = 0);
// invariant algebra search for an arbitrary group and weights (used for the identity-group check)
QuotientChart derive_invariants(const QPoly& fiber, const std::vector<AffineAction>& group,
                                const std::map<std::string, int>& weights, int degree_bound);

CheckReport theorem2_spotcheck(const std::string& case_id, int count, std::uint64_t seed);

}  // namespace singfold
