#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singfold/families.hpp"

namespace singfold {

struct FlatRelation {
  std::string slot;
  QPoly rhs;  // slot = rhs as a polynomial in other slots
};

struct FlatChart {
  std::string case_id;
  std::vector<std::string> xi_symbols;
  std::vector<QPoly> embedding;  // coordinates of h' as linear forms in the xi symbols
  std::vector<std::string> slots;
  std::vector<int> degrees;
  std::vector<QPoly> psi;  // per slot; empty when the paper withholds the formulas
  bool formulas_available = true;
  std::vector<FlatRelation> relations;
  std::vector<std::string> free_slots;  // slots not fixed by a relation or by a zero formula
};

struct BaseChange {
  std::string case_id;
  std::vector<std::string> parameters;
  std::vector<QPoly> forward;  // per slot, in t
  std::vector<QPoly> inverse;  // per parameter, in psi slots
};

const FlatChart& flat_chart(const std::string& case_id);
const BaseChange& base_change(const std::string& case_id);

// residual of every chart relation and the degree of every formula
CheckReport verify_flat_relations(const std::string& case_id);
// (a) inverse o forward = id in t, (b) forward o inverse = id on the chart image
CheckReport verify_iso(const std::string& case_id);

std::vector<Rational> chart_coordinates(const std::string& case_id, const std::vector<Rational>& h);
std::vector<Rational> pi_prime(const std::string& case_id, const std::vector<Rational>& h);
ParamPoint inverse_point(const std::string& case_id, const std::vector<Rational>& psi);
std::vector<Rational> forward_point(const std::string& case_id, const ParamPoint& t);

struct CorrespondenceEntry {
  int index = 0;
  TypeMultiset type;
  std::vector<RootVector> simple;
  std::vector<Rational> witness;
  std::string route;  // "witness" or "stratum"
  std::vector<Rational> xi, psi;
  ParamPoint t;
  std::string stratum;
  std::string expected_stratum;
  TypeMultiset configuration;
  bool match = false;
  std::string error;
};

struct CorrespondenceReport {
  std::string case_id;
  bool witness_route_available = true;
  std::vector<CorrespondenceEntry> entries;
  int distinct_types = 0;
  int expected_distinct_types = 0;
  bool ok() const;
};

CorrespondenceReport correspondence_check(const std::string& case_id, int samples = 3, std::uint64_t seed = 0);

}  // namespace singfold
