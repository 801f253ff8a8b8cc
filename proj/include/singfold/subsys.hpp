#pragma once

#include <map>
#include <string>
#include <vector>

#include "singfold/rootsys.hpp"

namespace singfold {

// Multiset of simple types, kept sorted: E before D before A, higher rank first.
class TypeMultiset {
 public:
  TypeMultiset() = default;
  explicit TypeMultiset(std::vector<std::string> components);
  // accepts "A1+A1+A2", "A1^3", "3A1", or "" for the empty multiset
  static TypeMultiset parse(const std::string& text);

  const std::vector<std::string>& components() const { return components_; }
  int rank() const;
  bool empty() const { return components_.empty(); }
  std::string to_string() const;
  TypeMultiset operator+(const TypeMultiset& o) const;
  friend bool operator==(const TypeMultiset& a, const TypeMultiset& b) { return a.components_ == b.components_; }
  friend bool operator!=(const TypeMultiset& a, const TypeMultiset& b) { return !(a == b); }
  friend bool operator<(const TypeMultiset& a, const TypeMultiset& b);

 private:
  std::vector<std::string> components_;
};

bool simple_type_less(const std::string& a, const std::string& b);
int simple_type_rank(const std::string& t);

struct SubRootSystem {
  std::vector<RootVector> roots;   // sorted, both signs
  std::vector<RootVector> simple;  // indecomposable positive roots
  std::vector<Rational> witness;
  TypeMultiset type;
  int rank = 0;
};

std::vector<SubRootSystem> enumerate_subsystems(const RootSystem& phi, const std::vector<RootVector>& theta);
TypeMultiset classify_subsystem(const RootSystem& phi, const std::vector<RootVector>& roots);
// type of a connected simply-laced Cartan matrix; throws if none matches
std::string cartan_type(const Matrix<int>& cartan);
// smallest reflection-closed set containing the generators
std::vector<RootVector> reflection_closure(const RootSystem& phi, const std::vector<RootVector>& generators);
std::vector<RootVector> span_closure(const RootSystem& phi, const std::vector<RootVector>& generators);
// "a1+2a2+a3" in simple-root coefficients
std::string root_label(const RootSystem& phi, const RootVector& v);
RootVector parse_root_label(const RootSystem& phi, const std::string& text);

struct RealizationEntry {
  std::string paper_type;
  std::vector<std::string> generators;
  TypeMultiset closure_type;
  int matched = -1;  // index into the enumeration, -1 if not found
};

struct RealizationReport {
  std::string case_id;
  std::vector<SubRootSystem> subsystems;
  bool paper_table_available = false;
  std::vector<RealizationEntry> entries;
  std::vector<int> unmatched;  // enumerated subsystems with no paper generating set
  std::map<std::string, int> counts;  // per type, from the enumeration
  int expected_count = 0;
  std::vector<std::string> expected_types;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

RealizationReport match_realizations(const std::string& case_id);

}  // namespace singfold
