#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singfold/poly.hpp"
#include "singfold/subsys.hpp"

namespace singfold {

// One branch of singular points: the coordinates live in Q[a]/(m), so the
// record stands for deg(m) conjugate points.
struct SingularPoint {
  RingPtr ring;
  std::vector<std::string> variables;
  std::vector<AlgebraicScalar> coordinates;
  int orbit_size() const { return ring->degree(); }
};

struct SingularPointRecord {
  SingularPoint point;
  int milnor = 0;
  int corank = 0;
  std::optional<BinaryCubicShape> cubic_shape;
  std::string type;
  int orbit_size() const { return point.orbit_size(); }
};

struct FiberConfiguration {
  std::vector<SingularPointRecord> points;
  TypeMultiset type;
  bool smooth() const { return points.empty(); }
};

// Errors thrown for non-isolated or non-ADE input.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// variables defaults to the used variables of F; at most three
std::vector<SingularPoint> singular_points(const QPoly& F, std::vector<std::string> variables = {});
int milnor_number(const QPoly& F, const SingularPoint& p);
// dimension of the local algebra truncated at degree N
int truncated_milnor(const QPoly& F, const SingularPoint& p, int N);
int hessian_corank(const QPoly& F, const SingularPoint& p);
// classification of one branch; can throw SplitException when conjugate
// points of the branch differ
SingularPointRecord classify_point(const QPoly& F, const SingularPoint& p);
// classification that splits branches on demand
std::vector<SingularPointRecord> classify_branch(const QPoly& F, const SingularPoint& p);
FiberConfiguration fiber_configuration(const QPoly& F, std::vector<std::string> variables = {});

SingularPoint reduce_point(const SingularPoint& p, const RingPtr& factor_ring);
// evaluates a rational polynomial at the point
AlgebraicScalar evaluate_at(const QPoly& f, const SingularPoint& p);

}  // namespace singfold
