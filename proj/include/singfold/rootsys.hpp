#pragma once

#include <map>
#include <string>
#include <vector>

#include "singfold/exact.hpp"

namespace singfold {

using RootVector = std::vector<Rational>;

// Root system in ambient coordinates. D-types and E7 use the orthonormal
// e-basis; E6 uses simple-root coordinates, so that a root pairs with
// h = sum xi_i w_i (fundamental coweights) by the plain dot product.
class RootSystem {
 public:
  RootSystem(std::string type, std::vector<RootVector> simple, Matrix<Rational> form);

  const std::string& type() const { return type_; }
  int rank() const { return static_cast<int>(simple_.size()); }
  std::size_t dimension() const { return form_.size(); }
  const std::vector<RootVector>& simple_roots() const { return simple_; }
  const std::vector<RootVector>& roots() const { return roots_; }
  std::vector<RootVector> positive_roots() const;
  const Matrix<Rational>& form() const { return form_; }

  bool contains(const RootVector& v) const { return index_.count(v) != 0; }
  // coefficients of a root in the simple roots; throws if v is not a root
  const std::vector<int>& simple_coefficients(const RootVector& v) const;
  bool is_positive(const RootVector& v) const;
  Rational inner(const RootVector& a, const RootVector& b) const;
  Matrix<int> cartan_matrix() const;
  // linear combination of simple roots
  RootVector combination(const std::vector<int>& coeffs) const;

 private:
  std::string type_;
  std::vector<RootVector> simple_;
  Matrix<Rational> form_;
  std::vector<RootVector> roots_;
  std::map<RootVector, std::vector<int>> index_;
};

// types D4, D5, D6, E6, E7 in Bourbaki numbering
RootSystem build_root_system(const std::string& type);
RootVector reflect(const RootVector& beta, const RootVector& alpha, const RootSystem& phi);
Rational pairing(const RootVector& alpha, const std::vector<Rational>& h);
// roots vanishing at h (both signs), sorted
std::vector<RootVector> vanishing_set(const std::vector<Rational>& h, const RootSystem& phi);

struct CaseMeta {
  std::string id;
  std::string source_type;  // Delta(Gamma)
  std::string gamma;
  std::string gamma_prime;
  std::string omega;
  std::string inhomogeneous_type;
  std::string quotient_type;  // Delta(Gamma')
  int rank = 0;
  std::vector<int> theta;  // 1-based simple-root indices of Delta(Gamma')
};

const std::vector<std::string>& case_ids();
CaseMeta case_meta(const std::string& id);
std::vector<RootVector> theta_roots(const CaseMeta& meta, const RootSystem& phi);

std::string root_to_string(const RootVector& v);

}  // namespace singfold
