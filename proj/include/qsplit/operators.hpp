#pragma once

#include <string>
#include <vector>

#include "qsplit/matrix.hpp"

namespace qsplit {

// Unitary operator on one or two qubits. U·U† = 1 is checked at construction
// to within kConstructionTol; anything that fails the check is rejected, so a
// constructed Unitary can be applied without further validation.
class Unitary {
 public:
  explicit Unitary(Matrix m);

  int dim() const { return mat_.dim; }
  const Matrix& mat() const { return mat_; }

 private:
  Matrix mat_;
};

// Measurement basis: dim orthonormal vectors, one outcome label per vector.
// Pairwise ⟨v_i|v_j⟩ = δ_ij is checked at construction (kConstructionTol).
class OrthonormalBasis {
 public:
  OrthonormalBasis(std::vector<std::vector<Amp>> vectors, std::vector<std::string> outcome_labels);

  int dim() const { return static_cast<int>(vectors_.size()); }
  const std::vector<Amp>& vector(int k) const { return vectors_[k]; }
  const std::string& outcome_label(int k) const { return labels_[k]; }

 private:
  std::vector<std::vector<Amp>> vectors_;
  std::vector<std::string> labels_;
};

// Two-outcome generalized measurement on a single qubit: a success filter
// K_s and its complement K_f with K_s†K_s + K_f†K_f = 1 (kConstructionTol).
class KrausPair {
 public:
  KrausPair(Matrix success_op, Matrix fail_op);

  const Matrix& success_op() const { return success_; }
  const Matrix& fail_op() const { return fail_; }

 private:
  Matrix success_;
  Matrix fail_;
};

}  // namespace qsplit
