#pragma once

#include <vector>

#include "qsplit/matrix.hpp"
#include "qsplit/state.hpp"

namespace qsplit {

// Density matrix of 1 or 2 qubits. Construction checks Hermiticity
// (kConstructionTol), unit trace (kAggregateTol) and positive
// semidefiniteness (eigenvalues ≥ -kAggregateTol).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  int dim() const { return mat_.dim; }
  const Matrix& mat() const { return mat_; }
  const Amp& at(int r, int c) const { return mat_.at(r, c); }

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix from_pure(const StateVector& psi);

 private:
  Matrix mat_;
};

// Reduced density matrix over `keep` (order given = basis order, first label
// most significant); every other qubit is traced out.
DensityMatrix partial_trace(const StateVector& state, const std::vector<QubitLabel>& keep);

// ⟨pure|dm|pure⟩. Insensitive to the global phase of `pure`; result lies in
// [0, 1 + kAggregateTol].
double fidelity(const DensityMatrix& dm, const StateVector& pure);

// (1/2)·Σ|eig(d1 - d2)|, in [0, 1].
double trace_distance(const DensityMatrix& d1, const DensityMatrix& d2);

}  // namespace qsplit
