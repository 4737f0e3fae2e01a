#include "qsplit/density.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <set>
#include <stdexcept>

namespace qsplit {

namespace {

Eigen::MatrixXcd to_eigen(const Matrix& m) {
  Eigen::MatrixXcd out(m.dim, m.dim);
  for (int r = 0; r < m.dim; ++r)
    for (int c = 0; c < m.dim; ++c) out(r, c) = m.at(r, c);
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solve failed");
  return solver.eigenvalues();
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix m) : mat_(std::move(m)) {
  if (mat_.dim != 2 && mat_.dim != 4) throw std::invalid_argument("density matrix must hold 1 or 2 qubits");
  if (!all_finite(mat_.m)) throw std::invalid_argument("density matrix entries must be finite");
  if (Matrix::max_abs_diff(mat_, mat_.dagger()) > kConstructionTol)
    throw std::invalid_argument("density matrix is not Hermitian");
  Amp tr = 0.0;
  for (int i = 0; i < mat_.dim; ++i) tr += mat_.at(i, i);
  if (std::abs(tr - Amp(1.0)) > kAggregateTol)
    throw std::invalid_argument("density matrix trace is not 1");
  const Eigen::VectorXd eig = hermitian_eigenvalues(mat_);
  if (eig.minCoeff() < -kAggregateTol)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  Matrix m = Matrix::zero(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0 / dim;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const int d = static_cast<int>(psi.dim());
  Matrix m = Matrix::zero(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m.at(r, c) = psi.amp(r) * std::conj(psi.amp(c));
  return DensityMatrix(std::move(m));
}

DensityMatrix partial_trace(const StateVector& state, const std::vector<QubitLabel>& keep) {
  if (keep.empty() || keep.size() >= 3) throw std::invalid_argument("keep set must hold 1 or 2 qubits");
  std::set<QubitLabel> seen(keep.begin(), keep.end());
  if (seen.size() != keep.size()) throw std::invalid_argument("duplicate labels in keep set");

  std::vector<int> keep_shift;
  for (QubitLabel q : keep) keep_shift.push_back(state.bit_shift(q));
  std::vector<int> disc_shift;
  for (QubitLabel q : state.labels())
    if (!seen.count(q)) disc_shift.push_back(state.bit_shift(q));

  const std::size_t kd = std::size_t{1} << keep.size();
  const std::size_t dd = std::size_t{1} << disc_shift.size();
  const auto global = [&](std::size_t kbits, std::size_t dbits) {
    std::size_t g = 0;
    for (std::size_t t = 0; t < keep_shift.size(); ++t)
      if ((kbits >> (keep_shift.size() - 1 - t)) & 1u) g |= (std::size_t{1} << keep_shift[t]);
    for (std::size_t t = 0; t < disc_shift.size(); ++t)
      if ((dbits >> t) & 1u) g |= (std::size_t{1} << disc_shift[t]);
    return g;
  };

  Matrix rho = Matrix::zero(static_cast<int>(kd));
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < kd; ++j) {
      Amp acc = 0.0;
      for (std::size_t d = 0; d < dd; ++d)
        acc += state.amp(global(i, d)) * std::conj(state.amp(global(j, d)));
      rho.at(static_cast<int>(i), static_cast<int>(j)) = acc;
    }
  return DensityMatrix(std::move(rho));
}

double fidelity(const DensityMatrix& dm, const StateVector& pure) {
  if (static_cast<std::size_t>(dm.dim()) != pure.dim())
    throw std::invalid_argument("fidelity dimension mismatch");
  Amp acc = 0.0;
  for (int r = 0; r < dm.dim(); ++r)
    for (int c = 0; c < dm.dim(); ++c) acc += std::conj(pure.amp(r)) * dm.at(r, c) * pure.amp(c);
  const double f = acc.real();
  if (f < -kAggregateTol || f > 1.0 + kAggregateTol)
    throw std::logic_error("fidelity outside [0, 1]");
  return f < 0.0 ? 0.0 : f;
}

double trace_distance(const DensityMatrix& d1, const DensityMatrix& d2) {
  if (d1.dim() != d2.dim()) throw std::invalid_argument("trace distance dimension mismatch");
  Matrix diff = Matrix::zero(d1.dim());
  for (std::size_t i = 0; i < diff.m.size(); ++i) diff.m[i] = d1.mat().m[i] - d2.mat().m[i];
  const Eigen::VectorXd eig = hermitian_eigenvalues(diff);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) sum += std::abs(eig(i));
  return 0.5 * sum;
}

}  // namespace qsplit
