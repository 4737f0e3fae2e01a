#include "qsplit/operators.hpp"

#include <cmath>
#include <set>

namespace qsplit {

bool all_finite(const std::vector<Amp>& v) {
  for (const Amp& a : v)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  return true;
}

Unitary::Unitary(Matrix m) : mat_(std::move(m)) {
  if (mat_.dim != 2 && mat_.dim != 4) throw std::invalid_argument("unitary must act on 1 or 2 qubits");
  if (!all_finite(mat_.m)) throw std::invalid_argument("unitary entries must be finite");
  const Matrix prod = mat_ * mat_.dagger();
  if (Matrix::max_abs_diff(prod, Matrix::identity(mat_.dim)) > kConstructionTol)
    throw std::invalid_argument("matrix is not unitary");
}

OrthonormalBasis::OrthonormalBasis(std::vector<std::vector<Amp>> vectors,
                                   std::vector<std::string> outcome_labels)
    : vectors_(std::move(vectors)), labels_(std::move(outcome_labels)) {
  const std::size_t d = vectors_.size();
  if (d != 2 && d != 4) throw std::invalid_argument("basis must span 1 or 2 qubits");
  if (labels_.size() != d) throw std::invalid_argument("one outcome label per basis vector required");
  std::set<std::string> seen;
  for (const std::string& l : labels_) {
    if (l.empty() || !seen.insert(l).second)
      throw std::invalid_argument("outcome labels must be non-empty and unique");
  }
  for (const auto& v : vectors_) {
    if (v.size() != d) throw std::invalid_argument("basis vector length must equal basis dimension");
    if (!all_finite(v)) throw std::invalid_argument("basis entries must be finite");
  }
  // ⟨v_i|v_j⟩ = δ_ij
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Amp ip = 0.0;
      for (std::size_t k = 0; k < d; ++k) ip += std::conj(vectors_[i][k]) * vectors_[j][k];
      const Amp want = (i == j) ? Amp(1.0) : Amp(0.0);
      if (std::abs(ip - want) > kConstructionTol)
        throw std::invalid_argument("basis vectors are not orthonormal");
    }
  }
}

KrausPair::KrausPair(Matrix success_op, Matrix fail_op)
    : success_(std::move(success_op)), fail_(std::move(fail_op)) {
  if (success_.dim != 2 || fail_.dim != 2)
    throw std::invalid_argument("kraus pair must act on a single qubit");
  if (!all_finite(success_.m) || !all_finite(fail_.m))
    throw std::invalid_argument("kraus entries must be finite");
  const Matrix sum = success_.dagger() * success_;
  const Matrix sum2 = fail_.dagger() * fail_;
  Matrix total = Matrix::zero(2);
  for (std::size_t i = 0; i < total.m.size(); ++i) total.m[i] = sum.m[i] + sum2.m[i];
  if (Matrix::max_abs_diff(total, Matrix::identity(2)) > kConstructionTol)
    throw std::invalid_argument("kraus pair is not complete: Ks†Ks + Kf†Kf != 1");
}

}  // namespace qsplit
