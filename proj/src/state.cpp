#include "qsplit/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qsplit {

namespace {

double norm_sq(const std::vector<Amp>& amps) {
  double s = 0.0;
  for (const Amp& a : amps) s += std::norm(a);
  return s;
}

void check_labels(const std::vector<QubitLabel>& labels) {
  if (labels.empty() || labels.size() > 4)
    throw std::invalid_argument("state must hold between 1 and 4 qubits");
  std::set<QubitLabel> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw std::invalid_argument("duplicate qubit labels");
}

}  // namespace

StateVector::StateVector(std::vector<QubitLabel> labels, std::vector<Amp> amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
  check_labels(labels_);
  if (amps_.size() != (std::size_t{1} << labels_.size()))
    throw std::invalid_argument("amplitude count must be 2^num_qubits");
  if (!all_finite(amps_)) throw std::invalid_argument("amplitudes must be finite");
  if (std::abs(norm_sq(amps_) - 1.0) > kAggregateTol)
    throw std::invalid_argument("state vector is not normalized");
}

bool StateVector::has_label(QubitLabel q) const {
  return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

int StateVector::position(QubitLabel q) const {
  const auto it = std::find(labels_.begin(), labels_.end(), q);
  if (it == labels_.end()) throw std::out_of_range(std::string("unknown qubit label: ") + q);
  return static_cast<int>(it - labels_.begin());
}

StateVector make_state(const std::vector<QubitLabel>& labels, const std::vector<Amp>& amps) {
  check_labels(labels);
  if (amps.size() != (std::size_t{1} << labels.size()))
    throw std::invalid_argument("amplitude count must be 2^num_qubits");
  if (!all_finite(amps)) throw std::invalid_argument("amplitudes must be finite");
  const double n2 = norm_sq(amps);
  if (n2 < kNullBranchTol) throw std::invalid_argument("cannot normalize the zero vector");
  std::vector<Amp> scaled = amps;
  const double inv = 1.0 / std::sqrt(n2);
  for (Amp& a : scaled) a *= inv;
  return StateVector(labels, scaled);
}

StateVector tensor(const StateVector& left, const StateVector& right) {
  for (QubitLabel q : right.labels())
    if (left.has_label(q)) throw std::invalid_argument(std::string("tensor label collision: ") + q);
  std::vector<QubitLabel> labels = left.labels();
  labels.insert(labels.end(), right.labels().begin(), right.labels().end());
  std::vector<Amp> amps(left.dim() * right.dim());
  for (std::size_t i = 0; i < left.dim(); ++i)
    for (std::size_t j = 0; j < right.dim(); ++j) amps[i * right.dim() + j] = left.amp(i) * right.amp(j);
  return StateVector(std::move(labels), std::move(amps));
}

StateVector apply_unitary(const StateVector& state, const Unitary& u,
                          const std::vector<QubitLabel>& targets) {
  const int k = static_cast<int>(targets.size());
  if (k < 1 || k > 2 || u.dim() != (1 << k))
    throw std::invalid_argument("unitary dimension does not match target count");
  if (k == 2 && targets[0] == targets[1]) throw std::invalid_argument("duplicate target labels");

  std::vector<int> shift(k);
  for (int t = 0; t < k; ++t) shift[t] = state.bit_shift(targets[t]);  // throws on unknown label

  const std::size_t dim = state.dim();
  std::vector<Amp> out(state.amps());
  const int sub = 1 << k;
  // Iterate over amplitudes whose target bits are all zero; each such index
  // anchors one 2^k block that u mixes. targets[0] is the local MSB.
  for (std::size_t base = 0; base < dim; ++base) {
    bool anchored = true;
    for (int t = 0; t < k; ++t)
      if ((base >> shift[t]) & 1u) { anchored = false; break; }
    if (!anchored) continue;
    std::size_t idx[4];
    for (int l = 0; l < sub; ++l) {
      std::size_t g = base;
      for (int t = 0; t < k; ++t)
        if ((l >> (k - 1 - t)) & 1) g |= (std::size_t{1} << shift[t]);
      idx[l] = g;
    }
    Amp mixed[4];
    for (int r = 0; r < sub; ++r) {
      Amp acc = 0.0;
      for (int c = 0; c < sub; ++c) acc += u.mat().at(r, c) * state.amp(idx[c]);
      mixed[r] = acc;
    }
    for (int l = 0; l < sub; ++l) out[idx[l]] = mixed[l];
  }

  double n2 = 0.0;
  for (const Amp& a : out) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > kConstructionTol)
    throw std::logic_error("unitary application failed to preserve the norm");
  return StateVector(state.labels(), std::move(out));
}

}  // namespace qsplit
