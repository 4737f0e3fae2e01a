#pragma once

#include <cstddef>
#include <vector>

#include "qsplit/matrix.hpp"
#include "qsplit/operators.hpp"

namespace qsplit {

using QubitLabel = char;

// Pure state of 1..4 labeled qubits. Amplitudes are indexed with the first
// label as the most significant bit: for labels (a,b,c), |abc⟩ sits at
// index 4a+2b+c. The amplitude vector is kept normalized; constructing a
// StateVector from data whose norm is off by more than kAggregateTol throws.
class StateVector {
 public:
  StateVector(std::vector<QubitLabel> labels, std::vector<Amp> amps);

  int num_qubits() const { return static_cast<int>(labels_.size()); }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<QubitLabel>& labels() const { return labels_; }
  const std::vector<Amp>& amps() const { return amps_; }
  const Amp& amp(std::size_t i) const { return amps_[i]; }

  bool has_label(QubitLabel q) const;
  // Position of q in the label list (0 = most significant). Throws for unknown labels.
  int position(QubitLabel q) const;
  // Bit shift of q within an amplitude index.
  int bit_shift(QubitLabel q) const { return num_qubits() - 1 - position(q); }

 private:
  std::vector<QubitLabel> labels_;
  std::vector<Amp> amps_;
};

// Normalizing factory: accepts any non-zero finite amplitude vector of
// length 2^labels and scales it to unit norm. Duplicate labels, a length
// mismatch, and the zero vector are rejected.
StateVector make_state(const std::vector<QubitLabel>& labels, const std::vector<Amp>& amps);

// |ψ⟩⊗|φ⟩ with concatenated label lists (left list supplies the high bits).
StateVector tensor(const StateVector& left, const StateVector& right);

// Apply u to the given target qubits (u.dim must be 2^targets). The first
// target is the most significant bit of u's local index. The result stays
// normalized to within kConstructionTol or the call throws.
StateVector apply_unitary(const StateVector& state, const Unitary& u,
                          const std::vector<QubitLabel>& targets);

}  // namespace qsplit
