#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsplit/operators.hpp"
#include "qsplit/state.hpp"

namespace qsplit {

// One branch of an exhaustively enumerated measurement. The measured qubits
// are projected onto the outcome vector and removed from the label list, so
// post_state lives on the remaining qubits only. Branches whose raw weight
// falls below kNullBranchTol report probability 0 and no post state.
struct MeasurementBranch {
  std::string outcome_label;
  double probability = 0.0;
  std::optional<StateVector> post_state;
  double raw_weight = 0.0;  // pre-normalization weight ⟨ψ|P|ψ⟩
};

// Projective measurement of the target qubits in the given basis. Every
// outcome is enumerated (no sampling); branch probabilities sum to 1 to
// within kAggregateTol. At least one qubit must remain unmeasured.
std::vector<MeasurementBranch> measure_in_basis(const StateVector& state,
                                                const OrthonormalBasis& basis,
                                                const std::vector<QubitLabel>& targets);

// Generalized two-outcome measurement of a single qubit. Returns the
// (success, fail) branch pair, labels "success" and "fail".
std::pair<MeasurementBranch, MeasurementBranch> apply_kraus(const StateVector& state,
                                                            const KrausPair& k,
                                                            QubitLabel target);

}  // namespace qsplit
