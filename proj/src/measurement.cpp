#include "qsplit/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace qsplit {

namespace {

MeasurementBranch make_branch(std::string label, std::vector<QubitLabel> labels,
                              std::vector<Amp> component, double weight) {
  MeasurementBranch br;
  br.outcome_label = std::move(label);
  br.raw_weight = weight;
  if (weight < kNullBranchTol) {
    br.probability = 0.0;
    return br;  // post_state left empty
  }
  br.probability = weight;
  const double inv = 1.0 / std::sqrt(weight);
  for (Amp& a : component) a *= inv;
  br.post_state = StateVector(std::move(labels), std::move(component));
  return br;
}

}  // namespace

std::vector<MeasurementBranch> measure_in_basis(const StateVector& state,
                                                const OrthonormalBasis& basis,
                                                const std::vector<QubitLabel>& targets) {
  const int k = static_cast<int>(targets.size());
  if (k < 1 || k > 2 || basis.dim() != (1 << k))
    throw std::invalid_argument("basis dimension does not match target count");
  if (k == 2 && targets[0] == targets[1]) throw std::invalid_argument("duplicate target labels");
  if (static_cast<std::size_t>(k) >= state.labels().size())
    throw std::invalid_argument("at least one qubit must remain unmeasured");

  std::vector<int> shift(k);
  for (int t = 0; t < k; ++t) shift[t] = state.bit_shift(targets[t]);

  std::vector<QubitLabel> rest;
  std::vector<int> rest_shift;
  for (QubitLabel q : state.labels()) {
    bool measured = false;
    for (QubitLabel t : targets) measured |= (q == t);
    if (!measured) {
      rest.push_back(q);
      rest_shift.push_back(state.bit_shift(q));
    }
  }

  const std::size_t rest_dim = std::size_t{1} << rest.size();
  const int sub = 1 << k;
  std::vector<MeasurementBranch> branches;
  branches.reserve(basis.dim());
  double total = 0.0;
  for (int v = 0; v < basis.dim(); ++v) {
    // component_w = Σ_l conj(v[l]) · amp(l, w): the unnormalized state of the
    // remaining qubits given outcome v.
    std::vector<Amp> component(rest_dim, Amp(0.0));
    for (std::size_t w = 0; w < rest_dim; ++w) {
      std::size_t base = 0;
      for (std::size_t r = 0; r < rest.size(); ++r)
        if ((w >> (rest.size() - 1 - r)) & 1u) base |= (std::size_t{1} << rest_shift[r]);
      Amp acc = 0.0;
      for (int l = 0; l < sub; ++l) {
        std::size_t g = base;
        for (int t = 0; t < k; ++t)
          if ((l >> (k - 1 - t)) & 1) g |= (std::size_t{1} << shift[t]);
        acc += std::conj(basis.vector(v)[l]) * state.amp(g);
      }
      component[w] = acc;
    }
    double weight = 0.0;
    for (const Amp& a : component) weight += std::norm(a);
    total += weight;
    branches.push_back(make_branch(basis.outcome_label(v), rest, std::move(component), weight));
  }
  if (std::abs(total - 1.0) > kAggregateTol)
    throw std::logic_error("measurement branch probabilities do not sum to 1");
  return branches;
}

std::pair<MeasurementBranch, MeasurementBranch> apply_kraus(const StateVector& state,
                                                            const KrausPair& k, QubitLabel target) {
  const int shift = state.bit_shift(target);
  const auto apply_op = [&](const Matrix& op, const char* label) {
    std::vector<Amp> out(state.dim());
    for (std::size_t g = 0; g < state.dim(); ++g) {
      if ((g >> shift) & 1u) continue;
      const std::size_t g1 = g | (std::size_t{1} << shift);
      out[g] = op.at(0, 0) * state.amp(g) + op.at(0, 1) * state.amp(g1);
      out[g1] = op.at(1, 0) * state.amp(g) + op.at(1, 1) * state.amp(g1);
    }
    double weight = 0.0;
    for (const Amp& a : out) weight += std::norm(a);
    return make_branch(label, state.labels(), std::move(out), weight);
  };
  MeasurementBranch success = apply_op(k.success_op(), "success");
  MeasurementBranch fail = apply_op(k.fail_op(), "fail");
  if (std::abs(success.raw_weight + fail.raw_weight - 1.0) > kAggregateTol)
    throw std::logic_error("kraus branch weights do not sum to 1");
  return {std::move(success), std::move(fail)};
}

}  // namespace qsplit
