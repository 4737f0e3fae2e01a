#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qsplit/protocols.hpp"

namespace qsplit {

// Inclusive linspace: steps == 1 yields {start}, otherwise start and stop are
// both hit exactly. Requires steps >= 1, stop >= start, finite endpoints.
struct AngleRange {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
};

std::vector<double> linspace(const AngleRange& r);

// Cartesian grid of secrets, theta-major (phi varies fastest). Every point
// goes through make_secret, so a grid that leaves the promised ensemble
// (e.g. an off-equator theta for Equatorial) is rejected, not clamped.
struct SecretGrid {
  Ensemble ensemble = Ensemble::Arbitrary;
  AngleRange theta;
  AngleRange phi;
};

std::vector<SecretQubit> enumerate_grid(const SecretGrid& grid);

enum class ExecPolicy { Serial, Parallel };

// Runs body(0..count-1). Parallel uses OpenMP when available; each index
// writes only its own slot, so both policies produce identical results.
// Exceptions thrown by body are captured and rethrown on the calling thread.
void parallel_for(std::size_t count, ExecPolicy policy,
                  const std::function<void(std::size_t)>& body);

struct BranchSummary {
  std::string key;
  double probability = 0.0;
  std::string corrections;
  double fidelity = 0.0;
};

struct SweepPoint {
  SecretQubit secret;
  std::vector<BranchSummary> branches;
  double min_branch_fidelity = 1.0;
  double average_fidelity = 0.0;  // Σ p·F over branches
};

struct SweepResult {
  ProtocolId protocol;
  ChannelSpec channel;
  SecretGrid grid;
  ResourceLedger ledger;               // structural, identical at every point
  std::vector<SweepPoint> points;      // grid enumeration order
  double grid_min_fidelity = 1.0;      // min over all points and branches
  double grid_average_fidelity = 0.0;  // mean over points of per-point averages
};

// Runs the protocol at every grid point. The parallel policy only fills
// per-point slots inside the loop; all aggregation happens serially after,
// so Serial and Parallel agree bit for bit.
SweepResult sweep_fidelity(ProtocolId id, const SecretGrid& grid, const ChannelSpec& channel,
                           ExecPolicy policy);

// What a receiver's marginal gives away before Alice's announcement arrives:
// for each of Alice's outcomes and each receiver qubit, the reduced density
// matrix is computed per probe secret and compared across probes (pairwise
// trace distance) and against the maximally mixed state.
struct LeakageCell {
  std::string alice_outcome;
  QubitLabel party = 'b';
  double max_pairwise_distance = 0.0;
  double max_distance_from_mixed = 0.0;
  std::size_t witness_i = 0, witness_j = 0;  // probe pair realizing the pairwise max
};

struct LeakageReport {
  ProtocolId protocol;
  ChannelSpec channel;
  std::vector<SecretQubit> probes;
  std::vector<LeakageCell> cells;
  double max_pairwise_distance = 0.0;
  double max_distance_from_mixed = 0.0;
};

// Requires at least two distinct probe secrets; a single probe cannot
// witness secret dependence.
LeakageReport leakage_report(ProtocolId id, const ChannelSpec& channel,
                             const std::vector<SecretQubit>& probes);

// Conclusive recovery on the a|000⟩ + b|111⟩ channel: after the standard
// corrections, Charlie's qubit holds the secret with lopsided weights; a
// two-outcome filter (success operator min(a,b)·diag(1/w0, 1/w1), weights
// ordered by the parity of bit-flipping corrections in the branch) restores
// it exactly. Success probability is 2·min(a,b)², beating the 2a²b² of the
// conclusive-teleportation benchmark.
struct FilterBranch {
  std::string branch_key;
  double probability = 0.0;  // branch probability before filtering
  std::string corrections;
  double success_probability = 0.0;  // conditional on the branch
  double success_fidelity = 0.0;
  double fail_fidelity = 0.0;  // what the discarded arm would deliver
};

struct FilterRun {
  SecretQubit secret;
  double a = 0.0, b = 0.0;
  std::vector<FilterBranch> branches;
  double overall_success = 0.0;                // Σ p_branch · p_success
  double reference_success_probability = 0.0;  // 2a²b²
};

FilterRun nonmax_ghz_recovery(const SecretQubit& secret, double a, double b);

// Can the a|001⟩ + b|010⟩ + c|100⟩ channel split both promised ensembles
// exactly? Probes a fixed set of secrets, giving each branch the best
// correction the searchable set offers; feasible means every probe reaches
// fidelity 1 to within kAggregateTol. The witness string names the
// coefficient relation responsible.
struct FeasibilityProbe {
  SecretQubit secret;
  double min_branch_fidelity = 0.0;
};

struct FeasibilityResult {
  double a = 0.0, b = 0.0, c = 0.0;
  bool feasible = false;
  std::vector<FeasibilityProbe> probes;
  std::string witness;
};

std::vector<SecretQubit> feasibility_probes();  // fixed: 4 equatorial + 4 real
FeasibilityResult general_w_feasibility(double a, double b, double c);

}  // namespace qsplit
