#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsplit/density.hpp"
#include "qsplit/ensembles.hpp"
#include "qsplit/measurement.hpp"

namespace qsplit {

// The four splitting schemes simulated here. ZC1 (GHZ channel) and ZC2
// (asymmetric W channel) assume Alice knows the secret and measures in the
// {|ξ⟩, |ξ⊥⟩} basis, paying one broadcast bit; HBB and Zheng are the
// corresponding Bell-measurement baselines paying two bits.
enum class ProtocolId { ZC1, ZC2, HBB, Zheng };

enum class Party { Alice, Bob, Charlie };

struct ClassicalMessage {
  Party sender;
  bool broadcast = true;
  Party recipient = Party::Charlie;  // meaningful when !broadcast
  int bits = 0;
  bool delivered = true;
};

struct CorrectionStep {
  OpName op;
  std::vector<QubitLabel> targets;  // 'c', or {'b','c'} for Omega
};

struct CorrectionEntry {
  std::string branch_key;
  std::vector<CorrectionStep> ops;
  double achieved_fidelity = 0.0;
  std::string notes;
};

struct PartyResources {
  int measurement_count = 0;
  int max_measurement_arity = 0;
  int cbits_broadcast = 0;
  int cbits_point_to_point = 0;
  int cbits_withheld = 0;
  int joint_unitaries_with_other_receiver = 0;
};

struct ResourceLedger {
  PartyResources alice, bob, charlie;
};

struct BranchRecord {
  std::string alice_outcome;         // "0"/"1" or "psi+","psi-","phi+","phi-"
  std::string bob_outcome;           // "+x"/"-x"; empty when Bob does not measure
  double probability = 0.0;
  StateVector post_alice_bc;         // state of (b,c) once Alice's outcome is fixed
  std::vector<CorrectionStep> corrections;
  std::optional<StateVector> final_state;  // on (c), or (b,c) when Bob keeps his qubit
  double fidelity = 0.0;             // ⟨ξ|ρ_c|ξ⟩ of the final state

  std::string key() const {
    return bob_outcome.empty() ? alice_outcome : alice_outcome + "," + bob_outcome;
  }
};

struct ProtocolRun {
  ProtocolId protocol;
  SecretQubit secret;
  ChannelSpec channel;
  bool controlled = false;
  bool alice_message_delivered = true;
  std::vector<BranchRecord> branches;
  std::vector<ClassicalMessage> messages;
  ResourceLedger ledger;

  double min_fidelity() const;
  double average_fidelity() const;  // Σ p·F over branches
};

std::string_view protocol_token(ProtocolId id);

// The classical/quantum cost sheet of one run. Structural, not measured:
// the same protocol always spends the same resources.
ResourceLedger protocol_ledger(ProtocolId id, bool withhold);

// Channel defaulting and compatibility: ZC1 takes GHZ or NonMaxGHZ, ZC2 takes
// AsymW or GeneralW, the baselines take only their maximal channel.
ChannelSpec default_channel(ProtocolId id);
void check_protocol_channel(ProtocolId id, const ChannelSpec& channel);

ProtocolRun run_zc1(const SecretQubit& secret, const ChannelSpec& channel);
ProtocolRun run_zc2(const SecretQubit& secret, const ChannelSpec& channel);
ProtocolRun run_hbb(const SecretQubit& secret);
ProtocolRun run_zheng(const SecretQubit& secret);
ProtocolRun run_protocol(ProtocolId id, const SecretQubit& secret, const ChannelSpec& channel);

// Controlled variant: when withhold is set, Alice's message is marked
// undelivered and the receivers fall back to one fixed correction per
// receiver-visible outcome, chosen up front to maximize the probability-
// weighted average fidelity over Alice's outcomes. No receiver step may
// depend on Alice's outcome; the strategy is fixed before branches are
// walked.
ProtocolRun run_controlled(ProtocolId id, const SecretQubit& secret, const ChannelSpec& channel,
                           bool withhold);

// Exhaustive correction search: ordered sequences of length ≤ 2 drawn from
// `pool`, single-qubit ops applied to c and Omega to (b,c) (skipped when the
// branch no longer holds b). Scores a candidate by ⟨ξ|ρ_c|ξ⟩ of the resulting
// state and keeps the first maximizer in enumeration order (pool declaration
// order, shorter sequences first), which makes ties deterministic.
CorrectionEntry derive_correction(const StateVector& branch_state, const SecretQubit& secret,
                                  std::span<const OpName> pool, std::string branch_key);
CorrectionEntry derive_correction(const StateVector& branch_state, const SecretQubit& secret,
                                  std::string branch_key);

// The table a protocol actually applies for the promised ensembles, derived
// once per (protocol, ensemble) by derive_correction at a fixed generic
// witness secret and memoized. ZC1/ZC2 have no Arbitrary table (no exact
// correction exists); those runs search per secret instead.
const std::vector<CorrectionEntry>& correction_table(ProtocolId id, Ensemble ensemble);

// Every (protocol, ensemble) table the artifact ships, in a fixed order.
struct TableListing {
  ProtocolId protocol;
  Ensemble ensemble;
  const std::vector<CorrectionEntry>* entries;
};
std::vector<TableListing> all_correction_tables();

std::string corrections_token(const std::vector<CorrectionStep>& steps);  // "omega+sz", "I", ...

}  // namespace qsplit
