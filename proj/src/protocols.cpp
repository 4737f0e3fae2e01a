#include "qsplit/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qsplit {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

OrthonormalBasis x_basis() {
  return OrthonormalBasis({{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}, {"+x", "-x"});
}

// Bell vectors in the convention used by this protocol family:
// ψ± = (|00⟩ ± |11⟩)/√2, φ± = (|01⟩ ± |10⟩)/√2.
OrthonormalBasis bell_basis() {
  return OrthonormalBasis({{kInvSqrt2, 0, 0, kInvSqrt2},
                           {kInvSqrt2, 0, 0, -kInvSqrt2},
                           {0, kInvSqrt2, kInvSqrt2, 0},
                           {0, kInvSqrt2, -kInvSqrt2, 0}},
                          {"psi+", "psi-", "phi+", "phi-"});
}

CorrectionStep make_step(OpName op) {
  if (op_arity(op) == 2) return CorrectionStep{op, {'b', 'c'}};
  return CorrectionStep{op, {'c'}};
}

StateVector apply_correction(StateVector state, std::span<const CorrectionStep> steps) {
  for (const CorrectionStep& s : steps) state = apply_unitary(state, named_unitary(s.op), s.targets);
  return state;
}

// What Charlie ends up holding: ⟨ξ|ρ_c|ξ⟩ of the (possibly still joint) state.
double charlie_fidelity(const StateVector& state, const SecretQubit& secret) {
  return fidelity(partial_trace(state, {'c'}), secret_state(secret, 'c'));
}

// A branch before receiver-side corrections are chosen.
struct RawBranch {
  std::string alice_outcome;
  std::string bob_outcome;  // empty when the protocol has no Bob measurement
  double probability = 0.0;
  StateVector pre;           // on (c) after Bob measured, or (b,c) otherwise
  StateVector post_alice_bc; // on (b,c), the state the receivers share once Alice announces
  std::string key() const {
    return bob_outcome.empty() ? alice_outcome : alice_outcome + "," + bob_outcome;
  }
};

bool protocol_has_bob_measurement(ProtocolId id) {
  return id == ProtocolId::ZC1 || id == ProtocolId::HBB;
}

std::vector<RawBranch> enumerate_raw_branches(ProtocolId id, const SecretQubit& secret,
                                              const ChannelSpec& channel) {
  check_protocol_channel(id, channel);
  StateVector st = make_channel(channel);
  OrthonormalBasis alice_basis = secret_basis(secret);
  std::vector<QubitLabel> alice_targets{'a'};
  if (id == ProtocolId::HBB || id == ProtocolId::Zheng) {
    st = tensor(secret_state(secret, 'x'), st);
    alice_basis = bell_basis();
    alice_targets = {'x', 'a'};
  }

  std::vector<RawBranch> out;
  for (const MeasurementBranch& ab : measure_in_basis(st, alice_basis, alice_targets)) {
    if (!ab.post_state) continue;  // defensively skip weightless outcomes
    const StateVector& bc = *ab.post_state;
    if (protocol_has_bob_measurement(id)) {
      for (const MeasurementBranch& bb : measure_in_basis(bc, x_basis(), {'b'})) {
        if (!bb.post_state) continue;
        out.push_back(RawBranch{ab.outcome_label, bb.outcome_label,
                                ab.probability * bb.probability, *bb.post_state, bc});
      }
    } else {
      out.push_back(RawBranch{ab.outcome_label, "", ab.probability, bc, bc});
    }
  }
  return out;
}

SecretQubit table_witness(Ensemble ensemble) {
  switch (ensemble) {
    case Ensemble::Equatorial: return equatorial_secret(0.9);
    case Ensemble::Real: return real_secret(1.1);
    case Ensemble::Arbitrary: return make_secret(Ensemble::Arbitrary, 1.1, 0.9);
  }
  throw std::logic_error("unknown ensemble");
}

std::vector<std::vector<CorrectionStep>> candidate_sequences(std::span<const OpName> pool,
                                                             bool has_b) {
  std::vector<std::vector<CorrectionStep>> out;
  const auto usable = [&](OpName op) { return op_arity(op) == 1 || has_b; };
  for (OpName op : pool)
    if (usable(op)) out.push_back({make_step(op)});
  for (OpName first : pool) {
    if (!usable(first)) continue;
    for (OpName second : pool) {
      if (!usable(second)) continue;
      out.push_back({make_step(first), make_step(second)});
    }
  }
  return out;
}

std::vector<CorrectionEntry> build_table(ProtocolId id, Ensemble ensemble) {
  const SecretQubit witness = table_witness(ensemble);
  std::vector<CorrectionEntry> table;
  for (const RawBranch& rb : enumerate_raw_branches(id, witness, default_channel(id)))
    table.push_back(derive_correction(rb.pre, witness, kOpPool, rb.key()));
  if (id == ProtocolId::ZC1) {
    // The xi-perp pair is the one whose widely quoted hand-written assignment
    // swaps the two X-outcome corrections; the searched table is the one that
    // actually restores the secret, so keep a marker on those entries.
    for (CorrectionEntry& e : table)
      if (e.branch_key.rfind("1,", 0) == 0)
        e.notes = "search result; conventional hand-written tables swap the corrections of this branch pair";
  }
  return table;
}

using TableKey = std::pair<int, int>;

const std::map<TableKey, std::vector<CorrectionEntry>>& all_tables() {
  static const std::map<TableKey, std::vector<CorrectionEntry>> tables = [] {
    std::map<TableKey, std::vector<CorrectionEntry>> t;
    for (ProtocolId id : {ProtocolId::ZC1, ProtocolId::ZC2})
      for (Ensemble ens : {Ensemble::Equatorial, Ensemble::Real})
        t.emplace(TableKey{static_cast<int>(id), static_cast<int>(ens)}, build_table(id, ens));
    for (ProtocolId id : {ProtocolId::HBB, ProtocolId::Zheng})
      t.emplace(TableKey{static_cast<int>(id), static_cast<int>(Ensemble::Arbitrary)},
                build_table(id, Ensemble::Arbitrary));
    return t;
  }();
  return tables;
}

std::vector<CorrectionStep> corrections_for(ProtocolId id, const SecretQubit& secret,
                                            const RawBranch& rb) {
  const bool fixed_table =
      id == ProtocolId::HBB || id == ProtocolId::Zheng || secret.ensemble != Ensemble::Arbitrary;
  if (!fixed_table)
    return derive_correction(rb.pre, secret, kOpPool, rb.key()).ops;  // best effort, per secret
  for (const CorrectionEntry& e : correction_table(id, secret.ensemble))
    if (e.branch_key == rb.key()) return e.ops;
  throw std::logic_error("correction table is missing branch " + rb.key());
}

ResourceLedger make_ledger(ProtocolId id, bool withhold) {
  return protocol_ledger(id, withhold);
}

}  // namespace

ResourceLedger protocol_ledger(ProtocolId id, bool withhold) {
  ResourceLedger L;
  switch (id) {
    case ProtocolId::ZC1:
      L.alice = {1, 1, 1, 0, 0, 0};
      L.bob = {1, 1, 0, 1, 0, 0};
      break;
    case ProtocolId::ZC2:
      L.alice = {1, 1, 1, 0, 0, 0};
      L.bob = {0, 0, 0, 0, 0, 1};
      L.charlie = {0, 0, 0, 0, 0, 1};
      break;
    case ProtocolId::HBB:
      L.alice = {1, 2, 2, 0, 0, 0};
      L.bob = {1, 1, 0, 1, 0, 0};
      break;
    case ProtocolId::Zheng:
      L.alice = {1, 2, 2, 0, 0, 0};
      L.bob = {0, 0, 0, 0, 0, 1};
      L.charlie = {0, 0, 0, 0, 0, 1};
      break;
  }
  if (withhold) {
    L.alice.cbits_withheld = L.alice.cbits_broadcast;
    L.alice.cbits_broadcast = 0;
  }
  return L;
}

namespace {

std::vector<ClassicalMessage> make_messages(ProtocolId id, bool withhold) {
  std::vector<ClassicalMessage> msgs;
  const int alice_bits = (id == ProtocolId::ZC1 || id == ProtocolId::ZC2) ? 1 : 2;
  msgs.push_back(ClassicalMessage{Party::Alice, true, Party::Charlie, alice_bits, !withhold});
  if (protocol_has_bob_measurement(id))
    msgs.push_back(ClassicalMessage{Party::Bob, false, Party::Charlie, 1, true});
  return msgs;
}

ProtocolRun assemble_run(ProtocolId id, const SecretQubit& secret, const ChannelSpec& channel,
                         const std::vector<RawBranch>& raw,
                         const std::vector<std::vector<CorrectionStep>>& per_branch_ops,
                         bool controlled, bool withhold) {
  ProtocolRun run;
  run.protocol = id;
  run.secret = secret;
  run.channel = channel;
  run.controlled = controlled;
  run.alice_message_delivered = !withhold;
  run.messages = make_messages(id, withhold);
  run.ledger = make_ledger(id, withhold);

  double total = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    BranchRecord br{raw[i].alice_outcome, raw[i].bob_outcome, raw[i].probability,
                    raw[i].post_alice_bc, per_branch_ops[i], std::nullopt, 0.0};
    StateVector corrected = apply_correction(raw[i].pre, per_branch_ops[i]);
    br.fidelity = charlie_fidelity(corrected, secret);
    br.final_state = std::move(corrected);
    total += br.probability;
    run.branches.push_back(std::move(br));
  }
  if (std::abs(total - 1.0) > kAggregateTol)
    throw std::logic_error("protocol branch probabilities do not sum to 1");
  return run;
}

ProtocolRun run_plain(ProtocolId id, const SecretQubit& secret, const ChannelSpec& channel) {
  const std::vector<RawBranch> raw = enumerate_raw_branches(id, secret, channel);
  std::vector<std::vector<CorrectionStep>> ops;
  ops.reserve(raw.size());
  for (const RawBranch& rb : raw) ops.push_back(corrections_for(id, secret, rb));
  return assemble_run(id, secret, channel, raw, ops, false, false);
}

}  // namespace

double ProtocolRun::min_fidelity() const {
  double worst = 1.0;
  for (const BranchRecord& b : branches)
    if (b.probability > 0.0) worst = std::min(worst, b.fidelity);
  return worst;
}

double ProtocolRun::average_fidelity() const {
  double acc = 0.0;
  for (const BranchRecord& b : branches) acc += b.probability * b.fidelity;
  return acc;
}

std::string_view protocol_token(ProtocolId id) {
  switch (id) {
    case ProtocolId::ZC1: return "zc1";
    case ProtocolId::ZC2: return "zc2";
    case ProtocolId::HBB: return "hbb";
    case ProtocolId::Zheng: return "zheng";
  }
  throw std::logic_error("unknown protocol");
}

ChannelSpec default_channel(ProtocolId id) {
  switch (id) {
    case ProtocolId::ZC1:
    case ProtocolId::HBB: return ghz_channel();
    case ProtocolId::ZC2:
    case ProtocolId::Zheng: return asym_w_channel();
  }
  throw std::logic_error("unknown protocol");
}

void check_protocol_channel(ProtocolId id, const ChannelSpec& channel) {
  const auto bad = [&] {
    throw std::invalid_argument(std::string("channel ") + std::string(channel_token(channel.kind)) +
                                " cannot carry protocol " + std::string(protocol_token(id)));
  };
  switch (id) {
    case ProtocolId::ZC1:
      if (channel.kind != ChannelKind::GHZ && channel.kind != ChannelKind::NonMaxGHZ) bad();
      break;
    case ProtocolId::ZC2:
      if (channel.kind != ChannelKind::AsymW && channel.kind != ChannelKind::GeneralW) bad();
      break;
    case ProtocolId::HBB:
      if (channel.kind != ChannelKind::GHZ) bad();
      break;
    case ProtocolId::Zheng:
      if (channel.kind != ChannelKind::AsymW) bad();
      break;
  }
}

ProtocolRun run_zc1(const SecretQubit& secret, const ChannelSpec& channel) {
  return run_plain(ProtocolId::ZC1, secret, channel);
}

ProtocolRun run_zc2(const SecretQubit& secret, const ChannelSpec& channel) {
  return run_plain(ProtocolId::ZC2, secret, channel);
}

ProtocolRun run_hbb(const SecretQubit& secret) {
  return run_plain(ProtocolId::HBB, secret, ghz_channel());
}

ProtocolRun run_zheng(const SecretQubit& secret) {
  return run_plain(ProtocolId::Zheng, secret, asym_w_channel());
}

ProtocolRun run_protocol(ProtocolId id, const SecretQubit& secret, const ChannelSpec& channel) {
  return run_plain(id, secret, channel);
}

ProtocolRun run_controlled(ProtocolId id, const SecretQubit& secret, const ChannelSpec& channel,
                           bool withhold) {
  if (!withhold) {
    const std::vector<RawBranch> raw = enumerate_raw_branches(id, secret, channel);
    std::vector<std::vector<CorrectionStep>> ops;
    for (const RawBranch& rb : raw) ops.push_back(corrections_for(id, secret, rb));
    return assemble_run(id, secret, channel, raw, ops, true, false);
  }

  const std::vector<RawBranch> raw = enumerate_raw_branches(id, secret, channel);
  // Fix one correction per receiver-visible outcome (Bob's bit is shared
  // between the receivers; Alice's is withheld), maximizing the probability-
  // weighted fidelity over Alice's outcomes. Chosen before any branch is
  // processed, so nothing downstream can peek at Alice's outcome.
  std::vector<std::string> group_keys;
  for (const RawBranch& rb : raw)
    if (std::find(group_keys.begin(), group_keys.end(), rb.bob_outcome) == group_keys.end())
      group_keys.push_back(rb.bob_outcome);

  std::map<std::string, std::vector<CorrectionStep>> strategy;
  for (const std::string& g : group_keys) {
    std::vector<const RawBranch*> members;
    for (const RawBranch& rb : raw)
      if (rb.bob_outcome == g) members.push_back(&rb);
    const bool has_b = members.front()->pre.has_label('b');
    double best = -1.0;
    std::vector<CorrectionStep> best_seq;
    for (const auto& seq : candidate_sequences(kOpPool, has_b)) {
      double score = 0.0;
      for (const RawBranch* rb : members)
        score += rb->probability * charlie_fidelity(apply_correction(rb->pre, seq), secret);
      if (score > best) {
        best = score;
        best_seq = seq;
      }
    }
    strategy[g] = best_seq;
  }

  std::vector<std::vector<CorrectionStep>> ops;
  for (const RawBranch& rb : raw) ops.push_back(strategy.at(rb.bob_outcome));
  return assemble_run(id, secret, channel, raw, ops, true, true);
}

CorrectionEntry derive_correction(const StateVector& branch_state, const SecretQubit& secret,
                                  std::span<const OpName> pool, std::string branch_key) {
  if (!branch_state.has_label('c'))
    throw std::invalid_argument("branch state must hold qubit c");
  const bool has_b = branch_state.has_label('b');
  CorrectionEntry entry;
  entry.branch_key = std::move(branch_key);
  double best = -1.0;
  for (const auto& seq : candidate_sequences(pool, has_b)) {
    const double f = charlie_fidelity(apply_correction(branch_state, seq), secret);
    if (f > best) {
      best = f;
      entry.ops = seq;
      entry.achieved_fidelity = f;
    }
  }
  return entry;
}

CorrectionEntry derive_correction(const StateVector& branch_state, const SecretQubit& secret,
                                  std::string branch_key) {
  return derive_correction(branch_state, secret, kOpPool, std::move(branch_key));
}

const std::vector<CorrectionEntry>& correction_table(ProtocolId id, Ensemble ensemble) {
  if (id == ProtocolId::HBB || id == ProtocolId::Zheng) ensemble = Ensemble::Arbitrary;
  if (ensemble == Ensemble::Arbitrary && (id == ProtocolId::ZC1 || id == ProtocolId::ZC2))
    throw std::invalid_argument("zc1/zc2 have no fixed correction table for arbitrary secrets");
  return all_tables().at(TableKey{static_cast<int>(id), static_cast<int>(ensemble)});
}

std::vector<TableListing> all_correction_tables() {
  std::vector<TableListing> out;
  for (ProtocolId id : {ProtocolId::ZC1, ProtocolId::ZC2})
    for (Ensemble ens : {Ensemble::Equatorial, Ensemble::Real})
      out.push_back(TableListing{id, ens, &correction_table(id, ens)});
  for (ProtocolId id : {ProtocolId::HBB, ProtocolId::Zheng})
    out.push_back(TableListing{id, Ensemble::Arbitrary, &correction_table(id, Ensemble::Arbitrary)});
  return out;
}

std::string corrections_token(const std::vector<CorrectionStep>& steps) {
  if (steps.empty()) return "none";
  std::string out;
  for (const CorrectionStep& s : steps) {
    if (!out.empty()) out += "+";
    out += op_token(s.op);
  }
  return out;
}

}  // namespace qsplit
