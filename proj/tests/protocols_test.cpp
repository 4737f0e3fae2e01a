#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qsplit/protocols.hpp"
#include "test_util.hpp"

using namespace qsplit;
using namespace qsplit::test;

namespace {

std::vector<std::string> branch_keys(const ProtocolRun& run) {
  std::vector<std::string> keys;
  for (const BranchRecord& br : run.branches) keys.push_back(br.key());
  return keys;
}

std::map<std::string, const BranchRecord*> by_key(const ProtocolRun& run) {
  std::map<std::string, const BranchRecord*> m;
  for (const BranchRecord& br : run.branches) m[br.key()] = &br;
  return m;
}

void check_uniform_and_faithful(const ProtocolRun& run, double expected_p) {
  double total = 0.0;
  for (const BranchRecord& br : run.branches) {
    CHECK(br.probability == doctest::Approx(expected_p).epsilon(1e-10));
    CHECK(br.fidelity == doctest::Approx(1.0).epsilon(1e-10));
    total += br.probability;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

std::map<std::string, std::string> table_tokens(ProtocolId id, Ensemble ens) {
  std::map<std::string, std::string> m;
  for (const CorrectionEntry& e : correction_table(id, ens)) m[e.branch_key] = corrections_token(e.ops);
  return m;
}

}  // namespace

TEST_CASE("zc1 on GHZ splits an equatorial secret into four even faithful branches") {
  const ProtocolRun run = run_zc1(equatorial_secret(kPi / 3.0), ghz_channel());
  REQUIRE(run.branches.size() == 4);
  CHECK(branch_keys(run) == std::vector<std::string>{"0,+x", "0,-x", "1,+x", "1,-x"});
  check_uniform_and_faithful(run, 0.25);
  CHECK(run.min_fidelity() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(run.average_fidelity() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zc1 carries the poles of the real ensemble faithfully") {
  for (const double theta : {0.0, 2.0 * kPi / 3.0, kPi}) {
    const ProtocolRun run = run_zc1(real_secret(theta), ghz_channel());
    REQUIRE(run.branches.size() == 4);
    check_uniform_and_faithful(run, 0.25);
  }
}

TEST_CASE("zc1 with an arbitrary secret: xi-perp branches exact, xi branches capped at 3/4") {
  // theta = pi/3, phi = pi/5: the xi-branch optimum is (2 alpha' |beta|)^2 = 3/4.
  const ProtocolRun run = run_zc1(make_secret(Ensemble::Arbitrary, kPi / 3.0, kPi / 5.0),
                                  ghz_channel());
  const auto branches = by_key(run);
  CHECK(branches.at("0,+x")->fidelity == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(branches.at("0,-x")->fidelity == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(branches.at("1,+x")->fidelity == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(branches.at("1,-x")->fidelity == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(corrections_token(branches.at("0,+x")->corrections) == "sxsz");
  CHECK(corrections_token(branches.at("0,-x")->corrections) == "sx");
  CHECK(corrections_token(branches.at("1,+x")->corrections) == "sx");
  CHECK(corrections_token(branches.at("1,-x")->corrections) == "sxsz");
  CHECK(run.min_fidelity() == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(run.average_fidelity() == doctest::Approx(0.875).epsilon(1e-10));
}

TEST_CASE("zc2 on the asymmetric W channel is deterministic for equatorial secrets") {
  const double phi = 1.0;
  const ProtocolRun run = run_zc2(equatorial_secret(phi), asym_w_channel());
  REQUIRE(run.branches.size() == 2);
  CHECK(branch_keys(run) == std::vector<std::string>{"0", "1"});
  check_uniform_and_faithful(run, 0.5);

  // The xi branch ends, before any phase convention is stripped, at exactly
  // e^{-i phi} (|0>_b tensor |xi>_c).
  const BranchRecord& xi_branch = run.branches[0];
  REQUIRE(xi_branch.final_state.has_value());
  REQUIRE(xi_branch.final_state->labels() == std::vector<QubitLabel>{'b', 'c'});
  const Amp phase(std::cos(phi), -std::sin(phi));
  const std::vector<Amp> expected = {phase * kInvSqrt2,                       // |00⟩
                                     phase * kInvSqrt2 * Amp(std::cos(phi), std::sin(phi)),
                                     0.0, 0.0};
  CHECK(max_amp_diff(*xi_branch.final_state, expected) <= 1e-12);
}

TEST_CASE("zc2 handles the real ensemble, theta = 2 pi/3 included") {
  for (const double theta : {0.4, 2.0 * kPi / 3.0, 2.8}) {
    const ProtocolRun run = run_zc2(real_secret(theta), asym_w_channel());
    REQUIRE(run.branches.size() == 2);
    check_uniform_and_faithful(run, 0.5);
  }
}

TEST_CASE("zc2 with an arbitrary secret falls short on at least one branch") {
  const ProtocolRun run = run_zc2(make_secret(Ensemble::Arbitrary, kPi / 3.0, kPi / 5.0),
                                  asym_w_channel());
  CHECK(run.min_fidelity() < 1.0 - 1e-6);
}

TEST_CASE("hbb teleports arbitrary secrets through eight even branches") {
  const ProtocolRun run = run_hbb(make_secret(Ensemble::Arbitrary, 0.9, 2.3));
  REQUIRE(run.branches.size() == 8);
  CHECK(branch_keys(run) ==
        std::vector<std::string>{"psi+,+x", "psi+,-x", "psi-,+x", "psi-,-x", "phi+,+x", "phi+,-x",
                                 "phi-,+x", "phi-,-x"});
  check_uniform_and_faithful(run, 0.125);
}

TEST_CASE("the hbb corrections also restore secrets whose |0> amplitude is complex") {
  // The promised ensembles keep alpha' real, but the eight-entry table is
  // exact for any qubit; drive the same flow by hand with a complex alpha.
  const StateVector secret_x = make_state({'x'}, {Amp(0.36, 0.48), Amp(0.8, 0.0)});
  const StateVector joint = tensor(secret_x, make_channel(ghz_channel()));

  const double s = kInvSqrt2;
  const OrthonormalBasis bell({{s, 0, 0, s}, {s, 0, 0, -s}, {0, s, s, 0}, {0, s, -s, 0}},
                              {"psi+", "psi-", "phi+", "phi-"});
  const OrthonormalBasis xb({{s, s}, {s, -s}}, {"+x", "-x"});

  std::map<std::string, std::string> table = table_tokens(ProtocolId::HBB, Ensemble::Arbitrary);
  std::map<std::string, OpName> op_by_token{{"I", OpName::Identity},
                                            {"sx", OpName::SigmaX},
                                            {"sz", OpName::SigmaZ},
                                            {"sxsz", OpName::SigmaXZ}};

  double total = 0.0;
  for (const MeasurementBranch& ab : measure_in_basis(joint, bell, {'x', 'a'})) {
    REQUIRE(ab.post_state.has_value());
    for (const MeasurementBranch& bb : measure_in_basis(*ab.post_state, xb, {'b'})) {
      REQUIRE(bb.post_state.has_value());
      const std::string key = ab.outcome_label + "," + bb.outcome_label;
      const StateVector fixed =
          apply_unitary(*bb.post_state, named_unitary(op_by_token.at(table.at(key))), {'c'});
      Amp overlap = 0.0;
      for (int i = 0; i < 2; ++i) overlap += std::conj(secret_x.amp(i)) * fixed.amp(i);
      CHECK(std::norm(overlap) == doctest::Approx(1.0).epsilon(1e-10));
      total += ab.probability * bb.probability;
    }
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("zheng splits arbitrary secrets through four even branches") {
  const ProtocolRun run = run_zheng(make_secret(Ensemble::Arbitrary, 2.0, 5.0));
  REQUIRE(run.branches.size() == 4);
  CHECK(branch_keys(run) == std::vector<std::string>{"psi+", "psi-", "phi+", "phi-"});
  check_uniform_and_faithful(run, 0.25);
  // Every Zheng branch leaves Bob's qubit in |0>: the joint unitary
  // disentangles him from Charlie.
  for (const BranchRecord& br : run.branches) {
    REQUIRE(br.final_state.has_value());
    CHECK(std::abs(br.final_state->amp(2)) <= 1e-10);
    CHECK(std::abs(br.final_state->amp(3)) <= 1e-10);
  }
}

TEST_CASE("branch probabilities are uniform for every protocol across a secret grid") {
  const std::map<ProtocolId, double> expected{{ProtocolId::ZC1, 0.25},
                                              {ProtocolId::ZC2, 0.5},
                                              {ProtocolId::HBB, 0.125},
                                              {ProtocolId::Zheng, 0.25}};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const SecretQubit secret =
          make_secret(Ensemble::Arbitrary, 0.2 + i * 0.65, 0.3 + j * 1.4);
      for (const auto& [id, p] : expected) {
        const ProtocolRun run = run_protocol(id, secret, default_channel(id));
        for (const BranchRecord& br : run.branches)
          CHECK(br.probability == doctest::Approx(p).epsilon(1e-10));
      }
    }
}

TEST_CASE("frozen correction tables: zc1") {
  const auto eq = table_tokens(ProtocolId::ZC1, Ensemble::Equatorial);
  CHECK(eq.at("0,+x") == "sxsz");
  CHECK(eq.at("0,-x") == "sx");
  CHECK(eq.at("1,+x") == "sx");
  CHECK(eq.at("1,-x") == "sxsz");

  const auto real_table = table_tokens(ProtocolId::ZC1, Ensemble::Real);
  CHECK(real_table.at("0,+x") == "I");
  CHECK(real_table.at("0,-x") == "sz");
  CHECK(real_table.at("1,+x") == "sx");
  CHECK(real_table.at("1,-x") == "sxsz");

  for (const CorrectionEntry& e : correction_table(ProtocolId::ZC1, Ensemble::Equatorial)) {
    CHECK(e.achieved_fidelity == doctest::Approx(1.0).epsilon(1e-12));
    if (e.branch_key.rfind("1,", 0) == 0) CHECK_FALSE(e.notes.empty());
  }
}

TEST_CASE("frozen correction tables: zc2, hbb, zheng") {
  const auto zc2_eq = table_tokens(ProtocolId::ZC2, Ensemble::Equatorial);
  CHECK(zc2_eq.at("0") == "omega");
  CHECK(zc2_eq.at("1") == "omega+sz");

  const auto zc2_real = table_tokens(ProtocolId::ZC2, Ensemble::Real);
  CHECK(zc2_real.at("0") == "omega+sxsz");
  CHECK(zc2_real.at("1") == "omega+sz");

  const auto hbb = table_tokens(ProtocolId::HBB, Ensemble::Arbitrary);
  CHECK(hbb.at("psi+,+x") == "I");
  CHECK(hbb.at("psi+,-x") == "sz");
  CHECK(hbb.at("psi-,+x") == "sz");
  CHECK(hbb.at("psi-,-x") == "I");
  CHECK(hbb.at("phi+,+x") == "sxsz");
  CHECK(hbb.at("phi+,-x") == "sx");
  CHECK(hbb.at("phi-,+x") == "sx");
  CHECK(hbb.at("phi-,-x") == "sxsz");

  const auto zheng = table_tokens(ProtocolId::Zheng, Ensemble::Arbitrary);
  CHECK(zheng.at("psi+") == "omega+sxsz");
  CHECK(zheng.at("psi-") == "omega+sx");
  CHECK(zheng.at("phi+") == "omega");
  CHECK(zheng.at("phi-") == "omega+sz");

  // The baselines promise the whole sphere, so any ensemble resolves to the
  // same table; zc1/zc2 have no exact arbitrary table at all.
  CHECK(&correction_table(ProtocolId::HBB, Ensemble::Equatorial) ==
        &correction_table(ProtocolId::HBB, Ensemble::Arbitrary));
  CHECK_THROWS_AS(correction_table(ProtocolId::ZC1, Ensemble::Arbitrary), std::invalid_argument);
  CHECK_THROWS_AS(correction_table(ProtocolId::ZC2, Ensemble::Arbitrary), std::invalid_argument);
}

TEST_CASE("the runtime-derived tables match the persisted data file") {
  const char* dir = QSPLIT_DATA_DIR;
  std::ifstream in(std::string(dir) + "/correction_tables.json");
  REQUIRE_MESSAGE(in.good(), "data/correction_tables.json is missing; run the gen_tables tool");
  nlohmann::json doc;
  in >> doc;

  const std::vector<TableListing> listings = all_correction_tables();
  REQUIRE(doc.at("tables").size() == listings.size());
  for (std::size_t t = 0; t < listings.size(); ++t) {
    const auto& jt = doc.at("tables")[t];
    CHECK(jt.at("protocol").get<std::string>() == protocol_token(listings[t].protocol));
    CHECK(jt.at("ensemble").get<std::string>() == ensemble_token(listings[t].ensemble));
    const auto& entries = *listings[t].entries;
    REQUIRE(jt.at("entries").size() == entries.size());
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const auto& je = jt.at("entries")[e];
      CHECK(je.at("branch").get<std::string>() == entries[e].branch_key);
      REQUIRE(je.at("ops").size() == entries[e].ops.size());
      for (std::size_t o = 0; o < entries[e].ops.size(); ++o)
        CHECK(je.at("ops")[o].get<std::string>() == op_token(entries[e].ops[o].op));
      CHECK(je.at("fidelity").get<double>() ==
            doctest::Approx(entries[e].achieved_fidelity).epsilon(1e-9));
    }
  }
}

TEST_CASE("derive_correction finds the exact inverse when one exists") {
  const SecretQubit secret = make_secret(Ensemble::Arbitrary, 1.0, 2.0);
  const double alpha = secret_alpha(secret);
  const Amp beta = secret_beta(secret);

  // beta|0> - alpha'|1> is xi-perp's shape; sigma_x restores it exactly.
  const StateVector perp = make_state({'c'}, {beta, -alpha});
  const CorrectionEntry found = derive_correction(perp, secret, "perp");
  REQUIRE(found.ops.size() == 1);
  CHECK(found.ops[0].op == OpName::SigmaX);
  CHECK(found.achieved_fidelity == doctest::Approx(1.0).epsilon(1e-12));

  // An already-correct state keeps the identity (first maximizer wins ties).
  const CorrectionEntry noop = derive_correction(secret_state(secret, 'c'), secret, "xi");
  REQUIRE(noop.ops.size() == 1);
  CHECK(noop.ops[0].op == OpName::Identity);

  CHECK_THROWS_AS(derive_correction(make_state({'b'}, {1.0, 0.0}), secret, "no-c"),
                  std::invalid_argument);
}

TEST_CASE("resource ledgers carry the headline classical-cost comparison") {
  const ResourceLedger zc1 = protocol_ledger(ProtocolId::ZC1, false);
  CHECK(zc1.alice.measurement_count == 1);
  CHECK(zc1.alice.max_measurement_arity == 1);
  CHECK(zc1.alice.cbits_broadcast == 1);
  CHECK(zc1.alice.cbits_withheld == 0);
  CHECK(zc1.bob.measurement_count == 1);
  CHECK(zc1.bob.cbits_point_to_point == 1);
  CHECK(zc1.charlie.measurement_count == 0);
  CHECK(zc1.bob.joint_unitaries_with_other_receiver == 0);

  const ResourceLedger hbb = protocol_ledger(ProtocolId::HBB, false);
  CHECK(hbb.alice.measurement_count == 1);
  CHECK(hbb.alice.max_measurement_arity == 2);
  CHECK(hbb.alice.cbits_broadcast == 2);
  CHECK(hbb.bob.cbits_point_to_point == 1);

  // The sender-knows-the-state schemes halve Alice's classical broadcast.
  CHECK(2 * zc1.alice.cbits_broadcast == hbb.alice.cbits_broadcast);

  const ResourceLedger zc2 = protocol_ledger(ProtocolId::ZC2, false);
  CHECK(zc2.alice.cbits_broadcast == 1);
  CHECK(zc2.bob.measurement_count == 0);
  CHECK(zc2.bob.cbits_point_to_point == 0);
  CHECK(zc2.bob.joint_unitaries_with_other_receiver == 1);
  CHECK(zc2.charlie.joint_unitaries_with_other_receiver == 1);

  const ResourceLedger zheng = protocol_ledger(ProtocolId::Zheng, false);
  CHECK(zheng.alice.cbits_broadcast == 2);
  CHECK(zheng.alice.max_measurement_arity == 2);
  CHECK(2 * zc2.alice.cbits_broadcast == zheng.alice.cbits_broadcast);

  const ResourceLedger withheld = protocol_ledger(ProtocolId::ZC1, true);
  CHECK(withheld.alice.cbits_broadcast == 0);
  CHECK(withheld.alice.cbits_withheld == 1);
}

TEST_CASE("runs carry their classical messages") {
  const ProtocolRun zc1 = run_zc1(equatorial_secret(0.3), ghz_channel());
  REQUIRE(zc1.messages.size() == 2);
  CHECK(zc1.messages[0].sender == Party::Alice);
  CHECK(zc1.messages[0].broadcast);
  CHECK(zc1.messages[0].bits == 1);
  CHECK(zc1.messages[0].delivered);
  CHECK(zc1.messages[1].sender == Party::Bob);
  CHECK_FALSE(zc1.messages[1].broadcast);
  CHECK(zc1.messages[1].recipient == Party::Charlie);
  CHECK(zc1.messages[1].bits == 1);

  const ProtocolRun zheng = run_zheng(make_secret(Ensemble::Arbitrary, 1.0, 1.0));
  REQUIRE(zheng.messages.size() == 1);
  CHECK(zheng.messages[0].bits == 2);
}

TEST_CASE("protocols reject channels they cannot ride") {
  const SecretQubit eq = equatorial_secret(0.5);
  CHECK_THROWS_WITH_AS(static_cast<void>(run_zc2(eq, ghz_channel())),
                       "channel ghz cannot carry protocol zc2", std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(run_zc1(eq, asym_w_channel())), std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(run_protocol(ProtocolId::HBB, eq, nonmax_ghz_channel(0.6, 0.8))),
                  std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(run_protocol(ProtocolId::Zheng, eq,
                                                 general_w_channel(0.6, 0.6, std::sqrt(0.28)))),
                  std::invalid_argument);
  CHECK_NOTHROW(static_cast<void>(run_zc1(eq, nonmax_ghz_channel(0.6, 0.8))));
}

TEST_CASE("delivered controlled runs equal the plain run branch for branch") {
  const SecretQubit secret = equatorial_secret(kPi / 4.0);
  const ProtocolRun plain = run_zc1(secret, ghz_channel());
  const ProtocolRun delivered = run_controlled(ProtocolId::ZC1, secret, ghz_channel(), false);
  CHECK(delivered.controlled);
  CHECK(delivered.alice_message_delivered);
  REQUIRE(delivered.branches.size() == plain.branches.size());
  for (std::size_t i = 0; i < plain.branches.size(); ++i) {
    CHECK(delivered.branches[i].key() == plain.branches[i].key());
    CHECK(delivered.branches[i].probability == plain.branches[i].probability);
    CHECK(corrections_token(delivered.branches[i].corrections) ==
          corrections_token(plain.branches[i].corrections));
    CHECK(delivered.branches[i].fidelity == plain.branches[i].fidelity);
  }
}

TEST_CASE("withholding the broadcast caps the equatorial average at one half") {
  const ProtocolRun run =
      run_controlled(ProtocolId::ZC1, equatorial_secret(kPi / 4.0), ghz_channel(), true);
  CHECK(run.controlled);
  CHECK_FALSE(run.alice_message_delivered);
  CHECK_FALSE(run.messages[0].delivered);
  CHECK(run.ledger.alice.cbits_broadcast == 0);
  CHECK(run.ledger.alice.cbits_withheld == 1);

  // Any Bob-outcome group holds two orthogonal candidate states, so every
  // fixed correction scores exactly 1/2 on average.
  CHECK(std::abs(run.average_fidelity() - 0.5) <= 1e-10);
  CHECK(run.average_fidelity() < 0.999);

  // The receivers never see Alice's bit, so the applied correction must be a
  // function of Bob's outcome alone.
  std::map<std::string, std::string> per_bob_outcome;
  for (const BranchRecord& br : run.branches) {
    const auto [it, inserted] =
        per_bob_outcome.emplace(br.bob_outcome, corrections_token(br.corrections));
    if (!inserted) CHECK(it->second == corrections_token(br.corrections));
  }
  CHECK(per_bob_outcome.size() == 2);

  // A withheld run hides the secret: mixing Charlie's (or Bob's) marginal
  // over Alice's outcomes gives I/2 exactly.
  for (const QubitLabel q : {'b', 'c'}) {
    Matrix mixed = Matrix::zero(2);
    for (const BranchRecord& br : run.branches) {
      const DensityMatrix rho = partial_trace(br.post_alice_bc, {q});
      for (std::size_t k = 0; k < mixed.m.size(); ++k)
        mixed.m[k] += br.probability * rho.mat().m[k];
    }
    CHECK(Matrix::max_abs_diff(mixed, DensityMatrix::maximally_mixed(2).mat()) <= 1e-10);
  }
}

TEST_CASE("the one-half ceiling is secret-independent: candidate states are orthogonal") {
  // Within one Bob-outcome group the two candidate states are orthogonal for
  // every secret, so any fixed unitary's fidelities sum to 1 across the group.
  for (const SecretQubit& secret :
       {real_secret(1.9), make_secret(Ensemble::Arbitrary, 0.8, 3.9)}) {
    const ProtocolRun run = run_controlled(ProtocolId::ZC1, secret, ghz_channel(), true);
    CHECK(std::abs(run.average_fidelity() - 0.5) <= 1e-10);
  }
}

TEST_CASE("token maps for protocols and correction sequences") {
  CHECK(protocol_token(ProtocolId::ZC1) == "zc1");
  CHECK(protocol_token(ProtocolId::ZC2) == "zc2");
  CHECK(protocol_token(ProtocolId::HBB) == "hbb");
  CHECK(protocol_token(ProtocolId::Zheng) == "zheng");
  CHECK(corrections_token({}) == "none");
  CHECK(corrections_token({CorrectionStep{OpName::Omega, {'b', 'c'}},
                           CorrectionStep{OpName::SigmaZ, {'c'}}}) == "omega+sz");
}
