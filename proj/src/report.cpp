#include "qsplit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qsplit {

std::string format_sig(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in report");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

namespace {

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(ch));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string json_value(const Record::Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return "\"" + escape_json(*s) + "\"";
  if (const auto* d = std::get_if<double>(&v)) return format_sig(*d);
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  return std::get<bool>(v) ? "true" : "false";
}

std::string csv_value(const Record::Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) {
    if (s->find_first_of(",\"\n\r") == std::string::npos) return *s;
    std::string out = "\"";
    for (char ch : *s) {
      out += ch;
      if (ch == '"') out += '"';
    }
    out += '"';
    return out;
  }
  if (const auto* d = std::get_if<double>(&v)) return format_sig(*d);
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  return std::get<bool>(v) ? "true" : "false";
}

}  // namespace

std::string json_line(const Record& r) {
  std::string out = "{";
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    if (i) out += ",";
    out += "\"" + escape_json(r.fields[i].first) + "\":" + json_value(r.fields[i].second);
  }
  out += "}";
  return out;
}

std::string csv_header(const Record& r) {
  std::string out;
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    if (i) out += ",";
    out += r.fields[i].first;
  }
  return out;
}

std::string csv_row(const Record& r) {
  std::string out;
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    if (i) out += ",";
    out += csv_value(r.fields[i].second);
  }
  return out;
}

void write_records(std::ostream& os, const std::vector<Record>& records, OutputFormat format) {
  if (format == OutputFormat::JsonLines) {
    for (const Record& r : records) os << json_line(r) << '\n';
    return;
  }
  if (records.empty()) return;
  const Record& first = records.front();
  for (const Record& r : records) {
    bool same = r.fields.size() == first.fields.size();
    for (std::size_t i = 0; same && i < r.fields.size(); ++i)
      same = r.fields[i].first == first.fields[i].first;
    if (!same) throw std::invalid_argument("csv rows must share one field list");
  }
  os << csv_header(first) << '\n';
  for (const Record& r : records) os << csv_row(r) << '\n';
}

namespace {

void add_secret_fields(Record& r, const SecretQubit& s) {
  r.add("ensemble", ensemble_token(s.ensemble));
  r.add("theta", s.theta);
  r.add("phi", s.phi);
}

int run_max_arity(const ProtocolRun& run) {
  return std::max({run.ledger.alice.max_measurement_arity, run.ledger.bob.max_measurement_arity,
                   run.ledger.charlie.max_measurement_arity});
}

}  // namespace

std::vector<Record> records_from_run(const ProtocolRun& run) {
  const double min_f = run.min_fidelity();
  const double avg_f = run.average_fidelity();
  const auto base = [&](const char* kind) {
    Record r;
    r.add("record", kind);
    r.add("protocol", protocol_token(run.protocol));
    r.add("channel", channel_token(run.channel.kind));
    add_secret_fields(r, run.secret);
    r.add("controlled", run.controlled);
    r.add("delivered", run.alice_message_delivered);
    return r;
  };
  const auto add_tail = [&](Record& r) {
    r.add("min_fidelity", min_f);
    r.add("average_fidelity", avg_f);
    r.add("alice_cbits_broadcast", run.ledger.alice.cbits_broadcast);
    r.add("alice_cbits_withheld", run.ledger.alice.cbits_withheld);
    r.add("bob_cbits_p2p", run.ledger.bob.cbits_point_to_point);
    r.add("max_measurement_arity", run_max_arity(run));
    r.add("joint_unitaries", run.ledger.bob.joint_unitaries_with_other_receiver);
  };

  std::vector<Record> out;
  for (const BranchRecord& br : run.branches) {
    Record r = base("branch");
    r.add("branch_key", br.key());
    r.add("probability", br.probability);
    r.add("corrections", corrections_token(br.corrections));
    r.add("fidelity", br.fidelity);
    add_tail(r);
    out.push_back(std::move(r));
  }
  Record s = base("summary");
  s.add("branch_key", "all");
  s.add("probability", 1.0);
  s.add("corrections", "");
  s.add("fidelity", avg_f);
  add_tail(s);
  out.push_back(std::move(s));
  return out;
}

std::vector<Record> records_from_sweep(const SweepResult& sweep) {
  const int arity = std::max({sweep.ledger.alice.max_measurement_arity,
                              sweep.ledger.bob.max_measurement_arity,
                              sweep.ledger.charlie.max_measurement_arity});
  const auto row = [&](const char* kind, const SecretQubit& secret, const std::string& branch_key,
                       double probability, const std::string& corrections, double fid,
                       double point_min, const char* notes) {
    Record r;
    r.add("record", kind);
    r.add("protocol", protocol_token(sweep.protocol));
    r.add("channel", channel_token(sweep.channel.kind));
    add_secret_fields(r, secret);
    r.add("branch_key", branch_key);
    r.add("probability", probability);
    r.add("corrections", corrections);
    r.add("fidelity", fid);
    r.add("point_min_fidelity", point_min);
    r.add("cbits_broadcast", sweep.ledger.alice.cbits_broadcast);
    r.add("measurement_arity", arity);
    r.add("notes", notes);
    return r;
  };

  std::vector<Record> out;
  for (const SweepPoint& p : sweep.points) {
    for (const BranchSummary& br : p.branches)
      out.push_back(row("branch", p.secret, br.key, br.probability, br.corrections, br.fidelity,
                        p.min_branch_fidelity, br.probability == 0.0 ? "null branch" : ""));
    // one record per grid point: the branch table above aggregated
    out.push_back(row("point", p.secret, "all", 1.0, "", p.average_fidelity,
                      p.min_branch_fidelity, ""));
  }
  const SecretQubit corner{sweep.grid.ensemble, sweep.grid.theta.start, sweep.grid.phi.start};
  out.push_back(row("summary", corner, "min_over_grid", 1.0, "", sweep.grid_average_fidelity,
                    sweep.grid_min_fidelity, ""));
  return out;
}

std::vector<Record> records_from_leakage(const LeakageReport& report) {
  const auto base = [&](const char* kind) {
    Record r;
    r.add("record", kind);
    r.add("protocol", protocol_token(report.protocol));
    r.add("channel", channel_token(report.channel.kind));
    r.add("probes", report.probes.size());
    return r;
  };

  std::vector<Record> out;
  for (const LeakageCell& cell : report.cells) {
    Record r = base("cell");
    r.add("alice_outcome", cell.alice_outcome);
    r.add("party", std::string(1, cell.party));
    r.add("max_pairwise_distance", cell.max_pairwise_distance);
    r.add("max_distance_from_mixed", cell.max_distance_from_mixed);
    r.add("witness_pair", std::to_string(cell.witness_i) + ":" + std::to_string(cell.witness_j));
    out.push_back(std::move(r));
  }
  Record s = base("summary");
  s.add("alice_outcome", "all");
  s.add("party", "all");
  s.add("max_pairwise_distance", report.max_pairwise_distance);
  s.add("max_distance_from_mixed", report.max_distance_from_mixed);
  s.add("witness_pair", "");
  out.push_back(std::move(s));
  return out;
}

std::vector<Record> records_from_filter(const FilterRun& run) {
  const auto base = [&](const char* kind) {
    Record r;
    r.add("record", kind);
    r.add("channel", channel_token(ChannelKind::NonMaxGHZ));
    r.add("channel_a", run.a);
    r.add("channel_b", run.b);
    add_secret_fields(r, run.secret);
    return r;
  };
  const auto add_tail = [&](Record& r) {
    r.add("overall_success", run.overall_success);
    r.add("reference_success_probability", run.reference_success_probability);
  };

  std::vector<Record> out;
  double worst_success_fid = 1.0, worst_fail_fid = 0.0;
  for (const FilterBranch& fb : run.branches) {
    worst_success_fid = std::min(worst_success_fid, fb.success_fidelity);
    worst_fail_fid = std::max(worst_fail_fid, fb.fail_fidelity);
    Record r = base("branch");
    r.add("branch_key", fb.branch_key);
    r.add("probability", fb.probability);
    r.add("corrections", fb.corrections);
    r.add("success_probability", fb.success_probability);
    r.add("success_fidelity", fb.success_fidelity);
    r.add("fail_fidelity", fb.fail_fidelity);
    add_tail(r);
    out.push_back(std::move(r));
  }
  Record s = base("summary");
  s.add("branch_key", "all");
  s.add("probability", 1.0);
  s.add("corrections", "");
  s.add("success_probability", run.overall_success);
  s.add("success_fidelity", worst_success_fid);
  s.add("fail_fidelity", worst_fail_fid);
  add_tail(s);
  out.push_back(std::move(s));
  return out;
}

std::vector<Record> records_from_feasibility(const FeasibilityResult& result) {
  const auto base = [&](const char* kind) {
    Record r;
    r.add("record", kind);
    r.add("channel", channel_token(ChannelKind::GeneralW));
    r.add("channel_a", result.a);
    r.add("channel_b", result.b);
    r.add("channel_c", result.c);
    return r;
  };

  std::vector<Record> out;
  double worst = 1.0;
  for (const FeasibilityProbe& p : result.probes) {
    worst = std::min(worst, p.min_branch_fidelity);
    Record r = base("probe");
    add_secret_fields(r, p.secret);
    r.add("min_branch_fidelity", p.min_branch_fidelity);
    r.add("feasible", result.feasible);
    r.add("witness", result.witness);
    out.push_back(std::move(r));
  }
  Record s = base("summary");
  s.add("ensemble", "all");
  s.add("theta", 0.0);
  s.add("phi", 0.0);
  s.add("min_branch_fidelity", worst);
  s.add("feasible", result.feasible);
  s.add("witness", result.witness);
  out.push_back(std::move(s));
  return out;
}

std::vector<Record> records_from_compare(const std::vector<ProtocolRun>& runs) {
  std::vector<Record> out;
  for (const ProtocolRun& run : runs) {
    Record r;
    r.add("record", "protocol");
    r.add("protocol", protocol_token(run.protocol));
    r.add("channel", channel_token(run.channel.kind));
    add_secret_fields(r, run.secret);
    r.add("controlled", run.controlled);
    r.add("delivered", run.alice_message_delivered);
    r.add("average_fidelity", run.average_fidelity());
    r.add("min_fidelity", run.min_fidelity());
    r.add("alice_measurements", run.ledger.alice.measurement_count);
    r.add("alice_max_arity", run.ledger.alice.max_measurement_arity);
    r.add("alice_cbits_broadcast", run.ledger.alice.cbits_broadcast);
    r.add("alice_cbits_withheld", run.ledger.alice.cbits_withheld);
    r.add("bob_cbits_p2p", run.ledger.bob.cbits_point_to_point);
    r.add("total_cbits_sent",
          run.ledger.alice.cbits_broadcast + run.ledger.bob.cbits_point_to_point);
    r.add("joint_unitaries", run.ledger.bob.joint_unitaries_with_other_receiver);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qsplit
