// Regenerates data/correction_tables.json from the runtime-derived tables so
// the shipped file and the search can be diffed against each other in tests.
#include <fstream>
#include <iostream>
#include <string>

#include "json.hpp"

#include "qsplit/protocols.hpp"

int main(int argc, char** argv) {
  using nlohmann::ordered_json;
  using namespace qsplit;

  const std::string path = argc > 1 ? argv[1] : "data/correction_tables.json";

  ordered_json root;
  root["description"] =
      "Per-branch correction sequences, found by exhaustive search over operator sequences of "
      "length <= 2 at a fixed witness secret per ensemble. Regenerate with the gen_tables tool.";
  ordered_json tables = ordered_json::array();
  for (const TableListing& tl : all_correction_tables()) {
    ordered_json t;
    t["protocol"] = std::string(protocol_token(tl.protocol));
    t["ensemble"] = std::string(ensemble_token(tl.ensemble));
    ordered_json entries = ordered_json::array();
    for (const CorrectionEntry& e : *tl.entries) {
      ordered_json je;
      je["branch"] = e.branch_key;
      ordered_json ops = ordered_json::array();
      for (const CorrectionStep& s : e.ops) ops.push_back(std::string(op_token(s.op)));
      je["ops"] = ops;
      je["fidelity"] = e.achieved_fidelity;
      je["notes"] = e.notes;
      entries.push_back(je);
    }
    t["entries"] = entries;
    tables.push_back(t);
  }
  root["tables"] = tables;

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open " << path << "\n";
    return 1;
  }
  out << root.dump(2) << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}
