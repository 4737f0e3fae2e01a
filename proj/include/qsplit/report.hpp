#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qsplit/analysis.hpp"
#include "qsplit/protocols.hpp"

namespace qsplit {

// One output row: ordered key/value pairs. Field order is part of the output
// contract — JSON lines and CSV columns both follow insertion order.
struct Record {
  using Value = std::variant<std::string, double, long long, bool>;
  std::vector<std::pair<std::string, Value>> fields;

  void add(std::string key, std::string v) { fields.emplace_back(std::move(key), std::move(v)); }
  void add(std::string key, std::string_view v) { add(std::move(key), std::string(v)); }
  void add(std::string key, const char* v) { add(std::move(key), std::string(v)); }
  void add(std::string key, double v) { fields.emplace_back(std::move(key), v); }
  void add(std::string key, long long v) { fields.emplace_back(std::move(key), v); }
  void add(std::string key, int v) { add(std::move(key), static_cast<long long>(v)); }
  void add(std::string key, std::size_t v) { add(std::move(key), static_cast<long long>(v)); }
  void add(std::string key, bool v) { fields.emplace_back(std::move(key), v); }
};

// Numbers are printed with %.12g; negative zero is normalized to "0" and
// non-finite values are rejected so every emitted row parses back cleanly.
std::string format_sig(double v);

std::string json_line(const Record& r);
std::string csv_header(const Record& r);
std::string csv_row(const Record& r);

enum class OutputFormat { JsonLines, Csv };

// Streams the whole record set. CSV demands a uniform field list across
// records (header comes from the first row); JSON lines have no such
// constraint, but every builder below emits uniform rows anyway.
void write_records(std::ostream& os, const std::vector<Record>& records, OutputFormat format);

std::vector<Record> records_from_run(const ProtocolRun& run);
std::vector<Record> records_from_sweep(const SweepResult& sweep);
std::vector<Record> records_from_leakage(const LeakageReport& report);
std::vector<Record> records_from_filter(const FilterRun& run);
std::vector<Record> records_from_feasibility(const FeasibilityResult& result);
// Side-by-side resource/fidelity table, one row per run.
std::vector<Record> records_from_compare(const std::vector<ProtocolRun>& runs);

}  // namespace qsplit
