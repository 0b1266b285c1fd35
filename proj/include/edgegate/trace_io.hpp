#pragma once

// Trace serialization. Both CSV and JSON renderings format every floating-
// point value through format_double ("%.9g"), so the two formats carry
// numerically identical data and repeated runs are byte-identical.

#include <cstdint>
#include <string>
#include <vector>

#include "edgegate/runner.hpp"

namespace edgegate {

inline constexpr const char* kToolName = "edgegate";
inline constexpr const char* kToolVersion = "0.1.0";

std::string format_double(double v);

// Stable column order; freezing it is part of the output contract.
extern const std::vector<std::string> kTraceColumns;

std::string trace_to_csv(const std::vector<StepRecord>& records);
std::string trace_to_json(const std::vector<StepRecord>& records);

std::string summary_to_json(const RunSummary& summary,
                            const std::vector<std::string>& arm_names);
std::string comparison_to_csv(const Comparison& cmp);

// FNV-1a 64-bit over raw bytes, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

// Run manifest: tool version, scenario config hash, seed, and step count.
std::string manifest_json(const std::string& config_text, std::uint64_t seed,
                          int steps, const std::string& policy);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace edgegate
