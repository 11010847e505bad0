#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lfq/analytics.hpp"
#include "lfq/simulation.hpp"
#include "lfq/transforms.hpp"
#include "lfq/verification.hpp"

namespace lfq {

/// Provenance stamped on every output: config hash and master seed.
struct OutputHeader {
  std::string config_hash;
  std::uint64_t seed = 0;
};

/// "# config_hash=<hex> seed=<n>".
std::string header_line(const OutputHeader& header);

/// Round-trippable decimal form of a double.
std::string format_double(double x);

/// Columns: time, kind, size, W_before, W_after.
std::string events_csv(const OutputHeader& header, std::span<const PathEvent> events);
/// Single column named `column`.
std::string samples_csv(const OutputHeader& header, const std::string& column,
                        std::span<const double> values);
/// Columns: <axis>, value, se.
std::string curve_csv(const OutputHeader& header, const std::string& axis,
                      std::span<const double> grid, std::span<const double> values,
                      std::span<const double> se);
std::string curve_csv(const OutputHeader& header, const LstCurve& curve);
/// Columns: W_before, W_after.
std::string pairs_csv(const OutputHeader& header, std::span<const BreakdownPair> pairs);
/// Reads breakdown pairs written by pairs_csv (header and comment lines skipped).
std::vector<BreakdownPair> read_pairs_csv(const std::filesystem::path& path);

/// JSON object with keys config_hash, seed, p, lambda_R, lambda_V, mean,
/// variance, busy_mean and lst = [{theta, value, se}, ...].
std::string summary_json(const OutputHeader& header, const SteadyStateSummary& summary,
                         const WorkloadMoments* moments = nullptr);

/// JSON object {config_hash, seed, budget, label, failures, reports: [...]}.
/// Runtimes are left out unless asked for, so reruns compare byte for byte.
std::string reports_json(const OutputHeader& header, const std::string& label, Budget budget,
                         std::span<const ComparisonReport> reports, bool include_runtime);

/// Writes text to a file, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lfq
