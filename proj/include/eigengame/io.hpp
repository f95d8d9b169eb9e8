#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "eigengame/graph.hpp"
#include "eigengame/mat.hpp"
#include "eigengame/metrics.hpp"

namespace eigengame {

/// Writes a matrix, format chosen by extension: ".csv" emits one
/// comma-separated row per line with 17 significant digits; anything else
/// uses the binary layout "EGM1" magic, row and column counts as 64-bit
/// little-endian unsigned, then row-major IEEE-754 binary64 little-endian.
void save_matrix(const std::filesystem::path& path, const Mat& m);

/// Reads either format back (extension-dispatched like save_matrix).
/// Binary round-trips are exact; CSV is good to the last digit printed.
/// Throws ParseError with a byte or line position on malformed input.
Mat load_matrix(const std::filesystem::path& path);

/// Text edge list: one "out in" pair of non-negative integers per line,
/// '#' starts a comment. The node count is 1 + max id unless an earlier
/// "# nodes=N" directive pins it.
EdgeList load_edges(const std::filesystem::path& path);

/// One integer cluster label per line, row index = sample id.
std::vector<int> load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const Labeling& labels);

/// Trace CSV with header iteration,wall_ms,streak,subspace_distance,
/// u_1,...,u_k,skipped_players. Metric columns are "nan" when the run had
/// no ground truth.
void save_trace_csv(const std::filesystem::path& path, const MetricTrace& trace);

/// Ordered key=value pairs (manifests and config files).
using KvPairs = std::vector<std::pair<std::string, std::string>>;

KvPairs load_kv(const std::filesystem::path& path);
void save_kv(const std::filesystem::path& path, const KvPairs& kv);

/// FNV-1a 64-bit digest of a file's bytes, for manifest input fingerprints.
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

std::string iso8601_utc_now();

/// Shortest decimal form that round-trips a double exactly.
std::string format_double(double x);

}  // namespace eigengame
