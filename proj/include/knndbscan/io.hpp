#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "knndbscan/common.hpp"
#include "knndbscan/pipeline.hpp"
#include "knndbscan/point_set.hpp"

namespace knndbscan::io {

// Point file: a header line "N d", then N rows of d whitespace-separated decimal reals.
// Label file: N lines holding one integer each (-1 marks noise).

/// Throws IoError when the file cannot be opened and InvalidData when it is malformed.
PointSet read_points(const std::filesystem::path& path);
/// Writes coordinates with 17 significant digits, so reading back is lossless.
void write_points(const std::filesystem::path& path, const PointSet& points);

std::vector<Index> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, std::span<const Index> labels);

std::string format_points(const PointSet& points);
std::string format_labels(std::span<const Index> labels);

/// Metrics record of one clustering run.
nlohmann::json metrics_record(const ClusterResult& result, const ClusterOptions& options,
                              std::size_t k, bool include_trace);

nlohmann::json timings_record(const PhaseTimings& t);

}  // namespace knndbscan::io
