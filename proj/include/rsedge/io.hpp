#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "rsedge/edge_stats.hpp"

namespace rsedge {

/// Shortest round-trip decimal form, locale-independent.
std::string format_double(double v);

/// One value per line under a "value" header; LF endings.
void write_batch_csv(const std::filesystem::path& file, const EdgeSampleBatch& batch);

/// JSON sidecar carrying n, c, ensemble_tag and seed record.
void write_batch_sidecar(const std::filesystem::path& file, const EdgeSampleBatch& batch);

EdgeSampleBatch read_batch_csv(const std::filesystem::path& csv_file,
                               const std::filesystem::path& sidecar_file);

/// Row-major matrix CSV with named columns (replica index first).
void write_matrix_csv(const std::filesystem::path& file,
                      const std::vector<std::string>& column_names,
                      const std::vector<std::vector<double>>& rows);

} // namespace rsedge
