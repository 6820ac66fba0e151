#pragma once

#include "nc/experiments.hpp"
#include "nc/imaging.hpp"
#include "nc/solver.hpp"
#include "nc/types.hpp"

#include <string>
#include <vector>

namespace nc::io {

// All writers emit byte-deterministic output: doubles at full precision,
// no timestamps outside the run manifest.

/// Rows of "index,re,im" with a header line.
void write_vector_csv(const std::string& path, const ComplexVector& v);
ComplexVector read_vector_csv(const std::string& path);

/// Rows of "grid_index,re,im" with a header line.
void write_scene_csv(const std::string& path, const SourceScene& scene);
SourceScene read_scene_csv(const std::string& path);

/// Image grid as plain comma-separated rows; rows are cross-range
/// indices, columns are range indices.
void write_image_csv(const std::string& path, const RealMatrix& image);

/// JSON document with exactly the ImagingConfig field names in SI units.
/// Rejects missing, extra, or wrongly typed fields, naming the field.
ImagingConfig read_imaging_config(const std::string& path);
void write_imaging_config(const std::string& path, const ImagingConfig& config);

/// Header row of SNR values, first column of M values.
void write_phase_diagram_csv(const std::string& path, const PhaseDiagram& pd);

/// Rows of "c0,phantom_rate,chosen".
void write_calibration_csv(const std::string& path,
                           const CalibrationResult& calibration);

/// Scalars, the extracted support and run diagnostics of a solve;
/// true_support is included when provided.
void write_recovery_json(const std::string& path, const RecoveryResult& result,
                         const std::vector<Index>* true_support = nullptr);

void write_kkt_json(const std::string& path, const KktReport& report);

struct RunManifest {
  std::string config_path;
  std::string command;
  std::uint64_t master_seed = 0;
  std::string tool_version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> output_paths;
};

/// Written last by commands: its presence signals a completed run.
void write_manifest(const std::string& path, const RunManifest& manifest);

/// Current UTC time as an ISO-8601 string (manifest timestamps only).
std::string now_utc_iso8601();

}  // namespace nc::io
