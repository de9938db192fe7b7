#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "peakwave/continuation.hpp"

namespace peakwave {

struct RunManifest {
  double r = 0.0;
  int k = 0;
  int modes = 0;  // largest grid reached along the branch
  double tol_residual = 0.0;
  double seed_eps = 0.0;
  double height_floor = 0.0;
  std::string version;
  std::string timestamp;
  std::string termination;
  int format_version = 0;
};

RunManifest make_manifest(const Branch& branch, const ContinuationConfig& cfg);

struct StoreError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VersionMismatch : StoreError {
  using StoreError::StoreError;
};
struct CorruptRecord : StoreError {
  CorruptRecord(const std::string& what, int line_number);
  int line = 0;
};
struct ResidualMismatch : StoreError {
  using StoreError::StoreError;
};

/// Writes a branch as JSONL: the manifest on the first line, then one point
/// per line. The write is atomic (temp file + rename). An existing path is
/// refused unless overwrite is set.
void save_branch(const Branch& branch, const RunManifest& manifest, const std::string& path,
                 bool overwrite = false);

/// Reads a branch back, re-validating the stored residuals of three points by
/// recomputation. Throws VersionMismatch, CorruptRecord, or ResidualMismatch.
std::pair<Branch, RunManifest> load_branch(const std::string& path);

/// Converts a branch into per-point profile CSVs (x,phi) under out_dir,
/// optionally with coefficient CSVs (k,c_k).
void export_profiles(const Branch& branch, const std::string& out_dir, bool with_coeffs = false);

/// Atomic file write helper shared by all output paths.
void write_file_atomic(const std::string& path, const std::string& content,
                       bool overwrite = true);

}  // namespace peakwave
