#include "peakwave/branch_store.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "peakwave/version.hpp"

namespace peakwave {
namespace {

using nlohmann::json;

json manifest_to_json(const RunManifest& m) {
  return json{{"type", "manifest"},
              {"format_version", m.format_version},
              {"version", m.version},
              {"timestamp", m.timestamp},
              {"r", m.r},
              {"k", m.k},
              {"modes", m.modes},
              {"tol_residual", m.tol_residual},
              {"seed_eps", m.seed_eps},
              {"height_floor", m.height_floor},
              {"termination", m.termination}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.format_version = j.at("format_version").get<int>();
  m.version = j.at("version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.r = j.at("r").get<double>();
  m.k = j.at("k").get<int>();
  m.modes = j.at("modes").get<int>();
  m.tol_residual = j.at("tol_residual").get<double>();
  m.seed_eps = j.at("seed_eps").get<double>();
  m.height_floor = j.at("height_floor").get<double>();
  m.termination = j.at("termination").get<std::string>();
  return m;
}

json point_to_json(const BranchPoint& p) {
  const auto& c = p.solution.phi.cos_coeffs();
  json coeffs = json::array();
  for (int i = 0; i < c.size(); ++i) coeffs.push_back(c[i]);
  json out{{"s", p.s},
           {"mu", p.solution.mu},
           {"height", p.height},
           {"residual", p.solution.residual_norm},
           {"coeffs", std::move(coeffs)}};
  if (std::isfinite(p.alpha_fit)) {
    out["alpha_fit"] = p.alpha_fit;
  } else {
    out["alpha_fit"] = nullptr;
  }
  return out;
}

}  // namespace

CorruptRecord::CorruptRecord(const std::string& what, int line_number)
    : StoreError(what + " (line " + std::to_string(line_number) + ")"), line(line_number) {}

RunManifest make_manifest(const Branch& branch, const ContinuationConfig& cfg) {
  RunManifest m;
  m.r = branch.r;
  m.k = branch.k;
  m.modes = branch.points.empty() ? cfg.initial_modes : branch.points.back().solution.phi.modes();
  m.tol_residual = cfg.newton.tol_residual;
  m.seed_eps = cfg.seed_eps;
  m.height_floor = cfg.height_floor;
  m.version = kVersion;
  m.format_version = kBranchFormatVersion;
  m.termination = to_string(branch.termination);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    m.timestamp = epoch;
  } else {
    m.timestamp = std::to_string(static_cast<long long>(std::time(nullptr)));
  }
  return m;
}

void write_file_atomic(const std::string& path, const std::string& content, bool overwrite) {
  namespace fs = std::filesystem;
  if (!overwrite && fs::exists(path)) {
    throw StoreError("refusing to overwrite existing file " + path + " (pass --force)");
  }
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.good()) throw StoreError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw StoreError("atomic rename onto " + path + " failed: " + ec.message());
  }
}

void save_branch(const Branch& branch, const RunManifest& manifest, const std::string& path,
                 bool overwrite) {
  std::ostringstream out;
  out << manifest_to_json(manifest).dump() << "\n";
  for (const auto& p : branch.points) out << point_to_json(p).dump() << "\n";
  write_file_atomic(path, out.str(), overwrite);
}

std::pair<Branch, RunManifest> load_branch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StoreError("cannot open " + path);
  std::string line;
  int line_number = 0;

  if (!std::getline(in, line)) throw CorruptRecord("missing manifest line", 1);
  ++line_number;
  RunManifest manifest;
  try {
    const json j = json::parse(line);
    if (j.value("type", "") != "manifest") throw CorruptRecord("first line is not a manifest", 1);
    manifest = manifest_from_json(j);
  } catch (const json::exception& e) {
    throw CorruptRecord(std::string("manifest parse error: ") + e.what(), 1);
  }
  if (manifest.format_version != kBranchFormatVersion) {
    throw VersionMismatch("branch file format version " +
                          std::to_string(manifest.format_version) + ", expected " +
                          std::to_string(kBranchFormatVersion));
  }

  Branch branch;
  branch.r = manifest.r;
  branch.k = manifest.k;
  branch.termination = branch_termination_from_string(manifest.termination);

  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const auto& jc = j.at("coeffs");
      Eigen::VectorXd c(jc.size());
      for (size_t i = 0; i < jc.size(); ++i) c[static_cast<Eigen::Index>(i)] = jc[i].get<double>();
      const int modes = 2 * static_cast<int>(c.size());
      auto phi = PeriodicFunction::from_coeffs(modes, c);
      WaveSolution sol{std::move(phi), j.at("mu").get<double>(), manifest.k,
                       j.at("residual").get<double>(), 0.0};
      const auto [sq, mean] = square_dealiased(sol.phi);
      (void)sq;
      sol.b_constant = 0.5 * mean;
      const double alpha =
          j.at("alpha_fit").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                      : j.at("alpha_fit").get<double>();
      branch.points.push_back(
          {j.at("s").get<double>(), std::move(sol), j.at("height").get<double>(), alpha});
    } catch (const json::exception& e) {
      throw CorruptRecord(std::string("point parse error: ") + e.what(), line_number);
    } catch (const std::invalid_argument& e) {
      throw CorruptRecord(std::string("invalid point data: ") + e.what(), line_number);
    }
  }

  // Re-validate stored residuals on three deterministic probes.
  const auto n = branch.points.size();
  if (n > 0) {
    for (size_t idx : {size_t{0}, n / 2, n - 1}) {
      const auto& p = branch.points[idx];
      const double recomputed = residual(p.solution.phi, p.solution.mu, manifest.r).sup_norm();
      const double stored = p.solution.residual_norm;
      if (std::abs(recomputed - stored) > 1e-12 * std::max(1.0, std::abs(stored))) {
        throw ResidualMismatch("stored residual " + std::to_string(stored) + " at point " +
                               std::to_string(idx) + " recomputes to " +
                               std::to_string(recomputed));
      }
    }
  }
  return {std::move(branch), std::move(manifest)};
}

void export_profiles(const Branch& branch, const std::string& out_dir, bool with_coeffs) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  char name[64];
  for (size_t i = 0; i < branch.points.size(); ++i) {
    const auto& sol = branch.points[i].solution;
    const Eigen::VectorXd x = PeriodicFunction::grid(sol.phi.modes());
    std::ostringstream csv;
    csv.precision(17);
    csv << "x,phi\n";
    for (int j = 0; j < sol.phi.modes(); ++j) csv << x[j] << "," << sol.phi.values()[j] << "\n";
    std::snprintf(name, sizeof(name), "point_%04zu.csv", i);
    write_file_atomic((fs::path(out_dir) / name).string(), csv.str());
    if (with_coeffs) {
      std::ostringstream cc;
      cc.precision(17);
      cc << "k,c_k\n";
      const auto& c = sol.phi.cos_coeffs();
      for (int k = 1; k <= static_cast<int>(c.size()); ++k) cc << k << "," << c[k - 1] << "\n";
      std::snprintf(name, sizeof(name), "coeffs_%04zu.csv", i);
      write_file_atomic((fs::path(out_dir) / name).string(), cc.str());
    }
  }
}

}  // namespace peakwave
