// io.hpp
// JSON file formats: fiducial files (input/output of `search`, input of
// `verify`, `orbit`, `report`) and verification reports. Layout is
// documented in docs/file-format.md.

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sicpovm/linalg.hpp"
#include "sicpovm/simplex.hpp"
#include "sicpovm/verify.hpp"

namespace sicpovm {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kFiducialFormat = "sicpovm-fiducial";
inline constexpr const char* kReportFormat = "sicpovm-report";
inline constexpr int kFormatVersion = 1;
inline constexpr double kLoadNormTolerance = 1e-9;

/// Malformed or invariant-violating file content.
class DataFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FiducialMetadata {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> restarts;
  std::optional<double> loss;
  std::optional<bool> converged;
  std::optional<std::size_t> restart_index;
  std::optional<std::size_t> iterations;
  std::string tool_version = kToolVersion;
  std::optional<std::string> timestamp;
};

struct FiducialFile {
  StateVector fiducial;
  FiducialMetadata metadata;

  std::size_t dim() const { return fiducial.dim(); }
};

/// Multiplies by a global phase so the first component with magnitude
/// above 1e-12 is real and nonnegative.
inline StateVector gauge_fixed(const StateVector& psi) {
  for (std::size_t k = 0; k < psi.dim(); ++k) {
    if (std::abs(psi[k]) > 1e-12) {
      const auto rotated = psi.with_phase(-std::arg(psi[k]));
      std::vector<Complex> z(rotated.entries().begin(), rotated.entries().end());
      z[k] = std::abs(psi[k]);  // exactly real, not just up to rounding
      return StateVector::from_entries(std::move(z));
    }
  }
  return psi;
}

inline nlohmann::ordered_json to_json(const FiducialFile& f) {
  nlohmann::ordered_json j;
  j["format"] = kFiducialFormat;
  j["version"] = kFormatVersion;
  j["dim"] = f.dim();
  j["fiducial"] = gauge_fixed(f.fiducial).params();
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  const auto& m = f.metadata;
  if (m.seed) meta["seed"] = *m.seed;
  if (m.restarts) meta["restarts"] = *m.restarts;
  if (m.loss) meta["loss"] = *m.loss;
  if (m.converged) meta["converged"] = *m.converged;
  if (m.restart_index) meta["restart_index"] = *m.restart_index;
  if (m.iterations) meta["iterations"] = *m.iterations;
  meta["tool_version"] = m.tool_version;
  if (m.timestamp) meta["timestamp"] = *m.timestamp;
  j["metadata"] = std::move(meta);
  return j;
}

namespace detail {

template <class T>
T field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) throw DataFormatError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DataFormatError(std::string("field '") + name + "': " + e.what());
  }
}

template <class T>
std::optional<T> optional_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) return std::nullopt;
  return field<T>(j, name);
}

inline nlohmann::json parse(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() carries the line and column of the offending token.
    throw DataFormatError(e.what());
  }
}

}  // namespace detail

inline FiducialFile fiducial_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataFormatError("top level: expected an object");
  if (detail::field<std::string>(j, "format") != kFiducialFormat) {
    throw DataFormatError(std::string("field 'format': expected \"") + kFiducialFormat + "\"");
  }
  if (detail::field<int>(j, "version") != kFormatVersion) {
    throw DataFormatError("field 'version': unsupported version");
  }
  const auto dim = detail::field<std::int64_t>(j, "dim");
  if (dim < 1) throw DataFormatError("field 'dim': must be >= 1");
  const auto params = detail::field<std::vector<double>>(j, "fiducial");
  if (params.size() != 2 * static_cast<std::size_t>(dim)) {
    throw DataFormatError("field 'fiducial': expected " + std::to_string(2 * dim) +
                          " reals (re/im interleaved), got " + std::to_string(params.size()));
  }
  double n2 = 0.0;
  for (double x : params) {
    if (!std::isfinite(x)) throw DataFormatError("field 'fiducial': non-finite entry");
    n2 += x * x;
  }
  if (std::abs(std::sqrt(n2) - 1.0) > kLoadNormTolerance) {
    throw DataFormatError("field 'fiducial': vector norm " + std::to_string(std::sqrt(n2)) +
                          " is not 1");
  }

  FiducialFile f{StateVector::from_params(params), {}};
  if (j.contains("metadata")) {
    const auto& m = j.at("metadata");
    if (!m.is_object()) throw DataFormatError("field 'metadata': expected an object");
    f.metadata.seed = detail::optional_field<std::uint64_t>(m, "seed");
    f.metadata.restarts = detail::optional_field<std::size_t>(m, "restarts");
    f.metadata.loss = detail::optional_field<double>(m, "loss");
    f.metadata.converged = detail::optional_field<bool>(m, "converged");
    f.metadata.restart_index = detail::optional_field<std::size_t>(m, "restart_index");
    f.metadata.iterations = detail::optional_field<std::size_t>(m, "iterations");
    f.metadata.tool_version =
        detail::optional_field<std::string>(m, "tool_version").value_or(std::string{});
    f.metadata.timestamp = detail::optional_field<std::string>(m, "timestamp");
  }
  return f;
}

inline FiducialFile parse_fiducial(const std::string& text) {
  return fiducial_from_json(detail::parse(text));
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

inline FiducialFile load_fiducial(const std::string& path) {
  try {
    return parse_fiducial(read_text(path));
  } catch (const DataFormatError& e) {
    throw DataFormatError(path + ": " + e.what());
  }
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

// Reports ----------------------------------------------------------------

inline nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["dim"] = r.dim;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["equiangularity_residual"] = r.equiangularity_residual;
  j["identity_residual"] = r.identity_residual;
  j["completeness_rank"] = r.completeness_rank;
  j["frame_potential"] = r.frame_potential;
  j["max_overlap_ij"] = {
      {"i", r.max_overlap_ij.i}, {"j", r.max_overlap_ij.j}, {"overlap", r.max_overlap_ij.overlap}};
  return j;
}

inline nlohmann::ordered_json to_json(const SimplexReport& s) {
  nlohmann::ordered_json j;
  j["min_edge_sq"] = s.min_edge_sq;
  j["max_edge_sq"] = s.max_edge_sq;
  j["mean_edge_sq"] = s.mean_edge_sq;
  j["expected_edge_sq"] = s.expected_edge_sq;
  j["regularity_tolerance"] = s.regularity_tolerance;
  j["regular"] = s.regular;
  j["outsphere_radius"] = s.outsphere_radius;
  j["max_outsphere_deviation"] = s.max_outsphere_deviation;
  j["outsphere_tolerance"] = s.outsphere_tolerance;
  j["on_outsphere"] = s.on_outsphere;
  return j;
}

struct ReportFile {
  VerificationReport verification;
  SimplexReport simplex;

  friend bool operator==(const ReportFile&, const ReportFile&) = default;
};

inline nlohmann::ordered_json to_json(const ReportFile& r) {
  nlohmann::ordered_json j;
  j["format"] = kReportFormat;
  j["version"] = kFormatVersion;
  j["verification"] = to_json(r.verification);
  j["frame_potential_sic"] = sic_frame_potential(r.verification.dim);
  j["simplex"] = to_json(r.simplex);
  return j;
}

inline ReportFile report_from_json(const nlohmann::json& j) {
  using detail::field;
  if (field<std::string>(j, "format") != kReportFormat) {
    throw DataFormatError(std::string("field 'format': expected \"") + kReportFormat + "\"");
  }
  ReportFile r;
  const auto& v = j.at("verification");
  r.verification.dim = field<std::size_t>(v, "dim");
  r.verification.tolerance = field<double>(v, "tolerance");
  r.verification.pass = field<bool>(v, "pass");
  r.verification.equiangularity_residual = field<double>(v, "equiangularity_residual");
  r.verification.identity_residual = field<double>(v, "identity_residual");
  r.verification.completeness_rank = field<std::size_t>(v, "completeness_rank");
  r.verification.frame_potential = field<double>(v, "frame_potential");
  const auto& w = v.at("max_overlap_ij");
  r.verification.max_overlap_ij = {field<std::size_t>(w, "i"), field<std::size_t>(w, "j"),
                                   field<double>(w, "overlap")};
  const auto& s = j.at("simplex");
  r.simplex.dim = r.verification.dim;
  r.simplex.min_edge_sq = field<double>(s, "min_edge_sq");
  r.simplex.max_edge_sq = field<double>(s, "max_edge_sq");
  r.simplex.mean_edge_sq = field<double>(s, "mean_edge_sq");
  r.simplex.expected_edge_sq = field<double>(s, "expected_edge_sq");
  r.simplex.regularity_tolerance = field<double>(s, "regularity_tolerance");
  r.simplex.regular = field<bool>(s, "regular");
  r.simplex.outsphere_radius = field<double>(s, "outsphere_radius");
  r.simplex.max_outsphere_deviation = field<double>(s, "max_outsphere_deviation");
  r.simplex.outsphere_tolerance = field<double>(s, "outsphere_tolerance");
  r.simplex.on_outsphere = field<bool>(s, "on_outsphere");
  return r;
}

inline ReportFile parse_report(const std::string& text) {
  try {
    return report_from_json(detail::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw DataFormatError(e.what());
  }
}

}  // namespace sicpovm
