#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ustat/basis.hpp"
#include "ustat/bounds.hpp"
#include "ustat/montecarlo.hpp"
#include "ustat/rng.hpp"
#include "ustat/tensor.hpp"
#include "ustat/version.hpp"

namespace ustat {

using nlohmann::json;

// All numeric CSV fields go through this: decimal, 17 significant digits,
// enough to round-trip any double bit-exactly.
inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json tensor_to_json(const CoefficientTensor& tensor) {
  json entries = json::array();
  for (const auto& [index, value] : tensor.entries()) {
    json e;
    e["index"] = index;
    e["value"] = value;
    entries.push_back(std::move(e));
  }
  json out;
  out["order"] = tensor.order();
  out["entries"] = std::move(entries);
  return out;
}

inline CoefficientTensor tensor_from_json(const json& j) {
  if (!j.contains("order")) throw std::invalid_argument("tensor json: missing key 'order'");
  if (!j.contains("entries")) throw std::invalid_argument("tensor json: missing key 'entries'");
  CoefficientTensor tensor(j.at("order").get<std::size_t>());
  for (const auto& e : j.at("entries")) {
    if (!e.contains("index") || !e.contains("value"))
      throw std::invalid_argument("tensor json: entry needs 'index' and 'value'");
    tensor.set(e.at("index").get<std::vector<std::uint32_t>>(), e.at("value").get<double>());
  }
  return tensor;
}

// Stable identity string for a tensor (order + entries), used in artifact
// metadata.
inline std::string tensor_id(const CoefficientTensor& tensor) {
  std::ostringstream os;
  os << "m" << tensor.order();
  for (const auto& [index, value] : tensor.entries()) {
    os << "|";
    for (std::size_t k = 0; k < index.size(); ++k) os << (k ? "," : "") << index[k];
    os << ":" << format_g17(value);
  }
  return "t" + hash_hex(fnv1a64(os.str()));
}

inline json basis_to_json(const OrthonormalBasis& basis) {
  json out;
  if (basis.is_trig()) {
    out["kind"] = "trig";
  } else {
    out["kind"] = "finite";
    const auto* table = basis.value_table();
    out["values"] = *table;
    out["probabilities"] = std::get<FiniteAlphabet>(basis.measure()).probabilities;
  }
  out["bound"] = basis.bound();
  return out;
}

inline json trace_to_json(const std::vector<TraceEntry>& trace) {
  json arr = json::array();
  for (const auto& t : trace) {
    json e;
    e["name"] = t.name;
    e["value"] = t.value;
    e["source"] = t.source;
    arr.push_back(std::move(e));
  }
  return arr;
}

inline json certificate_to_json(const BoundCertificate& cert) {
  json out;
  out["kind"] = BoundCertificate::kind_name(cert.kind);
  out["m"] = cert.m;
  out["basis_bound"] = cert.basis_bound;
  out["C1"] = cert.c1_constant;
  switch (cert.kind) {
    case BoundCertificate::Kind::ConditionA:
      out["B_f"] = cert.b_f;
      out["c_tilde"] = cert.c_tilde;
      out["sum_abs_f"] = cert.c_norm;
      out["phi_effective"] = cert.phi_sum_effective;
      break;
    case BoundCertificate::Kind::ConditionB:
      out["B_f"] = cert.b_f;
      out["epsilon"] = cert.epsilon;
      out["c_norm"] = cert.c_norm;
      out["phi_effective"] = cert.phi_sum_effective;
      out["x0"] = cert.x0;
      break;
    case BoundCertificate::Kind::Dedecker:
      out["n"] = cert.n;
      out["phi_values"] = cert.phi_values;
      break;
    case BoundCertificate::Kind::Hoeffding1963:
      out["n"] = cert.n;
      out["range_a"] = cert.range_a;
      out["range_b"] = cert.range_b;
      break;
  }
  out["trace"] = trace_to_json(cert.trace);
  return out;
}

// CSV with columns x,count,estimate,ci_upper[,bound]; every number printed
// with 17 significant digits.
inline std::string curve_to_csv(const TailCurve& curve) {
  std::ostringstream os;
  const bool with_bound = !curve.bound.empty();
  os << "x,count,estimate,ci_upper";
  if (with_bound) os << ",bound";
  os << "\n";
  for (std::size_t i = 0; i < curve.x_grid.size(); ++i) {
    os << format_g17(curve.x_grid[i]) << "," << curve.counts[i] << ","
       << format_g17(curve.estimates[i]) << "," << format_g17(curve.ci_upper[i]);
    if (with_bound) os << "," << format_g17(curve.bound[i]);
    os << "\n";
  }
  return os.str();
}

inline json curve_meta_json(const TailCurve& curve) {
  json out;
  out["stat_kind"] = stat_kind_name(curve.stat_kind);
  out["process_id"] = curve.process_id;
  out["tensor_id"] = curve.tensor_id;
  out["n"] = curve.n;
  out["reps"] = curve.reps;
  out["master_seed"] = curve.master_seed;
  return out;
}

inline json envelope_report_to_json(const EnvelopeReport& report) {
  json out;
  out["pass"] = report.pass;
  out["violations"] = report.violations;
  out["violation_indices"] = report.violation_indices;
  out["max_estimate_over_bound"] = report.max_estimate_over_bound;
  out["grid_points"] = report.grid_points;
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

// Provenance hash embedded in every artifact: FNV-1a of the exact config
// bytes that produced it.
inline std::string config_hash(const std::string& config_text) {
  return hash_hex(fnv1a64(config_text));
}

inline json artifact_header(const std::string& cfg_hash, std::uint64_t master_seed) {
  json out;
  out["config_hash"] = cfg_hash;
  out["master_seed"] = master_seed;
  out["version"] = kVersion;
  return out;
}

}  // namespace ustat
