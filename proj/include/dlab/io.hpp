#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "dlab/detail/error.hpp"
#include "dlab/embedding.hpp"
#include "dlab/hspace.hpp"
#include "dlab/sampling.hpp"
#include "dlab/tauberian.hpp"
#include "dlab/weights.hpp"

namespace dlab::io {

using json = nlohmann::ordered_json;

/// Shortest decimal that is at most 17 significant digits, '.' separator,
/// independent of the global locale.
inline std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (r.ec != std::errc{}) throw Error("format_double: conversion failed");
  return {buf, r.ptr};
}

/// Writes `content` to a sibling temporary file and renames it over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path() && !path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) { row_strings(header); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    row_strings(cells);
  }
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  [[nodiscard]] std::string str() const { return out_.str(); }
  void save(const std::filesystem::path& p) const { write_atomic(p, str()); }

 private:
  std::ostringstream out_;
};

inline json to_json(const DirichletPolynomial& F) {
  json re = json::array();
  json im = json::array();
  for (std::uint64_t n = 1; n <= F.limit(); ++n) {
    re.push_back(F[n].real());
    im.push_back(F[n].imag());
  }
  return {{"N", F.limit()}, {"re", re}, {"im", im}};
}

inline DirichletPolynomial polynomial_from_json(const json& j) {
  const auto N = j.at("N").get<std::uint64_t>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != N || im.size() != N) throw InvalidArgument("polynomial JSON: re/im length must equal N");
  DirichletPolynomial F(N);
  for (std::uint64_t n = 1; n <= N; ++n) F.set(n, {re[n - 1].get<double>(), im[n - 1].get<double>()});
  return F;
}

inline json to_json(const AsymptoticFit& f) {
  return {{"alpha_hat", f.alpha_hat}, {"C_hat", f.C_hat}, {"residual_rms", f.residual_rms}, {"grid", f.grid}};
}

inline json to_json(const SingularityFit& f) {
  return {{"sigma0", f.sigma0},
          {"beta_hat", f.beta_hat},
          {"g_at_sigma0", f.g_at_sigma0},
          {"fit_window", {f.fit_window.first, f.fit_window.second}},
          {"residual_rms", f.residual_rms},
          {"log_singularity", f.log_singularity},
          {"power_rms", f.power_rms},
          {"log_rms", f.log_rms}};
}

inline json to_json(const DensityReport& d) {
  json j{{"window_lengths", d.window_lengths}, {"inf_counts", d.inf_counts}, {"error_bars", d.error_bars}};
  j["extrapolated"] = d.extrapolated ? json(*d.extrapolated) : json(nullptr);
  return j;
}

inline json to_json(const EmbeddingEstimate& e) {
  return {{"constant", e.constant},
          {"argmax", e.argmax},
          {"family_size", e.family_size},
          {"quadrature_error", e.quadrature_error},
          {"ratios", e.ratios}};
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace dlab::io
