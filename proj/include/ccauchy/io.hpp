// Copyright 2026 The ccauchy Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Wire formats. Distributions: {"p": int, "tau": [[re, im], ...],
// "sigma": [[[re, im], ...], ...]}. Maps: {"p": int, "g": [[re, im], ...]}
// with g flattened row-major. Emitted JSON is canonical: keys sorted,
// numbers printed with 17 significant digits so doubles survive a
// round trip bit for bit. Samples travel as CSV with 2p real columns
// Re(z_1), Im(z_1), ..., Re(z_p), Im(z_p).

#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccauchy/cauchy.hpp"
#include "ccauchy/errors.hpp"
#include "ccauchy/linalg.hpp"
#include "ccauchy/mobius.hpp"
#include "ccauchy/stats.hpp"

namespace ccauchy {

/// Shortest form that still reparses to the same double: 17 significant
/// digits.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline std::string pair_json(cplx z) {
  return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

inline cplx pair_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidArgument("expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

/// Canonical JSON text for a distribution (keys sorted: p, sigma, tau).
inline std::string dist_to_json(const ComplexCauchy& d) {
  const std::size_t p = d.p();
  std::string out = "{\"p\":" + std::to_string(p) + ",\"sigma\":[";
  for (std::size_t i = 0; i < p; ++i) {
    out += (i ? ",[" : "[");
    for (std::size_t j = 0; j < p; ++j) {
      if (j) out += ",";
      out += detail::pair_json(d.sigma().matrix()(i, j));
    }
    out += "]";
  }
  out += "],\"tau\":[";
  for (std::size_t i = 0; i < p; ++i) {
    if (i) out += ",";
    out += detail::pair_json(d.tau()[i]);
  }
  out += "]}";
  return out;
}

inline ComplexCauchy dist_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("tau") || !j.contains("sigma")) {
    throw InvalidArgument("distribution JSON must contain p, tau and sigma");
  }
  const auto p = j.at("p").get<std::int64_t>();
  if (p < 1) throw InvalidArgument("distribution JSON: p must be at least 1");
  const std::size_t up = static_cast<std::size_t>(p);
  const nlohmann::json& jt = j.at("tau");
  if (!jt.is_array() || jt.size() != up) throw DimensionMismatch("distribution JSON: tau length differs from p");
  CVec tau(up);
  for (std::size_t i = 0; i < up; ++i) tau[i] = detail::pair_from_json(jt[i]);
  const nlohmann::json& js = j.at("sigma");
  if (!js.is_array() || js.size() != up) throw DimensionMismatch("distribution JSON: sigma must be p rows");
  CMat sigma(up, up);
  for (std::size_t i = 0; i < up; ++i) {
    if (!js[i].is_array() || js[i].size() != up) {
      throw DimensionMismatch("distribution JSON: sigma row " + std::to_string(i) + " must have p entries");
    }
    for (std::size_t k = 0; k < up; ++k) sigma(i, k) = detail::pair_from_json(js[i][k]);
  }
  return ComplexCauchy(std::move(tau), HermitianPD(std::move(sigma)));
}

inline ComplexCauchy dist_from_json_text(const std::string& text) {
  return dist_from_json(nlohmann::json::parse(text));
}

/// Canonical JSON text for a map (keys sorted: g, p); g is the stored
/// |det| = 1 representative, row-major.
inline std::string map_to_json(const MobiusMap& m) {
  const std::size_t n = m.p() + 1;
  std::string out = "{\"g\":[";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i + j) out += ",";
      out += detail::pair_json(m.matrix()(i, j));
    }
  out += "],\"p\":" + std::to_string(m.p()) + "}";
  return out;
}

inline MobiusMap map_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("g")) {
    throw InvalidArgument("map JSON must contain p and g");
  }
  const auto p = j.at("p").get<std::int64_t>();
  if (p < 1) throw InvalidArgument("map JSON: p must be at least 1");
  const std::size_t n = static_cast<std::size_t>(p) + 1;
  const nlohmann::json& jg = j.at("g");
  if (!jg.is_array() || jg.size() != n * n) {
    throw DimensionMismatch("map JSON: g must have (p+1)^2 entries");
  }
  CMat g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) g(i, k) = detail::pair_from_json(jg[i * n + k]);
  return MobiusMap(std::move(g));
}

inline MobiusMap map_from_json_text(const std::string& text) {
  return map_from_json(nlohmann::json::parse(text));
}

/// Canonical JSON text for the real t_2 embedding (keys sorted:
/// dim, dof, eta, w).
inline std::string t2_to_json(const RealT2& rt) {
  const std::size_t n = rt.dim();
  std::string out = "{\"dim\":" + std::to_string(n) + ",\"dof\":2,\"eta\":[";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ",";
    out += format_double(rt.eta()[i]);
  }
  out += "],\"w\":[";
  for (std::size_t i = 0; i < n; ++i) {
    out += (i ? ",[" : "[");
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ",";
      out += format_double(rt.w()[i * n + j]);
    }
    out += "]";
  }
  out += "]}";
  return out;
}

/// One JSON line per report.
inline std::string gof_report_to_json(const GofReport& r) {
  std::string out = "{\"alpha\":" + format_double(r.alpha);
  out += ",\"n1\":" + std::to_string(r.n1);
  out += ",\"n2\":" + std::to_string(r.n2);
  out += ",\"p_value\":" + format_double(r.p_value);
  out += ",\"passed\":" + std::string(r.passed ? "true" : "false");
  out += ",\"seed\":" + std::to_string(r.seed);
  out += ",\"statistic\":" + format_double(r.statistic);
  out += ",\"test\":\"" + r.test_name + "\"}";
  return out;
}

inline std::string samples_csv_header(std::size_t p) {
  std::string out;
  for (std::size_t j = 1; j <= p; ++j) {
    if (j > 1) out += ",";
    out += "re_z" + std::to_string(j) + ",im_z" + std::to_string(j);
  }
  return out;
}

inline void write_samples_csv(std::ostream& os, const std::vector<CVec>& samples, std::size_t p) {
  os << samples_csv_header(p) << "\n";
  for (const CVec& z : samples) {
    for (std::size_t j = 0; j < p; ++j) {
      if (j) os << ",";
      os << format_double(z[j].real()) << "," << format_double(z[j].imag());
    }
    os << "\n";
  }
}

/// Reads rows of 2p reals (the sample CSV layout); a leading header row is
/// skipped when its first field is not numeric.
inline std::vector<CVec> read_points_csv(std::istream& is, std::size_t p) {
  std::vector<CVec> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string field;
    std::vector<double> vals;
    bool numeric = true;
    while (std::getline(row, field, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used == 0) numeric = false;
        vals.push_back(v);
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw InvalidArgument("points CSV: non-numeric row");
    }
    first = false;
    if (vals.size() != 2 * p) {
      throw DimensionMismatch("points CSV: expected " + std::to_string(2 * p) +
                              " columns, got " + std::to_string(vals.size()));
    }
    CVec z(p);
    for (std::size_t j = 0; j < p; ++j) z[j] = cplx(vals[2 * j], vals[2 * j + 1]);
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace ccauchy
