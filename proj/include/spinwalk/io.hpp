#pragma once

// Deterministic serialization for the command-line tools: tables written as
// CSV or JSON with a fixed 12-significant-digit float format and rationals
// as "p/q" strings, plus the per-run manifest that echoes every resolved
// parameter so a run can be reproduced byte for byte.

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinwalk/rational.hpp"

namespace spinwalk::io {

inline constexpr const char* kArtifactName = "spinwalk";
inline constexpr const char* kArtifactVersion = "1.0.0";

// Fixed 12-significant-digit formatting; the single float format used in
// every emitted file, so reruns are byte-identical.
inline std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

// "p/q" (plain "p" when the denominator is 1).
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline std::string int_str(const Int& v) { return v.get_str(); }

// "a+bi" / "a-bi" with both parts in the fixed float format.
inline std::string complex12(const std::complex<double>& z) {
  const double im = z.imag();
  return fmt12(z.real()) + (std::signbit(im) ? "-" : "+") + fmt12(std::fabs(im)) + "i";
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::vector<std::string>& add_row() {
    rows.emplace_back();
    rows.back().reserve(header.size());
    return rows.back();
  }
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace detail

// Write `t` to `<dir>/<stem>.<format>`; returns the file name (no directory).
inline std::string write_table(const std::filesystem::path& dir,
                               const std::string& stem, const Table& t,
                               const std::string& format) {
  for (const auto& row : t.rows)
    if (row.size() != t.header.size())
      throw std::logic_error("table row width mismatch in " + stem);
  std::string name, text;
  if (format == "csv") {
    name = stem + ".csv";
    std::string out;
    for (std::size_t j = 0; j < t.header.size(); ++j) {
      if (j) out += ',';
      out += detail::csv_escape(t.header[j]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out += ',';
        out += detail::csv_escape(row[j]);
      }
      out += '\n';
    }
    text = std::move(out);
  } else if (format == "json") {
    name = stem + ".json";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t j = 0; j < row.size(); ++j) obj[t.header[j]] = row[j];
      arr.push_back(std::move(obj));
    }
    text = arr.dump(2) + "\n";
  } else {
    throw std::invalid_argument("unknown format: " + format);
  }
  detail::write_file(dir / name, text);
  return name;
}

// Write a JSON document to `<dir>/<stem>.json`; returns the file name.
inline std::string write_json_file(const std::filesystem::path& dir,
                                   const std::string& stem,
                                   const nlohmann::ordered_json& j) {
  const std::string name = stem + ".json";
  detail::write_file(dir / name, j.dump(2) + "\n");
  return name;
}

// Every run writes `<dir>/manifest_<command>.json` echoing the artifact
// version, the full resolved parameter set, and the files produced.
inline void write_manifest(const std::filesystem::path& dir,
                           const std::string& command,
                           const std::map<std::string, std::string>& params,
                           const std::vector<std::string>& outputs) {
  nlohmann::ordered_json m;
  m["artifact"] = kArtifactName;
  m["version"] = kArtifactVersion;
  m["command"] = command;
  nlohmann::ordered_json p;
  for (const auto& [k, v] : params) p[k] = v;  // std::map iterates sorted
  m["parameters"] = std::move(p);
  m["outputs"] = outputs;
  detail::write_file(dir / ("manifest_" + command + ".json"), m.dump(2) + "\n");
}

}  // namespace spinwalk::io
