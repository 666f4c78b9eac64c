#pragma once

// Covariate CSV: a header `x1,...,xn`, then one subject per row.

#include "qbal/core.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qbal {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_double(std::string_view field, const std::string& where) {
  double v = 0.0;
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError(where + ": cannot parse '" + std::string(field) + "' as a finite number");
  }
  return v;
}

}  // namespace detail

inline CovariateSet parse_covariates(std::istream& in, const std::string& source = "<input>") {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto fields = detail::split(text, ',');
    const std::string where = source + ":" + std::to_string(line_no);
    if (n == 0) {
      for (std::size_t k = 0; k < fields.size(); ++k) {
        if (fields[k] != "x" + std::to_string(k + 1)) {
          throw ParseError(where + ": header must read x1,...,xn");
        }
      }
      n = fields.size();
      continue;
    }
    if (fields.size() != n) {
      throw ParseError(where + ": expected " + std::to_string(n) + " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = detail::parse_double(fields[k], where);
    rows.push_back(std::move(row));
  }
  if (n == 0) throw ParseError(source + ": missing header");
  if (rows.empty()) throw ParseError(source + ": no data rows");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = rows[i][k];
  }
  return CovariateSet(std::move(x));
}

inline CovariateSet load_covariates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open covariate file " + path.string());
  return parse_covariates(in, path.string());
}

inline std::string format_covariates(const CovariateSet& x, int decimals = 6) {
  std::ostringstream os;
  for (std::size_t k = 0; k < x.n(); ++k) os << (k ? "," : "") << 'x' << (k + 1);
  os << '\n';
  char buf[64];
  for (std::size_t i = 0; i < x.m(); ++i) {
    for (std::size_t k = 0; k < x.n(); ++k) {
      std::snprintf(buf, sizeof buf, "%.*f", decimals,
                    x.matrix()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)));
      os << (k ? "," : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

/// Writes to a sibling temporary and renames, so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move result into " + path.string() + ": " + ec.message());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qbal
