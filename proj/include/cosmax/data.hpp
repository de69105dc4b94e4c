#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "cosmax/errors.hpp"
#include "cosmax/matrix.hpp"
#include "cosmax/rng.hpp"

namespace cosmax {

// n observations on m named variables, as loaded or generated.
struct RawDataset {
  Matrix values;  // n x m
  std::vector<std::string> names;

  std::size_t n() const { return values.rows(); }
  std::size_t m() const { return values.cols(); }

  bool operator==(const RawDataset&) const = default;
};

// Columns centered to zero sum and scaled to unit norm (x'x = 1), the
// convention under which X'X is the sample correlation matrix.
struct StandardizedData {
  Matrix values;
  std::vector<std::string> names;

  bool operator==(const StandardizedData&) const = default;
};

struct CorrelationMatrix {
  SymmetricMatrix base;
  std::vector<std::string> names;

  std::size_t dim() const { return base.dim(); }

  bool operator==(const CorrelationMatrix&) const = default;
};

// A raw ratio below this (centered sum of squares over raw sum of squares)
// is indistinguishable from a constant column at double precision.
inline constexpr double kConstantColumnRatio = 1e-24;

inline StandardizedData standardize(const RawDataset& d) {
  const std::size_t n = d.n();
  const std::size_t m = d.m();
  StandardizedData out;
  out.names = d.names;
  out.values = Matrix(n, m);
  for (std::size_t j = 0; j < m; ++j) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += d.values(i, j);
      sum_sq += d.values(i, j) * d.values(i, j);
    }
    const double mean = sum / static_cast<double>(n);
    double css = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = d.values(i, j) - mean;
      css += c * c;
    }
    if (css == 0.0 || css <= kConstantColumnRatio * sum_sq)
      throw ConstantColumnError(
          d.names[j], "column '" + d.names[j] + "' has zero variance");
    const double inv_norm = 1.0 / std::sqrt(css);
    for (std::size_t i = 0; i < n; ++i)
      out.values(i, j) = (d.values(i, j) - mean) * inv_norm;
  }
  return out;
}

// X'X of standardized data. The diagonal is pinned to exactly 1 and
// off-diagonal rounding spill outside [-1, 1] is clamped.
inline CorrelationMatrix correlation(const StandardizedData& d) {
  const std::size_t n = d.values.rows();
  const std::size_t m = d.values.cols();
  SymmetricMatrix r(m);
  for (std::size_t i = 0; i < m; ++i) {
    r.set(i, i, 1.0);
    for (std::size_t j = 0; j < i; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += d.values(k, i) * d.values(k, j);
      r.set(i, j, std::clamp(dot, -1.0, 1.0));
    }
  }
  return CorrelationMatrix{std::move(r), d.names};
}

inline CorrelationMatrix correlation(const RawDataset& d) {
  return correlation(standardize(d));
}

namespace detail {

// Fields are separated by commas and/or whitespace; '#' starts a comment.
inline std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : line) {
    if (c == '#') break;
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) tokens.push_back(std::move(current)), current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

inline std::vector<std::vector<std::string>> tokenize_lines(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto tokens = tokenize(text.substr(start, end - start));
    if (!tokens.empty()) lines.push_back(std::move(tokens));
    start = end + 1;
  }
  return lines;
}

inline double parse_number(const std::string& token, std::size_t row, std::size_t col) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == nullptr || *end != '\0' || end == token.c_str())
    throw ParseError("expected a number, got '" + token + "' at row " +
                         std::to_string(row) + ", field " + std::to_string(col),
                     row, col);
  if (!std::isfinite(v))
    throw ParseError("non-finite value at row " + std::to_string(row) +
                         ", field " + std::to_string(col),
                     row, col);
  return v;
}

inline bool looks_numeric(const std::string& token) {
  char* end = nullptr;
  std::strtod(token.c_str(), &end);
  return end != token.c_str() && *end == '\0';
}

inline std::vector<std::string> parse_header(
    const std::vector<std::vector<std::string>>& lines) {
  if (lines.empty()) throw ParseError("empty input");
  const auto& header = lines.front();
  for (const auto& name : header)
    if (looks_numeric(name))
      throw ParseError("header row of variable names expected, got numeric '" +
                       name + "'", 1, 1);
  for (std::size_t i = 0; i < header.size(); ++i)
    for (std::size_t j = i + 1; j < header.size(); ++j)
      if (header[i] == header[j])
        throw ParseError("duplicate variable name '" + header[i] + "'", 1, j + 1);
  return header;
}

}  // namespace detail

// Delimiter-separated observations: one header row of unique names, then one
// row per observation. Needs n >= 2 rows and m >= 2 columns of finite values.
inline RawDataset parse_raw_data(std::string_view text) {
  const auto lines = detail::tokenize_lines(text);
  const auto names = detail::parse_header(lines);
  const std::size_t m = names.size();
  if (m < 2) throw ParseError("need at least 2 variables, got " + std::to_string(m));
  const std::size_t n = lines.size() - 1;
  if (n < 2) throw ParseError("need at least 2 observations, got " + std::to_string(n));

  RawDataset d;
  d.names = names;
  d.values = Matrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = lines[i + 1];
    if (row.size() != m)
      throw ParseError("row " + std::to_string(i + 2) + " has " +
                           std::to_string(row.size()) + " fields, expected " +
                           std::to_string(m),
                       i + 2, row.size());
    for (std::size_t j = 0; j < m; ++j)
      d.values(i, j) = detail::parse_number(row[j], i + 2, j + 1);
  }
  return d;
}

// Printed correlation tables carry three decimals, so entries may disagree
// with an exact correlation matrix by half an ulp of the last digit.
inline constexpr double kPrintedTableTolerance = 5e-4;

// Correlation-matrix file: a header of m names, then m rows of m values.
// Symmetry is enforced by averaging the (i,j)/(j,i) pair after checking the
// mismatch stays within printed-table rounding; entries outside [-1, 1] (or a
// diagonal away from 1) beyond that slack are rejected, and the result must
// be positive semidefinite.
inline CorrelationMatrix parse_correlation(std::string_view text) {
  const auto lines = detail::tokenize_lines(text);
  const auto names = detail::parse_header(lines);
  const std::size_t m = names.size();
  if (m < 2) throw ParseError("need at least 2 variables, got " + std::to_string(m));
  if (lines.size() - 1 != m)
    throw ParseError("expected " + std::to_string(m) + " matrix rows, got " +
                     std::to_string(lines.size() - 1));

  Matrix raw(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = lines[i + 1];
    if (row.size() != m)
      throw ParseError("row " + std::to_string(i + 2) + " has " +
                           std::to_string(row.size()) + " fields, expected " +
                           std::to_string(m),
                       i + 2, row.size());
    for (std::size_t j = 0; j < m; ++j) {
      const double v = detail::parse_number(row[j], i + 2, j + 1);
      if (i == j) {
        if (std::abs(v - 1.0) > kPrintedTableTolerance)
          throw ParseError("diagonal entry " + row[j] + " at row " +
                               std::to_string(i + 2) + " must be 1",
                           i + 2, j + 1);
      } else if (std::abs(v) > 1.0 + kPrintedTableTolerance) {
        throw ParseError("correlation " + row[j] + " out of [-1, 1] at row " +
                             std::to_string(i + 2) + ", field " +
                             std::to_string(j + 1),
                         i + 2, j + 1);
      }
      raw(i, j) = v;
    }
  }

  SymmetricMatrix r(m);
  for (std::size_t i = 0; i < m; ++i) {
    r.set(i, i, 1.0);
    for (std::size_t j = 0; j < i; ++j) {
      const double asym = std::abs(raw(i, j) - raw(j, i));
      if (asym > kPrintedTableTolerance)
        throw AsymmetryError("entries (" + names[i] + "," + names[j] +
                             ") differ by " + std::to_string(asym) +
                             ", above the " + std::to_string(kPrintedTableTolerance) +
                             " tolerance");
      r.set(i, j, std::clamp(0.5 * (raw(i, j) + raw(j, i)), -1.0, 1.0));
    }
  }

  const EigenSystem es = eigen_decompose(r);
  if (es.eigenvalues.back() < -1e-6)
    throw NotPsdError("matrix is not positive semidefinite: eigenvalue " +
                      std::to_string(es.eigenvalues.back()));
  return CorrelationMatrix{std::move(r), names};
}

// Synthetic dataset with two overlapping near-collinearities. X1, X2, X3,
// X5, X6, X7 are independent standard normals; X4 = X1 + X2 + X3 + s*e1 and
// X8 = X4 - X7 + s*e2 with s = noise_scale. Per observation, eight normals
// are drawn in the order X1, X2, X3, X5, X6, X7, e1, e2 from a
// GaussianSampler seeded once, so output is a pure function of (n, seed,
// noise_scale). noise_scale = 0 plants exact collinearities.
inline RawDataset generate_example4(std::size_t n, std::uint64_t seed,
                                    double noise_scale = 0.25) {
  if (n < 10) throw ConfigError("generate_example4 requires n >= 10");
  RawDataset d;
  d.names = {"X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8"};
  d.values = Matrix(n, 8);
  GaussianSampler gauss(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = gauss.next();
    const double x2 = gauss.next();
    const double x3 = gauss.next();
    const double x5 = gauss.next();
    const double x6 = gauss.next();
    const double x7 = gauss.next();
    const double e1 = gauss.next();
    const double e2 = gauss.next();
    const double x4 = x1 + x2 + x3 + noise_scale * e1;
    d.values(i, 0) = x1;
    d.values(i, 1) = x2;
    d.values(i, 2) = x3;
    d.values(i, 3) = x4;
    d.values(i, 4) = x5;
    d.values(i, 5) = x6;
    d.values(i, 6) = x7;
    d.values(i, 7) = x4 - x7 + noise_scale * e2;
  }
  return d;
}

}  // namespace cosmax
