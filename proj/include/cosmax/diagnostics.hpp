#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cosmax/data.hpp"
#include "cosmax/errors.hpp"
#include "cosmax/matrix.hpp"

namespace cosmax {

// Default thresholds. VIF above 5 marks a variable as collinear, entries of
// the transformation matrix above 0.75 in magnitude mark set membership,
// condition indices of 100 or more flag an eigen direction, and a
// variance-decomposition proportion above 0.5 ties a variable to a flagged
// direction. Condition indices here are eigenvalue ratios lambda_1/lambda_j;
// packages built on singular values report the square root of these.
inline constexpr double kDefaultVifThreshold = 5.0;
inline constexpr double kDefaultLoadingThreshold = 0.75;
inline constexpr double kDefaultConditionThreshold = 100.0;
inline constexpr double kDefaultVdpThreshold = 0.5;
inline constexpr double kDefaultEigenCutoff = 0.26;

// Values this fraction (or less) below a threshold are annotated as
// borderline. Annotation only: membership never changes.
inline constexpr double kDefaultBorderlineWindow = 0.25;

// Condition indices within this fraction of each other count as competing
// dependencies whose variance-decomposition rows may be pooled.
inline constexpr double kDefaultPoolWindow = 0.25;

// The transformation matrix A = (X'X)^{-1/2} together with the VIFs it
// implies: VIF_i = a_i' a_i, the squared norm of column i.
struct CosMaxTransform {
  SymmetricMatrix a;
  std::vector<double> vifs;
  std::vector<std::string> names;

  bool operator==(const CosMaxTransform&) const = default;
};

// Variance-decomposition proportions. proportions(j, i) is the share of
// var(beta_i) attributed to eigen direction j; for each i the column sums
// to 1. Rows are ordered like EigenSystem (eigenvalues descending).
struct VdpTable {
  Matrix proportions;
  std::vector<double> eigenvalues;
  std::vector<double> condition_indices;

  bool operator==(const VdpTable&) const = default;
};

enum class Method { cosmax, eigenvector, vdp };

// One identified collinear set. For the cos-max method the anchor is the
// high-VIF variable whose column of A was inspected and duplicated member
// sets are merged with every anchor recorded; for the eigenvector and VDP
// methods the anchor is the position of the flagged eigen direction.
struct CollinearSet {
  Method method = Method::cosmax;
  std::size_t anchor = 0;
  std::vector<std::size_t> members;     // ascending variable indices
  std::vector<double> evidence;         // the inspected row of values
  std::vector<std::size_t> anchors;     // merged anchors, first = anchor
  std::vector<double> anchor_vifs;      // cos-max only, parallel to anchors
  std::vector<std::size_t> borderline;  // just below the membership threshold
  bool degenerate = false;              // fewer than two members
  bool pooled = false;                  // aggregated competing VDP rows

  bool operator==(const CollinearSet&) const = default;
};

// Pairwise links between high-VIF variables: an edge joins i and j when
// |a_ij| clears the loading threshold. Connected components of this graph
// are the collinearity families a report summarizes.
struct LinkGraph {
  std::vector<std::size_t> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j

  std::vector<std::vector<std::size_t>> components() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> stack;
    std::vector<bool> seen(nodes.empty() ? 0 : *std::max_element(nodes.begin(), nodes.end()) + 1, false);
    for (std::size_t root : nodes) {
      if (seen[root]) continue;
      std::vector<std::size_t> comp;
      stack.push_back(root);
      seen[root] = true;
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (const auto& [a, b] : edges) {
          const std::size_t other = a == v ? b : (b == v ? a : v);
          if (other != v && !seen[other]) {
            seen[other] = true;
            stack.push_back(other);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  bool operator==(const LinkGraph&) const = default;
};

struct CosMaxIdentification {
  std::vector<CollinearSet> sets;
  LinkGraph graph;

  bool operator==(const CosMaxIdentification&) const = default;
};

// VIFs as the diagonal of the inverse correlation matrix.
inline std::vector<double> vif_from_inverse(const CorrelationMatrix& r,
                                            double min_eigenvalue = 1e-10) {
  const SymmetricMatrix inv = inverse_psd(r.base, min_eigenvalue);
  std::vector<double> vifs(r.dim());
  for (std::size_t i = 0; i < r.dim(); ++i) vifs[i] = inv(i, i);
  return vifs;
}

// The same quantity through the regression identity (1 - R_i^2)^{-1}, where
// R_i^2 is the fit of variable i on all the others. Kept as an independent
// route so the two can be cross-checked. Defined in regression.hpp.
inline double vif_from_regression(const CorrelationMatrix& r, std::size_t i);

// A = (X'X)^{-1/2} plus per-variable VIFs read off its column norms.
inline CosMaxTransform cosmax_transform(const CorrelationMatrix& r,
                              double min_eigenvalue = 1e-10) {
  CosMaxTransform t{inverse_sqrt_psd(r.base, min_eigenvalue), {}, r.names};
  t.vifs.resize(r.dim());
  for (std::size_t i = 0; i < r.dim(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < r.dim(); ++j) sum += t.a(j, i) * t.a(j, i);
    t.vifs[i] = sum;
  }
  return t;
}

// The objective the transformation maximizes: psi = sum_i x_i'u_i = tr(R b)
// for any b whose surrogate columns X b are orthonormal. Rejects b that
// fails b' R b = I.
inline double psi_score(const CorrelationMatrix& r, const Matrix& b) {
  const std::size_t m = r.dim();
  if (b.rows() != m || b.cols() != m)
    throw ConfigError("psi_score: b must be m x m");
  const Matrix rb = r.base.dense() * b;
  const Matrix btrb = b.transposed() * rb;
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      worst = std::max(worst, std::abs(btrb(i, j) - (i == j ? 1.0 : 0.0)));
  if (worst > 1e-8)
    throw NotOrthonormalError("psi_score: b'Rb deviates from identity by " +
                              std::to_string(worst));
  double trace = 0.0;
  for (std::size_t i = 0; i < m; ++i) trace += rb(i, i);
  return trace;
}

// Variance-decomposition proportions pi_ji = (v_ij^2/lambda_j) / VIF_i, with
// the normalizing VIF taken from the same spectral sum so each variable's
// proportions add to exactly 1 up to rounding.
inline VdpTable vdp(const CorrelationMatrix& r, double min_eigenvalue = 1e-10) {
  const EigenSystem es = eigen_decompose(r.base);
  detail::require_above_floor(es, min_eigenvalue);
  const std::size_t m = r.dim();
  VdpTable table;
  table.eigenvalues = es.eigenvalues;
  table.condition_indices.resize(m);
  for (std::size_t j = 0; j < m; ++j)
    table.condition_indices[j] = es.eigenvalues.front() / es.eigenvalues[j];
  table.proportions = Matrix(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    double vif = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = es.eigenvectors(i, j);
      vif += v * v / es.eigenvalues[j];
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double v = es.eigenvectors(i, j);
      table.proportions(j, i) = (v * v / es.eigenvalues[j]) / vif;
    }
  }
  return table;
}

namespace detail {

inline bool is_borderline(double magnitude, double threshold, double window) {
  return magnitude <= threshold && magnitude > threshold * (1.0 - window);
}

}  // namespace detail

// Cos-max identification. Every variable whose VIF clears vif_threshold
// anchors a set containing each j with |a_ji| above loading_threshold; the
// diagonal always carries the anchor in. Anchors producing identical member
// sets are merged, anchors and their VIFs recorded in encounter order. The
// link graph joins flagged variables whose mutual entry clears the loading
// threshold.
inline CosMaxIdentification identify_cosmax_sets(
    const CosMaxTransform& t, double vif_threshold = kDefaultVifThreshold,
    double loading_threshold = kDefaultLoadingThreshold,
    double borderline_window = kDefaultBorderlineWindow) {
  if (vif_threshold <= 0.0 || loading_threshold <= 0.0)
    throw ConfigError("identify_cosmax_sets: thresholds must be positive");
  const std::size_t m = t.vifs.size();
  CosMaxIdentification out;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(t.vifs[i] > vif_threshold)) continue;
    out.graph.nodes.push_back(i);
    CollinearSet set;
    set.method = Method::cosmax;
    set.anchor = i;
    set.anchors = {i};
    set.anchor_vifs = {t.vifs[i]};
    set.evidence.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double v = t.a(j, i);
      set.evidence[j] = v;
      // The diagonal always carries the anchor in, whatever the threshold.
      if (std::abs(v) > loading_threshold || j == i)
        set.members.push_back(j);
      else if (detail::is_borderline(std::abs(v), loading_threshold, borderline_window))
        set.borderline.push_back(j);
    }
    auto same = std::find_if(out.sets.begin(), out.sets.end(),
                             [&](const CollinearSet& s) { return s.members == set.members; });
    if (same != out.sets.end()) {
      same->anchors.push_back(i);
      same->anchor_vifs.push_back(t.vifs[i]);
      for (std::size_t b : set.borderline)
        if (std::find(same->borderline.begin(), same->borderline.end(), b) ==
            same->borderline.end())
          same->borderline.push_back(b);
      std::sort(same->borderline.begin(), same->borderline.end());
    } else {
      out.sets.push_back(std::move(set));
    }
  }
  for (std::size_t a = 0; a < out.graph.nodes.size(); ++a)
    for (std::size_t b = a + 1; b < out.graph.nodes.size(); ++b) {
      const std::size_t i = out.graph.nodes[a];
      const std::size_t j = out.graph.nodes[b];
      if (std::abs(t.a(i, j)) > loading_threshold) out.graph.edges.emplace_back(i, j);
    }
  return out;
}

// Eigenvector identification: a direction whose condition index reaches
// cond_threshold contributes the variables whose loadings exceed the cutoff
// in magnitude. A set with fewer than two members cannot be a collinearity
// and is kept only as a degenerate warning.
inline std::vector<CollinearSet> identify_eigen_sets(
    const EigenSystem& e, double cond_threshold = kDefaultConditionThreshold,
    double loading_cutoff = kDefaultEigenCutoff,
    double borderline_window = kDefaultBorderlineWindow) {
  if (cond_threshold <= 0.0 || loading_cutoff <= 0.0)
    throw ConfigError("identify_eigen_sets: thresholds must be positive");
  const std::size_t m = e.eigenvalues.size();
  std::vector<CollinearSet> sets;
  for (std::size_t j = 0; j < m; ++j) {
    const double ci = e.eigenvalues.front() / e.eigenvalues[j];
    if (!(ci >= cond_threshold)) continue;
    CollinearSet set;
    set.method = Method::eigenvector;
    set.anchor = j;
    set.anchors = {j};
    set.evidence.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double v = e.eigenvectors(i, j);
      set.evidence[i] = v;
      if (std::abs(v) > loading_cutoff)
        set.members.push_back(i);
      else if (detail::is_borderline(std::abs(v), loading_cutoff, borderline_window))
        set.borderline.push_back(i);
    }
    set.degenerate = set.members.size() < 2;
    sets.push_back(std::move(set));
  }
  return sets;
}

// Variance-decomposition identification. Each row whose condition index
// reaches cond_threshold contributes the variables whose proportion exceeds
// pi_threshold. With aggregate_competing set, qualifying rows whose condition
// indices sit within pool_window of each other are competing dependencies:
// their proportions are summed before thresholding and the result is flagged
// as a pooled involvement set rather than a single dependency.
inline std::vector<CollinearSet> identify_vdp_sets(
    const VdpTable& v, double cond_threshold = kDefaultConditionThreshold,
    double pi_threshold = kDefaultVdpThreshold, bool aggregate_competing = true,
    double pool_window = kDefaultPoolWindow,
    double borderline_window = kDefaultBorderlineWindow) {
  if (cond_threshold <= 0.0)
    throw ConfigError("identify_vdp_sets: condition threshold must be positive");
  if (!(pi_threshold > 0.0 && pi_threshold < 1.0))
    throw ConfigError("identify_vdp_sets: pi threshold must lie in (0, 1)");
  const std::size_t m = v.eigenvalues.size();

  std::vector<std::size_t> qualifying;
  for (std::size_t j = 0; j < m; ++j)
    if (v.condition_indices[j] >= cond_threshold) qualifying.push_back(j);

  // Group ascending-by-index = descending eigenvalue = ascending condition
  // index; chain rows whose neighbouring indices stay within the window.
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t j : qualifying) {
    if (aggregate_competing && !groups.empty()) {
      const std::size_t prev = groups.back().back();
      if (v.condition_indices[j] <=
          v.condition_indices[prev] * (1.0 + pool_window)) {
        groups.back().push_back(j);
        continue;
      }
    }
    groups.push_back({j});
  }

  std::vector<CollinearSet> sets;
  for (const auto& group : groups) {
    CollinearSet set;
    set.method = Method::vdp;
    set.anchor = group.back();  // the direction with the largest index
    set.anchors = group;
    set.pooled = group.size() > 1;
    set.evidence.assign(m, 0.0);
    for (std::size_t j : group)
      for (std::size_t i = 0; i < m; ++i) set.evidence[i] += v.proportions(j, i);
    for (std::size_t i = 0; i < m; ++i) {
      if (set.evidence[i] > pi_threshold)
        set.members.push_back(i);
      else if (detail::is_borderline(set.evidence[i], pi_threshold, borderline_window))
        set.borderline.push_back(i);
    }
    set.degenerate = set.members.size() < 2;
    sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace cosmax
