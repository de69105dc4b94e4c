#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cosmax/report.hpp"

namespace cosmax {

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

inline std::string fmt3(double v) { return fmt("%.3f", v); }

// A value cell: fixed-width number plus a one-character mark column, so
// marked and unmarked cells stay aligned.
inline std::string cell(double v, char mark = ' ', int width = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%*.3f%c", width, v, mark);
  return buf;
}

inline std::string pad(const std::string& s, std::size_t width) {
  std::string out = s;
  while (out.size() < width) out.push_back(' ');
  return out;
}

inline std::string rpad_header(const std::string& s, int width) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%*s ", width, s.c_str());
  return buf;
}

inline std::string join_names(const std::vector<std::string>& names,
                              const std::vector<std::size_t>& idx,
                              const char* sep = ", ") {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += sep;
    out += names[idx[k]];
  }
  return out;
}

inline std::string set_braces(const std::vector<std::string>& names,
                              const std::vector<std::size_t>& idx) {
  return "{" + join_names(names, idx) + "}";
}

inline bool contains_pair(const std::vector<std::pair<std::size_t, std::size_t>>& cells,
                          std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  for (const auto& c : cells)
    if (c.first == i && c.second == j) return true;
  return false;
}

inline bool contains(const std::vector<std::size_t>& v, std::size_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

inline const char* method_name(Method m) {
  switch (m) {
    case Method::cosmax: return "cosmax";
    case Method::eigenvector: return "eigenvector";
    case Method::vdp: return "vdp";
  }
  return "?";
}

inline const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::gain_below_min: return "gain_below_min";
    case StopReason::p_above_alpha: return "p_above_alpha";
    case StopReason::all_entered: return "all_entered";
  }
  return "?";
}

inline const char* input_kind_name(InputKind k) {
  switch (k) {
    case InputKind::raw_data: return "raw_data";
    case InputKind::correlation: return "correlation";
    case InputKind::synthetic: return "synthetic";
  }
  return "?";
}

inline const char* format_name(OutputFormat f) {
  return f == OutputFormat::text_table ? "text_table" : "structured";
}

}  // namespace detail

// Plain-text report shaped like the usual diagnostic tables: correlation
// with VIFs, eigen analysis with condition indices, variance-decomposition
// proportions, then the transformation matrix. Numbers carry three decimals;
// '*' marks a value past its threshold and '~' one just below (borderline).
// Output is a deterministic function of the report.
inline std::string render_text(const DiagnosticsReport& rep) {
  using namespace detail;
  const std::size_t m = rep.names.size();
  const Thresholds& th = rep.config.thresholds;
  std::size_t label_width = 2;
  for (const auto& n : rep.names) label_width = std::max(label_width, n.size());
  label_width = std::max(label_width, std::size_t(4));

  std::string out;
  out += "collinearity diagnostics report\n";
  out += "variables: " + std::to_string(m);
  out += "   input: ";
  out += input_kind_name(rep.config.input_kind);
  out += "\n";
  if (rep.n_obs) out += "observations: " + std::to_string(*rep.n_obs) + "\n";
  out += "thresholds: vif > " + fmt3(th.vif) + ", loading > " + fmt3(th.loading) +
         ", condition index >= " + fmt3(th.condition_index) + ", vdp > " +
         fmt3(th.vdp_pi) + ", eigen cutoff > " + fmt3(th.eigen_cutoff) +
         ", min gain " + fmt3(th.min_gain) + "\n";

  auto header_row = [&](bool vif_col) {
    std::string line(label_width, ' ');
    for (const auto& n : rep.names) line += rpad_header(n, 9);
    if (vif_col) line += rpad_header("VIF", 11);
    return line + "\n";
  };

  out += "\ncorrelation matrix and VIFs\n";
  out += header_row(true);
  for (std::size_t i = 0; i < m; ++i) {
    out += pad(rep.names[i], label_width);
    for (std::size_t j = 0; j < m; ++j) out += cell(rep.correlation(i, j));
    char mark = contains(rep.flagged_vifs, i) ? '*'
                : contains(rep.borderline_vifs, i) ? '~' : ' ';
    out += cell(rep.vifs[i], mark, 11);
    out += "\n";
  }

  out += "\neigen analysis and condition indices\n";
  {
    std::string line(label_width, ' ');
    for (const auto& n : rep.names) line += rpad_header(n, 9);
    line += rpad_header("eigenvalue", 11);
    line += rpad_header("cond index", 11);
    out += line + "\n";
  }
  for (std::size_t j = 0; j < m; ++j) {
    const bool flagged = contains(rep.flagged_directions, j);
    out += pad("v" + std::to_string(j + 1), label_width);
    for (std::size_t i = 0; i < m; ++i) {
      const double v = rep.eigen.eigenvectors(i, j);
      const char mark = flagged && std::abs(v) > th.eigen_cutoff ? '*' : ' ';
      out += cell(v, mark);
    }
    out += cell(rep.eigen.eigenvalues[j], ' ', 11);
    const char ci_mark = flagged ? '*'
                         : contains(rep.borderline_directions, j) ? '~' : ' ';
    out += cell(rep.condition_indices[j], ci_mark, 11);
    out += "\n";
  }

  out += "\nvariance-decomposition proportions\n";
  {
    std::string line = rpad_header("eigenvalue", 11);
    line += rpad_header("cond index", 11);
    for (const auto& n : rep.names) line += rpad_header(n, 9);
    out += line + "\n";
  }
  for (std::size_t j = 0; j < m; ++j) {
    const bool flagged = contains(rep.flagged_directions, j);
    out += cell(rep.vdp_table.eigenvalues[j], ' ', 11);
    out += cell(rep.vdp_table.condition_indices[j], flagged ? '*' : ' ', 11);
    for (std::size_t i = 0; i < m; ++i) {
      const double v = rep.vdp_table.proportions(j, i);
      char mark = ' ';
      if (flagged && v > th.vdp_pi) mark = '*';
      else if (flagged && is_borderline(v, th.vdp_pi, th.borderline_window)) mark = '~';
      out += cell(v, mark);
    }
    out += "\n";
  }

  out += "\ncos-max transformation matrix and VIFs\n";
  out += header_row(true);
  for (std::size_t i = 0; i < m; ++i) {
    out += pad("a" + std::to_string(i + 1), label_width);
    for (std::size_t j = 0; j < m; ++j) {
      char mark = ' ';
      if (i == j) {
        if (contains(rep.flagged_vifs, i)) mark = '*';
      } else if (contains_pair(rep.flagged_cells, i, j)) {
        mark = '*';
      } else if (contains_pair(rep.borderline_cells, i, j)) {
        mark = '~';
      }
      out += cell(rep.transform.a(i, j), mark);
    }
    char vif_mark = contains(rep.flagged_vifs, i) ? '*'
                    : contains(rep.borderline_vifs, i) ? '~' : ' ';
    out += cell(rep.transform.vifs[i], vif_mark, 11);
    out += "\n";
  }

  out += "\ncollinear sets\n";
  if (rep.cosmax_sets.empty() && rep.eigen_sets.empty() && rep.vdp_sets.empty()) {
    out += "no collinearities detected\n";
  } else {
    for (const auto& s : rep.cosmax_sets) {
      out += "cosmax: " + set_braces(rep.names, s.members) + "  anchors:";
      for (std::size_t k = 0; k < s.anchors.size(); ++k) {
        out += k ? ", " : " ";
        out += rep.names[s.anchors[k]] + " (vif " + fmt3(s.anchor_vifs[k]) + ")";
      }
      if (!s.borderline.empty())
        out += "  borderline: " + join_names(rep.names, s.borderline);
      out += "\n";
    }
    for (const auto& s : rep.eigen_sets) {
      out += "eigenvector: v" + std::to_string(s.anchor + 1) + " (cond index " +
             fmt3(rep.condition_indices[s.anchor]) + "): " +
             set_braces(rep.names, s.members);
      if (s.degenerate) out += "  [degenerate: fewer than two members]";
      if (!s.borderline.empty())
        out += "  borderline: " + join_names(rep.names, s.borderline);
      out += "\n";
    }
    for (const auto& s : rep.vdp_sets) {
      out += "vdp: ";
      if (s.pooled) {
        out += "pooled rows";
        for (std::size_t k = 0; k < s.anchors.size(); ++k) {
          out += k ? "+" : " v";
          if (k) out += "v";
          out += std::to_string(s.anchors[k] + 1);
        }
        out += ": " + set_braces(rep.names, s.members) + "  [pooled involvement set]";
      } else {
        out += "v" + std::to_string(s.anchor + 1) + " (cond index " +
               fmt3(rep.vdp_table.condition_indices[s.anchor]) + "): " +
               set_braces(rep.names, s.members);
      }
      if (s.degenerate) out += "  [degenerate: fewer than two members]";
      if (!s.borderline.empty())
        out += "  borderline: " + join_names(rep.names, s.borderline);
      out += "\n";
    }
  }

  out += "\nlink graph\n";
  out += "nodes: " + join_names(rep.names, rep.link_graph.nodes) + "\n";
  out += "edges:";
  for (std::size_t k = 0; k < rep.link_graph.edges.size(); ++k) {
    const auto& [i, j] = rep.link_graph.edges[k];
    out += k ? ", " : " ";
    out += rep.names[i] + "-" + rep.names[j];
  }
  out += "\n";
  out += "families:";
  for (std::size_t k = 0; k < rep.families.size(); ++k) {
    out += k ? ", " : " ";
    out += set_braces(rep.names, rep.families[k]);
  }
  out += "\n";

  if (!rep.stepwise.empty()) {
    out += "\nstepwise traces\n";
    for (const auto& t : rep.stepwise) {
      out += rep.names[t.dependent] + ":";
      for (std::size_t k = 0; k < t.steps.size(); ++k) {
        out += k ? ", " : " ";
        out += rep.names[t.steps[k].variable] + " (R2 " + fmt3(t.steps[k].r_squared);
        if (t.steps[k].f_stat) out += ", F " + fmt3(*t.steps[k].f_stat);
        out += ")";
      }
      if (t.steps.empty()) out += " (no variables entered)";
      out += "  [stopped: ";
      out += stop_reason_name(t.stopped_reason);
      out += "]\n";
    }
  }

  if (!rep.partials.empty()) {
    out += "\npartial correlations\n";
    for (const auto& p : rep.partials) {
      out += "corr(" + rep.names[p.i] + ", " + rep.names[p.j];
      if (!p.conditioning.empty())
        out += " | " + join_names(rep.names, p.conditioning);
      out += ") = " + fmt3(p.value) + "\n";
    }
  }
  return out;
}

namespace detail {

using json = nlohmann::ordered_json;

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.at(0).size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows.at(i).at(j).get<double>();
  return m;
}

inline json symmetric_to_json(const SymmetricMatrix& m) {
  return matrix_to_json(m.dense());
}

inline SymmetricMatrix symmetric_from_json(const json& rows) {
  const std::size_t n = rows.size();
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, rows.at(i).at(j).get<double>());
  return m;
}

inline json names_of(const std::vector<std::string>& names,
                     const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (std::size_t i : idx) out.push_back(names[i]);
  return out;
}

inline std::vector<std::size_t> indices_of(const std::vector<std::string>& names,
                                           const json& arr) {
  std::vector<std::size_t> out;
  for (const auto& v : arr) out.push_back(resolve_name(names, v.get<std::string>()));
  return out;
}

inline json set_to_json(const CollinearSet& s, const std::vector<std::string>& names) {
  json j;
  j["method"] = method_name(s.method);
  if (s.method == Method::cosmax) {
    j["anchor"] = names[s.anchor];
    j["anchors"] = names_of(names, s.anchors);
    j["anchor_vifs"] = s.anchor_vifs;
  } else {
    j["anchor_direction"] = s.anchor;
    j["anchor_directions"] = s.anchors;
  }
  j["members"] = names_of(names, s.members);
  j["borderline"] = names_of(names, s.borderline);
  j["evidence"] = s.evidence;
  j["degenerate"] = s.degenerate;
  j["pooled"] = s.pooled;
  return j;
}

inline CollinearSet set_from_json(const json& j, const std::vector<std::string>& names) {
  CollinearSet s;
  const std::string method = j.at("method").get<std::string>();
  s.method = method == "cosmax" ? Method::cosmax
             : method == "eigenvector" ? Method::eigenvector : Method::vdp;
  if (s.method == Method::cosmax) {
    s.anchor = resolve_name(names, j.at("anchor").get<std::string>());
    s.anchors = indices_of(names, j.at("anchors"));
    s.anchor_vifs = j.at("anchor_vifs").get<std::vector<double>>();
  } else {
    s.anchor = j.at("anchor_direction").get<std::size_t>();
    s.anchors = j.at("anchor_directions").get<std::vector<std::size_t>>();
  }
  s.members = indices_of(names, j.at("members"));
  s.borderline = indices_of(names, j.at("borderline"));
  s.evidence = j.at("evidence").get<std::vector<double>>();
  s.degenerate = j.at("degenerate").get<bool>();
  s.pooled = j.at("pooled").get<bool>();
  return s;
}

inline json config_to_json(const RunConfig& c) {
  json j;
  j["input_kind"] = input_kind_name(c.input_kind);
  j["output_format"] = format_name(c.output_format);
  json th;
  th["vif"] = c.thresholds.vif;
  th["loading"] = c.thresholds.loading;
  th["condition_index"] = c.thresholds.condition_index;
  th["vdp_pi"] = c.thresholds.vdp_pi;
  th["eigen_cutoff"] = c.thresholds.eigen_cutoff;
  th["min_gain"] = c.thresholds.min_gain;
  th["borderline_window"] = c.thresholds.borderline_window;
  th["pool_window"] = c.thresholds.pool_window;
  th["aggregate_competing"] = c.thresholds.aggregate_competing;
  j["thresholds"] = std::move(th);
  j["stepwise_targets"] = c.stepwise_targets;
  json queries = json::array();
  for (const auto& q : c.partial_queries) {
    json qj;
    qj["i"] = q.i;
    qj["j"] = q.j;
    qj["conditioning"] = q.conditioning;
    queries.push_back(std::move(qj));
  }
  j["partial_queries"] = std::move(queries);
  json synth;
  synth["n"] = c.synth_n;
  synth["seed"] = c.seed;
  synth["noise"] = c.synth_noise;
  j["synthetic"] = std::move(synth);
  j["n_obs"] = c.n_obs ? json(*c.n_obs) : json(nullptr);
  j["alpha"] = c.alpha ? json(*c.alpha) : json(nullptr);
  return j;
}

inline RunConfig config_from_json(const json& j) {
  RunConfig c;
  const std::string kind = j.at("input_kind").get<std::string>();
  c.input_kind = kind == "raw_data" ? InputKind::raw_data
                 : kind == "synthetic" ? InputKind::synthetic : InputKind::correlation;
  c.output_format = j.at("output_format").get<std::string>() == "structured"
                        ? OutputFormat::structured
                        : OutputFormat::text_table;
  const json& th = j.at("thresholds");
  c.thresholds.vif = th.at("vif").get<double>();
  c.thresholds.loading = th.at("loading").get<double>();
  c.thresholds.condition_index = th.at("condition_index").get<double>();
  c.thresholds.vdp_pi = th.at("vdp_pi").get<double>();
  c.thresholds.eigen_cutoff = th.at("eigen_cutoff").get<double>();
  c.thresholds.min_gain = th.at("min_gain").get<double>();
  c.thresholds.borderline_window = th.at("borderline_window").get<double>();
  c.thresholds.pool_window = th.at("pool_window").get<double>();
  c.thresholds.aggregate_competing = th.at("aggregate_competing").get<bool>();
  c.stepwise_targets = j.at("stepwise_targets").get<std::vector<std::string>>();
  for (const auto& qj : j.at("partial_queries")) {
    PartialQuery q;
    q.i = qj.at("i").get<std::string>();
    q.j = qj.at("j").get<std::string>();
    q.conditioning = qj.at("conditioning").get<std::vector<std::string>>();
    c.partial_queries.push_back(std::move(q));
  }
  const json& synth = j.at("synthetic");
  c.synth_n = synth.at("n").get<std::size_t>();
  c.seed = synth.at("seed").get<std::uint64_t>();
  c.synth_noise = synth.at("noise").get<double>();
  if (!j.at("n_obs").is_null()) c.n_obs = j.at("n_obs").get<std::size_t>();
  if (!j.at("alpha").is_null()) c.alpha = j.at("alpha").get<double>();
  return c;
}

}  // namespace detail

inline constexpr int kStructuredSchemaVersion = 1;

// Machine-readable report: everything at full double precision with a fixed
// key order, so a fixed report dumps to byte-identical text. Sets and graph
// entries reference variables by name.
inline std::string render_structured(const DiagnosticsReport& rep) {
  using namespace detail;
  json j;
  j["schema_version"] = kStructuredSchemaVersion;
  j["report"] = "collinearity-diagnostics";
  j["config"] = config_to_json(rep.config);
  j["variables"] = rep.names;
  j["n_obs"] = rep.n_obs ? json(*rep.n_obs) : json(nullptr);
  j["correlation"] = symmetric_to_json(rep.correlation);

  json vif;
  vif["values"] = rep.vifs;
  vif["flagged"] = names_of(rep.names, rep.flagged_vifs);
  vif["borderline"] = names_of(rep.names, rep.borderline_vifs);
  j["vif"] = std::move(vif);

  json eigen;
  eigen["eigenvalues"] = rep.eigen.eigenvalues;
  eigen["condition_indices"] = rep.condition_indices;
  eigen["vectors"] = matrix_to_json(rep.eigen.eigenvectors);
  eigen["flagged_directions"] = rep.flagged_directions;
  eigen["borderline_directions"] = rep.borderline_directions;
  j["eigen"] = std::move(eigen);

  json vdp_j;
  vdp_j["eigenvalues"] = rep.vdp_table.eigenvalues;
  vdp_j["condition_indices"] = rep.vdp_table.condition_indices;
  vdp_j["proportions"] = matrix_to_json(rep.vdp_table.proportions);
  j["vdp"] = std::move(vdp_j);

  json cm;
  cm["matrix"] = symmetric_to_json(rep.transform.a);
  cm["vifs"] = rep.transform.vifs;
  json fc = json::array();
  for (const auto& [a, b] : rep.flagged_cells) fc.push_back(json::array({a, b}));
  cm["flagged_cells"] = std::move(fc);
  json bc = json::array();
  for (const auto& [a, b] : rep.borderline_cells) bc.push_back(json::array({a, b}));
  cm["borderline_cells"] = std::move(bc);
  j["cosmax"] = std::move(cm);

  json sets;
  for (const char* key : {"cosmax", "eigenvector", "vdp"}) sets[key] = json::array();
  for (const auto& s : rep.cosmax_sets) sets["cosmax"].push_back(set_to_json(s, rep.names));
  for (const auto& s : rep.eigen_sets)
    sets["eigenvector"].push_back(set_to_json(s, rep.names));
  for (const auto& s : rep.vdp_sets) sets["vdp"].push_back(set_to_json(s, rep.names));
  j["sets"] = std::move(sets);

  json graph;
  graph["nodes"] = names_of(rep.names, rep.link_graph.nodes);
  json edges = json::array();
  for (const auto& [a, b] : rep.link_graph.edges)
    edges.push_back(json::array({rep.names[a], rep.names[b]}));
  graph["edges"] = std::move(edges);
  json families = json::array();
  for (const auto& f : rep.families) families.push_back(names_of(rep.names, f));
  graph["families"] = std::move(families);
  j["link_graph"] = std::move(graph);

  json traces = json::array();
  for (const auto& t : rep.stepwise) {
    json tj;
    tj["dependent"] = rep.names[t.dependent];
    json steps = json::array();
    for (const auto& s : t.steps) {
      json sj;
      sj["variable"] = rep.names[s.variable];
      sj["r_squared"] = s.r_squared;
      sj["f_stat"] = s.f_stat ? json(*s.f_stat) : json(nullptr);
      steps.push_back(std::move(sj));
    }
    tj["steps"] = std::move(steps);
    tj["stopped_reason"] = detail::stop_reason_name(t.stopped_reason);
    traces.push_back(std::move(tj));
  }
  j["stepwise"] = std::move(traces);

  json partials = json::array();
  for (const auto& p : rep.partials) {
    json pj;
    pj["i"] = rep.names[p.i];
    pj["j"] = rep.names[p.j];
    pj["conditioning"] = names_of(rep.names, p.conditioning);
    pj["value"] = p.value;
    partials.push_back(std::move(pj));
  }
  j["partial_correlations"] = std::move(partials);

  return j.dump(2) + "\n";
}

// Inverse of render_structured. parse_structured(render_structured(r)) == r.
inline DiagnosticsReport parse_structured(std::string_view text) {
  using namespace detail;
  const json j = json::parse(text);
  if (j.at("schema_version").get<int>() != kStructuredSchemaVersion)
    throw ParseError("unsupported schema version");
  DiagnosticsReport rep;
  rep.config = config_from_json(j.at("config"));
  rep.names = j.at("variables").get<std::vector<std::string>>();
  if (!j.at("n_obs").is_null()) rep.n_obs = j.at("n_obs").get<std::size_t>();
  rep.correlation = symmetric_from_json(j.at("correlation"));

  rep.vifs = j.at("vif").at("values").get<std::vector<double>>();
  rep.flagged_vifs = indices_of(rep.names, j.at("vif").at("flagged"));
  rep.borderline_vifs = indices_of(rep.names, j.at("vif").at("borderline"));

  rep.eigen.eigenvalues = j.at("eigen").at("eigenvalues").get<std::vector<double>>();
  rep.condition_indices =
      j.at("eigen").at("condition_indices").get<std::vector<double>>();
  rep.eigen.eigenvectors = matrix_from_json(j.at("eigen").at("vectors"));
  rep.flagged_directions =
      j.at("eigen").at("flagged_directions").get<std::vector<std::size_t>>();
  rep.borderline_directions =
      j.at("eigen").at("borderline_directions").get<std::vector<std::size_t>>();

  rep.vdp_table.eigenvalues = j.at("vdp").at("eigenvalues").get<std::vector<double>>();
  rep.vdp_table.condition_indices =
      j.at("vdp").at("condition_indices").get<std::vector<double>>();
  rep.vdp_table.proportions = matrix_from_json(j.at("vdp").at("proportions"));

  rep.transform.a = symmetric_from_json(j.at("cosmax").at("matrix"));
  rep.transform.vifs = j.at("cosmax").at("vifs").get<std::vector<double>>();
  rep.transform.names = rep.names;
  for (const auto& c : j.at("cosmax").at("flagged_cells"))
    rep.flagged_cells.emplace_back(c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>());
  for (const auto& c : j.at("cosmax").at("borderline_cells"))
    rep.borderline_cells.emplace_back(c.at(0).get<std::size_t>(),
                                      c.at(1).get<std::size_t>());

  for (const auto& s : j.at("sets").at("cosmax"))
    rep.cosmax_sets.push_back(set_from_json(s, rep.names));
  for (const auto& s : j.at("sets").at("eigenvector"))
    rep.eigen_sets.push_back(set_from_json(s, rep.names));
  for (const auto& s : j.at("sets").at("vdp"))
    rep.vdp_sets.push_back(set_from_json(s, rep.names));

  rep.link_graph.nodes = indices_of(rep.names, j.at("link_graph").at("nodes"));
  for (const auto& e : j.at("link_graph").at("edges"))
    rep.link_graph.edges.emplace_back(
        resolve_name(rep.names, e.at(0).get<std::string>()),
        resolve_name(rep.names, e.at(1).get<std::string>()));
  for (const auto& f : j.at("link_graph").at("families"))
    rep.families.push_back(indices_of(rep.names, f));

  for (const auto& tj : j.at("stepwise")) {
    StepwiseTrace t;
    t.dependent = resolve_name(rep.names, tj.at("dependent").get<std::string>());
    for (const auto& sj : tj.at("steps")) {
      StepwiseStep s;
      s.variable = resolve_name(rep.names, sj.at("variable").get<std::string>());
      s.r_squared = sj.at("r_squared").get<double>();
      if (!sj.at("f_stat").is_null()) s.f_stat = sj.at("f_stat").get<double>();
      t.steps.push_back(std::move(s));
    }
    const std::string reason = tj.at("stopped_reason").get<std::string>();
    t.stopped_reason = reason == "gain_below_min" ? StopReason::gain_below_min
                       : reason == "p_above_alpha" ? StopReason::p_above_alpha
                                                   : StopReason::all_entered;
    rep.stepwise.push_back(std::move(t));
  }

  for (const auto& pj : j.at("partial_correlations")) {
    PartialCorrelation p;
    p.i = resolve_name(rep.names, pj.at("i").get<std::string>());
    p.j = resolve_name(rep.names, pj.at("j").get<std::string>());
    p.conditioning = indices_of(rep.names, pj.at("conditioning"));
    p.value = pj.at("value").get<double>();
    rep.partials.push_back(std::move(p));
  }
  return rep;
}

}  // namespace cosmax
