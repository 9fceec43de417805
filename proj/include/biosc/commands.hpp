#pragma once

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "biosc/parallel.hpp"
#include "biosc/runconfig.hpp"
#include "biosc/spectral.hpp"
#include "biosc/suites.hpp"

namespace biosc {

// Shortest round-trip decimal form: 17 significant digits re-parse to the
// identical double.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// short form for column labels and metadata keys (not data cells)
inline std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;
};

inline void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    out << (j ? "," : "") << t.columns[j];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? "," : "") << format_g17(row[j]);
    out << "\n";
  }
  for (const auto& [k, v] : t.metadata) out << "# " << k << " = " << v << "\n";
}

inline void write_json(const Table& t, std::ostream& out) {
  nlohmann::json j;
  j["columns"] = t.columns;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const double v : row) r.push_back(format_g17(v));
    rows.push_back(std::move(r));
  }
  auto& meta = j["metadata"] = nlohmann::json::object();
  for (const auto& [k, v] : t.metadata) meta[k] = v;
  out << j.dump(2) << "\n";
}

inline void write_table(const Table& t, OutputFormat fmt, std::ostream& out) {
  if (fmt == OutputFormat::csv) write_csv(t, out);
  else write_json(t, out);
}

// CSV reader for the round-trip contract ('#' footer lines are metadata).
inline Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos)
        t.metadata.emplace_back(detail::trim(line.substr(1, eq - 1)),
                                detail::trim(line.substr(eq + 1)));
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header) {
      t.columns = cells;
      header = false;
    } else {
      std::vector<double> row;
      row.reserve(cells.size());
      for (const auto& c : cells) row.push_back(std::strtod(c.c_str(), nullptr));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// potential: columns x, Re V, Im V and the oscillator reference x^2;
// zero-total-area diagnostics in the footer metadata.

inline Table potential_table(const RunConfig& cfg, int jobs = 1) {
  cfg.model.validate();
  if (!nodeless_check(cfg.model, cfg.grid))
    throw config_error("potential: alpha(x) has a node on the working grid; "
                       "parameter set rejected");
  Table t;
  t.columns = {"x", "re_V", "im_V", "V_osc"};
  t.rows.assign(cfg.grid.n_points, {});
  parallel_for(cfg.grid.n_points, jobs, [&](std::size_t i) {
    const double x = cfg.grid.x(i);
    const cplx V = potential(x, cfg.model);
    t.rows[i] = {x, V.real(), V.imag(), x * x};
  });
  const double L = std::min(-cfg.grid.x_min, cfg.grid.x_max);
  const double area = zero_total_area(cfg.model, L);
  t.metadata.emplace_back("zero_total_area", format_g17(area));
  t.metadata.emplace_back("zero_total_area_closed",
                          format_g17(zero_total_area_endpoint(cfg.model, L)));
  t.metadata.emplace_back("eps", format_g17(cfg.model.eps));
  t.metadata.emplace_back("lambda", format_g17(cfg.model.lambda));
  t.metadata.emplace_back("a", format_g17(cfg.model.a));
  t.metadata.emplace_back("b", format_g17(cfg.model.b));
  t.metadata.emplace_back("c", format_g17(cfg.model.c));
  return t;
}

inline int cmd_potential(const RunConfig& cfg, std::ostream& out, int jobs = 1) {
  write_table(potential_table(cfg, jobs), cfg.output_format, out);
  return 0;
}

// ---------------------------------------------------------------------------
// verify: machine-readable residual report keyed by identity tag.

inline std::vector<CheckResult> run_suite(const RunConfig& cfg, const std::string& suite,
                                          int jobs = 1) {
  const auto one = [&](const std::string& name) -> std::vector<CheckResult> {
    if (name == "algebra") return suite_algebra(cfg.eps_list, cfg.w_list, cfg.truncation);
    if (name == "biorthogonality") return suite_biorthogonality(cfg.model, cfg.grid);
    if (name == "measures") return suite_measures(cfg.model.eps, cfg.w_list);
    if (name == "bargmann") return suite_bargmann(cfg.model.eps, 2.0);
    if (name == "limits") return suite_limits(cfg.grid, cfg.w_list, cfg.truncation);
    throw config_error("unknown suite '" + name +
                       "' (expected biorthogonality|algebra|measures|bargmann|limits|all)");
  };
  if (suite != "all") return one(suite);
  const std::vector<std::string> names{"biorthogonality", "algebra", "measures", "bargmann",
                                       "limits"};
  std::vector<std::vector<CheckResult>> parts(names.size());
  parallel_for(names.size(), jobs, [&](std::size_t i) { parts[i] = one(names[i]); });
  std::vector<CheckResult> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

inline int cmd_verify(const RunConfig& cfg, const std::string& suite, double tolerance_scale,
                      std::ostream& out, int jobs = 1) {
  cfg.model.validate();
  std::vector<CheckResult> results = run_suite(cfg, suite, jobs);
  bool all_pass = true;
  nlohmann::json j;
  j["suite"] = suite;
  j["tolerance_scale"] = format_g17(tolerance_scale);
  auto& res = j["results"] = nlohmann::json::object();
  for (const auto& r : results) {
    const double tol = r.tolerance * tolerance_scale;
    const bool pass = r.residual < tol;
    all_pass = all_pass && pass;
    res[r.key] = {{"residual", format_g17(r.residual)},
                  {"tolerance", format_g17(tol)},
                  {"pass", pass}};
  }
  j["pass"] = all_pass;
  out << j.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// coherent: uncertainty products against r = |z| for one family.

inline Table coherent_table(const RunConfig& cfg, const std::string& family, double r_max = 6.0,
                            int r_points = 61) {
  if (r_points < 2) throw config_error("coherent: need at least 2 radial points");
  Table t;
  t.columns = {"r"};
  const bool natural = family == "natural";
  if (!natural && family != "distorted")
    throw config_error("coherent: family must be natural or distorted");
  std::vector<double> params;
  if (natural) {
    for (const double e : cfg.eps_list) {
      params.push_back(e);
      t.columns.push_back("dxdp_eps_" + format_short(e));
    }
  } else {
    for (const double w : cfg.w_list) {
      if (!(w > 0.0)) {
        t.metadata.emplace_back("skipped_w", format_short(w));
        continue;  // coherent states need w > 0
      }
      params.push_back(w);
      t.columns.push_back("dxdp_w_" + format_short(w));
    }
  }
  for (int i = 0; i < r_points; ++i) {
    const double r = r_max * i / (r_points - 1);
    std::vector<double> row{r};
    for (const double p : params)
      row.push_back(natural ? natural_variance(cplx(r, 0.0), p).dxdp
                            : distorted_variance(cplx(r, 0.0), p));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline int cmd_coherent(const RunConfig& cfg, const std::string& family, std::ostream& out,
                        double r_max = 6.0, int r_points = 61) {
  write_table(coherent_table(cfg, family, r_max, r_points), cfg.output_format, out);
  return 0;
}

// ---------------------------------------------------------------------------
// limits: sup|psi_n - phi_n| per gamma (phase-aligned), with the
// gamma-independent operator identities in the metadata. Singular gamma
// values produce a NaN row and an error marker.

inline Table limits_table(const RunConfig& cfg, const std::vector<double>& gammas) {
  Table t;
  t.columns = {"gamma", "dev_psi0", "dev_psi1", "dev_psi2", "dev_psi3", "dev_psi4"};
  for (const double g : gammas) {
    std::vector<double> row{g};
    if (!(g > 0.5 * sqrt_pi)) {
      row.assign(6, std::nan(""));
      row[0] = g;
      t.metadata.emplace_back("error_gamma_" + format_short(g),
                              "singular: need gamma > sqrt(pi)/2");
    } else {
      const SpectralWorkspace ws(amm_params(g), cfg.grid);
      row.push_back(sup_deviation_phase_aligned(ws.psi_ground(), 0));
      for (int n = 0; n < 4; ++n)
        row.push_back(sup_deviation_phase_aligned(ws.psi_excited(n), n + 1));
    }
    t.rows.push_back(std::move(row));
  }
  const auto [A, Ap] = ladder_a(-1.0, cfg.truncation);
  double aosc = 0.0, cosc = 0.0;
  for (const double w : cfg.w_list) {
    if (!(w > 0.0)) continue;
    const OscillatorLimitOps ops = oscillator_limit_ops(w, cfg.truncation);
    aosc = std::max(aosc, (ops.A_osc - A).max_norm());
    cosc = std::max(cosc, (ops.C_osc - ladder_cw(w, cfg.truncation).C).max_norm());
  }
  t.metadata.emplace_back("aosc_vs_ladder_A", format_g17(aosc));
  t.metadata.emplace_back("cosc_vs_ladder_Cw", format_g17(cosc));
  return t;
}

inline int cmd_limits(const RunConfig& cfg, const std::vector<double>& gammas,
                      std::ostream& out) {
  write_table(limits_table(cfg, gammas), cfg.output_format, out);
  return 0;
}

}  // namespace biosc
