#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qct/classical.hpp"
#include "qct/core.hpp"
#include "qct/decoherence.hpp"
#include "qct/filter.hpp"
#include "qct/quantum.hpp"

namespace qct {

inline constexpr const char* kVersion = "1.0.0";

enum class OutputFormat { Csv, Json };

/// CLI-level description of one experiment run.
struct ScenarioConfig {
  std::string scenario;  // single-packet, superposition, k0-scan,
                         // truncation-profile, decoherence, mc-validate
  PhysParams params = paper_params();
  std::vector<double> times;
  std::vector<double> k0_values;
  Grid grid = default_grid();
  std::optional<McConfig> mc;
  std::string out_prefix = "qct_out";
  OutputFormat format = OutputFormat::Csv;
  double scan_x = 0.5;  // evaluation point for k0 scans
};

struct ScenarioReport {
  int exit_code = 0;
  nlohmann::json summary;
};

namespace detail {

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{
      "single-packet", "superposition", "k0-scan",
      "truncation-profile", "decoherence", "mc-validate"};
  return names;
}

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_tag(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

/// A named set of curves sharing one abscissa.
struct CurveSet {
  std::string abscissa_name;
  Eigen::ArrayXd abscissa;
  std::vector<std::pair<std::string, Eigen::ArrayXd>> curves;
};

inline void write_curves(const CurveSet& cs, const std::string& path,
                         OutputFormat format) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open output file: " + path);
  if (format == OutputFormat::Csv) {
    f << cs.abscissa_name;
    for (const auto& [name, vals] : cs.curves) f << "," << name;
    f << "\n";
    for (Eigen::Index i = 0; i < cs.abscissa.size(); ++i) {
      f << fmt17(cs.abscissa(i));
      for (const auto& [name, vals] : cs.curves) f << "," << fmt17(vals(i));
      f << "\n";
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [name, vals] : cs.curves) {
      nlohmann::json obj;
      obj["name"] = name;
      obj[cs.abscissa_name] = std::vector<double>(
          cs.abscissa.data(), cs.abscissa.data() + cs.abscissa.size());
      obj["values"] =
          std::vector<double>(vals.data(), vals.data() + vals.size());
      arr.push_back(std::move(obj));
    }
    f << arr.dump(2) << "\n";
  }
  if (!f) throw std::ios_base::failure("write failed: " + path);
}

inline nlohmann::json params_json(const PhysParams& p) {
  return {{"m", p.m},           {"hbar", p.hbar},       {"sigma", p.sigma},
          {"sigma_x", p.sigma_x}, {"sigma_v", p.sigma_v}, {"x0", p.x0},
          {"v0", p.v0},         {"d", p.d}};
}

}  // namespace detail

inline ScenarioConfig validate_config(const ScenarioConfig& cfg) {
  const auto& names = detail::scenario_names();
  if (std::find(names.begin(), names.end(), cfg.scenario) == names.end())
    throw std::invalid_argument("unknown scenario: " + cfg.scenario);
  validate_params(cfg.params);
  validate_grid(cfg.grid);
  if (cfg.times.empty())
    throw std::invalid_argument("times list must not be empty");
  const bool needs_k0 =
      cfg.scenario == "k0-scan" || cfg.scenario == "truncation-profile";
  if (needs_k0 && cfg.k0_values.empty())
    throw std::invalid_argument("scenario requires a k0 list");
  if (cfg.scenario == "mc-validate" && !cfg.mc)
    throw std::invalid_argument("mc-validate requires Monte Carlo settings (--mc-samples)");
  if (cfg.mc) validate_mc(*cfg.mc);
  return cfg;
}

/// Runs one scenario: writes one curve file per (time, k0) combination plus
/// a summary JSON. Exit code 0 on success, 1 when an internal invariant
/// check fails.
inline ScenarioReport run_scenario(const ScenarioConfig& cfg_in) {
  const ScenarioConfig cfg = validate_config(cfg_in);
  const PhysParams& p = cfg.params;
  const std::string ext = cfg.format == OutputFormat::Csv ? ".csv" : ".json";

  nlohmann::json summary;
  summary["library_version"] = kVersion;
  summary["scenario"] = cfg.scenario;
  summary["params"] = detail::params_json(p);
  summary["grid"] = {{"x_min", cfg.grid.x_min},
                     {"x_max", cfg.grid.x_max},
                     {"n_points", cfg.grid.n_points}};
  nlohmann::json files = nlohmann::json::array();
  nlohmann::json checks = nlohmann::json::array();
  bool ok = true;

  auto check_norm = [&](const std::string& label, const RealField& f,
                        double tol) {
    const double integral = integrate_trapezoid(f);
    const bool pass = std::abs(integral - 1.0) <= tol;
    checks.push_back({{"check", "normalization"},
                      {"curve", label},
                      {"integral", integral},
                      {"tolerance", tol},
                      {"pass", pass}});
    ok = ok && pass;
  };
  auto emit = [&](const detail::CurveSet& cs, const std::string& name) {
    const std::string path = cfg.out_prefix + "_" + name + ext;
    detail::write_curves(cs, path, cfg.format);
    files.push_back(path);
  };

  const Eigen::ArrayXd xs = cfg.grid.points();
  auto sample = [&](auto&& fn) {
    Eigen::ArrayXd out(xs.size());
    for (Eigen::Index i = 0; i < xs.size(); ++i) out(i) = fn(xs(i));
    return out;
  };

  if (cfg.scenario == "single-packet" || cfg.scenario == "superposition") {
    const bool sup = cfg.scenario == "superposition";
    const WavePacketSpec spec{p, sup};
    for (double t : cfg.times) {
      Eigen::ArrayXd pcl = sample([&](double x) {
        return sup ? classical_density_superposed(x, t, p)
                   : classical_density_single(x, t, p);
      });
      Eigen::ArrayXd pqm = sample([&](double x) {
        return sup ? density_superposed(x, t, spec)
                   : density_single(x, t, spec);
      });
      check_norm("P_cl(t=" + detail::fmt_tag(t) + ")", {cfg.grid, pcl}, 1e-7);
      check_norm("P_qm(t=" + detail::fmt_tag(t) + ")", {cfg.grid, pqm}, 1e-7);
      emit({"x", xs, {{"P_cl", pcl}, {"P_qm", pqm}}},
           "t" + detail::fmt_tag(t));
    }
  } else if (cfg.scenario == "k0-scan") {
    for (double t : cfg.times) {
      auto scan = transition_scan(cfg.scan_x, t, cfg.k0_values, p);
      Eigen::ArrayXd k0s(Eigen::Index(scan.size())), vals(Eigen::Index(scan.size()));
      for (size_t i = 0; i < scan.size(); ++i) {
        k0s(Eigen::Index(i)) = scan[i].first;
        vals(Eigen::Index(i)) = scan[i].second;
      }
      emit({"k0", k0s, {{"P_trunc", vals}}}, "t" + detail::fmt_tag(t));
      summary["reference"]["quantum_value"] =
          density_superposed(cfg.scan_x, t, {p, true});
      summary["reference"]["classical_value"] =
          classical_density_superposed(cfg.scan_x, t, p);
      summary["reference"]["x"] = cfg.scan_x;
      summary["reference"]["t"] = t;
    }
  } else if (cfg.scenario == "truncation-profile") {
    for (double t : cfg.times) {
      Eigen::ArrayXd pcl =
          sample([&](double x) { return classical_density_superposed(x, t, p); });
      Eigen::ArrayXd pqm =
          sample([&](double x) { return density_superposed(x, t, {p, true}); });
      for (double k0 : cfg.k0_values) {
        TruncationResult tr = truncated_density(cfg.grid, t, k0, p);
        const bool residue_ok = tr.max_imag_residue < 1e-8;
        checks.push_back({{"check", "imag_residue"},
                          {"t", t},
                          {"k0", k0},
                          {"max_imag_residue", tr.max_imag_residue},
                          {"fft_fallback", tr.used_fft_fallback},
                          {"pass", residue_ok}});
        ok = ok && residue_ok;
        emit({"x", xs,
              {{"P_cl", pcl}, {"P_qm", pqm}, {"P_trunc", tr.field.values}}},
             "t" + detail::fmt_tag(t) + "_k0" + detail::fmt_tag(k0));
      }
      check_norm("P_cl(t=" + detail::fmt_tag(t) + ")", {cfg.grid, pcl}, 1e-7);
      check_norm("P_qm(t=" + detail::fmt_tag(t) + ")", {cfg.grid, pqm}, 1e-7);
    }
  } else if (cfg.scenario == "decoherence") {
    for (double t : cfg.times) {
      LRDecomposition lr = lr_split(cfg.grid, t, p);
      Eigen::ArrayXd pcl =
          sample([&](double x) { return classical_density_superposed(x, t, p); });
      Eigen::ArrayXd pqm =
          sample([&](double x) { return density_superposed(x, t, {p, true}); });
      Eigen::ArrayXd plr =
          lr.psi_l.values.abs2() + lr.psi_r.values.abs2();
      Eigen::ArrayXd interf =
          2.0 * (lr.psi_l.values.conjugate() * lr.psi_r.values).real();
      check_norm("P_qm(t=" + detail::fmt_tag(t) + ")", {cfg.grid, pqm}, 1e-7);
      check_norm("P_lr+interf(t=" + detail::fmt_tag(t) + ")",
                 {cfg.grid, Eigen::ArrayXd(plr + interf)}, 1e-7);
      emit({"x", xs,
            {{"P_cl", pcl},
             {"P_qm", pqm},
             {"P_lr", plr},
             {"interference", interf}}},
           "t" + detail::fmt_tag(t));
    }
  } else {  // mc-validate
    for (double t : cfg.times) {
      const ClassicalScenario sc{p, p.d > 0.0};
      RealField hist = sample_trajectories(sc, t, *cfg.mc);
      Eigen::ArrayXd pcl(hist.values.size());
      for (Eigen::Index i = 0; i < pcl.size(); ++i)
        pcl(i) = sc.superposed
                     ? classical_density_superposed(hist.grid.x(i), t, p)
                     : classical_density_single(hist.grid.x(i), t, p);
      const double bin_w = (cfg.mc->hist_max - cfg.mc->hist_min) /
                           double(cfg.mc->histogram_bins);
      const double l1 = ((hist.values - pcl).abs() * bin_w).sum();
      const double mass = hist.values.sum() * bin_w;
      const bool mass_ok = std::abs(mass - 1.0) <= 1e-3;
      checks.push_back({{"check", "histogram_mass"},
                        {"t", t},
                        {"mass", mass},
                        {"pass", mass_ok}});
      summary["mc"]["l1_distance"][detail::fmt_tag(t)] = l1;
      ok = ok && mass_ok;
      emit({"x", hist.grid.points(), {{"P_mc", hist.values}, {"P_cl", pcl}}},
           "t" + detail::fmt_tag(t));
    }
    summary["mc"]["n_samples"] = cfg.mc->n_samples;
    summary["mc"]["seed"] = cfg.mc->seed;
  }

  summary["files"] = files;
  summary["checks"] = checks;
  summary["all_checks_passed"] = ok;

  const std::string spath = cfg.out_prefix + "_summary.json";
  std::ofstream sf(spath, std::ios::binary);
  if (!sf) throw std::ios_base::failure("cannot open output file: " + spath);
  sf << summary.dump(2) << "\n";
  if (!sf) throw std::ios_base::failure("write failed: " + spath);

  return {ok ? 0 : 1, std::move(summary)};
}

}  // namespace qct
