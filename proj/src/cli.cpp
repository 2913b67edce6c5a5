#include "orthoplex/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "orthoplex/builders.hpp"
#include "orthoplex/geometry.hpp"
#include "orthoplex/io.hpp"
#include "orthoplex/loss.hpp"
#include "orthoplex/optimizer.hpp"
#include "orthoplex/parallel.hpp"
#include "orthoplex/temperature.hpp"

namespace orthoplex::cli {

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  json j;
  in >> j;
  return j;
}

void emit_line(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

// ---- build ----------------------------------------------------------------

struct BuildArgs {
  int q = 0, d = 0, n = 0;
  std::string kind = "low";
};

void cmd_build_simplex(const BuildArgs& a, std::ostream& out) {
  emit_line(out, config_to_json(build_simplex(a.q, a.d)));
}

void cmd_build_orthoplex(const BuildArgs& a, std::ostream& out) {
  emit_line(out, config_to_json(build_orthoplex_subset(a.d, a.n)));
}

void cmd_build_entropy(const BuildArgs& a, std::ostream& out) {
  EntropyKind kind;
  if (a.kind == "low") {
    kind = EntropyKind::low;
  } else if (a.kind == "high") {
    kind = EntropyKind::high;
  } else {
    throw ArgumentError("entropy kind must be 'low' or 'high'");
  }
  auto [config, tuple] = build_entropy_code(a.d, a.n, kind);
  json j = config_to_json(config);
  j["tuple"] = tuple.label();
  j["kind"] = a.kind;
  emit_line(out, j);
}

// ---- analyze ---------------------------------------------------------------

void cmd_analyze(const std::string& config_path, double tol, std::ostream& out) {
  SphericalConfig config = config_from_json(load_json_file(config_path));
  json j;
  j["d"] = config.dim();
  j["n"] = config.size();
  j["coherence"] = coherence(config);
  MarginResult m = margin(config);
  j["margin"] = m.margin;
  j["per_point_distances"] =
      std::vector<double>(m.distances.data(), m.distances.data() + m.distances.size());
  RattlerReport rattlers = find_rattlers(config);
  j["softmax_rattlers"] = rattlers.softmax;
  j["tammes_rattlers"] = rattlers.tammes;
  const int d = config.dim();
  const int n = config.size();
  if (n >= d + 2 && n <= 2 * d && coherence(config) <= tol) {
    j["decomposition"] = decomposition_to_json(orthoplex_decompose(config, tol));
  } else {
    j["decomposition"] = nullptr;
  }
  emit_line(out, j);
}

// ---- loss ------------------------------------------------------------------

struct LossArgs {
  std::string config_path;
  std::string features_path;
  double tau = 1.0;
  std::string closed_form;
  bool hardmax = false;
  std::string convention = "negated";
};

void cmd_loss(const LossArgs& a, std::ostream& out) {
  SphericalConfig config = config_from_json(load_json_file(a.config_path));
  FeatureSet wh = a.features_path.empty()
                      ? FeatureSet::self_dual(config, 1)
                      : feature_set_from_json(load_json_file(a.features_path));
  if (wh.dim() != config.dim() || wh.classes() != config.size()) {
    throw ArgumentError("feature set shape does not match --config");
  }

  emit_line(out, json{{"tau", a.tau},
                      {"loss", ce_loss(wh, a.tau)},
                      {"kind", "cross_entropy"},
                      {"convention", nullptr}});
  if (!a.closed_form.empty()) {
    DimensionTuple tuple = DimensionTuple::parse(a.closed_form);
    emit_line(out, json{{"tau", a.tau},
                        {"loss", ce_selfdual_closed(tuple, config.size(), a.tau)},
                        {"kind", "closed_form"},
                        {"tuple", tuple.label()},
                        {"convention", nullptr}});
  }
  if (a.hardmax) {
    HardmaxConvention convention;
    if (a.convention == "negated") {
      convention = HardmaxConvention::negated;
    } else if (a.convention == "printed") {
      convention = HardmaxConvention::printed;
    } else {
      throw ArgumentError("convention must be 'negated' or 'printed'");
    }
    emit_line(out, json{{"tau", a.tau},
                        {"loss", hardmax_loss(wh, convention)},
                        {"kind", "hardmax"},
                        {"convention", a.convention}});
  }
}

// ---- sweep / thresholds ----------------------------------------------------

struct SweepArgs {
  int d = 0, n = 0;
  double tau_lo = 0.0, tau_hi = 0.0, tol = 1e-5;
  int grid = 512;
  std::string csv_out;
};

void cmd_sweep(const SweepArgs& a, std::ostream& out) {
  SweepReport report = crossover_scan(a.d, a.n, a.tau_lo, a.tau_hi, a.tol, a.grid);
  if (!a.csv_out.empty()) {
    std::ofstream csv(a.csv_out);
    if (!csv) throw ArgumentError("cannot open '" + a.csv_out + "' for writing");
    write_sweep_csv(report, csv);
  }
  emit_line(out, sweep_report_json(report));
}

void cmd_thresholds(int n, double tol, std::ostream& out) {
  emit_line(out, threshold_report_json(n, concavity_threshold(n, tol),
                                       convexity_threshold(n, tol), {}));
}

// ---- optimize ----------------------------------------------------------------

struct OptimizeArgs {
  int d = 0, n = 0, m = 1;
  double tau = 1.0;
  int seeds = 1;
  int max_iters = 20000;
  double grad_tol = 1e-10;
  bool symmetric = false;
  std::string traj_out;
  std::string state_out;
};

void cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  check_orthoplex_regime(a.d, a.n);
  StepRule rule;
  json manifest{{"d", a.d},         {"n", a.n},
                {"m", a.m},         {"tau", a.tau},
                {"seeds", a.seeds}, {"max_iters", a.max_iters},
                {"grad_tol", a.grad_tol},
                {"symmetric", a.symmetric},
                {"step_rule",
                 {{"initial_step", rule.initial_step},
                  {"armijo", rule.armijo},
                  {"shrink", rule.shrink},
                  {"growth", rule.growth},
                  {"max_step", rule.max_step}}}};
  emit_line(out, manifest);

  const DimensionTuple reference = low_entropy_tuple(a.d, a.n);
  std::vector<OptimizerState> states;
  states.reserve(a.seeds);
  for (int s = 0; s < a.seeds; ++s) {
    FeatureSet init =
        a.symmetric
            ? FeatureSet::self_dual(random_config(a.d, a.n, s), a.m)
            : random_feature_set(a.d, a.n, a.m, s);
    states.push_back(optimize(init, a.tau, a.max_iters, a.grad_tol, rule));
  }

  int best_seed = 0;
  for (int s = 0; s < a.seeds; ++s) {
    const OptimizerState& state = states[s];
    CollapseMetrics metrics = collapse_metrics(state, reference);
    if (state.loss < states[best_seed].loss) best_seed = s;
    emit_line(out, json{{"seed", s},
                        {"loss", state.loss},
                        {"grad_norm", state.grad_norm},
                        {"iterations", state.step},
                        {"duality_gap", metrics.duality_gap},
                        {"within_class_var", metrics.within_class_var},
                        {"gram_error_low", metrics.gram_error_low},
                        {"gram_error_high", metrics.gram_error_high}});
    if (!a.traj_out.empty()) {
      std::ofstream csv(a.traj_out + "_seed" + std::to_string(s) + ".csv");
      if (!csv) throw ArgumentError("cannot write trajectory for seed " + std::to_string(s));
      write_trajectory_csv(state, csv);
    }
  }
  emit_line(out, json{{"best_seed", best_seed}, {"best_loss", states[best_seed].loss}});
  if (!a.state_out.empty()) {
    std::ofstream f(a.state_out);
    if (!f) throw ArgumentError("cannot open '" + a.state_out + "' for writing");
    f << feature_set_to_json(states[best_seed].iterate).dump() << '\n';
  }
}

// ---- verify ------------------------------------------------------------------

class VerifySuite {
 public:
  explicit VerifySuite(std::ostream& out) : out_(out) {}

  void check(const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    out_ << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out_ << " (" << detail << ")";
    out_ << '\n';
    failures_ += ok ? 0 : 1;
  }

  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

int cmd_verify(std::ostream& out) {
  VerifySuite suite(out);

  suite.check("builders_are_spherical_codes", [](std::string& detail) {
    for (int d = 2; d <= 6; ++d) {
      for (int n = d + 2; n <= 2 * d; ++n) {
        std::vector<SphericalConfig> codes{build_orthoplex_subset(d, n),
                                           build_entropy_code(d, n, EntropyKind::low).first,
                                           build_entropy_code(d, n, EntropyKind::high).first};
        for (const auto& code : codes) {
          if (coherence(code) > 1e-12 || std::abs(margin(code).margin - 1.0) > 1e-8) {
            detail = "coherence/margin violated at d=" + std::to_string(d) +
                     " n=" + std::to_string(n);
            return false;
          }
          RattlerReport r = find_rattlers(code);
          if (!r.softmax.empty() || !r.tammes.empty()) {
            detail = "rattler found at d=" + std::to_string(d) + " n=" + std::to_string(n);
            return false;
          }
        }
      }
    }
    return true;
  });

  suite.check("entropy_decomposition_roundtrip", [](std::string& detail) {
    for (int d = 2; d <= 6; ++d) {
      for (int n = d + 2; n <= 2 * d; ++n) {
        for (EntropyKind kind : {EntropyKind::low, EntropyKind::high}) {
          auto [code, tuple] = build_entropy_code(d, n, kind);
          BatchDecomposition dec = orthoplex_decompose(code);
          if (!dec.s0.empty() || static_cast<int>(dec.batches.size()) != n - d) {
            detail = "structure mismatch at d=" + std::to_string(d) +
                     " n=" + std::to_string(n);
            return false;
          }
        }
      }
    }
    return true;
  });

  suite.check("closed_form_matches_direct_loss", [](std::string& detail) {
    for (int d = 2; d <= 6; ++d) {
      for (int n = d + 2; n <= 2 * d; ++n) {
        for (EntropyKind kind : {EntropyKind::low, EntropyKind::high}) {
          auto [code, tuple] = build_entropy_code(d, n, kind);
          for (double tau : {0.1, 0.3, 1.0, 3.0}) {
            const double direct = ce_loss(FeatureSet::self_dual(code, 1), tau);
            const double closed = ce_selfdual_closed(tuple, n, tau);
            if (std::abs(direct - closed) > 1e-10) {
              std::ostringstream msg;
              msg << "d=" << d << " n=" << n << " tau=" << tau << " |diff|="
                  << std::abs(direct - closed);
              detail = msg.str();
              return false;
            }
          }
        }
      }
    }
    return true;
  });

  suite.check("simplex_minimizes_batch_loss", [](std::string& detail) {
    for (int q : {3, 4}) {
      for (double tau : {0.5, 1.0}) {
        for (double c : {1.0, 2.5}) {
          SphericalConfig simplex = build_simplex(q, q - 1);
          const double value = l_tau_c(simplex, tau, c);
          const double closed = q * std::log(c + (q - 1) * std::exp(-1.0 / (tau * (q - 1))));
          if (std::abs(value - closed) > 1e-12) {
            detail = "closed value mismatch";
            return false;
          }
          for (int seed = 0; seed < 50; ++seed) {
            Eigen::MatrixXd rows = simplex.vectors() +
                                   0.1 * random_config(q - 1, q, 1000 + seed).vectors();
            SphericalConfig perturbed =
                SphericalConfig::from_rows(rows, 1.0).renormalized();
            if (l_tau_c(perturbed, tau, c) < value - 1e-12) {
              detail = "perturbation beat the simplex";
              return false;
            }
          }
        }
      }
    }
    return true;
  });

  suite.check("radon_certificates", [](std::string& detail) {
    int trial = 0;
    for (int d = 2; d <= 6 && trial < 50; ++d) {
      for (int n = d + 2; n <= 2 * d && trial < 50; ++n, ++trial) {
        SphericalConfig x = random_config(d, n, 500 + trial);
        RadonPartition radon = radon_partition(x);
        for (const auto& side : {radon.side_a, radon.side_b}) {
          Eigen::MatrixXd rows(side.size(), d);
          for (std::size_t i = 0; i < side.size(); ++i) rows.row(i) = x.vectors().row(side[i]);
          if (hull_distance(radon.radon_point, rows).distance > 1e-8) {
            detail = "membership failed at d=" + std::to_string(d) + " n=" + std::to_string(n);
            return false;
          }
        }
      }
    }
    return true;
  });

  suite.check("gradient_matches_finite_differences", [](std::string& detail) {
    const double tau = 0.7;
    const double h = 1e-6;
    FeatureSet wh = random_feature_set(3, 5, 2, 11);
    GradientPair grad = ce_gradient(wh, tau);
    Eigen::MatrixXd W = wh.weights().vectors();
    Eigen::MatrixXd H = wh.features();
    double worst = 0.0;
    for (Eigen::Index r = 0; r < W.rows(); ++r) {
      for (Eigen::Index c = 0; c < W.cols(); ++c) {
        Eigen::MatrixXd plus = W, minus = W;
        plus(r, c) += h;
        minus(r, c) -= h;
        const double fd = (ce_loss_raw(plus, H, 2, tau) - ce_loss_raw(minus, H, 2, tau)) / (2 * h);
        worst = std::max(worst, std::abs(fd - grad.weights(r, c)) /
                                    std::max(1e-8, std::abs(fd)));
      }
    }
    if (worst > 1e-5) {
      detail = "weight gradient relative error " + std::to_string(worst);
      return false;
    }
    return true;
  });

  suite.check("n10_thresholds_and_crossover", [](std::string& detail) {
    const double conc = concavity_threshold(10);
    const double conv = convexity_threshold(10);
    if (std::abs(conc - 0.3916) > 5e-4 || std::abs(conv - 0.5847) > 5e-4) {
      std::ostringstream msg;
      msg << "thresholds " << conc << ", " << conv;
      detail = msg.str();
      return false;
    }
    SweepReport report = crossover_scan(6, 10, 0.36, 0.61);
    if (report.crossovers.size() != 1 ||
        std::abs(report.crossovers[0].tau - 0.4968) > 5e-4) {
      detail = "d=6 crossover not at 0.4968";
      return false;
    }
    return true;
  });

  suite.check("dichotomy_on_random_configs", [](std::string& detail) {
    for (int trial = 0; trial < 100; ++trial) {
      const int d = 2 + trial % 5;
      const int n = d + 2 + trial % (d - 1);
      SphericalConfig x = random_config(d, n, 9000 + trial);
      const double alpha = coherence(x);
      const double delta = margin(x).margin;
      if (delta > 1.0 + 1e-9) {
        detail = "margin exceeded 1";
        return false;
      }
      if (alpha >= 1e-3 && delta >= 1.0) {
        detail = "positive coherence with margin >= 1";
        return false;
      }
    }
    return true;
  });

  return suite.failures() == 0 ? 0 : 1;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CommandResult result;
  std::ostringstream out;
  std::ostringstream err;

  CLI::App app{"spherical configuration toolkit for the orthoplex regime", "orthoplex"};
  app.require_subcommand(1);

  // build
  BuildArgs build_args;
  CLI::App* build = app.add_subcommand("build", "construct configurations");
  build->require_subcommand(1);
  CLI::App* simplex = build->add_subcommand("simplex", "origin-centered regular simplex");
  simplex->add_option("--q", build_args.q, "point count")->required();
  simplex->add_option("--d", build_args.d, "ambient dimension")->required();
  CLI::App* orthoplex_cmd = build->add_subcommand("orthoplex", "orthoplex vertex subset");
  orthoplex_cmd->add_option("--d", build_args.d, "ambient dimension")->required();
  orthoplex_cmd->add_option("--n", build_args.n, "point count")->required();
  CLI::App* entropy = build->add_subcommand("entropy", "low/high entropy block code");
  entropy->add_option("--d", build_args.d, "ambient dimension")->required();
  entropy->add_option("--n", build_args.n, "point count")->required();
  entropy->add_option("--kind", build_args.kind, "low|high")->required();

  // analyze
  std::string analyze_config;
  double analyze_tol = 1e-8;
  CLI::App* analyze = app.add_subcommand("analyze", "margins, rattlers, decomposition");
  analyze->add_option("--config", analyze_config, "config JSON file")->required();
  analyze->add_option("--tol", analyze_tol, "decomposition tolerance");

  // loss
  LossArgs loss_args;
  CLI::App* loss = app.add_subcommand("loss", "cross-entropy / closed-form / hardmax");
  loss->add_option("--config", loss_args.config_path, "config JSON file")->required();
  loss->add_option("--features", loss_args.features_path, "feature set JSON file");
  loss->add_option("--tau", loss_args.tau, "temperature")->required();
  loss->add_option("--closed-form", loss_args.closed_form, "tuple label, e.g. 3+1+1+1");
  loss->add_flag("--hardmax", loss_args.hardmax, "also report the hardmax loss");
  loss->add_option("--convention", loss_args.convention, "negated|printed");

  // sweep
  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "temperature sweep with crossovers");
  sweep->add_option("--d", sweep_args.d)->required();
  sweep->add_option("--n", sweep_args.n)->required();
  sweep->add_option("--tau-lo", sweep_args.tau_lo)->required();
  sweep->add_option("--tau-hi", sweep_args.tau_hi)->required();
  sweep->add_option("--tol", sweep_args.tol, "crossover tolerance");
  sweep->add_option("--grid", sweep_args.grid, "coarse grid points");
  sweep->add_option("--csv-out", sweep_args.csv_out, "write per-tau losses CSV here");

  // thresholds
  int thresholds_n = 0;
  double thresholds_tol = 1e-5;
  CLI::App* thresholds = app.add_subcommand("thresholds", "concavity/convexity boundaries");
  thresholds->add_option("--n", thresholds_n)->required();
  thresholds->add_option("--tol", thresholds_tol);

  // optimize
  OptimizeArgs opt_args;
  CLI::App* optimize_cmd = app.add_subcommand("optimize", "multi-seed Riemannian descent");
  optimize_cmd->add_option("--d", opt_args.d)->required();
  optimize_cmd->add_option("--n", opt_args.n)->required();
  optimize_cmd->add_option("--m", opt_args.m)->required();
  optimize_cmd->add_option("--tau", opt_args.tau)->required();
  optimize_cmd->add_option("--seeds", opt_args.seeds)->required();
  optimize_cmd->add_option("--max-iters", opt_args.max_iters);
  optimize_cmd->add_option("--grad-tol", opt_args.grad_tol);
  optimize_cmd->add_flag("--symmetric", opt_args.symmetric, "initialize H = W");
  optimize_cmd->add_option("--traj-out", opt_args.traj_out, "trajectory CSV prefix");
  optimize_cmd->add_option("--state-out", opt_args.state_out, "best final state JSON");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "run the built-in property suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    help << app.help();
    result.output = help.str();
    result.exit_code = 0;
    return result;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    result.diagnostics = err.str();
    result.exit_code = 2;
    return result;
  }

  try {
    if (simplex->parsed()) {
      cmd_build_simplex(build_args, out);
    } else if (orthoplex_cmd->parsed()) {
      cmd_build_orthoplex(build_args, out);
    } else if (entropy->parsed()) {
      cmd_build_entropy(build_args, out);
    } else if (analyze->parsed()) {
      cmd_analyze(analyze_config, analyze_tol, out);
    } else if (loss->parsed()) {
      cmd_loss(loss_args, out);
    } else if (sweep->parsed()) {
      cmd_sweep(sweep_args, out);
    } else if (thresholds->parsed()) {
      cmd_thresholds(thresholds_n, thresholds_tol, out);
    } else if (optimize_cmd->parsed()) {
      cmd_optimize(opt_args, out);
    } else if (verify->parsed()) {
      result.exit_code = cmd_verify(out);
    }
  } catch (const Error& e) {
    emit_line(out, json{{"error", e.code()}, {"detail", e.what()}});
    result.exit_code = 1;
  } catch (const std::exception& e) {
    emit_line(out, json{{"error", "internal"}, {"detail", e.what()}});
    result.exit_code = 1;
  }

  result.output = out.str();
  result.diagnostics = err.str();
  return result;
}

}  // namespace orthoplex::cli
