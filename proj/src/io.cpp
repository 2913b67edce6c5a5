#include "orthoplex/io.hpp"

#include <ostream>

namespace orthoplex {

namespace {

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows, int expect_rows,
                                 int expect_cols, const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != expect_rows) {
    throw ArgumentError(std::string(what) + ": row count mismatch");
  }
  Eigen::MatrixXd out(expect_rows, expect_cols);
  for (int i = 0; i < expect_rows; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != expect_cols) {
      throw ArgumentError(std::string(what) + ": column count mismatch");
    }
    for (int j = 0; j < expect_cols; ++j) out(i, j) = row.at(j).get<double>();
  }
  return out;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

nlohmann::json config_to_json(const SphericalConfig& config) {
  return {{"d", config.dim()},
          {"n", config.size()},
          {"vectors", matrix_to_json(config.vectors())}};
}

SphericalConfig config_from_json(const nlohmann::json& j) {
  const int d = j.at("d").get<int>();
  const int n = j.at("n").get<int>();
  if (d < 1 || n < 1) throw ArgumentError("config JSON: d and n must be >= 1");
  return SphericalConfig::from_rows(
      matrix_from_json(j.at("vectors"), n, d, "config vectors"));
}

nlohmann::json feature_set_to_json(const FeatureSet& wh) {
  nlohmann::json j = config_to_json(wh.weights());
  j["m"] = wh.m();
  nlohmann::json feats = nlohmann::json::array();
  for (int k = 0; k < wh.classes(); ++k) {
    nlohmann::json per_class = nlohmann::json::array();
    for (int i = 0; i < wh.m(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      const Eigen::VectorXd h = wh.feature(k, i);
      for (int c = 0; c < wh.dim(); ++c) row.push_back(h(c));
      per_class.push_back(std::move(row));
    }
    feats.push_back(std::move(per_class));
  }
  j["features"] = std::move(feats);
  return j;
}

FeatureSet feature_set_from_json(const nlohmann::json& j) {
  SphericalConfig weights = config_from_json(j);
  const int m = j.at("m").get<int>();
  if (m < 1) throw ArgumentError("feature set JSON: m must be >= 1");
  const auto& feats = j.at("features");
  if (!feats.is_array() || static_cast<int>(feats.size()) != weights.size()) {
    throw ArgumentError("feature set JSON: need one feature group per class");
  }
  Eigen::MatrixXd features(static_cast<Eigen::Index>(weights.size()) * m,
                           weights.dim());
  for (int k = 0; k < weights.size(); ++k) {
    features.middleRows(static_cast<Eigen::Index>(k) * m, m) =
        matrix_from_json(feats.at(k), m, weights.dim(), "features");
  }
  return FeatureSet::from_parts(std::move(weights), std::move(features), m);
}

nlohmann::json decomposition_to_json(const BatchDecomposition& decomposition) {
  return {{"s0", decomposition.s0},
          {"batches", decomposition.batches},
          {"ranks", decomposition.ranks}};
}

nlohmann::json rattlers_to_json(const RattlerReport& rattlers) {
  return {{"softmax", rattlers.softmax}, {"tammes", rattlers.tammes}};
}

nlohmann::json threshold_report_json(int n, double concavity, double convexity,
                                     const std::vector<Crossover>& crossovers) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : crossovers) {
    list.push_back(
        {{"tau", c.tau}, {"from", c.below.label()}, {"to", c.above.label()}});
  }
  return {{"n", n},
          {"concavity", concavity},
          {"convexity", convexity},
          {"crossovers", std::move(list)}};
}

nlohmann::json sweep_report_json(const SweepReport& report) {
  nlohmann::json j = threshold_report_json(
      report.n, report.concavity_threshold, report.convexity_threshold,
      report.crossovers);
  j["d"] = report.d;
  nlohmann::json tuples = nlohmann::json::array();
  for (const auto& t : report.tuples) tuples.push_back(t.label());
  j["tuples"] = std::move(tuples);
  return j;
}

void write_sweep_csv(const SweepReport& report, std::ostream& out) {
  out << "tau";
  for (const auto& tuple : report.tuples) out << ',' << tuple.label();
  out << ",argmin\n";
  out.precision(17);
  for (const auto& rec : report.per_tau) {
    out << rec.tau;
    for (double loss : rec.losses) out << ',' << loss;
    out << ',' << report.tuples[rec.argmin].label() << '\n';
  }
}

void write_trajectory_csv(const OptimizerState& state, std::ostream& out) {
  out << "iter,loss,grad_norm\n";
  out.precision(17);
  for (std::size_t i = 0; i < state.history.size(); ++i) {
    out << i << ',' << state.history[i].loss << ',' << state.history[i].grad_norm
        << '\n';
  }
}

}  // namespace orthoplex
