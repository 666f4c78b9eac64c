#include "qbal/experiment.hpp"
#include "qbal/io.hpp"
#include "qbal/reference_data.hpp"
#include "qbal/svg.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace qbal;

namespace {

std::size_t occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

CovariateSet parse(const std::string& text) {
  std::istringstream in(text);
  return parse_covariates(in);
}

}  // namespace

TEST(GenData, SameSeedSameBytes) {
  GaussianMixtureSpec spec;
  spec.seed = 11;
  EXPECT_EQ(format_covariates(gen_data(spec)), format_covariates(gen_data(spec)));
  GaussianMixtureSpec other = spec;
  other.seed = 12;
  EXPECT_NE(format_covariates(gen_data(spec)), format_covariates(gen_data(other)));
}

TEST(GenData, ClustersSitNearTheirMeans) {
  GaussianMixtureSpec spec;
  spec.seed = 3;
  const CovariateSet x = gen_data(spec);
  ASSERT_EQ(x.m(), 12U);
  ASSERT_EQ(x.n(), 2U);
  const Eigen::Vector2d a = x.matrix().leftCols(6).rowwise().mean();
  const Eigen::Vector2d b = x.matrix().rightCols(6).rowwise().mean();
  EXPECT_LT((a - Eigen::Vector2d(-3, 3)).norm(), 1.3);
  EXPECT_LT((b - Eigen::Vector2d(3, 3)).norm(), 1.3);
}

TEST(GenData, ZeroSigmaPlacesPointsOnMeans) {
  GaussianMixtureSpec spec;
  spec.sigma = 0.0;
  spec.m = 4;
  const CovariateSet x = gen_data(spec);
  EXPECT_EQ(x.column(0), Eigen::Vector2d(-3, 3));
  EXPECT_EQ(x.column(3), Eigen::Vector2d(3, 3));
}

TEST(GenData, RejectsBadSpecs) {
  GaussianMixtureSpec spec;
  spec.m = 13;
  EXPECT_THROW(gen_data(spec), std::invalid_argument);
  spec.m = 12;
  spec.sigma = -1.0;
  EXPECT_THROW(gen_data(spec), std::invalid_argument);
  spec.sigma = 1.0;
  spec.means = {{0.0, 1.0}, {2.0}};
  EXPECT_THROW(gen_data(spec), std::invalid_argument);
}

TEST(Csv, RoundTripAndFixture) {
  const CovariateSet fixture = load_covariates(QBAL_FIXTURE);
  EXPECT_EQ(fixture.matrix(), reference::covariates().matrix());
  const CovariateSet back = parse(format_covariates(fixture, 4));
  EXPECT_EQ(back.matrix(), fixture.matrix());
}

TEST(Csv, ParseErrors) {
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("a,b\n1,2\n"), ParseError);
  EXPECT_THROW(parse("x1,x2\n"), ParseError);
  EXPECT_THROW(parse("x1,x2\n1,2\n3\n"), ParseError);
  EXPECT_THROW(parse("x1,x2\n1,nan\n"), ParseError);
  EXPECT_THROW(parse("x1,x2\n1,2z\n"), ParseError);
  EXPECT_THROW(load_covariates("/nonexistent/path.csv"), std::exception);
  const CovariateSet ok = parse("x1,x2,x3\n1, 2 ,3\n\n4,5,6\n");
  EXPECT_EQ(ok.m(), 2U);
  EXPECT_EQ(ok.n(), 3U);
  EXPECT_EQ(ok.column(1), Eigen::Vector3d(4, 5, 6));
}

TEST(Methods, NamesRoundTrip) {
  for (auto m : {Method::Random, Method::Gsw, Method::Vqe, Method::Qaoa, Method::Exhaustive}) {
    EXPECT_EQ(parse_method(method_name(m)), m);
  }
  EXPECT_THROW(parse_method("annealing"), std::invalid_argument);
}

TEST(RunExperiment, EveryMethodReportsCoreImbalance) {
  const CovariateSet x = reference::covariates();
  const AugmentedDesign d(x, 0.5);
  for (auto m : {Method::Random, Method::Gsw, Method::Vqe, Method::Qaoa, Method::Exhaustive}) {
    ExperimentConfig cfg;
    cfg.method = m;
    cfg.seed = 5;
    cfg.shots = 1024;
    cfg.reps = 1;
    cfg.p = 1;
    cfg.restarts = 1;
    cfg.max_evaluations = 30;
    const RunResult r = run_experiment(x, cfg);
    EXPECT_EQ(r.method, method_name(m));
    ASSERT_EQ(r.omega.size(), 12U);
    EXPECT_DOUBLE_EQ(r.imbalance, assignment_imbalance(d, r.omega));
    EXPECT_DOUBLE_EQ(r.discrepancy, coloring_discrepancy(x, r.omega));
    EXPECT_GE(r.imbalance, std::sqrt(6.0) - 1e-12);
  }
}

TEST(RunExperiment, BestOfSamplesNeverWorse) {
  const CovariateSet x = reference::covariates();
  ExperimentConfig one;
  one.method = Method::Gsw;
  one.seed = 8;
  ExperimentConfig many = one;
  many.samples = 50;
  EXPECT_LE(run_experiment(x, many).imbalance, run_experiment(x, one).imbalance);
  many.samples = 0;
  EXPECT_THROW(run_experiment(x, many), std::invalid_argument);
}

TEST(RunExperiment, EqualSplitExhaustive) {
  ExperimentConfig cfg;
  cfg.equal_split = true;
  const RunResult r = run_experiment(reference::covariates(), cfg);
  EXPECT_EQ(r.omega.count_plus(), 6U);
  EXPECT_TRUE(r.equal_split);
}

TEST(Evaluate, ReportsAllThreeValues) {
  const auto rep = evaluate(reference::covariates(), 0.5, reference::optimal());
  EXPECT_NEAR(rep.imbalance, 2.449629248045133, 1e-12);
  EXPECT_NEAR(rep.lower_bound, std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(rep.discrepancy, coloring_discrepancy(reference::covariates(), reference::optimal()), 1e-15);
}

TEST(ParseOmega, AcceptedForms) {
  const Assignment want{1, -1, 1};
  EXPECT_EQ(parse_omega("1,-1,1"), want);
  EXPECT_EQ(parse_omega("[+1, -1, 1]"), want);
  EXPECT_EQ(parse_omega("1 -1 1"), want);
  EXPECT_THROW(parse_omega("1,0,1"), std::invalid_argument);
  EXPECT_THROW(parse_omega(" , "), std::invalid_argument);
}

TEST(ResultJson, RoundTripPreservesImbalance) {
  ExperimentConfig cfg;
  cfg.method = Method::Qaoa;
  cfg.p = 1;
  cfg.shots = 512;
  cfg.restarts = 1;
  cfg.max_evaluations = 20;
  const RunResult r = run_experiment(reference::covariates(), cfg);
  const auto j = to_json(r);
  const RunResult back = run_result_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.omega, r.omega);
  EXPECT_EQ(back.method, "qaoa");
  EXPECT_DOUBLE_EQ(back.imbalance, r.imbalance);
  EXPECT_DOUBLE_EQ(assignment_imbalance(AugmentedDesign(reference::covariates(), 0.5), back.omega), r.imbalance);
  EXPECT_EQ(j["config"]["p"], 1);
  EXPECT_FALSE(j["expectation"].is_null());

  EXPECT_THROW(run_result_from_json(nlohmann::json::parse(R"({"method":"gsw"})")), std::invalid_argument);
  EXPECT_THROW(run_result_from_json(nlohmann::json::parse(R"({"method":"gsw","omega":[1,2],"imbalance":1})")),
               std::invalid_argument);
}

TEST(Svg, MarkersFollowTheAssignment) {
  RunResult r;
  r.method = "exhaustive";
  r.omega = reference::optimal();
  r.imbalance = 2.4496;
  const std::string svg = render_scatter(reference::covariates(), r);
  EXPECT_EQ(occurrences(svg, "class=\"plus\""), 6U);
  EXPECT_EQ(occurrences(svg, "class=\"minus\""), 6U);
  EXPECT_NE(svg.find("exhaustive assignment, imbalance 2.4496"), std::string::npos);
  EXPECT_EQ(svg, render_scatter(reference::covariates(), r));
}

TEST(Svg, DataOnlyAndErrors) {
  const std::string svg = render_scatter(reference::covariates(), std::nullopt);
  EXPECT_EQ(occurrences(svg, "class=\"unassigned\""), 12U);
  EXPECT_EQ(occurrences(svg, "class=\"plus\""), 0U);
  EXPECT_THROW(render_scatter(CovariateSet(Eigen::MatrixXd::Ones(3, 4)), std::nullopt), UnsupportedDimension);
  RunResult shortr;
  shortr.omega = Assignment{1, -1};
  EXPECT_THROW(render_scatter(reference::covariates(), shortr), DimensionError);
}

TEST(Svg, EscapesMethodName) {
  RunResult r;
  r.method = "a<b&c";
  r.omega = reference::optimal();
  const std::string svg = render_scatter(reference::covariates(), r);
  EXPECT_NE(svg.find("a&lt;b&amp;c"), std::string::npos);
}
