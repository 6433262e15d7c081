#include <gtest/gtest.h>

#include <sstream>

#include "dtlab/errors.hpp"
#include "dtlab/generate.hpp"
#include "dtlab/io.hpp"
#include "dtlab/reduction.hpp"
#include "helpers.hpp"

namespace dtlab {
namespace {

using testing::fn;

Graph k3() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

Pmf uniform(const PartialFn& f) {
  std::vector<Mass> masses;
  for (const auto& p : f.points()) masses.push_back({p.x, make_rational(1, static_cast<std::int64_t>(f.size()))});
  return Pmf(std::move(masses));
}

LearnTask task_for(const PartialFn& f, const Pmf& pmf, std::size_t s, std::size_t s_prime, Rational eps) {
  auto sampler = std::make_shared<Sampler>(pmf);
  LearnTask task;
  task.width = f.width();
  task.query = [f](const BitVector& x) { return f.at(x); };
  task.sample = [sampler](CounterRng& rng) { return (*sampler)(rng); };
  task.s = s;
  task.s_prime = s_prime;
  task.eps = std::move(eps);
  task.seed = 3;
  return task;
}

TEST(LearnTask, Validation) {
  const auto f = fn({{"0", 0}, {"1", 1}});
  auto task = task_for(f, uniform(f), 2, 1, 0);
  EXPECT_THROW(validate(task), Error);
  task.s_prime = 2;
  EXPECT_NO_THROW(validate(task));
  task.eps = 2;
  EXPECT_THROW(validate(task), Error);
}

TEST(GreedyLearner, SingleQueryTarget) {
  const auto f = PartialFn::full_cube(3, [](const BitVector& x) { return x[1]; });
  const auto pmf = uniform(f);
  const auto res = greedy_learner(task_for(f, pmf, 2, 4, 0));
  EXPECT_EQ(res.tree.size(), 2u);
  EXPECT_EQ(error_exact(res.tree, f, pmf), 0);
  EXPECT_FALSE(res.flagged);
}

TEST(GreedyLearner, LeafBudgetOneGivesMajority) {
  const auto f = testing::and_n(2);
  const auto pmf = uniform(f);
  const auto res = greedy_learner(task_for(f, pmf, 1, 1, make_rational(1, 2)));
  EXPECT_EQ(res.tree.size(), 1u);
  EXPECT_EQ(error_exact(res.tree, f, pmf), make_rational(1, 4));
}

TEST(GreedyLearner, DeterministicGivenSeed) {
  const Gadget gadget(k3(), 1);
  const auto f = gadget.hard_support();
  const auto pmf = canonical_hard_pmf(f).pmf;
  const auto a = greedy_learner(task_for(f, pmf, 10, 19, 0));
  const auto b = greedy_learner(task_for(f, pmf, 10, 19, 0));
  EXPECT_EQ(a.tree, b.tree);
  EXPECT_LE(a.tree.size(), 19u);
}

TEST(GreedyLearner, StepBudget) {
  const auto f = testing::parity_n(3);
  auto task = task_for(f, uniform(f), 8, 8, 0);
  task.step_budget = 5;
  const auto res = greedy_learner(task);
  EXPECT_TRUE(res.budget_exhausted);
}

TEST(OracleLearner, EpsOneGivesLeaf) {
  const Gadget gadget(k3(), 1);
  const auto f = gadget.hard_support();
  const auto pmf = canonical_hard_pmf(f).pmf;
  DtOracle oracle;
  const auto res = oracle_learner(task_for(f, pmf, 1, 1, 1), OracleTarget{f, pmf, 1}, oracle);
  EXPECT_EQ(res.tree.size(), 1u);
  EXPECT_FALSE(res.flagged);
}

TEST(OracleLearner, YesCaseMeetsContract) {
  const Gadget gadget(k3(), 1);
  const auto f = gadget.hard_support();
  const auto pmf = canonical_hard_pmf(f).pmf;
  DtOracle oracle;
  const auto s = exact_dtsize(f).size;
  const auto res = oracle_learner(task_for(f, pmf, s, s, 0), OracleTarget{f, pmf, 1}, oracle);
  EXPECT_LE(res.tree.size(), s);
  EXPECT_EQ(error_exact(res.tree, f, pmf), 0);
  EXPECT_EQ(res.method, "exact");
}

TEST(OracleLearner, InfeasibleIsFlagged) {
  const Gadget gadget(k3(), 1);
  const auto f = gadget.hard_support();
  const auto pmf = canonical_hard_pmf(f).pmf;
  DtOracle oracle;
  const auto res = oracle_learner(task_for(f, pmf, 4, 4, 0), OracleTarget{f, pmf, 1}, oracle);
  EXPECT_TRUE(res.flagged);
  EXPECT_LE(res.tree.size(), 4u);
  EXPECT_EQ(error_exact(res.tree, f, pmf), oracle.pareto(f, pmf).min_error(4));
}

TEST(OracleLearner, RandomYesCases) {
  CounterRng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = random_partial_fn(rng, 4, 10);
    const auto pmf = uniform(f);
    DtOracle oracle;
    const Rational eps = make_rational(trial % 4, 8);
    const auto s = oracle.pareto(f, pmf).min_size(eps);
    const auto res = oracle_learner(task_for(f, pmf, s, s + trial % 3, eps), OracleTarget{f, pmf, 1}, oracle);
    EXPECT_FALSE(res.flagged);
    EXPECT_LE(res.tree.size(), s + trial % 3);
    EXPECT_LE(error_exact(res.tree, f, pmf), eps);
  }
}

TEST(OracleLearner, StacksPastTheCap) {
  const Gadget gadget(k3(), 1);
  const auto f = gadget.hard_support();
  const auto pmf = canonical_hard_pmf(f).pmf;
  DtOracle oracle(OracleCaps{100, 32, 10000});
  auto sampler = std::make_shared<Sampler>(pmf, 2);
  auto task = task_for(f, pmf, 121, 121, 0);
  task.width = 2 * f.width();
  task.sample = [sampler](CounterRng& rng) { return (*sampler)(rng); };
  const auto res = oracle_learner(task, OracleTarget{f, pmf, 2}, oracle);
  EXPECT_EQ(res.method, "stacked");
  EXPECT_EQ(res.tree.size(), 121u);
  EXPECT_FALSE(res.flagged);
  EXPECT_TRUE(is_exact_on(res.tree, xor_power(f, 2)));
  task.eps = make_rational(1, 10);
  EXPECT_THROW(oracle_learner(task, OracleTarget{f, pmf, 2}, oracle), Error);
}

TEST(DecideVc, DegreePrecheck) {
  VcRunOptions options;
  const auto tr = decide_vc(k3(), 1, ReductionParams{}, options);
  EXPECT_TRUE(tr.degree_precheck_no);
  EXPECT_FALSE(tr.yes);
}

TEST(DecideVc, K3YesPlain) {
  const auto params = choose_params_kst(k3(), 2, make_rational(1, 10), 1, 0);
  const auto tr = decide_vc(k3(), 2, params, VcRunOptions{});
  EXPECT_TRUE(tr.yes);
  EXPECT_EQ(tr.error_mode, "exact");
  EXPECT_EQ(tr.eps_hyp, 0);
  EXPECT_LE(tr.hypothesis_size, 49u);
}

TEST(DecideVc, RejectsForeignParams) {
  const auto params = choose_params_kst(k3(), 2, make_rational(1, 10), 1, 0);
  const Graph path(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(decide_vc(path, 2, params, VcRunOptions{}), Error);
}

TEST(DecideVc, GreedyRunsOnK3) {
  const auto params = choose_params_kst(k3(), 2, make_rational(1, 10), 1, 0);
  VcRunOptions options;
  options.learner = LearnerKind::Greedy;
  const auto tr = decide_vc(k3(), 2, params, options);
  EXPECT_EQ(tr.learner_method, "greedy");
  EXPECT_LE(Rational(tr.hypothesis_size), tr.size_threshold);
}

TEST(AuditGap, Classes) {
  EXPECT_EQ(audit_gap(k3(), 2, 1), GapClass::Yes);
  const auto tu = gen_graph(GraphKind::TriangleUnion, 6, 0);
  EXPECT_EQ(audit_gap(tu, 3, make_rational(1, 3)), GapClass::GappedNo);
  EXPECT_EQ(audit_gap(tu, 3, 1), GapClass::Middle);
}

TEST(DatasetMin, K3Anchor) {
  const auto inst = emit_dataset_min(k3(), 1, 1);
  EXPECT_LE(inst.tree.size(), 21u);
  EXPECT_EQ(inst.domain.size(), 15u);
  std::size_t sixths = 0;
  std::size_t quarters = 0;
  for (const auto& m : inst.pmf.support()) {
    if (m.p == make_rational(1, 6)) ++sixths;
    if (m.p == make_rational(1, 24)) ++quarters;
  }
  EXPECT_EQ(sixths, 3u);
  EXPECT_EQ(quarters, 12u);
  EXPECT_TRUE(inst.pmf.supported_by(inst.domain));
}

TEST(DatasetMin, Verdicts) {
  const auto inst = emit_dataset_min(k3(), 1, 1);
  const auto self = check_dataset_min(inst, inst.tree);
  EXPECT_EQ(self.agreement, 1);
  EXPECT_TRUE(self.passes);
  const auto zero = check_dataset_min(inst, DecisionTree::leaf(false));
  EXPECT_EQ(zero.agreement, make_rational(1, 2));
  EXPECT_FALSE(zero.passes);
}

TEST(DatasetMin, StackedAndRoundTrip) {
  const auto inst = emit_dataset_min(k3(), 1, 2, make_rational(1, 100));
  EXPECT_EQ(inst.domain.size(), 225u);
  std::stringstream buf;
  buf << instance_to_json(inst).dump();
  const auto back = instance_from_json(read_json(buf));
  EXPECT_EQ(back.tree, inst.tree);
  EXPECT_EQ(back.domain, inst.domain);
  EXPECT_EQ(back.eps, inst.eps);
  EXPECT_EQ(check_dataset_min(back, back.tree).agreement, 1);
}

TEST(Io, TreeRoundTrip) {
  CounterRng rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto t = random_tree(rng, 5, 1 + i % 9);
    EXPECT_EQ(tree_from_json(tree_to_json(t), 5), t);
  }
}

TEST(Io, FnAndPmfRoundTrip) {
  const auto f = fn({{"010", 0}, {"011", 1}, {"101", 0}});
  EXPECT_EQ(fn_from_json(fn_to_json(f), 3), f);
  const auto pmf = canonical_hard_pmf(Gadget(k3(), 1).hard_support()).pmf;
  const auto back = pmf_from_json(pmf_to_json(pmf));
  ASSERT_EQ(back.size(), pmf.size());
  for (const auto& m : pmf.support()) EXPECT_EQ(back.mass(m.x), m.p);
}

TEST(Io, MalformedInputIsParseError) {
  std::stringstream bad("{\"width\": 2, ");
  try {
    read_json(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
  }
  const Json missing = Json::parse(R"({"q":0,"0":{"leaf":1}})");
  EXPECT_THROW(tree_from_json(missing), Error);
  const Json wide = Json::parse(R"({"q":3,"0":{"leaf":0},"1":{"leaf":1}})");
  EXPECT_NO_THROW(tree_from_json(wide));
  EXPECT_THROW(tree_from_json(wide, 2), Error);
  EXPECT_EQ(tree_to_json(tree_from_json(wide)).dump(), R"({"q":3,"0":{"leaf":0},"1":{"leaf":1}})");
}

TEST(Io, TranscriptCarriesDecision) {
  const auto params = choose_params_kst(k3(), 2, make_rational(1, 10), 1, 0);
  const auto j = transcript_to_json(decide_vc(k3(), 2, params, VcRunOptions{}));
  EXPECT_EQ(j.at("decision"), "YES");
  EXPECT_EQ(j.at("params").at("ell"), 7);
  EXPECT_EQ(j.at("params").at("s"), "49");
}

}  // namespace
}  // namespace dtlab
