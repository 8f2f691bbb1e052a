#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "swsheaf/circuits.hpp"
#include "swsheaf/cohomology.hpp"
#include "swsheaf/paper_suite.hpp"
#include "swsheaf/random_circuits.hpp"

namespace swsheaf {
namespace {

EdgeAssignment find_state(const Netlist& n, const std::vector<std::pair<std::string, bool>>& fixed) {
  for (const auto& s : qls_oracle(n)) {
    bool match = true;
    for (const auto& [id, v] : fixed) match = match && s[*n.find_edge(id)] == v;
    if (match) return s;
  }
  throw std::runtime_error("no such state");
}

// A constant-1 source feeding pin 0 of an AND whose pin 1 is external.
Netlist constant_into_and() {
  Netlist n;
  n.gates.push_back(make_table_gate("k", 0, 1, {1}));
  n.gates.push_back(make_builtin("g", "AND"));
  n.edges = {circuits::wire("w", "k", 0, "g", 0), circuits::input("b", "g", 1), circuits::output("y", "g", 0)};
  return n;
}

TEST(LiftQls, GlitchLowInput) {
  const Netlist n = circuits::glitch();
  const Section s = lift_qls(n, find_state(n, {{"a", false}}));
  EXPECT_EQ(s.c0, GF2Vector::from_string("10100100"));
  EXPECT_EQ(s.label, "~a+~c+~d*e");
  EXPECT_EQ(s.classification, SectionClass::QlsLift);
  const auto cx = assemble_complex(n);
  EXPECT_EQ(s.per_edge[*n.find_edge("a")], EdgeValue::Logic0);
  EXPECT_EQ(s.per_edge[*n.find_edge("c")], EdgeValue::Logic0);
  EXPECT_EQ(s.per_edge[*n.find_edge("d")], EdgeValue::Logic0);
  EXPECT_EQ(s.per_edge[*n.find_edge("e")], EdgeValue::Logic1);
  EXPECT_TRUE(nonvanishing(cx, s));
}

TEST(LiftQls, RsReset) {
  const Netlist n = circuits::rs_flip_flop();
  const Section s = lift_qls(n, find_state(n, {{"a", true}, {"b", false}}));
  EXPECT_EQ(s.c0, GF2Vector::unit(8, 4));
  EXPECT_EQ(s.label, "a*~b*~c");
}

TEST(LiftQls, EmptyNetlist) {
  const Section s = lift_qls(Netlist{}, {});
  EXPECT_EQ(s.c0.size(), 0u);
  EXPECT_EQ(s.classification, SectionClass::QlsLift);
}

TEST(LiftQls, RejectsNonState) {
  EXPECT_THROW(lift_qls(circuits::and_gate(), {true, true, false}), std::invalid_argument);
  EXPECT_THROW(lift_qls(circuits::and_gate(), {true}), std::invalid_argument);
}

TEST(Compute, Glitch) {
  const auto r = compute_cohomology(circuits::glitch());
  EXPECT_EQ(r.dim_h0, 3u);
  EXPECT_EQ(r.dim_h1, 1u);
  EXPECT_EQ(r.qls_count(), 2u);
  EXPECT_EQ(r.qls_lift_sections(), 2u);
  EXPECT_EQ(r.qls_lift_check, true);
  EXPECT_EQ(r.forward_check, CheckStatus::Passed);
  EXPECT_EQ(r.reverse_check, CheckStatus::Passed);
  std::vector<GF2Vector> basis;
  for (const auto& s : r.h0_basis) basis.push_back(s.c0);
  EXPECT_TRUE(same_span(basis, golden::glitch_h0_basis(), 8));
  // The third listed section is not in the span of the two lifts.
  std::vector<GF2Vector> lifts;
  for (const auto& s : r.h0_basis) {
    if (s.classification == SectionClass::QlsLift) lifts.push_back(s.c0);
  }
  EXPECT_FALSE(in_span(lifts, golden::glitch_h0_basis()[2]));
}

TEST(Compute, RsFlipFlop) {
  const auto r = compute_cohomology(circuits::rs_flip_flop());
  EXPECT_EQ(r.dim_h0, 7u);
  EXPECT_EQ(r.dim_h1, 1u);
  EXPECT_EQ(r.qls_count(), 5u);
  EXPECT_EQ(r.qls_lift_sections(), 5u);
  std::set<std::string> labels;
  for (const auto& s : r.h0_basis) labels.insert(s.label);
  EXPECT_EQ(labels, (std::set<std::string>{"~a*~b*c", "~a*b*c", "a*~b*~c", "a*b*~c", "a*b*c",
                                           "~a*~b*~c+a*~b*c", "~a*~b*~c+~a*b*~c"}));
  std::vector<GF2Vector> basis;
  for (const auto& s : r.h0_basis) basis.push_back(s.c0);
  for (const auto& t : golden::rs_transitions()) EXPECT_TRUE(in_span(basis, t));
}

TEST(Compute, TwoGateComposition) {
  const auto r = compute_cohomology(circuits::two_gate_composition(2, 2));
  EXPECT_EQ(r.dim_h0, 6u);
  EXPECT_EQ(r.dim_h1, 0u);
}

TEST(Compute, NoInternalEdges) {
  Netlist n = circuits::and_gate();
  n.gates.push_back(make_builtin("x", "XOR", 3));
  n.edges.push_back(circuits::input("p", "x", 0));
  n.edges.push_back(circuits::input("q", "x", 1));
  n.edges.push_back(circuits::input("r", "x", 2));
  n.edges.push_back(circuits::output("s", "x", 0));
  const auto r = compute_cohomology(n);
  EXPECT_EQ(r.dim_h0, 12u);
  EXPECT_EQ(r.dim_h1, 0u);
}

TEST(Compute, OracleCapStillReports) {
  const auto r = compute_cohomology(circuits::glitch(), {.oracle_cap = 3});
  EXPECT_EQ(r.dim_h0, 3u);
  EXPECT_FALSE(r.qls.has_value());
  EXPECT_FALSE(r.qls_lift_check.has_value());
  EXPECT_NE(r.oracle_note.find("cap"), std::string::npos);
}

TEST(Compute, DimensionsAgainstBruteForceKernel) {
  CircuitRng rng(17);
  for (int t = 0; t < 80; ++t) {
    const Netlist n = random_netlist(rng, 1 + rng.below(4));
    const CechComplex cx = assemble_complex(n);
    if (cx.c0_dim() > 14) continue;
    const auto r = compute_cohomology(cx, {.run_oracle = false});
    const std::size_t h0 = testing::log2_exact(testing::brute_kernel(cx.d0()).size());
    const std::size_t image = testing::log2_exact(testing::brute_image(cx.d0()).size());
    ASSERT_EQ(r.dim_h0, h0);
    ASSERT_EQ(r.dim_h1, cx.c1_dim() - image);
    ASSERT_TRUE(euler_characteristic_holds(r));
  }
}

TEST(Proposition, BothDirectionsOnRandomCircuits) {
  CircuitRng rng(23);
  for (int t = 0; t < 60; ++t) {
    const Netlist n = random_netlist(rng, 1 + rng.below(5));
    if (n.edges.size() > 16) continue;
    const auto cx = assemble_complex(n);
    const auto r = compute_cohomology(cx);
    ASSERT_EQ(r.forward_check, CheckStatus::Passed) << write_netlist(n);
    ASSERT_NE(r.reverse_check, CheckStatus::Failed) << write_netlist(n);
    for (const auto& s : *r.qls) ASSERT_TRUE(nonvanishing(cx, lift_qls(cx, s)));
    for (const auto& s : r.h0_basis) {
      if (s.classification == SectionClass::QlsLift) {
        ASSERT_TRUE(nonvanishing(cx, s));
      }
    }
  }
}

// Edge values alone do not determine a lift: superposed vertex components can
// still restrict to one-hot vectors on every edge.
TEST(Proposition, EdgeOnlyCriterionIsWeaker) {
  const auto cx = assemble_complex(circuits::and_gate());
  const GF2Vector v = GF2Vector::from_string("1110");  // ~a*~b + ~a*b + a*~b
  EXPECT_EQ(edge_values(cx, v),
            (std::vector<EdgeValue>{EdgeValue::Logic1, EdgeValue::Logic1, EdgeValue::Logic0}));
  EXPECT_FALSE(is_qls(cx.netlist(), {true, true, false}));
  EXPECT_EQ(classify_section(cx, v).classification, SectionClass::Transient);

  const auto kernel = kernel_basis(cx.d0());
  const auto states = qls_oracle(cx.netlist());
  const auto extra = edge_one_hot_non_lifts(cx, kernel, states);
  ASSERT_TRUE(extra.has_value());
  EXPECT_NE(std::find(extra->begin(), extra->end(), v), extra->end());
  EXPECT_EQ(check_qls_lift_reverse(cx, kernel, states, 16), CheckStatus::Passed);

  const auto gx = assemble_complex(circuits::glitch());
  EXPECT_FALSE(edge_one_hot_non_lifts(gx, kernel_basis(gx.d0()), qls_oracle(gx.netlist()))->empty());
}

TEST(Tree, MInput) {
  const auto t = tree_formula_check(circuits::m_input_with_buffer(3));
  EXPECT_EQ(t.predicted, 8u);
  EXPECT_EQ(t.computed, 8u);
  EXPECT_TRUE(t.holds());
}

TEST(Tree, SingleGate) {
  const auto t = tree_formula_check(circuits::and_gate());
  EXPECT_EQ(t.predicted, 4u);
  EXPECT_TRUE(t.holds());
}

TEST(Tree, RandomTrees) {
  CircuitRng rng(31);
  for (int t = 0; t < 100; ++t) {
    const Netlist n = random_tree_netlist(rng, 5);
    ASSERT_TRUE(is_tree(n));
    ASSERT_TRUE(tree_formula_check(n).holds()) << write_netlist(n);
  }
}

TEST(Tree, RejectsNonTrees) {
  EXPECT_THROW(tree_formula_check(circuits::rs_flip_flop()), NotATree);
  EXPECT_THROW(tree_formula_check(Netlist{}), NotATree);
  Netlist two = circuits::and_gate();
  two.gates.push_back(make_builtin("h", "NOT"));
  two.edges.push_back(circuits::input("x", "h", 0));
  two.edges.push_back(circuits::output("y", "h", 0));
  EXPECT_THROW(tree_formula_check(two), NotATree);
}

TEST(Conjecture, EmptyAndWorkedTrees) {
  EXPECT_TRUE(dag_conjecture_experiment(0, 6, 42).trials.empty());
  EXPECT_EQ(evaluate_lifted_qls_basis(circuits::m_input_with_buffer(3)).verdict, ConjectureVerdict::Pass);
  EXPECT_EQ(evaluate_lifted_qls_basis(circuits::two_gate_composition(2, 2)).verdict, ConjectureVerdict::Pass);
}

TEST(Conjecture, ConstantSourceIsCounterexample) {
  const Netlist n = constant_into_and();
  const auto t = evaluate_lifted_qls_basis(n);
  EXPECT_EQ(t.dim_h0, 3u);
  EXPECT_EQ(t.qls_count, 2u);
  EXPECT_EQ(t.verdict, ConjectureVerdict::Fail);
  EXPECT_FALSE(t.netlist_text.empty());
}

TEST(Conjecture, Deterministic) {
  const auto a = dag_conjecture_experiment(30, 6, 42);
  const auto b = dag_conjecture_experiment(30, 6, 42);
  ASSERT_EQ(a.trials.size(), 30u);
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    EXPECT_EQ(a.trials[i].verdict, b.trials[i].verdict);
    EXPECT_EQ(a.trials[i].dim_h0, b.trials[i].dim_h0);
    EXPECT_LE(a.trials[i].qls_span_dim, a.trials[i].dim_h0);
  }
}

}  // namespace
}  // namespace swsheaf
