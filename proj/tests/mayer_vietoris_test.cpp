#include <gtest/gtest.h>

#include <vector>

#include "swsheaf/circuits.hpp"
#include "swsheaf/mayer_vietoris.hpp"
#include "swsheaf/paper_suite.hpp"
#include "swsheaf/random_circuits.hpp"

namespace swsheaf {
namespace {

MVLedger with_gates(std::initializer_list<Gate> gates) {
  MVLedger l;
  for (const auto& g : gates) l = add_gate(std::move(l), g);
  return l;
}

std::size_t stalk_total(const Netlist& n) {
  std::size_t d = 0;
  for (const auto& g : n.gates) d += g.stalk_dim();
  return d;
}

TEST(AddGate, TwoInputGate) {
  const MVLedger l = with_gates({make_builtin("g", "AND")});
  EXPECT_EQ(l.dim_h0(), 4u);
  EXPECT_EQ(l.dim_h1(), 0u);
}

TEST(AddGate, AfterRsFlipFlop) {
  const Netlist rs = circuits::rs_flip_flop();
  MVLedger l = with_gates({rs.gates[0]});
  l = attach_wire(std::move(l), {"ff", 0}, {"ff", 2}, "c").ledger;
  ASSERT_EQ(l.dim_h0(), 7u);
  l = add_gate(std::move(l), make_builtin("n", "NOT"));
  EXPECT_EQ(l.dim_h0(), 9u);
  EXPECT_EQ(l.dim_h1(), 1u);
}

TEST(AddGate, ConstantAndDuplicate) {
  MVLedger l = with_gates({make_builtin("g", "AND")});
  l = add_gate(std::move(l), make_table_gate("k", 0, 1, {0}));
  EXPECT_EQ(l.dim_h0(), 5u);
  EXPECT_THROW(add_gate(l, make_builtin("g", "NOT")), std::invalid_argument);
}

TEST(AttachWire, RsFlipFlopMatrices) {
  const auto w = attach_wire(with_gates({circuits::rs_flip_flop().gates[0]}), {"ff", 0}, {"ff", 2}, "c");
  EXPECT_EQ(w.p, golden::rs_p());
  EXPECT_EQ(w.q, golden::rs_q());
  EXPECT_EQ(w.delta.rows(), 4u);
  EXPECT_EQ(w.delta.cols(), 10u);
  EXPECT_EQ(w.rank_delta, 3u);
  EXPECT_EQ(w.feedback, FeedbackClass::Partial);
  EXPECT_EQ(w.ledger.dim_h0(), 7u);
  EXPECT_EQ(w.ledger.dim_h1(), 1u);
}

TEST(AttachWire, BufSelfWireComplete) {
  const auto w = attach_wire(with_gates({make_builtin("b", "BUF")}), {"b", 0}, {"b", 0});
  EXPECT_EQ(w.p, GF2Matrix::identity(2));
  EXPECT_EQ(w.q, GF2Matrix::identity(2));
  EXPECT_EQ(w.rank_delta, 2u);
  EXPECT_EQ(w.feedback, FeedbackClass::Complete);
  EXPECT_EQ(w.ledger.dim_h0(), 2u);
  EXPECT_EQ(w.ledger.dim_h1(), 2u);
}

TEST(AttachWire, DisjointGatesNone) {
  const auto w = attach_wire(with_gates({make_builtin("b", "BUF"), make_builtin("g", "AND")}), {"b", 0}, {"g", 0});
  EXPECT_EQ(w.rank_delta, 4u);
  EXPECT_EQ(w.feedback, FeedbackClass::None);
  EXPECT_EQ(w.ledger.dim_h0(), 4u);
  EXPECT_EQ(w.ledger.dim_h1(), 0u);
}

TEST(AttachWire, Errors) {
  MVLedger l = with_gates({make_builtin("b", "BUF"), make_builtin("g", "AND")});
  EXPECT_THROW(attach_wire(l, {"x", 0}, {"g", 0}), WireError);
  EXPECT_THROW(attach_wire(l, {"b", 1}, {"g", 0}), WireError);
  EXPECT_THROW(attach_wire(l, {"b", 0}, {"g", 2}), WireError);
  l = attach_wire(std::move(l), {"b", 0}, {"g", 0}).ledger;
  EXPECT_THROW(attach_wire(l, {"b", 0}, {"g", 1}), WireError);
  EXPECT_THROW(attach_wire(l, {"g", 0}, {"g", 0}), WireError);
}

TEST(Replay, Glitch) {
  const auto r = replay(circuits::glitch());
  EXPECT_EQ(r.ledger.dim_h0(), 3u);
  EXPECT_EQ(r.ledger.dim_h1(), 1u);
  std::vector<FeedbackClass> wires;
  for (const auto& s : r.ledger.history()) {
    if (s.kind == MVStep::Kind::Wire) wires.push_back(*s.feedback);
  }
  EXPECT_EQ(wires, (std::vector<FeedbackClass>{FeedbackClass::None, FeedbackClass::None, FeedbackClass::Partial}));
}

TEST(Replay, RsFlipFlop) {
  const auto r = replay(circuits::rs_flip_flop());
  EXPECT_EQ(r.ledger.dim_h0(), 7u);
  EXPECT_EQ(r.ledger.dim_h1(), 1u);
  EXPECT_EQ(r.ledger.history().back().feedback, FeedbackClass::Partial);
}

TEST(Replay, TreesHaveNoFeedback) {
  CircuitRng rng(41);
  for (int t = 0; t < 40; ++t) {
    const auto r = replay(random_tree_netlist(rng, 1 + rng.below(6)), {.run_oracle = false});
    for (const auto& s : r.ledger.history()) {
      if (s.kind == MVStep::Kind::Wire) {
        ASSERT_EQ(s.feedback, FeedbackClass::None);
      }
    }
    ASSERT_EQ(r.ledger.dim_h1(), 0u);
  }
}

TEST(Replay, RejectsInvalid) {
  Netlist n = circuits::and_gate();
  n.edges.pop_back();
  EXPECT_THROW(replay(n), NetlistError);
}

// Monotone H1, the dimension table, Euler bookkeeping, rank bounds.
TEST(ReplayProperties, RandomNetlists) {
  CircuitRng rng(43);
  for (int t = 0; t < 60; ++t) {
    const Netlist n = random_netlist(rng, 3 + rng.below(4));
    const auto r = replay(n, {.run_oracle = false});
    ASSERT_EQ(r.ledger.dim_h0(), r.report.dim_h0);
    ASSERT_EQ(r.ledger.dim_h1(), r.report.dim_h1);
    std::size_t prev_h0 = 0, prev_h1 = 0, stalks = 0, wires = 0;
    for (const auto& s : r.ledger.history()) {
      ASSERT_GE(s.dim_h1, prev_h1);
      if (s.kind == MVStep::Kind::Gate) {
        const Gate& g = n.gates[*n.find_gate(s.id)];
        stalks += g.stalk_dim();
        ASSERT_EQ(s.dim_h0, prev_h0 + g.stalk_dim());
        ASSERT_EQ(s.dim_h1, prev_h1);
      } else {
        ++wires;
        ASSERT_GE(*s.rank_delta, 2u);
        ASSERT_LE(*s.rank_delta, 4u);
        const std::size_t drop = *s.rank_delta - 2;
        ASSERT_EQ(s.dim_h0 + drop, prev_h0);
        ASSERT_EQ(s.dim_h1, prev_h1 + 2 - drop);
      }
      ASSERT_EQ(static_cast<long long>(s.dim_h0) - static_cast<long long>(s.dim_h1),
                static_cast<long long>(stalks) - 2 * static_cast<long long>(wires));
      prev_h0 = s.dim_h0;
      prev_h1 = s.dim_h1;
    }
  }
}

// The feedback class of a wire does not depend on which basis of H0 the
// ledger carries.
TEST(ReplayProperties, FeedbackClassBasisInvariant) {
  CircuitRng rng(47);
  for (int t = 0; t < 40; ++t) {
    const Netlist n = random_netlist(rng, 2 + rng.below(4));
    MVLedger l;
    for (const auto& g : n.gates) l = add_gate(std::move(l), g);
    for (const auto& e : n.edges) {
      if (!e.is_internal()) continue;
      // Random invertible change of basis: add random earlier vectors.
      std::vector<GF2Vector> b = l.h0_basis();
      for (std::size_t i = 1; i < b.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (rng.coin()) b[i] ^= b[j];
        }
      }
      rng.shuffle(b);
      const auto direct = attach_wire(l, *e.source, *e.sink, e.id);
      const auto rebased = attach_wire(rebase(l, b), *e.source, *e.sink, e.id);
      ASSERT_EQ(direct.rank_delta, rebased.rank_delta);
      ASSERT_TRUE(same_span(direct.ledger.h0_basis(), rebased.ledger.h0_basis(), stalk_total(l.fragment())));
      l = direct.ledger;
    }
  }
}

TEST(Rebase, RejectsOtherSpaces) {
  const MVLedger l = with_gates({make_builtin("b", "BUF")});
  EXPECT_THROW(rebase(l, {GF2Vector::unit(2, 0)}), std::invalid_argument);
  EXPECT_THROW(rebase(l, {GF2Vector::unit(2, 0), GF2Vector::unit(2, 0)}), std::invalid_argument);
  EXPECT_NO_THROW(rebase(l, {GF2Vector::from_string("11"), GF2Vector::unit(2, 0)}));
}

TEST(FeedbackClass, FromRank) {
  EXPECT_EQ(feedback_from_rank(2), FeedbackClass::Complete);
  EXPECT_EQ(feedback_from_rank(3), FeedbackClass::Partial);
  EXPECT_EQ(feedback_from_rank(4), FeedbackClass::None);
  EXPECT_THROW(feedback_from_rank(1), std::logic_error);
}

}  // namespace
}  // namespace swsheaf
