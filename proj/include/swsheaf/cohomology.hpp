#pragma once

// H^0 and H^1 of a switching sheaf, with H^0 basis sections classified as
// lifts of quiescent logic states or as transient superpositions.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swsheaf/gf2.hpp"
#include "swsheaf/netlist.hpp"
#include "swsheaf/random_circuits.hpp"
#include "swsheaf/sheaf.hpp"

namespace swsheaf {

enum class SectionClass { QlsLift, Transient };

inline std::string_view to_string(SectionClass c) { return c == SectionClass::QlsLift ? "QLS_LIFT" : "TRANSIENT"; }

struct Section {
  GF2Vector c0;
  std::vector<EdgeValue> per_edge;  // indexed like Netlist::edges
  SectionClass classification = SectionClass::Transient;
  std::string label;

  friend bool operator==(const Section&, const Section&) = default;
};

// Sum of the nonzero basis tensors, e.g. "~a+~c+~d*e". Zero-input gates
// render their unit tensor as "[id]".
inline std::string section_label(const CechComplex& cx, const GF2Vector& c0) {
  std::string s;
  for (const auto& b : cx.vertices()) {
    const auto names = cx.factor_names(b.gate);
    for (std::size_t k = 0; k < b.dim; ++k) {
      if (!c0.get(b.offset + k)) continue;
      if (!s.empty()) s += '+';
      s += names.empty() ? "[" + cx.netlist().gates[b.gate].id + "]" : tensor_label(names, k);
    }
  }
  return s.empty() ? "0" : s;
}

// Every vertex component is a single basis tensor.
inline bool vertex_components_pure(const CechComplex& cx, const GF2Vector& c0) {
  return std::all_of(cx.vertices().begin(), cx.vertices().end(),
                     [&](const auto& b) { return cx.vertex_component(c0, b.gate).popcount() == 1; });
}

inline std::vector<EdgeValue> edge_values(const CechComplex& cx, const GF2Vector& c0) {
  std::vector<EdgeValue> out;
  out.reserve(cx.netlist().edges.size());
  for (std::size_t e = 0; e < cx.netlist().edges.size(); ++e) {
    out.push_back(decode_edge_value(restrict_section_to_edge(cx, c0, e)));
  }
  return out;
}

// A kernel element is a QLS lift iff every vertex component is a basis tensor
// and every edge restriction is one-hot.
inline Section classify_section(const CechComplex& cx, GF2Vector c0) {
  if (!(cx.d0() * c0).is_zero()) throw SectionMismatch("cochain is not in ker d0");
  Section s;
  s.per_edge = edge_values(cx, c0);
  const bool one_hot_edges = std::all_of(s.per_edge.begin(), s.per_edge.end(), is_one_hot);
  s.classification = one_hot_edges && vertex_components_pure(cx, c0) ? SectionClass::QlsLift : SectionClass::Transient;
  s.label = section_label(cx, c0);
  s.c0 = std::move(c0);
  return s;
}

// The 0-cochain whose component at each gate is the pure tensor of the one-hot
// input values. Does not check the gate equations.
inline GF2Vector lift_assignment(const CechComplex& cx, const EdgeAssignment& s) {
  const Netlist& n = cx.netlist();
  if (s.size() != n.edges.size()) throw std::invalid_argument("assignment length differs from edge count");
  GF2Vector c0(cx.c0_dim());
  for (const auto& b : cx.vertices()) {
    std::vector<bool> inputs;
    for (std::size_t p = 0; p < n.gates[b.gate].num_inputs; ++p) {
      const auto& e = cx.topology().input_edge(b.gate, p);
      if (!e) throw std::invalid_argument("cannot lift: unconnected input pin on '" + n.gates[b.gate].id + "'");
      inputs.push_back(s[*e]);
    }
    c0.set(b.offset + pure_tensor_index(inputs), true);
  }
  return c0;
}

inline Section lift_qls(const CechComplex& cx, const EdgeAssignment& s) {
  if (!is_qls(cx.netlist(), s)) throw std::invalid_argument("assignment is not a quiescent logic state");
  return classify_section(cx, lift_assignment(cx, s));
}

inline Section lift_qls(const Netlist& n, const EdgeAssignment& s) { return lift_qls(assemble_complex(n), s); }

// Nonzero on every vertex and every edge.
inline bool nonvanishing(const CechComplex& cx, const Section& s) {
  const bool edges_ok =
      std::none_of(s.per_edge.begin(), s.per_edge.end(), [](EdgeValue v) { return v == EdgeValue::Zero; });
  const bool vertices_ok = std::all_of(cx.vertices().begin(), cx.vertices().end(),
                                       [&](const auto& b) { return cx.vertex_component(s.c0, b.gate).any(); });
  return edges_ok && vertices_ok;
}

enum class CheckStatus { Passed, Failed, Skipped, Unavailable };

inline std::string_view to_string(CheckStatus c) {
  switch (c) {
    case CheckStatus::Passed: return "passed";
    case CheckStatus::Failed: return "failed";
    case CheckStatus::Skipped: return "skipped";
    case CheckStatus::Unavailable: return "unavailable";
  }
  return "?";
}

struct CohomologyOptions {
  bool run_oracle = true;
  std::size_t oracle_cap = kDefaultOracleCap;
  // Exhaustive enumeration of ker d0 for the converse check is limited to
  // kernels of at most this dimension.
  std::size_t reverse_check_max_dim = 16;
};

struct CohomologyReport {
  std::size_t dim_c0 = 0;
  std::size_t dim_c1 = 0;
  std::size_t dim_h0 = 0;
  std::size_t dim_h1 = 0;
  std::vector<std::string> edge_ids;
  std::vector<std::string> c1_labels;
  std::vector<Section> h0_basis;
  std::vector<GF2Vector> h1_generators;  // coset representatives in C1
  std::optional<std::vector<EdgeAssignment>> qls;  // nullopt when the oracle did not run
  std::optional<bool> qls_lift_check;
  CheckStatus forward_check = CheckStatus::Unavailable;
  CheckStatus reverse_check = CheckStatus::Unavailable;
  std::string oracle_note;

  std::optional<std::size_t> qls_count() const {
    return qls ? std::optional<std::size_t>(qls->size()) : std::nullopt;
  }
  std::size_t qls_lift_sections() const {
    return static_cast<std::size_t>(std::count_if(h0_basis.begin(), h0_basis.end(), [](const Section& s) {
      return s.classification == SectionClass::QlsLift;
    }));
  }

  friend bool operator==(const CohomologyReport&, const CohomologyReport&) = default;
};

namespace detail {

// Calls visit(v) for every element of span(basis), in Gray-code order.
template <typename Visit>
void for_each_span_element(const std::vector<GF2Vector>& basis, std::size_t dim, Visit&& visit) {
  GF2Vector v(dim);
  visit(v);
  const std::uint64_t total = std::uint64_t{1} << basis.size();
  for (std::uint64_t i = 1; i < total; ++i) {
    v ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    visit(v);
  }
}

}  // namespace detail

// Forward direction: every QLS lifts into ker d0 and is nonvanishing.
inline bool check_qls_lift_forward(const CechComplex& cx, const std::vector<EdgeAssignment>& states) {
  return std::all_of(states.begin(), states.end(), [&](const EdgeAssignment& s) {
    const GF2Vector v = lift_assignment(cx, s);
    if (!(cx.d0() * v).is_zero()) return false;
    const Section sec = classify_section(cx, v);
    return sec.classification == SectionClass::QlsLift && nonvanishing(cx, sec);
  });
}

// Converse: every kernel element classified as a QLS lift (basis tensors at
// vertices, one-hot on edges) is the lift of an oracle QLS.
inline CheckStatus check_qls_lift_reverse(const CechComplex& cx, const std::vector<GF2Vector>& kernel,
                                          const std::vector<EdgeAssignment>& states, std::size_t max_dim) {
  if (kernel.size() > max_dim || kernel.size() >= 63) return CheckStatus::Skipped;
  std::set<std::string> lifts;
  for (const auto& s : states) lifts.insert(lift_assignment(cx, s).to_string());
  bool ok = true;
  detail::for_each_span_element(kernel, cx.c0_dim(), [&](const GF2Vector& v) {
    if (!ok || !vertex_components_pure(cx, v)) return;
    for (std::size_t e = 0; e < cx.netlist().edges.size(); ++e) {
      if (!is_one_hot(decode_edge_value(restrict_section_to_edge(cx, v, e)))) return;
    }
    if (!lifts.contains(v.to_string())) ok = false;
  });
  return ok ? CheckStatus::Passed : CheckStatus::Failed;
}

// Kernel elements that are one-hot on every edge yet are not QLS lifts (their
// vertex components are superpositions invisible on the wires). Returns
// nullopt when the kernel is too large to enumerate.
inline std::optional<std::vector<GF2Vector>> edge_one_hot_non_lifts(const CechComplex& cx,
                                                                    const std::vector<GF2Vector>& kernel,
                                                                    const std::vector<EdgeAssignment>& states,
                                                                    std::size_t max_dim = 16) {
  if (kernel.size() > max_dim) return std::nullopt;
  std::set<std::string> lifts;
  for (const auto& s : states) lifts.insert(lift_assignment(cx, s).to_string());
  std::vector<GF2Vector> out;
  detail::for_each_span_element(kernel, cx.c0_dim(), [&](const GF2Vector& v) {
    for (std::size_t e = 0; e < cx.netlist().edges.size(); ++e) {
      if (!is_one_hot(decode_edge_value(restrict_section_to_edge(cx, v, e)))) return;
    }
    if (!lifts.contains(v.to_string())) out.push_back(v);
  });
  return out;
}

inline CohomologyReport compute_cohomology(const CechComplex& cx, const CohomologyOptions& opts = {}) {
  CohomologyReport r;
  const GF2Matrix& d0 = cx.d0();
  const std::vector<GF2Vector> kernel = kernel_basis(d0);
  r.dim_c0 = d0.cols();
  r.dim_c1 = d0.rows();
  r.dim_h0 = kernel.size();
  r.h1_generators = cokernel_basis(d0);
  r.dim_h1 = r.h1_generators.size();
  for (const auto& e : cx.netlist().edges) r.edge_ids.push_back(e.id);
  r.c1_labels = cx.row_labels();
  r.h0_basis.reserve(kernel.size());
  for (const auto& k : kernel) r.h0_basis.push_back(classify_section(cx, k));

  if (!opts.run_oracle) {
    r.oracle_note = "oracle disabled";
    return r;
  }
  try {
    r.qls = qls_oracle(cx.netlist(), opts.oracle_cap);
  } catch (const OracleCapExceeded& e) {
    r.oracle_note = e.what();
    return r;
  } catch (const NetlistError& e) {
    r.oracle_note = e.what();
    return r;
  }
  const bool forward = check_qls_lift_forward(cx, *r.qls);
  r.forward_check = forward ? CheckStatus::Passed : CheckStatus::Failed;
  r.reverse_check = check_qls_lift_reverse(cx, kernel, *r.qls, opts.reverse_check_max_dim);
  r.qls_lift_check = forward && r.reverse_check != CheckStatus::Failed;
  return r;
}

inline CohomologyReport compute_cohomology(const Netlist& n, const CohomologyOptions& opts = {}) {
  return compute_cohomology(assemble_complex(n), opts);
}

// dim H^0 - dim H^1 must equal dim C0 - dim C1.
inline bool euler_characteristic_holds(const CohomologyReport& r) {
  return static_cast<long long>(r.dim_h0) - static_cast<long long>(r.dim_h1) ==
         static_cast<long long>(r.dim_c0) - static_cast<long long>(r.dim_c1);
}

// ---------------------------------------------------------------------------
// Trees

// Internal edges form a spanning tree of the gates (connected, acyclic, no
// self-loops); external edges are ignored.
inline bool is_tree(const Netlist& n) {
  if (n.gates.empty()) return false;
  if (n.internal_edge_count() + 1 != n.gates.size()) return false;
  const Topology topo = Topology::build(n);
  std::vector<std::size_t> parent(n.gates.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < n.edges.size(); ++e) {
    if (!n.edges[e].is_internal()) continue;
    const std::size_t a = find(*topo.source_gate(e));
    const std::size_t b = find(*topo.sink_gate(e));
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

class NotATree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TreeCheck {
  std::size_t predicted = 0;
  std::size_t computed = 0;
  std::size_t computed_h1 = 0;

  bool holds() const { return predicted == computed && computed_h1 == 0; }
};

// dim H^0 over a tree is sum_i 2^{m_i} - 2(n-1), and H^1 vanishes.
inline TreeCheck tree_formula_check(const Netlist& n) {
  if (!is_tree(n)) throw NotATree("internal edges of the netlist do not form a tree");
  TreeCheck t;
  for (const auto& g : n.gates) t.predicted += g.stalk_dim();
  t.predicted -= 2 * (n.gates.size() - 1);
  const CechComplex cx = assemble_complex(n);
  const std::size_t r = rank(cx.d0());
  t.computed = cx.c0_dim() - r;
  t.computed_h1 = cx.c1_dim() - r;
  return t;
}

// ---------------------------------------------------------------------------
// Basis-of-lifted-QLS experiment on directed trees

enum class ConjectureVerdict { Pass, Fail, Skipped };

inline std::string_view to_string(ConjectureVerdict v) {
  switch (v) {
    case ConjectureVerdict::Pass: return "pass";
    case ConjectureVerdict::Fail: return "fail";
    case ConjectureVerdict::Skipped: return "skipped";
  }
  return "?";
}

struct ConjectureTrial {
  std::size_t index = 0;
  std::size_t gates = 0;
  std::size_t edges = 0;
  std::size_t dim_h0 = 0;
  std::size_t qls_count = 0;
  std::size_t qls_span_dim = 0;
  ConjectureVerdict verdict = ConjectureVerdict::Skipped;
  std::string netlist_text;  // recorded for failures
};

struct ConjectureReport {
  std::uint64_t seed = 0;
  std::size_t max_gates = 0;
  std::vector<ConjectureTrial> trials;

  std::size_t count(ConjectureVerdict v) const {
    return static_cast<std::size_t>(
        std::count_if(trials.begin(), trials.end(), [v](const ConjectureTrial& t) { return t.verdict == v; }));
  }
};

// Does span(lifted QLS) equal ker d0?
inline ConjectureTrial evaluate_lifted_qls_basis(const Netlist& n, std::size_t oracle_cap = kDefaultOracleCap) {
  ConjectureTrial t;
  t.gates = n.gates.size();
  t.edges = n.edges.size();
  const CechComplex cx = assemble_complex(n);
  t.dim_h0 = cx.c0_dim() - rank(cx.d0());
  std::vector<EdgeAssignment> states;
  try {
    states = qls_oracle(n, oracle_cap);
  } catch (const OracleCapExceeded&) {
    t.verdict = ConjectureVerdict::Skipped;
    return t;
  }
  std::vector<GF2Vector> lifts;
  for (const auto& s : states) lifts.push_back(lift_assignment(cx, s));
  t.qls_count = states.size();
  t.qls_span_dim = span_dimension(lifts, cx.c0_dim());
  t.verdict = t.qls_span_dim == t.dim_h0 ? ConjectureVerdict::Pass : ConjectureVerdict::Fail;
  if (t.verdict == ConjectureVerdict::Fail) t.netlist_text = write_netlist(n);
  return t;
}

// Random directed trees with 1..max_gates gates and random truth tables; each
// trial records whether the lifted QLS span H^0. Failures are reported, not
// raised.
inline ConjectureReport dag_conjecture_experiment(std::size_t trials, std::size_t max_gates, std::uint64_t seed) {
  ConjectureReport rep;
  rep.seed = seed;
  rep.max_gates = max_gates;
  if (max_gates == 0) return rep;
  CircuitRng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t gates = 1 + rng.below(max_gates);
    const Netlist n = random_tree_netlist(rng, gates);
    ConjectureTrial t = evaluate_lifted_qls_basis(n);
    t.index = i;
    rep.trials.push_back(std::move(t));
  }
  return rep;
}

}  // namespace swsheaf
