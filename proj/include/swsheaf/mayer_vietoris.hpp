#pragma once

// Incremental cohomology: gates are added unconnected, then wires are attached
// one at a time. Each attachment is classified by the rank of the
// Mayer-Vietoris difference map
//
//   Delta = [ P  I ]      P: restriction of H^0(A) to the wire's sink input
//           [ Q  I ]      Q: restriction of H^0(A) to the wire's source output
//
// rank 2 = complete feedback, 3 = partial feedback, 4 = no feedback.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swsheaf/cohomology.hpp"
#include "swsheaf/gf2.hpp"
#include "swsheaf/netlist.hpp"
#include "swsheaf/sheaf.hpp"

namespace swsheaf {

enum class FeedbackClass { Complete, Partial, None };

inline std::string_view to_string(FeedbackClass f) {
  switch (f) {
    case FeedbackClass::Complete: return "COMPLETE";
    case FeedbackClass::Partial: return "PARTIAL";
    case FeedbackClass::None: return "NONE";
  }
  return "?";
}

inline FeedbackClass feedback_from_rank(std::size_t rank_delta) {
  switch (rank_delta) {
    case 2: return FeedbackClass::Complete;
    case 3: return FeedbackClass::Partial;
    case 4: return FeedbackClass::None;
    default: throw std::logic_error("difference map rank " + std::to_string(rank_delta) + " outside 2..4");
  }
}

struct MVStep {
  enum class Kind { Gate, Wire };

  std::size_t step = 0;
  Kind kind = Kind::Gate;
  std::string id;
  std::optional<FeedbackClass> feedback;
  std::size_t dim_h0 = 0;
  std::size_t dim_h1 = 0;
  std::optional<std::size_t> rank_delta;

  friend bool operator==(const MVStep&, const MVStep&) = default;
};

class WireError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CrossCheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WireAttachment;

class MVLedger {
 public:
  // The fragment holds the gates added so far and the wires attached so far;
  // external edges are not part of it.
  const Netlist& fragment() const noexcept { return fragment_; }
  const std::vector<GF2Vector>& h0_basis() const noexcept { return h0_basis_; }
  std::size_t dim_h0() const noexcept { return h0_basis_.size(); }
  std::size_t dim_h1() const noexcept { return dim_h1_; }
  const std::vector<MVStep>& history() const noexcept { return history_; }

  std::size_t c0_dim() const noexcept {
    std::size_t d = 0;
    for (const auto& g : fragment_.gates) d += g.stalk_dim();
    return d;
  }

  std::size_t gate_offset(std::size_t gate) const {
    std::size_t off = 0;
    for (std::size_t g = 0; g < gate; ++g) off += fragment_.gates.at(g).stalk_dim();
    return off;
  }

 private:
  friend MVLedger add_gate(MVLedger ledger, Gate gate);
  friend WireAttachment attach_wire(MVLedger ledger, const PinRef& from, const PinRef& to, std::string edge_id);
  friend MVLedger rebase(MVLedger ledger, std::vector<GF2Vector> basis);

  Netlist fragment_;
  std::vector<GF2Vector> h0_basis_;
  std::size_t dim_h1_ = 0;
  std::vector<MVStep> history_;
};

// H^0 grows by the new gate's 2^m stalk (standard basis vectors); H^1 is
// unchanged.
inline MVLedger add_gate(MVLedger ledger, Gate gate) {
  if (ledger.fragment_.find_gate(gate.id)) throw std::invalid_argument("duplicate gate id '" + gate.id + "'");
  const std::size_t old_dim = ledger.c0_dim();
  const std::size_t add = gate.stalk_dim();
  for (auto& v : ledger.h0_basis_) v = v.concat(GF2Vector(add));
  for (std::size_t k = 0; k < add; ++k) ledger.h0_basis_.push_back(GF2Vector::unit(old_dim + add, old_dim + k));
  ledger.history_.push_back(MVStep{ledger.history_.size(), MVStep::Kind::Gate, gate.id, std::nullopt,
                                   ledger.h0_basis_.size(), ledger.dim_h1_, std::nullopt});
  ledger.fragment_.gates.push_back(std::move(gate));
  return ledger;
}

struct WireAttachment {
  MVLedger ledger;
  FeedbackClass feedback;
  std::size_t rank_delta;
  GF2Matrix p;
  GF2Matrix q;
  GF2Matrix delta;
};

inline WireAttachment attach_wire(MVLedger ledger, const PinRef& from, const PinRef& to, std::string edge_id = {}) {
  Netlist& frag = ledger.fragment_;
  const auto src = frag.find_gate(from.gate);
  const auto dst = frag.find_gate(to.gate);
  if (!src) throw WireError("wire source gate '" + from.gate + "' does not exist");
  if (!dst) throw WireError("wire sink gate '" + to.gate + "' does not exist");
  const Gate& src_gate = frag.gates[*src];
  const Gate& dst_gate = frag.gates[*dst];
  if (from.pin >= src_gate.num_outputs) throw WireError("output pin " + to_string(from) + " does not exist");
  if (to.pin >= dst_gate.num_inputs) throw WireError("input pin " + to_string(to) + " does not exist");
  for (const Edge& e : frag.edges) {
    if (e.source == from) throw WireError("output pin " + to_string(from) + " is already wired");
    if (e.sink == to) throw WireError("input pin " + to_string(to) + " is already wired");
  }
  if (edge_id.empty()) edge_id = "w" + std::to_string(frag.edges.size());
  if (frag.find_edge(edge_id)) throw WireError("duplicate edge id '" + edge_id + "'");

  const std::size_t k = ledger.h0_basis_.size();
  const GF2Matrix contraction = contraction_matrix(dst_gate.num_inputs, to.pin);
  const GF2Matrix phi = phi_matrix(src_gate, from.pin);
  const std::size_t src_off = ledger.gate_offset(*src);
  const std::size_t dst_off = ledger.gate_offset(*dst);

  GF2Matrix p(2, k), q(2, k);
  for (std::size_t i = 0; i < k; ++i) {
    const GF2Vector& h = ledger.h0_basis_[i];
    const GF2Vector at_sink = contraction * h.slice(dst_off, dst_gate.stalk_dim());
    const GF2Vector at_source = phi * h.slice(src_off, src_gate.stalk_dim());
    for (std::size_t b = 0; b < 2; ++b) {
      p.set(b, i, at_sink.get(b));
      q.set(b, i, at_source.get(b));
    }
  }
  const GF2Matrix id2 = GF2Matrix::identity(2);
  const GF2Matrix delta = p.hstack(id2).vstack(q.hstack(id2));
  const std::size_t rank_delta = rank(delta);
  const FeedbackClass fb = feedback_from_rank(rank_delta);

  // H^0 of the glued fragment: A-sections whose two restrictions agree.
  const std::vector<GF2Vector> coeffs = kernel_basis(q + p);
  std::vector<GF2Vector> glued;
  glued.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    GF2Vector v(ledger.c0_dim());
    for (std::size_t i = 0; i < k; ++i) {
      if (c.get(i)) v ^= ledger.h0_basis_[i];
    }
    glued.push_back(std::move(v));
  }
  ledger.h0_basis_ = std::move(glued);
  ledger.dim_h1_ += 4 - rank_delta;
  frag.edges.push_back(Edge{edge_id, from, to});
  ledger.history_.push_back(MVStep{ledger.history_.size(), MVStep::Kind::Wire, edge_id, fb, ledger.h0_basis_.size(),
                                   ledger.dim_h1_, rank_delta});
  return WireAttachment{std::move(ledger), fb, rank_delta, std::move(p), std::move(q), delta};
}

// Replaces the H^0 basis by another basis of the same space.
inline MVLedger rebase(MVLedger ledger, std::vector<GF2Vector> basis) {
  const std::size_t dim = ledger.c0_dim();
  if (basis.size() != ledger.h0_basis_.size() || span_dimension(basis, dim) != basis.size() ||
      !same_span(basis, ledger.h0_basis_, dim)) {
    throw std::invalid_argument("rebase: new vectors are not a basis of the same space");
  }
  ledger.h0_basis_ = std::move(basis);
  return ledger;
}

inline std::string_view to_string(MVStep::Kind k) { return k == MVStep::Kind::Gate ? "gate" : "wire"; }

struct ReplayResult {
  MVLedger ledger;
  CohomologyReport report;
};

// Adds every gate, then attaches the internal edges in declaration order. After
// each step the ledger is checked against a direct computation on the current
// fragment (dimensions and H^0 span); the final dimensions must match the full
// circuit.
inline ReplayResult replay(const Netlist& n, const CohomologyOptions& opts = {}) {
  if (auto diags = validate(n); !diags.empty()) throw NetlistError(std::move(diags));
  MVLedger ledger;
  auto cross_check = [](const MVLedger& l) {
    const CechComplex cx = assemble_complex(l.fragment());
    const auto kernel = kernel_basis(cx.d0());
    const std::size_t h1 = cx.c1_dim() - (cx.c0_dim() - kernel.size());
    if (kernel.size() != l.dim_h0() || h1 != l.dim_h1() || !same_span(kernel, l.h0_basis(), cx.c0_dim())) {
      const MVStep& last = l.history().back();
      throw CrossCheckFailure("incremental and direct cohomology disagree after step " + std::to_string(last.step) +
                              " (" + last.id + "): ledger (" + std::to_string(l.dim_h0()) + ", " +
                              std::to_string(l.dim_h1()) + "), direct (" + std::to_string(kernel.size()) + ", " +
                              std::to_string(h1) + ")");
    }
  };
  for (const Gate& g : n.gates) {
    ledger = add_gate(std::move(ledger), g);
    cross_check(ledger);
  }
  for (const Edge& e : n.edges) {
    if (!e.is_internal()) continue;
    ledger = attach_wire(std::move(ledger), *e.source, *e.sink, e.id).ledger;
    cross_check(ledger);
  }
  CohomologyReport report = compute_cohomology(n, opts);
  if (report.dim_h0 != ledger.dim_h0() || report.dim_h1 != ledger.dim_h1()) {
    throw CrossCheckFailure("replay dimensions (" + std::to_string(ledger.dim_h0()) + ", " +
                            std::to_string(ledger.dim_h1()) + ") differ from direct computation (" +
                            std::to_string(report.dim_h0) + ", " + std::to_string(report.dim_h1) + ")");
  }
  return ReplayResult{std::move(ledger), std::move(report)};
}

}  // namespace swsheaf
