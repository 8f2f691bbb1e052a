#pragma once

// Switching sheaf of a netlist and its Cech complex over the cover by open
// vertex stars. A gate with m inputs has stalk F_2^2 tensored m times
// (dimension 2^m, basis indexed by input tuples, pin 0 most significant); each
// wire has stalk F_2^2 spanned by one-hot logic 0 and logic 1.

#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "swsheaf/gf2.hpp"
#include "swsheaf/netlist.hpp"

namespace swsheaf {

// One-hot encoding: logic 0 -> (1,0), logic 1 -> (0,1).
inline GF2Vector one_hot(bool value) { return GF2Vector::unit(2, value ? 1 : 0); }

enum class EdgeValue { Zero, Logic0, Logic1, Superposed };

inline std::string_view to_string(EdgeValue v) {
  switch (v) {
    case EdgeValue::Zero: return "zero";
    case EdgeValue::Logic0: return "logic0";
    case EdgeValue::Logic1: return "logic1";
    case EdgeValue::Superposed: return "superposed";
  }
  return "?";
}

inline EdgeValue decode_edge_value(const GF2Vector& v) {
  if (v.size() != 2) throw std::invalid_argument("edge stalk vectors have length 2");
  const bool lo = v.get(0);
  const bool hi = v.get(1);
  if (lo && hi) return EdgeValue::Superposed;
  if (lo) return EdgeValue::Logic0;
  if (hi) return EdgeValue::Logic1;
  return EdgeValue::Zero;
}

inline bool is_one_hot(EdgeValue v) { return v == EdgeValue::Logic0 || v == EdgeValue::Logic1; }

// Restriction to output pin `out_pin`: the one-hot lift of that output bit.
// Column k is T(f(k)[out_pin]).
inline GF2Matrix phi_matrix(const Gate& gate, std::size_t out_pin) {
  if (out_pin >= gate.num_outputs) {
    throw std::out_of_range("output pin " + std::to_string(out_pin) + " out of range for gate '" + gate.id + "'");
  }
  GF2Matrix m(2, gate.stalk_dim());
  for (std::size_t k = 0; k < gate.stalk_dim(); ++k) m.set(gate.output_bit(k, out_pin) ? 1 : 0, k, true);
  return m;
}

// Restriction to input pin `in_pin` of an m-input gate: marginalizes the
// tensor onto that factor. Entry (b, k) is set iff bit `in_pin` of k equals b.
inline GF2Matrix contraction_matrix(std::size_t m, std::size_t in_pin) {
  if (in_pin >= m) throw std::out_of_range("input pin " + std::to_string(in_pin) + " out of range for " + std::to_string(m));
  if (m > kMaxGateInputs) throw std::invalid_argument("too many inputs");
  const std::size_t dim = std::size_t{1} << m;
  GF2Matrix c(2, dim);
  for (std::size_t k = 0; k < dim; ++k) c.set((k >> (m - 1 - in_pin)) & 1U, k, true);
  return c;
}

// Pure tensor T(a_0) x ... x T(a_{m-1}) as the basis index it occupies.
inline std::size_t pure_tensor_index(const std::vector<bool>& inputs) {
  std::size_t k = 0;
  for (bool b : inputs) k = (k << 1) | static_cast<std::size_t>(b);
  return k;
}

// ASCII label of a basis tensor: factors joined by '*', '~' marking logic 0,
// e.g. "~d*e" for the tensor of not-d with e. The empty tensor is "1".
inline std::string tensor_label(const std::vector<std::string>& factors, std::size_t index) {
  if (factors.empty()) return "1";
  std::string s;
  const std::size_t m = factors.size();
  for (std::size_t p = 0; p < m; ++p) {
    if (p) s += '*';
    if (((index >> (m - 1 - p)) & 1U) == 0) s += '~';
    s += factors[p];
  }
  return s;
}

class SectionMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class CechComplex {
 public:
  struct VertexBlock {
    std::size_t gate;
    std::size_t offset;
    std::size_t dim;
  };

  const Netlist& netlist() const noexcept { return netlist_; }
  const Topology& topology() const noexcept { return topology_; }
  const GF2Matrix& d0() const noexcept { return d0_; }
  const std::vector<VertexBlock>& vertices() const noexcept { return vertices_; }
  // Edge indices of the internal edges, in row-block order.
  const std::vector<std::size_t>& internal_edges() const noexcept { return internal_; }

  std::size_t c0_dim() const noexcept { return d0_.cols(); }
  std::size_t c1_dim() const noexcept { return d0_.rows(); }

  // Row offset of an edge's 2-row block, if it is internal.
  std::optional<std::size_t> edge_row(std::size_t edge) const { return edge_row_.at(edge); }

  GF2Vector vertex_component(const GF2Vector& c0, std::size_t gate) const {
    const VertexBlock& b = vertices_.at(gate);
    return c0.slice(b.offset, b.dim);
  }

  // Names of a gate's tensor factors: its input edge ids (or gate.in<k> for an
  // unconnected pin of a fragment).
  std::vector<std::string> factor_names(std::size_t gate) const {
    const Gate& g = netlist_.gates.at(gate);
    std::vector<std::string> names;
    for (std::size_t p = 0; p < g.num_inputs; ++p) {
      const auto& e = topology_.input_edge(gate, p);
      names.push_back(e ? netlist_.edges[*e].id : g.id + ".in" + std::to_string(p));
    }
    return names;
  }

  std::vector<std::string> column_labels() const {
    std::vector<std::string> out;
    out.reserve(c0_dim());
    for (const VertexBlock& b : vertices_) {
      const auto names = factor_names(b.gate);
      for (std::size_t k = 0; k < b.dim; ++k) out.push_back(netlist_.gates[b.gate].id + ":" + tensor_label(names, k));
    }
    return out;
  }

  std::vector<std::string> row_labels() const {
    std::vector<std::string> out;
    out.reserve(c1_dim());
    for (std::size_t e : internal_) {
      out.push_back("edge:" + netlist_.edges[e].id + ":0");
      out.push_back("edge:" + netlist_.edges[e].id + ":1");
    }
    return out;
  }

  // Debug dump of d0 with row and column labels.
  std::string dump_d0() const {
    std::ostringstream os;
    os << "# columns:";
    for (const auto& c : column_labels()) os << ' ' << c;
    os << '\n';
    const auto rows = row_labels();
    for (std::size_t r = 0; r < d0_.rows(); ++r) os << d0_.row(r).to_string() << "  " << rows[r] << '\n';
    return os.str();
  }

 private:
  friend CechComplex assemble_complex(const Netlist& netlist);

  Netlist netlist_;
  Topology topology_;
  std::vector<VertexBlock> vertices_;
  std::vector<std::size_t> internal_;
  std::vector<std::optional<std::size_t>> edge_row_;
  GF2Matrix d0_;
};

// Columns: gates in declaration order, each a block of 2^m tensor coordinates.
// Rows: one 2-row block per internal edge in declaration order, holding the
// source gate's phi on its columns XOR the sink gate's contraction on its
// columns. External edges contribute no rows. Unconnected pins are tolerated
// so partially wired fragments can be assembled.
inline CechComplex assemble_complex(const Netlist& netlist) {
  CechComplex cx;
  cx.netlist_ = netlist;
  cx.topology_ = Topology::build(netlist);

  std::size_t offset = 0;
  for (std::size_t g = 0; g < netlist.gates.size(); ++g) {
    const std::size_t dim = netlist.gates[g].stalk_dim();
    cx.vertices_.push_back({g, offset, dim});
    offset += dim;
  }
  cx.edge_row_.assign(netlist.edges.size(), std::nullopt);
  for (std::size_t e = 0; e < netlist.edges.size(); ++e) {
    if (!netlist.edges[e].is_internal()) continue;
    cx.edge_row_[e] = 2 * cx.internal_.size();
    cx.internal_.push_back(e);
  }

  cx.d0_ = GF2Matrix(2 * cx.internal_.size(), offset);
  for (std::size_t e : cx.internal_) {
    const Edge& edge = netlist.edges[e];
    const std::size_t row = *cx.edge_row_[e];
    const std::size_t src = *cx.topology_.source_gate(e);
    const std::size_t dst = *cx.topology_.sink_gate(e);
    cx.d0_.add_block(row, cx.vertices_[src].offset, phi_matrix(netlist.gates[src], edge.source->pin));
    cx.d0_.add_block(row, cx.vertices_[dst].offset,
                     contraction_matrix(netlist.gates[dst].num_inputs, edge.sink->pin));
  }
  return cx;
}

// Value of a 0-cochain on one edge: the sink-side contraction for inputs and
// internal edges, the source-side phi for external outputs. On an internal
// edge both sides must agree, which holds for every element of ker d0.
inline GF2Vector restrict_section_to_edge(const CechComplex& cx, const GF2Vector& c0, std::size_t edge) {
  if (c0.size() != cx.c0_dim()) throw std::invalid_argument("cochain length does not match C0");
  const Edge& e = cx.netlist().edges.at(edge);
  const Topology& topo = cx.topology();
  std::optional<GF2Vector> from_sink, from_source;
  if (e.sink) {
    const std::size_t g = *topo.sink_gate(edge);
    from_sink = contraction_matrix(cx.netlist().gates[g].num_inputs, e.sink->pin) * cx.vertex_component(c0, g);
  }
  if (e.source) {
    const std::size_t g = *topo.source_gate(edge);
    from_source = phi_matrix(cx.netlist().gates[g], e.source->pin) * cx.vertex_component(c0, g);
  }
  if (from_sink && from_source && *from_sink != *from_source) {
    throw SectionMismatch("cochain disagrees on edge '" + e.id + "': source gives " + from_source->to_string() +
                          ", sink gives " + from_sink->to_string());
  }
  return from_sink ? *from_sink : *from_source;
}

}  // namespace swsheaf
