#pragma once

// Reference circuits: the shapes used throughout the tests, the bundled
// netlist files and the paper-suite command.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swsheaf/netlist.hpp"

namespace swsheaf::circuits {

inline Edge input(std::string id, std::string gate, std::size_t pin) {
  return Edge{std::move(id), std::nullopt, PinRef{std::move(gate), pin}};
}
inline Edge output(std::string id, std::string gate, std::size_t pin) {
  return Edge{std::move(id), PinRef{std::move(gate), pin}, std::nullopt};
}
inline Edge wire(std::string id, std::string src, std::size_t out_pin, std::string dst, std::size_t in_pin) {
  return Edge{std::move(id), PinRef{std::move(src), out_pin}, PinRef{std::move(dst), in_pin}};
}

// One 2-input AND with external inputs a, b and external output c.
inline Netlist and_gate() {
  Netlist n;
  n.gates.push_back(make_builtin("g", "AND"));
  n.edges = {input("a", "g", 0), input("b", "g", 1), output("c", "g", 0)};
  return n;
}

// Input a is forked; one copy is inverted (c -> e), the other (d) meets e at
// an AND gate. Internal edges in order: c, d, e.
inline Netlist glitch() {
  Netlist n;
  n.gates.push_back(make_builtin("g1", "FORK2"));
  n.gates.push_back(make_builtin("g2", "NOT"));
  n.gates.push_back(make_builtin("g3", "AND"));
  n.edges = {input("a", "g1", 0), wire("c", "g1", 0, "g2", 0), wire("d", "g1", 1, "g3", 0),
             wire("e", "g2", 0, "g3", 1), output("f", "g3", 0)};
  return n;
}

// q = not(a) or (b and c) on inputs (a, b, c); output 0 feeds back into c,
// output 1 is the observed q.
inline std::vector<std::uint64_t> rs_table() {
  std::vector<std::uint64_t> t(8);
  for (std::size_t k = 0; k < 8; ++k) {
    const bool a = (k >> 2) & 1U, b = (k >> 1) & 1U, c = k & 1U;
    t[k] = (!a || (b && c)) ? 3 : 0;
  }
  return t;
}

inline Netlist rs_flip_flop() {
  Netlist n;
  n.gates.push_back(make_table_gate("ff", 3, 2, rs_table()));
  n.edges = {input("a", "ff", 0), input("b", "ff", 1), wire("c", "ff", 0, "ff", 2), output("q", "ff", 1)};
  return n;
}

// An m-input AND whose pin 0 is fed through a buffer: a -> buf -> e1, with
// e2..em external.
inline Netlist m_input_with_buffer(std::size_t m) {
  Netlist n;
  n.gates.push_back(make_builtin("buf", "BUF"));
  n.gates.push_back(m >= 2 ? make_builtin("g", "AND", m) : make_builtin("g", "BUF"));
  n.edges.push_back(input("a", "buf", 0));
  n.edges.push_back(wire("e1", "buf", 0, "g", 0));
  for (std::size_t p = 1; p < m; ++p) n.edges.push_back(input("e" + std::to_string(p + 1), "g", p));
  n.edges.push_back(output("out", "g", 0));
  return n;
}

// Gate v (n inputs d1..dn) drives input 0 of gate w (m inputs e1..em). Both
// default to AND; a custom single-output table for v may be supplied.
inline Netlist two_gate_composition(std::size_t n_inputs, std::size_t m_inputs,
                                    std::optional<std::vector<std::uint64_t>> v_table = std::nullopt) {
  auto and_like = [](std::string id, std::size_t k) {
    return k >= 2 ? make_builtin(std::move(id), "AND", k) : make_builtin(std::move(id), "BUF");
  };
  Netlist n;
  n.gates.push_back(v_table ? make_table_gate("v", n_inputs, 1, *v_table) : and_like("v", n_inputs));
  n.gates.push_back(and_like("w", m_inputs));
  for (std::size_t p = 0; p < n_inputs; ++p) n.edges.push_back(input("d" + std::to_string(p + 1), "v", p));
  n.edges.push_back(wire("e1", "v", 0, "w", 0));
  for (std::size_t p = 1; p < m_inputs; ++p) n.edges.push_back(input("e" + std::to_string(p + 1), "w", p));
  n.edges.push_back(output("out", "w", 0));
  return n;
}

// A one-input gate whose output is wired back to its own input.
inline Netlist self_loop(std::string_view type) {
  Netlist n;
  n.gates.push_back(make_builtin("g", type));
  n.edges = {wire("s", "g", 0, "g", 0)};
  return n;
}

}  // namespace swsheaf::circuits
