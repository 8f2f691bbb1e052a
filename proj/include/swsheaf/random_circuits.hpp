#pragma once

// Seeded random netlist generators for property tests and experiments. Only
// raw engine output is used (no std distributions) so a seed reproduces the
// same circuit on every standard library.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "swsheaf/netlist.hpp"

namespace swsheaf {

class CircuitRng {
 public:
  explicit CircuitRng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  bool coin() { return engine_() & 1U; }
  std::uint64_t bits(std::size_t n) {
    if (n == 0) return 0;
    const std::uint64_t v = engine_();
    return n >= 64 ? v : v & ((std::uint64_t{1} << n) - 1);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline Gate random_table_gate(CircuitRng& rng, std::string id, std::size_t inputs, std::size_t outputs) {
  std::vector<std::uint64_t> table(std::size_t{1} << inputs);
  for (auto& row : table) row = rng.bits(outputs);
  return make_table_gate(std::move(id), inputs, outputs, std::move(table));
}

// Random netlist whose internal edges form a connected tree on `gates`
// vertices, with random edge directions, random extra external pins and random
// truth tables. Every gate has at least one output. Gates with no internal
// input get at most `max_inputs` external inputs.
inline Netlist random_tree_netlist(CircuitRng& rng, std::size_t gates, std::size_t max_inputs = 2,
                                   std::size_t edge_cap = kDefaultOracleCap) {
  if (gates == 0) return {};
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> links;  // (source gate, sink gate)
    std::vector<std::size_t> din(gates, 0), dout(gates, 0);
    for (std::size_t i = 1; i < gates; ++i) {
      const std::size_t other = rng.below(i);
      const auto link = rng.coin() ? std::pair{other, i} : std::pair{i, other};
      links.push_back(link);
      ++dout[link.first];
      ++din[link.second];
    }

    Netlist n;
    std::vector<std::vector<std::size_t>> in_pins(gates), out_pins(gates);
    for (std::size_t g = 0; g < gates; ++g) {
      const std::size_t floor = din[g] > max_inputs ? din[g] : max_inputs;
      const std::size_t m = din[g] + rng.below(floor - din[g] + 1);
      std::size_t outs = dout[g] + (rng.coin() ? 1 : 0);
      if (outs == 0) outs = 1;
      n.gates.push_back(random_table_gate(rng, "g" + std::to_string(g), m, outs));
      for (std::size_t p = 0; p < m; ++p) in_pins[g].push_back(p);
      for (std::size_t p = 0; p < outs; ++p) out_pins[g].push_back(p);
      rng.shuffle(in_pins[g]);
      rng.shuffle(out_pins[g]);
    }

    std::size_t x = 0, w = 0, y = 0;
    std::vector<Edge> inputs, wires, outputs;
    for (auto [src, dst] : links) {
      const std::size_t op = out_pins[src].back();
      out_pins[src].pop_back();
      const std::size_t ip = in_pins[dst].back();
      in_pins[dst].pop_back();
      wires.push_back(Edge{"w" + std::to_string(w++), PinRef{n.gates[src].id, op}, PinRef{n.gates[dst].id, ip}});
    }
    for (std::size_t g = 0; g < gates; ++g) {
      for (std::size_t p : in_pins[g]) inputs.push_back(Edge{"x" + std::to_string(x++), std::nullopt, PinRef{n.gates[g].id, p}});
      for (std::size_t p : out_pins[g]) outputs.push_back(Edge{"y" + std::to_string(y++), PinRef{n.gates[g].id, p}, std::nullopt});
    }
    for (auto* group : {&inputs, &wires, &outputs}) {
      for (auto& e : *group) n.edges.push_back(std::move(e));
    }
    if (n.edges.size() <= edge_cap) return n;
  }
}

// Random netlist with arbitrary feedback: each gate has 0..max_inputs inputs
// and 1..max_outputs outputs; a random matching of output pins to input pins
// becomes internal wires (self-loops included), the rest are external.
inline Netlist random_netlist(CircuitRng& rng, std::size_t gates, std::size_t max_inputs = 2,
                              std::size_t max_outputs = 2) {
  Netlist n;
  std::vector<PinRef> ins, outs;
  for (std::size_t g = 0; g < gates; ++g) {
    const std::size_t m = rng.below(max_inputs + 1);
    const std::size_t k = 1 + rng.below(max_outputs);
    n.gates.push_back(random_table_gate(rng, "g" + std::to_string(g), m, k));
    for (std::size_t p = 0; p < m; ++p) ins.push_back(PinRef{n.gates.back().id, p});
    for (std::size_t p = 0; p < k; ++p) outs.push_back(PinRef{n.gates.back().id, p});
  }
  rng.shuffle(ins);
  rng.shuffle(outs);
  const std::size_t max_wires = ins.size() < outs.size() ? ins.size() : outs.size();
  const std::size_t wires = rng.below(max_wires + 1);
  for (std::size_t i = 0; i < ins.size(); ++i) {
    if (i < wires) {
      n.edges.push_back(Edge{"w" + std::to_string(i), outs[i], ins[i]});
    } else {
      n.edges.push_back(Edge{"x" + std::to_string(i), std::nullopt, ins[i]});
    }
  }
  for (std::size_t i = wires; i < outs.size(); ++i) n.edges.push_back(Edge{"y" + std::to_string(i), outs[i], std::nullopt});
  return n;
}

}  // namespace swsheaf
