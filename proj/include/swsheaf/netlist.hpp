#pragma once

// Gate-level circuit model: gates carry truth tables, edges are 1-bit signals
// between output and input pins. Self-loops and external (environment) edges
// are allowed; connectivity is not required.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace swsheaf {

inline constexpr std::size_t kMaxGateInputs = 16;
inline constexpr std::size_t kMaxGateOutputs = 64;
inline constexpr std::size_t kDefaultOracleCap = 24;

struct PinRef {
  std::string gate;
  std::size_t pin = 0;

  friend bool operator==(const PinRef&, const PinRef&) = default;
};

inline std::string to_string(const PinRef& p) { return p.gate + "." + std::to_string(p.pin); }

struct Gate {
  std::string id;
  std::string type;  // NOT, BUF, AND, ..., FORK2, FORK, or TABLE
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
  // table[k] is the output tuple for input row k (pin 0 is the most significant
  // bit of k); output pin j is bit j of the stored word.
  std::vector<std::uint64_t> table;

  std::size_t stalk_dim() const { return std::size_t{1} << num_inputs; }

  bool output_bit(std::size_t row, std::size_t out_pin) const { return (table.at(row) >> out_pin) & 1U; }

  // Value of input pin `in_pin` within row index `row`.
  bool input_bit(std::size_t row, std::size_t in_pin) const { return (row >> (num_inputs - 1 - in_pin)) & 1U; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class EdgeKind { Internal, ExternalInput, ExternalOutput, Floating };

inline std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Internal: return "internal";
    case EdgeKind::ExternalInput: return "external-input";
    case EdgeKind::ExternalOutput: return "external-output";
    case EdgeKind::Floating: return "floating";
  }
  return "?";
}

struct Edge {
  std::string id;
  std::optional<PinRef> source;  // nullopt: driven by the environment
  std::optional<PinRef> sink;    // nullopt: observed by the environment

  EdgeKind kind() const {
    if (source && sink) return EdgeKind::Internal;
    if (sink) return EdgeKind::ExternalInput;
    if (source) return EdgeKind::ExternalOutput;
    return EdgeKind::Floating;
  }
  bool is_internal() const { return source.has_value() && sink.has_value(); }
  bool is_self_loop() const { return is_internal() && source->gate == sink->gate; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Netlist {
  std::vector<Gate> gates;
  std::vector<Edge> edges;

  std::optional<std::size_t> find_gate(std::string_view id) const {
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (gates[i].id == id) return i;
    }
    return std::nullopt;
  }
  std::optional<std::size_t> find_edge(std::string_view id) const {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].id == id) return i;
    }
    return std::nullopt;
  }

  std::size_t internal_edge_count() const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return e.is_internal(); }));
  }

  friend bool operator==(const Netlist&, const Netlist&) = default;
};

// ---------------------------------------------------------------------------
// Built-in gates

inline Gate make_table_gate(std::string id, std::size_t inputs, std::size_t outputs, std::vector<std::uint64_t> table,
                            std::string type = "TABLE") {
  return Gate{std::move(id), std::move(type), inputs, outputs, std::move(table)};
}

inline bool is_builtin_type(std::string_view t) {
  static constexpr std::string_view kNames[] = {"NOT", "BUF", "AND", "OR", "NAND", "NOR", "XOR", "FORK2", "FORK"};
  return std::find(std::begin(kNames), std::end(kNames), t) != std::end(kNames);
}

// `arity` overrides the input count of AND/OR/NAND/NOR/XOR (default 2) and the
// output count of FORK.
inline Gate make_builtin(std::string id, std::string_view type, std::optional<std::size_t> arity = std::nullopt) {
  auto build = [&](std::size_t m, std::size_t n, auto fn) {
    std::vector<std::uint64_t> table(std::size_t{1} << m);
    for (std::size_t k = 0; k < table.size(); ++k) table[k] = fn(k, m);
    return Gate{std::move(id), std::string(type), m, n, std::move(table)};
  };
  const std::size_t m = arity.value_or(2);
  if (type != "FORK" && (type == "NOT" || type == "BUF" || type == "FORK2") && arity) {
    throw std::invalid_argument(std::string(type) + " has fixed arity");
  }
  if (type == "NOT") return build(1, 1, [](std::size_t k, std::size_t) { return std::uint64_t{k == 0}; });
  if (type == "BUF") return build(1, 1, [](std::size_t k, std::size_t) { return std::uint64_t{k == 1}; });
  if (type == "FORK2") return build(1, 2, [](std::size_t k, std::size_t) { return k == 1 ? std::uint64_t{3} : 0; });
  if (type == "FORK") {
    const std::size_t n = arity.value_or(2);
    if (n == 0 || n > kMaxGateOutputs) throw std::invalid_argument("FORK output count out of range");
    const std::uint64_t ones = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    return build(1, n, [ones](std::size_t k, std::size_t) { return k == 1 ? ones : 0; });
  }
  if (m > kMaxGateInputs) throw std::invalid_argument("too many gate inputs");
  auto all_ones = [](std::size_t k, std::size_t mm) { return k == (std::size_t{1} << mm) - 1; };
  if (type == "AND") return build(m, 1, [&](std::size_t k, std::size_t mm) { return std::uint64_t{all_ones(k, mm)}; });
  if (type == "NAND") return build(m, 1, [&](std::size_t k, std::size_t mm) { return std::uint64_t{!all_ones(k, mm)}; });
  if (type == "OR") return build(m, 1, [](std::size_t k, std::size_t) { return std::uint64_t{k != 0}; });
  if (type == "NOR") return build(m, 1, [](std::size_t k, std::size_t) { return std::uint64_t{k == 0}; });
  if (type == "XOR") {
    return build(m, 1, [](std::size_t k, std::size_t) { return static_cast<std::uint64_t>(std::popcount(k) & 1); });
  }
  throw std::invalid_argument("unknown gate type '" + std::string(type) + "'");
}

// ---------------------------------------------------------------------------
// Validation

enum class DiagnosticKind {
  DuplicateGateId,
  DuplicateEdgeId,
  DanglingReference,
  PinOutOfRange,
  PinUsedTwice,
  UnconnectedInputPin,
  UnconnectedOutputPin,
  BadTruthTable,
  NoGateEndpoint,
};

inline std::string_view to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::DuplicateGateId: return "duplicate gate id";
    case DiagnosticKind::DuplicateEdgeId: return "duplicate edge id";
    case DiagnosticKind::DanglingReference: return "dangling reference";
    case DiagnosticKind::PinOutOfRange: return "pin out of range";
    case DiagnosticKind::PinUsedTwice: return "pin used twice";
    case DiagnosticKind::UnconnectedInputPin: return "unconnected input pin";
    case DiagnosticKind::UnconnectedOutputPin: return "unconnected output pin";
    case DiagnosticKind::BadTruthTable: return "bad truth table";
    case DiagnosticKind::NoGateEndpoint: return "edge without gate endpoint";
  }
  return "?";
}

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
  std::optional<std::size_t> gate_index;
  std::optional<std::size_t> edge_index;
};

class NetlistError : public std::runtime_error {
 public:
  explicit NetlistError(std::vector<Diagnostic> diags) : std::runtime_error(summarize(diags)), diags_(std::move(diags)) {}
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diags_; }

 private:
  static std::string summarize(const std::vector<Diagnostic>& diags) {
    std::string s = "invalid netlist:";
    for (const auto& d : diags) s += "\n  " + d.message;
    return s;
  }
  std::vector<Diagnostic> diags_;
};

namespace detail {

// Pin checks shared by full validation and by the lenient topology builder
// used for partially wired fragments.
inline std::vector<Diagnostic> structural_diagnostics(const Netlist& n) {
  std::vector<Diagnostic> out;
  std::unordered_map<std::string, std::size_t> gate_ix;
  for (std::size_t g = 0; g < n.gates.size(); ++g) {
    const Gate& gate = n.gates[g];
    if (!gate_ix.emplace(gate.id, g).second) {
      out.push_back({DiagnosticKind::DuplicateGateId, "duplicate gate id '" + gate.id + "'", g, std::nullopt});
    }
    if (gate.num_inputs > kMaxGateInputs || gate.num_outputs > kMaxGateOutputs) {
      out.push_back({DiagnosticKind::BadTruthTable, "gate '" + gate.id + "' exceeds supported pin counts", g, std::nullopt});
    } else {
      if (gate.table.size() != gate.stalk_dim()) {
        out.push_back({DiagnosticKind::BadTruthTable,
                       "gate '" + gate.id + "' truth table has " + std::to_string(gate.table.size()) + " rows, expected " +
                           std::to_string(gate.stalk_dim()),
                       g, std::nullopt});
      }
      const std::uint64_t mask =
          gate.num_outputs == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << gate.num_outputs) - 1;
      if (std::any_of(gate.table.begin(), gate.table.end(), [mask](std::uint64_t r) { return (r & ~mask) != 0; })) {
        out.push_back({DiagnosticKind::BadTruthTable,
                       "gate '" + gate.id + "' truth table row wider than " + std::to_string(gate.num_outputs) + " bits", g,
                       std::nullopt});
      }
    }
  }

  std::unordered_map<std::string, std::size_t> edge_ix;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> used_in, used_out;
  for (std::size_t e = 0; e < n.edges.size(); ++e) {
    const Edge& edge = n.edges[e];
    if (!edge_ix.emplace(edge.id, e).second) {
      out.push_back({DiagnosticKind::DuplicateEdgeId, "duplicate edge id '" + edge.id + "'", std::nullopt, e});
    }
    if (!edge.source && !edge.sink) {
      out.push_back({DiagnosticKind::NoGateEndpoint, "edge '" + edge.id + "' has no gate endpoint", std::nullopt, e});
    }
    auto check_end = [&](const std::optional<PinRef>& ref, bool is_input) {
      if (!ref) return;
      auto it = gate_ix.find(ref->gate);
      if (it == gate_ix.end()) {
        out.push_back({DiagnosticKind::DanglingReference,
                       "edge '" + edge.id + "' references unknown gate '" + ref->gate + "'", std::nullopt, e});
        return;
      }
      const Gate& gate = n.gates[it->second];
      const std::size_t limit = is_input ? gate.num_inputs : gate.num_outputs;
      if (ref->pin >= limit) {
        out.push_back({DiagnosticKind::PinOutOfRange,
                       "edge '" + edge.id + "' uses " + (is_input ? "input" : "output") + " pin " +
                           std::to_string(ref->pin) + " of gate '" + gate.id + "' which has " + std::to_string(limit),
                       it->second, e});
        return;
      }
      auto& used = is_input ? used_in : used_out;
      auto [slot, fresh] = used.emplace(std::pair{it->second, ref->pin}, e);
      if (!fresh) {
        out.push_back({DiagnosticKind::PinUsedTwice,
                       std::string(is_input ? "input" : "output") + " pin " + to_string(*ref) + " used by edges '" +
                           n.edges[slot->second].id + "' and '" + edge.id + "'",
                       it->second, e});
      }
    };
    check_end(edge.source, false);
    check_end(edge.sink, true);
  }
  return out;
}

}  // namespace detail

// One diagnostic per violated invariant; empty iff the netlist is well formed.
inline std::vector<Diagnostic> validate(const Netlist& n) {
  std::vector<Diagnostic> out = detail::structural_diagnostics(n);
  std::map<std::pair<std::size_t, std::size_t>, bool> in_used, out_used;
  for (const Edge& e : n.edges) {
    if (e.sink) {
      if (auto g = n.find_gate(e.sink->gate)) in_used[{*g, e.sink->pin}] = true;
    }
    if (e.source) {
      if (auto g = n.find_gate(e.source->gate)) out_used[{*g, e.source->pin}] = true;
    }
  }
  for (std::size_t g = 0; g < n.gates.size(); ++g) {
    const Gate& gate = n.gates[g];
    for (std::size_t p = 0; p < gate.num_inputs && p <= kMaxGateInputs; ++p) {
      if (!in_used.contains({g, p})) {
        out.push_back({DiagnosticKind::UnconnectedInputPin,
                       "unconnected input pin " + gate.id + "." + std::to_string(p), g, std::nullopt});
      }
    }
    for (std::size_t p = 0; p < gate.num_outputs && p <= kMaxGateOutputs; ++p) {
      if (!out_used.contains({g, p})) {
        out.push_back({DiagnosticKind::UnconnectedOutputPin,
                       "unconnected output pin " + gate.id + "." + std::to_string(p), g, std::nullopt});
      }
    }
  }
  return out;
}

// Pin-to-edge incidence of a netlist. Building it only requires structural
// soundness; unconnected pins are left empty so fragments are representable.
class Topology {
 public:
  static Topology build(const Netlist& n) {
    auto diags = detail::structural_diagnostics(n);
    if (!diags.empty()) throw NetlistError(std::move(diags));
    Topology t;
    t.inputs_.resize(n.gates.size());
    t.outputs_.resize(n.gates.size());
    for (std::size_t g = 0; g < n.gates.size(); ++g) {
      t.index_.emplace(n.gates[g].id, g);
      t.inputs_[g].assign(n.gates[g].num_inputs, std::nullopt);
      t.outputs_[g].assign(n.gates[g].num_outputs, std::nullopt);
    }
    t.source_gate_.resize(n.edges.size());
    t.sink_gate_.resize(n.edges.size());
    for (std::size_t e = 0; e < n.edges.size(); ++e) {
      const Edge& edge = n.edges[e];
      if (edge.source) {
        const std::size_t g = t.index_.at(edge.source->gate);
        t.outputs_[g][edge.source->pin] = e;
        t.source_gate_[e] = g;
      }
      if (edge.sink) {
        const std::size_t g = t.index_.at(edge.sink->gate);
        t.inputs_[g][edge.sink->pin] = e;
        t.sink_gate_[e] = g;
      }
    }
    return t;
  }

  std::size_t gate_index(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw std::out_of_range("unknown gate '" + std::string(id) + "'");
    return it->second;
  }
  const std::optional<std::size_t>& input_edge(std::size_t gate, std::size_t pin) const { return inputs_.at(gate).at(pin); }
  const std::optional<std::size_t>& output_edge(std::size_t gate, std::size_t pin) const {
    return outputs_.at(gate).at(pin);
  }
  const std::optional<std::size_t>& source_gate(std::size_t edge) const { return source_gate_.at(edge); }
  const std::optional<std::size_t>& sink_gate(std::size_t edge) const { return sink_gate_.at(edge); }

  bool fully_connected() const {
    auto all = [](const auto& pins) {
      return std::all_of(pins.begin(), pins.end(), [](const auto& v) {
        return std::all_of(v.begin(), v.end(), [](const auto& p) { return p.has_value(); });
      });
    };
    return all(inputs_) && all(outputs_);
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::optional<std::size_t>>> inputs_;
  std::vector<std::vector<std::optional<std::size_t>>> outputs_;
  std::vector<std::optional<std::size_t>> source_gate_;
  std::vector<std::optional<std::size_t>> sink_gate_;
};

// ---------------------------------------------------------------------------
// Text format

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$'; };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  return head(s[0]) && std::all_of(s.begin() + 1, s.end(), tail);
}

inline std::optional<std::size_t> parse_count(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  std::size_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

// Accepts `g.3`, `g.in3` or `g.out3`.
inline PinRef parse_pin(const Token& tok, std::size_t line) {
  const auto dot = tok.text.rfind('.');
  if (dot == std::string::npos) throw ParseError(line, tok.column, "expected <gate>.<pin>, got '" + tok.text + "'");
  std::string_view gate = std::string_view(tok.text).substr(0, dot);
  std::string_view pin = std::string_view(tok.text).substr(dot + 1);
  if (pin.starts_with("out")) {
    pin.remove_prefix(3);
  } else if (pin.starts_with("in")) {
    pin.remove_prefix(2);
  }
  if (!is_identifier(gate)) throw ParseError(line, tok.column, "bad gate identifier '" + std::string(gate) + "'");
  auto idx = parse_count(pin);
  if (!idx) throw ParseError(line, tok.column + dot + 1, "bad pin index in '" + tok.text + "'");
  return PinRef{std::string(gate), *idx};
}

struct NetStatement {
  std::optional<PinRef> source;
  std::optional<PinRef> sink;
  std::size_t line;
  std::size_t column;
};

}  // namespace detail

// Parses the line-oriented netlist format:
//   gate <id> <TYPE> [in=<m>] [out=<n>]
//   gate <id> TABLE in=<m> out=<n> rows=<r0> <r1> ... <r(2^m-1)>
//   wire <id> <src>.<outpin> -> <dst>.<inpin>
//   input <id> -> <dst>.<inpin>
//   output <src>.<outpin> -> <id>
// Row k of a TABLE lists output pins left to right for the input tuple whose
// pin 0 is the most significant bit of k. Statements sharing a net id and a
// source form a multi-sink net, which is split by an inserted FORK gate.
inline Netlist parse_netlist(std::string_view text) {
  using detail::Token;
  Netlist out;
  std::vector<std::size_t> gate_lines;
  std::vector<std::string> net_order;
  std::map<std::string, std::vector<detail::NetStatement>> nets;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto toks = detail::tokenize_line(line);
    if (toks.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const std::string& kw = toks[0].text;
    auto need = [&](std::size_t i, std::string_view what) -> const Token& {
      if (i >= toks.size()) {
        throw ParseError(line_no, line.size() + 1, "expected " + std::string(what) + " after '" + toks.back().text + "'");
      }
      return toks[i];
    };
    auto expect_arrow = [&](std::size_t i) {
      const Token& t = need(i, "'->'");
      if (t.text != "->") throw ParseError(line_no, t.column, "expected '->', got '" + t.text + "'");
    };
    auto expect_end = [&](std::size_t i) {
      if (i < toks.size()) throw ParseError(line_no, toks[i].column, "unexpected token '" + toks[i].text + "'");
    };
    auto ident = [&](std::size_t i, std::string_view what) -> std::string {
      const Token& t = need(i, what);
      if (!detail::is_identifier(t.text)) throw ParseError(line_no, t.column, "bad identifier '" + t.text + "'");
      return t.text;
    };
    auto add_net = [&](std::string id, detail::NetStatement st) {
      auto [it, fresh] = nets.try_emplace(id);
      if (fresh) net_order.push_back(id);
      it->second.push_back(std::move(st));
    };

    if (kw == "gate") {
      std::string id = ident(1, "gate id");
      const Token& type_tok = need(2, "gate type");
      const std::string& type = type_tok.text;
      std::optional<std::size_t> in, outs;
      std::vector<Token> rows;
      bool in_rows = false;
      for (std::size_t i = 3; i < toks.size(); ++i) {
        const Token& t = toks[i];
        if (in_rows) {
          rows.push_back(t);
          continue;
        }
        auto value_of = [&](std::string_view key) -> std::optional<std::size_t> {
          if (!t.text.starts_with(key)) return std::nullopt;
          auto v = detail::parse_count(std::string_view(t.text).substr(key.size()));
          if (!v) throw ParseError(line_no, t.column + key.size(), "expected a count in '" + t.text + "'");
          return v;
        };
        if (auto v = value_of("in=")) {
          in = v;
        } else if (auto w = value_of("out=")) {
          outs = w;
        } else if (t.text.starts_with("rows=")) {
          in_rows = true;
          if (t.text.size() > 5) rows.push_back({t.text.substr(5), t.column + 5});
        } else {
          throw ParseError(line_no, t.column, "unexpected token '" + t.text + "'");
        }
      }
      if (type == "TABLE") {
        if (!in || !outs) throw ParseError(line_no, type_tok.column, "TABLE gate needs in=<m> and out=<n>");
        if (*in > kMaxGateInputs) throw ParseError(line_no, type_tok.column, "TABLE gate has too many inputs");
        if (*outs > kMaxGateOutputs) throw ParseError(line_no, type_tok.column, "TABLE gate has too many outputs");
        if (!in_rows) throw ParseError(line_no, line.size() + 1, "TABLE gate needs rows=");
        const std::size_t expected = std::size_t{1} << *in;
        if (rows.size() != expected) {
          const std::size_t col = rows.empty() ? line.size() + 1 : rows.back().column;
          throw ParseError(line_no, col,
                           "truth table has " + std::to_string(rows.size()) + " rows, expected 2^" + std::to_string(*in) +
                               " = " + std::to_string(expected));
        }
        std::vector<std::uint64_t> table;
        table.reserve(expected);
        for (const Token& r : rows) {
          const std::string bits = r.text == "-" ? std::string() : r.text;
          if (bits.size() != *outs) {
            throw ParseError(line_no, r.column,
                             "truth table row '" + r.text + "' has " + std::to_string(bits.size()) + " bits, expected " +
                                 std::to_string(*outs));
          }
          std::uint64_t word = 0;
          for (std::size_t j = 0; j < bits.size(); ++j) {
            if (bits[j] == '1') {
              word |= std::uint64_t{1} << j;
            } else if (bits[j] != '0') {
              throw ParseError(line_no, r.column + j, "truth table bits must be 0 or 1");
            }
          }
          table.push_back(word);
        }
        out.gates.push_back(make_table_gate(std::move(id), *in, *outs, std::move(table)));
      } else if (is_builtin_type(type)) {
        if (in_rows) throw ParseError(line_no, type_tok.column, "rows= is only valid for TABLE gates");
        std::optional<std::size_t> arity;
        if (type == "FORK") {
          if (in && *in != 1) throw ParseError(line_no, type_tok.column, "FORK has exactly one input");
          arity = outs;
        } else {
          if (outs && *outs != 1 && type != "FORK2") throw ParseError(line_no, type_tok.column, type + " has one output");
          arity = in;
        }
        try {
          out.gates.push_back(make_builtin(std::move(id), type, arity));
        } catch (const std::invalid_argument& e) {
          throw ParseError(line_no, type_tok.column, e.what());
        }
      } else {
        throw ParseError(line_no, type_tok.column, "unknown gate type '" + type + "'");
      }
      gate_lines.push_back(line_no);
    } else if (kw == "wire") {
      std::string id = ident(1, "wire id");
      PinRef src = detail::parse_pin(need(2, "source pin"), line_no);
      expect_arrow(3);
      PinRef dst = detail::parse_pin(need(4, "sink pin"), line_no);
      expect_end(5);
      add_net(std::move(id), {std::move(src), std::move(dst), line_no, toks[1].column});
    } else if (kw == "input") {
      std::string id = ident(1, "input id");
      expect_arrow(2);
      PinRef dst = detail::parse_pin(need(3, "sink pin"), line_no);
      expect_end(4);
      add_net(std::move(id), {std::nullopt, std::move(dst), line_no, toks[1].column});
    } else if (kw == "output") {
      PinRef src = detail::parse_pin(need(1, "source pin"), line_no);
      expect_arrow(2);
      std::string id = ident(3, "output id");
      expect_end(4);
      add_net(std::move(id), {std::move(src), std::nullopt, line_no, toks[3].column});
    } else {
      throw ParseError(line_no, toks[0].column, "unknown statement '" + kw + "'");
    }
    if (eol == text.size()) break;
  }

  std::vector<std::size_t> edge_lines;
  for (const std::string& id : net_order) {
    const auto& stmts = nets.at(id);
    const auto& head = stmts.front();
    for (const auto& st : stmts) {
      if (st.source != head.source) {
        throw ParseError(st.line, st.column,
                         "net '" + id + "' is driven by " + (st.source ? to_string(*st.source) : "an external input") +
                             " but was first driven by " + (head.source ? to_string(*head.source) : "an external input"));
      }
    }
    if (stmts.size() == 1) {
      out.edges.push_back(Edge{id, head.source, head.sink});
      edge_lines.push_back(head.line);
      continue;
    }
    const std::string fork_id = id + "$fork";
    out.gates.push_back(stmts.size() == 2 ? make_builtin(fork_id, "FORK2") : make_builtin(fork_id, "FORK", stmts.size()));
    gate_lines.push_back(head.line);
    out.edges.push_back(Edge{id, head.source, PinRef{fork_id, 0}});
    edge_lines.push_back(head.line);
    for (std::size_t i = 0; i < stmts.size(); ++i) {
      out.edges.push_back(Edge{id + "$" + std::to_string(i), PinRef{fork_id, i}, stmts[i].sink});
      edge_lines.push_back(stmts[i].line);
    }
  }

  auto diags = validate(out);
  if (!diags.empty()) {
    for (auto& d : diags) {
      std::optional<std::size_t> line;
      if (d.edge_index) {
        line = edge_lines.at(*d.edge_index);
      } else if (d.gate_index) {
        line = gate_lines.at(*d.gate_index);
      }
      if (line) d.message = "line " + std::to_string(*line) + ": " + d.message;
    }
    throw NetlistError(std::move(diags));
  }
  return out;
}

inline Netlist parse_netlist_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_netlist(ss.str());
}

// Writes a netlist in the text format; parse_netlist(write_netlist(n)) == n
// for any valid netlist whose multi-sink nets are already split.
inline std::string write_netlist(const Netlist& n) {
  std::ostringstream os;
  for (const Gate& g : n.gates) {
    os << "gate " << g.id << ' ';
    const bool nary = g.type == "AND" || g.type == "OR" || g.type == "NAND" || g.type == "NOR" || g.type == "XOR";
    if (nary && g == make_builtin(g.id, g.type, g.num_inputs)) {
      os << g.type;
      if (g.num_inputs != 2) os << " in=" << g.num_inputs;
    } else if ((g.type == "NOT" || g.type == "BUF" || g.type == "FORK2") && g == make_builtin(g.id, g.type)) {
      os << g.type;
    } else if (g.type == "FORK" && g.num_outputs > 0 && g == make_builtin(g.id, "FORK", g.num_outputs)) {
      os << "FORK out=" << g.num_outputs;
    } else {
      os << "TABLE in=" << g.num_inputs << " out=" << g.num_outputs << " rows=";
      for (std::size_t k = 0; k < g.table.size(); ++k) {
        if (k) os << ' ';
        if (g.num_outputs == 0) os << '-';
        for (std::size_t j = 0; j < g.num_outputs; ++j) os << (((g.table[k] >> j) & 1U) ? '1' : '0');
      }
    }
    os << '\n';
  }
  for (const Edge& e : n.edges) {
    if (e.source && e.sink) {
      os << "wire " << e.id << ' ' << to_string(*e.source) << " -> " << to_string(*e.sink) << '\n';
    } else if (e.sink) {
      os << "input " << e.id << " -> " << to_string(*e.sink) << '\n';
    } else if (e.source) {
      os << "output " << to_string(*e.source) << " -> " << e.id << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Quiescent logic states

using EdgeAssignment = std::vector<bool>;  // indexed like Netlist::edges

class OracleCapExceeded : public std::runtime_error {
 public:
  OracleCapExceeded(std::size_t edges, std::size_t cap)
      : std::runtime_error("QLS oracle refused: " + std::to_string(edges) + " edges exceeds the brute-force cap of " +
                           std::to_string(cap)),
        edges_(edges),
        cap_(cap) {}
  std::size_t edges() const noexcept { return edges_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t edges_;
  std::size_t cap_;
};

// True iff every gate's function maps its input edge values to its output
// edge values under `s`.
inline bool is_qls(const Netlist& n, const EdgeAssignment& s) {
  if (s.size() != n.edges.size()) throw std::invalid_argument("assignment length differs from edge count");
  const Topology topo = Topology::build(n);
  for (std::size_t g = 0; g < n.gates.size(); ++g) {
    const Gate& gate = n.gates[g];
    std::size_t row = 0;
    for (std::size_t p = 0; p < gate.num_inputs; ++p) {
      const auto& e = topo.input_edge(g, p);
      if (!e) throw std::invalid_argument("is_qls: unconnected input pin on gate '" + gate.id + "'");
      row = (row << 1) | static_cast<std::size_t>(s[*e]);
    }
    for (std::size_t p = 0; p < gate.num_outputs; ++p) {
      const auto& e = topo.output_edge(g, p);
      if (!e) throw std::invalid_argument("is_qls: unconnected output pin on gate '" + gate.id + "'");
      if (gate.output_bit(row, p) != s[*e]) return false;
    }
  }
  return true;
}

// Exhaustive enumeration of all 2^|E| edge assignments, returned in increasing
// order of the mask whose bit i is the value on edge i.
inline std::vector<EdgeAssignment> qls_oracle(const Netlist& n, std::size_t cap = kDefaultOracleCap) {
  if (auto diags = validate(n); !diags.empty()) throw NetlistError(std::move(diags));
  const std::size_t num_edges = n.edges.size();
  if (num_edges > cap || num_edges >= 64) throw OracleCapExceeded(num_edges, cap);
  const Topology topo = Topology::build(n);

  struct GateCheck {
    std::vector<std::size_t> in_edges;
    std::uint64_t out_mask = 0;
    std::vector<std::uint64_t> expected;  // per row, the required edge bits under out_mask
  };
  std::vector<GateCheck> checks;
  checks.reserve(n.gates.size());
  for (std::size_t g = 0; g < n.gates.size(); ++g) {
    const Gate& gate = n.gates[g];
    GateCheck c;
    for (std::size_t p = 0; p < gate.num_inputs; ++p) c.in_edges.push_back(*topo.input_edge(g, p));
    std::vector<std::size_t> out_edges;
    for (std::size_t p = 0; p < gate.num_outputs; ++p) {
      out_edges.push_back(*topo.output_edge(g, p));
      c.out_mask |= std::uint64_t{1} << out_edges.back();
    }
    c.expected.resize(gate.table.size());
    for (std::size_t row = 0; row < gate.table.size(); ++row) {
      std::uint64_t want = 0;
      for (std::size_t p = 0; p < gate.num_outputs; ++p) {
        if (gate.output_bit(row, p)) want |= std::uint64_t{1} << out_edges[p];
      }
      c.expected[row] = want;
    }
    checks.push_back(std::move(c));
  }

  std::vector<EdgeAssignment> states;
  const std::uint64_t total = std::uint64_t{1} << num_edges;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool ok = true;
    for (const GateCheck& c : checks) {
      std::size_t row = 0;
      for (std::size_t e : c.in_edges) row = (row << 1) | static_cast<std::size_t>((mask >> e) & 1U);
      if ((mask & c.out_mask) != c.expected[row]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    EdgeAssignment s(num_edges);
    for (std::size_t e = 0; e < num_edges; ++e) s[e] = (mask >> e) & 1U;
    states.push_back(std::move(s));
  }
  return states;
}

}  // namespace swsheaf
