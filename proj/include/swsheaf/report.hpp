#pragma once

// Report rendering: JSON (round-trippable), plain text and Graphviz DOT.

#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "swsheaf/cohomology.hpp"
#include "swsheaf/mayer_vietoris.hpp"
#include "swsheaf/sheaf.hpp"

namespace swsheaf {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string assignment_bits(const EdgeAssignment& s) {
  std::string out(s.size(), '0');
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) out[i] = '1';
  }
  return out;
}

inline EdgeAssignment assignment_from_bits(const std::string& bits) {
  EdgeAssignment s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] == '1';
  return s;
}

inline EdgeValue edge_value_from_string(const std::string& s) {
  for (EdgeValue v : {EdgeValue::Zero, EdgeValue::Logic0, EdgeValue::Logic1, EdgeValue::Superposed}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown edge value '" + s + "'");
}

inline CheckStatus check_status_from_string(const std::string& s) {
  for (CheckStatus c : {CheckStatus::Passed, CheckStatus::Failed, CheckStatus::Skipped, CheckStatus::Unavailable}) {
    if (to_string(c) == s) return c;
  }
  throw std::invalid_argument("unknown check status '" + s + "'");
}

inline std::vector<std::string> support_labels(const GF2Vector& v, const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (std::size_t i : v.support()) out.push_back(labels.at(i));
  return out;
}

}  // namespace detail

inline Json to_json(const CohomologyReport& r) {
  Json j;
  j["dim_c0"] = r.dim_c0;
  j["dim_c1"] = r.dim_c1;
  j["dim_h0"] = r.dim_h0;
  j["dim_h1"] = r.dim_h1;
  j["edges"] = r.edge_ids;
  j["c1_labels"] = r.c1_labels;
  Json basis = Json::array();
  for (const Section& s : r.h0_basis) {
    Json js;
    js["label"] = s.label;
    js["classification"] = std::string(to_string(s.classification));
    js["c0"] = s.c0.to_string();
    Json values = Json::array();
    for (EdgeValue v : s.per_edge) values.push_back(std::string(to_string(v)));
    js["edge_values"] = values;
    basis.push_back(js);
  }
  j["h0_basis"] = basis;
  Json gens = Json::array();
  for (const GF2Vector& g : r.h1_generators) {
    gens.push_back(Json{{"c1", g.to_string()}, {"support", detail::support_labels(g, r.c1_labels)}});
  }
  j["h1_generators"] = gens;
  if (r.qls) {
    j["qls_count"] = r.qls->size();
    Json states = Json::array();
    for (const auto& s : *r.qls) states.push_back(detail::assignment_bits(s));
    j["qls"] = states;
  } else {
    j["qls_count"] = nullptr;
    j["qls"] = nullptr;
  }
  j["qls_lift_check"] = r.qls_lift_check ? Json(*r.qls_lift_check) : Json(nullptr);
  j["forward_check"] = std::string(to_string(r.forward_check));
  j["reverse_check"] = std::string(to_string(r.reverse_check));
  j["oracle_note"] = r.oracle_note;
  return j;
}

inline CohomologyReport report_from_json(const Json& j) {
  CohomologyReport r;
  r.dim_c0 = j.at("dim_c0").get<std::size_t>();
  r.dim_c1 = j.at("dim_c1").get<std::size_t>();
  r.dim_h0 = j.at("dim_h0").get<std::size_t>();
  r.dim_h1 = j.at("dim_h1").get<std::size_t>();
  r.edge_ids = j.at("edges").get<std::vector<std::string>>();
  r.c1_labels = j.at("c1_labels").get<std::vector<std::string>>();
  for (const auto& js : j.at("h0_basis")) {
    Section s;
    s.label = js.at("label").get<std::string>();
    s.classification =
        js.at("classification").get<std::string>() == "QLS_LIFT" ? SectionClass::QlsLift : SectionClass::Transient;
    s.c0 = GF2Vector::from_string(js.at("c0").get<std::string>());
    for (const auto& v : js.at("edge_values")) s.per_edge.push_back(detail::edge_value_from_string(v.get<std::string>()));
    r.h0_basis.push_back(std::move(s));
  }
  for (const auto& g : j.at("h1_generators")) r.h1_generators.push_back(GF2Vector::from_string(g.at("c1").get<std::string>()));
  if (!j.at("qls").is_null()) {
    std::vector<EdgeAssignment> states;
    for (const auto& s : j.at("qls")) states.push_back(detail::assignment_from_bits(s.get<std::string>()));
    r.qls = std::move(states);
  }
  if (!j.at("qls_lift_check").is_null()) r.qls_lift_check = j.at("qls_lift_check").get<bool>();
  r.forward_check = detail::check_status_from_string(j.at("forward_check").get<std::string>());
  r.reverse_check = detail::check_status_from_string(j.at("reverse_check").get<std::string>());
  r.oracle_note = j.at("oracle_note").get<std::string>();
  return r;
}

inline Json to_json(const std::vector<MVStep>& steps) {
  Json arr = Json::array();
  for (const MVStep& s : steps) {
    Json j;
    j["step"] = s.step;
    j["kind"] = std::string(to_string(s.kind));
    j["id"] = s.id;
    if (s.feedback) j["feedback_class"] = std::string(to_string(*s.feedback));
    j["dim_h0"] = s.dim_h0;
    j["dim_h1"] = s.dim_h1;
    if (s.rank_delta) j["rank_delta"] = *s.rank_delta;
    arr.push_back(j);
  }
  return arr;
}

inline std::vector<MVStep> steps_from_json(const Json& arr) {
  std::vector<MVStep> out;
  for (const auto& j : arr) {
    MVStep s;
    s.step = j.at("step").get<std::size_t>();
    s.kind = j.at("kind").get<std::string>() == "gate" ? MVStep::Kind::Gate : MVStep::Kind::Wire;
    s.id = j.at("id").get<std::string>();
    if (j.contains("feedback_class")) {
      const auto f = j.at("feedback_class").get<std::string>();
      s.feedback = f == "COMPLETE" ? FeedbackClass::Complete : f == "PARTIAL" ? FeedbackClass::Partial : FeedbackClass::None;
    }
    s.dim_h0 = j.at("dim_h0").get<std::size_t>();
    s.dim_h1 = j.at("dim_h1").get<std::size_t>();
    if (j.contains("rank_delta")) s.rank_delta = j.at("rank_delta").get<std::size_t>();
    out.push_back(std::move(s));
  }
  return out;
}

inline Json to_json(const ConjectureReport& rep) {
  Json j;
  j["seed"] = rep.seed;
  j["max_gates"] = rep.max_gates;
  j["pass"] = rep.count(ConjectureVerdict::Pass);
  j["fail"] = rep.count(ConjectureVerdict::Fail);
  j["skipped"] = rep.count(ConjectureVerdict::Skipped);
  Json trials = Json::array();
  for (const auto& t : rep.trials) {
    Json jt{{"trial", t.index},         {"gates", t.gates},
            {"edges", t.edges},         {"dim_h0", t.dim_h0},
            {"qls_count", t.qls_count}, {"qls_span_dim", t.qls_span_dim},
            {"verdict", std::string(to_string(t.verdict))}};
    if (!t.netlist_text.empty()) jt["netlist"] = t.netlist_text;
    trials.push_back(jt);
  }
  j["trials"] = trials;
  return j;
}

// Human-readable report. QLS-lift sections are followed by the logic value on
// every edge.
inline std::string render_text(const CohomologyReport& r) {
  std::ostringstream os;
  os << "dim C0 = " << r.dim_c0 << ", dim C1 = " << r.dim_c1 << '\n';
  os << "dim H0 = " << r.dim_h0 << ", dim H1 = " << r.dim_h1 << '\n';
  os << "H0 basis (canonical; classification is relative to this basis): " << r.qls_lift_sections()
     << " QLS lift(s), " << r.h0_basis.size() - r.qls_lift_sections() << " transient\n";
  for (std::size_t i = 0; i < r.h0_basis.size(); ++i) {
    const Section& s = r.h0_basis[i];
    os << "  [" << i << "] " << to_string(s.classification) << "  " << s.label;
    if (s.classification == SectionClass::QlsLift) {
      os << "  {";
      for (std::size_t e = 0; e < s.per_edge.size(); ++e) {
        if (e) os << ' ';
        os << r.edge_ids[e] << '=' << (s.per_edge[e] == EdgeValue::Logic1 ? '1' : '0');
      }
      os << '}';
    }
    os << '\n';
  }
  os << "H1 generators:\n";
  if (r.h1_generators.empty()) os << "  (none)\n";
  for (const GF2Vector& g : r.h1_generators) {
    os << "  ";
    bool first = true;
    for (const auto& l : detail::support_labels(g, r.c1_labels)) {
      os << (first ? "" : " + ") << l;
      first = false;
    }
    os << '\n';
  }
  if (r.qls) {
    os << "QLS (" << r.qls->size() << "):\n";
    for (const auto& s : *r.qls) {
      os << "  ";
      for (std::size_t e = 0; e < s.size(); ++e) os << (e ? " " : "") << r.edge_ids[e] << '=' << (s[e] ? '1' : '0');
      os << '\n';
    }
    os << "QLS lift check: forward " << to_string(r.forward_check) << ", converse " << to_string(r.reverse_check)
       << " -> " << (r.qls_lift_check && *r.qls_lift_check ? "ok" : "FAILED") << '\n';
  } else {
    os << "QLS: unavailable (" << r.oracle_note << ")\n";
  }
  return os.str();
}

inline std::string render_steps_text(const std::vector<MVStep>& steps) {
  std::ostringstream os;
  os << "Mayer-Vietoris replay (per-wire classes depend on attachment order):\n";
  for (const MVStep& s : steps) {
    os << "  " << s.step << ": " << to_string(s.kind) << ' ' << s.id;
    if (s.feedback) os << "  rank " << *s.rank_delta << ' ' << to_string(*s.feedback);
    os << "  -> (" << s.dim_h0 << ", " << s.dim_h1 << ")\n";
  }
  return os.str();
}

// Edges whose C1 block meets the support of an H1 generator.
inline std::set<std::size_t> h1_support_edges(const CechComplex& cx, const std::vector<GF2Vector>& generators) {
  std::set<std::size_t> out;
  for (const GF2Vector& g : generators) {
    for (std::size_t row : g.support()) out.insert(cx.internal_edges().at(row / 2));
  }
  return out;
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

// Gates are boxes labeled with their type and stalk dimension; internal edges
// are solid, external edges dashed, and edges supporting H1 highlighted.
inline std::string render_dot(const CechComplex& cx, const std::optional<CohomologyReport>& report = std::nullopt) {
  const Netlist& n = cx.netlist();
  std::set<std::size_t> hot;
  if (report) hot = h1_support_edges(cx, report->h1_generators);
  std::ostringstream os;
  os << "digraph netlist {\n";
  if (!n.gates.empty()) os << "  rankdir=LR;\n";
  for (const Gate& g : n.gates) {
    os << "  " << detail::dot_quote(g.id) << " [shape=box, label="
       << detail::dot_quote(g.id + "\\n" + g.type + " dim=" + std::to_string(g.stalk_dim())) << "];\n";
  }
  for (std::size_t e = 0; e < n.edges.size(); ++e) {
    const Edge& edge = n.edges[e];
    std::string from, to;
    if (edge.source) {
      from = detail::dot_quote(edge.source->gate);
    } else {
      from = detail::dot_quote("in:" + edge.id);
      os << "  " << from << " [shape=point];\n";
    }
    if (edge.sink) {
      to = detail::dot_quote(edge.sink->gate);
    } else {
      to = detail::dot_quote("out:" + edge.id);
      os << "  " << to << " [shape=point];\n";
    }
    os << "  " << from << " -> " << to << " [label=" << detail::dot_quote(edge.id);
    if (!edge.is_internal()) os << ", style=dashed";
    if (hot.contains(e)) os << ", color=red, penwidth=2";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace swsheaf
