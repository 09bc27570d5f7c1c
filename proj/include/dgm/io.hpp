#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dgm/forbidden.hpp"

namespace dgm {

// Line-oriented ASCII formats; every file ends with a checksum comment line
// for corpus integrity. JSON is used only for certificates and search
// reports.

namespace io {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string with_checksum(const std::string& body) {
  std::ostringstream out;
  out << body << "# fnv1a " << std::hex << fnv1a(body) << "\n";
  return out.str();
}

// Splits the trailing checksum line off and verifies it when present.
inline std::string strip_checksum(const std::string& text) {
  auto pos = text.rfind("# fnv1a ");
  if (pos == std::string::npos) return text;
  std::string body = text.substr(0, pos);
  std::istringstream line(text.substr(pos + 8));
  std::uint64_t expect = 0;
  line >> std::hex >> expect;
  if (fnv1a(body) != expect) throw ParseError("checksum mismatch");
  return body;
}

inline int parse_int(const std::string& s) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw ParseError("bad integer: " + s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad integer: " + s);
  }
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

}  // namespace io

// --- matroid files -----------------------------------------------------------

inline std::string print_matroid(const BinaryMatroid& m) {
  auto rep = m.binary_rep();
  if (!rep) throw ArgumentError("matroid file format requires a binary matroid");
  BinaryMatroid work = m.has_rep() ? m : BinaryMatroid::from_rep(m.elems.labels, *rep);
  const auto& sf = work.std_form();
  std::ostringstream out;
  out << "bm " << sf.rank << " " << m.size() << "\n";
  for (int e = 0; e < m.size(); ++e) out << (e ? " " : "") << m.elems.labels[e];
  out << "\n";
  for (int i = 0; i < sf.rank; ++i) {
    for (int e = 0; e < m.size(); ++e) {
      bool one = has_bit(sf.base, e) ? (e == sf.base_order[i])
                                     : has_bit(sf.fund[e], sf.base_order[i]);
      out << (one ? '1' : '0');
    }
    out << "\n";
  }
  return io::with_checksum(out.str());
}

inline BinaryMatroid parse_matroid(const std::string& text) {
  std::istringstream in(io::strip_checksum(text));
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty matroid file");
  auto head = io::tokens(line);
  if (head.size() != 3 || head[0] != "bm") throw ParseError("bad matroid header");
  int r = io::parse_int(head[1]), n = io::parse_int(head[2]);
  if (!std::getline(in, line)) throw ParseError("missing label row");
  auto labels = io::tokens(line);
  if ((int)labels.size() != n) throw ParseError("label count mismatch");
  std::vector<Mask> rows;
  for (int i = 0; i < r; ++i) {
    if (!std::getline(in, line)) throw ParseError("missing matrix row");
    auto t = io::tokens(line);
    if (t.size() != 1 || (int)t[0].size() != n) throw ParseError("bad matrix row");
    Mask row = 0;
    for (int j = 0; j < n; ++j) {
      if (t[0][j] == '1') row |= bit(j);
      else if (t[0][j] != '0') throw ParseError("matrix entries must be 0/1");
    }
    rows.push_back(row);
  }
  return BinaryMatroid::from_matrix_rows(labels, rows);
}

// --- graft files ---------------------------------------------------------------

inline std::string print_graft(const Graft& g) {
  std::ostringstream out;
  out << "graft " << g.graph.n_vertices() << " " << g.graph.n_edges() << "\n";
  for (int i = 0; i < g.graph.n_vertices(); ++i) out << (i ? " " : "") << g.graph.vertices[i];
  out << "\n";
  out << "T:";
  for (auto& t : g.terminals) out << " " << t;
  out << "\n";
  for (auto& e : g.graph.edges) out << e.label << " " << e.u << " " << e.v << "\n";
  return io::with_checksum(out.str());
}

inline Graft parse_graft(const std::string& text) {
  std::istringstream in(io::strip_checksum(text));
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty graft file");
  auto head = io::tokens(line);
  if (head.size() != 3 || head[0] != "graft") throw ParseError("bad graft header");
  int nv = io::parse_int(head[1]), ne = io::parse_int(head[2]);
  if (!std::getline(in, line)) throw ParseError("missing vertex row");
  auto vs = io::tokens(line);
  if ((int)vs.size() != nv) throw ParseError("vertex count mismatch");
  if (!std::getline(in, line)) throw ParseError("missing terminal row");
  auto ts = io::tokens(line);
  if (ts.empty() || ts[0] != "T:") throw ParseError("terminal row must start with 'T:'");
  std::set<std::string> terms(ts.begin() + 1, ts.end());
  std::vector<GraphEdge> edges;
  for (int i = 0; i < ne; ++i) {
    if (!std::getline(in, line)) throw ParseError("missing edge row");
    auto t = io::tokens(line);
    if (t.size() != 3) throw ParseError("edge rows are 'label u v'");
    edges.push_back({t[0], t[1], t[2]});
  }
  return Graft(MultiGraph(vs, edges), terms);
}

// --- decomposition files ----------------------------------------------------------

inline std::string print_decomposition(const CyclicDecomposition& d) {
  std::ostringstream out;
  out << "decomp " << d.host.n_vertices() << " " << d.host.n_edges() << "\n";
  for (int i = 0; i < d.host.n_vertices(); ++i) out << (i ? " " : "") << d.host.vertices[i];
  out << "\n";
  for (auto& e : d.host.edges) out << e.label << " " << e.u << " " << e.v << "\n";
  for (auto& [x, bagv] : d.bags) {
    out << "bag " << x << ":";
    for (auto& v : bagv) out << " " << v;
    out << "\n";
  }
  return io::with_checksum(out.str());
}

inline CyclicDecomposition parse_decomposition(const std::string& text) {
  std::istringstream in(io::strip_checksum(text));
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty decomposition file");
  auto head = io::tokens(line);
  if (head.size() != 3 || head[0] != "decomp") throw ParseError("bad decomposition header");
  int nv = io::parse_int(head[1]), ne = io::parse_int(head[2]);
  if (!std::getline(in, line)) throw ParseError("missing host vertex row");
  auto vs = io::tokens(line);
  if ((int)vs.size() != nv) throw ParseError("host vertex count mismatch");
  CyclicDecomposition d;
  std::vector<GraphEdge> edges;
  for (int i = 0; i < ne; ++i) {
    if (!std::getline(in, line)) throw ParseError("missing host edge row");
    auto t = io::tokens(line);
    if (t.size() != 3) throw ParseError("host edge rows are 'label u v'");
    edges.push_back({t[0], t[1], t[2]});
  }
  d.host = MultiGraph(vs, edges);
  while (std::getline(in, line)) {
    auto t = io::tokens(line);
    if (t.empty()) continue;
    if (t[0] != "bag" || t.size() < 2 || t[1].back() != ':')
      throw ParseError("bag rows are 'bag x: v1 v2 ...'");
    std::string x = t[1].substr(0, t[1].size() - 1);
    d.bags[x] = std::vector<std::string>(t.begin() + 2, t.end());
  }
  return d;
}

// --- certificate JSON ---------------------------------------------------------------

namespace io {

inline nlohmann::json graph_json(const MultiGraph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertices;
  j["edges"] = nlohmann::json::array();
  for (auto& e : g.edges) j["edges"].push_back({e.label, e.u, e.v});
  return j;
}

inline MultiGraph graph_from_json(const nlohmann::json& j) {
  std::vector<std::string> vs = j.at("vertices").get<std::vector<std::string>>();
  std::vector<GraphEdge> es;
  for (auto& e : j.at("edges")) es.push_back({e.at(0), e.at(1), e.at(2)});
  return MultiGraph(vs, es);
}

inline nlohmann::json part_json(const PartWitness& p) {
  return {{"marker", p.marker}, {"class", p.cographic ? "cographic" : "graphic"},
          {"graph", graph_json(p.graph)}};
}

inline PartWitness part_from_json(const nlohmann::json& j) {
  PartWitness p;
  p.marker = j.at("marker");
  p.cographic = j.at("class") == "cographic";
  p.graph = graph_from_json(j.at("graph"));
  return p;
}

inline nlohmann::json tree_json(const SerializedTree& t) {
  nlohmann::json nodes = nlohmann::json::array();
  for (auto& n : t.nodes)
    nodes.push_back({{"name", n.name}, {"labels", n.labels}, {"rows", n.rows}});
  nlohmann::json edges = nlohmann::json::array();
  for (auto& [a, b, mk] : t.edges) edges.push_back({a, b, mk});
  return {{"nodes", nodes}, {"edges", edges}};
}

inline SerializedTree tree_from_json(const nlohmann::json& j) {
  SerializedTree t;
  for (auto& n : j.at("nodes")) {
    SerializedTree::SNode sn;
    sn.name = n.at("name");
    sn.labels = n.at("labels").get<std::vector<std::string>>();
    sn.rows = n.at("rows").get<std::vector<std::string>>();
    t.nodes.push_back(sn);
  }
  for (auto& e : j.at("edges")) t.edges.push_back({e.at(0), e.at(1), e.at(2)});
  return t;
}

}  // namespace io

inline nlohmann::json certificate_json(const Certificate& cert) {
  nlohmann::json j;
  j["schema"] = "dgm-cert/1";
  j["kind"] = cert.kind();
  if (auto* c = std::get_if<GraphicCert>(&cert.v)) {
    j["graph"] = io::graph_json(c->graph);
  } else if (auto* c = std::get_if<CographicCert>(&cert.v)) {
    j["graph"] = io::graph_json(c->graph);
  } else if (auto* c = std::get_if<TwoSumCert>(&cert.v)) {
    j["marker"] = c->marker;
    j["graphic_part"] = io::graph_json(c->graphic_part);
    j["cographic_part_dual"] = io::graph_json(c->cographic_part_dual);
  } else if (auto* c = std::get_if<WheelCert>(&cert.v)) {
    j["k"] = c->k;
    j["hub_iso"] = nlohmann::json::object();
    for (auto& [a, b] : c->hub_iso) j["hub_iso"][a] = b;
    j["circuit_hyperplane"] = c->circuit_hyperplane;
    j["parts"] = nlohmann::json::array();
    for (auto& p : c->parts) j["parts"].push_back(io::part_json(p));
  } else if (auto* c = std::get_if<FanCert>(&cert.v)) {
    j["spine"] = nlohmann::json::array();
    for (auto& sn : c->spine)
      j["spine"].push_back({{"elements", sn.elements}, {"type", sn.corank1 ? "corank1" : "rank1"}});
    j["spine_markers"] = c->spine_markers;
    j["parts"] = nlohmann::json::array();
    for (auto& [at, p] : c->parts) {
      auto pj = io::part_json(p);
      pj["at"] = at;
      j["parts"].push_back(pj);
    }
  } else if (auto* c = std::get_if<ComponentsCert>(&cert.v)) {
    j["components"] = nlohmann::json::array();
    for (auto& [els, sub] : c->parts)
      j["components"].push_back({{"elements", els}, {"certificate", certificate_json(*sub)}});
  } else if (auto* c = std::get_if<NegativeCert>(&cert.v)) {
    j["reason"] = c->reason;
    if (c->reason == "excluded-minor") {
      j["minor"] = c->minor_name;
      j["delete"] = c->del;
      j["contract"] = c->con;
      j["iso"] = nlohmann::json::object();
      for (auto& [a, b] : c->iso) j["iso"][a] = b;
    } else if (c->reason == "tree-audit") {
      j["tree"] = io::tree_json(*c->tree);
      j["audit"] = c->audit;
    } else if (c->reason == "component") {
      j["elements"] = c->component_elements;
      j["certificate"] = certificate_json(*c->component_cert);
    }
  }
  return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  if (j.at("schema") != "dgm-cert/1") throw ParseError("unknown certificate schema");
  std::string kind = j.at("kind");
  if (kind == "graphic") return Certificate{GraphicCert{io::graph_from_json(j.at("graph"))}};
  if (kind == "cographic") return Certificate{CographicCert{io::graph_from_json(j.at("graph"))}};
  if (kind == "twosum") {
    TwoSumCert c;
    c.marker = j.at("marker");
    c.graphic_part = io::graph_from_json(j.at("graphic_part"));
    c.cographic_part_dual = io::graph_from_json(j.at("cographic_part_dual"));
    return Certificate{c};
  }
  if (kind == "wheel") {
    WheelCert c;
    c.k = j.at("k");
    for (auto& [a, b] : j.at("hub_iso").items()) c.hub_iso.push_back({a, b});
    c.circuit_hyperplane = j.at("circuit_hyperplane").get<std::vector<std::string>>();
    for (auto& p : j.at("parts")) c.parts.push_back(io::part_from_json(p));
    return Certificate{c};
  }
  if (kind == "fan") {
    FanCert c;
    for (auto& sn : j.at("spine")) {
      FanCert::SpineNode s;
      s.elements = sn.at("elements").get<std::vector<std::string>>();
      s.corank1 = sn.at("type") == "corank1";
      c.spine.push_back(s);
    }
    c.spine_markers = j.at("spine_markers").get<std::vector<std::string>>();
    for (auto& p : j.at("parts")) c.parts.push_back({p.at("at"), io::part_from_json(p)});
    return Certificate{c};
  }
  if (kind == "components") {
    ComponentsCert c;
    for (auto& comp : j.at("components"))
      c.parts.push_back({comp.at("elements").get<std::vector<std::string>>(),
                         std::make_shared<Certificate>(certificate_from_json(comp.at("certificate")))});
    return Certificate{c};
  }
  if (kind == "not-delta-graphic") {
    NegativeCert c;
    c.reason = j.at("reason");
    if (c.reason == "excluded-minor") {
      c.minor_name = j.at("minor");
      c.del = j.at("delete").get<std::vector<std::string>>();
      c.con = j.at("contract").get<std::vector<std::string>>();
      for (auto& [a, b] : j.at("iso").items()) c.iso.push_back({a, b});
    } else if (c.reason == "tree-audit") {
      c.tree = io::tree_from_json(j.at("tree"));
      c.audit = j.at("audit").get<std::vector<std::string>>();
    } else if (c.reason == "component") {
      c.component_elements = j.at("elements").get<std::vector<std::string>>();
      c.component_cert =
          std::make_shared<Certificate>(certificate_from_json(j.at("certificate")));
    } else {
      throw ParseError("unknown negative-certificate reason");
    }
    return Certificate{c};
  }
  throw ParseError("unknown certificate kind");
}

// --- search reports ---------------------------------------------------------------

inline nlohmann::json search_report_json(const std::vector<MinimalityReport>& reports) {
  nlohmann::json j;
  j["schema"] = "dgm-search/1";
  j["reports"] = nlohmann::json::array();
  for (auto& r : reports) {
    nlohmann::json e;
    e["size"] = r.matroid.size();
    e["rank"] = r.matroid.rank();
    e["canon"] = r.canon;
    e["minimal"] = r.minimal;
    if (!r.note.empty()) e["note"] = r.note;
    if (r.matroid.is_binary()) {
      e["matroid"] = print_matroid(r.matroid);
    } else {
      e["bases"] = nlohmann::json::array();
      auto bs = r.matroid.bases();
      for (Mask b : *bs) e["bases"].push_back(r.matroid.elems.labels_of(b));
    }
    nlohmann::json minors = nlohmann::json::array();
    for (auto& [mv, ok] : r.minor_results) minors.push_back({{"minor", mv}, {"delta_graphic", ok}});
    e["minors"] = minors;
    j["reports"].push_back(e);
  }
  return j;
}

// --- config ----------------------------------------------------------------------

inline void apply_config_line(const std::string& key, long value) {
  auto& c = caps();
  if (key == "base_enum") c.base_enum = (int)value;
  else if (key == "iso") c.iso = (int)value;
  else if (key == "minor_scan") c.minor_scan = (int)value;
  else if (key == "subset_scan") c.subset_scan = (int)value;
  else if (key == "twosep_rank") c.twosep_rank = (int)value;
  else if (key == "pivot_minor") c.pivot_minor = (int)value;
  else if (key == "graft_edges") c.graft_edges = (int)value;
  else if (key == "regular_steps") c.regular_steps = value;
  else throw ParseError("unknown config key: " + key);
}

inline void load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config lines are key=value");
    long v = 0;
    try {
      v = std::stol(line.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("bad config value in: " + line);
    }
    apply_config_line(line.substr(0, eq), v);
  }
}

namespace io {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

}  // namespace io

}  // namespace dgm
