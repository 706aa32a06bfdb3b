#include <arbor/serialize.hpp>

#include <sstream>

namespace arbor {

Json rational_json(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw Error(ErrorCode::ParseError, "expected a rational");
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
  }
}

Json words_json(const Presentation& p, const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const Word& w : ws) out.push_back(p.format(w));
  return out;
}

std::vector<Word> words_from_json(const Presentation& p, const Json& j) {
  std::vector<Word> out;
  for (const auto& w : j) out.push_back(p.parse_word(w.get<std::string>()));
  return out;
}

namespace {

std::string gen_name(const Presentation& p, int g) { return p.generators().at(g); }

Json path_json(const EdgePath& path) {
  Json out = Json::array();
  for (Step s : path) out.push_back({{"edge", s.edge}, {"forward", s.forward}});
  return out;
}

}  // namespace

Json to_json(const Presentation& p, const CayleyBall& b) {
  Json vs = Json::array(), es = Json::array();
  for (std::size_t i = 0; i < b.size(); ++i)
    vs.push_back({{"id", i}, {"word", p.format(b.vertex(static_cast<int>(i)))}, {"depth", b.depth(static_cast<int>(i))}});
  for (const auto& e : b.edges()) es.push_back({{"from", e.from}, {"to", e.to}, {"gen", gen_name(p, e.gen)}});
  return {{"radius", b.radius()}, {"size", b.size()}, {"vertices", vs}, {"edges", es}};
}

std::string to_dot(const Presentation& p, const CayleyBall& b) {
  std::ostringstream os;
  os << "digraph ball {\n";
  for (std::size_t i = 0; i < b.size(); ++i)
    os << "  " << i << " [label=\"" << p.format(b.vertex(static_cast<int>(i))) << "\"];\n";
  for (const auto& e : b.edges())
    os << "  " << e.from << " -> " << e.to << " [label=\"" << gen_name(p, e.gen) << "\"];\n";
  os << "}\n";
  return os.str();
}

Json to_json(const Presentation& p, const StallingsGraph& g) {
  Json es = Json::array();
  for (const auto& e : g.edges) es.push_back({{"from", e.from}, {"to", e.to}, {"gen", gen_name(p, e.gen)}});
  return {{"vertices", g.vertices}, {"base", g.base}, {"folded", g.folded}, {"edges", es}};
}

StallingsGraph stallings_from_json(const Presentation& p, const Json& j) {
  StallingsGraph g;
  g.vertices = j.at("vertices");
  g.base = j.at("base");
  g.folded = j.at("folded");
  for (const auto& e : j.at("edges")) {
    int gen = p.generator_index(e.at("gen").get<std::string>());
    g.edges.push_back({e.at("from"), e.at("to"), gen});
  }
  return g;
}

std::string to_dot(const Presentation& p, const StallingsGraph& g) {
  std::ostringstream os;
  os << "digraph stallings {\n";
  for (int v = 0; v < g.vertices; ++v)
    os << "  " << v << (v == g.base ? " [shape=doublecircle];\n" : " [shape=circle];\n");
  for (const auto& e : g.edges)
    os << "  " << e.from << " -> " << e.to << " [label=\"" << gen_name(p, e.gen) << "\"];\n";
  os << "}\n";
  return os.str();
}

Json to_json(const MetricCore& c) {
  const Presentation& p = c.group();
  Json vs = Json::array(), es = Json::array();
  for (int v = 0; v < c.vertex_count(); ++v) vs.push_back({{"id", v}, {"anchor", p.format(c.vertices[v].anchor)}});
  for (int k = 0; k < c.edge_count(); ++k) {
    const auto& e = c.edges[k];
    es.push_back({{"id", k}, {"from", e.from}, {"to", e.to}, {"label", p.format(e.label)}, {"length", e.length}});
  }
  Json out = {{"vertices", vs}, {"edges", es}};
  out["basepoint"] = c.basepoint ? Json(*c.basepoint) : Json(nullptr);
  return out;
}

MetricCore core_from_json(const Presentation& p, const Json& j) {
  try {
    MetricCore c = make_core(p);
    for (const auto& v : j.at("vertices")) {
      if (v.at("id").get<int>() != c.vertex_count()) throw Error(ErrorCode::ParseError, "vertex ids must be 0..n-1 in order");
      c.add_vertex(p.parse_word(v.at("anchor").get<std::string>()));
    }
    for (const auto& e : j.at("edges")) {
      int from = e.at("from"), to = e.at("to");
      if (from < 0 || to < 0 || from >= c.vertex_count() || to >= c.vertex_count())
        throw Error(ErrorCode::ParseError, "edge endpoint out of range");
      c.add_edge(from, to, p.parse_word(e.at("label").get<std::string>()));
      if (e.contains("length") && e.at("length").get<int>() != c.edges.back().length)
        throw Error(ErrorCode::ParseError, "edge length disagrees with its label");
    }
    if (j.contains("basepoint") && !j.at("basepoint").is_null()) c.basepoint = j.at("basepoint").get<int>();
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

std::string to_dot(const MetricCore& c) {
  const Presentation& p = c.group();
  std::ostringstream os;
  os << "digraph core {\n";
  for (int v = 0; v < c.vertex_count(); ++v) {
    os << "  " << v << " [label=\"" << v << ": " << p.format(c.vertices[v].anchor) << "\"";
    if (c.basepoint == v) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (const auto& e : c.edges)
    os << "  " << e.from << " -> " << e.to << " [label=\"" << p.format(e.label) << " (" << e.length << ")\"];\n";
  os << "}\n";
  return os.str();
}

Json to_json(const QiEstimate& q) {
  Json pareto = Json::array();
  for (const auto& [k, c] : q.pareto) pareto.push_back({rational_json(k), rational_json(c)});
  return {{"K", rational_json(q.K)},
          {"C", rational_json(q.C)},
          {"radius", q.radius},
          {"witness", {q.witness.first, q.witness.second}},
          {"pareto", pareto},
          {"samples", q.samples}};
}

QiEstimate qi_from_json(const Json& j) {
  QiEstimate q;
  q.K = rational_from_json(j.at("K"));
  q.C = rational_from_json(j.at("C"));
  q.radius = j.at("radius");
  q.witness = {j.at("witness")[0], j.at("witness")[1]};
  for (const auto& e : j.at("pareto")) q.pareto.emplace_back(rational_from_json(e[0]), rational_from_json(e[1]));
  q.samples = j.at("samples");
  return q;
}

Json to_json(const MetricCore& c, const FoldMove& m) {
  const Presentation& p = c.group();
  Json out = {{"kind", move_kind(m)}, {"edge", move_edge(m)}};
  std::visit(
      [&](const auto& mv) {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, AddBalloon>) {
          out["reversed"] = mv.reversed;
          out["gamma"] = path_json(mv.gamma);
          out["stem"] = p.format(mv.stem);
          out["loop"] = p.format(mv.loop);
          out["holonomy"] = p.format(mv.holonomy);
        } else {
          out["gamma1"] = path_json(mv.gamma1);
          out["gamma2"] = path_json(mv.gamma2);
          if constexpr (std::is_same_v<T, ReplaceEdge>) out["label"] = p.format(mv.label);
        }
      },
      m);
  return out;
}

Json to_json(const PredictedConstants& pc) {
  return {{"K", rational_json(pc.K)},   {"C", rational_json(pc.C)},   {"D", pc.D},
          {"K0", rational_json(pc.K0)}, {"C0", rational_json(pc.C0)}, {"K1", rational_json(pc.K1)},
          {"C1", rational_json(pc.C1)}};
}

Json to_json(const CoreMap& m) {
  const Presentation& p = m.source.group();
  Json assign = Json::array();
  for (std::size_t v = 0; v < m.vertex_map.size(); ++v)
    assign.push_back({{"source", v},
                      {"domain_point", p.format(m.domain_points[v])},
                      {"target", m.vertex_map[v].target_vertex},
                      {"target_point", p.format(m.vertex_map[v].target_point)}});
  Json paths = Json::array();
  for (const auto& path : m.edge_paths) paths.push_back(path_json(path));
  return {{"source", to_json(m.source)},
          {"target", to_json(m.target)},
          {"vertex_map", assign},
          {"edge_paths", paths},
          {"D", m.D},
          {"surjective", map_is_surjective(m)},
          {"source_qi", to_json(m.source_qi)},
          {"target_qi", to_json(m.target_qi)},
          {"predicted", to_json(m.predicted)}};
}

std::string to_dot(const CoreMap& m) {
  const Presentation& p = m.source.group();
  std::ostringstream os;
  os << "digraph map {\n  subgraph cluster_source {\n    label=\"source\";\n";
  for (int v = 0; v < m.source.vertex_count(); ++v) os << "    s" << v << ";\n";
  for (const auto& e : m.source.edges)
    os << "    s" << e.from << " -> s" << e.to << " [label=\"" << p.format(e.label) << "\"];\n";
  os << "  }\n  subgraph cluster_target {\n    label=\"target\";\n";
  for (int v = 0; v < m.target.vertex_count(); ++v) os << "    t" << v << ";\n";
  for (const auto& e : m.target.edges)
    os << "    t" << e.from << " -> t" << e.to << " [label=\"" << p.format(e.label) << " (" << e.length << ")\"];\n";
  os << "  }\n";
  for (std::size_t v = 0; v < m.vertex_map.size(); ++v)
    os << "  s" << v << " -> t" << m.vertex_map[v].target_vertex << " [style=dashed];\n";
  os << "}\n";
  return os.str();
}

Json to_json(const Presentation& p, const GeneratingTuple& t) {
  return {{"words", words_json(p, t.words)}, {"tau", t.tau}, {"class", t.class_id}};
}

Json to_json(const Presentation& p, const ChainRecord& r) {
  Json tuples = Json::array();
  for (const auto& t : r.tuples) tuples.push_back(words_json(p, t));
  Json out = {{"steps", tuples},
              {"edge_counts", r.edge_counts},
              {"ranks", r.ranks},
              {"surjective", r.surjective},
              {"strict", r.strict},
              {"edges_nonincreasing", r.edges_nonincreasing},
              {"stabilized", r.stabilized}};
  out["stabilization_index"] = r.stabilized ? Json(r.stabilization_index) : Json("not stabilized within horizon");
  out["rank_history"] = r.rank_history;
  return out;
}

ChainRecord chain_record_from_json(const Presentation& p, const Json& j) {
  ChainRecord r;
  for (const auto& t : j.at("steps")) r.tuples.push_back(words_from_json(p, t));
  r.edge_counts = j.at("edge_counts").get<std::vector<int>>();
  r.ranks = j.at("ranks").get<std::vector<int>>();
  r.surjective = j.at("surjective").get<std::vector<bool>>();
  r.strict = j.at("strict").get<std::vector<bool>>();
  r.edges_nonincreasing = j.at("edges_nonincreasing");
  r.stabilized = j.at("stabilized");
  if (r.stabilized) r.stabilization_index = j.at("stabilization_index");
  else r.stabilization_index = static_cast<int>(r.tuples.size());
  r.rank_history = j.at("rank_history").get<std::vector<std::vector<int>>>();
  return r;
}

Json to_json(const Presentation& p, const ReducedChain& r) {
  Json tuples = Json::array();
  for (const auto& t : r.chain) tuples.push_back(words_json(p, t));
  return {{"steps", tuples}, {"replaced", r.replaced}, {"rank_history", r.rank_history}};
}

}  // namespace arbor
