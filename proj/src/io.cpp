#include "grz/io.hpp"

#include <bit>
#include <ostream>

namespace grz {

using nlohmann::json;

Frame frame_from_json(const json& j) {
  if (!j.is_object() || !j.contains("worlds"))
    throw std::invalid_argument("frame object needs a \"worlds\" member");
  int n = j.at("worlds").get<int>();
  Frame f(n);
  if (j.contains("edges"))
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("edges must be [from, to] pairs");
      f.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    }
  if (j.contains("close")) {
    const auto& c = j.at("close");
    f = closure(f, c.value("reflexive", false), c.value("transitive", false));
  }
  return f;
}

json frame_to_json(const Frame& f) {
  json edges = json::array();
  for (auto [a, b] : f.edges()) edges.push_back({a, b});
  return {{"worlds", f.size()}, {"edges", edges}};
}

Model model_from_json(const json& j) {
  Model m{frame_from_json(j), {}};
  if (j.contains("valuation"))
    for (const auto& [var, worlds] : j.at("valuation").items()) {
      WorldSet set = 0;
      for (const auto& w : worlds) {
        int world = w.get<int>();
        if (world < 0 || world >= m.frame.size())
          throw std::invalid_argument("valuation world out of range");
        set |= world_bit(world);
      }
      m.valuation.emplace(var, set);
    }
  return m;
}

json model_to_json(const Model& m) {
  json j = frame_to_json(m.frame);
  json val = json::object();
  for (const auto& [var, set] : m.valuation) {
    json worlds = json::array();
    for (int w = 0; w < m.frame.size(); ++w)
      if ((set >> w) & 1) worlds.push_back(w);
    val[var] = worlds;
  }
  j["valuation"] = val;
  return j;
}

PointedModel pointed_model_from_json(const json& j) {
  PointedModel p{model_from_json(j), j.value("designated", 0)};
  if (p.point < 0 || p.point >= p.model.frame.size())
    throw std::invalid_argument("designated world out of range");
  return p;
}

json pointed_model_to_json(const PointedModel& p) {
  json j = model_to_json(p.model);
  j["designated"] = p.point;
  return j;
}

Labeling labeling_from_json(const json& j) {
  Labeling l{frame_from_json(j.at("frame")), j.value("designated", 0), {}};
  const auto& labels = j.at("labels");
  for (int w = 0; w < l.frame.size(); ++w) {
    std::string key = std::to_string(w);
    if (!labels.contains(key))
      throw std::invalid_argument("labels must cover every node; missing " +
                                  key);
    l.labels.push_back(parse_formula(labels.at(key).get<std::string>()));
  }
  return l;
}

json labeling_to_json(const Labeling& l) {
  json labels = json::object();
  for (int w = 0; w < l.frame.size(); ++w)
    labels[std::to_string(w)] = to_string(l.labels[w]);
  return {{"frame", frame_to_json(l.frame)},
          {"designated", l.designated},
          {"labels", labels}};
}

json countermodel_to_json(const Countermodel& c) {
  json j = model_to_json(c.model);
  j["world"] = c.world;
  return j;
}

json search_report_to_json(const SearchReport& r) {
  json j{{"outcome", r.found ? "countermodel" : "bound_exhausted"},
         {"frames_examined", r.frames_examined},
         {"bound", r.bound},
         {"class", to_string(r.frame_class)}};
  if (r.witness) j["witness"] = countermodel_to_json(*r.witness);
  return j;
}

namespace {

// Edges to draw: transitive reduction on the cluster quotient, plus a cycle
// through the members of each proper cluster.
std::vector<std::pair<int, int>> drawable_edges(const Frame& f) {
  int n = f.size();
  std::vector<WorldSet> reach(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) reach[w] = reachable_from(f, w);

  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<int> rep;
  for (int w = 0; w < n; ++w) {
    if (comp[w] >= 0) continue;
    int id = static_cast<int>(rep.size());
    rep.push_back(w);
    for (int v = w; v < n; ++v)
      if ((reach[w] >> v) & 1 && (reach[v] >> w) & 1) comp[v] = id;
  }
  int k = static_cast<int>(rep.size());

  std::vector<std::vector<bool>> qedge(k, std::vector<bool>(k, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (f.sees(a, b) && comp[a] != comp[b]) qedge[comp[a]][comp[b]] = true;
  std::vector<std::vector<bool>> qreach(k, std::vector<bool>(k, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((reach[a] >> b) & 1 && comp[a] != comp[b])
        qreach[comp[a]][comp[b]] = true;

  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (!qedge[a][b]) continue;
      bool redundant = false;
      for (int c = 0; c < k && !redundant; ++c)
        if (c != a && c != b && qedge[a][c] && qreach[c][b]) redundant = true;
      if (!redundant) out.emplace_back(rep[a], rep[b]);
    }
  for (int id = 0; id < k; ++id) {
    std::vector<int> members;
    for (int w = 0; w < n; ++w)
      if (comp[w] == id) members.push_back(w);
    if (members.size() < 2) continue;
    for (std::size_t i = 0; i < members.size(); ++i)
      out.emplace_back(members[i], members[(i + 1) % members.size()]);
  }
  return out;
}

void write_dot(const Frame& f, const std::vector<std::string>& annotations,
               std::ostream& out) {
  out << "digraph frame {\n  rankdir=BT;\n";
  for (int w = 0; w < f.size(); ++w) {
    out << "  n" << w << " [label=\"" << w;
    if (!annotations.empty() && !annotations[w].empty())
      out << ": " << annotations[w];
    out << "\"];\n";
  }
  for (auto [a, b] : drawable_edges(f))
    out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  if (!out) throw std::runtime_error("write failure on DOT output");
}

std::string escape_label(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

} // namespace

void export_dot(const Frame& f, std::ostream& out) {
  write_dot(f, {}, out);
}

void export_dot(const Model& m, std::ostream& out) {
  std::vector<std::string> notes(static_cast<std::size_t>(m.frame.size()));
  for (const auto& [var, set] : m.valuation)
    for (int w = 0; w < m.frame.size(); ++w)
      if ((set >> w) & 1) {
        if (!notes[w].empty()) notes[w] += ",";
        notes[w] += var;
      }
  write_dot(m.frame, notes, out);
}

void export_dot(const Labeling& l, std::ostream& out) {
  std::vector<std::string> notes;
  for (const Formula& phi : l.labels)
    notes.push_back(escape_label(to_string(phi)));
  write_dot(l.frame, notes, out);
}

} // namespace grz
