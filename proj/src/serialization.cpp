#include "transfer/serialization.hpp"

#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace transfer {

namespace {

int read_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < 0 || v > 62) throw ParseError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

GridShape read_shape(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("n")) throw ParseError("expected an object with \"m\" and \"n\"");
  return {read_int(j["m"], "m"), read_int(j["n"], "n")};
}

GridPoint read_point(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("a point must be a two-element array");
  return {read_int(j[0], "coordinate"), read_int(j[1], "coordinate")};
}

const Json& read_array(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
  const Json& a = j[key];
  if (!a.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
  return a;
}

}  // namespace

Json to_json(GridPoint x) { return Json::array({x.i, x.j}); }

Json to_json(const TransferSystem& t) {
  Json rel = Json::array();
  for (const auto& [k, h] : t.pairs()) rel.push_back(Json::array({to_json(k), to_json(h)}));
  return Json{{"m", t.shape().m}, {"n", t.shape().n}, {"relations", std::move(rel)}};
}

Json to_json(const SaturatedCover& s) {
  Json hor = Json::array(), ver = Json::array();
  for (const auto& e : s.edges().edges())
    (e.orientation == Orientation::horizontal ? hor : ver).push_back(to_json(e.source));
  return Json{{"m", s.shape().m}, {"n", s.shape().n}, {"horizontal", std::move(hor)}, {"vertical", std::move(ver)}};
}

Json to_json(const RealizationCertificate& c) {
  Json members = Json::array();
  c.index_set.mask().for_each([&](Residue x) { members.push_back(x); });
  return Json{{"p", c.group.p},
              {"q", c.group.q},
              {"n", c.group.n},
              {"target", to_json(c.target)},
              {"index_set", std::move(members)},
              {"witness", c.witness},
              {"verified", verify_certificate(c)}};
}

DocumentKind document_kind(const Json& j) {
  if (!j.is_object()) return DocumentKind::Unknown;
  if (j.contains("relations")) return DocumentKind::TransferSystem;
  if (j.contains("horizontal") || j.contains("vertical")) return DocumentKind::Cover;
  return DocumentKind::Unknown;
}

Relation relation_from_json(const Json& j) {
  const GridShape shape = read_shape(j);
  Relation r(shape);
  for (const auto& x : grid_points(shape)) r.add(x, x);
  for (const Json& pair : read_array(j, "relations")) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError("a relation entry must be [source, target]");
    const GridPoint k = read_point(pair[0]), h = read_point(pair[1]);
    if (!shape.contains(k) || !shape.contains(h)) throw ParseError("relation entry outside the grid");
    if (!leq(k, h)) throw ParseError("relation entry is not order-compatible");
    r.add(k, h);
  }
  return r;
}

TransferSystem transfer_system_from_json(const Json& j) { return TransferSystem::from_relation(relation_from_json(j)); }

EdgeSet edge_set_from_json(const Json& j) {
  const GridShape shape = read_shape(j);
  EdgeSet edges(shape);
  for (const Json& p : read_array(j, "horizontal")) {
    const GridPoint s = read_point(p);
    if (s.i >= shape.m || s.j > shape.n) throw ParseError("horizontal edge outside the grid");
    edges.set_horizontal(s.i + 1, s.j);
  }
  for (const Json& p : read_array(j, "vertical")) {
    const GridPoint s = read_point(p);
    if (s.i > shape.m || s.j >= shape.n) throw ParseError("vertical edge outside the grid");
    edges.set_vertical(s.j + 1, s.i);
  }
  return edges;
}

std::string code_line(const CodePair& c) {
  std::ostringstream os;
  auto list = [&](const std::vector<int>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  list(c.a);
  os << ' ';
  list(c.b);
  return os.str();
}

void write_dot(std::ostream& os, const SaturatedCover& s) {
  const GridShape shape = s.shape();
  const CodePair c = codes_of(s);
  os << "digraph cover {\n  label=\"" << code_line(c) << "\";\n  node [shape=point];\n";
  for (const auto& x : grid_points(shape))
    os << "  \"" << x.i << ',' << x.j << "\" [pos=\"" << x.i << ',' << x.j << "!\"];\n";
  for (const auto& e : s.edges().edges())
    os << "  \"" << e.source.i << ',' << e.source.j << "\" -> \"" << e.target.i << ',' << e.target.j << "\";\n";
  os << "}\n";
}

std::vector<Json> read_documents_from_string(const std::string& text) {
  std::vector<Json> docs;
  try {
    Json whole = Json::parse(text);
    if (whole.is_array() && !whole.empty() && whole[0].is_object()) {
      for (auto& d : whole) docs.push_back(std::move(d));
    } else {
      docs.push_back(std::move(whole));
    }
    return docs;
  } catch (const Json::parse_error&) {
  }
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      docs.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw ParseError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (docs.empty()) throw ParseError("no JSON documents in input");
  return docs;
}

std::vector<Json> read_documents(std::istream& is) {
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return read_documents_from_string(text);
}

}  // namespace transfer
