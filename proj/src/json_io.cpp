#include "lifetree/json_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace lifetree {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

}  // namespace

std::string graph_to_json(const NetworkGraph& g) {
  json nodes = json::array();
  for (int i = 0; i < g.n; ++i) {
    nodes.push_back({{"id", i},
                     {"x", g.coords[i].first},
                     {"y", g.coords[i].second},
                     {"energy", g.energy[i]}});
  }
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  const json j = {{"n", g.n},
                  {"root", g.root},
                  {"area_side", g.area_side},
                  {"nodes", nodes},
                  {"edges", edges}};
  return j.dump(2) + "\n";
}

NetworkGraph graph_from_json(const std::string& text) {
  const json j = json::parse(text);
  const int n = j.at("n").get<int>();
  const int root = j.at("root").get<int>();
  const double area = j.at("area_side").get<double>();

  std::vector<double> energy(n, 0.0);
  std::vector<std::pair<double, double>> coords(n, {0.0, 0.0});
  for (const auto& node : j.at("nodes")) {
    const int id = node.at("id").get<int>();
    if (id < 0 || id >= n) throw std::runtime_error("graph file: node id out of range");
    energy[id] = node.at("energy").get<double>();
    coords[id] = {node.at("x").get<double>(), node.at("y").get<double>()};
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return make_graph(n, root, std::move(energy), std::move(edges), std::move(coords), area);
}

void save_graph(const NetworkGraph& g, const std::string& path) {
  write_file(path, graph_to_json(g));
}

NetworkGraph load_graph(const std::string& path) {
  return graph_from_json(read_file(path));
}

std::string tree_to_json(const RoutingTree& t) {
  json parents = json::array();
  for (int p : t.parent) {
    if (p == kNoParent)
      parents.push_back(nullptr);
    else
      parents.push_back(p);
  }
  const json j = {{"root", t.root}, {"parent", parents}};
  return j.dump(2) + "\n";
}

RoutingTree tree_from_json(const std::string& text) {
  const json j = json::parse(text);
  RoutingTree t;
  t.root = j.at("root").get<int>();
  for (const auto& p : j.at("parent"))
    t.parent.push_back(p.is_null() ? kNoParent : p.get<int>());
  return t;
}

void save_tree(const RoutingTree& t, const std::string& path) {
  write_file(path, tree_to_json(t));
}

RoutingTree load_tree(const std::string& path) {
  return tree_from_json(read_file(path));
}

std::string report_to_json(const LifetimeReport& rep) {
  const json j = {{"lifetime", rep.lifetime},
                  {"bottleneck", rep.bottleneck},
                  {"depth", rep.depth},
                  {"outflow", rep.outflow},
                  {"rate", rep.rate}};
  return j.dump(2) + "\n";
}

}  // namespace lifetree
