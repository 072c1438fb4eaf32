// JSON file formats for graphs, trees and lifetime reports.

#pragma once

#include <string>

#include "lifetree/graph.hpp"
#include "lifetree/routing_tree.hpp"

namespace lifetree {

// Graph schema:
// {"n": int, "root": int, "area_side": float,
//  "nodes": [{"id": int, "x": float, "y": float, "energy": float}],
//  "edges": [[int, int], ...]}   (each edge once, smaller id first)
std::string graph_to_json(const NetworkGraph& g);
NetworkGraph graph_from_json(const std::string& text);
void save_graph(const NetworkGraph& g, const std::string& path);
NetworkGraph load_graph(const std::string& path);

// Tree schema: {"root": int, "parent": [int|null, ...]} indexed by node id.
std::string tree_to_json(const RoutingTree& t);
RoutingTree tree_from_json(const std::string& text);
void save_tree(const RoutingTree& t, const std::string& path);
RoutingTree load_tree(const std::string& path);

std::string report_to_json(const LifetimeReport& rep);

}  // namespace lifetree
