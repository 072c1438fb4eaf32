// Random placement, unit-disk connectivity and energy assignment.

#pragma once

#include <cstdint>
#include <vector>

#include "lifetree/graph.hpp"

namespace lifetree {

// n i.i.d. uniform points in [0, area_side]^2; coordinates are drawn in
// node-id order, x before y. Requires n >= 2.
NodePlacement generate_placement(int n, double area_side, std::uint64_t seed);

// Radio range divided by the mean inter-node spacing l0 = sqrt(area^2 / n).
double scaled_range(double l_r, double area_side, int n);

// Inverse of scaled_range: the absolute radio range for a scaled range r.
double range_for_scaled(double r, double area_side, int n);

// Unit-disk graph: edge (i, j) iff Euclidean distance <= l_r (closed disk,
// so a pair at exactly l_r is connected).
NetworkGraph build_disk_graph(const NodePlacement& placement, double l_r,
                              const std::vector<double>& energies, int root);

// i.i.d. uniform on [e_min, e_max]; all n entries are drawn (the root's is
// ignored downstream). Requires alpha >= 1.
std::vector<double> assign_energies(int n, const EnergySpec& spec);

// True iff every node is reachable from the root.
bool is_connected(const NetworkGraph& g);

}  // namespace lifetree
