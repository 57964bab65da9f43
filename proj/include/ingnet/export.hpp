#pragma once

#include <iosfwd>

#include "ingnet/graph.hpp"

namespace ingnet {

/// `name_u<TAB>name_v<TAB>weight`, one unordered edge per line, u < v,
/// ordered by u then v.
void write_edge_list(std::ostream& out, const InGraph& g);

/// Undirected DOT graph with a `weight` attribute on every edge.
void write_dot(std::ostream& out, const InGraph& g);

/// GraphML with an integer `weight` edge key and a `name` node key.
void write_graphml(std::ostream& out, const InGraph& g);

}  // namespace ingnet
