#include "ingnet/export.hpp"

#include <ostream>
#include <string_view>

namespace ingnet {

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void write_edge_list(std::ostream& out, const InGraph& g) {
  for (const auto& e : g.edges()) out << g.name(e.u) << '\t' << g.name(e.v) << '\t' << e.weight << '\n';
}

void write_dot(std::ostream& out, const InGraph& g) {
  out << "graph InN {\n";
  for (NodeId u = 0; u < g.node_count(); ++u) out << "  " << dot_quote(g.name(u)) << ";\n";
  for (const auto& e : g.edges())
    out << "  " << dot_quote(g.name(e.u)) << " -- " << dot_quote(g.name(e.v))
        << " [weight=" << e.weight << "];\n";
  out << "}\n";
}

void write_graphml(std::ostream& out, const InGraph& g) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
      << "  <key id=\"d0\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
      << "  <key id=\"d1\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
      << "  <graph id=\"InN\" edgedefault=\"undirected\">\n";
  for (NodeId u = 0; u < g.node_count(); ++u)
    out << "    <node id=\"n" << u << "\"><data key=\"d0\">" << xml_escape(g.name(u))
        << "</data></node>\n";
  for (const auto& e : g.edges())
    out << "    <edge source=\"n" << e.u << "\" target=\"n" << e.v << "\"><data key=\"d1\">"
        << e.weight << "</data></edge>\n";
  out << "  </graph>\n</graphml>\n";
}

}  // namespace ingnet
