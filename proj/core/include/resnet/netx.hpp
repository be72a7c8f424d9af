#pragma once

#include <iosfwd>
#include <string>

#include "resnet/network.hpp"
#include "resnet/operators.hpp"

namespace resnet {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// NETX, line oriented: optional '# comment' lines, a 'netx 1' header, then
// edge lines 'e <u> <v> <c>'. Vertices are implicit 0..max id; parallel edge
// lines merge by conductance addition.
Network parse_network(std::istream& in);
Network parse_network_string(const std::string& text);
Network load_network(const std::string& path);

// Emits edges sorted by (min(u,v), max(u,v)); floats use shortest
// round-trip formatting, so parse(serialize(net)) is bit-identical.
std::string serialize_network(const Network& net);

// 'v <id> <value>' lines.
std::string serialize_vertex_function(const VertexFunction& f);
VertexFunction parse_vertex_function(std::istream& in, int vertex_count);

// 'c <u> <v> <value>' lines, meaning I(u,v) = value.
std::string serialize_current(const Network& net, const Current& I);
Current parse_current(std::istream& in, const Network& net);

// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

}  // namespace resnet
