#include "resnet/netx.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace resnet {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

Network parse_network(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  NetworkBuilder b;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ls(line);
    if (!header_seen) {
      std::string word;
      int version = 0;
      if (!(ls >> word >> version) || word != "netx" || version != 1)
        fail(lineno, "expected header 'netx 1'");
      header_seen = true;
      continue;
    }
    std::string tag;
    ls >> tag;
    if (tag == "e") {
      long long u, v;
      double c;
      if (!(ls >> u >> v >> c)) fail(lineno, "malformed edge line");
      std::string rest;
      if (ls >> rest) fail(lineno, "trailing tokens on edge line");
      if (u < 0 || v < 0) fail(lineno, "negative vertex id");
      try {
        b.add_edge(static_cast<int>(u), static_cast<int>(v), c);
      } catch (const ValidationError& e) {
        fail(lineno, e.what());
      }
    } else {
      fail(lineno, "unknown record '" + tag + "'");
    }
  }
  if (!header_seen) throw ParseError("missing 'netx 1' header");
  return b.build();
}

Network parse_network_string(const std::string& text) {
  std::istringstream in(text);
  return parse_network(in);
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_network(in);
}

std::string serialize_network(const Network& net) {
  std::ostringstream out;
  out << "netx 1\n";
  for (const Edge& e : net.edges())
    out << "e " << e.u << " " << e.v << " " << format_double(e.c) << "\n";
  return out.str();
}

std::string serialize_vertex_function(const VertexFunction& f) {
  std::ostringstream out;
  for (int x = 0; x < f.size(); ++x)
    out << "v " << x << " " << format_double(f[x]) << "\n";
  return out.str();
}

VertexFunction parse_vertex_function(std::istream& in, int vertex_count) {
  VertexFunction f(vertex_count);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    int id;
    double val;
    if (!(ls >> tag >> id >> val) || tag != "v") fail(lineno, "malformed vertex-value line");
    if (id < 0 || id >= vertex_count) fail(lineno, "vertex id out of range");
    f[id] = val;
  }
  return f;
}

std::string serialize_current(const Network& net, const Current& I) {
  std::ostringstream out;
  for (int i = 0; i < net.edge_count(); ++i) {
    const Edge& e = net.edges()[i];
    out << "c " << e.u << " " << e.v << " " << format_double(I.values[i]) << "\n";
  }
  return out.str();
}

Current parse_current(std::istream& in, const Network& net) {
  Current I(net);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    int u, v;
    double val;
    if (!(ls >> tag >> u >> v >> val) || tag != "c") fail(lineno, "malformed current line");
    if (net.edge_index(u, v) < 0) fail(lineno, "current on a non-edge");
    I.set(net, u, v, val);
  }
  return I;
}

}  // namespace resnet
