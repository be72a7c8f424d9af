#include "resnet/generators.hpp"

#include <cmath>
#include <sstream>

namespace resnet {

namespace {

struct Params {
  const GeneratorSpec& spec;

  double get(const std::string& key, double fallback, bool required = false) const {
    auto it = spec.params.find(key);
    if (it != spec.params.end()) return it->second;
    if (required) throw ValidationError(spec.family + ": missing parameter '" + key + "'");
    return fallback;
  }
  int get_int(const std::string& key, int fallback, bool required = false) const {
    double v = get(key, fallback, required);
    int i = static_cast<int>(std::llround(v));
    if (std::fabs(v - i) > 1e-9)
      throw ValidationError(spec.family + ": parameter '" + key + "' must be an integer");
    return i;
  }
};

Network make_cycle(int n) {
  if (n < 3) throw ValidationError("cycle: N must be >= 3");
  NetworkBuilder b(n);
  for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n, 1.0);
  return b.build();
}

Network make_path(int n) {
  if (n < 2) throw ValidationError("path: N must be >= 2");
  NetworkBuilder b(n);
  for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1, 1.0);
  return b.build();
}

Network make_lattice_box(int d, int L) {
  if (d < 1) throw ValidationError("lattice_box: d must be >= 1");
  if (L < 2) throw ValidationError("lattice_box: L must be >= 2");
  long long total = 1;
  for (int k = 0; k < d; ++k) {
    total *= L;
    if (total > 20'000'000) throw ValidationError("lattice_box: too many vertices");
  }
  int n = static_cast<int>(total);
  NetworkBuilder b(n);
  long long stride = 1;
  for (int k = 0; k < d; ++k) {
    for (int id = 0; id < n; ++id) {
      int coord = static_cast<int>((id / stride) % L);
      if (coord + 1 < L) b.add_edge(id, static_cast<int>(id + stride), 1.0);
    }
    stride *= L;
  }
  return b.build();
}

Network make_binary_tree(int depth) {
  if (depth < 0) throw ValidationError("binary_tree: depth must be >= 0");
  if (depth > 22) throw ValidationError("binary_tree: depth too large");
  long long n = (1LL << (depth + 1)) - 1;
  NetworkBuilder b(static_cast<int>(n));
  for (long long v = 0; 2 * v + 2 < n; ++v) {
    b.add_edge(static_cast<int>(v), static_cast<int>(2 * v + 1), 1.0);
    b.add_edge(static_cast<int>(v), static_cast<int>(2 * v + 2), 1.0);
  }
  return b.build();
}

Network make_homogeneous_tree(int q, int depth) {
  if (q < 2) throw ValidationError("homogeneous_tree: degree must be >= 2");
  if (depth < 0) throw ValidationError("homogeneous_tree: depth must be >= 0");
  NetworkBuilder b(1);
  int next = 1;
  std::vector<int> frontier{0};
  for (int level = 1; level <= depth; ++level) {
    std::vector<int> fresh;
    for (int parent : frontier) {
      int kids = (parent == 0) ? q : q - 1;
      for (int k = 0; k < kids; ++k) {
        b.add_edge(parent, next, 1.0);
        fresh.push_back(next);
        ++next;
        if (next > 20'000'000) throw ValidationError("homogeneous_tree: too many vertices");
      }
    }
    frontier = std::move(fresh);
  }
  return b.build();
}

Network make_geometric_integers(double c, int span, bool half) {
  if (!(c > 1.0)) throw ValidationError("geometric_integers: c must be > 1");
  if (span < 1) throw ValidationError("geometric_integers: span must be >= 1");
  if (half) {
    NetworkBuilder b(span + 1);
    for (int n = 1; n <= span; ++n) b.add_edge(n - 1, n, std::pow(c, n));
    return b.build();
  }
  NetworkBuilder b(2 * span + 1);
  for (int n = -span + 1; n <= span; ++n) {
    double cond = std::pow(c, std::max(std::abs(n), std::abs(n - 1)));
    b.add_edge(n - 1 + span, n + span, cond);
  }
  return b.build();
}

Network make_ladder(double alpha, double beta, int length) {
  if (!(alpha > 1.0 && beta < 1.0 && beta > 0.0))
    throw ValidationError("ladder: requires alpha > 1 > beta > 0");
  if (length < 1) throw ValidationError("ladder: length must be >= 1");
  NetworkBuilder b(2 * (length + 1));
  for (int n = 0; n <= length; ++n) {
    if (n > 0) {
      double rail = std::pow(alpha, n);
      b.add_edge(2 * (n - 1), 2 * n, rail);
      b.add_edge(2 * (n - 1) + 1, 2 * n + 1, rail);
    }
    b.add_edge(2 * n, 2 * n + 1, std::pow(beta, n));
  }
  return b.build();
}

Network make_star(int m, double c, int depth) {
  if (m < 2) throw ValidationError("star: m must be >= 2");
  if (!(c > 1.0)) throw ValidationError("star: c must be > 1");
  if (depth < 1) throw ValidationError("star: depth must be >= 1");
  NetworkBuilder b(1 + m * depth);
  for (int j = 0; j < m; ++j) {
    int prev = 0;
    for (int n = 1; n <= depth; ++n) {
      int id = 1 + j * depth + (n - 1);
      b.add_edge(prev, id, std::pow(c, n));
      prev = id;
    }
  }
  return b.build();
}

Network make_square(double r1, double r2, double r3, double r4) {
  for (double r : {r1, r2, r3, r4})
    if (!(r > 0.0)) throw ValidationError("square_example: resistances must be positive");
  NetworkBuilder b(4);
  b.add_edge(0, 1, 1.0 / r1);
  b.add_edge(0, 2, 1.0 / r2);
  b.add_edge(1, 3, 1.0 / r3);
  b.add_edge(2, 3, 1.0 / r4);
  b.set_label(0, "alpha").set_label(3, "omega");
  return b.build();
}

Network make_deletion_example() {
  NetworkBuilder b(5);
  b.add_edge(0, 1, 1.0);
  b.add_edge(0, 2, 1.0);
  b.add_edge(0, 3, 1.0);
  b.add_edge(2, 3, 1.0);
  b.add_edge(1, 4, 1.0);
  b.add_edge(3, 4, 1.0);
  b.set_label(0, "alpha").set_label(4, "omega");
  return b.build();
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  GeneratorSpec spec;
  auto colon = text.find(':');
  spec.family = text.substr(0, colon);
  if (spec.family.empty()) throw ValidationError("empty generator family");
  if (colon == std::string::npos) return spec;
  std::istringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ValidationError("generator parameter '" + item + "' is not key=value");
    std::string key = item.substr(0, eq);
    try {
      spec.params[key] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ValidationError("bad numeric value in generator parameter '" + item + "'");
    }
  }
  return spec;
}

Network generate(const GeneratorSpec& spec) {
  Params p{spec};
  const std::string& f = spec.family;
  if (f == "cycle") return make_cycle(p.get_int("N", 0, true));
  if (f == "path") return make_path(p.get_int("N", 0, true));
  if (f == "lattice_box") return make_lattice_box(p.get_int("d", 0, true), p.get_int("L", 0, true));
  if (f == "binary_tree") return make_binary_tree(p.get_int("depth", 0, true));
  if (f == "homogeneous_tree")
    return make_homogeneous_tree(p.get_int("degree", 0, true), p.get_int("depth", 0, true));
  if (f == "geometric_integers")
    return make_geometric_integers(p.get("c", 0, true), p.get_int("span", 0, true),
                                   p.get_int("half", 0) != 0);
  if (f == "ladder")
    return make_ladder(p.get("alpha", 0, true), p.get("beta", 0, true),
                       p.get_int("length", 0, true));
  if (f == "star")
    return make_star(p.get_int("m", 0, true), p.get("c", 0, true), p.get_int("depth", 0, true));
  if (f == "square_example")
    return make_square(p.get("rho1", 1.0), p.get("rho2", 1.0), p.get("rho3", 1.0),
                       p.get("rho4", 1.0));
  if (f == "deletion_example") return make_deletion_example();
  throw ValidationError("unknown generator family '" + f + "'");
}

Network generate(const std::string& spec_text) { return generate(GeneratorSpec::parse(spec_text)); }

}  // namespace resnet
