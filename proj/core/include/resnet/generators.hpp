#pragma once

#include <map>
#include <string>

#include "resnet/network.hpp"

namespace resnet {

// Named example families. Vertex id layouts are part of the contract:
//
//   cycle(N)                 ids 0..N-1 around the ring, unit edges (i, i+1 mod N).
//   path(N)                  ids 0..N-1 along the line, unit edges.
//   lattice_box(d, L)        box {0..L-1}^d, id = sum_k x_k L^k (x_0 fastest),
//                            unit nearest-neighbor edges; center of the box is
//                            id of ((L-1)/2, ...).
//   binary_tree(depth)       root 0 with two branches; children of v are
//                            2v+1, 2v+2 (heap order); unit edges;
//                            2^(depth+1) - 1 vertices.
//   homogeneous_tree(q, depth)  root 0 with q children, every later vertex
//                            q-1 children; BFS ids; unit edges.
//   geometric_integers(c, span, half)
//                            half: ids 0..span are 0..span of Z_+ with
//                            c_{n-1,n} = c^n. full: ids 0..2*span hold
//                            -span..span with id = n + span and
//                            c edge(n-1,n) = c^max(|n|,|n-1|).
//   ladder(alpha, beta, length)
//                            one-sided ladder, rails x_n = 2n, y_n = 2n+1 for
//                            n = 0..length; rail edges at step n have
//                            conductance alpha^n, rung (x_n, y_n) beta^n.
//   star(m, c, depth)        m geometric half-integer rays glued at origin 0;
//                            ray j vertex n (1-based) has id 1 + j*depth + n-1,
//                            edge conductances c^n along each ray.
//   square_example(rho1..rho4)
//                            4-cycle 0-1-3-2-0 with RESISTANCES rho_i:
//                            edges (0,1,1/rho1), (0,2,1/rho2), (1,3,1/rho3),
//                            (2,3,1/rho4); alpha = 0, omega = 3.
//   deletion_example         5 vertices 0=alpha, 1, 2, 3, 4=omega; unit edges
//                            (0,1), (0,2), (0,3), (2,3), (1,4), (3,4).
struct GeneratorSpec {
  std::string family;
  std::map<std::string, double> params;

  // Parses "family:key=val,key=val"; bare "family" means no parameters.
  static GeneratorSpec parse(const std::string& text);
};

Network generate(const GeneratorSpec& spec);
Network generate(const std::string& spec_text);

}  // namespace resnet
