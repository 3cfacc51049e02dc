#pragma once

#include "pcg/graph.hpp"

namespace pcg {
namespace fixtures {

// 9-vertex graph with the admissible-set structure of the running
// example (classes {d,g}, {b,i}, {c,h}); adjacency recovered from the
// published star sets and re-checked against every printed a/cl value.
Graph ga();

// 7-vertex graph realizing the height/order example; the unique labelled
// graph (constraint search over all 2^21 candidates) with
//   a(a)=a(b)={a,b,e,f}, a(c)=a(d)={c,d}, a(e)=a(f)={e,f}, a(g)={c,d,g}
// and cl(x)={x} for every vertex.
Graph go();

// 7-vertex tree: edges {v,c},{c,a},{c,b},{a,r},{r,s},{b,t}.  The
// unbalanced obstruction example.
Graph gd();

Graph p4();  // path a-b-c-d
Graph c5();  // 5-cycle
Graph k(int n);
Graph discrete(int n);
Graph star(int leaves);  // K_{1,n}: centre c, leaves l1..ln

// Relator-suite fixtures.
Graph gd_edge_point();   // GD + edge {p,q} + isolated z
Graph two_edges();       // two isomorphic components: K2 + K2
Graph edge_points(int isolated);  // edge {p,q} + isolated z1..zk

// Graph on <= 10 vertices from an edge bitmask (vertices "a", "b", ...).
Graph from_mask(int n, unsigned long long edge_mask);

}  // namespace fixtures
}  // namespace pcg
