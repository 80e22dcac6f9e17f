#pragma once

#include <optional>
#include <set>
#include <sstream>

#include "wightman/parallel.hpp"
#include "wightman/perturbation.hpp"

// Diagrammatic calculus for anharmonic Wightman correlators: enumeration of
// diagrams over external points, 4-valent interaction vertices and cumulant
// blobs; vertex-label constraint solving on the ordering structure; step
// weights for same-label internal propagator groups; combinatorial symmetry
// factors; and numerical evaluation per the Feynman rules.
//
// A diagram is a partition of the operator legs (one per external point, four
// per vertex) into components: directed free Wightman edges and blobs (one
// red propagator per leg).  Blob solid/dotted splits are resolved at
// evaluation time: a blob with r legs contributes sum over sign choices of
// chi_{#solid,#dotted} with e^{+iwt} per solid and e^{-iwt} per dotted leg.

namespace wightman {
namespace diag {

struct NodeRef {
  enum class Kind { External, Vertex };
  Kind kind = Kind::External;
  int index = 0;

  static NodeRef external(int i) { return {Kind::External, i}; }
  static NodeRef vertex(int i) { return {Kind::Vertex, i}; }
  bool is_vertex() const { return kind == Kind::Vertex; }

  friend bool operator==(const NodeRef& a, const NodeRef& b) = default;
  friend auto operator<=>(const NodeRef& a, const NodeRef& b) = default;
};

struct DwEdge {
  NodeRef src, tgt;
  friend bool operator==(const DwEdge& a, const DwEdge& b) = default;
  friend auto operator<=>(const DwEdge& a, const DwEdge& b) = default;
};

struct Blob {
  std::vector<NodeRef> legs;  // kept sorted
  friend bool operator==(const Blob& a, const Blob& b) = default;
  friend auto operator<=>(const Blob& a, const Blob& b) = default;
};

struct Diagram {
  int n_external = 0;
  int n_vertices = 0;
  std::vector<DwEdge> edges;
  std::vector<Blob> blobs;
};

inline void normalize(Diagram& d) {
  for (auto& b : d.blobs) std::sort(b.legs.begin(), b.legs.end());
  std::sort(d.edges.begin(), d.edges.end());
  std::sort(d.blobs.begin(), d.blobs.end());
}

inline std::string serialize(const Diagram& d) {
  std::ostringstream os;
  os << d.n_external << '|' << d.n_vertices << '|';
  auto put = [&](const NodeRef& n) { os << (n.is_vertex() ? 'v' : 'e') << n.index; };
  for (const auto& e : d.edges) {
    put(e.src);
    os << '>';
    put(e.tgt);
    os << ';';
  }
  os << '|';
  for (const auto& b : d.blobs) {
    for (const auto& l : b.legs) put(l);
    os << ';';
  }
  return os.str();
}

inline Diagram relabel_vertices(const Diagram& d, const std::vector<int>& perm) {
  Diagram out = d;
  auto map = [&](NodeRef n) { return n.is_vertex() ? NodeRef::vertex(perm[n.index]) : n; };
  for (auto& e : out.edges) {
    e.src = map(e.src);
    e.tgt = map(e.tgt);
  }
  for (auto& b : out.blobs)
    for (auto& l : b.legs) l = map(l);
  normalize(out);
  return out;
}

// Canonical form: minimum serialization over vertex relabelings (external
// points are fixed).  Idempotent; isomorphic rebuilds serialize equal.
inline Diagram canonicalize(const Diagram& d) {
  std::vector<int> perm(d.n_vertices);
  for (int i = 0; i < d.n_vertices; ++i) perm[i] = i;
  Diagram best = d;
  normalize(best);
  std::string best_key = serialize(best);
  std::vector<int> p = perm;
  while (std::next_permutation(p.begin(), p.end())) {
    Diagram cand = relabel_vertices(d, p);
    std::string key = serialize(cand);
    if (key < best_key) {
      best_key = std::move(key);
      best = std::move(cand);
    }
  }
  return best;
}

inline std::string canonical_key(const Diagram& d) { return serialize(canonicalize(d)); }

// Number of vertex relabelings fixing the diagram (externals pointwise).
inline int automorphism_count(const Diagram& d) {
  Diagram base = d;
  normalize(base);
  const std::string ref = serialize(base);
  std::vector<int> p(d.n_vertices);
  for (int i = 0; i < d.n_vertices; ++i) p[i] = i;
  int count = 0;
  do {
    if (serialize(relabel_vertices(d, p)) == ref) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

namespace detail {

struct ComponentKey {
  std::string key;
  friend auto operator<=>(const ComponentKey&, const ComponentKey&) = default;
};

inline ComponentKey edge_key(const DwEdge& e) {
  Diagram tmp;
  tmp.edges.push_back(e);
  return {serialize(tmp)};
}
inline ComponentKey blob_key(const Blob& b) {
  Diagram tmp;
  tmp.blobs.push_back(b);
  return {serialize(tmp)};
}

// Direction consistency: all Dw edges between one vertex pair share a
// direction (paper's first step-function observation).
inline bool direction_conflict(const Diagram& d, const DwEdge& e) {
  for (const auto& o : d.edges)
    if (o.src == e.tgt && o.tgt == e.src) return true;
  return false;
}

inline void enumerate_rec(Diagram& work, std::vector<int>& remaining, int max_blob_legs,
                          const ComponentKey& floor_key, int floor_node,
                          std::set<std::string>& seen, std::vector<Diagram>& out) {
  int pivot = -1;
  const int total_nodes = static_cast<int>(remaining.size());
  for (int i = 0; i < total_nodes; ++i)
    if (remaining[i] > 0) {
      pivot = i;
      break;
    }
  if (pivot < 0) {
    Diagram canon = canonicalize(work);
    const std::string key = serialize(canon);
    if (seen.insert(key).second) out.push_back(std::move(canon));
    return;
  }
  const bool fresh_pivot = pivot != floor_node;
  auto node_of = [&](int i) {
    return i < work.n_external ? NodeRef::external(i) : NodeRef::vertex(i - work.n_external);
  };
  const NodeRef u = node_of(pivot);

  auto try_component = [&](const ComponentKey& key, auto&& add, auto&& remove) {
    if (!fresh_pivot && key < floor_key) return;
    add();
    enumerate_rec(work, remaining, max_blob_legs, key, pivot, seen, out);
    remove();
  };

  // Dw edges through the pivot.
  for (int w = 0; w < total_nodes; ++w) {
    const NodeRef other = node_of(w);
    if (w == pivot) {
      if (u.is_vertex() && remaining[pivot] >= 2) {
        const DwEdge e{u, u};
        const auto key = edge_key(e);
        try_component(
            key,
            [&] {
              work.edges.push_back(e);
              remaining[pivot] -= 2;
            },
            [&] {
              work.edges.pop_back();
              remaining[pivot] += 2;
            });
      }
      continue;
    }
    if (remaining[w] < 1) continue;
    for (int dir = 0; dir < 2; ++dir) {
      const DwEdge e = dir == 0 ? DwEdge{u, other} : DwEdge{other, u};
      // external-external propagators always run left to right
      if (!u.is_vertex() && !other.is_vertex()) {
        const bool ok = (e.src.index < e.tgt.index);
        if (!ok) continue;
      }
      if (direction_conflict(work, e)) continue;
      const auto key = edge_key(e);
      try_component(
          key,
          [&] {
            work.edges.push_back(e);
            remaining[pivot] -= 1;
            remaining[w] -= 1;
          },
          [&] {
            work.edges.pop_back();
            remaining[pivot] += 1;
            remaining[w] += 1;
          });
    }
  }

  // Blobs through the pivot: multiplicity m_u >= 1 at the pivot plus any
  // multiset of legs on nodes after it.
  std::vector<int> nodes_after;
  for (int w = pivot; w < total_nodes; ++w)
    if (remaining[w] > 0) nodes_after.push_back(w);
  std::vector<int> mult(nodes_after.size(), 0);
  std::function<void(std::size_t, int)> build = [&](std::size_t idx, int legs_used) {
    if (idx == nodes_after.size()) {
      if (mult[0] < 1) return;  // must contain the pivot
      Blob b;
      for (std::size_t q = 0; q < nodes_after.size(); ++q)
        for (int c = 0; c < mult[q]; ++c) b.legs.push_back(node_of(nodes_after[q]));
      std::sort(b.legs.begin(), b.legs.end());
      const auto key = blob_key(b);
      try_component(
          key,
          [&] {
            work.blobs.push_back(b);
            for (std::size_t q = 0; q < nodes_after.size(); ++q) remaining[nodes_after[q]] -= mult[q];
          },
          [&] {
            work.blobs.pop_back();
            for (std::size_t q = 0; q < nodes_after.size(); ++q) remaining[nodes_after[q]] += mult[q];
          });
      return;
    }
    const int cap = std::min(remaining[nodes_after[idx]], max_blob_legs - legs_used);
    for (int m = 0; m <= cap; ++m) {
      mult[idx] = m;
      build(idx + 1, legs_used + m);
    }
    mult[idx] = 0;
  };
  build(0, 0);
}

}  // namespace detail

// All structurally valid diagrams with n external points and exactly K
// 4-valent vertices, deduplicated by canonical form.  Disconnected pieces and
// vacuum bubbles are included.  max_blob_legs = 0 selects the exhaustive cap
// n + 4K (a cumulant block can absorb every operator leg).
inline std::vector<Diagram> enumerate_diagrams(int n, int K, int max_blob_legs = 0) {
  if (n < 1) throw std::invalid_argument("need at least one external point");
  if (K < 0 || K > 2) throw std::invalid_argument("diagram order capped at K <= 2");
  if (max_blob_legs <= 0) max_blob_legs = n + 4 * K;
  Diagram work;
  work.n_external = n;
  work.n_vertices = K;
  std::vector<int> remaining(n + K);
  for (int i = 0; i < n; ++i) remaining[i] = 1;
  for (int i = 0; i < K; ++i) remaining[n + i] = 4;
  std::set<std::string> seen;
  std::vector<Diagram> out;
  detail::enumerate_rec(work, remaining, max_blob_legs, detail::ComponentKey{}, -1, seen, out);
  return out;
}

using LabelAssignment = std::vector<TimeLabel>;  // one internal label per vertex

// All assignments over M_n satisfying the free-Wightman-propagator
// constraints: external in-edge t_i -> t_k, external out-edge t_k -> t_i,
// internal edge source -> target or equal.  The empty list is the vertex
// factor 0 case.
inline std::vector<LabelAssignment> label_assignments(const Diagram& d) {
  std::vector<TimeLabel> domain;
  for (int j = 1; j <= d.n_external; ++j) {
    domain.push_back(TimeLabel::internal(j, +1));
    domain.push_back(TimeLabel::internal(j, -1));
  }
  std::vector<LabelAssignment> out;
  LabelAssignment cur(d.n_vertices, TimeLabel::external(1));
  std::function<void(int)> assign = [&](int v) {
    if (v == d.n_vertices) {
      out.push_back(cur);
      return;
    }
    for (const TimeLabel& cand : domain) {
      cur[v] = cand;
      bool ok = true;
      for (const auto& e : d.edges) {
        const bool src_v = e.src.is_vertex() && e.src.index <= v;
        const bool tgt_v = e.tgt.is_vertex() && e.tgt.index <= v;
        if (e.src.is_vertex() && e.tgt.is_vertex()) {
          if (e.src.index == e.tgt.index) continue;  // self-loop: no constraint
          if (e.src.index > v || e.tgt.index > v) continue;
          const TimeLabel& a = cur[e.src.index];
          const TimeLabel& b = cur[e.tgt.index];
          if (!(label_before(a, b) || a == b)) ok = false;
        } else if (e.src.is_vertex() && src_v) {
          // vertex -> external t_i requires label -> t_i
          if (!label_before(cur[e.src.index], TimeLabel::external(e.tgt.index + 1))) ok = false;
        } else if (e.tgt.is_vertex() && tgt_v) {
          // external t_i -> vertex requires t_i -> label
          if (!label_before(TimeLabel::external(e.src.index + 1), cur[e.tgt.index])) ok = false;
        }
        if (!ok) break;
      }
      if (ok) assign(v + 1);
    }
  };
  assign(0);
  return out;
}

// Step-function weight of one assignment: theta factors for same-label
// vertex pairs joined by internal propagators (Rules 1 and 2), 1 for forward
// distinct labels (Rule 3), 0 for backward (Rule 4).
struct StepWeight {
  bool zero = false;
  // theta(tau[greater] - tau[lesser]) factors over vertex indices
  std::vector<std::pair<int, int>> thetas;
};

inline StepWeight step_weight(const Diagram& d, const LabelAssignment& assignment) {
  StepWeight w;
  std::set<std::pair<int, int>> handled;
  for (const auto& e : d.edges) {
    if (!e.src.is_vertex() || !e.tgt.is_vertex()) continue;
    if (e.src.index == e.tgt.index) continue;
    const int s = e.src.index, t = e.tgt.index;
    if (!handled.insert({std::min(s, t), std::max(s, t)}).second) continue;
    const TimeLabel& ls = assignment[s];
    const TimeLabel& lt = assignment[t];
    if (ls == lt) {
      if (ls.kind == TimeLabel::Kind::InternalMinus)
        w.thetas.push_back({s, t});  // theta(tau_src - tau_tgt)
      else
        w.thetas.push_back({t, s});  // theta(tau_tgt - tau_src)
    } else if (label_before(ls, lt)) {
      // weight 1
    } else {
      w.zero = true;
    }
  }
  return w;
}

// Vertex factor read off from a label: +i lambda int_{t0}^{t_j} for t_{j+},
// -i lambda for t_{j-}; the hbar convention divides the coupling by hbar.
struct VertexFactor {
  int sign = +1;  // coefficient is sign * i * lambda / hbar
  int j = 1;      // integration runs over [t0, t_j]
};

inline VertexFactor vertex_factor(const TimeLabel& label) {
  if (!label.is_internal()) throw std::invalid_argument("vertex factor needs an internal label");
  return {label.branch(), label.j};
}

// Contraction-pattern count with distinguished vertices:
//   prod_nodes ops(node)! / prod_(component,node) stubs! / prod parallel-class m!
inline double contraction_pattern_count(const Diagram& din) {
  Diagram d = din;
  normalize(d);
  std::map<std::string, int> parallel;
  double denom = 1.0;
  auto count_stubs = [&](const std::vector<NodeRef>& legs) {
    std::map<NodeRef, int> stubs;
    for (const auto& l : legs) stubs[l] += 1;
    for (const auto& [node, s] : stubs)
      for (int q = 2; q <= s; ++q) denom *= q;
  };
  for (const auto& e : d.edges) {
    count_stubs({e.src, e.tgt});
    parallel[detail::edge_key(e).key] += 1;
  }
  for (const auto& b : d.blobs) {
    count_stubs(b.legs);
    parallel[detail::blob_key(b).key] += 1;
  }
  for (const auto& [key, m] : parallel)
    for (int q = 2; q <= m; ++q) denom *= q;
  double numer = 1.0;
  for (int v = 0; v < d.n_vertices; ++v) numer *= 24.0;  // 4! per vertex, 1! per external
  return numer / denom;
}

// Symmetry factor: (4!)^K * |Aut| / #patterns, computed combinatorially.
inline double symmetry_factor(const Diagram& d) {
  double s = automorphism_count(d);
  for (int v = 0; v < d.n_vertices; ++v) s *= 24.0;
  return s / contraction_pattern_count(d);
}

namespace detail {

// Blob value as an ExpSum over its legs: sign '+' marks a dotted leg
// (e^{-iwt}), '-' a solid leg (e^{+iwt}); the coefficient is
// chi_{#solid,#dotted}.
inline ExpSum blob_expsum(int legs, const ChiTable& chi) {
  if (chi.max_order() < legs) throw std::invalid_argument("chi table order insufficient for blob");
  ExpSum e(static_cast<std::size_t>(legs));
  for (unsigned mask = 0; mask < (1u << legs); ++mask) {
    int dotted = 0;
    std::string key(static_cast<std::size_t>(legs), '-');
    for (int q = 0; q < legs; ++q)
      if ((mask >> q) & 1u) {
        key[q] = '+';
        ++dotted;
      }
    const Complex c = chi.at(legs - dotted, dotted);
    if (c != 0.0) e.add_term(SignVector(key), c);
  }
  return e;
}

// Compiled integrand of one diagram: net phase weights per coordinate
// (externals first, then vertices), with the (hbar/2w)^{legs/2} prefactor.
struct CompiledDiagram {
  bool zero = false;
  int n = 0, K = 0;
  double prefactor_power = 0.0;
  std::vector<std::pair<std::vector<int>, Complex>> terms;  // weights over n+K coords
};

inline CompiledDiagram compile_diagram(const Diagram& d, const ChiTable& chi) {
  CompiledDiagram out;
  out.n = d.n_external;
  out.K = d.n_vertices;
  int total_legs = 0;
  auto coord = [&](const NodeRef& node) {
    return node.is_vertex() ? d.n_external + node.index : node.index;
  };
  std::map<std::vector<int>, Complex> acc;
  acc[std::vector<int>(d.n_external + d.n_vertices, 0)] = Complex(1.0);
  auto fold = [&](const ExpSum& part, const std::vector<int>& leg_coords) {
    std::map<std::vector<int>, Complex> next;
    for (const auto& [w, c] : acc) {
      for (const auto& [sv, pc] : part.terms()) {
        std::vector<int> nw = w;
        for (std::size_t q = 0; q < leg_coords.size(); ++q) nw[leg_coords[q]] += sv.sign(q);
        next[nw] += c * pc;
      }
    }
    acc = std::move(next);
  };
  for (const auto& e : d.edges) {
    total_legs += 2;
    fold(make_f("+-"), {coord(e.src), coord(e.tgt)});
    if (acc.empty()) break;
  }
  for (const auto& b : d.blobs) {
    if (acc.empty()) break;
    total_legs += static_cast<int>(b.legs.size());
    const ExpSum be = blob_expsum(static_cast<int>(b.legs.size()), chi);
    if (be.empty()) {
      acc.clear();
      break;
    }
    std::vector<int> legc;
    legc.reserve(b.legs.size());
    for (const auto& l : b.legs) legc.push_back(coord(l));
    fold(be, legc);
  }
  out.prefactor_power = 0.5 * total_legs;
  if (acc.empty()) {
    out.zero = true;
    return out;
  }
  for (auto& [w, c] : acc)
    if (c != 0.0) out.terms.push_back({w, c});
  out.zero = out.terms.empty();
  return out;
}

// Binds external times (relative to t0); evaluates over vertex times.
inline std::function<Complex(const std::vector<double>&)> bind_externals(const CompiledDiagram& cd,
                                                                         const std::vector<double>& ext_rel,
                                                                         const PhysicalParams& p) {
  std::map<std::vector<int>, Complex> folded;
  for (const auto& [w, c] : cd.terms) {
    double phase = 0.0;
    for (int j = 0; j < cd.n; ++j) phase += w[j] * ext_rel[j];
    std::vector<int> wv(w.begin() + cd.n, w.end());
    folded[wv] += c * std::exp(Complex(0.0, -p.omega * phase));
  }
  std::vector<std::pair<std::vector<int>, Complex>> terms(folded.begin(), folded.end());
  const double pref = std::pow(p.quantum(), cd.prefactor_power);
  const double omega = p.omega;
  const int K = cd.K;
  return [terms = std::move(terms), pref, omega, K](const std::vector<double>& tau) {
    Complex acc(0.0);
    for (const auto& [w, c] : terms) {
      double phase = 0.0;
      for (int q = 0; q < K; ++q) phase += w[q] * tau[q];
      acc += c * std::exp(Complex(0.0, -omega * phase));
    }
    return pref * acc;
  };
}

}  // namespace detail

// Value of a single label assignment (vertex factors, step weights, edge and
// blob factors, divided by the symmetry factor), numerically integrated.
inline Complex evaluate_assignment(const Diagram& d, const LabelAssignment& assignment, const ChiTable& chi,
                                   const std::vector<double>& times, const PhysicalParams& p,
                                   const QuadratureSpec& quad = {}) {
  const StepWeight sw = step_weight(d, assignment);
  if (sw.zero) return Complex(0.0);
  const detail::CompiledDiagram cd = detail::compile_diagram(d, chi);
  if (cd.zero) return Complex(0.0);
  std::vector<double> ext_rel(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) ext_rel[j] = times[j] - p.t0;
  const auto f = detail::bind_externals(cd, ext_rel, p);

  Complex pref(1.0);
  for (const auto& label : assignment) {
    const VertexFactor vf = vertex_factor(label);
    pref *= Complex(0.0, vf.sign * p.lambda / p.hbar);
  }
  pref /= symmetry_factor(d);

  switch (d.n_vertices) {
    case 0:
      return pref * f({});
    case 1: {
      const double hi = ext_rel[vertex_factor(assignment[0]).j - 1];
      const auto r = integrate_1d([&](double u) { return f({u}); }, 0.0, hi, quad);
      return pref * r.value;
    }
    case 2: {
      const double hi0 = ext_rel[vertex_factor(assignment[0]).j - 1];
      const double hi1 = ext_rel[vertex_factor(assignment[1]).j - 1];
      auto g2 = [&](double u, double v) { return f({u, v}); };
      if (!sw.thetas.empty()) {
        // same labels: same integration interval, one theta
        const auto [greater, lesser] = sw.thetas.front();
        const bool first_greater = greater == 0;
        const auto r = integrate_triangle(g2, 0.0, hi0, first_greater, quad);
        return pref * r.value;
      }
      const auto r = integrate_box2(g2, 0.0, hi0, 0.0, hi1, quad);
      return pref * r.value;
    }
    default:
      throw std::invalid_argument("evaluation capped at two vertices");
  }
}

// Total value of a diagram: sum over all label assignments.
inline Complex evaluate_diagram(const Diagram& d, const ChiTable& chi, const std::vector<double>& times,
                                const PhysicalParams& p, const QuadratureSpec& quad = {}) {
  if (static_cast<int>(times.size()) != d.n_external)
    throw std::invalid_argument("external time count mismatch");
  const detail::CompiledDiagram cd = detail::compile_diagram(d, chi);
  if (cd.zero) return Complex(0.0);
  Complex total(0.0);
  for (const auto& assignment : label_assignments(d))
    total += evaluate_assignment(d, assignment, chi, times, p, quad);
  return total;
}

// Sum over all diagrams with up to K vertices.
inline Complex correlator_diagrammatic(const ChiTable& chi, const std::vector<double>& times,
                                       const PhysicalParams& p, int K, const QuadratureSpec& quad = {},
                                       int max_blob_legs = 0) {
  p.validate();
  if (times.empty()) throw std::invalid_argument("need at least one external time");
  if (K < 0 || K > 2) throw std::invalid_argument("diagram order capped at K <= 2");
  for (double t : times)
    if (t < p.t0) throw std::domain_error("external times must not precede t0");
  const int n = static_cast<int>(times.size());
  if (chi.max_order() < n + 4 * K)
    throw std::invalid_argument("chi table order must reach n + 4K for the requested order");
  Complex total(0.0);
  for (int k = 0; k <= K; ++k) {
    if (k > 0 && p.lambda == 0.0) break;
    const auto ds = enumerate_diagrams(n, k, max_blob_legs);
    const auto values = parallel_map<Complex>(
        ds.size(), [&](std::size_t i) { return evaluate_diagram(ds[i], chi, times, p, quad); });
    for (const Complex& v : values) total += v;  // ordered reduction keeps results thread-count independent
  }
  return total;
}

// DOT export: externals as boxes, vertices as filled circles annotated with
// their label sets, blobs as double circles, red propagators as dashed red
// undirected edges, free Wightman propagators as solid directed arrows.
inline std::string to_dot(const Diagram& d, const std::string& name = "diagram") {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (int i = 0; i < d.n_external; ++i)
    os << "  e" << i << " [shape=box,label=\"t_" << (i + 1) << "\"];\n";
  const auto assignments = label_assignments(d);
  for (int v = 0; v < d.n_vertices; ++v) {
    os << "  v" << v << " [shape=circle,style=filled,label=\"";
    for (std::size_t a = 0; a < assignments.size(); ++a) {
      if (a) os << ",";
      os << assignments[a][v].str();
    }
    os << "\"];\n";
  }
  auto id = [](const NodeRef& n) {
    return (n.is_vertex() ? std::string("v") : std::string("e")) + std::to_string(n.index);
  };
  for (const auto& e : d.edges) os << "  " << id(e.src) << " -> " << id(e.tgt) << ";\n";
  for (std::size_t b = 0; b < d.blobs.size(); ++b) {
    os << "  b" << b << " [shape=doublecircle,label=\"chi(" << d.blobs[b].legs.size() << " legs)\"];\n";
    for (const auto& l : d.blobs[b].legs)
      os << "  b" << b << " -> " << id(l) << " [dir=none,color=red,style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace diag
}  // namespace wightman
