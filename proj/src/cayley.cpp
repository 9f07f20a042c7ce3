#include "autostack/cayley.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "autostack/error.hpp"
#include "json.hpp"

namespace autostack {

  CayleyBall::CayleyBall(Alphabet alphabet, Dfa const& normal_forms, std::size_t radius,
                         Multiply const& multiply)
      : _alphabet(std::move(alphabet)), _radius(radius) {
    std::size_t const m = _alphabet.size();
    _vertices           = enumerate_language(normal_forms, radius);
    for (VertexId v = 0; v < _vertices.size(); ++v) {
      _index.emplace(_vertices[v], v);
    }
    for (VertexId v = 0; v < _vertices.size(); ++v) {
      Word const& y = _vertices[v];
      for (Letter a = 0; a < m; ++a) {
        Word ya       = concat(y, a);
        bool extends  = normal_forms.accepts(ya);
        bool retracts = !y.empty() && _alphabet.has_inverse(a) && y.back() == _alphabet.inverse(a);
        std::optional<Word> z = extends    ? ya
                                : retracts ? Word(y.begin(), y.end() - 1)
                                           : multiply(y, a);
        BallEdge e{v, a, z ? find(*z) : std::nullopt,
                   extends || retracts ? EdgeClass::degenerate : EdgeClass::recursive};
        _edges.push_back(e);
      }
    }
  }

  std::optional<VertexId> CayleyBall::find(Word const& w) const {
    auto it = _index.find(w);
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<EdgeId> CayleyBall::reverse(EdgeId e) const {
    auto const& edge = _edges[e];
    if (!edge.target || !_alphabet.has_inverse(edge.letter)) {
      return std::nullopt;
    }
    return edge_id(*edge.target, _alphabet.inverse(edge.letter));
  }

  std::vector<std::size_t> CayleyBall::distances_from(VertexId v) const {
    std::size_t const        m = _alphabet.size();
    std::vector<std::size_t> dist(_vertices.size(), std::numeric_limits<std::size_t>::max());
    std::deque<VertexId>     queue{v};
    dist[v] = 0;
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop_front();
      for (Letter a = 0; a < m; ++a) {
        auto t = _edges[edge_id(u, a)].target;
        if (t && dist[*t] == std::numeric_limits<std::size_t>::max()) {
          dist[*t] = dist[u] + 1;
          queue.push_back(*t);
        }
      }
    }
    return dist;
  }

  bool CayleyBall::tree_spans() const {
    std::vector<VertexId> parent(_vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](VertexId v) {
      while (parent[v] != v) {
        v = parent[v] = parent[parent[v]];
      }
      return v;
    };
    std::size_t tree_edges = 0;
    for (auto const& e : _edges) {
      // Count each undirected tree edge once, from its shorter end.
      if (e.kind != EdgeClass::degenerate || !e.target
          || _vertices[*e.target].size() <= _vertices[e.source].size()) {
        continue;
      }
      ++tree_edges;
      auto r1 = root(e.source), r2 = root(*e.target);
      if (r1 == r2) {
        return false;
      }
      parent[r1] = r2;
    }
    return tree_edges + 1 == _vertices.size();
  }

  CayleyBall build_ball(StackingStructure const& S, std::size_t radius, std::size_t step_limit) {
    return CayleyBall(S.alphabet(), S.normal_forms(), radius, [&](Word const& y, Letter a) -> std::optional<Word> {
      return stacking_normal_form(S, concat(y, a), step_limit);
    });
  }

  CayleyBall build_ball(PrefixRewritingSystem const& R, std::size_t radius,
                        std::size_t step_limit) {
    return CayleyBall(R.alphabet(), irreducible_language(R), radius,
                      [&](Word const& y, Letter a) -> std::optional<Word> {
                        return normal_form(R, concat(y, a), step_limit);
                      });
  }

  CayleyBall build_ball(Alphabet const& A, Dfa const& normal_forms, std::size_t radius,
                        GroupOracle const& oracle) {
    std::map<GroupOracle::Element, Word> element;
    for (auto const& y : enumerate_language(normal_forms, radius)) {
      element.emplace(oracle.eval(y), y);
    }
    return CayleyBall(A, normal_forms, radius,
                      [&](Word const& y, Letter a) -> std::optional<Word> {
                        auto it = element.find(oracle.eval(concat(y, a)));
                        if (it == element.end()) {
                          return std::nullopt;
                        }
                        return it->second;
                      });
  }

  FlowAssignment flow_from_stacking(StackingStructure const& S, CayleyBall const& ball) {
    FlowAssignment flow;
    flow.paths.resize(ball.edges().size());
    for (EdgeId id = 0; id < ball.edges().size(); ++id) {
      auto const& e    = ball.edges()[id];
      FlowPath&   path = flow.paths[id];
      if (!e.target) {
        continue;
      }
      path.vertices.push_back(e.source);
      if (e.kind == EdgeClass::degenerate) {
        path.edges.push_back(id);
        path.vertices.push_back(*e.target);
        path.verified = true;
        continue;
      }
      path.verified = true;
      VertexId v    = e.source;
      for (Letter b : S.phi(ball.vertices()[e.source], e.letter)) {
        auto const& step = ball.edge(v, b);
        if (!step.target) {
          path.verified = false;
          break;
        }
        path.edges.push_back(ball.edge_id(v, b));
        v = *step.target;
        path.vertices.push_back(v);
      }
      if (path.verified && v != *e.target) {
        fail(ErrorKind::validation, "flow path of (" + ball.alphabet().format(ball.vertices()[e.source])
                                        + ", " + ball.alphabet().name(e.letter)
                                        + ") ends at the wrong vertex");
      }
    }
    return flow;
  }

  DescentReport check_wellfounded(FlowAssignment const& flow, CayleyBall const& ball) {
    DescentReport report;
    auto const&   edges = ball.edges();
    auto          node  = [&](EdgeId id) {
      return edges[id].target && edges[id].kind == EdgeClass::recursive;
    };
    for (EdgeId id = 0; id < edges.size(); ++id) {
      if (!node(id)) {
        continue;
      }
      ++report.recursive_edges;
      if (!flow.paths[id].verified) {
        ++report.unverified_edges;
        continue;
      }
      auto& out = report.arcs[id];
      for (EdgeId e : flow.paths[id].edges) {
        if (node(e) && flow.paths[e].verified) {
          out.push_back(e);
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      report.descent_arcs += out.size();
    }

    // Iterative depth-first search; colour 1 is on the stack.
    std::map<EdgeId, int>         colour;
    std::map<EdgeId, std::size_t> depth;
    for (auto const& [start, unused] : report.arcs) {
      (void) unused;
      if (colour[start] != 0) {
        continue;
      }
      std::vector<std::pair<EdgeId, std::size_t>> stack{{start, 0}};
      colour[start] = 1;
      while (!stack.empty() && report.acyclic) {
        auto& [e, i]    = stack.back();
        auto  it        = report.arcs.find(e);
        auto  const* out = it == report.arcs.end() ? nullptr : &it->second;
        if (out == nullptr || i == out->size()) {
          std::size_t d = 0;
          if (out != nullptr) {
            for (EdgeId f : *out) {
              d = std::max(d, depth[f] + 1);
            }
          }
          depth[e]  = d;
          colour[e] = 2;
          report.max_depth = std::max(report.max_depth, d);
          stack.pop_back();
          continue;
        }
        EdgeId f = (*out)[i++];
        if (colour[f] == 1) {
          report.acyclic = false;
          auto from      = std::find_if(stack.begin(), stack.end(),
                                        [f](auto const& p) { return p.first == f; });
          for (auto p = from; p != stack.end(); ++p) {
            report.cycle.push_back(p->first);
          }
        } else if (colour[f] == 0) {
          colour[f] = 1;
          stack.emplace_back(f, 0);
        }
      }
      if (!report.acyclic) {
        break;
      }
    }
    return report;
  }

  std::vector<std::pair<EdgeId, EdgeId>> prl_violations(DescentReport const&         report,
                                                        CayleyBall const&            ball,
                                                        PrefixRewritingSystem const& R,
                                                        std::size_t                  step_limit) {
    std::map<EdgeId, std::size_t> cache;
    auto length = [&](EdgeId id) {
      auto it = cache.find(id);
      if (it == cache.end()) {
        auto const& e = ball.edges()[id];
        it = cache.emplace(id, prl(R, concat(ball.vertices()[e.source], e.letter), step_limit))
                 .first;
      }
      return it->second;
    };
    std::vector<std::pair<EdgeId, EdgeId>> bad;
    for (auto const& [e, out] : report.arcs) {
      for (EdgeId f : out) {
        if (length(f) >= length(e)) {
          bad.emplace_back(e, f);
        }
      }
    }
    return bad;
  }

  namespace {

    std::string edge_name(CayleyBall const& ball, EdgeId id) {
      auto const&     e = ball.edges()[id];
      Alphabet const& A = ball.alphabet();
      return A.format(ball.vertices()[e.source]) + " -" + A.name(e.letter) + "-> "
             + (e.target ? A.format(ball.vertices()[*e.target]) : std::string("?"));
    }

    std::string quoted(std::string const& s) {
      return nlohmann::json(s).dump();
    }

  }  // namespace

  std::string descent_json(DescentReport const& report, CayleyBall const& ball) {
    nlohmann::ordered_json j;
    j["acyclic"]          = report.acyclic;
    j["recursive_edges"]  = report.recursive_edges;
    j["unverified_edges"] = report.unverified_edges;
    j["max_depth"]        = report.max_depth;
    auto& arcs            = j["arcs"] = nlohmann::ordered_json::array();
    for (auto const& [e, out] : report.arcs) {
      for (EdgeId f : out) {
        arcs.push_back({{"from", edge_name(ball, f)}, {"to", edge_name(ball, e)}});
      }
    }
    auto& cycle = j["cycle"] = nlohmann::ordered_json::array();
    for (EdgeId e : report.cycle) {
      cycle.push_back(edge_name(ball, e));
    }
    return j.dump(2) + "\n";
  }

  std::string ball_dot(CayleyBall const& ball, FlowAssignment const* flow) {
    Alphabet const&    A = ball.alphabet();
    std::ostringstream out;
    out << "digraph ball {\n";
    for (VertexId v = 0; v < ball.vertices().size(); ++v) {
      out << "  v" << v << " [label=" << quoted(A.format(ball.vertices()[v]))
          << (ball.on_boundary(v) ? ", peripheries=2" : "") << "];\n";
    }
    for (EdgeId id = 0; id < ball.edges().size(); ++id) {
      auto const& e = ball.edges()[id];
      if (!e.target) {
        continue;
      }
      if (e.kind == EdgeClass::degenerate) {
        if (ball.vertices()[*e.target].size() > ball.vertices()[e.source].size()) {
          out << "  v" << e.source << " -> v" << *e.target << " [label=" << quoted(A.name(e.letter))
              << "];\n";
        }
        continue;
      }
      std::string label = A.name(e.letter);
      if (flow != nullptr && flow->paths[id].verified) {
        Word w;
        for (EdgeId p : flow->paths[id].edges) {
          w.push_back(ball.edges()[p].letter);
        }
        label += " / " + A.format(w);
      }
      out << "  v" << e.source << " -> v" << *e.target << " [style=dashed, label=" << quoted(label)
          << "];\n";
    }
    out << "}\n";
    return out.str();
  }

  FellowReport fellow_traveler(CayleyBall const& ball, std::size_t cap) {
    FellowReport                                        report;
    std::map<VertexId, std::vector<std::size_t>>        cache;
    auto const&                                         V = ball.vertices();
    auto prefix_vertex = [&](Word const& w, std::size_t i) {
      return *ball.find(Word(w.begin(), w.begin() + std::min(i, w.size())));
    };
    for (auto const& e : ball.edges()) {
      if (!e.target) {
        continue;
      }
      ++report.pairs;
      Word const& y    = V[e.source];
      Word const& z    = V[*e.target];
      std::size_t best = 0;
      bool        lost = false;
      for (std::size_t i = 0; i <= std::max(y.size(), z.size()); ++i) {
        VertexId p = prefix_vertex(y, i), q = prefix_vertex(z, i);
        auto     it = cache.find(p);
        if (it == cache.end()) {
          it = cache.emplace(p, ball.distances_from(p)).first;
        }
        std::size_t d = it->second[q];
        if (d == std::numeric_limits<std::size_t>::max()) {
          lost = true;
        } else {
          best = std::max(best, d);
        }
      }
      report.indeterminate += lost;
      report.k = std::max(report.k, best);
      if (report.k > cap) {
        report.capped = true;
        break;
      }
    }
    return report;
  }

}  // namespace autostack
