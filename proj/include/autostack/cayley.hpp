// Finite balls in the Cayley graph, the flow of a stacking structure on a
// ball, descent (well-foundedness) checks, and fellow travelling.

#ifndef AUTOSTACK_CAYLEY_HPP_
#define AUTOSTACK_CAYLEY_HPP_

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autostack/core.hpp"
#include "autostack/rewriting.hpp"
#include "autostack/stacking.hpp"

namespace autostack {

  using VertexId = std::size_t;
  using EdgeId   = std::size_t;  // source * alphabet size + letter

  struct BallEdge {
    VertexId                source;
    Letter                  letter;
    std::optional<VertexId> target;  // empty when the target leaves the ball
    EdgeClass               kind;
  };

  //! The normal forms of length <= radius as vertices, with one directed edge
  //! per vertex and letter.  Tree edges are the degenerate ones.
  class CayleyBall {
   public:
    CayleyBall() = default;

    using Multiply = std::function<std::optional<Word>(Word const&, Letter)>;

    //! `multiply(y, a)` returns the normal form of y a, or nothing if it is
    //! unknown (the edge is then treated as leaving the ball).
    CayleyBall(Alphabet alphabet, Dfa const& normal_forms, std::size_t radius,
               Multiply const& multiply);

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    std::size_t radius() const noexcept {
      return _radius;
    }

    std::vector<Word> const& vertices() const noexcept {
      return _vertices;
    }

    std::vector<BallEdge> const& edges() const noexcept {
      return _edges;
    }

    std::optional<VertexId> find(Word const& w) const;

    BallEdge const& edge(VertexId v, Letter a) const {
      return _edges[edge_id(v, a)];
    }

    EdgeId edge_id(VertexId v, Letter a) const noexcept {
      return v * _alphabet.size() + a;
    }

    bool on_boundary(VertexId v) const {
      return _vertices[v].size() == _radius;
    }

    //! The inverse edge of e (same underlying undirected edge), if its
    //! target lies in the ball.
    std::optional<EdgeId> reverse(EdgeId e) const;

    //! Breadth-first distances inside the ball from v (max() if unreachable).
    std::vector<std::size_t> distances_from(VertexId v) const;

    //! Tree edges (degenerate, both ends in the ball, one per undirected
    //! edge) number |V| - 1 and connect the ball.
    bool tree_spans() const;

   private:
    Alphabet                 _alphabet;
    std::size_t              _radius = 0;
    std::vector<Word>        _vertices;
    std::map<Word, VertexId> _index;
    std::vector<BallEdge>    _edges;
  };

  CayleyBall build_ball(StackingStructure const& S, std::size_t radius,
                        std::size_t step_limit = 1000000);

  CayleyBall build_ball(PrefixRewritingSystem const& R, std::size_t radius,
                        std::size_t step_limit = 1000000);

  //! Targets found by comparing y a with the ball's vertices under the
  //! oracle, so phi is never followed.
  CayleyBall build_ball(Alphabet const& A, Dfa const& normal_forms, std::size_t radius,
                        GroupOracle const& oracle);

  struct FlowPath {
    std::vector<VertexId> vertices;
    std::vector<EdgeId>   edges;
    bool                  verified = false;  // false if the path leaves the ball
  };

  //! Phi(e) for every edge with both ends in the ball, indexed by EdgeId
  //! (edges leaving the ball get an empty, unverified path).
  struct FlowAssignment {
    std::vector<FlowPath> paths;
  };

  //! Traces phi(y, a) from y for recursive edges; degenerate edges map to
  //! themselves.  Throws a validation error if a verified path does not end
  //! at the target of its edge.
  FlowAssignment flow_from_stacking(StackingStructure const& S, CayleyBall const& ball);

  struct DescentReport {
    bool                acyclic = true;
    std::vector<EdgeId> cycle;  // witness when not acyclic
    std::size_t         recursive_edges  = 0;
    std::size_t         unverified_edges = 0;
    std::size_t         descent_arcs     = 0;
    std::size_t         max_depth        = 0;  // longest descent chain
    //! arcs[e] lists the recursive edges on Phi(e), for verified e.
    std::map<EdgeId, std::vector<EdgeId>> arcs;
  };

  //! Tree edges solid, recursive edges dashed and labelled with the word of
  //! their flow path when one is given.
  std::string ball_dot(CayleyBall const& ball, FlowAssignment const* flow = nullptr);

  DescentReport check_wellfounded(FlowAssignment const& flow, CayleyBall const& ball);

  //! JSON of the descent digraph: vertices named "y -a-> z" and arcs.
  std::string descent_json(DescentReport const& report, CayleyBall const& ball);

  //! Descent arcs e' -> e (e' on Phi(e)) with prl(y' a') >= prl(y a) under
  //! the rewriting system, as (e, e') pairs.  Empty when prl decreases.
  std::vector<std::pair<EdgeId, EdgeId>> prl_violations(DescentReport const&         report,
                                                        CayleyBall const&            ball,
                                                        PrefixRewritingSystem const& R,
                                                        std::size_t step_limit = 1000000);

  struct FellowReport {
    std::size_t k             = 0;  // max distance over determinate pairs
    std::size_t pairs         = 0;
    std::size_t indeterminate = 0;  // some prefix distance was not resolved
    bool        capped        = false;
  };

  //! For every edge y -a-> z with both ends in the ball, the maximum over i
  //! of the ball distance between the length-i prefixes of y and z.
  FellowReport fellow_traveler(CayleyBall const& ball,
                               std::size_t       cap = std::numeric_limits<std::size_t>::max());

}  // namespace autostack

#endif  // AUTOSTACK_CAYLEY_HPP_
