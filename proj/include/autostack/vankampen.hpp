// Van Kampen diagrams as combinatorial maps: darts paired by twin (d ^ 1),
// a rotation at every vertex, and faces as orbits of d -> rotation[twin(d)].
// Bounded faces are 2-cells; the remaining orbit is the outer boundary.

#ifndef AUTOSTACK_VANKAMPEN_HPP_
#define AUTOSTACK_VANKAMPEN_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "autostack/core.hpp"
#include "autostack/stacking.hpp"

namespace autostack {

  using DartId = std::size_t;

  struct Dart {
    std::size_t origin = 0;
    Letter      letter = 0;  // read along the dart; its twin reads the inverse

    bool operator==(Dart const&) const = default;
  };

  struct VanKampenDiagram {
    Alphabet                         alphabet;
    std::size_t                      vertex_count = 1;
    std::size_t                      basepoint    = 0;
    std::vector<Dart>                darts;     // twin of d is d ^ 1
    std::vector<DartId>              rotation;  // next dart around the origin
    std::vector<std::vector<DartId>> faces;     // each a cycle of the face walk
    std::optional<DartId>            outer;     // first boundary dart, at the basepoint
    Word                             boundary;

    static VanKampenDiagram single_vertex(Alphabet alphabet);

    //! A path from the basepoint labelled w, walked out and back.
    static VanKampenDiagram path(Alphabet alphabet, Word const& w);

    std::size_t edge_count() const noexcept {
      return darts.size() / 2;
    }

    std::size_t target(DartId d) const {
      return darts[d ^ 1].origin;
    }

    //! The dart after d on the face to its right.
    DartId next_in_face(DartId d) const {
      return rotation[d ^ 1];
    }

    //! The outer boundary walk from the basepoint (empty without edges).
    std::vector<DartId> boundary_walk() const;

    Word face_word(std::size_t face) const;

    bool operator==(VanKampenDiagram const&) const = default;
  };

  //! Glues diagrams with boundaries y_{i-1} b_i y_i^-1 along the shared
  //! y_i paths, left to right.  `first_prefix` is l(y_0); every b_i is one
  //! letter.  Throws a validation error if the shared words disagree or a
  //! fold would close a loop (the shared path is not simple).
  VanKampenDiagram seashell_glue(std::vector<VanKampenDiagram> const& diagrams,
                                 std::size_t                          first_prefix = 0);

  struct DiagramBudget {
    std::size_t max_depth = 10000;    // nesting of recursive edges
    std::size_t max_edges = 1000000;  // edges in any intermediate diagram
  };

  //! Diagram with boundary y a nf(y a)^-1.  Degenerate edges give a path;
  //! recursive edges get one face phi(y, a) a^-1 over the seashell of the
  //! edge diagrams along phi(y, a).  Throws a budget error if the descent
  //! nests deeper than max_depth, and a usage error if y is not normal.
  VanKampenDiagram build_edge_diagram(StackingStructure const& S,
                                      Word const&              y,
                                      Letter                   a,
                                      DiagramBudget const&     budget = {});

  //! Diagram with boundary w over the relators of stacking_presentation(S).
  //! Throws a validation error if w is not the identity.
  VanKampenDiagram build_diagram(StackingStructure const& S,
                                 Word const&              w,
                                 DiagramBudget const&     budget = {});

  struct DiagramReport {
    std::vector<std::string> problems;
    std::optional<std::size_t> bad_face;  // first face failing the relator check

    bool ok() const noexcept {
      return problems.empty();
    }
  };

  //! Map structure, connectivity, Euler's formula with the outer face,
  //! chi = 1, stored faces against the face orbits, the boundary word from
  //! the basepoint, and every face word a relator up to rotation and
  //! inversion.
  DiagramReport validate_diagram(VanKampenDiagram const& d, Presentation const& P);

  std::string diagram_json(VanKampenDiagram const& d);

  //! Throws a parse error on malformed JSON or inconsistent indices.
  VanKampenDiagram parse_diagram_json(std::string const& text);

  std::string diagram_dot(VanKampenDiagram const& d);

}  // namespace autostack

#endif  // AUTOSTACK_VANKAMPEN_HPP_
