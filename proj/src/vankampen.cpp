#include "autostack/vankampen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "autostack/error.hpp"
#include "json.hpp"

namespace autostack {

  VanKampenDiagram VanKampenDiagram::single_vertex(Alphabet alphabet) {
    VanKampenDiagram d;
    d.alphabet = std::move(alphabet);
    return d;
  }

  VanKampenDiagram VanKampenDiagram::path(Alphabet alphabet, Word const& w) {
    VanKampenDiagram d = single_vertex(std::move(alphabet));
    if (w.empty()) {
      return d;
    }
    std::size_t const n = w.size();
    d.vertex_count      = n + 1;
    d.darts.resize(2 * n);
    d.rotation.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      d.darts[2 * i]     = {i, w[i]};
      d.darts[2 * i + 1] = {i + 1, d.alphabet.inverse(w[i])};
    }
    // Vertex i carries the back dart 2i-1 and the forward dart 2i.
    d.rotation[0] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      d.rotation[2 * i - 1] = 2 * i;
      d.rotation[2 * i]     = 2 * i - 1;
    }
    d.rotation[2 * n - 1] = 2 * n - 1;
    d.outer               = 0;
    d.boundary            = concat(w, formal_inverse(d.alphabet, w));
    return d;
  }

  std::vector<DartId> VanKampenDiagram::boundary_walk() const {
    std::vector<DartId> walk;
    if (!outer) {
      return walk;
    }
    DartId x = *outer;
    do {
      walk.push_back(x);
      x = next_in_face(x);
    } while (x != *outer && walk.size() <= darts.size());
    return walk;
  }

  Word VanKampenDiagram::face_word(std::size_t face) const {
    Word w;
    for (DartId x : faces.at(face)) {
      w.push_back(darts[x].letter);
    }
    return w;
  }

  namespace {

    // A diagram under construction: removed darts and vertices are only
    // marked, and faces are tracked by one dart each.
    struct WorkMap {
      VanKampenDiagram    d;
      std::vector<bool>   dead_dart;
      std::vector<bool>   dead_vertex;
      std::vector<DartId> face_reps;

      explicit WorkMap(VanKampenDiagram const& from)
          : d(from), dead_dart(from.darts.size(), false), dead_vertex(from.vertex_count, false) {
        for (auto const& f : from.faces) {
          face_reps.push_back(f.front());
        }
        d.faces.clear();
      }

      std::vector<DartId> walk() const {
        return d.boundary_walk();
      }

      // Copies D in, identifying its basepoint with ours, and splices the
      // rotations at the basepoint so our boundary walk is followed by D's.
      // Returns D's boundary walk in our numbering.
      std::vector<DartId> wedge(VanKampenDiagram const& D) {
        std::vector<DartId> ours = walk();
        std::size_t const   voff = d.vertex_count;
        std::size_t const   doff = d.darts.size();
        auto vertex = [&](std::size_t v) { return v == D.basepoint ? d.basepoint : voff + v; };
        d.vertex_count += D.vertex_count;
        dead_vertex.resize(d.vertex_count, false);
        dead_vertex[voff + D.basepoint] = true;
        for (std::size_t x = 0; x < D.darts.size(); ++x) {
          d.darts.push_back({vertex(D.darts[x].origin), D.darts[x].letter});
          d.rotation.push_back(doff + D.rotation[x]);
          dead_dart.push_back(false);
        }
        for (auto const& f : D.faces) {
          face_reps.push_back(doff + f.front());
        }
        std::vector<DartId> theirs;
        for (DartId x : D.boundary_walk()) {
          theirs.push_back(doff + x);
        }
        if (theirs.empty()) {
          return theirs;
        }
        if (ours.empty()) {
          d.outer = theirs.front();
          return theirs;
        }
        DartId our_back   = ours.back() ^ 1;
        DartId their_back = theirs.back() ^ 1;
        d.rotation[our_back]   = theirs.front();
        d.rotation[their_back] = ours.front();
        return theirs;
      }

      // d1 then d2 on the boundary, reading x^-1 x: zip them into one edge.
      void fold(DartId d1, DartId d2) {
        Alphabet const& A = d.alphabet;
        if (d.next_in_face(d1) != d2 || d2 == (d1 ^ 1)
            || d.darts[d1].letter != A.inverse(d.darts[d2].letter)) {
          fail(ErrorKind::validation, "seashell: boundary darts do not fold");
        }
        std::size_t u   = d.darts[d1].origin;
        std::size_t w   = d.target(d2);
        DartId      td2 = d2 ^ 1;
        if (u == w) {
          fail(ErrorKind::validation, "seashell: shared path is not simple");
        }
        d.rotation[d1 ^ 1] = d.rotation[d2];

        std::vector<DartId> rest;  // w's darts after td2
        for (DartId x = d.rotation[td2]; x != td2; x = d.rotation[x]) {
          rest.push_back(x);
        }
        if (!rest.empty()) {
          DartId before = d1;
          while (d.rotation[before] != d1) {
            before = d.rotation[before];
          }
          d.rotation[before]      = rest.front();
          d.rotation[rest.back()] = d1;
          for (DartId x : rest) {
            d.darts[x].origin = u;
          }
        }
        for (auto& r : face_reps) {
          if (r == td2) {
            r = d1;
          }
        }
        dead_dart[d2] = dead_dart[td2] = true;
        dead_vertex[w]                 = true;
      }

      // Adds an edge reading `letter` from the corner before walk[i] to the
      // corner before walk[j], on the outer face; the part of the boundary
      // from i to j becomes a new face.
      void chord(std::vector<DartId> const& W, std::size_t i, std::size_t j, Letter letter) {
        std::size_t const L      = W.size();
        DartId            in_p   = W[(i + L - 1) % L];
        DartId            in_q   = W[(j + L - 1) % L];
        DartId            out_p  = W[i % L];
        DartId            out_q  = W[j % L];
        DartId            n      = d.darts.size();
        d.darts.push_back({d.darts[out_p].origin, letter});
        d.darts.push_back({d.darts[out_q].origin, d.alphabet.inverse(letter)});
        d.rotation.push_back(out_p);
        d.rotation.push_back(out_q);
        dead_dart.push_back(false);
        dead_dart.push_back(false);
        d.rotation[in_p ^ 1] = n;
        d.rotation[in_q ^ 1] = n + 1;
        face_reps.push_back(n + 1);
        if (i % L == 0) {
          d.outer = n;
        }
      }

      std::size_t live_edges() const {
        return static_cast<std::size_t>(std::count(dead_dart.begin(), dead_dart.end(), false)) / 2;
      }

      VanKampenDiagram finish() const {
        std::vector<std::size_t> vmap(d.vertex_count), dmap(d.darts.size());
        std::size_t              nv = 0, nd = 0;
        for (std::size_t v = 0; v < d.vertex_count; ++v) {
          vmap[v] = dead_vertex[v] ? 0 : nv++;
        }
        for (DartId x = 0; x < d.darts.size(); ++x) {
          dmap[x] = dead_dart[x] ? 0 : nd++;
        }
        VanKampenDiagram out;
        out.alphabet     = d.alphabet;
        out.vertex_count = nv;
        out.basepoint    = vmap[d.basepoint];
        for (DartId x = 0; x < d.darts.size(); ++x) {
          if (!dead_dart[x]) {
            out.darts.push_back({vmap[d.darts[x].origin], d.darts[x].letter});
            out.rotation.push_back(dmap[d.rotation[x]]);
          }
        }
        if (d.outer) {
          out.outer = dmap[*d.outer];
        }
        for (DartId r : face_reps) {
          std::vector<DartId> cycle;
          DartId              x = dmap[r];
          do {
            cycle.push_back(x);
            x = out.next_in_face(x);
          } while (x != dmap[r] && cycle.size() <= out.darts.size());
          out.faces.push_back(std::move(cycle));
        }
        for (DartId x : out.boundary_walk()) {
          out.boundary.push_back(out.darts[x].letter);
        }
        return out;
      }
    };

    VanKampenDiagram glue(std::vector<VanKampenDiagram const*> const& parts,
                          std::size_t                                  first_prefix) {
      if (parts.empty()) {
        fail(ErrorKind::usage, "seashell: no diagrams to glue");
      }
      Alphabet const& A = parts.front()->alphabet;
      WorkMap         work(*parts.front());
      Word            boundary = parts.front()->boundary;
      if (boundary.size() < first_prefix + 1) {
        fail(ErrorKind::validation, "seashell: boundary shorter than its prefix");
      }
      std::size_t shared = boundary.size() - first_prefix - 1;
      for (std::size_t i = 1; i < parts.size(); ++i) {
        Word const& next = parts[i]->boundary;
        if (next.size() < shared + 1
            || formal_inverse(A, Word(boundary.end() - shared, boundary.end()))
                   != Word(next.begin(), next.begin() + shared)) {
          fail(ErrorKind::validation, "seashell: diagram " + std::to_string(i)
                                          + " does not start with the shared path");
        }
        auto ours   = work.walk();
        auto theirs = work.wedge(*parts[i]);
        for (std::size_t j = 0; j < shared; ++j) {
          work.fold(ours[ours.size() - 1 - j], theirs[j]);
        }
        boundary.resize(boundary.size() - shared);
        boundary.insert(boundary.end(), next.begin() + shared, next.end());
        shared = next.size() - shared - 1;
      }
      auto out = work.finish();
      if (out.boundary != boundary) {
        fail(ErrorKind::validation, "seashell: glued boundary is " + A.format(out.boundary)
                                        + ", expected " + A.format(boundary));
      }
      return out;
    }

    class EdgeDiagrams {
     public:
      EdgeDiagrams(StackingStructure const& S, DiagramBudget const& budget)
          : _S(S), _budget(budget) {}

      struct Entry {
        VanKampenDiagram diagram;
        Word             target;  // nf(y a)
      };

      Entry const& get(Word const& y, Letter a, std::size_t depth = 0) {
        auto key = std::make_pair(y, a);
        if (auto it = _memo.find(key); it != _memo.end()) {
          return it->second;
        }
        Alphabet const& A     = _S.alphabet();
        Word            value = _S.phi(y, a);
        Entry           entry;
        if (_S.edge_class(y, a) == EdgeClass::degenerate) {
          Word ya = concat(y, a);
          if (_S.normal_forms().accepts(ya)) {
            entry = {VanKampenDiagram::path(A, ya), ya};
          } else {
            entry = {VanKampenDiagram::path(A, y), Word(y.begin(), y.end() - 1)};
          }
          return _memo.emplace(key, std::move(entry)).first->second;
        }

        if (depth >= _budget.max_depth) {
          fail(ErrorKind::budget, "diagram: recursive edges nest deeper than "
                                      + std::to_string(_budget.max_depth));
        }
        std::vector<VanKampenDiagram const*> parts;
        Word                                 cur = y;
        for (Letter x : value) {
          Entry const& sub = get(cur, x, depth + 1);
          parts.push_back(&sub.diagram);
          cur = sub.target;
        }
        if (parts.empty()) {
          fail(ErrorKind::validation, "diagram: empty path for a recursive edge");
        }
        WorkMap work(glue(parts, y.size()));
        work.chord(work.walk(), y.size(), y.size() + value.size(), a);
        if (work.live_edges() > _budget.max_edges) {
          fail(ErrorKind::budget, "diagram: more than " + std::to_string(_budget.max_edges)
                                      + " edges");
        }
        entry = {work.finish(), cur};
        return _memo.emplace(key, std::move(entry)).first->second;
      }

     private:
      StackingStructure const&                       _S;
      DiagramBudget                                  _budget;
      std::map<std::pair<Word, Letter>, Entry>       _memo;
    };

  }  // namespace

  VanKampenDiagram seashell_glue(std::vector<VanKampenDiagram> const& diagrams,
                                 std::size_t                          first_prefix) {
    std::vector<VanKampenDiagram const*> parts;
    for (auto const& d : diagrams) {
      parts.push_back(&d);
    }
    return glue(parts, first_prefix);
  }

  VanKampenDiagram build_edge_diagram(StackingStructure const& S,
                                      Word const&              y,
                                      Letter                   a,
                                      DiagramBudget const&     budget) {
    EdgeDiagrams cache(S, budget);
    return cache.get(y, a).diagram;
  }

  VanKampenDiagram build_diagram(StackingStructure const& S,
                                 Word const&              w,
                                 DiagramBudget const&     budget) {
    if (w.empty()) {
      return VanKampenDiagram::single_vertex(S.alphabet());
    }
    EdgeDiagrams                         cache(S, budget);
    std::vector<VanKampenDiagram const*> parts;
    Word                                 cur;
    for (Letter x : w) {
      auto const& sub = cache.get(cur, x);
      parts.push_back(&sub.diagram);
      cur = sub.target;
    }
    if (!cur.empty()) {
      fail(ErrorKind::validation, S.alphabet().format(w) + " is not the identity (normal form "
                                      + S.alphabet().format(cur) + ")");
    }
    return glue(parts, 0);
  }

  DiagramReport validate_diagram(VanKampenDiagram const& d, Presentation const& P) {
    DiagramReport report;
    auto          problem = [&](std::string s) { report.problems.push_back(std::move(s)); };
    Alphabet const& A     = d.alphabet;
    std::size_t const nd  = d.darts.size();
    std::size_t const V   = d.vertex_count;

    // Map structure first; the later checks index through it.
    if (!(P.alphabet == A)) {
      problem("presentation alphabet differs from the diagram alphabet");
    }
    if (V == 0 || d.basepoint >= V) {
      problem("basepoint is not a vertex");
    }
    if (nd % 2 != 0 || d.rotation.size() != nd) {
      problem("darts and rotation do not pair up");
    }
    if (!report.ok()) {
      return report;
    }
    std::vector<bool> hit(nd, false);
    for (DartId x = 0; x < nd; ++x) {
      auto const& dart = d.darts[x];
      if (dart.origin >= V || dart.letter >= A.size() || d.rotation[x] >= nd) {
        problem("dart " + std::to_string(x) + " has an index out of range");
        return report;
      }
      if (!A.has_inverse(dart.letter) || d.darts[x ^ 1].letter != A.inverse(dart.letter)) {
        problem("dart " + std::to_string(x) + " and its twin are not inverse letters");
      }
      if (d.darts[d.rotation[x]].origin != dart.origin) {
        problem("rotation at dart " + std::to_string(x) + " leaves its vertex");
      }
      if (hit[d.rotation[x]]) {
        problem("rotation is not a permutation at dart " + std::to_string(d.rotation[x]));
        return report;
      }
      hit[d.rotation[x]] = true;
    }
    if (!report.ok()) {
      return report;
    }

    // Connectivity.
    std::vector<std::size_t> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t v) {
      while (parent[v] != v) {
        v = parent[v] = parent[parent[v]];
      }
      return v;
    };
    std::size_t components = V;
    for (DartId x = 0; x < nd; x += 2) {
      auto r1 = root(d.darts[x].origin), r2 = root(d.target(x));
      if (r1 != r2) {
        parent[r1] = r2;
        --components;
      }
    }
    if (components != 1) {
      problem("diagram is not connected: " + std::to_string(components) + " components");
    }

    // Face orbits.
    std::vector<std::size_t> orbit(nd, nd);
    std::size_t              orbits = 0;
    for (DartId x = 0; x < nd; ++x) {
      if (orbit[x] != nd) {
        continue;
      }
      for (DartId y = x; orbit[y] == nd; y = d.next_in_face(y)) {
        orbit[y] = orbits;
      }
      ++orbits;
    }
    std::size_t const E = nd / 2;
    std::size_t const F = d.faces.size();
    if (V + std::max<std::size_t>(orbits, 1) != E + 2) {
      problem("Euler's formula fails: V - E + faces = "
              + std::to_string(static_cast<long long>(V) - static_cast<long long>(E)
                               + static_cast<long long>(std::max<std::size_t>(orbits, 1)))
              + ", not a planar map");
    }
    if (V + F != E + 1) {
      problem("Euler characteristic is " + std::to_string(static_cast<long long>(V + F)
                                                          - static_cast<long long>(E))
              + ", not 1");
    }

    // Outer boundary.
    std::optional<std::size_t> outer_orbit;
    if (nd == 0) {
      if (d.outer) {
        problem("outer dart given for a diagram without edges");
      }
    } else if (!d.outer || *d.outer >= nd || d.darts[*d.outer].origin != d.basepoint) {
      problem("outer dart does not leave the basepoint");
    } else {
      outer_orbit = orbit[*d.outer];
    }
    Word read;
    for (DartId x : d.boundary_walk()) {
      read.push_back(d.darts[x].letter);
    }
    if (read != d.boundary) {
      problem("boundary reads " + A.format(read) + ", expected " + A.format(d.boundary));
    }

    // Stored faces against the orbits.
    std::set<std::size_t> seen;
    if (nd > 0 && F + 1 != orbits) {
      problem(std::to_string(F) + " faces stored but the map has " + std::to_string(orbits)
              + " face orbits");
    }
    for (std::size_t f = 0; f < F; ++f) {
      auto const& cycle = d.faces[f];
      bool        good  = !cycle.empty();
      for (std::size_t i = 0; good && i < cycle.size(); ++i) {
        good = cycle[i] < nd && d.next_in_face(cycle[i]) == cycle[(i + 1) % cycle.size()];
      }
      if (good) {
        std::size_t o = orbit[cycle.front()];
        good          = std::count(orbit.begin(), orbit.end(), o)
                   == static_cast<std::ptrdiff_t>(cycle.size())
               && o != outer_orbit && seen.insert(o).second;
      }
      if (!good) {
        problem("face " + std::to_string(f) + " is not a bounded face cycle");
      }
    }

    // Relators up to rotation and inversion.
    std::set<Word> cyclic;
    for (auto const& r : P.relators) {
      for (Word const& base : {r, formal_inverse(A, r)}) {
        for (std::size_t i = 0; i < base.size(); ++i) {
          Word rot(base.begin() + i, base.end());
          rot.insert(rot.end(), base.begin(), base.begin() + i);
          cyclic.insert(std::move(rot));
        }
      }
    }
    for (std::size_t f = 0; f < F; ++f) {
      bool in_range = std::all_of(d.faces[f].begin(), d.faces[f].end(),
                                  [&](DartId x) { return x < nd; });
      if (in_range && cyclic.count(d.face_word(f)) == 0) {
        problem("face " + std::to_string(f) + " reads " + A.format(d.face_word(f))
                + ", not a relator");
        if (!report.bad_face) {
          report.bad_face = f;
        }
      }
    }
    return report;
  }

  std::string diagram_json(VanKampenDiagram const& d) {
    using json      = nlohmann::ordered_json;
    Alphabet const& A = d.alphabet;
    json            j;
    j["letters"]  = A.names();
    json inverses = json::array();
    for (Letter x = 0; x < A.size(); ++x) {
      if (A.has_inverse(x) && x <= A.inverse(x)) {
        inverses.push_back({A.name(x), A.name(A.inverse(x))});
      }
    }
    j["inverses"]  = inverses;
    j["vertices"]  = d.vertex_count;
    j["basepoint"] = d.basepoint;
    json darts     = json::array();
    for (DartId x = 0; x < d.darts.size(); ++x) {
      darts.push_back({{"origin", d.darts[x].origin},
                       {"letter", A.name(d.darts[x].letter)},
                       {"next", d.rotation[x]}});
    }
    j["darts"] = darts;
    json faces = json::array();
    for (std::size_t f = 0; f < d.faces.size(); ++f) {
      faces.push_back({{"darts", d.faces[f]}, {"word", A.format(d.face_word(f))}});
    }
    j["faces"]    = faces;
    j["outer"]    = d.outer ? json(*d.outer) : json(nullptr);
    j["boundary"] = A.format(d.boundary);
    return j.dump(2) + "\n";
  }

  VanKampenDiagram parse_diagram_json(std::string const& text) {
    try {
      auto             j = nlohmann::json::parse(text);
      VanKampenDiagram d;
      d.alphabet = Alphabet(j.at("letters").get<std::vector<std::string>>(),
                            j.at("inverses").get<std::vector<std::pair<std::string, std::string>>>());
      d.vertex_count = j.at("vertices").get<std::size_t>();
      d.basepoint    = j.at("basepoint").get<std::size_t>();
      auto const& darts = j.at("darts");
      for (auto const& x : darts) {
        auto letter = d.alphabet.find(x.at("letter").get<std::string>());
        auto origin = x.at("origin").get<std::size_t>();
        auto next   = x.at("next").get<std::size_t>();
        if (!letter || origin >= d.vertex_count || next >= darts.size()) {
          fail(ErrorKind::parse, "diagram: dart " + std::to_string(d.darts.size())
                                     + " has an unknown letter or index");
        }
        d.darts.push_back({origin, *letter});
        d.rotation.push_back(next);
      }
      for (auto const& f : j.at("faces")) {
        auto cycle = f.at("darts").get<std::vector<DartId>>();
        for (DartId x : cycle) {
          if (x >= d.darts.size()) {
            fail(ErrorKind::parse, "diagram: face dart out of range");
          }
        }
        d.faces.push_back(std::move(cycle));
      }
      if (!j.at("outer").is_null()) {
        d.outer = j.at("outer").get<DartId>();
        if (*d.outer >= d.darts.size()) {
          fail(ErrorKind::parse, "diagram: outer dart out of range");
        }
      }
      d.boundary = d.alphabet.parse(j.at("boundary").get<std::string>());
      if (d.darts.size() % 2 != 0 || d.basepoint >= d.vertex_count) {
        fail(ErrorKind::parse, "diagram: odd dart count or bad basepoint");
      }
      return d;
    } catch (nlohmann::json::exception const& e) {
      fail(ErrorKind::parse, std::string("diagram: ") + e.what());
    }
  }

  std::string diagram_dot(VanKampenDiagram const& d) {
    auto quoted = [](std::string const& s) { return nlohmann::json(s).dump(); };
    std::ostringstream out;
    out << "digraph diagram {\n";
    for (std::size_t v = 0; v < d.vertex_count; ++v) {
      out << "  v" << v << " [shape=point"
          << (v == d.basepoint ? ", width=0.15, color=red" : "") << "];\n";
    }
    for (DartId x = 0; x < d.darts.size(); x += 2) {
      out << "  v" << d.darts[x].origin << " -> v" << d.target(x)
          << " [label=" << quoted(d.alphabet.name(d.darts[x].letter)) << "];\n";
    }
    for (std::size_t f = 0; f < d.faces.size(); ++f) {
      out << "  f" << f << " [shape=plaintext, fontcolor=gray, label="
          << quoted(d.alphabet.format(d.face_word(f))) << "];\n";
      std::set<std::size_t> corners;
      for (DartId x : d.faces[f]) {
        corners.insert(d.darts[x].origin);
      }
      for (std::size_t v : corners) {
        out << "  f" << f << " -> v" << v << " [style=dotted, arrowhead=none];\n";
      }
    }
    out << "}\n";
    return out.str();
  }

}  // namespace autostack
