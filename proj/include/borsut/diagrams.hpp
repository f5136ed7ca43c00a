#pragma once

// Nice bordered sutured Heegaard diagrams, given combinatorially: curves,
// intersection points and an explicit list of regions. Each region is a
// cyclic word of edges
//
//   "alpha:NAME[/SEG]"  "beta:NAME[/SEG]"  "reeb:P>Q"  "suture"
//
// with corner tokens "@POINT" between an alpha and a beta edge. A Reeb edge
// runs along Z from point P to point Q; in counterclockwise words it runs
// against the orientation of Z (P > Q). The optional SEG names one segment
// of a curve; regions sharing a segment are adjacent across it.

#include "borsut/structures.hpp"

#include <string>
#include <vector>

namespace borsut {

struct DiagramEdge {
    enum class Type { Alpha, Beta, Reeb, Suture };
    Type type = Type::Suture;
    std::string curve;   // Alpha/Beta
    std::string segment; // optional
    int from = -1, to = -1; // Reeb
};

struct DiagramRegion {
    std::string name;
    std::vector<DiagramEdge> edges;
    // corner[i]: intersection index between edges[i] and edges[i+1], or -1.
    std::vector<int> corner;
    bool extended = false;
    bool clockwise = false;
    bool touches_suture() const;
};

struct AlphaArc {
    std::string name;
    int end0 = 0, end1 = 0; // points of Z
    int pair = 0;
};

struct Intersection {
    std::string name;
    int alpha = 0; // index into alpha_arcs, or alpha_arcs.size() + circle index
    int beta = 0;
};

struct NiceDiagram {
    std::string name;
    AlgebraPtr base;           // A(Z) summand the Type-D structure lives over
    std::vector<int> points;   // matched-pair label per point of Z
    std::vector<AlphaArc> alpha_arcs;
    std::vector<std::string> alpha_circles;
    std::vector<std::string> beta_circles;
    std::vector<Intersection> intersections;
    std::vector<DiagramRegion> regions;

    bool alpha_is_arc(int a) const { return a < int(alpha_arcs.size()); }
    std::string alpha_name(int a) const;
};

struct DiagramGenerator {
    std::vector<int> points;     // intersection indices, sorted
    std::vector<int> occupied;   // matched pairs of the occupied alpha-arcs
    std::vector<int> idempotent; // the complement: the left idempotent of the Type-D generator
    std::string name;
};

// ParseError on malformed input, NotNice naming the offending region,
// Disconnected if a component of the complement of the alpha (or beta)
// curves misses the sutures.
NiceDiagram parse_diagram_text(const std::string& text);
NiceDiagram parse_diagram(const std::string& path);

std::vector<DiagramGenerator> enumerate_generators(const NiceDiagram& d);

// Bigons and rectangles contribute I(o(x)) (x) y, regions with one Reeb edge
// I(o(x)) a(rho) I(o(y)) (x) y; an extended region multiplies its Reeb
// chords in traversal order starting from the x-corner.
ModPtr type_d_from_nice_diagram(const NiceDiagram& d);

// The same diagram with every region word listed clockwise.
NiceDiagram reversed(const NiceDiagram& d);

} // namespace borsut
