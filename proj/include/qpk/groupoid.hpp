#pragma once

#include "qpk/word.hpp"

#include <array>
#include <string>
#include <vector>

namespace qpk::groupoid {

struct GroupoidError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ideal triangle with a distinguished corner. Edges are listed
/// counterclockwise; the dot marks the corner between edges[dot] and
/// edges[dot+1], so those two are the incoming sides and edges[dot+2] the
/// outgoing one.
struct Triangle {
    int label = 0;
    std::array<int, 3> edges{};
    int dot = 0;
};

struct DottedTriangulation {
    std::vector<Triangle> triangles;  // kept sorted by label

    /// Fan triangulation of a convex (n+2)-gon with n labeled triangles.
    static DottedTriangulation polygonFan(int nTriangles);

    const Triangle* find(int label) const;
    /// Canonical key: triangles by label, rotated dot-first, edges renamed
    /// in order of first occurrence.
    std::string key() const;
    bool operator==(const DottedTriangulation& o) const { return key() == o.key(); }
};

struct Move {
    enum class Kind { DotRotate, Flip, Relabel };
    Kind kind = Kind::DotRotate;
    int j = 0;
    int k = 0;
    std::vector<std::vector<int>> cycles;  // for Relabel

    std::string str() const;
};

using MoveWord = std::vector<Move>;

bool flipApplicable(const DottedTriangulation& dt, int j, int k);
DottedTriangulation applyMove(const DottedTriangulation& dt, const Move& mv);
DottedTriangulation applyWord(const DottedTriangulation& dt, const MoveWord& w);

/// Number of dotted labeled triangulations reachable from the fan start by
/// elementary moves (A, T and transposition relabelings).
std::size_t reachableCount(int nTriangles);
/// Catalan(n) * 3^n * n!: the full count for an (n+2)-gon.
std::size_t dottedTriangulationCount(int nTriangles);

/// Operator realization: A_j -> the order-three operator on slot j,
/// T_jk -> the flip operator on slots (j,k), P_sigma -> slot permutation.
OperatorSum compileMove(const Move& mv, bool formalM, const Rational& mval);
OperatorSum compileWord(const MoveWord& w, bool formalM, const Rational& mval = Rational(1));

struct RelationCheck {
    std::string name;
    std::string phase;  // recorded projective phase, "1" unless stated
    bool pass = false;
    std::string message;
};

/// Instantiates the presentation's relations (including the trivial ones)
/// for the index set {1..size}, compiles both sides and verifies them with
/// the symbolic engine. size <= 4.
std::vector<RelationCheck> checkPresentation(int size, const std::string& scriptsDir);

// text formats
std::string formatTriangulation(const DottedTriangulation& dt);
DottedTriangulation parseTriangulation(const std::string& text);
MoveWord parseMoves(const std::string& text);  // e.g. "T 1 2; A 1; P (1 2)"

}  // namespace qpk::groupoid
