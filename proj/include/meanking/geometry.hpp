#pragma once

// The dual affine plane geometry of order d: d(d+1) points arranged in d
// rows and d+1 columns (one column per basis label), d^2 lines named by
// their rows in the two leftmost columns, incidence through the explicit
// line equation, and an exhaustive audit of the defining properties.

#include "meanking/finitefield.hpp"
#include "meanking/mub.hpp"
#include "meanking/report.hpp"

#include <iosfwd>
#include <vector>

namespace meanking {

/// Geometry point alpha = (m, b): row m in column b.
struct Point {
    ModInt m;
    BasisLabel b;

    friend bool operator==(const Point& x, const Point& y) { return x.m == y.m && x.b == y.b; }
    std::string to_string() const { return "(" + std::to_string(m.value()) + "," + b.to_string() + ")"; }
};

/// Geometry line j = (mddot, m0), named by its point in column dd0 and its
/// point in column b = 0.
struct Line {
    ModInt mddot;
    ModInt m0;

    friend bool operator==(const Line& x, const Line& y) { return x.mddot == y.mddot && x.m0 == y.m0; }
    std::string to_string() const {
        return "(" + std::to_string(mddot.value()) + "," + std::to_string(m0.value()) + ")";
    }
};

/// Row of line j in column b: m(b) = m0 + (b/2)(2*mddot - 1) for numeric b,
/// and mddot in column dd0.
ModInt line_row(PrimeDim d, const Line& j, const BasisLabel& b);

/// The d+1 points of line j, one per column, CB column first.
std::vector<Point> line_points(PrimeDim d, const Line& j);

/// The d lines through p. For p = (m, dd0) these are (m, m0) for all m0;
/// otherwise one line per mddot with m0 solved from the line equation.
std::vector<Line> lines_through_point(PrimeDim d, const Point& p);

/// The unique common point of two distinct lines. Lines sharing mddot meet
/// in column dd0; otherwise the column solves b = (m01 - m02)/(mddot2 - mddot1).
Point intersect_lines(PrimeDim d, const Line& j1, const Line& j2);

/// The d points of column b: one of the d+1 disjoint sets partitioning the
/// point aggregate, no two of its points sharing a line.
std::vector<Point> column_points(PrimeDim d, const BasisLabel& b);

std::vector<Line> all_lines(PrimeDim d);    // lexicographic (mddot, m0)
std::vector<Point> all_points(PrimeDim d);  // column major, CB column first

bool point_on_line(PrimeDim d, const Point& p, const Line& j);

struct AuditReport {
    std::vector<CheckRecord> checks;
    bool all_pass() const { return meanking::all_pass(checks); }
};

/// Exhaustive verification of the defining properties of the geometry:
/// counts, unique pairwise line intersection, unique line through any two
/// points of distinct columns, d lines per point, d+1 points per line,
/// disjoint columns, and full connectivity outside columns.
AuditReport audit_dapg(PrimeDim d);

/// Incidence dump: header line_mddot,line_m0,point_b,point_m and one row
/// per (line, point-on-line) incidence, b spelled dd0 for the CB column.
void write_incidence_csv(std::ostream& os, PrimeDim d);

}  // namespace meanking
