#include "meanking/geometry.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

namespace meanking {

ModInt line_row(PrimeDim d, const Line& j, const BasisLabel& b) {
    if (b.is_cb()) return j.mddot;
    const ModInt two(2, d), one(1, d);
    return j.m0 + mod_half(b.shift()) * (two * j.mddot - one);
}

std::vector<Point> line_points(PrimeDim d, const Line& j) {
    std::vector<Point> pts;
    pts.reserve(d.value() + 1);
    for (const BasisLabel& b : all_basis_labels(d)) pts.push_back(Point{line_row(d, j, b), b});
    return pts;
}

std::vector<Line> lines_through_point(PrimeDim d, const Point& p) {
    std::vector<Line> lines;
    lines.reserve(d.value());
    if (p.b.is_cb()) {
        for (std::uint32_t m0 = 0; m0 < d.value(); ++m0) lines.push_back(Line{p.m, ModInt(m0, d)});
        return lines;
    }
    const ModInt two(2, d), one(1, d);
    const ModInt half_b = mod_half(p.b.shift());
    for (std::uint32_t md = 0; md < d.value(); ++md) {
        const ModInt mddot(md, d);
        lines.push_back(Line{mddot, p.m - half_b * (two * mddot - one)});
    }
    return lines;
}

Point intersect_lines(PrimeDim d, const Line& j1, const Line& j2) {
    if (j1 == j2) throw std::invalid_argument("intersect_lines: lines are identical");
    if (j1.mddot == j2.mddot) return Point{j1.mddot, BasisLabel::cb()};
    const ModInt b = mod_div(j1.m0 - j2.m0, j2.mddot - j1.mddot);
    const BasisLabel col = BasisLabel::shifted(b);
    return Point{line_row(d, j1, col), col};
}

std::vector<Point> column_points(PrimeDim d, const BasisLabel& b) {
    std::vector<Point> pts;
    pts.reserve(d.value());
    for (std::uint32_t m = 0; m < d.value(); ++m) pts.push_back(Point{ModInt(m, d), b});
    return pts;
}

std::vector<Line> all_lines(PrimeDim d) {
    std::vector<Line> lines;
    lines.reserve(d.pair_dim());
    for (std::uint32_t md = 0; md < d.value(); ++md)
        for (std::uint32_t m0 = 0; m0 < d.value(); ++m0) lines.push_back(Line{ModInt(md, d), ModInt(m0, d)});
    return lines;
}

std::vector<Point> all_points(PrimeDim d) {
    std::vector<Point> pts;
    pts.reserve(std::size_t{d.value()} * (d.value() + 1));
    for (const BasisLabel& b : all_basis_labels(d)) {
        const std::vector<Point> col = column_points(d, b);
        pts.insert(pts.end(), col.begin(), col.end());
    }
    return pts;
}

bool point_on_line(PrimeDim d, const Point& p, const Line& j) { return line_row(d, j, p.b) == p.m; }

namespace {

// Stable integer key for set computations: CB column is 0, numeric column b
// is b+1.
std::size_t point_key(PrimeDim d, const Point& p) {
    const std::size_t col = p.b.is_cb() ? 0 : p.b.shift().value() + 1;
    return col * d.value() + p.m.value();
}

CheckRecord count_check(std::string name, std::size_t expected, std::size_t observed) {
    return CheckRecord{"geometry", std::move(name), std::to_string(expected), std::to_string(observed),
                       expected == observed};
}

}  // namespace

AuditReport audit_dapg(PrimeDim d) {
    const std::uint32_t n = d.value();
    const std::vector<Line> lines = all_lines(d);
    const std::vector<Point> points = all_points(d);
    AuditReport report;

    report.checks.push_back(count_check("line_count", std::size_t{n} * n, lines.size()));
    report.checks.push_back(count_check("point_count", std::size_t{n} * (n + 1), points.size()));

    // Incidence sets keyed by point, and per-line point sets, shared by the
    // remaining checks.
    std::vector<std::set<std::size_t>> line_point_sets;
    bool per_line_ok = true;
    for (const Line& j : lines) {
        const std::vector<Point> pts = line_points(d, j);
        std::set<std::size_t> keys;
        std::set<std::string> cols;
        for (const Point& p : pts) {
            keys.insert(point_key(d, p));
            cols.insert(p.b.to_string());
        }
        if (pts.size() != n + 1 || keys.size() != n + 1 || cols.size() != n + 1) per_line_ok = false;
        line_point_sets.push_back(std::move(keys));
    }
    report.checks.push_back(CheckRecord{"geometry", "points_per_line_one_per_column",
                                        std::to_string(n + 1) + " per line", per_line_ok ? "ok" : "violated",
                                        per_line_ok});

    bool per_point_ok = true;
    bool incidence_symmetric = true;
    for (const Point& p : points) {
        const std::vector<Line> through = lines_through_point(d, p);
        std::set<std::pair<std::uint32_t, std::uint32_t>> distinct;
        for (const Line& j : through) {
            distinct.insert({j.mddot.value(), j.m0.value()});
            if (!point_on_line(d, p, j)) incidence_symmetric = false;
        }
        if (through.size() != n || distinct.size() != n) per_point_ok = false;
        std::size_t containing = 0;
        for (std::size_t li = 0; li < lines.size(); ++li)
            if (line_point_sets[li].count(point_key(d, p))) ++containing;
        if (containing != n) per_point_ok = false;
    }
    report.checks.push_back(CheckRecord{"geometry", "lines_per_point", std::to_string(n) + " per point",
                                        per_point_ok ? "ok" : "violated", per_point_ok});
    report.checks.push_back(CheckRecord{"geometry", "incidence_symmetry", "consistent",
                                        incidence_symmetric ? "consistent" : "violated", incidence_symmetric});

    // Two distinct lines share exactly one point, and the closed-form
    // intersection agrees with brute-force set intersection.
    bool pair_ok = true;
    for (std::size_t a = 0; a < lines.size() && pair_ok; ++a) {
        for (std::size_t b = a + 1; b < lines.size(); ++b) {
            std::vector<std::size_t> shared;
            std::set_intersection(line_point_sets[a].begin(), line_point_sets[a].end(),
                                  line_point_sets[b].begin(), line_point_sets[b].end(),
                                  std::back_inserter(shared));
            const Point formula = intersect_lines(d, lines[a], lines[b]);
            if (shared.size() != 1 || shared[0] != point_key(d, formula)) {
                pair_ok = false;
                break;
            }
        }
    }
    report.checks.push_back(CheckRecord{"geometry", "unique_line_pair_intersection",
                                        "1 shared point per pair, matching formula",
                                        pair_ok ? "ok" : "violated", pair_ok});

    // Columns partition the points into d+1 disjoint size-d sets.
    std::set<std::size_t> seen;
    bool columns_ok = true;
    for (const BasisLabel& b : all_basis_labels(d)) {
        const std::vector<Point> col = column_points(d, b);
        if (col.size() != n) columns_ok = false;
        for (const Point& p : col)
            if (!seen.insert(point_key(d, p)).second) columns_ok = false;
    }
    if (seen.size() != points.size()) columns_ok = false;
    report.checks.push_back(CheckRecord{"geometry", "columns_partition_points",
                                        std::to_string(n + 1) + " disjoint sets of " + std::to_string(n),
                                        columns_ok ? "ok" : "violated", columns_ok});

    // Connectivity: same-column pairs share no line; distinct-column pairs
    // share exactly one.
    bool connect_ok = true;
    for (std::size_t a = 0; a < points.size() && connect_ok; ++a) {
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            std::size_t shared = 0;
            for (std::size_t li = 0; li < lines.size(); ++li)
                if (line_point_sets[li].count(point_key(d, points[a])) &&
                    line_point_sets[li].count(point_key(d, points[b])))
                    ++shared;
            const bool same_column = points[a].b == points[b].b;
            if (same_column ? shared != 0 : shared != 1) {
                connect_ok = false;
                break;
            }
        }
    }
    report.checks.push_back(CheckRecord{"geometry", "pairwise_connectivity",
                                        "0 shared lines within a column, 1 across columns",
                                        connect_ok ? "ok" : "violated", connect_ok});

    return report;
}

void write_incidence_csv(std::ostream& os, PrimeDim d) {
    os << "line_mddot,line_m0,point_b,point_m\n";
    for (const Line& j : all_lines(d))
        for (const Point& p : line_points(d, j))
            os << j.mddot.value() << ',' << j.m0.value() << ',' << p.b.to_string() << ',' << p.m.value()
               << '\n';
}

}  // namespace meanking
