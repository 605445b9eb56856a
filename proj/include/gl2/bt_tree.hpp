#pragma once

#include <gl2/numtheory.hpp>
#include <gl2/rational.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gl2 {

/**
 * The (q+1)-regular tree attached to the local group at an odd prime p,
 * truncated to a ball of the given radius around the base vertex.  Every
 * operation checks that the radius it actually needs is available and
 * refuses to return silently truncated answers.
 */
struct TreeContext {
    long p = 3;
    int radius = 4;
};

struct RationalMatrix {
    Rational a, b, c, d;

    Rational det() const { return a * d - b * c; }
    Rational trace() const { return a + d; }

    RationalMatrix operator*(const RationalMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    RationalMatrix inverse() const {
        Rational dt = det();
        if (dt == 0) throw std::invalid_argument("matrix is singular");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    static RationalMatrix identity() { return {1, 0, 0, 1}; }
    static RationalMatrix diagonal(const Rational& t1, const Rational& t2) {
        return {t1, 0, 0, t2};
    }
    static RationalMatrix upper_unipotent(const Rational& x) { return {1, x, 0, 1}; }

    friend bool operator==(const RationalMatrix& l, const RationalMatrix& r) {
        return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d;
    }
};

/** Smallest valuation among the four entries (+infinity for the zero matrix). */
inline Valuation matrix_min_valuation(const RationalMatrix& m, long p) {
    Valuation v = vp(m.a, p);
    v = std::min(v, vp(m.b, p));
    v = std::min(v, vp(m.c, p));
    return std::min(v, vp(m.d, p));
}

/**
 * Vertex w_{a,s}: the class of the lattice with basis {e1, a e1 + p^s e2}.
 * Canonical form keeps a as the representative of its class mod p-integral
 * rationals: either 0, or m / p^k with 0 < m < p^k and p dividing neither.
 */
struct TreeVertex {
    Rational a;
    long s = 0;

    friend bool operator==(const TreeVertex& u, const TreeVertex& w) {
        return u.s == w.s && u.a == w.a;
    }
    friend bool operator!=(const TreeVertex& u, const TreeVertex& w) { return !(u == w); }
    friend bool operator<(const TreeVertex& u, const TreeVertex& w) {
        if (u.s != w.s) return u.s < w.s;
        return u.a < w.a;
    }
};

inline TreeVertex base_vertex() { return TreeVertex{0, 0}; }

/** Reduce a mod p-integral rationals and return the canonical vertex. */
inline TreeVertex canonical_vertex(long p, const Rational& a, long s) {
    Valuation v = vp(a, p);
    if (v.is_infinite() || v.finite() >= 0) return TreeVertex{0, s};
    long k = -v.finite();
    Integer pk = integer_pow(p, static_cast<unsigned long>(k));
    Integer d0 = den(a) / pk;
    long mod = to_int64(pk);
    long n_red = to_int64(((num(a) % mod) + mod) % mod);
    long d_red = to_int64(((d0 % mod) + mod) % mod);
    long m = to_int64(Integer(n_red) * mod_inverse(d_red, mod) % mod);
    return TreeVertex{Rational(Integer(m), pk), s};
}

/** Column basis of the vertex lattice: (e1 | a e1 + p^s e2). */
inline RationalMatrix vertex_basis(const TreeVertex& w, long p) {
    return {1, w.a, 0, rational_pow(p, w.s)};
}

/** Canonical vertex of the lattice spanned by the columns of M. */
inline TreeVertex vertex_from_lattice(RationalMatrix M, long p) {
    if (M.det() == 0) throw std::invalid_argument("columns do not span a lattice");
    if (vp(M.c, p) < vp(M.d, p)) {
        std::swap(M.a, M.b);
        std::swap(M.c, M.d);
    }
    Rational lam = M.c / M.d;
    M.a -= lam * M.b;
    Rational A = M.b / M.a, B = M.d / M.a;
    long s = vp(B, p).finite();
    return canonical_vertex(p, A * rational_pow(p, s) / B, s);
}

inline long tree_distance(const TreeVertex& u, const TreeVertex& w, long p) {
    RationalMatrix T = vertex_basis(u, p).inverse() * vertex_basis(w, p);
    return vp(T.det(), p).finite() - 2 * matrix_min_valuation(T, p).finite();
}

inline void validate_context(const TreeContext& ctx) {
    if (ctx.p < 3 || ctx.p % 2 == 0 || !is_prime(ctx.p))
        throw std::invalid_argument("tree prime must be odd");
    if (ctx.radius < 1) throw std::invalid_argument("radius must be positive");
}

/** The p+1 vertices at distance 1, via the index-p sublattice moves. */
inline std::vector<TreeVertex> neighbors(const TreeVertex& w, const TreeContext& ctx) {
    validate_context(ctx);
    if (tree_distance(w, base_vertex(), ctx.p) > ctx.radius - 1)
        throw std::out_of_range("vertex lies on the truncation boundary");
    RationalMatrix B = vertex_basis(w, ctx.p);
    std::vector<TreeVertex> out;
    out.push_back(vertex_from_lattice(B * RationalMatrix{ctx.p, 0, 0, 1}, ctx.p));
    for (long j = 0; j < ctx.p; ++j)
        out.push_back(vertex_from_lattice(B * RationalMatrix{1, 0, j, ctx.p}, ctx.p));
    std::sort(out.begin(), out.end());
    return out;
}

struct ApartmentPosition {
    long distance = 0;
    TreeVertex projection;
};

/** Distance to the standard apartment {w_{0,m}} and the closest such vertex. */
inline ApartmentPosition standard_apartment_position(const TreeVertex& w, long p) {
    if (w.a == 0) return {0, w};
    long va = vp(w.a, p).finite();
    return {-va, TreeVertex{0, w.s - va}};
}

/** Whether g stabilizes the vertex lattice up to a central scalar. */
inline bool fixes_vertex(const RationalMatrix& g, const TreeVertex& w, long p) {
    RationalMatrix h = vertex_basis(w, p);
    RationalMatrix m = h.inverse() * g * h;
    long dv = vp(m.det(), p).finite();
    if (dv % 2 != 0) return false;
    return matrix_min_valuation(m, p) >= Valuation::of(dv / 2);
}

/** Membership of g in the center times the level-p^r congruence subgroup. */
inline bool in_z_gamma0(const RationalMatrix& g, int r, long p) {
    if (g.det() == 0) return false;
    long dv = vp(g.det(), p).finite();
    if (dv % 2 != 0) return false;
    Valuation shift = Valuation::of(dv / 2);
    return vp(g.a, p) >= shift && vp(g.b, p) >= shift && vp(g.d, p) >= shift &&
           vp(g.c, p) >= shift + Valuation::of(r);
}

inline Rational gamma0_volume(long p, int r) {
    if (r < 0) throw std::invalid_argument("level must be nonnegative");
    if (r == 0) return 1;
    return Rational(Integer(1), integer_pow(p, static_cast<unsigned long>(r - 1)) * (p + 1));
}

namespace detail {

/** Shared per-query caches for fixed-point searches on the truncated tree. */
struct FixedSearch {
    const RationalMatrix& g;
    TreeContext ctx;
    std::map<TreeVertex, std::vector<TreeVertex>> nbrs;
    std::map<TreeVertex, bool> fixed;

    FixedSearch(const RationalMatrix& gg, const TreeContext& c) : g(gg), ctx(c) {
        validate_context(ctx);
        if (gg.det() == 0) throw std::invalid_argument("group element must be invertible");
    }

    const std::vector<TreeVertex>& neighbors_of(const TreeVertex& w) {
        auto it = nbrs.find(w);
        if (it == nbrs.end()) it = nbrs.emplace(w, neighbors(w, ctx)).first;
        return it->second;
    }
    bool is_fixed(const TreeVertex& w) {
        auto it = fixed.find(w);
        if (it == fixed.end()) it = fixed.emplace(w, fixes_vertex(g, w, ctx.p)).first;
        return it->second;
    }

    /** Ordered non-backtracking fixed paths of length r starting at `from`. */
    long ordered_paths_from(const TreeVertex& from, int r) {
        if (!is_fixed(from)) return 0;
        if (r == 0) return 1;
        long total = 0;
        std::vector<std::pair<TreeVertex, TreeVertex>> stack;
        for (const TreeVertex& n : neighbors_of(from))
            if (is_fixed(n)) {
                if (r == 1)
                    ++total;
                else
                    stack.emplace_back(from, n);
            }
        for (int depth = 2; depth <= r && !stack.empty(); ++depth) {
            std::vector<std::pair<TreeVertex, TreeVertex>> next;
            for (const auto& [prev, cur] : stack)
                for (const TreeVertex& n : neighbors_of(cur))
                    if (n != prev && is_fixed(n)) {
                        if (depth == r)
                            ++total;
                        else
                            next.emplace_back(cur, n);
                    }
            stack = std::move(next);
        }
        return total;
    }
};

inline long long_pow(long base, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

/** x p^{-vp(x)} reduced mod m, for x a p-unit numerator/denominator pair. */
inline long unit_residue(const Rational& x, long p, long m) {
    long v = vp(x, p).finite();
    Rational u = x * rational_pow(p, -v);
    long n = to_int64(((num(u) % m) + m) % m);
    long d = to_int64(((den(u) % m) + m) % m);
    return to_int64(Integer(n) * mod_inverse(d, m) % m);
}

}  // namespace detail

/**
 * All vertices fixed by g, certified complete: the search proves the fixed
 * set is finite and strictly inside the context ball, and throws otherwise.
 */
inline std::vector<TreeVertex> fixed_vertices(const RationalMatrix& g, const TreeContext& ctx) {
    detail::FixedSearch search(g, ctx);
    long dv = vp(g.det(), ctx.p).finite();
    if (dv % 2 != 0) return {};
    if (vp(g.trace(), ctx.p) < Valuation::of(dv / 2)) return {};

    std::vector<TreeVertex> out;
    bool boundary_fixed = false;
    std::map<TreeVertex, int> dist{{base_vertex(), 0}};
    std::vector<TreeVertex> shell{base_vertex()};
    for (int d = 0; d <= ctx.radius; ++d) {
        std::vector<TreeVertex> next;
        for (const TreeVertex& w : shell) {
            if (search.is_fixed(w)) {
                if (d == ctx.radius) boundary_fixed = true;
                out.push_back(w);
            }
            if (d < ctx.radius)
                for (const TreeVertex& n : search.neighbors_of(w))
                    if (dist.emplace(n, d + 1).second) next.push_back(n);
        }
        shell = std::move(next);
    }
    if (out.empty())
        throw std::runtime_error("radius insufficient: the fixed set lies outside the ball");
    if (boundary_fixed)
        throw std::runtime_error("radius insufficient: the fixed set touches the boundary");
    std::sort(out.begin(), out.end());
    return out;
}

/**
 * Number of r-step geodesic vertex sets inside the fixed set of g (single
 * vertices for r = 0).  The fixed set itself must be certifiably finite.
 */
inline long fixed_segment_count(const RationalMatrix& g, int r, const TreeContext& ctx) {
    if (r < 0) throw std::invalid_argument("segment length must be nonnegative");
    std::vector<TreeVertex> F = fixed_vertices(g, ctx);
    if (r == 0) return static_cast<long>(F.size());
    detail::FixedSearch search(g, ctx);
    long ordered = 0;
    for (const TreeVertex& w : F) ordered += search.ordered_paths_from(w, r);
    return ordered / 2;
}

/**
 * Number of r-step fixed paths starting at the anchor, counted with their
 * orientation.  This is the count that enters volume computations.
 */
inline long anchored_fixed_segment_count(const RationalMatrix& g, int r,
                                         const TreeVertex& anchor, const TreeContext& ctx) {
    if (r < 0) throw std::invalid_argument("segment length must be nonnegative");
    detail::FixedSearch search(g, ctx);
    long slack = tree_distance(anchor, base_vertex(), ctx.p);
    if (ctx.radius < slack + r)
        throw std::runtime_error("radius insufficient: need anchor distance plus length");
    return search.ordered_paths_from(anchor, r);
}

/** Exact central constant term at level p^r. */
inline Rational constant_term_central(long p, int r) {
    if (r < 0) throw std::invalid_argument("level must be nonnegative");
    Rational qk = rational_pow(p, -(r / 2));
    if (r % 2 == 0) return qk;
    return Rational(2, p + 1) * qk;
}

/**
 * The same value assembled from tree counts: unipotent directions of each
 * depth weighted by their measure, with the fixed-path counts taken from an
 * honest search rather than a formula.
 */
inline Rational constant_term_central_shell(long p, int r) {
    if (r < 0) throw std::invalid_argument("level must be nonnegative");
    Rational total = rational_pow(p, -r);
    if (r == 0) return total;
    TreeContext ctx{p, r};
    Rational volume = gamma0_volume(p, r);
    for (int j = 0; j < r; ++j) {
        RationalMatrix n = RationalMatrix::upper_unipotent(rational_pow(p, j));
        long count = anchored_fixed_segment_count(n, r, base_vertex(), ctx);
        total += volume * (p - 1) * rational_pow(p, -j - 1) * count;
    }
    return total;
}

struct DiagonalConstantTerm {
    Rational value;
    Rational bound;
    bool within_bound = false;
};

/**
 * Constant term of the level indicator against a regular diagonal unit
 * element, by exact integration over first columns mod p^{r+1}, together
 * with the proven upper bound for that regime.
 */
inline DiagonalConstantTerm constant_term_diagonal(const Rational& t1, const Rational& t2,
                                                   int r, long p) {
    if (r < 0) throw std::invalid_argument("level must be nonnegative");
    if (!is_prime(p) || p % 2 == 0) throw std::invalid_argument("p must be an odd prime");
    if (t1 == t2) throw std::invalid_argument("diagonal entries must be distinct");
    if (!(vp(t1, p) == Valuation::of(0)) || !(vp(t2, p) == Valuation::of(0)))
        throw std::invalid_argument("diagonal entries must be units");

    long v = vp(t1 - t2, p).finite();
    double cells = std::pow(static_cast<double>(p), 3.0 * (r + 1));
    if (cells > 2e7)
        throw std::length_error("coset oracle too large; use the segment method instead");

    long M = detail::long_pow(p, r + 1);
    long pr = detail::long_pow(p, r);
    long T1 = detail::unit_residue(t1, p, M);
    long T2 = detail::unit_residue(t2, p, M);
    long diff = ((T2 - T1) % M + M) % M;

    long hits = 0;
    for (long b = 0; b < M; ++b)
        for (long x = 0; x < M; ++x) {
            long lin = diff * x % M;
            for (long y = 0; y < M; ++y) {
                if (x % p == 0 && y % p == 0) continue;
                long e = y * ((lin + M - T1 * b % M * y % M) % M) % M;
                if (e % pr == 0) ++hits;
            }
        }
    long Mp = M / p;
    Integer primitive = Integer(M) * M - Integer(Mp) * Mp;
    Rational value = Rational(Integer(hits), primitive * M);

    Rational bound = (r <= v) ? Rational(1)
                              : 2 * rational_pow(p, v) * gamma0_volume(p, r);
    return {value, bound, value <= bound};
}

/**
 * Orbital integral of the level indicator against diag(t1, t2), assembled
 * from vertex-segment counts on the tree.  Independent of the coset oracle.
 */
inline Rational diagonal_orbital_integral_tree(const Rational& t1, const Rational& t2, int r,
                                               const TreeContext& ctx) {
    if (r < 0) throw std::invalid_argument("level must be nonnegative");
    if (t1 == t2) throw std::invalid_argument("diagonal entries must be distinct");
    long p = ctx.p;
    if (!(vp(t1, p) == Valuation::of(0)) || !(vp(t2, p) == Valuation::of(0)))
        throw std::invalid_argument("diagonal entries must be units");
    long v = vp(t1 - t2, p).finite();
    RationalMatrix t = RationalMatrix::diagonal(t1, t2);
    Rational total = 0;
    for (long d = 0; d <= v; ++d) {
        TreeVertex anchor =
            d == 0 ? base_vertex() : canonical_vertex(p, rational_pow(p, -d), 0);
        long count = anchored_fixed_segment_count(t, r, anchor, ctx);
        Rational weight = d == 0 ? Rational(1)
                                 : Rational(p - 1) * rational_pow(p, d - 1);
        total += weight * count;
    }
    return gamma0_volume(p, r) * total;
}

/** Whether g generates a quadratic field extension (no rational eigenvalues). */
inline bool is_elliptic(const RationalMatrix& g, long p) {
    Rational disc = g.trace() * g.trace() - 4 * g.det();
    if (disc == 0) return false;
    long v = vp(disc, p).finite();
    if (v % 2 != 0) return true;
    return legendre(detail::unit_residue(disc, p, p), p) == -1;
}

/**
 * Orbital integral of the level-p^r indicator against a regular semisimple
 * g.  Elliptic classes go through certified fixed-segment counts; split
 * classes with unit eigenvalues go through the diagonal constant term.
 */
inline Rational orbital_integral_gamma0(const RationalMatrix& g, int r, const TreeContext& ctx) {
    if (r < 0) throw std::invalid_argument("level must be nonnegative");
    long p = ctx.p;
    if (g.det() == 0) throw std::invalid_argument("group element must be invertible");
    if (g.b == 0 && g.c == 0 && g.a == g.d)
        throw std::invalid_argument("central elements have no finite orbital integral");
    Rational disc = g.trace() * g.trace() - 4 * g.det();
    if (disc == 0) throw std::invalid_argument("element is not semisimple");

    if (is_elliptic(g, p)) {
        long ordered = r == 0 ? static_cast<long>(fixed_vertices(g, ctx).size())
                              : 2 * fixed_segment_count(g, r, ctx);
        return gamma0_volume(p, r) * ordered;
    }

    Rational t1, t2;
    if (g.b == 0 && g.c == 0) {
        t1 = g.a;
        t2 = g.d;
    } else {
        Integer n = num(disc), d = den(disc);
        Integer sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
        if (sn * sn != n || sd * sd != d)
            throw std::invalid_argument("split class needs a rational diagonal representative");
        Rational root(sn, sd);
        t1 = (g.trace() + root) / 2;
        t2 = (g.trace() - root) / 2;
    }
    Valuation v1 = vp(t1, p), v2 = vp(t2, p);
    if (!(v1 == v2))
        throw std::invalid_argument("eigenvalue valuations differ; class is not tempered-relevant");
    Rational scale = rational_pow(p, -v1.finite());
    t1 *= scale;
    t2 *= scale;
    long v = vp(t1 - t2, p).finite();
    return rational_pow(p, v) * constant_term_diagonal(t1, t2, r, p).value;
}

/** Whether the listed vertices form a geodesic path in order. */
inline bool is_segment(const std::vector<TreeVertex>& verts, long p) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (tree_distance(verts[i], verts[j], p) != static_cast<long>(j - i)) return false;
    return true;
}

}  // namespace gl2
