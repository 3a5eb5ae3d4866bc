#pragma once
// The conic-bundle construction: from parameters (a_1..a_5, u) build the
// sextic F, solve for the unique binary quadratic pair (g,h) with
// det M = -F, assemble the symmetric matrix M, take the discriminant
// quartic of the induced double cover, split the six degenerate fibers
// into conjugate line pairs, and verify those lines are bitangents.

#include <array>
#include <vector>

#include "qlg/binform.hpp"
#include "qlg/errors.hpp"
#include "qlg/quadext.hpp"
#include "qlg/rational.hpp"
#include "qlg/ternform.hpp"

namespace qlg {

// symmetric 3x3 matrix of binary quadratic forms
struct SymMat3 {
    BinForm m11{2}, m12{2}, m13{2}, m22{2}, m23{2}, m33{2};

    const BinForm& at(int i, int j) const {
        static const int idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        const BinForm* entries[6] = {&m11, &m12, &m13, &m22, &m23, &m33};
        return *entries[idx[i][j]];
    }
};

// exact 3x3 determinant (degree 6)
inline BinForm det3(const SymMat3& m) {
    return m.m11 * (m.m22 * m.m33 - m.m23 * m.m23) -
           m.m12 * (m.m12 * m.m33 - m.m23 * m.m13) +
           m.m13 * (m.m12 * m.m23 - m.m22 * m.m13);
}

struct ConstructionInput {
    std::array<Rat, 5> a;
    Rat u;
    Rat a6; // a1 a2 a3 a4 a5 u^2
    Rat c;  // a1 a2 a3 a4 a5 u
};

inline ConstructionInput make_input(const std::array<Rat, 5>& a, const Rat& u) {
    ConstructionInput in;
    in.a = a;
    in.u = u;
    if (u == 0) throw PipelineError(FailureKind::kDegenerateParameters, "u = 0");
    Rat prod = 1;
    for (const Rat& ai : a) {
        if (ai == 0)
            throw PipelineError(FailureKind::kDegenerateParameters, "a_i = 0");
        prod *= ai;
    }
    in.c = prod * u;
    in.a6 = prod * u * u;
    std::array<Rat, 6> all{a[0], a[1], a[2], a[3], a[4], in.a6};
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (all[i] == all[j])
                throw PipelineError(FailureKind::kDegenerateParameters,
                                    "repeated root: a_" + std::to_string(i + 1) +
                                        " = a_" + std::to_string(j + 1) + " = " +
                                        to_string(all[i]));
    return in;
}

// F(S,T) = prod (a_i S - T), degree 6; F(1,0) = c^2 by construction.
inline BinForm build_F(const ConstructionInput& in) {
    BinForm f(0, {Rat(1)});
    std::array<Rat, 6> all{in.a[0], in.a[1], in.a[2], in.a[3], in.a[4], in.a6};
    for (const Rat& ai : all) {
        BinForm lin(1, {ai, Rat(-1)}); // a_i S - T
        f = f * lin;
    }
    return f;
}

// The unique pair of binary quadratic forms with det M(g,h) = -F and
// g(1,0) = c, via the closed-form coefficient solution; the trailing
// division must be exact, which encodes F(1,0) = c^2.
inline std::pair<BinForm, BinForm> solve_gh(const BinForm& f, const Rat& c) {
    if (f.deg != 6)
        throw std::invalid_argument("solve_gh: F must have degree 6");
    // F coefficients: f.c[k] multiplies S^(6-k) T^k
    Rat g0 = (-f.c[5] - 1) / 2;        // from the S T^5 match
    Rat g1 = (-f.c[4] + g0 * g0) / 2;  // from the S^2 T^4 match
    Rat g2 = c;
    BinForm g(2, {g2, g1, g0});

    // numerator N = S T^5 - (T^3 - g S)^2 + F must be divisible by S^3 T
    BinForm st5(6, {Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0)});
    BinForm t3(3, {Rat(0), Rat(0), Rat(0), Rat(1)});
    BinForm gs(3, {g.c[0], g.c[1], g.c[2], Rat(0)}); // g * S
    BinForm w = t3 - gs;
    BinForm n = st5 - w * w + f;
    // N = sum n_k S^(6-k) T^k; S^3 T | N iff n_0 = n_4 = n_5 = n_6 = 0
    for (int k : {0, 4, 5, 6})
        if (n.c[k] != 0)
            throw PipelineError(FailureKind::kInexactDivision,
                                "h division leaves remainder (is F(1,0) = c^2?)");
    BinForm h(2, {n.c[1], n.c[2], n.c[3]});
    return {g, h};
}

// M(S,T) = [ -ST+T^2  ST   g ]
//          [  ST      S^2  T^2 ]
//          [  g       T^2  h ]
inline SymMat3 assemble_M(const BinForm& g, const BinForm& h) {
    if (g.deg != 2 || h.deg != 2)
        throw std::invalid_argument("assemble_M: g, h must be quadratic");
    SymMat3 m;
    m.m11 = BinForm(2, {Rat(0), Rat(-1), Rat(1)});
    m.m12 = BinForm(2, {Rat(0), Rat(1), Rat(0)});
    m.m13 = g;
    m.m22 = BinForm(2, {Rat(1), Rat(0), Rat(0)});
    m.m23 = BinForm(2, {Rat(0), Rat(0), Rat(1)});
    m.m33 = h;
    return m;
}

// Write (X,Y,Z) M (X,Y,Z)^t = q0 S^2 + q1 S T + q2 T^2 with ternary
// quadratics q_i; the branch locus of the double cover is q1^2 - 4 q0 q2.
// Returned as the primitive integral representative (positive scaling).
inline TernForm discriminant_quartic(const SymMat3& m) {
    TernForm q[3] = {TernForm(2), TernForm(2), TernForm(2)};
    // diagonal entries contribute X_a^2, off-diagonal twice X_a X_b
    const int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    const BinForm* entries[6];
    entries[0] = &m.m11;
    entries[1] = &m.m12;
    entries[2] = &m.m13;
    entries[3] = &m.m22;
    entries[4] = &m.m23;
    entries[5] = &m.m33;
    for (int e = 0; e < 6; ++e) {
        int a = pairs[e][0], b = pairs[e][1];
        Rat mult = (a == b) ? 1 : 2;
        Mono3 mono{0, 0, 0};
        mono[a] += 1;
        mono[b] += 1;
        for (int k = 0; k <= 2; ++k) // S^(2-k) T^k coefficient of the entry
            q[k].add_term(mono, entries[e]->c[k] * mult);
    }
    TernForm quart = q[1] * q[1] - (q[0] * q[2]) * Rat(4);
    return primitive_integral(quart);
}

// One degenerate fiber S=1, T=a_i split into a conjugate pair of lines
// over Q(sqrt(delta)).
struct FiberSplit {
    int root_index = 0; // 1-based position among a_1..a_6
    Rat root;           // the value a_i
    Int delta;          // squarefree; the two lines live in Q(sqrt(delta))
    std::array<QuadExt, 3> line1, line2; // coefficients of X, Y, Z
    Rat lambda;         // line1 * line2 = lambda * fiber conic
};

// 3x3 rational symmetric matrix of the fiber, rank checks, kernel, and the
// conjugate line pair from the rank-2 restriction.
inline FiberSplit split_degenerate_fiber(const SymMat3& m, const Rat& root,
                                         int root_index) {
    std::array<std::array<Rat, 3>, 3> a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = m.at(i, j).eval(1, root);

    // rank via row echelon on a copy
    std::array<std::array<Rat, 3>, 3> e = a;
    int rank = 0;
    for (int col = 0; col < 3 && rank < 3; ++col) {
        int piv = -1;
        for (int r = rank; r < 3; ++r)
            if (e[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(e[rank], e[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == rank || e[r][col] == 0) continue;
            Rat f = e[r][col] / e[rank][col];
            for (int cc = 0; cc < 3; ++cc) e[r][cc] -= f * e[rank][cc];
        }
        ++rank;
    }
    if (rank != 2)
        throw PipelineError(FailureKind::kUnexpectedFiberRank,
                            "fiber at T = " + to_string(root) + " has rank " +
                                std::to_string(rank));

    // kernel vector, scaled to a primitive integer vector
    // solve a * v = 0 by elimination over the original matrix
    std::array<Rat, 3> v{};
    {
        // use the echelon form already computed: two pivot rows
        // identify pivot columns
        std::array<int, 2> pivcol{-1, -1};
        int pr = 0;
        for (int col = 0; col < 3 && pr < 2; ++col) {
            if (e[pr][col] != 0) pivcol[pr++] = col;
        }
        int freecol = 3 - pivcol[0] - pivcol[1]; // the non-pivot column
        v[freecol] = 1;
        // back-substitute
        for (int r = 1; r >= 0; --r) {
            Rat s = 0;
            for (int cc = pivcol[r] + 1; cc < 3; ++cc) s += e[r][cc] * v[cc];
            v[pivcol[r]] = -s / e[r][pivcol[r]];
        }
        Int den = 1;
        for (const Rat& x : v) den = lcm(den, x.get_den());
        Int num = 0;
        for (Rat& x : v) x *= den;
        for (const Rat& x : v) num = gcd(num, x.get_num());
        for (Rat& x : v) x /= Rat(abs(num));
    }
    int pivot = 0;
    while (v[pivot] == 0) ++pivot;
    int i0 = (pivot == 0) ? 1 : 0;
    int j0 = (pivot == 2) ? 1 : 2;

    // restriction to coordinates (i0, j0): alpha x^2 + beta x y + gamma y^2
    Rat alpha = a[i0][i0];
    Rat beta = 2 * a[i0][j0];
    Rat gamma = a[j0][j0];
    Rat disc = beta * beta - 4 * alpha * gamma;
    if (disc == 0)
        throw PipelineError(FailureKind::kUnexpectedFiberRank,
                            "restricted binary form degenerate");
    Int delta = squarefree_part(disc);
    if (delta == 1)
        throw PipelineError(FailureKind::kRationalLines,
                            "fiber at T = " + to_string(root) +
                                " splits into rational lines");
    Rat w = sqrt_rat(disc / Rat(delta)); // disc = delta * w^2

    // alpha x^2 + beta x y + gamma y^2 = (1/(4 alpha)) (2a x + (b - s) y)(2a x + (b + s) y)
    // with s = w sqrt(delta); alpha != 0 since delta != 1 forced disc != beta^2
    QuadExt s(delta, 0, w);
    QuadExt two_alpha = QuadExt::rational(delta, 2 * alpha);
    QuadExt bm = QuadExt(delta, beta, 0) - s;
    QuadExt bp = QuadExt(delta, beta, 0) + s;

    // x = X_{i0} - (v_{i0}/v_pivot) X_pivot, y = X_{j0} - (v_{j0}/v_pivot) X_pivot
    FiberSplit fs;
    fs.root_index = root_index;
    fs.root = root;
    fs.delta = delta;
    fs.lambda = 4 * alpha;
    auto line = [&](const QuadExt& cx, const QuadExt& cy) {
        std::array<QuadExt, 3> l{QuadExt::rational(delta, 0),
                                 QuadExt::rational(delta, 0),
                                 QuadExt::rational(delta, 0)};
        l[i0] = l[i0] + cx;
        l[j0] = l[j0] + cy;
        Rat corr_x = v[i0] / v[pivot], corr_y = v[j0] / v[pivot];
        l[pivot] = l[pivot] - (cx * corr_x + cy * corr_y);
        return l;
    };
    fs.line1 = line(two_alpha, bm);
    fs.line2 = line(two_alpha, bp);
    return fs;
}

// A line is a bitangent of the quartic f iff the restriction of f to the
// line is a nonzero constant times the square of a binary quadratic form.
inline bool verify_bitangent(const TernForm& f, const std::array<QuadExt, 3>& line) {
    if (f.deg != 4) throw std::invalid_argument("verify_bitangent: need a quartic");
    const Int& delta = line[0].delta;
    int pivot = -1;
    for (int i = 0; i < 3; ++i)
        if (!line[i].is_zero()) { pivot = i; break; }
    if (pivot < 0) throw std::invalid_argument("verify_bitangent: zero line");

    // parametrize: for the two non-pivot coordinates j, the point
    // P_j = unit_j - (c_j / c_pivot) unit_pivot lies on the line
    std::array<std::array<QuadExt, 3>, 2> pts;
    int slot = 0;
    for (int j = 0; j < 3; ++j) {
        if (j == pivot) continue;
        std::array<QuadExt, 3> p{QuadExt::rational(delta, 0),
                                 QuadExt::rational(delta, 0),
                                 QuadExt::rational(delta, 0)};
        p[j] = QuadExt::rational(delta, 1);
        p[pivot] = p[pivot] - line[j] / line[pivot];
        pts[slot++] = p;
    }

    // restriction b(U,V) = f(U P0 + V P1): binary quartic over Q(sqrt(delta))
    // build the three coordinate linear forms as degree-1 polys in U (V=1
    // homogeneous bookkeeping: use pairs (U-coeff, V-coeff) and convolve)
    std::array<std::array<QuadExt, 2>, 3> coord;
    for (int i = 0; i < 3; ++i) coord[i] = {pts[0][i], pts[1][i]};

    // b has degree 4: coefficients of U^(4-k) V^k
    std::vector<QuadExt> b(5, QuadExt::rational(delta, 0));
    for (const auto& [mono, cf] : f.terms) {
        // expand coord[0]^i coord[1]^j coord[2]^k as binary polys
        std::vector<QuadExt> acc{QuadExt::rational(delta, cf)};
        for (int var = 0; var < 3; ++var) {
            for (int rep = 0; rep < mono[var]; ++rep) {
                std::vector<QuadExt> next(acc.size() + 1,
                                          QuadExt::rational(delta, 0));
                for (std::size_t t = 0; t < acc.size(); ++t) {
                    next[t] = next[t] + acc[t] * coord[var][0];
                    next[t + 1] = next[t + 1] + acc[t] * coord[var][1];
                }
                acc = std::move(next);
            }
        }
        for (std::size_t t = 0; t < acc.size(); ++t) b[t] = b[t] + acc[t];
    }

    QuadExtPoly bp(delta);
    bp.c = b;
    if (bp.is_zero())
        throw PipelineError(FailureKind::kLineOnCurve,
                            "line lies on the quartic");
    return is_constant_times_square(bp);
}

} // namespace qlg
