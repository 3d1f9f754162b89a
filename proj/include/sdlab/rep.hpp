#pragma once

// Explicit quiver representations over Q: Hom spaces, Ext^1, BGP reflection
// functors, the Auslander-Reiten translate and monomorphism tests.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "quiver.hpp"
#include "rational.hpp"

namespace sdlab {

struct Representation {
    Quiver quiver;
    IntVector dims;
    std::vector<RatMatrix> maps; // per arrow, (dim target) x (dim source)

    Representation() = default;
    Representation(Quiver q, IntVector d, std::vector<RatMatrix> m)
        : quiver(std::move(q)), dims(std::move(d)), maps(std::move(m)) {
        validate();
    }

    void validate() const {
        const auto& arrows = quiver.arrows();
        if (dims.size() != static_cast<std::size_t>(quiver.vertex_count()) || maps.size() != arrows.size())
            throw DimensionMismatch("representation does not match its quiver");
        for (std::size_t a = 0; a < arrows.size(); ++a)
            if (maps[a].rows() != static_cast<std::size_t>(dims[arrows[a].target]) ||
                maps[a].cols() != static_cast<std::size_t>(dims[arrows[a].source]))
                throw DimensionMismatch("arrow map has the wrong shape");
    }

    std::int64_t total_dim() const {
        std::int64_t s = 0;
        for (auto d : dims) s += d;
        return s;
    }
    bool is_zero() const { return total_dim() == 0; }
};

// Simple at vertex v.
inline Representation simple_rep(const Quiver& q, int v) {
    IntVector d(q.vertex_count(), 0);
    d[v] = 1;
    std::vector<RatMatrix> maps;
    for (const auto& a : q.arrows()) maps.emplace_back(d[a.target], d[a.source]);
    return Representation(q, d, std::move(maps));
}

namespace detail {

// All paths starting at `from`, each recorded as its list of arrow indices.
inline std::vector<std::vector<int>> paths_from(const Quiver& q, int from) {
    std::vector<std::vector<int>> out{{}};
    std::vector<int> ends{from};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t a = 0; a < q.arrows().size(); ++a)
            if (q.arrows()[a].source == ends[i]) {
                auto p = out[i];
                p.push_back(static_cast<int>(a));
                out.push_back(std::move(p));
                ends.push_back(q.arrows()[a].target);
            }
    return out;
}

inline int path_end(const Quiver& q, int start, const std::vector<int>& p) {
    return p.empty() ? start : q.arrows()[p.back()].target;
}

} // namespace detail

// P_i = e_i(kQ): basis of P_i(j) is the set of paths i -> j.
inline Representation projective_rep(const Quiver& q, int i) {
    const int n = q.vertex_count();
    const auto paths = detail::paths_from(q, i);
    std::vector<std::vector<std::size_t>> at(n); // indices into `paths` per vertex
    for (std::size_t p = 0; p < paths.size(); ++p) at[detail::path_end(q, i, paths[p])].push_back(p);
    IntVector dims(n);
    for (int v = 0; v < n; ++v) dims[v] = static_cast<std::int64_t>(at[v].size());

    std::vector<RatMatrix> maps;
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        const auto& arr = q.arrows()[a];
        RatMatrix m(dims[arr.target], dims[arr.source]);
        for (std::size_t c = 0; c < at[arr.source].size(); ++c) {
            auto ext = paths[at[arr.source][c]];
            ext.push_back(static_cast<int>(a));
            for (std::size_t r = 0; r < at[arr.target].size(); ++r)
                if (paths[at[arr.target][r]] == ext) m(r, c) = 1;
        }
        maps.push_back(std::move(m));
    }
    return Representation(q, dims, std::move(maps));
}

// I_i = D(kQ e_i): basis of I_i(j) is dual to the set of paths j -> i.
inline Representation injective_rep(const Quiver& q, int i) {
    const int n = q.vertex_count();
    std::vector<std::vector<std::vector<int>>> into(n); // into[j] = paths j -> i
    for (int j = 0; j < n; ++j)
        for (auto& p : detail::paths_from(q, j))
            if (detail::path_end(q, j, p) == i) into[j].push_back(std::move(p));
    IntVector dims(n);
    for (int v = 0; v < n; ++v) dims[v] = static_cast<std::int64_t>(into[v].size());

    std::vector<RatMatrix> maps;
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        const auto& arr = q.arrows()[a];
        RatMatrix m(dims[arr.target], dims[arr.source]);
        // p* at s maps to q* at t when p = a q.
        for (std::size_t c = 0; c < into[arr.source].size(); ++c) {
            const auto& p = into[arr.source][c];
            if (p.empty() || p.front() != static_cast<int>(a)) continue;
            std::vector<int> rest(p.begin() + 1, p.end());
            for (std::size_t r = 0; r < into[arr.target].size(); ++r)
                if (into[arr.target][r] == rest) m(r, c) = 1;
        }
        maps.push_back(std::move(m));
    }
    return Representation(q, dims, std::move(maps));
}

struct HomSpace {
    int dim = 0;
    std::vector<std::vector<RatMatrix>> basis; // basis[k][v]: (dim N_v) x (dim M_v)
};

inline HomSpace hom_space(const Representation& m, const Representation& n) {
    if (!(m.quiver == n.quiver)) throw QuiverMismatch("hom_space: representations live on different quivers");
    const Quiver& q = m.quiver;
    const int nv = q.vertex_count();

    std::vector<std::size_t> offset(nv + 1, 0);
    for (int v = 0; v < nv; ++v) offset[v + 1] = offset[v] + static_cast<std::size_t>(n.dims[v] * m.dims[v]);
    const std::size_t unknowns = offset[nv];

    HomSpace out;
    if (unknowns == 0) return out;

    std::size_t eqs = 0;
    for (const auto& a : q.arrows()) eqs += static_cast<std::size_t>(n.dims[a.target] * m.dims[a.source]);

    // phi_v(r, c) lives at offset[v] + r * dim M_v + c.
    RatMatrix sys(eqs, unknowns);
    std::size_t row = 0;
    for (std::size_t ai = 0; ai < q.arrows().size(); ++ai) {
        const auto& a = q.arrows()[ai];
        const auto s = a.source, t = a.target;
        const RatMatrix& na = n.maps[ai];
        const RatMatrix& ma = m.maps[ai];
        for (std::int64_t i = 0; i < n.dims[t]; ++i)
            for (std::int64_t j = 0; j < m.dims[s]; ++j, ++row) {
                // (N_a phi_s)(i,j) - (phi_t M_a)(i,j) = 0
                for (std::int64_t k = 0; k < n.dims[s]; ++k)
                    if (sgn(na(i, k)) != 0) sys(row, offset[s] + k * m.dims[s] + j) += na(i, k);
                for (std::int64_t l = 0; l < m.dims[t]; ++l)
                    if (sgn(ma(l, j)) != 0) sys(row, offset[t] + i * m.dims[t] + l) -= ma(l, j);
            }
    }

    const RatMatrix null = nullspace(std::move(sys));
    out.dim = static_cast<int>(null.cols());
    for (std::size_t k = 0; k < null.cols(); ++k) {
        std::vector<RatMatrix> phi;
        for (int v = 0; v < nv; ++v) {
            RatMatrix p(n.dims[v], m.dims[v]);
            for (std::int64_t r = 0; r < n.dims[v]; ++r)
                for (std::int64_t c = 0; c < m.dims[v]; ++c) p(r, c) = null(offset[v] + r * m.dims[v] + c, k);
            phi.push_back(std::move(p));
        }
        out.basis.push_back(std::move(phi));
    }
    return out;
}

inline int hom_dim(const Representation& m, const Representation& n) { return hom_space(m, n).dim; }

// Path algebras are hereditary, so dim Ext^1 = dim Hom - <dim M, dim N>.
inline int ext1_dim(const Representation& m, const Representation& n) {
    return static_cast<int>(hom_dim(m, n) - euler_form(m.quiver, m.dims, n.dims));
}

inline bool is_brick(const Representation& m) { return hom_dim(m, m) == 1; }

namespace detail {

// Representation over a reoriented copy of the quiver: arrows keep their
// index, `flipped[a]` records whether arrow a currently points backwards.
struct Oriented {
    std::vector<Arrow> arrows;
    IntVector dims;
    std::vector<RatMatrix> maps;
};

inline Oriented orient(const Representation& r) { return {r.quiver.arrows(), r.dims, r.maps}; }

// BGP reflection at a sink k: replace M_k by ker(sum of incoming maps).
inline void reflect_at_sink(Oriented& rep, int k) {
    std::vector<std::size_t> in;
    std::int64_t total = 0;
    for (std::size_t a = 0; a < rep.arrows.size(); ++a)
        if (rep.arrows[a].target == k) {
            in.push_back(a);
            total += rep.dims[rep.arrows[a].source];
        }
    RatMatrix h(rep.dims[k], total);
    std::int64_t col = 0;
    for (auto a : in) {
        const auto& m = rep.maps[a];
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) h(r, col + c) = m(r, c);
        col += static_cast<std::int64_t>(m.cols());
    }
    const RatMatrix ker = nullspace(h); // total x dimK
    const auto dim_k = static_cast<std::int64_t>(ker.cols());
    std::int64_t row = 0;
    for (auto a : in) {
        const int src = rep.arrows[a].source;
        RatMatrix proj(rep.dims[src], dim_k);
        for (std::int64_t r = 0; r < rep.dims[src]; ++r)
            for (std::int64_t c = 0; c < dim_k; ++c) proj(r, c) = ker(row + r, c);
        row += rep.dims[src];
        rep.maps[a] = std::move(proj);
        std::swap(rep.arrows[a].source, rep.arrows[a].target);
    }
    rep.dims[k] = dim_k;
}

// BGP reflection at a source k: replace M_k by coker(stack of outgoing maps).
inline void reflect_at_source(Oriented& rep, int k) {
    std::vector<std::size_t> out;
    std::int64_t total = 0;
    for (std::size_t a = 0; a < rep.arrows.size(); ++a)
        if (rep.arrows[a].source == k) {
            out.push_back(a);
            total += rep.dims[rep.arrows[a].target];
        }
    RatMatrix g(total, rep.dims[k]);
    std::int64_t row = 0;
    for (auto a : out) {
        const auto& m = rep.maps[a];
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) g(row + r, c) = m(r, c);
        row += static_cast<std::int64_t>(m.rows());
    }
    // Rows of the cokernel projection span the left null space of g.
    const RatMatrix left = nullspace(g.transpose()); // total x dimC
    const auto dim_c = static_cast<std::int64_t>(left.cols());
    std::int64_t col = 0;
    for (auto a : out) {
        const int tgt = rep.arrows[a].target;
        RatMatrix proj(dim_c, rep.dims[tgt]);
        for (std::int64_t r = 0; r < dim_c; ++r)
            for (std::int64_t c = 0; c < rep.dims[tgt]; ++c) proj(r, c) = left(col + c, r);
        col += rep.dims[tgt];
        rep.maps[a] = std::move(proj);
        std::swap(rep.arrows[a].source, rep.arrows[a].target);
    }
    rep.dims[k] = dim_c;
}

} // namespace detail

enum class TranslateDirection { forward, inverse };

// Auslander-Reiten translate via the Coxeter functors C+ = tau, C- = tau^{-1}:
// reflect at sinks in reverse topological order (resp. sources in order).
// Returns nullopt on the AR boundary (tau of a projective, tau^{-1} of an injective).
namespace detail {

// The translate without the brick check; callers vouch for indecomposability.
inline std::optional<Representation> coxeter_functor(const Representation& m, TranslateDirection dir) {
    auto rep = orient(m);
    const auto& order = m.quiver.topological_order();
    if (dir == TranslateDirection::forward)
        for (auto it = order.rbegin(); it != order.rend(); ++it) reflect_at_sink(rep, *it);
    else
        for (int v : order) reflect_at_source(rep, v);
    Representation out(m.quiver, std::move(rep.dims), std::move(rep.maps));
    if (out.is_zero()) return std::nullopt;
    return out;
}

} // namespace detail

inline std::optional<Representation> ar_translate(const Representation& m, TranslateDirection dir) {
    if (m.is_zero() || !is_brick(m)) throw NotIndecomposable("ar_translate needs an indecomposable (brick) input");
    return detail::coxeter_functor(m, dir);
}

namespace detail {

inline bool injective_combination(const HomSpace& hom, const std::vector<std::int64_t>& coeffs, const IntVector& ndims) {
    for (std::size_t v = 0; v < ndims.size(); ++v) {
        if (ndims[v] == 0) continue;
        RatMatrix phi = hom.basis[0][v].scaled(coeffs[0]);
        for (std::size_t k = 1; k < coeffs.size(); ++k)
            if (coeffs[k] != 0) phi = phi + hom.basis[k][v].scaled(coeffs[k]);
        if (rank(std::move(phi)) != static_cast<std::size_t>(ndims[v])) return false;
    }
    return true;
}

} // namespace detail

// Some injective map N -> M exists. The injective locus of Hom(N, M) is
// Zariski-open, so generic combinations decide it; small spaces are also
// searched exhaustively over {0, +-1} coefficients.
inline bool exists_mono(const Representation& n, const Representation& m, std::uint64_t seed = 0x5d1ab5eedULL) {
    if (!(n.quiver == m.quiver)) throw QuiverMismatch("exists_mono: representations live on different quivers");
    for (std::size_t v = 0; v < n.dims.size(); ++v)
        if (n.dims[v] > m.dims[v]) return false;
    if (n.is_zero()) return true;
    const HomSpace hom = hom_space(n, m);
    if (hom.dim == 0) return false;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> coeff(-1000000, 1000000);
    std::vector<std::int64_t> c(hom.dim);
    for (int trial = 0; trial < 8; ++trial) {
        for (auto& x : c) x = coeff(rng);
        if (detail::injective_combination(hom, c, n.dims)) return true;
    }
    if (hom.dim <= 2) {
        int total = 1;
        for (int k = 0; k < hom.dim; ++k) total *= 3;
        for (int code = 0; code < total; ++code) {
            int x = code;
            for (int k = 0; k < hom.dim; ++k, x /= 3) c[k] = x % 3 - 1;
            if (detail::injective_combination(hom, c, n.dims)) return true;
        }
    }
    return false;
}

} // namespace sdlab
