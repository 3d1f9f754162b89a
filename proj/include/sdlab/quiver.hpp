#pragma once

// Finite acyclic quivers: text format, presets, Euler form, Coxeter matrix,
// Dynkin detection and positive roots.

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace sdlab {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = std::vector<std::int64_t>;

struct Arrow {
    int source = 0; // 0-based
    int target = 0;
    friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
public:
    Quiver() = default;

    // Vertices are 0-based here; the text format is 1-based.
    Quiver(int vertices, std::vector<Arrow> arrows, std::string name = {})
        : n_(vertices), arrows_(std::move(arrows)), name_(std::move(name)) {
        if (n_ < 1) throw ParseError("a quiver needs at least one vertex");
        for (const auto& a : arrows_)
            if (a.source < 0 || a.source >= n_ || a.target < 0 || a.target >= n_)
                throw ParseError("arrow endpoint out of range");
        topo_ = compute_topological_order();
    }

    int vertex_count() const noexcept { return n_; }
    const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
    const std::string& name() const noexcept { return name_; }

    // Sources first: every arrow goes from an earlier to a later vertex.
    const std::vector<int>& topological_order() const noexcept { return topo_; }

    std::string to_text() const {
        std::ostringstream os;
        os << "vertices:" << n_ << "; arrows:";
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            if (i) os << ',';
            os << arrows_[i].source + 1 << "->" << arrows_[i].target + 1;
        }
        return os.str();
    }

    bool is_connected() const {
        std::vector<int> parent(n_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& a : arrows_) parent[find(a.source)] = find(a.target);
        for (int v = 1; v < n_; ++v)
            if (find(v) != find(0)) return false;
        return true;
    }

    // Full subquiver on the given 0-based vertices, relabelled in the order given.
    Quiver full_subquiver(const std::vector<int>& vertices) const {
        std::map<int, int> relabel;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (vertices[i] < 0 || vertices[i] >= n_) throw NotConnectedSubset("vertex out of range");
            if (!relabel.emplace(vertices[i], static_cast<int>(i)).second)
                throw NotConnectedSubset("repeated vertex in subset");
        }
        std::vector<Arrow> arrows;
        for (const auto& a : arrows_) {
            auto s = relabel.find(a.source), t = relabel.find(a.target);
            if (s != relabel.end() && t != relabel.end()) arrows.push_back({s->second, t->second});
        }
        return Quiver(static_cast<int>(vertices.size()), std::move(arrows));
    }

    friend bool operator==(const Quiver& a, const Quiver& b) { return a.n_ == b.n_ && a.arrows_ == b.arrows_; }

private:
    std::vector<int> compute_topological_order() const {
        std::vector<int> indeg(n_, 0);
        for (const auto& a : arrows_) ++indeg[a.target];
        std::queue<int> ready;
        for (int v = 0; v < n_; ++v)
            if (indeg[v] == 0) ready.push(v);
        std::vector<int> order;
        while (!ready.empty()) {
            int v = ready.front();
            ready.pop();
            order.push_back(v);
            for (const auto& a : arrows_)
                if (a.source == v && --indeg[a.target] == 0) ready.push(a.target);
        }
        if (static_cast<int>(order.size()) != n_) throw CyclicQuiver("quiver has an oriented cycle");
        return order;
    }

    int n_ = 0;
    std::vector<Arrow> arrows_;
    std::string name_;
    std::vector<int> topo_;
};

namespace detail {

inline std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

inline int parse_positive(const std::string& s, const std::string& what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("expected a positive integer for " + what + ", got '" + s + "'");
    if (s.size() > 6) throw ParseError(what + " is too large");
    int v = std::stoi(s);
    if (v < 1) throw ParseError(what + " must be positive");
    return v;
}

inline std::optional<Quiver> preset(const std::string& name) {
    if (name.size() < 2) return std::nullopt;
    const char series = name[0];
    const std::string rest = name.substr(1);
    if (!std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return std::nullopt;
    const int k = parse_positive(rest, "preset rank");
    std::vector<Arrow> arrows;
    // Dynkin presets are bipartite: even 0-based vertices are sources, odd ones sinks.
    const auto edge = [&](int a, int b) { arrows.push_back(a % 2 == 0 ? Arrow{a, b} : Arrow{b, a}); };
    switch (series) {
    case 'A':
        for (int i = 0; i + 1 < k; ++i) edge(i, i + 1);
        return Quiver(k, arrows, name);
    case 'D':
        if (k < 4) throw ParseError("D series needs rank >= 4");
        for (int i = 0; i + 2 < k; ++i) edge(i, i + 1);
        edge(k - 3, k - 1);
        return Quiver(k, arrows, name);
    case 'E':
        if (k < 6 || k > 8) throw ParseError("E series exists only in ranks 6, 7, 8");
        for (int i = 0; i + 2 < k; ++i) edge(i, i + 1);
        edge(2, k - 1);
        return Quiver(k, arrows, name);
    case 'K':
        for (int i = 0; i < k; ++i) arrows.push_back({0, 1});
        return Quiver(2, arrows, name);
    default:
        return std::nullopt;
    }
}

} // namespace detail

// Accepts `vertices:<n>; arrows:<s>-><t>,...` (1-based, whitespace-insensitive)
// or a preset name: A<n>, D<n>, E6, E7, E8, K<m>.
inline Quiver parse_quiver(const std::string& text) {
    const std::string s = detail::strip_spaces(text);
    if (auto q = detail::preset(s)) return *q;

    const std::string vkey = "vertices:", akey = "arrows:";
    if (s.rfind(vkey, 0) != 0) throw ParseError("expected 'vertices:' or a preset name, got '" + text + "'");
    const auto semi = s.find(';');
    if (semi == std::string::npos) throw ParseError("missing ';' between vertices and arrows");
    const int n = detail::parse_positive(s.substr(vkey.size(), semi - vkey.size()), "vertex count");
    const std::string tail = s.substr(semi + 1);
    if (tail.rfind(akey, 0) != 0) throw ParseError("expected 'arrows:' after ';'");
    std::string list = tail.substr(akey.size());

    std::vector<Arrow> arrows;
    std::size_t pos = 0;
    while (pos < list.size()) {
        auto comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        const std::string item = list.substr(pos, comma - pos);
        const auto arrow = item.find("->");
        if (arrow == std::string::npos) throw ParseError("malformed arrow '" + item + "'");
        const int src = detail::parse_positive(item.substr(0, arrow), "arrow source");
        const int tgt = detail::parse_positive(item.substr(arrow + 2), "arrow target");
        if (src > n || tgt > n) throw ParseError("arrow '" + item + "' references a missing vertex");
        if (src == tgt) throw CyclicQuiver("loop at vertex " + std::to_string(src));
        arrows.push_back({src - 1, tgt - 1});
        pos = comma + 1;
        if (comma + 1 == list.size()) throw ParseError("trailing ',' in arrow list");
    }
    return Quiver(n, std::move(arrows));
}

// E with <d,e> = d^T E e.
inline IntMatrix euler_matrix(const Quiver& q) {
    const int n = q.vertex_count();
    IntMatrix e = IntMatrix::Identity(n, n);
    for (const auto& a : q.arrows()) e(a.source, a.target) -= 1;
    return e;
}

inline std::int64_t euler_form(const Quiver& q, const IntVector& d, const IntVector& e) {
    const auto n = static_cast<std::size_t>(q.vertex_count());
    if (d.size() != n || e.size() != n) throw DimensionMismatch("euler_form: vector length differs from vertex count");
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += d[i] * e[i];
    for (const auto& a : q.arrows()) sum -= d[a.source] * e[a.target];
    return sum;
}

// Tits form q(d) = <d,d>.
inline std::int64_t tits_form(const Quiver& q, const IntVector& d) { return euler_form(q, d, d); }

struct EulerData {
    IntMatrix euler;           // <d,e> = d^T E e
    IntMatrix coxeter;         // dim(tau M) = coxeter * dim(M) for nonprojective indecomposable M
    IntMatrix serre_k_action;  // K-class action of the Serre functor, = -coxeter
    IntMatrix coxeter_inverse;
};

// Phi = -E^{-1} E^T. E^{-1} counts paths, so everything stays integral.
inline EulerData coxeter_matrix(const Quiver& q) {
    const int n = q.vertex_count();
    EulerData d;
    d.euler = euler_matrix(q);
    IntMatrix paths = IntMatrix::Zero(n, n);
    const auto& order = q.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        paths(v, v) = 1;
        for (const auto& a : q.arrows())
            if (a.source == v) paths.row(v) += paths.row(a.target);
    }
    d.coxeter = -paths * d.euler.transpose();
    d.serre_k_action = -d.coxeter;
    // Phi^{-1} = -E^{-T} E, E^{-T} = paths^T.
    d.coxeter_inverse = -paths.transpose() * d.euler;
    return d;
}

inline IntVector apply(const IntMatrix& m, const IntVector& v) {
    IntVector out(static_cast<std::size_t>(m.rows()), 0);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

// Smallest m >= 1 with M^m = I, searched up to `limit`.
inline std::optional<int> matrix_order(const IntMatrix& m, int limit) {
    const IntMatrix id = IntMatrix::Identity(m.rows(), m.cols());
    IntMatrix p = m;
    for (int k = 1; k <= limit; ++k) {
        if (p == id) return k;
        p = p * m;
    }
    return std::nullopt;
}

struct DynkinClass {
    char series = 'A';
    int rank = 1;
    int coxeter_number = 2;
    std::pair<int, int> fcy_pair{2, 0}; // S^h = [h-2]

    std::string label() const { return std::string(1, series) + std::to_string(rank); }
    friend bool operator==(const DynkinClass&, const DynkinClass&) = default;
};

inline std::optional<DynkinClass> classify_dynkin(const Quiver& q) {
    if (!q.is_connected()) throw DisconnectedQuiver("classify_dynkin needs a connected quiver");
    const int n = q.vertex_count();

    std::set<std::pair<int, int>> edges;
    for (const auto& a : q.arrows()) {
        auto e = std::minmax(a.source, a.target);
        if (!edges.insert({e.first, e.second}).second) return std::nullopt; // multiple edge
    }
    if (static_cast<int>(edges.size()) != n - 1) return std::nullopt; // not a tree

    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> branch;
    for (int v = 0; v < n; ++v) {
        if (adj[v].size() > 3) return std::nullopt;
        if (adj[v].size() == 3) branch.push_back(v);
    }

    DynkinClass cls;
    cls.rank = n;
    if (branch.empty()) {
        cls.series = 'A';
        cls.coxeter_number = n + 1;
    } else if (branch.size() == 1) {
        std::vector<int> arms;
        for (int start : adj[branch[0]]) {
            int len = 1, prev = branch[0], cur = start;
            while (adj[cur].size() == 2) {
                int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = next;
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms[0] == 1 && arms[1] == 1) {
            cls.series = 'D';
            cls.coxeter_number = 2 * n - 2;
        } else if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) {
            cls.series = 'E';
            cls.coxeter_number = arms[2] == 2 ? 12 : arms[2] == 3 ? 18 : 30;
        } else {
            return std::nullopt;
        }
    } else {
        return std::nullopt;
    }

    const auto order = matrix_order(coxeter_matrix(q).coxeter, 4 * n + 32);
    if (!order || *order != cls.coxeter_number)
        throw std::logic_error("Coxeter order disagrees with the Dynkin type of " + cls.label());
    cls.fcy_pair = {cls.coxeter_number, cls.coxeter_number - 2};
    return cls;
}

// Positive roots of a Dynkin quiver, generated from the simple roots by
// simple reflections in the symmetrised Euler form. Sorted by height, then
// lexicographically.
inline std::vector<IntVector> positive_roots(const Quiver& q) {
    if (!classify_dynkin(q)) throw NotDynkin("positive_roots needs a Dynkin quiver");
    const int n = q.vertex_count();
    const IntMatrix e = euler_matrix(q);
    const IntMatrix sym = e + e.transpose();

    std::set<IntVector> seen;
    std::queue<IntVector> work;
    for (int i = 0; i < n; ++i) {
        IntVector s(n, 0);
        s[i] = 1;
        seen.insert(s);
        work.push(s);
    }
    while (!work.empty()) {
        IntVector r = work.front();
        work.pop();
        for (int i = 0; i < n; ++i) {
            std::int64_t pairing = 0;
            for (int j = 0; j < n; ++j) pairing += sym(i, j) * r[j];
            if (pairing == 0) continue;
            IntVector s = r;
            s[i] -= pairing;
            if (std::any_of(s.begin(), s.end(), [](std::int64_t x) { return x < 0; })) continue;
            if (seen.insert(s).second) work.push(s);
        }
    }
    std::vector<IntVector> roots(seen.begin(), seen.end());
    std::stable_sort(roots.begin(), roots.end(), [](const IntVector& a, const IntVector& b) {
        return std::accumulate(a.begin(), a.end(), std::int64_t{0}) < std::accumulate(b.begin(), b.end(), std::int64_t{0});
    });
    return roots;
}

} // namespace sdlab
