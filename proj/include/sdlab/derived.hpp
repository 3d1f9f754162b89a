#pragma once

// Objects of D^b(Q) as formal sums of shifted indecomposable modules, with
// the Serre functor S = tau[1] (S P_i = I_i) and graded Hom dimensions.

#include <algorithm>
#include <map>

#include "catalog.hpp"

namespace sdlab {

struct Summand {
    int id = 0;
    int shift = 0;
    friend auto operator<=>(const Summand&, const Summand&) = default;
};

// Multiset of shifted indecomposables, kept sorted. Empty means zero.
class DerivedObject {
public:
    DerivedObject() = default;
    explicit DerivedObject(std::vector<Summand> s) : summands_(std::move(s)) {
        std::sort(summands_.begin(), summands_.end());
    }

    const std::vector<Summand>& summands() const noexcept { return summands_; }
    bool is_zero() const noexcept { return summands_.empty(); }

    DerivedObject shifted(int k) const {
        auto s = summands_;
        for (auto& x : s) x.shift += k;
        return DerivedObject(std::move(s));
    }

    friend bool operator==(const DerivedObject&, const DerivedObject&) = default;

private:
    std::vector<Summand> summands_;
};

// G = P_1 + ... + P_n.
inline DerivedObject standard_generator(const IndecCatalog& cat) {
    std::vector<Summand> s;
    for (int v = 0; v < cat.quiver().vertex_count(); ++v) s.push_back({cat.projective(v), 0});
    return DerivedObject(std::move(s));
}

inline Summand serre_step(const IndecCatalog& cat, Summand x) {
    const auto& e = cat.entry(x.id);
    if (e.is_projective) {
        const int inj = cat.injective(cat.projective_vertex(x.id));
        if (inj < 0) throw CatalogMiss("injective hull outside the catalog");
        return {inj, x.shift};
    }
    if (e.tau < 0) throw CatalogMiss("tau of entry " + std::to_string(x.id) + " is outside the catalog");
    return {e.tau, x.shift + 1};
}

inline Summand serre_inverse_step(const IndecCatalog& cat, Summand x) {
    const auto& e = cat.entry(x.id);
    if (e.is_injective) {
        const int proj = cat.projective(cat.injective_vertex(x.id));
        if (proj < 0) throw CatalogMiss("projective cover outside the catalog");
        return {proj, x.shift};
    }
    if (e.tau_inv < 0) throw CatalogMiss("tau^-1 of entry " + std::to_string(x.id) + " is outside the catalog");
    return {e.tau_inv, x.shift - 1};
}

inline DerivedObject serre_apply(const IndecCatalog& cat, const DerivedObject& x, int power) {
    std::vector<Summand> out = x.summands();
    for (auto& s : out)
        for (int k = 0; k < std::abs(power); ++k) s = power > 0 ? serre_step(cat, s) : serre_inverse_step(cat, s);
    return DerivedObject(std::move(out));
}

// m -> dim Hom(X, Y[m]); Hom(M[a], N[b][m]) = Ext^{b+m-a}(M, N).
inline std::map<int, long long> hom_poincare(const IndecCatalog& cat, const DerivedObject& x, const DerivedObject& y) {
    std::map<int, long long> out;
    for (const auto& a : x.summands())
        for (const auto& b : y.summands()) {
            if (int h = cat.hom_dim(a.id, b.id)) out[a.shift - b.shift] += h;
            if (int e = cat.ext1_dim(a.id, b.id)) out[a.shift - b.shift + 1] += e;
        }
    return out;
}

inline nlohmann::json to_json(const IndecCatalog& cat, const DerivedObject& x) {
    auto arr = nlohmann::json::array();
    for (const auto& s : x.summands()) arr.push_back({{"root", cat.entry(s.id).dims}, {"shift", s.shift}});
    return arr;
}

inline DerivedObject derived_from_json(const IndecCatalog& cat, const nlohmann::json& j) {
    std::vector<Summand> s;
    for (const auto& item : j) {
        const auto root = item.at("root").get<IntVector>();
        auto id = cat.find(root);
        if (!id) throw CatalogMiss("no cataloged indecomposable with this dimension vector");
        s.push_back({*id, item.at("shift").get<int>()});
    }
    return DerivedObject(std::move(s));
}

} // namespace sdlab
