#pragma once

// Catalog of indecomposable modules reachable from the projectives and
// injectives by the AR translate, with memoised Hom/Ext/mono tables and a
// JSON cache format.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>

#include "rep.hpp"

namespace sdlab {

struct CatalogEntry {
    int id = 0;
    IntVector dims;
    Representation rep;
    bool is_projective = false;
    bool is_injective = false;
    int tau = -1;      // id of tau(M); -1 on the boundary or past the catalog frontier
    int tau_inv = -1;  // id of tau^{-1}(M)
};

class IndecCatalog;
using CatalogPtr = std::shared_ptr<const IndecCatalog>;

class IndecCatalog {
public:
    static constexpr int format_version = 1;

    // Dynkin quivers get every indecomposable; other acyclic quivers get the
    // preprojective and preinjective components up to `depth` AR steps.
    static CatalogPtr build(const Quiver& q, int depth = 0) {
        auto cat = std::shared_ptr<IndecCatalog>(new IndecCatalog(q, depth));
        cat->populate();
        return cat;
    }

    const Quiver& quiver() const noexcept { return quiver_; }
    const EulerData& euler() const noexcept { return euler_; }
    const std::optional<DynkinClass>& dynkin() const noexcept { return dynkin_; }
    // Every indecomposable is present: each connected component is Dynkin.
    bool complete() const noexcept { return complete_; }
    int depth() const noexcept { return depth_; }
    int size() const noexcept { return static_cast<int>(entries_.size()); }

    const CatalogEntry& entry(int id) const { return entries_.at(static_cast<std::size_t>(id)); }
    const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }

    std::optional<int> find(const IntVector& dims) const {
        auto it = by_dims_.find(dims);
        if (it == by_dims_.end()) return std::nullopt;
        return it->second;
    }

    int projective(int vertex) const { return projective_.at(static_cast<std::size_t>(vertex)); }
    int injective(int vertex) const { return injective_.at(static_cast<std::size_t>(vertex)); }

    // Vertex i with entry == P_i (resp. I_i), or -1.
    int projective_vertex(int id) const {
        for (std::size_t v = 0; v < projective_.size(); ++v)
            if (projective_[v] == id) return static_cast<int>(v);
        return -1;
    }
    int injective_vertex(int id) const {
        for (std::size_t v = 0; v < injective_.size(); ++v)
            if (injective_[v] == id) return static_cast<int>(v);
        return -1;
    }

    int hom_dim(int a, int b) const {
        std::lock_guard lock(cache_->mutex);
        auto key = std::make_pair(a, b);
        if (auto it = cache_->hom.find(key); it != cache_->hom.end()) return it->second;
        const int d = sdlab::hom_dim(entry(a).rep, entry(b).rep);
        cache_->hom.emplace(key, d);
        return d;
    }

    int ext1_dim(int a, int b) const {
        return static_cast<int>(hom_dim(a, b) - euler_form(quiver_, entry(a).dims, entry(b).dims));
    }

    bool mono(int sub, int whole) const {
        {
            std::lock_guard lock(cache_->mutex);
            if (auto it = cache_->mono.find({sub, whole}); it != cache_->mono.end()) return it->second;
        }
        const bool r = exists_mono(entry(sub).rep, entry(whole).rep);
        std::lock_guard lock(cache_->mutex);
        cache_->mono.emplace(std::make_pair(sub, whole), r);
        return r;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["format_version"] = format_version;
        j["name"] = quiver_.name();
        j["quiver"] = quiver_.to_text();
        j["depth"] = depth_;
        auto& arr = j["entries"] = nlohmann::json::array();
        for (const auto& e : entries_) {
            nlohmann::json je;
            je["dim_vector"] = e.dims;
            je["is_projective"] = e.is_projective;
            je["is_injective"] = e.is_injective;
            je["tau"] = e.tau;
            je["tau_inv"] = e.tau_inv;
            auto& maps = je["maps"] = nlohmann::json::array();
            for (const auto& m : e.rep.maps) {
                auto rows = nlohmann::json::array();
                for (std::size_t r = 0; r < m.rows(); ++r) {
                    auto row = nlohmann::json::array();
                    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
                    rows.push_back(std::move(row));
                }
                maps.push_back(std::move(rows));
            }
            arr.push_back(std::move(je));
        }
        return j;
    }

    static CatalogPtr from_json(const nlohmann::json& j) {
        if (j.at("format_version").get<int>() != format_version) throw ParseError("catalog cache format version mismatch");
        Quiver parsed = parse_quiver(j.at("quiver").get<std::string>());
        Quiver q(parsed.vertex_count(), parsed.arrows(), j.value("name", std::string{}));
        auto cat = std::shared_ptr<IndecCatalog>(new IndecCatalog(q, j.at("depth").get<int>()));
        for (const auto& je : j.at("entries")) {
            CatalogEntry e;
            e.id = cat->size();
            e.dims = je.at("dim_vector").get<IntVector>();
            e.is_projective = je.at("is_projective").get<bool>();
            e.is_injective = je.at("is_injective").get<bool>();
            e.tau = je.at("tau").get<int>();
            e.tau_inv = je.at("tau_inv").get<int>();
            std::vector<RatMatrix> maps;
            const auto& arrows = q.arrows();
            const auto& jm = je.at("maps");
            if (jm.size() != arrows.size()) throw ParseError("catalog cache: wrong number of arrow maps");
            for (std::size_t a = 0; a < arrows.size(); ++a) {
                RatMatrix m(e.dims.at(arrows[a].target), e.dims.at(arrows[a].source));
                const auto& rows = jm[a];
                if (rows.size() != m.rows()) throw ParseError("catalog cache: bad matrix shape");
                for (std::size_t r = 0; r < m.rows(); ++r) {
                    if (rows[r].size() != m.cols()) throw ParseError("catalog cache: bad matrix shape");
                    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = parse_rational(rows[r][c].get<std::string>());
                }
                maps.push_back(std::move(m));
            }
            e.rep = Representation(q, e.dims, std::move(maps));
            cat->add(std::move(e));
        }
        cat->index_boundary();
        return cat;
    }

private:
    struct Cache {
        std::mutex mutex;
        std::map<std::pair<int, int>, int> hom;
        std::map<std::pair<int, int>, bool> mono;
    };

    IndecCatalog(const Quiver& q, int depth)
        : quiver_(q), euler_(coxeter_matrix(q)), depth_(depth), cache_(std::make_unique<Cache>()) {
        if (q.is_connected()) {
            dynkin_ = classify_dynkin(q);
            complete_ = dynkin_.has_value();
        } else {
            complete_ = std::ranges::all_of(components(q), [&](const std::vector<int>& c) {
                return classify_dynkin(q.full_subquiver(c)).has_value();
            });
        }
    }

    static std::vector<std::vector<int>> components(const Quiver& q) {
        const int n = q.vertex_count();
        std::vector<int> label(n, -1);
        std::vector<std::vector<int>> out;
        for (int root = 0; root < n; ++root) {
            if (label[root] >= 0) continue;
            out.emplace_back();
            std::vector<int> stack{root};
            label[root] = static_cast<int>(out.size()) - 1;
            while (!stack.empty()) {
                const int v = stack.back();
                stack.pop_back();
                out.back().push_back(v);
                for (const auto& a : q.arrows())
                    for (auto [x, y] : {std::pair{a.source, a.target}, std::pair{a.target, a.source}})
                        if (x == v && label[y] < 0) {
                            label[y] = label[root];
                            stack.push_back(y);
                        }
            }
            std::ranges::sort(out.back());
        }
        return out;
    }

    int add(CatalogEntry e) {
        e.id = size();
        if (!by_dims_.emplace(e.dims, e.id).second)
            throw std::logic_error("two catalog entries share a dimension vector");
        entries_.push_back(std::move(e));
        return entries_.back().id;
    }

    void index_boundary() {
        const int n = quiver_.vertex_count();
        projective_.assign(n, -1);
        injective_.assign(n, -1);
        for (int v = 0; v < n; ++v) {
            if (auto id = find(projective_rep(quiver_, v).dims)) projective_[v] = *id;
            if (auto id = find(injective_rep(quiver_, v).dims)) injective_[v] = *id;
        }
    }

    // Follows tau^{-1} (or tau) from `start` and links the chain.
    void chain(Representation start, TranslateDirection dir, int max_steps, bool boundary_flag) {
        CatalogEntry first;
        first.dims = start.dims;
        first.rep = std::move(start);
        (dir == TranslateDirection::inverse ? first.is_projective : first.is_injective) = boundary_flag;
        if (find(first.dims)) return;
        int prev = add(std::move(first));
        for (int step = 0; max_steps < 0 || step < max_steps; ++step) {
            auto next = detail::coxeter_functor(entries_[prev].rep, dir);
            if (!next) {
                (dir == TranslateDirection::inverse ? entries_[prev].is_injective : entries_[prev].is_projective) = true;
                return;
            }
            // A chain from the other end of the same component: the rest is known.
            const auto known = find(next->dims);
            CatalogEntry e;
            e.dims = next->dims;
            e.rep = std::move(*next);
            const int id = known ? *known : add(std::move(e));
            if (dir == TranslateDirection::inverse) {
                entries_[prev].tau_inv = id;
                entries_[id].tau = prev;
            } else {
                entries_[prev].tau = id;
                entries_[id].tau_inv = prev;
            }
            if (known) return;
            prev = id;
        }
    }

    void populate() {
        const int n = quiver_.vertex_count();
        if (complete_) {
            for (int v = 0; v < n; ++v) chain(projective_rep(quiver_, v), TranslateDirection::inverse, -1, true);
            if (dynkin_ && size() != static_cast<int>(positive_roots(quiver_).size()))
                throw std::logic_error("catalog size differs from the number of positive roots");
        } else {
            for (int v = 0; v < n; ++v) chain(projective_rep(quiver_, v), TranslateDirection::inverse, depth_, true);
            for (int v = 0; v < n; ++v) chain(injective_rep(quiver_, v), TranslateDirection::forward, depth_, true);
        }
        index_boundary();
    }

    Quiver quiver_;
    EulerData euler_;
    std::optional<DynkinClass> dynkin_;
    bool complete_ = false;
    int depth_ = 0;
    std::vector<CatalogEntry> entries_;
    std::map<IntVector, int> by_dims_;
    std::vector<int> projective_;
    std::vector<int> injective_;
    std::unique_ptr<Cache> cache_;
};

// Loads `<dir>/<name>.v<version>.json` if present, else builds and writes it.
// Only named presets are cached.
inline CatalogPtr load_or_build_catalog(const Quiver& q, int depth, const std::filesystem::path& dir) {
    if (q.name().empty()) return IndecCatalog::build(q, depth);
    const auto file = dir / (q.name() + ".d" + std::to_string(depth) + ".v" +
                             std::to_string(IndecCatalog::format_version) + ".json");
    if (std::filesystem::exists(file)) {
        std::ifstream in(file);
        try {
            auto cat = IndecCatalog::from_json(nlohmann::json::parse(in));
            if (cat->quiver() == q) return cat;
        } catch (const std::exception&) {
            // stale or corrupt cache: rebuild below
        }
    }
    auto cat = IndecCatalog::build(q, depth);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!ec) {
        std::ofstream out(file);
        if (out) out << cat->to_json().dump() << '\n';
    }
    return cat;
}

} // namespace sdlab

namespace sdlab {

// Gabriel's bijection: the indecomposable of a Dynkin quiver with dimension
// vector d, reached from a projective by repeated Coxeter reflections.
inline Representation indecomposable_from_root(const Quiver& q, const IntVector& d) {
    if (!q.is_connected() || !classify_dynkin(q)) throw NotDynkin("indecomposable_from_root needs a Dynkin quiver");
    const auto roots = positive_roots(q);
    if (std::find(roots.begin(), roots.end(), d) == roots.end()) throw NotARoot("not a positive root");
    for (int v = 0; v < q.vertex_count(); ++v) {
        std::optional<Representation> m = projective_rep(q, v);
        while (m) {
            if (m->dims == d) return *m;
            m = detail::coxeter_functor(*m, TranslateDirection::inverse);
        }
    }
    throw std::logic_error("positive root not reached by the preprojective component");
}

} // namespace sdlab
