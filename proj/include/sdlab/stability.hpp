#pragma once

// Stability conditions whose semistable objects are shifts of cataloged
// indecomposable modules: the standard heart mod CQ, its images under the
// C-action and the Serre functor, Gepner points, mass growth and the greedy
// exceptional collection.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "entropy.hpp"

namespace sdlab {

using Complex = std::complex<double>;

inline constexpr double phase_tolerance = 1e-9;

struct SemistableEntry {
    int id = 0;
    double phase = 0; // phase of the module itself, shifts add integers
    double mass = 0;  // |Z|
};

struct StabilityCondition {
    CatalogPtr catalog;
    std::vector<Complex> z_simples;
    std::vector<SemistableEntry> semistables; // sorted by id
    double support_constant = 0;

    const IndecCatalog& cat() const { return *catalog; }

    Complex charge(const IntVector& dims) const {
        Complex out = 0;
        for (std::size_t v = 0; v < dims.size(); ++v) out += static_cast<double>(dims[v]) * z_simples[v];
        return out;
    }

    const SemistableEntry* find(int id) const {
        auto it = std::lower_bound(semistables.begin(), semistables.end(), id,
                                   [](const SemistableEntry& e, int x) { return e.id < x; });
        return it != semistables.end() && it->id == id ? &*it : nullptr;
    }

    bool all_semistable() const { return static_cast<int>(semistables.size()) == catalog->size(); }

    // True when the heart is mod CQ, i.e. every module has its phase in (0,1].
    bool standard_heart() const {
        for (const auto& e : semistables)
            if (e.phase <= phase_tolerance || e.phase > 1 + phase_tolerance) return false;
        return true;
    }
};

// Z(S_i) must lie in {r e^{i pi phi} : r > 0, 0 < phi <= 1}.
inline bool in_stability_half_plane(Complex z) { return z.imag() > 0 || (z.imag() == 0 && z.real() < 0); }

// arg(z)/pi in (0,1] for z in the half plane above.
inline double heart_phase(Complex z) {
    const double p = std::atan2(z.imag(), z.real()) / std::numbers::pi;
    return p <= 0 ? p + 2 : p;
}

namespace detail {

inline double support_constant(const StabilityCondition& s) {
    double c = 0;
    for (const auto& e : s.semistables) {
        double norm = 0;
        for (auto x : s.cat().entry(e.id).dims) norm += static_cast<double>(x * x);
        c = std::max(c, std::sqrt(norm) / e.mass);
    }
    return 1.01 * c;
}

inline void require_standard(const StabilityCondition& s, const char* op) {
    if (!s.standard_heart()) throw HeartEscape(std::string(op) + " needs a stability condition on the standard heart");
}

} // namespace detail

// Semistability is tested against indecomposable submodules only.
inline StabilityCondition make_stability(CatalogPtr cat, std::vector<Complex> z) {
    if (!cat->complete()) throw CatalogIncomplete("stability conditions need the full (Dynkin) catalog");
    if (static_cast<int>(z.size()) != cat->quiver().vertex_count())
        throw DimensionMismatch("one central charge per vertex expected");
    for (const auto& x : z)
        if (!in_stability_half_plane(x)) throw NotAStabilityFunction("central charge outside the upper half plane");

    StabilityCondition s;
    s.catalog = std::move(cat);
    s.z_simples = std::move(z);
    const auto& entries = s.cat().entries();
    std::vector<double> phase(entries.size());
    for (const auto& e : entries) phase[e.id] = heart_phase(s.charge(e.dims));
    for (const auto& m : entries) {
        bool semistable = true;
        for (const auto& n : entries)
            if (n.id != m.id && phase[n.id] > phase[m.id] + phase_tolerance && s.cat().mono(n.id, m.id)) {
                semistable = false;
                break;
            }
        if (semistable) s.semistables.push_back({m.id, phase[m.id], std::abs(s.charge(m.dims))});
    }
    s.support_constant = detail::support_constant(s);
    return s;
}

inline StabilityCondition make_stability(const Quiver& q, std::vector<Complex> z) {
    return make_stability(IndecCatalog::build(q), std::move(z));
}

// Stable: every proper indecomposable submodule has strictly smaller phase.
inline bool is_stable(const StabilityCondition& s, int id) {
    detail::require_standard(s, "is_stable");
    const auto* m = s.find(id);
    if (!m) return false;
    for (const auto& n : s.cat().entries())
        if (n.id != id && heart_phase(s.charge(n.dims)) >= m->phase - phase_tolerance && s.cat().mono(n.id, id))
            return false;
    return true;
}

// Largest phase gap across a nonzero morphism between semistable objects.
inline double gldim(const StabilityCondition& s) {
    if (s.semistables.empty()) throw NotAllSemistable("no semistable objects");
    double best = 0;
    for (const auto& m : s.semistables)
        for (const auto& n : s.semistables) {
            if (s.cat().hom_dim(m.id, n.id) != 0) best = std::max(best, n.phase - m.phase);
            if (s.cat().ext1_dim(m.id, n.id) != 0) best = std::max(best, n.phase + 1 - m.phase);
        }
    return best;
}

// sigma.mu: Z -> e^{-i pi mu} Z and P'(phi) = P(phi + Re mu), so each
// object's phase drops by Re mu.
inline StabilityCondition act_rotate(const StabilityCondition& s, Complex mu) {
    const Complex factor = std::exp(Complex(0, -std::numbers::pi) * mu);
    StabilityCondition out = s;
    for (auto& z : out.z_simples) z *= factor;
    for (auto& e : out.semistables) {
        e.phase -= mu.real();
        e.mass *= std::abs(factor);
    }
    out.support_constant = detail::support_constant(out);
    return out;
}

// S.sigma: Z -> Z o S^{-1}, slicing P(phi) -> S P(phi).
inline StabilityCondition act_serre(const StabilityCondition& s) {
    const IntMatrix inv = -s.cat().euler().coxeter_inverse; // K-class action of S^{-1}
    const int n = s.cat().quiver().vertex_count();
    StabilityCondition out;
    out.catalog = s.catalog;
    out.z_simples.assign(n, 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out.z_simples[j] += static_cast<double>(inv(i, j)) * s.z_simples[i];
    for (const auto& e : s.semistables) {
        Summand image;
        try {
            image = serre_step(s.cat(), {e.id, 0});
        } catch (const CatalogMiss& err) {
            throw HeartEscape(std::string("Serre image outside the cataloged objects: ") + err.what());
        }
        out.semistables.push_back({image.id, e.phase - image.shift, e.mass});
    }
    std::sort(out.semistables.begin(), out.semistables.end(),
              [](const SemistableEntry& a, const SemistableEntry& b) { return a.id < b.id; });
    out.support_constant = detail::support_constant(out);
    return out;
}

inline bool same_charges(const StabilityCondition& a, const StabilityCondition& b) {
    if (a.z_simples.size() != b.z_simples.size()) return false;
    for (std::size_t i = 0; i < a.z_simples.size(); ++i)
        if (std::abs(a.z_simples[i] - b.z_simples[i]) > phase_tolerance * std::max(1.0, std::abs(a.z_simples[i])))
            return false;
    return true;
}

inline bool same_slicing(const StabilityCondition& a, const StabilityCondition& b) {
    if (a.semistables.size() != b.semistables.size()) return false;
    for (std::size_t i = 0; i < a.semistables.size(); ++i)
        if (a.semistables[i].id != b.semistables[i].id ||
            std::abs(a.semistables[i].phase - b.semistables[i].phase) > phase_tolerance)
            return false;
    return true;
}

struct GepnerReport {
    double mu = 0;
    bool charge_match = false;
    bool slicing_match = false;
    bool verdict = false;
};

inline GepnerReport gepner_check(const StabilityCondition& s, double mu) {
    GepnerReport r;
    r.mu = mu;
    const auto serre = act_serre(s);
    const auto rotated = act_rotate(s, mu);
    r.charge_match = same_charges(serre, rotated);
    r.slicing_match = same_slicing(serre, rotated);
    r.verdict = r.charge_match && r.slicing_match;
    return r;
}

// Z from the eigenvector of the transposed Serre K-action for e^{i pi (1 - 2/h)},
// rotated so the simples' phases are centred on 1/2 and scaled to max |Z(S_i)| = 1.
inline StabilityCondition gepner_construct(CatalogPtr cat) {
    if (!cat->dynkin()) throw NotDynkin("gepner_construct needs a Dynkin quiver");
    const int h = cat->dynkin()->coxeter_number;
    const double mu = 1 - 2.0 / h;
    const Complex target = std::polar(1.0, std::numbers::pi * mu);
    const Eigen::MatrixXcd a = cat->euler().serre_k_action.transpose().cast<double>().cast<Complex>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < es.eigenvalues().size(); ++k)
        if (std::abs(es.eigenvalues()(k) - target) < std::abs(es.eigenvalues()(best) - target)) best = k;
    if (std::abs(es.eigenvalues()(best) - target) > 1e-8) throw HeartMismatch("no eigenvalue e^{i pi (1 - 2/h)}");
    const Eigen::VectorXcd v = es.eigenvectors().col(best);

    // Smallest arc of the circle (phases mod 2) containing every simple.
    std::vector<double> angles;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) < 1e-12) throw HeartMismatch("eigenvector vanishes on a simple");
        double p = std::atan2(v(i).imag(), v(i).real()) / std::numbers::pi;
        angles.push_back(p < 0 ? p + 2 : p);
    }
    std::sort(angles.begin(), angles.end());
    double gap = angles.front() + 2 - angles.back();
    double start = angles.front();
    for (std::size_t i = 1; i < angles.size(); ++i)
        if (angles[i] - angles[i - 1] > gap) {
            gap = angles[i] - angles[i - 1];
            start = angles[i];
        }
    const double spread = 2 - gap;
    if (spread >= 1 - phase_tolerance) throw HeartMismatch("simple phases spread over a half turn or more");
    const Complex rotation = std::polar(1.0, std::numbers::pi * (0.5 - spread / 2 - start));
    std::vector<Complex> z;
    double scale = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        z.push_back(v(i) * rotation);
        scale = std::max(scale, std::abs(z.back()));
    }
    for (auto& x : z) x /= scale;

    auto s = make_stability(std::move(cat), std::move(z));
    if (!gepner_check(s, mu).verdict) throw HeartMismatch("eigenvector charge is not of Gepner type on mod CQ");
    return s;
}

inline StabilityCondition gepner_construct(const Quiver& q) { return gepner_construct(IndecCatalog::build(q)); }

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t x = (state += 0x9e3779b97f4a7c15ULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Z(S_i) = r_i e^{i pi theta_i}, theta_i uniform on (0,1], log r_i uniform on
// [log 0.1, log 10]. mt19937_64 seeded by splitmix64(seed); uniforms are
// the top 53 bits of each draw.
inline StabilityCondition sample_stability(CatalogPtr cat, std::uint64_t seed) {
    std::uint64_t state = seed;
    std::mt19937_64 rng(splitmix64(state));
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Complex> z;
    for (int v = 0; v < cat->quiver().vertex_count(); ++v) {
        const double theta = 1 - uniform();
        const double r = std::exp(std::log(0.1) + uniform() * std::log(100.0));
        z.push_back(theta == 1 ? Complex(-r, 0) : std::polar(r, std::numbers::pi * theta));
    }
    return make_stability(std::move(cat), std::move(z));
}

inline double mass(const StabilityCondition& s, double t, const DerivedObject& x) {
    double total = 0;
    for (const auto& a : x.summands()) {
        const auto* e = s.find(a.id);
        if (!e) throw NotAllSemistable("summand " + std::to_string(a.id) + " is not semistable");
        total += e->mass * std::exp((e->phase + a.shift) * t);
    }
    return total;
}

struct MassGrowth {
    std::vector<std::pair<double, double>> rates; // (t, h_{sigma,t})
    double phase_upper = 0; // limsup phi^+(S^n G)/n
    double phase_lower = 0; // limsup phi^-(S^n G)/n

    double sigma_volume(double lambda) const {
        for (const auto& [t, h] : rates)
            if (std::abs(t - std::log(lambda)) < 1e-12) return std::exp(h);
        throw ConfigError("lambda not on the evaluated t grid");
    }
};

inline MassGrowth mass_growth(const StabilityCondition& s, const std::vector<double>& t_grid, int n_max) {
    if (!s.all_semistable()) throw NotAllSemistable("mass growth needs every indecomposable semistable");
    if (n_max < 2) throw ConfigError("mass_growth needs n_max >= 2");
    if (!s.cat().dynkin()) throw NotDynkin("mass_growth needs a connected Dynkin quiver");
    const int h = s.cat().dynkin()->coxeter_number;
    const int length = std::max(n_max, h);
    std::vector<DerivedObject> orbit{standard_generator(s.cat())};
    for (int n = 1; n <= length; ++n) orbit.push_back(serre_apply(s.cat(), orbit.back(), 1));

    auto log_mass = [&](int n, double t) {
        double top = -std::numeric_limits<double>::infinity();
        std::vector<double> terms;
        for (const auto& a : orbit[n].summands()) {
            const auto* e = s.find(a.id);
            terms.push_back(std::log(e->mass) + (e->phase + a.shift) * t);
            top = std::max(top, terms.back());
        }
        double sum = 0;
        for (double x : terms) sum += std::exp(x - top);
        return top + std::log(sum);
    };

    MassGrowth out;
    // S^h G = G[h-2] makes the one-period difference quotient exact.
    const auto [n0, n1] = detail::period_window(h, n_max);
    for (double t : t_grid) out.rates.emplace_back(t, (log_mass(n1, t) - log_mass(n0, t)) / h);

    out.phase_upper = out.phase_lower = -std::numeric_limits<double>::infinity();
    for (int n = std::max(1, n_max / 2); n <= n_max; ++n) {
        double hi = -std::numeric_limits<double>::infinity(), lo = std::numeric_limits<double>::infinity();
        for (const auto& a : orbit[n].summands()) {
            const double p = s.find(a.id)->phase + a.shift;
            hi = std::max(hi, p);
            lo = std::min(lo, p);
        }
        out.phase_upper = std::max(out.phase_upper, hi / n);
        out.phase_lower = std::max(out.phase_lower, lo / n);
    }
    return out;
}

// Greedy full strong exceptional collection: E_1 is a stable object of least
// phase; each next E is a least-phase shifted indecomposable in the left
// orthogonal of the previous ones receiving a degree-0 map from one of them.
inline std::vector<Summand> extract_exceptional_collection(const StabilityCondition& s) {
    detail::require_standard(s, "extract_exceptional_collection");
    if (!s.cat().quiver().is_connected()) throw Disconnected("quiver is not connected");
    if (gldim(s) >= 1 - phase_tolerance) throw GldimTooLarge("extraction needs gldim < 1");
    const auto& cat = s.cat();
    const int rank = cat.quiver().vertex_count();

    auto phase = [&](const Summand& x) { return s.find(x.id)->phase + x.shift; };
    std::vector<Summand> out;
    {
        const SemistableEntry* first = nullptr;
        for (const auto& e : s.semistables)
            if (is_stable(s, e.id) && (!first || e.phase < first->phase - phase_tolerance)) first = &e;
        out.push_back({first->id, 0});
    }
    while (static_cast<int>(out.size()) < rank) {
        std::optional<Summand> best;
        for (const auto& e : s.semistables) {
            bool orthogonal = true;
            for (const auto& prev : out)
                if (cat.hom_dim(e.id, prev.id) != 0 || cat.ext1_dim(e.id, prev.id) != 0) orthogonal = false;
            if (!orthogonal || !is_stable(s, e.id)) continue;
            for (int shift = 0; shift <= rank; ++shift) {
                const Summand c{e.id, shift};
                bool receives = false;
                for (const auto& prev : out) {
                    const int degree = shift - prev.shift;
                    if ((degree == 0 && cat.hom_dim(prev.id, e.id) != 0) || (degree == 1 && cat.ext1_dim(prev.id, e.id) != 0))
                        receives = true;
                }
                if (receives && (!best || phase(c) < phase(*best) - phase_tolerance)) best = c;
            }
        }
        if (!best) throw std::logic_error("left orthogonal has no candidate before reaching full rank");
        out.push_back(*best);
    }
    return out;
}

// Restriction to the full subquiver on `vertices` (0-based), keeping the
// central charges of its simples.
inline StabilityCondition restrict_to_subquiver(const StabilityCondition& s, const std::vector<int>& vertices) {
    detail::require_standard(s, "restrict_to_subquiver");
    if (gldim(s) > 1 + phase_tolerance) throw GldimTooLarge("restriction needs gldim <= 1");
    std::vector<int> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty() || sorted.back() >= s.cat().quiver().vertex_count() || sorted.front() < 0)
        throw NotConnectedSubset("vertex subset out of range");
    const Quiver sub = s.cat().quiver().full_subquiver(sorted);
    if (!sub.is_connected()) throw NotConnectedSubset("vertex subset does not induce a connected subquiver");
    std::vector<Complex> z;
    for (int v : sorted) z.push_back(s.z_simples[v]);
    return make_stability(IndecCatalog::build(sub), std::move(z));
}

inline nlohmann::json to_json(const StabilityCondition& s) {
    nlohmann::json j;
    j["quiver"] = s.cat().quiver().to_text();
    auto& z = j["z_simples"] = nlohmann::json::array();
    for (const auto& x : s.z_simples) z.push_back({x.real(), x.imag()});
    return j;
}

inline StabilityCondition stability_from_json(const nlohmann::json& j) {
    std::vector<Complex> z;
    for (const auto& x : j.at("z_simples")) z.emplace_back(x.at(0).get<double>(), x.at(1).get<double>());
    return make_stability(parse_quiver(j.at("quiver").get<std::string>()), std::move(z));
}

} // namespace sdlab
