#pragma once

// Batch of property checks over Dynkin quivers, one line per check.
// Every check reports a margin: its worst-case slack, with the tolerance folded
// in, so a check passes exactly when margin >= 0.

#include <Eigen/Dense>

#include "stability.hpp"

namespace sdlab {

struct CheckLine {
    std::string quiver;
    std::string check;
    bool pass = false;
    double margin = 0;
    std::string detail;
};

struct ExceptionalCheck {
    bool full_rank = false;     // one object per vertex
    bool unitriangular = false; // chi(E_i, E_j) = 0 for i > j, chi(E_i, E_i) = 1
    bool degree_zero = false;   // Hom(E_i, E_j[m]) = 0 for m != 0, and Hom^*(E_j, E_i) = 0 for i < j
    bool spans = false;         // classes form a Z-basis of K_0
    bool ok() const { return full_rank && unitriangular && degree_zero && spans; }
};

inline long long signed_euler(const IndecCatalog& cat, const Summand& a, const Summand& b) {
    const long long chi = euler_form(cat.quiver(), cat.entry(a.id).dims, cat.entry(b.id).dims);
    return (a.shift - b.shift) % 2 == 0 ? chi : -chi;
}

inline ExceptionalCheck check_exceptional_collection(const IndecCatalog& cat, const std::vector<Summand>& ec) {
    ExceptionalCheck r;
    const int n = cat.quiver().vertex_count();
    r.full_rank = static_cast<int>(ec.size()) == n;
    if (!r.full_rank) return r;
    r.unitriangular = r.degree_zero = true;
    Eigen::MatrixXd classes(n, n);
    for (int i = 0; i < n; ++i) {
        if (signed_euler(cat, ec[i], ec[i]) != 1) r.unitriangular = false;
        for (int j = 0; j < i; ++j)
            if (signed_euler(cat, ec[i], ec[j]) != 0) r.unitriangular = false;
        for (int j = i + 1; j < n; ++j) {
            for (const auto& [m, d] : hom_poincare(cat, DerivedObject({ec[i]}), DerivedObject({ec[j]})))
                if (m != 0) r.degree_zero = false;
            if (!hom_poincare(cat, DerivedObject({ec[j]}), DerivedObject({ec[i]})).empty()) r.degree_zero = false;
        }
        const double sign = ec[i].shift % 2 == 0 ? 1 : -1;
        for (int v = 0; v < n; ++v) classes(i, v) = sign * static_cast<double>(cat.entry(ec[i].id).dims[v]);
    }
    r.spans = std::abs(std::abs(classes.determinant()) - 1) < 1e-9;
    return r;
}

namespace detail {

inline std::string fixed(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

} // namespace detail

inline std::vector<CheckLine> verify_quiver(const std::string& name, CatalogPtr cat, std::uint64_t seed, int samples) {
    if (!cat->dynkin()) throw ConfigError("verify covers connected Dynkin quivers, got " + name);
    const int h = cat->dynkin()->coxeter_number;
    const double sdim = (h - 2.0) / h;
    std::vector<CheckLine> out;
    auto line = [&](const char* check, double margin, std::string detail) {
        out.push_back({name, check, margin >= 0, margin, std::move(detail)});
    };

    {
        const EntropySeries series(*cat, 10 * h);
        const auto d = sdim_estimate(*cat, series);
        const double err = std::max(std::abs(d.upper - sdim), std::abs(d.lower - sdim));
        const bool exact = d.exact && *d.exact == [&] { Rational q(h - 2, h); q.canonicalize(); return q; }();
        line("serre_dimension", exact ? 0.05 - err : -1, "upper=" + detail::fixed(d.upper) + " lower=" + detail::fixed(d.lower));
        double worst = 0;
        for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0}) worst = std::max(worst, std::abs(entropy_estimate(*cat, series, t) - t * sdim));
        line("entropy_linearity", 1e-9 - worst, "max_error=" + detail::fixed(worst, 3));
    }

    std::optional<StabilityCondition> gepner;
    try {
        gepner = gepner_construct(cat);
        const double err = std::abs(gldim(*gepner) - sdim);
        const bool verdict = gepner_check(*gepner, sdim).verdict;
        line("gepner_point", verdict ? 1e-9 - err : -1, "gldim=" + detail::fixed(gldim(*gepner)));
    } catch (const HeartMismatch& e) {
        line("gepner_point", -1, e.what());
    }

    std::vector<StabilityCondition> sigmas;
    for (int k = 0; k < samples; ++k) sigmas.push_back(sample_stability(cat, seed + static_cast<std::uint64_t>(k)));

    double slack = std::numeric_limits<double>::infinity();
    for (const auto& s : sigmas) slack = std::min(slack, gldim(s) - sdim + 1e-9);
    if (sigmas.empty()) slack = 0;
    line("fundamental_inequality", slack, std::to_string(samples) + " samples");

    double iff = std::numeric_limits<double>::infinity();
    std::vector<const StabilityCondition*> pool;
    if (gepner) pool.push_back(&*gepner);
    for (const auto& s : sigmas) pool.push_back(&s);
    for (const auto* s : pool) {
        const double gap = std::abs(gldim(*s) - sdim);
        iff = std::min(iff, gepner_check(*s, sdim).verdict ? 1e-9 - gap : gap - 1e-9);
    }
    if (pool.empty()) iff = 0;
    line("gepner_iff", iff, std::to_string(pool.size()) + " conditions");

    int violations = 0, covered = 0;
    for (const auto& s : sigmas) {
        const double g = gldim(s);
        if (g > 1 + phase_tolerance) continue;
        ++covered;
        if (!s.all_semistable()) ++violations;
        if (g < 1 - phase_tolerance)
            for (const auto& e : cat->entries()) {
                const DerivedObject m({{e.id, 0}});
                if (!is_stable(s, e.id) || hom_poincare(*cat, m, m) != std::map<int, long long>{{0, 1}}) ++violations;
            }
    }
    line("low_dimension", -violations, std::to_string(covered) + " conditions with gldim <= 1");

    if (gepner) {
        const auto ec = extract_exceptional_collection(*gepner);
        const auto r = check_exceptional_collection(*cat, ec);
        line("exceptional_collection", r.ok() ? 0 : -1, std::to_string(ec.size()) + " objects");

        const auto growth = mass_growth(*gepner, {-2, 0, 2}, 6 * h);
        const EntropySeries series(*cat, 6 * h);
        double bound = std::numeric_limits<double>::infinity();
        for (const auto& [t, rate] : growth.rates) bound = std::min(bound, entropy_estimate(*cat, series, t) - rate + 1e-6);
        line("mass_growth", bound, "phase_upper=" + detail::fixed(growth.phase_upper));
    }
    return out;
}

inline std::vector<CheckLine> verify_suite(const std::vector<std::string>& quivers, std::uint64_t seed, int samples) {
    if (quivers.empty()) throw ConfigError("verify needs at least one quiver");
    if (samples < 0) throw ConfigError("sample count must be nonnegative");
    std::vector<CheckLine> out;
    for (const auto& name : quivers) {
        auto lines = verify_quiver(name, IndecCatalog::build(parse_quiver(name)), seed, samples);
        out.insert(out.end(), lines.begin(), lines.end());
    }
    return out;
}

} // namespace sdlab
