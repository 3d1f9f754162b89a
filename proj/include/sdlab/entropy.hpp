#pragma once

// Entropy of the Serre functor from the graded Hom dimensions
// dim Hom(G, S^n G[m]), Serre dimensions, volumes and the linear profile.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "derived.hpp"

namespace sdlab {

// Largest total dimension a non-Dynkin catalog may reach before the entropy
// routines refuse to build it.
inline constexpr double default_dimension_budget = 1e5;

class EntropySeries {
public:
    // poincare()[n] maps m -> dim Hom(G, S^n G[m]) for n = 0..n_max.
    EntropySeries(const IndecCatalog& cat, int n_max) {
        if (n_max < 0) throw ConfigError("n_max must be nonnegative");
        const DerivedObject g = standard_generator(cat);
        DerivedObject x = g;
        try {
            for (int n = 0; n <= n_max; ++n) {
                if (n > 0) x = serre_apply(cat, x, 1);
                poincare_.push_back(hom_poincare(cat, g, x));
                if (poincare_.back().empty()) throw ZeroObject("Hom(G, S^n G[*]) vanished at n = " + std::to_string(n));
            }
        } catch (const CatalogMiss& e) {
            throw BudgetExceeded(std::string("catalog too shallow for the requested n_max: ") + e.what());
        }
    }

    int n_max() const noexcept { return static_cast<int>(poincare_.size()) - 1; }
    const std::vector<std::map<int, long long>>& poincare() const noexcept { return poincare_; }

    // -min / -max of the degrees m with Hom(G, S^n G[m]) != 0.
    int m_minus(int n) const { return -poincare_.at(static_cast<std::size_t>(n)).begin()->first; }
    int m_plus(int n) const { return -poincare_.at(static_cast<std::size_t>(n)).rbegin()->first; }

    // log sum_m dim Hom(G, S^n G[m]) e^{-mt}, via log-sum-exp.
    double log_f(int n, double t) const {
        const auto& p = poincare_.at(static_cast<std::size_t>(n));
        double top = -std::numeric_limits<double>::infinity();
        for (const auto& [m, d] : p) top = std::max(top, std::log(static_cast<double>(d)) - m * t);
        double s = 0;
        for (const auto& [m, d] : p) s += std::exp(std::log(static_cast<double>(d)) - m * t - top);
        return top + std::log(s);
    }

    std::string to_csv() const {
        std::string out = "n,m,dim\n";
        for (std::size_t n = 0; n < poincare_.size(); ++n)
            for (const auto& [m, d] : poincare_[n])
                out += std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(d) + "\n";
        return out;
    }

private:
    std::vector<std::map<int, long long>> poincare_;
};

struct SerreDims {
    double upper = 0;
    double lower = 0;
    std::optional<Rational> exact;
};

struct EntropyProfile {
    double slope = 0;
    double intercept = 0;
    double residual = 0;
    std::complex<double> c_hat;
    std::vector<std::pair<double, double>> samples; // (t, h_t)
};

namespace detail {

// Endpoints n0 < n1 = n0 + h of the exact difference quotient for Dynkin q.
inline std::pair<int, int> period_window(int h, int n_max) {
    const int n1 = std::max(h, h * (n_max / h));
    return {n1 - h, n1};
}

// Least-squares fit of y ~ a + b/n + c log(n)/n; returns a.
inline double extrapolate_constant(const std::vector<int>& ns, const std::vector<double>& ys) {
    const auto rows = static_cast<Eigen::Index>(ns.size());
    Eigen::MatrixXd a(rows, 3);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double n = ns[static_cast<std::size_t>(i)];
        a(i, 0) = 1;
        a(i, 1) = 1 / n;
        a(i, 2) = std::log(n) / n;
        y(i) = ys[static_cast<std::size_t>(i)];
    }
    return a.colPivHouseholderQr().solve(y)(0);
}

inline void check_n_max(int n_max, int minimum, const char* op) {
    if (n_max < minimum)
        throw ConfigError(std::string(op) + " needs n_max >= " + std::to_string(minimum));
}

} // namespace detail

inline double entropy_estimate(const IndecCatalog& cat, const EntropySeries& series, double t) {
    const int n_max = series.n_max();
    if (cat.dynkin()) {
        const int h = cat.dynkin()->coxeter_number;
        const auto [n0, n1] = detail::period_window(h, n_max);
        if (n1 > n_max) throw ConfigError("series shorter than one Coxeter period");
        return (series.log_f(n1, t) - series.log_f(n0, t)) / h;
    }
    std::vector<int> ns;
    std::vector<double> ys;
    for (int n = std::max(1, n_max / 2); n <= n_max; ++n) {
        ns.push_back(n);
        ys.push_back(series.log_f(n, t) / n);
    }
    if (ns.size() < 3) throw ConfigError("tail window too short to extrapolate");
    return detail::extrapolate_constant(ns, ys);
}

// Catalog deep enough for n_max applications of S, refusing non-Dynkin
// quivers whose modules would exceed `budget` in total dimension.
inline CatalogPtr entropy_catalog(const Quiver& q, int n_max, double budget = default_dimension_budget) {
    if (q.is_connected() && classify_dynkin(q)) return IndecCatalog::build(q);
    const EulerData ed = coxeter_matrix(q);
    const Eigen::MatrixXd phi = ed.coxeter.cast<double>();
    for (int v = 0; v < q.vertex_count(); ++v) {
        const IntVector inj = injective_rep(q, v).dims;
        Eigen::VectorXd d(q.vertex_count());
        for (int i = 0; i < q.vertex_count(); ++i) d(i) = static_cast<double>(inj[i]);
        for (int k = 0; k <= n_max; ++k, d = phi * d)
            if (d.cwiseAbs().sum() > budget) throw BudgetExceeded("module dimensions exceed the budget before n_max");
    }
    return IndecCatalog::build(q, n_max + 1);
}

inline int minimum_series_length(const IndecCatalog& cat, int n_max) {
    return cat.dynkin() ? std::max(n_max, cat.dynkin()->coxeter_number) : n_max;
}

inline double entropy_estimate(const Quiver& q, double t, int n_max) {
    detail::check_n_max(n_max, 4, "entropy_estimate");
    const auto cat = entropy_catalog(q, n_max);
    return entropy_estimate(*cat, EntropySeries(*cat, minimum_series_length(*cat, n_max)), t);
}

inline SerreDims sdim_estimate(const IndecCatalog& cat, const EntropySeries& series) {
    const int n_max = series.n_max();
    SerreDims out;
    out.upper = out.lower = -std::numeric_limits<double>::infinity();
    for (int n = std::max(1, n_max / 2); n <= n_max; ++n) {
        out.upper = std::max(out.upper, static_cast<double>(series.m_minus(n)) / n);
        out.lower = std::max(out.lower, static_cast<double>(series.m_plus(n)) / n);
    }
    if (cat.dynkin()) {
        const int h = cat.dynkin()->coxeter_number;
        out.exact = Rational(h - 2, h);
        out.exact->canonicalize();
    }
    return out;
}

inline SerreDims sdim_estimate(const Quiver& q, int n_max) {
    detail::check_n_max(n_max, 10, "sdim_estimate");
    const auto cat = entropy_catalog(q, n_max);
    return sdim_estimate(*cat, EntropySeries(*cat, n_max));
}

inline double volume(const IndecCatalog& cat, const EntropySeries& series, double lambda) {
    if (!(lambda > 0)) throw ConfigError("volume needs lambda > 0");
    return std::exp(entropy_estimate(cat, series, std::log(lambda)));
}

inline double volume(const Quiver& q, double lambda, int n_max) {
    if (!(lambda > 0)) throw ConfigError("volume needs lambda > 0");
    return std::exp(entropy_estimate(q, std::log(lambda), n_max));
}

inline EntropyProfile entropy_profile(const IndecCatalog& cat, const EntropySeries& series,
                                      const std::vector<double>& t_grid) {
    if (t_grid.size() < 3) throw ConfigError("entropy_profile needs at least three t values");
    EntropyProfile p;
    for (double t : t_grid) p.samples.emplace_back(t, entropy_estimate(cat, series, t));
    const auto rows = static_cast<Eigen::Index>(t_grid.size());
    Eigen::MatrixXd a(rows, 2);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        a(i, 0) = p.samples[static_cast<std::size_t>(i)].first;
        a(i, 1) = 1;
        y(i) = p.samples[static_cast<std::size_t>(i)].second;
    }
    const Eigen::Vector2d fit = a.colPivHouseholderQr().solve(y);
    p.slope = fit(0);
    p.intercept = fit(1);
    for (const auto& [t, h] : p.samples) p.residual = std::max(p.residual, std::abs(h - (p.slope * t + p.intercept)));
    p.c_hat = {p.slope, p.intercept / std::numbers::pi};
    return p;
}

inline EntropyProfile entropy_profile(const Quiver& q, const std::vector<double>& t_grid, int n_max) {
    detail::check_n_max(n_max, 4, "entropy_profile");
    const auto cat = entropy_catalog(q, n_max);
    return entropy_profile(*cat, EntropySeries(*cat, minimum_series_length(*cat, n_max)), t_grid);
}

} // namespace sdlab
