#pragma once

// Numerical stability conditions Z(E) = -deg E + (beta + iH) rk E on a smooth
// projective curve of genus g, with the gldim values and bounds they admit.

#include <cmath>
#include <cstdio>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sdlab {

struct CurveStability {
    int genus = 0;
    double beta = 0;
    double h = 1;
};

struct NumericalClass {
    long long rank = 0;
    long long degree = 0;
};

struct CurveCharge {
    std::complex<double> z;
    double phase = 0;
};

struct GldimInterval {
    double lower = 0;
    double upper = 0;
    bool exact() const noexcept { return lower == upper; }
};

struct CurveScanRow {
    double h = 0;
    double lower = 0;
    double upper = 0;
};

namespace detail {

inline void check_curve(const CurveStability& cs) {
    if (cs.genus < 0) throw ConfigError("genus must be nonnegative");
    if (!(cs.h > 0) || !std::isfinite(cs.h)) throw ConfigError("H must be positive");
    if (!std::isfinite(cs.beta)) throw ConfigError("beta must be finite");
}

} // namespace detail

// arccot onto (0, pi).
inline double arccot(double x) { return std::numbers::pi / 2 - std::atan(x); }

inline CurveCharge curve_charge(const CurveStability& cs, const NumericalClass& c) {
    detail::check_curve(cs);
    if (c.rank == 0 && c.degree == 0) throw ZeroClass("class (0,0) has no phase");
    if (c.rank < 0 || (c.rank == 0 && c.degree < 0))
        throw ConfigError("class must have positive rank or be effective torsion");
    const double r = static_cast<double>(c.rank), d = static_cast<double>(c.degree);
    CurveCharge out;
    out.z = {-d + cs.beta * r, cs.h * r};
    // Torsion sits on the negative real axis; std::arg would still give pi there,
    // but this keeps phase 1 exact.
    out.phase = c.rank == 0 ? 1.0 : std::atan2(out.z.imag(), out.z.real()) / std::numbers::pi;
    return out;
}

// Lower bound from the pair O_C, omega_C; upper bound from the largest phase
// shift a line bundle can suffer under tensoring with omega_C.
inline GldimInterval curve_gldim_bounds(const CurveStability& cs) {
    detail::check_curve(cs);
    if (cs.genus < 2) throw GenusTooSmall("gldim bounds need genus >= 2");
    const double canonical = 2.0 * cs.genus - 2;
    GldimInterval out;
    out.lower = 1 + (arccot((cs.beta - canonical) / cs.h) - arccot(cs.beta / cs.h)) / std::numbers::pi;
    out.upper = 1 + 2 / std::numbers::pi * std::atan((cs.genus - 1) / cs.h);
    return out;
}

// Genus 0 and 1 give exactly 1; higher genus gives the certified interval.
inline GldimInterval curve_gldim(const CurveStability& cs) {
    detail::check_curve(cs);
    if (cs.genus <= 1) return {1.0, 1.0};
    return curve_gldim_bounds(cs);
}

inline std::vector<CurveScanRow> curve_inf_scan(int genus, const std::vector<double>& h_grid, double beta) {
    if (h_grid.empty()) throw EmptyGrid("H grid is empty");
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        if (!(h_grid[i] > 0)) throw ConfigError("H grid must be positive");
        if (i > 0 && !(h_grid[i] > h_grid[i - 1])) throw ConfigError("H grid must be strictly increasing");
    }
    std::vector<CurveScanRow> rows;
    for (double h : h_grid) {
        const auto g = curve_gldim({genus, beta, h});
        rows.push_back({h, g.lower, g.upper});
    }
    return rows;
}

inline std::string curve_scan_csv(const std::vector<CurveScanRow>& rows) {
    std::string out = "H,lower,upper\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.h, r.lower, r.upper);
        out += buf;
    }
    return out;
}

} // namespace sdlab
