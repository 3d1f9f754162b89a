#pragma once

// Command-line front end. run() parses arguments, dispatches to one command,
// renders its report as JSON (canonical), CSV or markdown, and maps failures
// to exit codes: 0 ok, 1 verify found a failing check, 2 bad input, 3 the
// computation itself failed.

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

#include "curve.hpp"
#include "verify.hpp"

namespace sdlab::cli {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
};

struct Report {
    nlohmann::json json;
    Table table;
    bool failed = false;
};

inline std::string format_cell(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        char buf[64];
        const auto r = std::to_chars(buf, buf + sizeof buf, v.get<double>());
        return std::string(buf, r.ptr);
    }
    return v.dump();
}

inline std::string render(const Report& r, const std::string& format) {
    if (format == "json") return r.json.dump(2) + "\n";
    std::string out;
    if (format == "csv") {
        for (std::size_t i = 0; i < r.table.columns.size(); ++i) out += (i ? "," : "") + r.table.columns[i];
        out += "\n";
        for (const auto& row : r.table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::string cell = format_cell(row[i]);
                if (cell.find_first_of(",\"\n") != std::string::npos) {
                    std::string quoted = "\"";
                    for (char c : cell) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
                    cell = quoted + "\"";
                }
                out += (i ? "," : "") + cell;
            }
            out += "\n";
        }
        return out;
    }
    out += "|";
    for (const auto& c : r.table.columns) out += " " + c + " |";
    out += "\n|";
    for (std::size_t i = 0; i < r.table.columns.size(); ++i) out += "---|";
    out += "\n";
    for (const auto& row : r.table.rows) {
        out += "|";
        for (const auto& v : row) {
            std::string cell = format_cell(v);
            for (std::size_t p = 0; (p = cell.find('|', p)) != std::string::npos; p += 2) cell.replace(p, 1, "\\|");
            out += " " + cell + " |";
        }
        out += "\n";
    }
    return out;
}

inline std::filesystem::path cache_dir() {
    const char* env = std::getenv("SDLAB_CACHE");
    return env && *env ? std::filesystem::path(env) : std::filesystem::path(".sdlab-cache");
}

// Connected Dynkin presets come from the on-disk cache; anything else is built.
inline CatalogPtr full_catalog(const Quiver& q) {
    if (q.is_connected() && classify_dynkin(q)) return load_or_build_catalog(q, 0, cache_dir());
    return IndecCatalog::build(q);
}

inline std::vector<Complex> parse_charges(const std::string& text) {
    std::vector<Complex> z;
    std::stringstream all(text);
    std::string pair;
    while (std::getline(all, pair, ';')) {
        const auto comma = pair.find(',');
        if (comma == std::string::npos) throw ConfigError("charge '" + pair + "' is not of the form re,im");
        try {
            std::size_t used_re = 0, used_im = 0;
            const std::string re = pair.substr(0, comma), im = pair.substr(comma + 1);
            z.emplace_back(std::stod(re, &used_re), std::stod(im, &used_im));
            if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument(pair);
        } catch (const std::logic_error&) {
            throw ConfigError("charge '" + pair + "' is not of the form re,im");
        }
    }
    return z;
}

inline nlohmann::json complex_json(Complex z) { return {z.real(), z.imag()}; }

inline nlohmann::json summand_json(const IndecCatalog& cat, const Summand& s) {
    return {{"root", cat.entry(s.id).dims}, {"shift", s.shift}};
}

inline Table key_value(const nlohmann::json& j) {
    Table t{{"key", "value"}, {}};
    for (const auto& [k, v] : j.items())
        if (v.is_primitive()) t.rows.push_back({k, v});
    return t;
}

struct Options {
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;

    std::string quiver;
    int n_max = 60;
    std::vector<double> t_grid{0.0};
    std::vector<double> mass_t_grid{-2.0, 0.0, 2.0};
    std::vector<double> lambdas{1.0};
    bool series = false;

    // stability input: explicit charges, a JSON file, or the Gepner point
    std::string charges;
    std::string sigma_file;
    int count = 1;
    bool check = false;
    std::vector<int> vertices;

    int genus = 0;
    double beta = 0;
    std::vector<double> h_grid{1.0};

    std::vector<std::string> quivers{"A2", "A3", "D4"};
    int samples = 200;
};

inline Quiver need_quiver(const Options& o) {
    if (o.quiver.empty()) throw ConfigError("--quiver is required");
    return parse_quiver(o.quiver);
}

inline StabilityCondition load_sigma(const Options& o) {
    if (!o.charges.empty() && !o.sigma_file.empty()) throw ConfigError("give either --z or --sigma, not both");
    if (!o.sigma_file.empty()) {
        std::ifstream in(o.sigma_file);
        if (!in) throw ConfigError("cannot read " + o.sigma_file);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
            j.at("quiver");
            j.at("z_simples");
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("stability JSON: ") + e.what());
        }
        if (!o.quiver.empty() && !(parse_quiver(o.quiver) == parse_quiver(j["quiver"].get<std::string>())))
            throw ConfigError("--quiver disagrees with the quiver in " + o.sigma_file);
        try {
            return stability_from_json(j);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("stability JSON: ") + e.what());
        }
    }
    const auto cat = full_catalog(need_quiver(o));
    if (!o.charges.empty()) return make_stability(cat, parse_charges(o.charges));
    return gepner_construct(cat);
}

inline Rational serre_dimension_of(const IndecCatalog& cat) {
    const int h = cat.dynkin()->coxeter_number;
    Rational q(h - 2, h);
    q.canonicalize();
    return q;
}

inline Report cmd_quiver(const Options& o) {
    const Quiver q = need_quiver(o);
    Report r;
    auto& j = r.json;
    j["quiver"] = q.to_text();
    j["vertices"] = q.vertex_count();
    j["arrows"] = static_cast<int>(q.arrows().size());
    j["connected"] = q.is_connected();
    const auto ed = coxeter_matrix(q);
    auto rows = [](const IntMatrix& m) {
        nlohmann::json out = nlohmann::json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
            out.push_back(row);
        }
        return out;
    };
    j["euler_matrix"] = rows(euler_matrix(q));
    j["coxeter_matrix"] = rows(ed.coxeter);
    const auto dyn = q.is_connected() ? classify_dynkin(q) : std::nullopt;
    if (dyn) {
        j["dynkin"] = dyn->label();
        j["coxeter_number"] = dyn->coxeter_number;
        const auto cat = full_catalog(q);
        j["serre_dimension"] = to_string(serre_dimension_of(*cat));
        j["indecomposables"] = cat->size();
        auto& roots = j["positive_roots"] = nlohmann::json::array();
        for (const auto& e : cat->entries()) roots.push_back(e.dims);
        r.table.columns = {"root", "projective", "injective"};
        for (const auto& e : cat->entries()) r.table.rows.push_back({nlohmann::json(e.dims).dump(), e.is_projective, e.is_injective});
    } else {
        j["dynkin"] = nullptr;
        r.table = key_value(j);
    }
    return r;
}

inline CatalogPtr series_catalog(const Quiver& q, int n_max) {
    if (q.is_connected() && classify_dynkin(q)) return full_catalog(q);
    return entropy_catalog(q, n_max);
}

inline Report cmd_entropy(const Options& o) {
    const Quiver q = need_quiver(o);
    detail::check_n_max(o.n_max, 4, "entropy");
    if (o.t_grid.empty()) throw EmptyGrid("t grid is empty");
    const auto cat = series_catalog(q, o.n_max);
    const EntropySeries series(*cat, minimum_series_length(*cat, o.n_max));
    Report r;
    r.json["quiver"] = q.to_text();
    r.json["n_max"] = o.n_max;
    if (o.series) {
        r.table.columns = {"n", "m", "dim"};
        auto& rows = r.json["series"] = nlohmann::json::array();
        for (int n = 0; n <= o.n_max; ++n)
            for (const auto& [m, d] : series.poincare()[static_cast<std::size_t>(n)]) {
                rows.push_back({{"n", n}, {"m", m}, {"dim", d}});
                r.table.rows.push_back({n, m, d});
            }
        return r;
    }
    r.table.columns = {"t", "h_t"};
    auto& est = r.json["estimates"] = nlohmann::json::array();
    for (double t : o.t_grid) {
        const double h = entropy_estimate(*cat, series, t);
        est.push_back({{"t", t}, {"h_t", h}});
        r.table.rows.push_back({t, h});
    }
    if (o.t_grid.size() >= 3) {
        const auto p = entropy_profile(*cat, series, o.t_grid);
        r.json["profile"] = {{"slope", p.slope},
                             {"intercept", p.intercept},
                             {"residual", p.residual},
                             {"c_hat", complex_json(p.c_hat)}};
    }
    return r;
}

inline Report cmd_sdim(const Options& o) {
    const Quiver q = need_quiver(o);
    detail::check_n_max(o.n_max, 10, "sdim");
    const auto cat = series_catalog(q, o.n_max);
    const auto d = sdim_estimate(*cat, EntropySeries(*cat, o.n_max));
    Report r;
    r.json["quiver"] = q.to_text();
    r.json["n_max"] = o.n_max;
    r.json["exact"] = d.exact ? nlohmann::json(to_string(*d.exact)) : nlohmann::json(nullptr);
    r.json["upper_est"] = d.upper;
    r.json["lower_est"] = d.lower;
    r.table = key_value(r.json);
    return r;
}

inline Report cmd_volume(const Options& o) {
    const Quiver q = need_quiver(o);
    detail::check_n_max(o.n_max, 4, "volume");
    if (o.lambdas.empty()) throw EmptyGrid("lambda list is empty");
    for (double l : o.lambdas)
        if (!(l > 0)) throw ConfigError("volume needs lambda > 0");
    const auto cat = series_catalog(q, o.n_max);
    const EntropySeries series(*cat, minimum_series_length(*cat, o.n_max));
    Report r;
    r.json["quiver"] = q.to_text();
    r.json["n_max"] = o.n_max;
    r.table.columns = {"lambda", "volume"};
    auto& rows = r.json["volumes"] = nlohmann::json::array();
    for (double l : o.lambdas) {
        const double v = volume(*cat, series, l);
        rows.push_back({{"lambda", l}, {"volume", v}});
        r.table.rows.push_back({l, v});
    }
    return r;
}

inline Report cmd_gldim(const Options& o) {
    const auto s = load_sigma(o);
    Report r;
    r.json["sigma"] = to_json(s);
    r.json["gldim"] = gldim(s);
    r.json["standard_heart"] = s.standard_heart();
    r.json["all_semistable"] = s.all_semistable();
    r.table = key_value(r.json);
    return r;
}

inline Report cmd_sample(const Options& o) {
    if (o.count < 1) throw ConfigError("--count must be positive");
    const auto cat = full_catalog(need_quiver(o));
    Report r;
    r.table.columns = {"seed", "gldim", "z_simples"};
    auto& rows = r.json["samples"] = nlohmann::json::array();
    for (int k = 0; k < o.count; ++k) {
        const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(k);
        const auto s = sample_stability(cat, seed);
        const auto j = to_json(s);
        rows.push_back({{"seed", seed}, {"sigma", j}, {"gldim", gldim(s)}});
        r.table.rows.push_back({seed, gldim(s), j["z_simples"].dump()});
    }
    return r;
}

inline Report cmd_gepner(const Options& o) {
    const auto s = load_sigma(o);
    if (!s.cat().dynkin()) throw NotDynkin("Gepner points need a connected Dynkin quiver");
    const Rational mu = serre_dimension_of(s.cat());
    Report r;
    r.json["sigma"] = to_json(s);
    r.json["gldim"] = gldim(s);
    r.json["mu"] = to_string(mu);
    if (o.check) {
        const auto rep = gepner_check(s, mu.get_d());
        r.json["report"] = {{"mu", rep.mu},
                            {"charge_match", rep.charge_match},
                            {"slicing_match", rep.slicing_match},
                            {"verdict", rep.verdict}};
    }
    r.table = key_value(r.json);
    if (o.check) {
        for (const auto& [k, v] : r.json["report"].items()) r.table.rows.push_back({"report." + k, v});
    }
    return r;
}

inline Report cmd_fec(const Options& o) {
    const auto s = load_sigma(o);
    const auto ec = extract_exceptional_collection(s);
    const auto check = check_exceptional_collection(s.cat(), ec);
    Report r;
    r.json["sigma"] = to_json(s);
    r.json["gldim"] = gldim(s);
    auto& items = r.json["collection"] = nlohmann::json::array();
    r.table.columns = {"index", "root", "shift"};
    for (std::size_t i = 0; i < ec.size(); ++i) {
        items.push_back(summand_json(s.cat(), ec[i]));
        r.table.rows.push_back({i, nlohmann::json(s.cat().entry(ec[i].id).dims).dump(), ec[i].shift});
    }
    r.json["unitriangular"] = check.unitriangular;
    r.json["degree_zero_homs"] = check.degree_zero;
    r.json["spans_lattice"] = check.spans;
    return r;
}

inline Report cmd_restrict(const Options& o) {
    if (o.vertices.empty()) throw ConfigError("--vertices is required");
    const auto s = load_sigma(o);
    std::vector<int> zero_based;
    for (int v : o.vertices) {
        if (v < 1 || v > s.cat().quiver().vertex_count()) throw ConfigError("vertex " + std::to_string(v) + " out of range");
        zero_based.push_back(v - 1);
    }
    const auto sub = restrict_to_subquiver(s, zero_based);
    Report r;
    r.json["sigma"] = to_json(s);
    r.json["gldim"] = gldim(s);
    r.json["restricted"] = to_json(sub);
    r.json["restricted_gldim"] = gldim(sub);
    r.table = key_value(r.json);
    return r;
}

inline Report cmd_mass(const Options& o) {
    if (o.mass_t_grid.empty()) throw EmptyGrid("t grid is empty");
    const auto s = load_sigma(o);
    const auto g = mass_growth(s, o.mass_t_grid, o.n_max);
    Report r;
    r.json["sigma"] = to_json(s);
    r.json["n_max"] = o.n_max;
    r.json["phase_upper"] = g.phase_upper;
    r.json["phase_lower"] = g.phase_lower;
    auto& rows = r.json["rates"] = nlohmann::json::array();
    r.table.columns = {"t", "h_sigma_t"};
    for (const auto& [t, h] : g.rates) {
        rows.push_back({{"t", t}, {"h_sigma_t", h}});
        r.table.rows.push_back({t, h});
    }
    return r;
}

inline Report cmd_curve(const Options& o) {
    const auto rows = curve_inf_scan(o.genus, o.h_grid, o.beta);
    Report r;
    r.json["genus"] = o.genus;
    r.json["beta"] = o.beta;
    r.json["exact"] = o.genus <= 1;
    auto& jr = r.json["rows"] = nlohmann::json::array();
    r.table.columns = {"H", "lower", "upper"};
    for (const auto& row : rows) {
        jr.push_back({{"H", row.h}, {"lower", row.lower}, {"upper", row.upper}});
        r.table.rows.push_back({row.h, row.lower, row.upper});
    }
    return r;
}

// Preset lists split on commas; a full quiver text is taken whole.
inline std::vector<std::string> split_quiver_list(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& item : raw) {
        if (item.find(':') != std::string::npos) {
            out.push_back(item);
            continue;
        }
        std::stringstream in(item);
        std::string name;
        while (std::getline(in, name, ','))
            if (!detail::strip_spaces(name).empty()) out.push_back(detail::strip_spaces(name));
    }
    return out;
}

inline Report cmd_verify(const Options& o) {
    const auto lines = verify_suite(split_quiver_list(o.quivers), o.seed, o.samples);
    Report r;
    r.table.columns = {"quiver", "check", "status", "margin", "detail"};
    auto& checks = r.json["checks"] = nlohmann::json::array();
    bool all = true;
    for (const auto& l : lines) {
        all = all && l.pass;
        checks.push_back({{"quiver", l.quiver},
                          {"check", l.check},
                          {"pass", l.pass},
                          {"margin", l.margin},
                          {"detail", l.detail}});
        r.table.rows.push_back({l.quiver, l.check, l.pass ? "PASS" : "FAIL", l.margin, l.detail});
    }
    r.json["seed"] = o.seed;
    r.json["samples"] = o.samples;
    r.json["passed"] = all;
    r.failed = !all;
    return r;
}

inline bool validation_kind(const std::string& kind) {
    static const std::set<std::string> kinds{"ConfigError",      "ParseError",   "CyclicQuiver",
                                             "DimensionMismatch", "NotAStabilityFunction", "EmptyGrid",
                                             "NotConnectedSubset", "NotARoot",    "QuiverMismatch",
                                             "ZeroClass",        "GenusTooSmall"};
    return kinds.count(kind) > 0;
}

inline void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Serre dimension and stability lab"};
    app.name("sdlab");
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--seed", o.seed, "seed for sampling");
    app.add_option("--format", o.format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));
    app.add_option("--out", o.out, "write the report here instead of stdout");

    auto quiver_opt = [&](CLI::App* c) { c->add_option("--quiver", o.quiver, "preset or vertices:<n>; arrows:<s>-><t>,..."); };
    auto sigma_opts = [&](CLI::App* c) {
        quiver_opt(c);
        c->add_option("--z", o.charges, "charges of the simples: re,im;re,im;...");
        c->add_option("--sigma", o.sigma_file, "stability condition JSON file");
    };

    std::function<Report()> action;
    auto bind = [&](CLI::App* c, std::function<Report()> f) { c->callback([&action, f] { action = f; }); };

    auto* quiver = app.add_subcommand("quiver", "quiver invariants and indecomposables");
    quiver_opt(quiver);
    bind(quiver, [&] { return cmd_quiver(o); });

    auto* entropy = app.add_subcommand("entropy", "entropy of the Serre functor on a t grid");
    quiver_opt(entropy);
    entropy->add_option("--nmax", o.n_max)->capture_default_str();
    entropy->add_option("--t-grid", o.t_grid)->delimiter(',');
    entropy->add_flag("--series", o.series, "emit the graded Hom dimensions instead");
    bind(entropy, [&] { return cmd_entropy(o); });

    auto* sdim = app.add_subcommand("sdim", "upper and lower Serre dimensions");
    quiver_opt(sdim);
    sdim->add_option("--nmax", o.n_max)->capture_default_str();
    bind(sdim, [&] { return cmd_sdim(o); });

    auto* vol = app.add_subcommand("volume", "volume exp(h_{log lambda})");
    quiver_opt(vol);
    vol->add_option("--nmax", o.n_max)->capture_default_str();
    vol->add_option("--lambda", o.lambdas)->delimiter(',');
    bind(vol, [&] { return cmd_volume(o); });

    auto* stab = app.add_subcommand("stab", "stability conditions on mod of a Dynkin quiver");
    stab->require_subcommand(1, 1);
    stab->fallthrough();

    auto* sg = stab->add_subcommand("gldim", "global dimension of a stability condition");
    sigma_opts(sg);
    bind(sg, [&] { return cmd_gldim(o); });

    auto* ss = stab->add_subcommand("sample", "seeded random stability conditions");
    quiver_opt(ss);
    ss->add_option("--count", o.count)->capture_default_str();
    bind(ss, [&] { return cmd_sample(o); });

    auto gepner_setup = [&](CLI::App* c) {
        sigma_opts(c);
        c->add_flag("--check", o.check, "compare S.sigma with sigma.mu");
        bind(c, [&] { return cmd_gepner(o); });
    };
    gepner_setup(stab->add_subcommand("gepner", "Gepner point (or check a given sigma)"));
    gepner_setup(app.add_subcommand("gepner", "same as stab gepner"));

    auto* fec = stab->add_subcommand("fec", "full exceptional collection from a sigma with gldim < 1");
    sigma_opts(fec);
    bind(fec, [&] { return cmd_fec(o); });

    auto* res = stab->add_subcommand("restrict", "restrict sigma to a full subquiver");
    sigma_opts(res);
    res->add_option("--vertices", o.vertices, "1-based vertices")->delimiter(',');
    bind(res, [&] { return cmd_restrict(o); });

    auto* mass = stab->add_subcommand("mass", "mass growth of S^n G");
    sigma_opts(mass);
    mass->add_option("--nmax", o.n_max)->capture_default_str();
    mass->add_option("--t-grid", o.mass_t_grid)->delimiter(',');
    bind(mass, [&] { return cmd_mass(o); });

    auto* curve = app.add_subcommand("curve", "gldim of sigma_{beta,H} on a genus g curve");
    curve->add_option("--genus", o.genus)->required();
    curve->add_option("--beta", o.beta)->capture_default_str();
    curve->add_option("--h-grid", o.h_grid)->delimiter(',');
    bind(curve, [&] { return cmd_curve(o); });

    auto* verify = app.add_subcommand("verify", "property battery over Dynkin presets");
    verify->add_option("--quivers", o.quivers, "comma-separated presets; repeat the flag for vertices:... text");
    verify->add_option("--samples", o.samples)->capture_default_str();
    bind(verify, [&] { return cmd_verify(o); });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error(err, "ConfigError", e.what());
        return 2;
    }

    try {
        if (!action) throw ConfigError("no command given");
        const Report r = action();
        const std::string text = render(r, o.format);
        if (o.out.empty()) {
            out << text;
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) throw ConfigError("cannot write " + o.out);
            f << text;
            if (!f) throw ConfigError("cannot write " + o.out);
        }
        return r.failed ? 1 : 0;
    } catch (const Error& e) {
        emit_error(err, e.kind(), e.what());
        return validation_kind(e.kind()) ? 2 : 3;
    } catch (const std::exception& e) {
        emit_error(err, "InternalError", e.what());
        return 3;
    }
}

} // namespace sdlab::cli
