// qft: command-line front end for the floating-index q-Fourier transform
// library. Subcommands: transform, sweep, counterexample, invert, selfcheck.
// Exit codes: 0 success, 1 computation failure, 2 usage error.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qft/qft.hpp"

namespace {

using json = nlohmann::ordered_json;
using qft::Complex;
using qft::FunctionSpec;

std::string fmt(double v) { return qft::detail::format_double(v); }

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string error_kind(const qft::Error& e) {
    if (dynamic_cast<const qft::ConvergenceError*>(&e)) return "convergence";
    if (dynamic_cast<const qft::TruncationError*>(&e)) return "truncation";
    if (dynamic_cast<const qft::SurfaceError*>(&e)) return "surface";
    if (dynamic_cast<const qft::SliceError*>(&e)) return "slice";
    if (dynamic_cast<const qft::BoundaryConvergenceError*>(&e)) return "boundary-convergence";
    if (dynamic_cast<const qft::FallbackRequiredError*>(&e)) return "fallback-required";
    if (dynamic_cast<const qft::DegenerateCaseError*>(&e)) return "degenerate-case";
    if (dynamic_cast<const qft::NoPartnerError*>(&e)) return "no-partner";
    if (dynamic_cast<const qft::PoleError*>(&e)) return "pole";
    if (dynamic_cast<const qft::DomainError*>(&e)) return "domain";
    if (dynamic_cast<const qft::NonFiniteResultError*>(&e)) return "non-finite";
    if (dynamic_cast<const qft::InvalidInputError*>(&e)) return "invalid-input";
    return "error";
}

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int count = 0;

    std::string echo() const {
        return fmt(lo) + ":" + fmt(hi) + ":" + std::to_string(count);
    }
    std::vector<double> expand() const {
        std::vector<double> v(count);
        if (count == 1) {
            v[0] = lo;
            return v;
        }
        // endpoint-weighted form: symmetric ranges expand to exactly
        // symmetric grids, which the Hermitian checks rely on
        for (int i = 0; i < count; ++i)
            v[i] = (lo * (count - 1 - i) + hi * i) / double(count - 1);
        return v;
    }
};

double parse_number(const std::string& field, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError(field + ": unparseable number '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

GridSpec parse_grid(const std::string& field, const std::string& s) {
    const auto parts = split(s, ':');
    if (parts.size() != 3)
        throw UsageError(field + ": expected min:max:count, got '" + s + "'");
    GridSpec g;
    g.lo = parse_number(field, parts[0]);
    g.hi = parse_number(field, parts[1]);
    const double c = parse_number(field, parts[2]);
    g.count = static_cast<int>(c);
    if (g.count < 1 || g.count != c)
        throw UsageError(field + ": count must be a positive integer");
    if (g.count == 1 && g.lo != g.hi)
        throw UsageError(field + ": a single-point grid needs min == max");
    if (g.count > 1 && !(g.lo < g.hi))
        throw UsageError(field + ": needs min < max");
    return g;
}

std::vector<double> parse_eps(const std::string& s) {
    std::vector<double> eps;
    for (const auto& p : split(s, ',')) eps.push_back(parse_number("--eps", p));
    if (eps.empty()) throw UsageError("--eps: empty sequence");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0)) throw UsageError("--eps: values must be positive");
        if (i > 0 && !(eps[i] < eps[i - 1]))
            throw UsageError("--eps: values must be strictly decreasing");
    }
    return eps;
}

std::string eps_echo(const std::vector<double>& eps) {
    std::string s;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (i) s += ",";
        s += fmt(eps[i]);
    }
    return s;
}

FunctionSpec read_tabulated(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("--fn: cannot open tabulated file '" + path + "'");
    std::vector<double> xs, ys;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& ch : line)
            if (ch == ',' || ch == '\t') ch = ' ';
        std::istringstream ls(line);
        double x, y;
        if (!(ls >> x >> y))
            throw UsageError("--fn: bad tabulated line '" + line + "'");
        xs.push_back(x);
        ys.push_back(y);
    }
    return FunctionSpec::tabulated(std::move(xs), std::move(ys));
}

FunctionSpec parse_fn(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw UsageError("--fn: expected kind:args, got '" + s + "'");
    const std::string kind = s.substr(0, colon);
    const std::string rest = s.substr(colon + 1);
    const auto args = split(rest, ',');
    auto num = [&](std::size_t i) { return parse_number("--fn", args[i]); };

    try {
        if (kind == "indicator") {
            if (args.size() != 2) throw UsageError("--fn: indicator:lo,hi");
            return FunctionSpec::indicator(num(0), num(1));
        }
        if (kind == "powerlaw") {
            if (args.size() != 4) throw UsageError("--fn: powerlaw:a,b,beta,lambda");
            return FunctionSpec::power_law(qft::make_window(num(0), num(1), num(2), num(3)));
        }
        if (kind == "powerlaw-hilhorst") {
            if (args.size() != 3) throw UsageError("--fn: powerlaw-hilhorst:a,b,q");
            const double a = num(0), b = num(1), q = num(2);
            return FunctionSpec::power_law(
                qft::make_window(a, b, 1.0 / (q - 1.0), qft::hilhorst_lambda(a, b, q)));
        }
        if (kind == "qgauss") {
            if (args.size() != 3) throw UsageError("--fn: qgauss:q,width,radius");
            return FunctionSpec::q_gaussian_fixture(num(0), num(1), num(2));
        }
        if (kind == "tabulated") {
            return read_tabulated(rest);
        }
    } catch (const qft::InvalidInputError& e) {
        throw UsageError(std::string("--fn: ") + e.what());
    } catch (const qft::DomainError& e) {
        throw UsageError(std::string("--fn: ") + e.what());
    }
    throw UsageError("--fn: unknown kind '" + kind + "'");
}

struct RunConfig {
    std::string command;
    std::string fn;
    GridSpec k{-10.0, 10.0, 401};
    GridSpec q{1.0, 1.9, 10};
    GridSpec x{0.0, 0.0, 0};   // resolved per input when unset
    bool x_set = false;
    std::vector<double> eps{1e-1, 1e-2, 1e-3};
    double tol = 1e-9;
    std::string out;
    std::string format;        // csv | json
};

json provenance(const RunConfig& cfg) {
    json p;
    p["tool"] = std::string("qft ") + qft::kVersion;
    p["command"] = cfg.command;
    if (!cfg.fn.empty()) p["fn"] = cfg.fn;
    p["k"] = cfg.k.echo();
    if (cfg.command == "transform" || cfg.command == "sweep" ||
        cfg.command == "counterexample")
        p["q"] = cfg.q.echo();
    if (cfg.command == "invert") {
        p["x"] = cfg.x.echo();
        p["eps"] = eps_echo(cfg.eps);
    }
    p["tol"] = cfg.tol;
    return p;
}

void provenance_comments(std::ostream& os, const RunConfig& cfg) {
    os << "# qft " << qft::kVersion << "\n";
    os << "# command: " << cfg.command << "\n";
    if (!cfg.fn.empty()) os << "# fn: " << cfg.fn << "\n";
    os << "# k: " << cfg.k.echo() << "\n";
    if (cfg.command == "transform" || cfg.command == "sweep")
        os << "# q: " << cfg.q.echo() << "\n";
    if (cfg.command == "invert") {
        os << "# x: " << cfg.x.echo() << "\n";
        os << "# eps: " << eps_echo(cfg.eps) << "\n";
    }
    os << "# tol: " << fmt(cfg.tol) << "\n";
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("--out: path '" + path + "' is not writable");
    return out;
}

// ---------------------------------------------------------------- transform

int run_transform(RunConfig cfg) {
    const FunctionSpec f = parse_fn(cfg.fn);
    qft::QftOptions opt;
    opt.rel_tol = cfg.tol;
    const auto surface = qft::qft_surface(f, cfg.k.expand(), cfg.q.expand(), opt);

    auto out = open_output(cfg.out);
    if (cfg.format == "csv") {
        provenance_comments(out, cfg);
        out << "k,q,re_F,im_F,err_est\n";
        for (std::size_t iq = 0; iq < surface.q_grid.size(); ++iq)
            for (std::size_t ik = 0; ik < surface.k_grid.size(); ++ik) {
                const Complex v = surface.at(iq, ik);
                out << fmt(surface.k_grid[ik]) << "," << fmt(surface.q_grid[iq]) << ","
                    << fmt(v.real()) << "," << fmt(v.imag()) << ","
                    << fmt(surface.error_at(iq, ik)) << "\n";
            }
    } else {
        json doc;
        doc["provenance"] = provenance(cfg);
        doc["k_grid"] = surface.k_grid;
        doc["q_grid"] = surface.q_grid;
        json rows = json::array();
        for (std::size_t iq = 0; iq < surface.q_grid.size(); ++iq)
            for (std::size_t ik = 0; ik < surface.k_grid.size(); ++ik) {
                const Complex v = surface.at(iq, ik);
                rows.push_back({{"k", surface.k_grid[ik]},
                                {"q", surface.q_grid[iq]},
                                {"re_F", v.real()},
                                {"im_F", v.imag()},
                                {"err_est", surface.error_at(iq, ik)}});
            }
        doc["values"] = std::move(rows);
        out << doc.dump(2) << "\n";
    }
    std::cerr << "wrote " << cfg.out << " (" << surface.values.size() << " nodes)\n";
    return 0;
}

// ----------------------------------------------------------- counterexample

int run_counterexample(RunConfig cfg) {
    const auto w1 = qft::make_window(1.0, 2.0, 2.0, qft::hilhorst_lambda(1.0, 2.0, 1.5));
    const auto w2 = qft::degeneracy_partner(w1, 1.5, 1.1);
    qft::QftOptions opt;
    opt.rel_tol = cfg.tol;
    const auto rep =
        qft::separation_scan(w1, w2, cfg.q.expand(), cfg.k.expand(), opt);

    bool has_degenerate = false, has_separated = false;
    json verdicts = json::array();
    for (std::size_t i = 0; i < rep.q_probes.size(); ++i) {
        verdicts.push_back({{"q", rep.q_probes[i]},
                            {"max_gap", rep.max_gap[i]},
                            {"error_bound", rep.error_bound[i]},
                            {"verdict", qft::to_string(rep.verdicts[i])}});
        has_degenerate |= rep.verdicts[i] == qft::Verdict::Degenerate;
        has_separated |= rep.verdicts[i] == qft::Verdict::Separated;
    }
    json doc;
    doc["verdicts"] = std::move(verdicts);
    doc["fixtures"] = {rep.fixture1, rep.fixture2};
    doc["provenance"] = provenance(cfg);

    auto out = open_output(cfg.out);
    out << doc.dump(2) << "\n";
    std::cerr << "wrote " << cfg.out << "\n";

    if (!has_degenerate || !has_separated)
        throw qft::Error(
            "counterexample: expected one degenerate probe and at least one "
            "separated probe; inspect the report");
    return 0;
}

// ------------------------------------------------------------------ invert

int run_invert(RunConfig cfg) {
    const FunctionSpec f = parse_fn(cfg.fn);
    if (!cfg.x_set) {
        const auto s = f.support();
        cfg.x = GridSpec{s.lo - 0.5 * s.width(), s.hi + 0.5 * s.width(), 256};
    }
    qft::SliceOptions sopt;
    sopt.point.rel_tol = cfg.tol;

    const auto kg = cfg.k.expand();
    const auto xg = cfg.x.expand();
    const auto slice = qft::q1_slice(f, kg, cfg.eps, sopt);
    const auto rec = qft::inverse_transform(slice, xg);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + 1 < xg.size(); ++i) {
        const double h = 0.5 * (xg[i + 1] - xg[i]);
        for (std::size_t j = i; j <= i + 1; ++j) {
            num += h * std::pow(rec.values[j] - f(xg[j]), 2);
            den += h * f(xg[j]) * f(xg[j]);
        }
    }
    if (den == 0.0)
        throw qft::InvalidInputError("invert: input vanishes on the x grid");
    const double err = std::sqrt(num / den);

    auto out = open_output(cfg.out);
    if (cfg.format == "csv") {
        provenance_comments(out, cfg);
        out << "# roundtrip_error: " << fmt(err) << "\n";
        out << "# imag_residue: " << fmt(rec.imag_residue) << "\n";
        out << "x,f_true,f_recon\n";
        for (std::size_t i = 0; i < xg.size(); ++i)
            out << fmt(xg[i]) << "," << fmt(f(xg[i])) << "," << fmt(rec.values[i])
                << "\n";
    } else {
        json doc;
        doc["provenance"] = provenance(cfg);
        doc["roundtrip_error"] = err;
        doc["imag_residue"] = rec.imag_residue;
        doc["x"] = xg;
        json ft = json::array(), fr = json::array();
        for (std::size_t i = 0; i < xg.size(); ++i) {
            ft.push_back(f(xg[i]));
            fr.push_back(rec.values[i]);
        }
        doc["f_true"] = std::move(ft);
        doc["f_recon"] = std::move(fr);
        out << doc.dump(2) << "\n";
    }
    std::cout << "roundtrip_error = " << fmt(err) << "\n";
    std::cerr << "wrote " << cfg.out << "\n";
    return 0;
}

// --------------------------------------------------------------- selfcheck

int run_selfcheck(RunConfig cfg) {
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
    };

    const double sqrt2 = std::sqrt(2.0);
    try {
        add("heaviside-gate",
            qft::heaviside_gate(1.5) == 1 && qft::heaviside_gate(1.0) == 1 &&
                qft::heaviside_gate(2.0) == 0,
            "gate values at 1.5, 1, 2");

        const auto ind = FunctionSpec::indicator(0.0, 1.0);
        const auto zero = qft::qft_point(ind, 2.5, 1.0);
        add("gate-zero", zero.value == Complex{0.0, 0.0}, "F(k, 2.5) == 0");

        bool qlog_ok = true;
        for (double q : {1.0, 1.5, 1.9})
            for (double x : {0.5, 2.0}) {
                const auto back = qft::q_exponential(
                    {qft::q_logarithm(x, qft::DeformationIndex(q)), 0.0},
                    qft::DeformationIndex(q));
                qlog_ok &= std::abs(back.real() - x) < 1e-12 * x;
            }
        add("qexp-qlog-roundtrip", qlog_ok, "inverse pair on the positive axis");

        const Complex idv = qft::hyp2f1({-0.5, 1.5, 1.5, {-0.2, 0.0}});
        add("hyp2f1-identity",
            std::abs(idv - qft::principal_power({1.2, 0.0}, 0.5)) < 1e-10,
            "2F1(-a,b;b;-z) = (1+z)^a");
        const Complex poly = qft::hyp2f1({-2.0, 1.5, 1.5, {-4.0, 0.0}});
        add("hyp2f1-polynomial", std::abs(poly - Complex{25.0, 0.0}) < 1e-10,
            "(1+4)^2 = 25");
        const auto bval = qft::hyp2f1_boundary({0.5, 1.0, 1.5, {2.0, 0.0}});
        add("hyp2f1-boundary",
            std::abs(bval.value - Complex{0.6232252401402305, 1.110720734539592}) < 1e-8,
            "2F1 at 2 + i0");

        const auto pl = FunctionSpec::power_law(
            qft::make_window(1.0, 2.0, 2.0, qft::hilhorst_lambda(1.0, 2.0, 1.5)));
        bool norm_ok = true;
        for (double q : {1.0, 1.5, 1.9})
            norm_ok &= std::abs(qft::qft_point(pl, q, 0.0).value.real() - 1.0) < 1e-9;
        add("normalization", norm_ok, "F(0, q) = |f|_1");

        const auto plus = qft::qft_point(pl, 1.3, 2.0);
        const auto minus = qft::qft_point(pl, 1.3, -2.0);
        add("hermitian",
            std::abs(minus.value - std::conj(plus.value)) <
                plus.error + minus.error + 1e-12,
            "F(-k) = conj F(k)");

        const auto w = qft::make_window(1.0, 2.0, 2.0, 1.0);
        const Complex cf = qft::closed_form_F(w, qft::DeformationIndex(1.3), 0.7);
        const auto qp = qft::qft_point(FunctionSpec::power_law(w), 1.3, 0.7);
        add("closed-form", std::abs(cf - qp.value) < 1e-6 * std::abs(qp.value),
            "hypergeometric form vs quadrature");

        const auto w1 = qft::make_window(1.0, 2.0, 2.0, sqrt2);
        const auto w2 = qft::degeneracy_partner(w1, 1.5, 1.1);
        std::vector<double> kg;
        for (int i = -10; i <= 10; ++i) kg.push_back(0.5 * i);
        const std::vector<double> q_deg{1.5}, q_sep{1.2};
        const auto rep_deg = qft::separation_scan(w1, w2, q_deg, kg);
        add("degeneracy", rep_deg.max_gap[0] < 1e-6,
            "gap at q* = 1.5 below 1e-6");
        const auto rep_sep = qft::separation_scan(w1, w2, q_sep, kg);
        add("separation",
            rep_sep.max_gap[0] > 1e-3 && rep_sep.verdicts[0] == qft::Verdict::Separated,
            "gap at q' = 1.2 above 1e-3");

        std::vector<double> kg_slice;
        for (int i = -8; i <= 8; ++i) kg_slice.push_back(0.25 * i);
        const auto slice = qft::q1_slice(ind, kg_slice, std::vector<double>{1e-2, 1e-3});
        add("slice-normalization", std::abs(slice.values[8].real() - 1.0) < 1e-9,
            "slice at k = 0 equals |f|_1");
    } catch (const qft::Error& e) {
        add("unexpected-error", false, e.what());
    }

    bool all = true;
    for (const auto& c : checks) {
        all &= c.pass;
        std::cout << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << ": " << c.detail
                  << "\n";
    }
    std::cout << (all ? "selfcheck: all checks passed" : "selfcheck: FAILURES")
              << " (" << checks.size() << " checks)\n";

    if (!cfg.out.empty()) {
        json doc;
        json arr = json::array();
        for (const auto& c : checks)
            arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        doc["checks"] = std::move(arr);
        doc["all_pass"] = all;
        doc["provenance"] = provenance(cfg);
        auto out = open_output(cfg.out);
        out << doc.dump(2) << "\n";
    }
    return all ? 0 : 1;
}

// ------------------------------------------------------------------- main

int dispatch(RunConfig cfg) {
    if (cfg.command == "transform" || cfg.command == "sweep")
        return run_transform(std::move(cfg));
    if (cfg.command == "counterexample") return run_counterexample(std::move(cfg));
    if (cfg.command == "invert") return run_invert(std::move(cfg));
    return run_selfcheck(std::move(cfg));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"floating-index q-Fourier transform toolkit"};
    app.require_subcommand(1);

    std::string fn, k_str, q_str, x_str, eps_str, out, format, config_path;
    double tol = -1.0;

    auto add_common = [&](CLI::App* cmd, bool with_fn, bool with_q, bool with_x,
                          bool with_eps) {
        if (with_fn)
            cmd->add_option("--fn", fn,
                            "input function: indicator:a,b | powerlaw:a,b,beta,lambda "
                            "| powerlaw-hilhorst:a,b,q | qgauss:q,width,radius | "
                            "tabulated:path");
        cmd->add_option("--k", k_str, "k grid min:max:count");
        if (with_q) cmd->add_option("--q", q_str, "q grid min:max:count");
        if (with_x) cmd->add_option("--x", x_str, "x grid min:max:count");
        if (with_eps) cmd->add_option("--eps", eps_str, "decreasing eps ladder, comma separated");
        cmd->add_option("--tol", tol, "quadrature relative tolerance");
        cmd->add_option("--out", out, "output path");
        cmd->add_option("--format", format, "output format: csv | json");
        cmd->add_option("--config", config_path, "JSON config file (flags override)");
        return cmd;
    };

    auto* c_transform = add_common(app.add_subcommand("transform",
                                                      "evaluate F(k,q) on a grid"),
                                   true, true, false, false);
    auto* c_sweep = add_common(app.add_subcommand("sweep",
                                                  "alias of transform for dense q sweeps"),
                               true, true, false, false);
    auto* c_counter = add_common(
        app.add_subcommand("counterexample",
                           "fixed-q degeneracy and floating-q separation of the "
                           "built-in window pair"),
        false, true, false, false);
    auto* c_invert = add_common(app.add_subcommand("invert",
                                                   "q->1+ slice and inverse transform"),
                                true, false, true, true);
    auto* c_self = add_common(app.add_subcommand("selfcheck",
                                                 "run the built-in invariant suite"),
                              false, false, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        RunConfig cfg;
        CLI::App* active = nullptr;
        for (auto* c : {c_transform, c_sweep, c_counter, c_invert, c_self})
            if (c->parsed()) active = c;
        cfg.command = active->get_name();

        // config file first, then flags override; unknown keys are rejected
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw UsageError("--config: cannot open '" + config_path + "'");
            json conf;
            try {
                conf = json::parse(in);
            } catch (const json::exception& e) {
                throw UsageError(std::string("--config: ") + e.what());
            }
            for (const auto& [key, value] : conf.items()) {
                auto want_string = [&](const char* name) -> std::string {
                    if (!value.is_string())
                        throw UsageError(std::string("--config: key '") + name +
                                         "' must be a string");
                    return value.get<std::string>();
                };
                const bool have_opt = active->get_option_no_throw("--" + key) != nullptr;
                if (!have_opt)
                    throw UsageError("--config: unknown key '" + key +
                                     "' for command " + cfg.command);
                if (active->count("--" + key) > 0) continue;  // flag wins
                if (key == "fn") fn = want_string("fn");
                else if (key == "k") k_str = want_string("k");
                else if (key == "q") q_str = want_string("q");
                else if (key == "x") x_str = want_string("x");
                else if (key == "eps") eps_str = want_string("eps");
                else if (key == "out") out = want_string("out");
                else if (key == "format") format = want_string("format");
                else if (key == "tol") {
                    if (value.is_number()) tol = value.get<double>();
                    else tol = parse_number("--config tol", want_string("tol"));
                }
            }
        }

        // defaults per command
        if (cfg.command == "counterexample") {
            cfg.k = GridSpec{-5.0, 5.0, 101};
            cfg.q = GridSpec{1.1, 1.7, 7};
            cfg.format = "json";
            cfg.out = "counterexample.json";
        } else if (cfg.command == "invert") {
            cfg.out = "reconstruction.csv";
            cfg.format = "csv";
        } else {
            cfg.out = cfg.command == "sweep" ? "sweep.csv" : "surface.csv";
            cfg.format = "csv";
        }

        if (!k_str.empty()) cfg.k = parse_grid("--k", k_str);
        if (!q_str.empty()) cfg.q = parse_grid("--q", q_str);
        if (!x_str.empty()) {
            cfg.x = parse_grid("--x", x_str);
            cfg.x_set = true;
        }
        if (!eps_str.empty()) cfg.eps = parse_eps(eps_str);
        if (tol > 0.0) cfg.tol = tol;
        else if (tol != -1.0) throw UsageError("--tol: must be positive");
        if (!out.empty()) cfg.out = out;
        if (!format.empty()) {
            if (format != "csv" && format != "json")
                throw UsageError("--format: must be csv or json");
            if (cfg.command == "counterexample" && format != "json")
                throw UsageError("--format: counterexample emits a JSON report");
            cfg.format = format;
        }

        // q-grid gate: every probe must sit inside [1,2)
        if (cfg.command != "invert" && cfg.command != "selfcheck")
            for (double q : cfg.q.expand())
                if (!(q >= 1.0 && q < 2.0))
                    throw UsageError("--q: value " + fmt(q) +
                                     " outside the admissible interval [1,2)");
        for (double e : cfg.eps)
            if (!(1.0 + e < 2.0))
                throw UsageError("--eps: 1 + eps must stay below 2");

        if (cfg.command == "transform" || cfg.command == "sweep" ||
            cfg.command == "invert") {
            if (fn.empty()) throw UsageError("--fn: required for " + cfg.command);
            cfg.fn = fn;
        }

        return dispatch(std::move(cfg));
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const qft::Error& e) {
        json err;
        err["error"] = {{"type", error_kind(e)}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = {{"type", "unexpected"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
