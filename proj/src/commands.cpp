#include "cubicfano/commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "cubicfano/finite_geometry.hpp"
#include "cubicfano/hodge.hpp"
#include "cubicfano/motivic_ring.hpp"

namespace cubicfano::cli {

using geometry::CubicForm;
using geometry::FiniteField;
using geometry::ScanOptions;
using motivic::VirtualClass;
using json = nlohmann::ordered_json;

namespace {

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void require_field(const RunConfig &cfg) {
    if (cfg.p == 0) {
        throw InputError("--p <prime> is required");
    }
    if (!geometry::is_prime(cfg.p)) {
        throw InputError(fmt::format("--p {} is not prime", cfg.p));
    }
}

std::string field_name(std::uint64_t q) { return fmt::format("F_{}", q); }

ScanOptions scan(const RunConfig &cfg) { return ScanOptions{std::max(1u, cfg.threads)}; }

} // namespace

geometry::CubicForm load_cubic(const RunConfig &cfg) {
    try {
        switch (cfg.source) {
        case CubicSource::none:
            throw InputError("choose one cubic source: --named, --file or --random");
        case CubicSource::file: {
            std::ifstream in(cfg.file);
            if (!in) {
                throw InputError(fmt::format("cannot read cubic file '{}'", cfg.file));
            }
            std::stringstream buf;
            buf << in.rdbuf();
            CubicForm f = CubicForm::parse_text(buf.str());
            if (cfg.p != 0 && cfg.p != f.characteristic()) {
                throw InputError(fmt::format("--p {} disagrees with p={} in '{}'", cfg.p, f.characteristic(), cfg.file));
            }
            if (cfg.dim >= 0 && cfg.dim != f.dim()) {
                throw InputError(fmt::format("--dim {} disagrees with d={} in '{}'", cfg.dim, f.dim(), cfg.file));
            }
            return f;
        }
        case CubicSource::named:
        case CubicSource::random: {
            require_field(cfg);
            if (cfg.dim < 1) {
                throw InputError("--dim <d> with d >= 1 is required");
            }
            const std::string name = cfg.source == CubicSource::random ? "random" : cfg.named;
            return geometry::named_cubic(name, cfg.dim, cfg.p, cfg.seed);
        }
        }
    } catch (const InputError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    throw InputError("unknown cubic source");
}

std::string cubic_id(const RunConfig &cfg) {
    switch (cfg.source) {
    case CubicSource::file:
        return cfg.file;
    case CubicSource::named:
        return fmt::format("{}({})", cfg.named, cfg.dim);
    case CubicSource::random:
        return fmt::format("random({}, seed={})", cfg.dim, cfg.seed);
    case CubicSource::none:
        break;
    }
    return "-";
}

VerificationReport cmd_lines(const RunConfig &cfg) {
    Stopwatch sw;
    const CubicForm f = load_cubic(cfg);
    const FiniteField base = FiniteField::prime(f.characteristic());
    const auto opts = scan(cfg);
    const std::uint64_t n1 = geometry::count_points(f, base, opts);
    const std::uint64_t n2 = geometry::count_points(f, FiniteField::extension(base.characteristic(), 2), opts);
    const std::uint64_t ns = geometry::singular_points(f, base, opts).size();
    const std::uint64_t lines = geometry::enumerate_lines(f, base, opts).size();
    const Rational formula = geometry::count_fano_by_formula(n1, n2, ns, base.size(), f.dim());

    VerificationReport r;
    r.relation = "line count";
    r.cubic = cubic_id(cfg);
    r.field = field_name(base.size());
    r.dim = f.dim();
    r.lhs = std::to_string(lines);
    r.rhs = formula.str();
    r.breakdown = {{"N1", std::to_string(n1)},
                   {"N2", std::to_string(n2)},
                   {"Ns", std::to_string(ns)},
                   {"lines_scanned", std::to_string(geometry::line_scan_size(f, base))},
                   {"lines", std::to_string(lines)},
                   {"formula", formula.str()}};
    if (!is_integral(formula)) {
        r.notes.push_back("formula value is not an integer");
    }
    r.pass = Rational(lines) == formula;
    r.seconds = sw.seconds();
    return r;
}

std::vector<VerificationReport> cmd_verify(const RunConfig &cfg) {
    Stopwatch sw;
    const CubicForm f = load_cubic(cfg);
    if (!geometry::is_reduced(f)) {
        throw InputError("the cubic is not reduced (it has a repeated linear factor)");
    }
    const FiniteField base = FiniteField::prime(f.characteristic());
    const geometry::YFYCheck check = geometry::verify_yfy_counting(f, base, scan(cfg));
    const auto &c = check.census;
    const double elapsed = sw.seconds();

    std::vector<Term> terms = {{"N1", std::to_string(c.n1)},      {"N2", std::to_string(c.n2)},
                               {"Ns", std::to_string(c.ns)},      {"lines", std::to_string(c.lines)},
                               {"sym2", c.sym2.str()},            {"hilb2", c.hilb2.str()}};

    VerificationReport hilb;
    hilb.relation = "#Hilb2 Y = #P^d * N1 + q^2 * #F(Y)";
    hilb.cubic = cubic_id(cfg);
    hilb.field = field_name(c.q);
    hilb.dim = c.dim;
    hilb.lhs = check.hilb_lhs.str();
    hilb.rhs = check.hilb_rhs.str();
    hilb.breakdown = terms;
    hilb.pass = check.hilb_holds();
    hilb.seconds = elapsed;

    VerificationReport sym = hilb;
    sym.relation = "#Sym2 Y = (1 + q^d) * N1 + q^2 * #F(Y) - q^d * Ns";
    sym.lhs = check.sym_lhs.str();
    sym.rhs = check.sym_rhs.str();
    sym.pass = check.sym_holds();
    return {hilb, sym};
}

HodgeSummary cmd_hodge(const RunConfig &cfg) {
    if (cfg.dim < 2) {
        throw InputError("hodge needs --dim <d> with d >= 2");
    }
    const int d = cfg.dim;
    HodgeSummary s;
    s.dim = d;
    const hodge::HodgeDiamond y = hodge::cubic_hodge(d);
    const hodge::HodgeDiamond fano = hodge::fano_hodge(d);
    s.cubic_table = hodge::format_diamond(y);
    s.fano_table = hodge::format_fano_table(d);
    s.cubic_json = hodge::to_json(y);
    s.fano_json = hodge::to_json(fano);
    s.psi_cubic = realize::psi_polynomial(hodge::e_polynomial(y));
    s.psi_fano = realize::psi_polynomial(hodge::e_polynomial(fano));
    for (int k = 0; k <= fano.top_degree(); ++k) {
        s.fano_betti.push_back(fano.betti(k));
    }
    s.chi_cubic = y.euler_characteristic();
    s.chi_fano_hodge = fano.euler_characteristic();
    s.chi_fano_formula = realize::chi_fano(s.chi_cubic, 0);
    if (d == 3 || d == 4) {
        s.indecomposability = realize::indecomposability_report(s.psi_fano, fano.at(1, 1), d);
    }
    return s;
}

Integer cmd_euler(const RunConfig &cfg) { return realize::chi_fano(cfg.chi, cfg.sing); }

Integer cmd_real(const RunConfig &cfg) {
    return realize::chi_real_fano(cfg.chi_r, cfg.chi_c, cfg.parity, cfg.chi_r_sing);
}

namespace {

VerificationReport identity_report(std::string relation, const VirtualClass &lhs, const VirtualClass &rhs) {
    VerificationReport r;
    r.relation = std::move(relation);
    r.lhs = motivic::to_string(lhs);
    r.rhs = motivic::to_string(rhs);
    r.pass = lhs == rhs;
    return r;
}

VirtualClass random_class(std::mt19937_64 &rng) {
    static const char *names[] = {"X", "Y", "Z"};
    std::uniform_int_distribution<int> nterms(1, 3), coeff(-3, 3), lexp(-1, 2), nsym(0, 2), which(0, 2);
    VirtualClass a;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        VirtualClass t = VirtualClass::lefschetz(lexp(rng)) * VirtualClass(static_cast<long long>(coeff(rng)));
        const int s = nsym(rng);
        for (int j = 0; j < s; ++j) {
            t = t * VirtualClass::symbol(names[which(rng)]);
        }
        a += t;
    }
    return a;
}

} // namespace

std::vector<VerificationReport> cmd_symbolic(const RunConfig &cfg) {
    const std::string &suite = cfg.suite;
    const bool all = suite == "all";
    if (!all && suite != "rearrangement" && suite != "projective" && suite != "ex-sing" && suite != "inverse") {
        throw InputError(fmt::format("unknown identity suite '{}'", suite));
    }
    std::vector<VerificationReport> out;
    Stopwatch sw;
    const VirtualClass m = VirtualClass::symbol("M");
    const VirtualClass sing = VirtualClass::symbol("S");
    if (all || suite == "rearrangement") {
        for (int d = 2; d <= 8; ++d) {
            const VirtualClass y = motivic::projective_space(d) + m.shifted(1);
            const VirtualClass lhs = motivic::fano_class_from_defect(m, d, sing).shifted(2) +
                                     (VirtualClass(1) + VirtualClass::lefschetz(d)) * y - sing.shifted(d);
            auto r = identity_report(
                fmt::format("L^2 [F] + (1 + L^{0}) [Y] - L^{0} [Sing] = Sym^2 [Y], [Y] = [P^{0}] + L M, d={0}", d),
                lhs, motivic::sym2(y));
            r.dim = d;
            out.push_back(std::move(r));
        }
    }
    if (all || suite == "projective") {
        for (int d = 2; d <= 8; ++d) {
            const VirtualClass pd = motivic::projective_space(d);
            const VirtualClass lhs = motivic::sym2(pd) - (VirtualClass(1) + VirtualClass::lefschetz(d)) * pd;
            const VirtualClass rhs =
                motivic::sym2(motivic::projective_space(d - 2)).shifted(2) - VirtualClass::lefschetz(d);
            auto r = identity_report(fmt::format("Sym^2 [P^{0}] - (1 + L^{0}) [P^{0}] = L^2 Sym^2 [P^{1}] - L^{0}", d,
                                                 d - 2),
                                     lhs, rhs);
            r.dim = d;
            out.push_back(std::move(r));
        }
    }
    if (all || suite == "ex-sing") {
        const VirtualClass c = VirtualClass::symbol("C");
        const VirtualClass s = VirtualClass::symbol("S");
        auto r3 = identity_report("[F(Y)] for a one-node cubic threefold, M_Y = [C] - [P^1] - 1",
                                  motivic::fano_class_from_defect(c - motivic::projective_space(1) - 1, 3, 1),
                                  motivic::sym2(c) - c);
        r3.dim = 3;
        out.push_back(std::move(r3));
        auto r4 = identity_report("[F(Y)] for a one-node cubic fourfold, M_Y = [S] - [P^2]",
                                  motivic::fano_class_from_defect(s - motivic::projective_space(2), 4, 1),
                                  motivic::sym2(s));
        r4.dim = 4;
        out.push_back(std::move(r4));
    }
    if (all || suite == "inverse") {
        std::mt19937_64 rng(cfg.seed);
        int failures = 0;
        const int trials = 200;
        for (int i = 0; i < trials; ++i) {
            const VirtualClass a = random_class(rng);
            const int order = 1 + static_cast<int>(rng() % 4);
            if (!(motivic::sym_series(a, order) * motivic::sym_series(-a, order) == motivic::SymSeries(order))) {
                ++failures;
            }
        }
        VerificationReport r;
        r.relation = fmt::format("Sym_t(a) Sym_t(-a) = 1 on {} random classes (seed {})", trials, cfg.seed);
        r.lhs = fmt::format("{} failures", failures);
        r.rhs = "0 failures";
        r.pass = failures == 0;
        out.push_back(std::move(r));
    }
    const double elapsed = sw.seconds();
    for (auto &r : out) {
        r.seconds = elapsed;
    }
    return out;
}

ZetaTable cmd_zeta(const RunConfig &cfg) {
    if (cfg.order < 1 || cfg.order > 3) {
        throw InputError(fmt::format("--order {} is out of range (1..3)", cfg.order));
    }
    const CubicForm f = load_cubic(cfg);
    const FiniteField base = FiniteField::prime(f.characteristic());
    const auto opts = scan(cfg);
    ZetaTable z;
    z.cubic = cubic_id(cfg);
    z.q = base.size();
    z.dim = f.dim();
    for (int m = 1; m <= cfg.order; ++m) {
        z.point_counts.emplace_back(geometry::count_points(f, FiniteField::extension(base.characteristic(), m), opts));
    }
    z.sym_counts = realize::hasse_weil_truncation(z.point_counts, cfg.order);
    z.oracle.assign(static_cast<std::size_t>(cfg.order), std::nullopt);
    z.oracle_kind.assign(static_cast<std::size_t>(cfg.order), "");
    z.oracle[0] = z.point_counts[0];
    z.oracle_kind[0] = "N1";
    if (f.dim() == 1) {
        const auto hist = geometry::closed_point_degrees(f, base, cfg.order);
        for (int m = 1; m <= cfg.order; ++m) {
            z.oracle[static_cast<std::size_t>(m - 1)] = geometry::count_effective_cycles(hist, m);
            z.oracle_kind[static_cast<std::size_t>(m - 1)] = "closed-point cycles";
        }
    } else if (cfg.order >= 2) {
        z.oracle[1] = geometry::count_sym2_points(f, base, opts);
        z.oracle_kind[1] = "pair count";
    }
    for (std::size_t i = 0; i < z.sym_counts.size(); ++i) {
        if (z.oracle[i] && *z.oracle[i] != z.sym_counts[i]) {
            z.pass = false;
        }
    }
    return z;
}

// ---------------------------------------------------------------- rendering

namespace {

json to_json_value(const VerificationReport &r) {
    json terms = json::object();
    for (const auto &t : r.breakdown) {
        terms[t.name] = t.value;
    }
    json j;
    j["relation"] = r.relation;
    j["inputs"] = {{"cubic", r.cubic}, {"field", r.field}, {"dim", r.dim}};
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["terms"] = terms;
    j["notes"] = r.notes;
    j["verdict"] = r.pass ? "pass" : "fail";
    j["seconds"] = r.seconds;
    return j;
}

std::string render_table(const VerificationReport &r) {
    std::string out = fmt::format("relation: {}\n", r.relation);
    if (!r.cubic.empty()) {
        out += fmt::format("cubic:    {} over {}, d={}\n", r.cubic, r.field, r.dim);
    }
    for (const auto &t : r.breakdown) {
        out += fmt::format("  {:<14} {}\n", t.name, t.value);
    }
    out += fmt::format("lhs:      {}\nrhs:      {}\n", r.lhs, r.rhs);
    for (const auto &n : r.notes) {
        out += fmt::format("note:     {}\n", n);
    }
    out += fmt::format("verdict:  {} ({:.3f} s)\n", r.pass ? "pass" : "FAIL", r.seconds);
    return out;
}

json polynomial_json(const realize::Polynomial &p) {
    json a = json::array();
    for (const auto &c : p) {
        a.push_back(c.str());
    }
    return a;
}

} // namespace

std::string render(const VerificationReport &r, OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        return to_json_value(r).dump(2) + "\n";
    }
    return render_table(r);
}

std::string render(const std::vector<VerificationReport> &rs, OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        json a = json::array();
        for (const auto &r : rs) {
            a.push_back(to_json_value(r));
        }
        return a.dump(2) + "\n";
    }
    std::string out;
    for (const auto &r : rs) {
        if (r.cubic.empty()) {
            out += fmt::format("[{}] {}\n", r.pass ? "pass" : "FAIL", r.relation);
            if (!r.pass) {
                out += fmt::format("    lhs: {}\n    rhs: {}\n", r.lhs, r.rhs);
            }
        } else {
            out += render_table(r) + "\n";
        }
    }
    return out;
}

std::string render(const HodgeSummary &h, OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        json j;
        j["dim"] = h.dim;
        j["cubic"] = json::parse(h.cubic_json);
        j["fano"] = json::parse(h.fano_json);
        j["psi_cubic"] = polynomial_json(h.psi_cubic);
        j["psi_fano"] = polynomial_json(h.psi_fano);
        j["fano_betti"] = h.fano_betti;
        j["chi_cubic"] = h.chi_cubic;
        j["chi_fano"] = h.chi_fano_hodge;
        j["chi_fano_formula"] = h.chi_fano_formula.str();
        if (h.indecomposability) {
            const auto &r = *h.indecomposability;
            json f = json::array();
            for (const auto &fac : r.factorizations) {
                f.push_back({polynomial_json(fac.left), polynomial_json(fac.right)});
            }
            json ind;
            ind["factorizations"] = f;
            if (r.sym2_genus) {
                ind["sym2_genus"] = r.sym2_genus->str();
                ind["sym2_h11"] = r.sym2_h11->str();
                ind["h11"] = r.h11.str();
            }
            if (r.hilb2_q) {
                ind["hilb2_q"] = r.hilb2_q->str();
                ind["hilb2_pg"] = r.hilb2_pg->str();
            }
            ind["notes"] = r.notes;
            ind["verdict"] = r.verdict;
            j["indecomposability"] = ind;
        }
        return j.dump(2) + "\n";
    }
    std::string out = fmt::format("cubic {}-fold Y\n{}\n", h.dim, h.cubic_table);
    out += fmt::format("Fano variety of lines F(Y)\n{}\n", h.fano_table);
    out += fmt::format("Psi(Y)    = {}\n", realize::to_string(h.psi_cubic));
    out += fmt::format("Psi(F(Y)) = {}\n", realize::to_string(h.psi_fano));
    std::string betti;
    for (std::size_t k = 0; k < h.fano_betti.size(); ++k) {
        betti += fmt::format("{}{}", k == 0 ? "" : " ", h.fano_betti[k]);
    }
    out += fmt::format("Betti numbers of F(Y): {}\n", betti);
    out += fmt::format("chi(Y) = {}, chi(F(Y)) = {}, chi(Y)(chi(Y)-3)/2 = {}\n", h.chi_cubic, h.chi_fano_hodge,
                       h.chi_fano_formula.str());
    if (h.indecomposability) {
        const auto &r = *h.indecomposability;
        for (const auto &n : r.notes) {
            out += fmt::format("  {}\n", n);
        }
        out += fmt::format("verdict: {}\n", r.verdict);
    }
    return out;
}

std::string render(const ZetaTable &z, OutputFormat fmt) {
    if (fmt == OutputFormat::json) {
        json rows = json::array();
        for (std::size_t i = 0; i < z.sym_counts.size(); ++i) {
            json row;
            row["m"] = i + 1;
            row["N"] = z.point_counts[i].str();
            row["sym"] = z.sym_counts[i].str();
            row["oracle"] = z.oracle[i] ? json(z.oracle[i]->str()) : json(nullptr);
            row["oracle_kind"] = z.oracle_kind[i];
            rows.push_back(row);
        }
        json j;
        j["cubic"] = z.cubic;
        j["field"] = field_name(z.q);
        j["dim"] = z.dim;
        j["rows"] = rows;
        j["verdict"] = z.pass ? "pass" : "fail";
        return j.dump(2) + "\n";
    }
    std::string out = fmt::format("{} over {}, d={}\n", z.cubic, field_name(z.q), z.dim);
    out += fmt::format("{:>2}  {:>12}  {:>14}  {:>14}\n", "m", "#Y(F_q^m)", "#Sym^m Y(F_q)", "oracle");
    for (std::size_t i = 0; i < z.sym_counts.size(); ++i) {
        out += fmt::format("{:>2}  {:>12}  {:>14}  {:>14}  {}\n", i + 1, z.point_counts[i].str(), z.sym_counts[i].str(),
                           z.oracle[i] ? z.oracle[i]->str() : "-", z.oracle_kind[i]);
    }
    out += fmt::format("verdict: {}\n", z.pass ? "pass" : "FAIL");
    return out;
}

int run(const RunConfig &cfg) {
    try {
        const auto &sub = cfg.subcommand;
        if (sub == "lines") {
            const auto r = cmd_lines(cfg);
            std::cout << render(r, cfg.format);
            return r.pass ? 0 : 2;
        }
        if (sub == "verify") {
            const auto rs = cmd_verify(cfg);
            std::cout << render(rs, cfg.format);
            return std::all_of(rs.begin(), rs.end(), [](const auto &r) { return r.pass; }) ? 0 : 2;
        }
        if (sub == "hodge") {
            std::cout << render(cmd_hodge(cfg), cfg.format);
            return 0;
        }
        if (sub == "euler" || sub == "real") {
            const Integer v = sub == "euler" ? cmd_euler(cfg) : cmd_real(cfg);
            if (cfg.format == OutputFormat::json) {
                json j;
                j["relation"] = sub == "euler" ? "chi(F(Y))" : "chi_R(F(Y))";
                j["value"] = v.str();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << v.str() << "\n";
            }
            return 0;
        }
        if (sub == "symbolic") {
            const auto rs = cmd_symbolic(cfg);
            std::cout << render(rs, cfg.format);
            return std::all_of(rs.begin(), rs.end(), [](const auto &r) { return r.pass; }) ? 0 : 2;
        }
        if (sub == "zeta") {
            const auto z = cmd_zeta(cfg);
            std::cout << render(z, cfg.format);
            return z.pass ? 0 : 2;
        }
        throw InputError(fmt::format("unknown subcommand '{}'", sub));
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IntegralityError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace cubicfano::cli
