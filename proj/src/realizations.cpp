#include "cubicfano/realizations.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace cubicfano::realize {

using motivic::Monomial;
using motivic::Symbol;
using motivic::VirtualClass;

// ---------------------------------------------------------------- EPolynomial

EPolynomial::EPolynomial(const Integer &c) {
    add_term(0, 0, c);
}

EPolynomial EPolynomial::monomial(int a, int b, const Integer &c) {
    EPolynomial e;
    e.add_term(a, b, c);
    return e;
}

Integer EPolynomial::coefficient(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? Integer(0) : it->second;
}

void EPolynomial::add_term(int a, int b, const Integer &c) {
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace({a, b}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Integer EPolynomial::at_one() const {
    Integer s = 0;
    for (const auto &[k, c] : terms_) {
        s += c;
    }
    return s;
}

EPolynomial EPolynomial::adams(int m) const {
    EPolynomial r;
    for (const auto &[k, c] : terms_) {
        r.add_term(k.first * m, k.second * m, c);
    }
    return r;
}

EPolynomial &EPolynomial::operator+=(const EPolynomial &o) {
    for (const auto &[k, c] : o.terms_) {
        add_term(k.first, k.second, c);
    }
    return *this;
}

EPolynomial operator-(const EPolynomial &a) {
    EPolynomial r = a;
    for (auto &[k, c] : r.terms_) {
        c = -c;
    }
    return r;
}

EPolynomial operator*(const EPolynomial &a, const EPolynomial &b) {
    EPolynomial r;
    for (const auto &[ka, ca] : a.terms_) {
        for (const auto &[kb, cb] : b.terms_) {
            r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        }
    }
    return r;
}

namespace {

std::string power_factor(char var, int e) {
    if (e == 1) {
        return std::string(1, var);
    }
    return fmt::format("{}^{}", var, e);
}

std::string signed_join(const std::vector<std::pair<Integer, std::string>> &terms) {
    if (terms.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[c, body] : terms) {
        const bool negative = c < 0;
        const Integer mag = negative ? Integer(-c) : c;
        std::string piece;
        if (body.empty()) {
            piece = mag.str();
        } else if (mag == 1) {
            piece = body;
        } else {
            piece = mag.str() + "*" + body;
        }
        if (first) {
            out = negative ? "-" + piece : piece;
            first = false;
        } else {
            out += negative ? " - " : " + ";
            out += piece;
        }
    }
    return out;
}

} // namespace

std::string to_string(const EPolynomial &e) {
    std::vector<std::pair<std::pair<int, int>, Integer>> sorted(e.terms().begin(), e.terms().end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto &x, const auto &y) {
        const int dx = x.first.first + x.first.second;
        const int dy = y.first.first + y.first.second;
        if (dx != dy) {
            return dx < dy;
        }
        return x.first.first > y.first.first;
    });
    std::vector<std::pair<Integer, std::string>> terms;
    for (const auto &[k, c] : sorted) {
        std::string body;
        if (k.first != 0) {
            body = power_factor('u', k.first);
        }
        if (k.second != 0) {
            body += (body.empty() ? "" : "*") + power_factor('v', k.second);
        }
        terms.emplace_back(c, body);
    }
    return signed_join(terms);
}

std::string to_string(const Polynomial &p, char var) {
    std::vector<std::pair<Integer, std::string>> terms;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] != 0) {
            terms.emplace_back(p[k], k == 0 ? std::string() : power_factor(var, static_cast<int>(k)));
        }
    }
    return signed_join(terms);
}

Polynomial psi_polynomial(const EPolynomial &e) {
    Polynomial p;
    for (const auto &[k, c] : e.terms()) {
        if (k.second != 0) {
            continue;
        }
        if (k.first < 0) {
            throw std::invalid_argument("psi_polynomial: negative power of u at v = 0");
        }
        const auto deg = static_cast<std::size_t>(k.first);
        if (p.size() <= deg) {
            p.resize(deg + 1, 0);
        }
        p[deg] += (k.first % 2 == 0) ? c : Integer(-c);
    }
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
    return p;
}

std::string to_string(Target t) {
    switch (t) {
    case Target::count:
        return "count";
    case Target::euler:
        return "euler";
    case Target::real_euler:
        return "real-euler";
    case Target::e_polynomial:
        return "e-polynomial";
    }
    return "?";
}

std::string to_string(const Value &v) {
    if (const auto *i = std::get_if<Integer>(&v)) {
        return i->str();
    }
    return to_string(std::get<EPolynomial>(v));
}

// ---------------------------------------------------------------- Environment

Environment Environment::count(const Integer &q) {
    if (q < 2) {
        throw std::invalid_argument("count realization needs q >= 2");
    }
    Environment env(Target::count);
    env.q_ = q;
    return env;
}

Environment Environment::euler() { return Environment(Target::euler); }
Environment Environment::real_euler() { return Environment(Target::real_euler); }
Environment Environment::e_polynomial() { return Environment(Target::e_polynomial); }

namespace {

void require_target(Target have, Target want, const std::string &name) {
    if (have != want) {
        throw std::invalid_argument(fmt::format("cannot assign {} value to '{}' in a {} environment", to_string(want),
                                                name, to_string(have)));
    }
}

void require_atomic_name(const std::string &name) {
    (void)Symbol::atomic(name); // validates
}

} // namespace

Environment &Environment::assign_counts(const std::string &name, std::vector<Integer> counts) {
    require_target(target_, Target::count, name);
    require_atomic_name(name);
    if (counts.empty()) {
        throw std::invalid_argument(fmt::format("no point counts given for '{}'", name));
    }
    counts_[name] = std::move(counts);
    return *this;
}

Environment &Environment::assign_euler(const std::string &name, const Integer &chi) {
    require_target(target_, Target::euler, name);
    require_atomic_name(name);
    euler_[name] = chi;
    return *this;
}

Environment &Environment::assign_real(const std::string &name, const Integer &chi_r, const Integer &chi_c) {
    require_target(target_, Target::real_euler, name);
    require_atomic_name(name);
    real_[name] = {chi_r, chi_c};
    return *this;
}

Environment &Environment::assign_e(const std::string &name, EPolynomial e) {
    require_target(target_, Target::e_polynomial, name);
    require_atomic_name(name);
    e_[name] = std::move(e);
    return *this;
}

Environment &Environment::override_sym2(const std::string &name, Value v) {
    require_atomic_name(name);
    const bool poly = std::holds_alternative<EPolynomial>(v);
    if (poly != (target_ == Target::e_polynomial)) {
        throw std::invalid_argument(fmt::format("Sym^2 override for '{}' has the wrong value type", name));
    }
    sym2_[name] = std::move(v);
    return *this;
}

bool Environment::is_assigned(const std::string &name) const {
    return counts_.count(name) || euler_.count(name) || real_.count(name) || e_.count(name);
}

std::vector<std::string> Environment::assigned_names() const {
    std::vector<std::string> names;
    for (const auto &kv : counts_) {
        names.push_back(kv.first);
    }
    for (const auto &kv : euler_) {
        names.push_back(kv.first);
    }
    for (const auto &kv : real_) {
        names.push_back(kv.first);
    }
    for (const auto &kv : e_) {
        names.push_back(kv.first);
    }
    return names;
}

// ---------------------------------------------------------------- evaluation

namespace {

// Each target is evaluated in a ring of "ghost" values on which the Adams
// operations psi^m act; Sym^n then follows from Newton's identity
// n h_n = sum_{i=1}^n psi^i(x) h_{n-i}.

constexpr std::size_t kGhostLength = 12;

struct CountOps {
    // (#X(F_q), #X(F_{q^2}), ...), possibly truncated
    using V = std::vector<Rational>;
    Integer q;

    V constant(const Rational &c) const { return V(kGhostLength, c); }
    V lefschetz(int k) const {
        V v(kGhostLength);
        Integer qm = 1;
        for (std::size_t m = 0; m < kGhostLength; ++m) {
            qm *= q;
            const Integer power = ipow(qm, static_cast<unsigned>(k >= 0 ? k : -k));
            v[m] = k >= 0 ? Rational(power) : Rational(1, power);
        }
        return v;
    }
    static V add(const V &a, const V &b) {
        V r(std::min(a.size(), b.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = a[i] + b[i];
        }
        return r;
    }
    static V mul(const V &a, const V &b) {
        V r(std::min(a.size(), b.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = a[i] * b[i];
        }
        return r;
    }
    static V scale(V a, const Rational &c) {
        for (auto &x : a) {
            x *= c;
        }
        return a;
    }
    static bool has_psi(const V &a, int m) { return a.size() >= static_cast<std::size_t>(m); }
    static V psi(const V &a, int m) {
        V r(a.size() / static_cast<std::size_t>(m));
        for (std::size_t j = 0; j < r.size(); ++j) {
            r[j] = a[(j + 1) * static_cast<std::size_t>(m) - 1];
        }
        return r;
    }
    static int max_sym() { return 1 << 20; }
    V atomic(const Environment &env, const std::string &name) const {
        auto it = env.counts().find(name);
        if (it == env.counts().end()) {
            throw RealizationError(fmt::format("symbol '{}' has no point count assigned", name));
        }
        V v;
        for (const auto &n : it->second) {
            v.emplace_back(n);
        }
        return v;
    }
    V from_override(const Value &v) const { return V{Rational(std::get<Integer>(v))}; }
    Value finish(const V &v) const {
        if (v.empty()) {
            throw RealizationError("count realization ran out of extension-field counts");
        }
        return to_integer(v[0], "count realization");
    }
};

struct EulerOps {
    using V = Rational;
    V constant(const Rational &c) const { return c; }
    V lefschetz(int) const { return 1; }
    static V add(const V &a, const V &b) { return a + b; }
    static V mul(const V &a, const V &b) { return a * b; }
    static V scale(const V &a, const Rational &c) { return a * c; }
    static bool has_psi(const V &, int) { return true; }
    static V psi(const V &a, int) { return a; }
    static int max_sym() { return 1 << 20; }
    V atomic(const Environment &env, const std::string &name) const {
        auto it = env.euler_values().find(name);
        if (it == env.euler_values().end()) {
            throw RealizationError(fmt::format("symbol '{}' has no Euler characteristic assigned", name));
        }
        return Rational(it->second);
    }
    V from_override(const Value &v) const { return Rational(std::get<Integer>(v)); }
    Value finish(const V &v) const { return to_integer(v, "euler realization"); }
};

struct RealOps {
    // (chi_R, chi_C): complex conjugation is psi^2-like, so psi^m is the
    // identity for odd m and (chi_C, chi_C) for even m.
    using V = std::pair<Rational, Rational>;
    V constant(const Rational &c) const { return {c, c}; }
    V lefschetz(int k) const { return {(k % 2 == 0) ? Rational(1) : Rational(-1), Rational(1)}; }
    static V add(const V &a, const V &b) { return {a.first + b.first, a.second + b.second}; }
    static V mul(const V &a, const V &b) { return {a.first * b.first, a.second * b.second}; }
    static V scale(const V &a, const Rational &c) { return {a.first * c, a.second * c}; }
    static bool has_psi(const V &, int) { return true; }
    static V psi(const V &a, int m) { return m % 2 == 0 ? V{a.second, a.second} : a; }
    static int max_sym() { return 2; }
    V atomic(const Environment &env, const std::string &name) const {
        auto it = env.real_values().find(name);
        if (it == env.real_values().end()) {
            throw RealizationError(fmt::format("symbol '{}' has no (chi_R, chi_C) pair assigned", name));
        }
        return {Rational(it->second.first), Rational(it->second.second)};
    }
    // complex part of an override is unknown; filled in by the caller
    V from_override(const Value &v) const { return {Rational(std::get<Integer>(v)), Rational(0)}; }
    Value finish(const V &v) const { return to_integer(v.first, "real Euler realization"); }
};

struct EOps {
    using V = std::map<std::pair<int, int>, Rational>;
    static void put(V &v, std::pair<int, int> k, const Rational &c) {
        if (c == 0) {
            return;
        }
        auto [it, ins] = v.try_emplace(k, c);
        if (!ins) {
            it->second += c;
            if (it->second == 0) {
                v.erase(it);
            }
        }
    }
    V constant(const Rational &c) const {
        V v;
        put(v, {0, 0}, c);
        return v;
    }
    V lefschetz(int k) const { return V{{{k, k}, Rational(1)}}; }
    static V add(V a, const V &b) {
        for (const auto &[k, c] : b) {
            put(a, k, c);
        }
        return a;
    }
    static V mul(const V &a, const V &b) {
        V r;
        for (const auto &[ka, ca] : a) {
            for (const auto &[kb, cb] : b) {
                put(r, {ka.first + kb.first, ka.second + kb.second}, ca * cb);
            }
        }
        return r;
    }
    static V scale(V a, const Rational &c) {
        if (c == 0) {
            return {};
        }
        for (auto &kv : a) {
            kv.second *= c;
        }
        return a;
    }
    static bool has_psi(const V &, int) { return true; }
    static V psi(const V &a, int m) {
        V r;
        for (const auto &[k, c] : a) {
            put(r, {k.first * m, k.second * m}, c);
        }
        return r;
    }
    static int max_sym() { return 1 << 20; }
    V atomic(const Environment &env, const std::string &name) const {
        auto it = env.e_values().find(name);
        if (it == env.e_values().end()) {
            throw RealizationError(fmt::format("symbol '{}' has no E-polynomial assigned", name));
        }
        V v;
        for (const auto &[k, c] : it->second.terms()) {
            v[k] = Rational(c);
        }
        return v;
    }
    V from_override(const Value &v) const {
        V r;
        for (const auto &[k, c] : std::get<EPolynomial>(v).terms()) {
            r[k] = Rational(c);
        }
        return r;
    }
    Value finish(const V &v) const {
        EPolynomial e;
        for (const auto &[k, c] : v) {
            e.add_term(k.first, k.second, to_integer(c, "E-polynomial realization"));
        }
        return e;
    }
};

template <class Ops>
class Evaluator {
  public:
    using V = typename Ops::V;

    Evaluator(const Environment &env, Ops ops) : env_(env), ops_(std::move(ops)) {}

    V value(const VirtualClass &a) {
        V total = ops_.constant(0);
        for (const auto &[m, c] : a.terms()) {
            total = Ops::add(total, Ops::scale(monomial(m), Rational(c)));
        }
        return total;
    }

    Value finish(const V &v) const { return ops_.finish(v); }

  private:
    V monomial(const Monomial &m) {
        V v = ops_.lefschetz(m.l_exp);
        for (const auto &s : m.symbols) {
            v = Ops::mul(v, symbol(s));
        }
        return v;
    }

    V symbol(const Symbol &s) {
        if (s.is_atomic()) {
            return ops_.atomic(env_, s.name());
        }
        const int n = s.power();
        if (n == 2 && s.factors().size() == 1 && s.factors()[0].is_atomic()) {
            auto it = env_.sym2_overrides().find(s.factors()[0].name());
            if (it != env_.sym2_overrides().end()) {
                V v = ops_.from_override(it->second);
                if constexpr (std::is_same_v<Ops, RealOps>) {
                    const Rational c = symbol(s.factors()[0]).second;
                    v.second = c * (c + 1) / 2;
                }
                return v;
            }
        }
        V base = ops_.constant(1);
        for (const auto &f : s.factors()) {
            base = Ops::mul(base, symbol(f));
        }
        return sym_power(base, n, s.name());
    }

    V sym_power(const V &x, int n, const std::string &label) {
        if (n > Ops::max_sym()) {
            throw RealizationError(
                fmt::format("{}: only Sym^2 is available in the {} realization", label, to_string(env_.target())));
        }
        if (!Ops::has_psi(x, n)) {
            throw RealizationError(fmt::format("{} needs point counts over F_(q^{}) for its factors", label, n));
        }
        std::vector<V> h{ops_.constant(1)};
        for (int k = 1; k <= n; ++k) {
            V acc = ops_.constant(0);
            for (int i = 1; i <= k; ++i) {
                acc = Ops::add(acc, Ops::mul(Ops::psi(x, i), h[static_cast<std::size_t>(k - i)]));
            }
            h.push_back(Ops::scale(acc, Rational(1, k)));
        }
        return h.back();
    }

    const Environment &env_;
    Ops ops_;
};

template <class Ops>
Value run(const VirtualClass &a, const Environment &env, Ops ops) {
    Evaluator<Ops> ev(env, std::move(ops));
    return ev.finish(ev.value(a));
}

} // namespace

Value realize(const VirtualClass &a, const Environment &env) {
    switch (env.target()) {
    case Target::count:
        return run(a, env, CountOps{env.q()});
    case Target::euler:
        return run(a, env, EulerOps{});
    case Target::real_euler:
        return run(a, env, RealOps{});
    case Target::e_polynomial:
        return run(a, env, EOps{});
    }
    throw std::logic_error("unknown realization target");
}

Integer realize_integer(const VirtualClass &a, const Environment &env) {
    Value v = realize(a, env);
    if (auto *i = std::get_if<Integer>(&v)) {
        return *i;
    }
    throw std::invalid_argument("realize_integer: target has polynomial values");
}

EPolynomial realize_e(const VirtualClass &a, const Environment &env) {
    Value v = realize(a, env);
    if (auto *e = std::get_if<EPolynomial>(&v)) {
        return *e;
    }
    throw std::invalid_argument("realize_e: target has integer values");
}

// ---------------------------------------------------------------- formulas

Integer chi_fano(const Integer &chi_y, const Integer &chi_sing) {
    return to_integer(Rational(chi_y * (chi_y - 3), 2), "chi_fano") + chi_sing;
}

Integer chi_real_fano(const Integer &chi_r, const Integer &chi_c, Parity parity, const Integer &chi_r_sing) {
    if (parity == Parity::odd) {
        const Rational half(chi_r * chi_r + chi_c, 2);
        if (!is_integral(half)) {
            throw IntegralityError(fmt::format("chi_real_fano: chi_R^2 + chi_C = {} is odd; inputs violate the "
                                               "parity constraint for odd-dimensional cubics",
                                               Integer(chi_r * chi_r + chi_c).str()));
        }
        return numerator(half) - chi_r_sing;
    }
    const Rational half(chi_r * (chi_r - 4) + chi_c, 2);
    if (!is_integral(half)) {
        throw IntegralityError(fmt::format("chi_real_fano: chi_R(chi_R - 4) + chi_C = {} is odd; inputs violate the "
                                           "parity constraint for even-dimensional cubics",
                                           Integer(chi_r * (chi_r - 4) + chi_c).str()));
    }
    return numerator(half) + chi_r_sing;
}

namespace {

Polynomial trimmed(Polynomial p) {
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
    return p;
}

// All monic-at-zero factors f of degree k (1 <= k < deg p) with nonnegative
// coefficients such that p = f * g with g of the same kind. Coefficients of
// f are bounded by those of p because everything is nonnegative.
void search_factors(const Polynomial &p, std::size_t k, Polynomial &f, std::size_t pos,
                    std::vector<Factorization> &out) {
    if (pos > k) {
        if (f.back() == 0) {
            return;
        }
        // divide p by f (f[0] = 1) and check remainder and signs
        const std::size_t gdeg = p.size() - 1 - k;
        Polynomial g(gdeg + 1, 0);
        Polynomial rem = p;
        for (std::size_t i = 0; i <= gdeg; ++i) {
            g[i] = rem[i];
            if (g[i] < 0) {
                return;
            }
            for (std::size_t j = 0; j <= k; ++j) {
                rem[i + j] -= g[i] * f[j];
            }
        }
        if (std::any_of(rem.begin(), rem.end(), [](const Integer &c) { return c != 0; }) || g.back() == 0) {
            return;
        }
        out.push_back({f, g});
        return;
    }
    for (Integer c = 0; c <= p[pos]; ++c) {
        f[pos] = c;
        search_factors(p, k, f, pos + 1, out);
    }
}

} // namespace

IndecomposabilityReport indecomposability_report(const Polynomial &psi_in, const Integer &h11, int dim) {
    if (dim != 3 && dim != 4) {
        throw std::invalid_argument(fmt::format("indecomposability_report: dimension must be 3 or 4, got {}", dim));
    }
    IndecomposabilityReport r;
    r.dim = dim;
    r.psi = trimmed(psi_in);
    r.h11 = h11;
    const Polynomial &psi = r.psi;
    if (psi.empty() || psi[0] != 1 ||
        std::any_of(psi.begin(), psi.end(), [](const Integer &c) { return c < 0; })) {
        throw std::invalid_argument("indecomposability_report: expected nonnegative coefficients and constant term 1");
    }
    const std::size_t deg = psi.size() - 1;
    for (std::size_t k = 1; 2 * k <= deg; ++k) {
        Polynomial f(k + 1, 0);
        f[0] = 1;
        search_factors(psi, k, f, 1, r.factorizations);
    }
    if (deg == 0) {
        r.notes.push_back("Psi is constant: every product of varieties without holomorphic forms matches");
        r.verdict = "inconclusive";
        return r;
    }
    if (dim == 3) {
        // 1 + g t + g(g-1)/2 t^2 is Psi of Sym^2 of a genus-g curve
        if (deg == 2) {
            const Integer g = psi[1];
            if (2 * psi[2] == g * (g - 1)) {
                r.sym2_genus = g;
                r.sym2_h11 = g * g + 1;
                r.sym2_excluded = h11 != *r.sym2_h11;
                r.notes.push_back(fmt::format("Psi equals that of Sym^2 C with g(C) = {}; h11 of Sym^2 C is {}, "
                                              "h11 of F(Y) is {}",
                                              g.str(), r.sym2_h11->str(), h11.str()));
            }
        }
        if (r.factorizations.empty()) {
            r.notes.push_back("no factorization (1 + a t)(1 + b t) with nonnegative integers a, b");
        }
        const bool sym2_ok = !r.sym2_genus || r.sym2_excluded;
        r.verdict = r.factorizations.empty() && sym2_ok ? "not decomposable" : "inconclusive";
    } else {
        if (r.factorizations.empty()) {
            r.notes.push_back("no factorization into two factors of degree <= 2 with nonnegative integer coefficients");
        }
        // Psi of Hilb^2 S starts 1 + q t + (p_g + q(q-1)/2) t^2
        const Integer q = psi.size() > 1 ? psi[1] : Integer(0);
        const Integer pg = (psi.size() > 2 ? psi[2] : Integer(0)) - q * (q - 1) / 2;
        if (pg >= 0) {
            r.hilb2_q = q;
            r.hilb2_pg = pg;
            r.notes.push_back(fmt::format("a Hilb^2 S model needs q(S) = {} and p_g(S) = {}", q.str(), pg.str()));
        }
        r.verdict = r.factorizations.empty() ? "no product factorization" : "inconclusive";
    }
    return r;
}

std::vector<Integer> hasse_weil_truncation(const std::vector<Integer> &point_counts, int order) {
    if (order < 1) {
        throw std::invalid_argument("hasse_weil_truncation: order must be >= 1");
    }
    if (point_counts.size() < static_cast<std::size_t>(order)) {
        throw std::invalid_argument(fmt::format("hasse_weil_truncation: need {} point counts, got {}", order,
                                                point_counts.size()));
    }
    std::vector<Rational> h{Rational(1)};
    std::vector<Integer> out;
    for (int n = 1; n <= order; ++n) {
        Rational acc = 0;
        for (int i = 1; i <= n; ++i) {
            acc += Rational(point_counts[static_cast<std::size_t>(i - 1)]) * h[static_cast<std::size_t>(n - i)];
        }
        acc /= n;
        h.push_back(acc);
        out.push_back(to_integer(acc, fmt::format("Sym^{} count", n)));
    }
    return out;
}

} // namespace cubicfano::realize
