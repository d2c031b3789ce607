#include "cubicfano/motivic_ring.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace cubicfano::motivic {

namespace {

// X^2 * Y style rendering of a sorted multiset.
std::string join_symbols(const std::vector<Symbol> &symbols) {
    std::string out;
    for (std::size_t i = 0; i < symbols.size();) {
        std::size_t j = i;
        while (j < symbols.size() && symbols[j] == symbols[i]) {
            ++j;
        }
        if (!out.empty()) {
            out += " * ";
        }
        out += symbols[i].name();
        if (j - i > 1) {
            out += fmt::format("^{}", j - i);
        }
        i = j;
    }
    return out;
}

bool valid_identifier(const std::string &name) {
    if (name.empty() || name == "L") {
        return false;
    }
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
        return false;
    }
    if (name.rfind("Sym", 0) == 0 && name.size() > 3 &&
        std::all_of(name.begin() + 3, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        return false;
    }
    return std::all_of(name.begin(), name.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

} // namespace

Symbol Symbol::atomic(std::string name) {
    if (!valid_identifier(name)) {
        throw std::invalid_argument("invalid symbol name '" + name + "'");
    }
    Symbol s;
    s.kind_ = Kind::atomic;
    s.name_ = std::move(name);
    return s;
}

Symbol Symbol::sym_power(int n, std::vector<Symbol> factors) {
    if (n < 2) {
        throw std::invalid_argument("Sym^n symbol needs n >= 2");
    }
    if (factors.empty()) {
        throw std::invalid_argument("Sym^n of the empty product is 1, not a symbol");
    }
    std::sort(factors.begin(), factors.end());
    Symbol s;
    s.kind_ = Kind::sym_power;
    s.power_ = n;
    s.name_ = fmt::format("Sym{}({})", n, join_symbols(factors));
    s.factors_ = std::move(factors);
    return s;
}

Monomial operator*(const Monomial &a, const Monomial &b) {
    Monomial m;
    m.l_exp = a.l_exp + b.l_exp;
    m.symbols.reserve(a.symbols.size() + b.symbols.size());
    std::merge(a.symbols.begin(), a.symbols.end(), b.symbols.begin(), b.symbols.end(),
               std::back_inserter(m.symbols));
    return m;
}

VirtualClass::VirtualClass(long long n) : VirtualClass(Integer(n)) {}

VirtualClass::VirtualClass(const Integer &n) {
    if (n != 0) {
        terms_.emplace(Monomial{}, n);
    }
}

VirtualClass::VirtualClass(const Symbol &s) { terms_.emplace(Monomial{0, {s}}, 1); }

VirtualClass VirtualClass::lefschetz(int k) { return from_monomial(Monomial{k, {}}); }

VirtualClass VirtualClass::from_monomial(Monomial m, Integer c) {
    VirtualClass r;
    r.add_term(m, c);
    return r;
}

Integer VirtualClass::coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
}

int VirtualClass::min_l_exponent() const {
    int r = 0;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        r = first ? m.l_exp : std::min(r, m.l_exp);
        first = false;
    }
    return r;
}

int VirtualClass::max_l_exponent() const {
    int r = 0;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        r = first ? m.l_exp : std::max(r, m.l_exp);
        first = false;
    }
    return r;
}

void VirtualClass::add_term(const Monomial &m, const Integer &c) {
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

VirtualClass &VirtualClass::operator+=(const VirtualClass &o) {
    for (const auto &[m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

VirtualClass &VirtualClass::operator-=(const VirtualClass &o) {
    for (const auto &[m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

VirtualClass operator*(const VirtualClass &a, const VirtualClass &b) {
    VirtualClass r;
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

VirtualClass &VirtualClass::operator*=(const VirtualClass &o) { return *this = *this * o; }

VirtualClass operator-(const VirtualClass &a) {
    VirtualClass r;
    for (const auto &[m, c] : a.terms_) {
        r.terms_.emplace(m, -c);
    }
    return r;
}

VirtualClass VirtualClass::shifted(int k) const {
    VirtualClass r;
    for (const auto &[m, c] : terms_) {
        r.terms_.emplace(Monomial{m.l_exp + k, m.symbols}, c);
    }
    return r;
}

VirtualClass add(const VirtualClass &a, const VirtualClass &b) { return a + b; }
VirtualClass mul(const VirtualClass &a, const VirtualClass &b) { return a * b; }

VirtualClass projective_space(int n) {
    if (n < 0) {
        throw std::invalid_argument("projective_space: negative dimension");
    }
    VirtualClass r;
    for (int k = 0; k <= n; ++k) {
        r += VirtualClass::lefschetz(k);
    }
    return r;
}

VirtualClass blowup_class(const VirtualClass &x, const VirtualClass &z, int codim) {
    if (codim < 1) {
        throw std::invalid_argument("blowup_class: codimension must be >= 1");
    }
    return x - z + projective_space(codim - 1) * z;
}

VirtualClass rational_defect(const VirtualClass &x, int dim) {
    return (x - projective_space(dim)).shifted(-1);
}

SymSeries::SymSeries(int order) {
    if (order < 0) {
        throw std::invalid_argument("SymSeries: negative order");
    }
    coeffs_.assign(static_cast<std::size_t>(order) + 1, VirtualClass{});
    coeffs_[0] = 1;
}

SymSeries::SymSeries(std::vector<VirtualClass> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) {
        throw std::invalid_argument("SymSeries: empty coefficient list");
    }
}

SymSeries operator*(const SymSeries &a, const SymSeries &b) {
    const int n = std::min(a.order(), b.order());
    std::vector<VirtualClass> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (int j = 0; i + j <= n; ++j) {
            c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
        }
    }
    return SymSeries(std::move(c));
}

SymSeries SymSeries::inverse() const {
    if (coeffs_[0] != VirtualClass(1)) {
        throw std::invalid_argument("SymSeries::inverse: constant term must be 1");
    }
    const int n = order();
    std::vector<VirtualClass> b(static_cast<std::size_t>(n) + 1);
    b[0] = 1;
    for (int k = 1; k <= n; ++k) {
        VirtualClass acc;
        for (int i = 1; i <= k; ++i) {
            acc += coeffs_[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k - i)];
        }
        b[static_cast<std::size_t>(k)] = -acc;
    }
    return SymSeries(std::move(b));
}

VirtualClass sym_power_of_symbols(const std::vector<Symbol> &symbols, int n) {
    if (n < 0) {
        throw std::invalid_argument("sym_power: negative degree");
    }
    if (n == 0 || symbols.empty()) {
        return 1;
    }
    if (n == 1) {
        return VirtualClass::from_monomial(Monomial{0, symbols});
    }
    return VirtualClass(Symbol::sym_power(n, symbols));
}

namespace {

SymSeries power(SymSeries base, Integer exponent, int order) {
    SymSeries result(order);
    while (exponent > 0) {
        if ((exponent & 1) != 0) {
            result = result * base;
        }
        exponent >>= 1;
        if (exponent > 0) {
            base = base * base;
        }
    }
    return result;
}

} // namespace

SymSeries sym_series(const VirtualClass &a, int order) {
    if (order < 0) {
        throw std::invalid_argument("sym_series: negative order");
    }
    SymSeries result(order);
    for (const auto &[m, c] : a.terms()) {
        // Sym_t(L^k M) = sum_n L^{kn} Sym^n(M) t^n
        std::vector<VirtualClass> coeffs;
        coeffs.reserve(static_cast<std::size_t>(order) + 1);
        for (int n = 0; n <= order; ++n) {
            coeffs.push_back(sym_power_of_symbols(m.symbols, n).shifted(m.l_exp * n));
        }
        SymSeries base(std::move(coeffs));
        if (c < 0) {
            base = base.inverse();
        }
        result = result * power(std::move(base), boost::multiprecision::abs(c), order);
    }
    return result;
}

VirtualClass sym_power(const VirtualClass &a, int n) { return sym_series(a, n)[n]; }

VirtualClass sym2(const VirtualClass &a) { return sym_power(a, 2); }

VirtualClass hilb2_class(const VirtualClass &x, int dim, const VirtualClass &sing) {
    if (dim < 1) {
        throw std::invalid_argument("hilb2_class: dimension must be >= 1");
    }
    return sym2(x) + (projective_space(dim - 1) - 1) * x + sing.shifted(dim);
}

VirtualClass fano_class_from_defect(const VirtualClass &m_y, int dim, const VirtualClass &sing) {
    if (dim < 2) {
        throw std::invalid_argument("fano_class_from_defect: dimension must be >= 2");
    }
    return sym2(m_y + projective_space(dim - 2)) - (VirtualClass(1) - sing).shifted(dim - 2);
}

std::vector<int> ak_coefficients(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("ak_coefficients: dimension must be >= 2");
    }
    std::vector<int> a;
    for (int k = 0; k <= 2 * dim - 4; ++k) {
        if (k < dim - 2) {
            a.push_back((k + 2) / 2);
        } else if (k == dim - 2) {
            a.push_back((dim - 2) / 2);
        } else {
            a.push_back((2 * dim - 2 - k) / 2);
        }
    }
    return a;
}

VirtualClass reduce_mod_L(const VirtualClass &a) {
    VirtualClass r;
    for (const auto &[m, c] : a.terms()) {
        if (m.l_exp < 0) {
            throw std::invalid_argument("reduce_mod_L: class has negative L-powers and does not lie in K_0(Var)");
        }
        if (m.l_exp == 0) {
            r += VirtualClass::from_monomial(m, c);
        }
    }
    return r;
}

std::string to_string(const Symbol &s) { return s.name(); }

std::string to_string(const VirtualClass &a) {
    if (a.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[m, c] : a.terms()) {
        const bool negative = c < 0;
        const Integer mag = negative ? Integer(-c) : c;
        std::vector<std::string> factors;
        const bool bare = m.l_exp == 0 && m.symbols.empty();
        if (mag != 1 || bare) {
            factors.push_back(mag.str());
        }
        if (m.l_exp == 1) {
            factors.emplace_back("L");
        } else if (m.l_exp != 0) {
            factors.push_back(fmt::format("L^{}", m.l_exp));
        }
        if (!m.symbols.empty()) {
            factors.push_back(join_symbols(m.symbols));
        }
        std::string term = fmt::format("{}", fmt::join(factors, " * "));
        if (first) {
            out = negative ? "-" + term : term;
        } else {
            out += negative ? " - " : " + ";
            out += term;
        }
        first = false;
    }
    return out;
}

} // namespace cubicfano::motivic
