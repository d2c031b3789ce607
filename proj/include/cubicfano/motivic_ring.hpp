#pragma once

// Exact arithmetic in K_0(Var/k)[L^{-1}] restricted to formal classes:
// integer combinations of monomials (L^k times a multiset of symbols),
// together with truncated Kapranov symmetric-power series.

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cubicfano/integer.hpp"

namespace cubicfano::motivic {

/// A formal generator of the ring. Either an atomic variety name, or the
/// n-th symmetric power of a product of symbols that has no closed form.
class Symbol {
  public:
    enum class Kind { atomic, sym_power };

    static Symbol atomic(std::string name);
    /// Sym^n(f_1 * ... * f_r); factors are sorted, n >= 2.
    static Symbol sym_power(int n, std::vector<Symbol> factors);

    Kind kind() const { return kind_; }
    bool is_atomic() const { return kind_ == Kind::atomic; }
    const std::string &name() const { return name_; }
    int power() const { return power_; }
    const std::vector<Symbol> &factors() const { return factors_; }

    friend bool operator==(const Symbol &a, const Symbol &b) { return a.name_ == b.name_; }
    friend std::strong_ordering operator<=>(const Symbol &a, const Symbol &b) {
        return a.name_ <=> b.name_;
    }

  private:
    Symbol() = default;

    Kind kind_ = Kind::atomic;
    std::string name_;
    int power_ = 1;
    std::vector<Symbol> factors_;
};

/// L^l_exp * (product of symbols). Symbols are kept sorted with repetition.
struct Monomial {
    int l_exp = 0;
    std::vector<Symbol> symbols;

    friend bool operator==(const Monomial &, const Monomial &) = default;
    friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b) {
        if (auto c = a.l_exp <=> b.l_exp; c != 0) {
            return c;
        }
        return a.symbols <=> b.symbols;
    }
};

Monomial operator*(const Monomial &a, const Monomial &b);

class VirtualClass {
  public:
    using Terms = std::map<Monomial, Integer>;

    VirtualClass() = default;
    VirtualClass(long long n); // NOLINT: integers are classes of finite point sets
    VirtualClass(const Integer &n);
    VirtualClass(const Symbol &s); // NOLINT

    static VirtualClass lefschetz(int k = 1);
    static VirtualClass symbol(std::string name) { return VirtualClass(Symbol::atomic(std::move(name))); }
    static VirtualClass from_monomial(Monomial m, Integer c = 1);

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of a monomial (0 if absent).
    Integer coefficient(const Monomial &m) const;
    int min_l_exponent() const;
    int max_l_exponent() const;

    VirtualClass &operator+=(const VirtualClass &o);
    VirtualClass &operator-=(const VirtualClass &o);
    VirtualClass &operator*=(const VirtualClass &o);

    friend VirtualClass operator+(VirtualClass a, const VirtualClass &b) { return a += b; }
    friend VirtualClass operator-(VirtualClass a, const VirtualClass &b) { return a -= b; }
    friend VirtualClass operator*(const VirtualClass &a, const VirtualClass &b);
    friend VirtualClass operator-(const VirtualClass &a);
    friend bool operator==(const VirtualClass &, const VirtualClass &) = default;

    /// Multiply by L^k.
    VirtualClass shifted(int k) const;

  private:
    void add_term(const Monomial &m, const Integer &c);

    Terms terms_;
};

VirtualClass add(const VirtualClass &a, const VirtualClass &b);
VirtualClass mul(const VirtualClass &a, const VirtualClass &b);

/// [P^n] = 1 + L + ... + L^n.
VirtualClass projective_space(int n);

/// [Bl_Z X] = [X] - [Z] + [P^{c-1}][Z] for a smooth center of codimension c.
VirtualClass blowup_class(const VirtualClass &x, const VirtualClass &z, int codim);

/// M_X = ([X] - [P^d]) / L.
VirtualClass rational_defect(const VirtualClass &x, int dim);

/// Truncated power series sum_{n <= order} c_n t^n with class coefficients.
class SymSeries {
  public:
    explicit SymSeries(int order); // the unit series
    SymSeries(std::vector<VirtualClass> coefficients);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const VirtualClass &operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
    const std::vector<VirtualClass> &coefficients() const { return coeffs_; }

    SymSeries inverse() const;
    friend SymSeries operator*(const SymSeries &a, const SymSeries &b);
    friend bool operator==(const SymSeries &, const SymSeries &) = default;

  private:
    std::vector<VirtualClass> coeffs_;
};

/// Sym^n of a bare symbol product (no L, coefficient one).
VirtualClass sym_power_of_symbols(const std::vector<Symbol> &symbols, int n);

/// Kapranov series Sym_t(a) truncated at t^order; extended multiplicatively
/// to negative coefficients through series inversion.
SymSeries sym_series(const VirtualClass &a, int order);
VirtualClass sym_power(const VirtualClass &a, int n);
VirtualClass sym2(const VirtualClass &a);

/// [Hilb^2 X] for a reduced hypersurface X of dimension d in a smooth variety.
VirtualClass hilb2_class(const VirtualClass &x, int dim, const VirtualClass &sing);

/// [F(Y)] = Sym^2(M_Y + [P^{d-2}]) - L^{d-2}(1 - [Sing Y]).
VirtualClass fano_class_from_defect(const VirtualClass &m_y, int dim, const VirtualClass &sing);

/// Tate multiplicities a_0..a_{2d-4} of the Fano variety of lines.
std::vector<int> ak_coefficients(int dim);

/// Image in K_0 / (L). Throws std::invalid_argument on negative L-powers.
VirtualClass reduce_mod_L(const VirtualClass &a);

std::string to_string(const Symbol &s);
std::string to_string(const VirtualClass &a);

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Inverse of to_string; also accepts extra whitespace and `X^k` powers.
VirtualClass parse_class(std::string_view text);

} // namespace cubicfano::motivic
