#pragma once

// Realization homomorphisms out of the formal class ring: point counting,
// complex and real Euler characteristic, Hodge-Deligne E-polynomials.
// Symmetric powers are evaluated through Adams operations, so only the data
// that the target's Sym rule needs has to be assigned.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cubicfano/integer.hpp"
#include "cubicfano/motivic_ring.hpp"

namespace cubicfano::realize {

/// Laurent polynomial in u, v with integer coefficients.
class EPolynomial {
  public:
    using Terms = std::map<std::pair<int, int>, Integer>;

    EPolynomial() = default;
    EPolynomial(const Integer &c); // NOLINT
    static EPolynomial monomial(int a, int b, const Integer &c = 1);

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Integer coefficient(int a, int b) const;
    void add_term(int a, int b, const Integer &c);

    /// E(1, 1).
    Integer at_one() const;
    /// E(u^m, v^m).
    EPolynomial adams(int m) const;

    EPolynomial &operator+=(const EPolynomial &o);
    friend EPolynomial operator+(EPolynomial a, const EPolynomial &b) { return a += b; }
    friend EPolynomial operator-(const EPolynomial &a);
    friend EPolynomial operator-(const EPolynomial &a, const EPolynomial &b) { return a + (-b); }
    friend EPolynomial operator*(const EPolynomial &a, const EPolynomial &b);
    friend bool operator==(const EPolynomial &, const EPolynomial &) = default;

  private:
    Terms terms_;
};

/// Sparse `c*u^a*v^b` form, lowest total degree first, "0" for zero.
std::string to_string(const EPolynomial &e);

/// Coefficients of a polynomial in t, index = degree.
using Polynomial = std::vector<Integer>;
std::string to_string(const Polynomial &p, char var = 't');

/// E(-t, 0). Throws std::invalid_argument if a term with v^0 has negative u-degree.
Polynomial psi_polynomial(const EPolynomial &e);

enum class Target { count, euler, real_euler, e_polynomial };
std::string to_string(Target t);

using Value = std::variant<Integer, EPolynomial>;
std::string to_string(const Value &v);

class RealizationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class Environment {
  public:
    /// Point counting over F_q. Symbols carry #X(F_q), #X(F_{q^2}), ...
    static Environment count(const Integer &q);
    /// Topological Euler characteristic (L -> 1).
    static Environment euler();
    /// Real Euler characteristic with compact support (L -> -1); symbols carry (chi_R, chi_C).
    static Environment real_euler();
    /// Hodge-Deligne polynomial (L -> uv).
    static Environment e_polynomial();

    Target target() const { return target_; }
    const Integer &q() const { return q_; }

    Environment &assign_counts(const std::string &name, std::vector<Integer> counts);
    Environment &assign_euler(const std::string &name, const Integer &chi);
    Environment &assign_real(const std::string &name, const Integer &chi_r, const Integer &chi_c);
    Environment &assign_e(const std::string &name, EPolynomial e);
    /// Value of Sym^2 of an atomic symbol, replacing the target's rule. For
    /// count this is #Sym^2 X(F_q); for real-euler it is chi_R(Sym^2 X).
    Environment &override_sym2(const std::string &name, Value v);

    bool is_assigned(const std::string &name) const;
    std::vector<std::string> assigned_names() const;

    const std::map<std::string, std::vector<Integer>> &counts() const { return counts_; }
    const std::map<std::string, Integer> &euler_values() const { return euler_; }
    const std::map<std::string, std::pair<Integer, Integer>> &real_values() const { return real_; }
    const std::map<std::string, EPolynomial> &e_values() const { return e_; }
    const std::map<std::string, Value> &sym2_overrides() const { return sym2_; }

  private:
    explicit Environment(Target t) : target_(t) {}

    Target target_;
    Integer q_ = 0;
    std::map<std::string, std::vector<Integer>> counts_;
    std::map<std::string, Integer> euler_;
    std::map<std::string, std::pair<Integer, Integer>> real_;
    std::map<std::string, EPolynomial> e_;
    std::map<std::string, Value> sym2_;
};

/// Ring-homomorphic evaluation. Integer for count/euler/real-euler, EPolynomial
/// for e-polynomial. Throws RealizationError naming any symbol it cannot
/// evaluate and IntegralityError if a Sym division does not land in Z.
Value realize(const motivic::VirtualClass &a, const Environment &env);
Integer realize_integer(const motivic::VirtualClass &a, const Environment &env);
EPolynomial realize_e(const motivic::VirtualClass &a, const Environment &env);

/// chi(F(Y)) = chi(Y)(chi(Y) - 3)/2 + chi(Sing Y).
Integer chi_fano(const Integer &chi_y, const Integer &chi_sing);

enum class Parity { even, odd };

/// Real Euler characteristic of F(Y) for a real cubic of the given dimension parity.
/// Throws IntegralityError when the inputs violate the parity constraint.
Integer chi_real_fano(const Integer &chi_r, const Integer &chi_c, Parity parity, const Integer &chi_r_sing);

struct Factorization {
    Polynomial left;
    Polynomial right;
};

struct IndecomposabilityReport {
    int dim = 0;
    Polynomial psi;
    Integer h11 = 0;
    /// Nontrivial factorizations into polynomials with nonnegative integer
    /// coefficients and constant term 1 (each factor of degree >= 1).
    std::vector<Factorization> factorizations;
    /// d = 3: the genus g with 1 + g t + g(g-1)/2 t^2 = psi, if any.
    std::optional<Integer> sym2_genus;
    /// d = 3: g^2 + 1, the h^{1,1} of Sym^2 of a genus-g curve.
    std::optional<Integer> sym2_h11;
    bool sym2_excluded = false;
    /// d = 4: invariants q, p_g a surface S needs for Psi(Hilb^2 S) to match.
    std::optional<Integer> hilb2_q;
    std::optional<Integer> hilb2_pg;
    std::vector<std::string> notes;
    /// "not decomposable" (d = 3), "no product factorization" (d = 4) or "inconclusive".
    std::string verdict;
};

IndecomposabilityReport indecomposability_report(const Polynomial &psi, const Integer &h11, int dim);

/// #Sym^m X(F_q) for m = 1..order from N_m = #X(F_{q^m}), as the coefficients
/// of exp(sum N_m t^m / m). Throws IntegralityError on inconsistent input.
std::vector<Integer> hasse_weil_truncation(const std::vector<Integer> &point_counts, int order);

} // namespace cubicfano::realize
