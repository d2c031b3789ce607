#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubicfano/finite_field.hpp"

namespace cubicfano::geometry {

/// coeff * x_a x_b x_c with a <= b <= c.
struct CubicTerm {
    std::array<std::uint8_t, 3> vars{};
    Elem coeff = 0;
};

/// coeff * x_a x_b with a <= b.
struct QuadraticTerm {
    std::array<std::uint8_t, 2> vars{};
    Elem coeff = 0;
};

/// Coefficients of c0 s^3 + c1 s^2 t + c2 s t^2 + c3 t^3.
using BinaryCubic = std::array<Elem, 4>;

/// Homogeneous cubic in d+2 variables with coefficients in F_p, defining a
/// hypersurface of dimension d in P^{d+1}.
class CubicForm {
  public:
    struct Monomial {
        Elem coeff;
        std::vector<int> exponents;
    };

    /// Terms may repeat and be unsorted; they are merged. Throws
    /// std::invalid_argument if the form is identically zero.
    CubicForm(int dim, std::uint32_t p, std::vector<CubicTerm> terms);

    /// From (coefficient, exponent vector) pairs; coefficients are reduced mod p.
    static CubicForm from_exponents(int dim, std::uint32_t p,
                                    const std::vector<std::pair<std::int64_t, std::vector<int>>> &monomials);

    int dim() const { return dim_; }
    int nvars() const { return dim_ + 2; }
    std::uint32_t characteristic() const { return p_; }
    const std::vector<CubicTerm> &terms() const { return terms_; }
    std::vector<Monomial> monomials() const;

    /// Value at a point with coordinates in an extension of F_p.
    Elem evaluate(const FiniteField &field, std::span<const Elem> x) const;

    /// Formal partial derivatives, one quadratic form per variable.
    const std::vector<std::vector<QuadraticTerm>> &gradient() const { return gradient_; }

    /// f(s u + t v) by exact monomial-by-monomial expansion.
    BinaryCubic restrict_to_line(const FiniteField &field, std::span<const Elem> u, std::span<const Elem> v) const;

    /// f(A y) for an nvars x m matrix A over F_p (row-major). Returns the
    /// coefficients keyed by exponent vectors of length m.
    std::map<std::vector<int>, Elem> substitute(std::span<const Elem> matrix, int m) const;

    /// Text serialization: header `cubic d=<d> p=<p>` then `<coeff> <e_0> ... <e_{d+1}>` lines.
    std::string to_text() const;
    static CubicForm parse_text(std::string_view text);

    friend bool operator==(const CubicForm &a, const CubicForm &b);

  private:
    int dim_;
    std::uint32_t p_;
    std::vector<CubicTerm> terms_;
    std::vector<std::vector<QuadraticTerm>> gradient_;
};

Elem evaluate_quadratic(const FiniteField &field, const std::vector<QuadraticTerm> &q, std::span<const Elem> x);

/// Named catalog entries.
CubicForm fermat_cubic(int dim, std::uint32_t p);
/// x_0 Q(x_1..x_{d+1}) + C(x_1..x_{d+1}), where Q is the split quadric
/// x_1 x_2 + x_3 x_4 + ... (x_1 x_2 + x_3^2 + x_4 x_5 + ... when d+1 is odd)
/// and C is the sum of x_j^3 over the j whose square is not in Q. Singular
/// at (1:0:...:0); further singular points sit over the singular points of
/// {Q = C = 0}, so the node is the only one for instance at d=2, p=7, while
/// in characteristic 3 C is a cube and the singular locus grows.
CubicForm nodal_cubic(int dim, std::uint32_t p);
/// Uniform random coefficients from a seeded mt19937_64; redrawn until the
/// form is reduced.
CubicForm random_cubic(int dim, std::uint32_t p, std::uint64_t seed);
/// Catalog lookup for `fermat`, `node` and `random` (the latter needs a seed).
CubicForm named_cubic(std::string_view name, int dim, std::uint32_t p, std::uint64_t seed = 0);

} // namespace cubicfano::geometry
