#pragma once

// Brute-force geometry of a cubic hypersurface Y in P^{d+1} over a prime
// field F_q: points over F_q, F_{q^2}, F_{q^3}, the singular locus, lines in
// Gr(2, d+2), and pair-counting oracles for Sym^2 Y and Hilb^2 Y.

#include <cstdint>
#include <vector>

#include "cubicfano/cubic_form.hpp"
#include "cubicfano/finite_field.hpp"
#include "cubicfano/integer.hpp"

namespace cubicfano::geometry {

/// Degree of parallelism for the enumeration kernels. Results never depend on it.
struct ScanOptions {
    unsigned threads = 1;
};

/// Reduced row-echelon basis of a 2-dimensional subspace of F_q^{n}.
struct LineRep {
    std::vector<Elem> u;
    std::vector<Elem> v;

    friend bool operator==(const LineRep &, const LineRep &) = default;
    friend auto operator<=>(const LineRep &, const LineRep &) = default;
};

using ProjectivePoint = std::vector<Elem>;

/// Gaussian binomial [n choose 2]_q: number of lines in P^{n-1}(F_q).
std::uint64_t grassmannian_line_count(std::uint64_t q, int nvars);

/// #{x in P^{d+1}(F) : f(x) = 0} for F = field (prime or extension of F_p).
std::uint64_t count_points(const CubicForm &f, const FiniteField &field, ScanOptions opts = {});

/// All rational zeros of f at which every partial derivative also vanishes.
std::vector<ProjectivePoint> singular_points(const CubicForm &f, const FiniteField &field, ScanOptions opts = {});

/// No singular points over F_q nor over F_{q^2}. A cheap stand-in for
/// smoothness; smoothness over the algebraic closure is not certified.
bool passes_smoothness_proxy(const CubicForm &f, ScanOptions opts = {});

/// Total number of canonical line representatives visited by the scan.
std::uint64_t line_scan_size(const CubicForm &f, const FiniteField &field);

/// Lines over F_q contained in Y, by vanishing of the restricted binary cubic.
std::vector<LineRep> enumerate_lines(const CubicForm &f, const FiniteField &field, ScanOptions opts = {});

/// Same membership test, by sampling all q+1 points of the line instead of
/// expanding coefficients. Only conclusive when q + 1 > 3.
bool line_contained_by_sampling(const CubicForm &f, const FiniteField &field, const LineRep &line);
bool line_contained(const CubicForm &f, const FiniteField &field, const LineRep &line);

/// True unless f = c * l^2 * m for linear forms l, m over F_q (this covers
/// l^3). Any repeated factor of a cubic is defined over the base field.
bool is_reduced(const CubicForm &f);

/// Frobenius-stable unordered pairs {a, b} of points of Y(F_{q^2}).
Integer count_sym2_points(const CubicForm &f, const FiniteField &field, ScanOptions opts = {});

/// F_q-points of Hilb^2 Y: Frobenius-stable reduced pairs plus, for every
/// rational point x, the rational tangent directions at x (lines through x
/// meeting Y with multiplicity >= 2 at x). Throws if f is not reduced.
Integer count_hilb2_points(const CubicForm &f, const FiniteField &field, ScanOptions opts = {});

/// Point and line data of one brute-force run.
struct CubicCensus {
    std::uint64_t q = 0;
    int dim = 0;
    std::uint64_t n1 = 0;       // #Y(F_q)
    std::uint64_t n2 = 0;       // #Y(F_{q^2})
    std::uint64_t ns = 0;       // #Sing(Y)(F_q)
    std::uint64_t lines = 0;    // #F(Y)(F_q)
    Integer sym2;               // #Sym^2 Y(F_q)
    Integer hilb2;              // #Hilb^2 Y(F_q)
};

CubicCensus brute_force_census(const CubicForm &f, const FiniteField &field, ScanOptions opts = {});

struct YFYCheck {
    CubicCensus census;
    Integer hilb_lhs;  // #Hilb^2 Y
    Integer hilb_rhs;  // #P^d * N_1 + q^2 #F(Y)
    Integer sym_lhs;   // #Sym^2 Y
    Integer sym_rhs;   // (1 + q^d) N_1 + q^2 #F(Y) - q^d N_s
    bool hilb_holds() const { return hilb_lhs == hilb_rhs; }
    bool sym_holds() const { return sym_lhs == sym_rhs; }
};

/// Both counting forms of the Y-F(Y) relation with brute-forced ingredients.
YFYCheck verify_yfy_counting(const CubicForm &f, const FiniteField &field, ScanOptions opts = {});

/// (N_1^2 - 2(1+q^d) N_1 + N_2) / (2 q^2) + q^{d-2} N_s, exactly: the Sym^2
/// form of the counting relation solved for #F(Y)(F_q).
Rational count_fano_by_formula(const Integer &n1, const Integer &n2, const Integer &ns, const Integer &q, int dim);

/// #Sym^m Y(F_q) for m = 1..order via the Hasse-Weil exponential, with
/// #Y(F_{q^m}) brute-forced for m <= order. order is at most 3.
std::vector<Integer> zeta_sym_counts(const CubicForm &f, const FiniteField &field, int order, ScanOptions opts = {});

/// Number of closed points of each degree 1..max_degree, from explicit
/// Frobenius orbits on Y(F_{q^m}).
std::vector<std::uint64_t> closed_point_degrees(const CubicForm &f, const FiniteField &field, int max_degree);

/// Effective 0-cycles of degree m built from closed points with the given
/// degree histogram (histogram[k-1] points of degree k), by enumeration.
Integer count_effective_cycles(const std::vector<std::uint64_t> &histogram, int m);

} // namespace cubicfano::geometry
