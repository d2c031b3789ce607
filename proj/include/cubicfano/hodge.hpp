#pragma once

// Hodge numbers of smooth cubic hypersurfaces and of their Fano varieties of
// lines, as finitely supported tables (p, q) -> h^{p,q}.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubicfano/realizations.hpp"

namespace cubicfano::hodge {

class HodgeDiamond {
  public:
    using Dims = std::map<std::pair<int, int>, std::int64_t>;

    HodgeDiamond() = default;
    explicit HodgeDiamond(Dims dims);

    const Dims &dims() const { return dims_; }
    std::int64_t at(int p, int q) const;
    void add(int p, int q, std::int64_t n);
    bool is_zero() const { return dims_.empty(); }

    std::int64_t total_dimension() const;
    std::int64_t betti(int k) const;
    /// Highest degree p + q with a nonzero entry (-1 for the zero diamond).
    int top_degree() const;
    /// sum (-1)^{p+q} h^{p,q}
    std::int64_t euler_characteristic() const;
    bool is_symmetric() const;
    /// h^{p,q} = h^{n-p,n-q} with n = half the given weight.
    bool is_self_dual(int weight) const;

    HodgeDiamond &operator+=(const HodgeDiamond &o);
    friend HodgeDiamond operator+(HodgeDiamond a, const HodgeDiamond &b) { return a += b; }
    friend bool operator==(const HodgeDiamond &, const HodgeDiamond &) = default;

  private:
    Dims dims_;
};

/// h^{d-q,q} of the primitive middle cohomology of a smooth cubic d-fold.
HodgeDiamond primitive_hodge_cubic(int dim);
/// Full cohomology: Tate classes (k,k), k = 0..d, plus the primitive part.
HodgeDiamond cubic_hodge(int dim);
/// (p,q) -> (p+k, q+k), i.e. tensoring with Q(-k).
HodgeDiamond tate_twist(const HodgeDiamond &h, int k);
/// Graded symmetric square: alternating square on odd-weight pieces.
HodgeDiamond super_sym2(const HodgeDiamond &h);
/// Primitive cohomology twisted by Q(1): weight d - 2.
HodgeDiamond rational_defect_hodge(int dim);

/// One summand of the Fano decomposition.
struct Summand {
    enum class Kind { sym2, defect, tate };
    Kind kind;
    int twist = 0;
    std::int64_t multiplicity = 1;
    HodgeDiamond diamond;
    /// Cohomological degree in which the summand sits.
    int degree = 0;
};

std::string label(const Summand &s);

struct FanoDecomposition {
    int dim = 0;
    std::vector<Summand> summands;
    HodgeDiamond total;
};

FanoDecomposition fano_decomposition(int dim);
HodgeDiamond fano_hodge(int dim);

/// Diamond of Hilb^2 X from the diamond of a smooth projective d-fold X.
HodgeDiamond hilb2_hodge(const HodgeDiamond &h, int dim);

realize::EPolynomial e_polynomial(const HodgeDiamond &h);

/// Rows H^k from the top degree down, skipping zero rows. Entries of a row
/// sit in columns by p - q (halved when every entry has even degree). Each
/// row may carry a label, printed after a second bar.
std::string format_diamond(const HodgeDiamond &h, const std::map<int, std::string> &row_labels = {});

/// The Fano table with its decomposition labels per row.
std::string format_fano_table(int dim);

/// {"p,q": dim, ...}
std::string to_json(const HodgeDiamond &h);

} // namespace cubicfano::hodge
