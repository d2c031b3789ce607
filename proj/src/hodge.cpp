#include "cubicfano/hodge.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "cubicfano/motivic_ring.hpp"

namespace cubicfano::hodge {

HodgeDiamond::HodgeDiamond(Dims dims) {
    for (const auto &[k, n] : dims) {
        add(k.first, k.second, n);
    }
}

std::int64_t HodgeDiamond::at(int p, int q) const {
    auto it = dims_.find({p, q});
    return it == dims_.end() ? 0 : it->second;
}

void HodgeDiamond::add(int p, int q, std::int64_t n) {
    if (n == 0) {
        return;
    }
    auto &slot = dims_[{p, q}];
    slot += n;
    if (slot < 0) {
        throw std::invalid_argument(fmt::format("negative Hodge number at ({}, {})", p, q));
    }
    if (slot == 0) {
        dims_.erase({p, q});
    }
}

std::int64_t HodgeDiamond::total_dimension() const {
    std::int64_t s = 0;
    for (const auto &kv : dims_) {
        s += kv.second;
    }
    return s;
}

std::int64_t HodgeDiamond::betti(int k) const {
    std::int64_t s = 0;
    for (const auto &[pq, n] : dims_) {
        if (pq.first + pq.second == k) {
            s += n;
        }
    }
    return s;
}

int HodgeDiamond::top_degree() const {
    int top = -1;
    for (const auto &kv : dims_) {
        top = std::max(top, kv.first.first + kv.first.second);
    }
    return top;
}

std::int64_t HodgeDiamond::euler_characteristic() const {
    std::int64_t s = 0;
    for (const auto &[pq, n] : dims_) {
        s += ((pq.first + pq.second) % 2 == 0) ? n : -n;
    }
    return s;
}

bool HodgeDiamond::is_symmetric() const {
    return std::all_of(dims_.begin(), dims_.end(),
                       [this](const auto &kv) { return at(kv.first.second, kv.first.first) == kv.second; });
}

bool HodgeDiamond::is_self_dual(int weight) const {
    if (weight % 2 != 0) {
        return false;
    }
    const int n = weight / 2;
    return std::all_of(dims_.begin(), dims_.end(), [this, n](const auto &kv) {
        return at(n - kv.first.first, n - kv.first.second) == kv.second;
    });
}

HodgeDiamond &HodgeDiamond::operator+=(const HodgeDiamond &o) {
    for (const auto &[k, n] : o.dims_) {
        add(k.first, k.second, n);
    }
    return *this;
}

HodgeDiamond primitive_hodge_cubic(int dim) {
    if (dim < 1) {
        throw std::invalid_argument("primitive_hodge_cubic: dimension must be >= 1");
    }
    HodgeDiamond h;
    for (int q = 0; q <= dim; ++q) {
        // (d-1)/3 <= q <= (2d+1)/3
        if (3 * q < dim - 1 || 3 * q > 2 * dim + 1) {
            continue;
        }
        const Integer n = binomial(dim + 2, 3 * q - dim + 1);
        h.add(dim - q, q, static_cast<std::int64_t>(n));
    }
    return h;
}

HodgeDiamond cubic_hodge(int dim) {
    HodgeDiamond h = primitive_hodge_cubic(dim);
    for (int k = 0; k <= dim; ++k) {
        h.add(k, k, 1);
    }
    return h;
}

HodgeDiamond tate_twist(const HodgeDiamond &h, int k) {
    HodgeDiamond r;
    for (const auto &[pq, n] : h.dims()) {
        r.add(pq.first + k, pq.second + k, n);
    }
    return r;
}

HodgeDiamond super_sym2(const HodgeDiamond &h) {
    HodgeDiamond r;
    const auto &d = h.dims();
    for (auto a = d.begin(); a != d.end(); ++a) {
        const auto [p, q] = a->first;
        const std::int64_t n = a->second;
        if ((p + q) % 2 == 0) {
            r.add(2 * p, 2 * q, n * (n + 1) / 2);
        } else {
            r.add(2 * p, 2 * q, n * (n - 1) / 2);
        }
        for (auto b = std::next(a); b != d.end(); ++b) {
            r.add(p + b->first.first, q + b->first.second, n * b->second);
        }
    }
    return r;
}

HodgeDiamond rational_defect_hodge(int dim) { return tate_twist(primitive_hodge_cubic(dim), -1); }

std::string label(const Summand &s) {
    std::string base;
    switch (s.kind) {
    case Summand::Kind::sym2:
        base = "Sym^2(H_Y)";
        break;
    case Summand::Kind::defect:
        base = s.twist == 0 ? "H_Y" : fmt::format("H_Y({})", -s.twist);
        break;
    case Summand::Kind::tate:
        base = s.twist == 0 ? "Q" : fmt::format("Q({})", -s.twist);
        break;
    }
    if (s.multiplicity != 1) {
        base += fmt::format("^{}", s.multiplicity);
    }
    return base;
}

FanoDecomposition fano_decomposition(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("fano_hodge: dimension must be >= 2");
    }
    FanoDecomposition f;
    f.dim = dim;
    const HodgeDiamond hy = rational_defect_hodge(dim);
    f.summands.push_back({Summand::Kind::sym2, 0, 1, super_sym2(hy), 2 * (dim - 2)});
    for (int k = 0; k <= dim - 2; ++k) {
        f.summands.push_back({Summand::Kind::defect, k, 1, tate_twist(hy, k), dim - 2 + 2 * k});
    }
    const auto ak = motivic::ak_coefficients(dim);
    for (std::size_t k = 0; k < ak.size(); ++k) {
        if (ak[k] == 0) {
            continue;
        }
        const int kk = static_cast<int>(k);
        HodgeDiamond t;
        t.add(kk, kk, ak[k]);
        f.summands.push_back({Summand::Kind::tate, kk, ak[k], t, 2 * kk});
    }
    for (const auto &s : f.summands) {
        f.total += s.diamond;
    }
    return f;
}

HodgeDiamond fano_hodge(int dim) { return fano_decomposition(dim).total; }

HodgeDiamond hilb2_hodge(const HodgeDiamond &h, int dim) {
    if (dim < 1) {
        throw std::invalid_argument("hilb2_hodge: dimension must be >= 1");
    }
    HodgeDiamond r = super_sym2(h);
    for (int k = 1; k <= dim - 1; ++k) {
        r += tate_twist(h, k);
    }
    return r;
}

realize::EPolynomial e_polynomial(const HodgeDiamond &h) {
    realize::EPolynomial e;
    for (const auto &[pq, n] : h.dims()) {
        e.add_term(pq.first, pq.second, ((pq.first + pq.second) % 2 == 0) ? Integer(n) : Integer(-n));
    }
    return e;
}

std::string format_diamond(const HodgeDiamond &h, const std::map<int, std::string> &row_labels) {
    if (h.is_zero()) {
        return "0\n";
    }
    bool all_even = true;
    int min_col = 0, max_col = 0;
    std::size_t width = 1;
    bool first = true;
    for (const auto &[pq, n] : h.dims()) {
        if ((pq.first + pq.second) % 2 != 0) {
            all_even = false;
        }
        width = std::max(width, std::to_string(n).size());
    }
    auto column = [&](int p, int q) { return all_even ? (p - q) / 2 : p - q; };
    for (const auto &[pq, n] : h.dims()) {
        const int c = column(pq.first, pq.second);
        min_col = first ? c : std::min(min_col, c);
        max_col = first ? c : std::max(max_col, c);
        first = false;
    }
    const int top = h.top_degree();
    const std::size_t head = fmt::format("H^{}", top).size();
    std::string out;
    for (int k = top; k >= 0; --k) {
        if (h.betti(k) == 0) {
            continue;
        }
        std::vector<std::string> cells(static_cast<std::size_t>(max_col - min_col + 1), std::string(width, ' '));
        for (const auto &[pq, n] : h.dims()) {
            if (pq.first + pq.second != k) {
                continue;
            }
            // larger p - q to the left
            const auto slot = static_cast<std::size_t>(max_col - column(pq.first, pq.second));
            cells[slot] = fmt::format("{:>{}}", n, width);
        }
        std::string line = fmt::format("{:<{}} | ", fmt::format("H^{}", k), head);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                line += "  ";
            }
            line += cells[i];
        }
        auto lab = row_labels.find(k);
        if (lab != row_labels.end()) {
            line += " | " + lab->second;
        } else {
            line.erase(line.find_last_not_of(' ') + 1);
        }
        out += line + "\n";
    }
    return out;
}

std::string format_fano_table(int dim) {
    const FanoDecomposition f = fano_decomposition(dim);
    std::map<int, std::string> labels;
    for (const auto &s : f.summands) {
        if (s.diamond.is_zero()) {
            continue;
        }
        auto &l = labels[s.degree];
        l += (l.empty() ? "" : " + ") + label(s);
    }
    return format_diamond(f.total, labels);
}

std::string to_json(const HodgeDiamond &h) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto &[pq, n] : h.dims()) {
        j[fmt::format("{},{}", pq.first, pq.second)] = n;
    }
    return j.dump();
}

} // namespace cubicfano::hodge
