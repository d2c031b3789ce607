#include "cubicfano/cubic_form.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cubicfano/finite_geometry.hpp"

namespace cubicfano::geometry {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint32_t p) { return a * b % p; }

} // namespace

CubicForm::CubicForm(int dim, std::uint32_t p, std::vector<CubicTerm> terms) : dim_(dim), p_(p) {
    if (dim < 0 || dim > 250) {
        throw std::invalid_argument(fmt::format("unsupported cubic dimension {}", dim));
    }
    if (!is_prime(p)) {
        throw std::invalid_argument(fmt::format("cubic coefficient field: {} is not prime", p));
    }
    const int n = nvars();
    std::map<std::array<std::uint8_t, 3>, std::uint64_t> merged;
    for (auto t : terms) {
        std::sort(t.vars.begin(), t.vars.end());
        if (t.vars[2] >= n) {
            throw std::invalid_argument(fmt::format("variable x_{} out of range for d={}", t.vars[2], dim));
        }
        auto &c = merged[t.vars];
        c = (c + t.coeff % p) % p;
    }
    for (const auto &[vars, c] : merged) {
        if (c != 0) {
            terms_.push_back({vars, static_cast<Elem>(c)});
        }
    }
    if (terms_.empty()) {
        throw std::invalid_argument("cubic form is identically zero");
    }
    gradient_.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) {
        std::map<std::array<std::uint8_t, 2>, std::uint64_t> dq;
        for (const auto &t : terms_) {
            const auto mult = static_cast<std::uint64_t>(std::count(t.vars.begin(), t.vars.end(), i));
            if (mult == 0) {
                continue;
            }
            // remove one occurrence of x_i
            std::array<std::uint8_t, 2> rest{};
            bool removed = false;
            std::size_t k = 0;
            for (auto v : t.vars) {
                if (!removed && v == i) {
                    removed = true;
                    continue;
                }
                rest[k++] = v;
            }
            auto &c = dq[rest];
            c = (c + mulmod(mult, t.coeff, p)) % p;
        }
        for (const auto &[vars, c] : dq) {
            if (c != 0) {
                gradient_[static_cast<std::size_t>(i)].push_back({vars, static_cast<Elem>(c)});
            }
        }
    }
}

CubicForm CubicForm::from_exponents(int dim, std::uint32_t p,
                                    const std::vector<std::pair<std::int64_t, std::vector<int>>> &monomials) {
    std::vector<CubicTerm> terms;
    const auto pp = static_cast<std::int64_t>(p);
    for (const auto &[coeff, exps] : monomials) {
        if (static_cast<int>(exps.size()) != dim + 2) {
            throw std::invalid_argument(fmt::format("exponent vector has length {}, expected {}", exps.size(), dim + 2));
        }
        CubicTerm t;
        int deg = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0) {
                throw std::invalid_argument("negative exponent");
            }
            for (int r = 0; r < exps[i]; ++r) {
                if (deg >= 3) {
                    break;
                }
                t.vars[static_cast<std::size_t>(deg)] = static_cast<std::uint8_t>(i);
                ++deg;
            }
        }
        int total = 0;
        for (int e : exps) {
            total += e;
        }
        if (total != 3) {
            throw std::invalid_argument(fmt::format("monomial of degree {} in a cubic form", total));
        }
        t.coeff = static_cast<Elem>(((coeff % pp) + pp) % pp);
        terms.push_back(t);
    }
    return CubicForm(dim, p, std::move(terms));
}

std::vector<CubicForm::Monomial> CubicForm::monomials() const {
    std::vector<Monomial> out;
    for (const auto &t : terms_) {
        std::vector<int> e(static_cast<std::size_t>(nvars()), 0);
        for (auto v : t.vars) {
            ++e[v];
        }
        out.push_back({t.coeff, std::move(e)});
    }
    // graded reverse order of exponent vectors: x_0^3 first
    std::sort(out.begin(), out.end(), [](const Monomial &a, const Monomial &b) { return a.exponents > b.exponents; });
    return out;
}

Elem CubicForm::evaluate(const FiniteField &field, std::span<const Elem> x) const {
    Elem acc = 0;
    for (const auto &t : terms_) {
        const Elem xa = x[t.vars[0]];
        if (xa == 0) {
            continue;
        }
        const Elem m = field.mul(field.mul(xa, x[t.vars[1]]), x[t.vars[2]]);
        if (m != 0) {
            acc = field.add(acc, field.mul(t.coeff, m));
        }
    }
    return acc;
}

Elem evaluate_quadratic(const FiniteField &field, const std::vector<QuadraticTerm> &q, std::span<const Elem> x) {
    Elem acc = 0;
    for (const auto &t : q) {
        const Elem m = field.mul(x[t.vars[0]], x[t.vars[1]]);
        if (m != 0) {
            acc = field.add(acc, field.mul(t.coeff, m));
        }
    }
    return acc;
}

BinaryCubic CubicForm::restrict_to_line(const FiniteField &field, std::span<const Elem> u,
                                        std::span<const Elem> v) const {
    BinaryCubic c{0, 0, 0, 0};
    for (const auto &t : terms_) {
        const Elem ua = u[t.vars[0]], ub = u[t.vars[1]], uc = u[t.vars[2]];
        const Elem va = v[t.vars[0]], vb = v[t.vars[1]], vc = v[t.vars[2]];
        // (s ua + t va)(s ub + t vb)(s uc + t vc)
        const Elem s3 = field.mul(field.mul(ua, ub), uc);
        const Elem s2t = field.add(field.add(field.mul(field.mul(ua, ub), vc), field.mul(field.mul(ua, vb), uc)),
                                   field.mul(field.mul(va, ub), uc));
        const Elem st2 = field.add(field.add(field.mul(field.mul(ua, vb), vc), field.mul(field.mul(va, ub), vc)),
                                   field.mul(field.mul(va, vb), uc));
        const Elem t3 = field.mul(field.mul(va, vb), vc);
        c[0] = field.add(c[0], field.mul(t.coeff, s3));
        c[1] = field.add(c[1], field.mul(t.coeff, s2t));
        c[2] = field.add(c[2], field.mul(t.coeff, st2));
        c[3] = field.add(c[3], field.mul(t.coeff, t3));
    }
    return c;
}

std::map<std::vector<int>, Elem> CubicForm::substitute(std::span<const Elem> matrix, int m) const {
    const int n = nvars();
    if (m < 1 || static_cast<int>(matrix.size()) != n * m) {
        throw std::invalid_argument("substitute: matrix shape mismatch");
    }
    const auto mm = static_cast<std::size_t>(m);
    // dense accumulator indexed by sorted triples (i <= j <= k)
    std::vector<std::uint64_t> acc(mm * mm * mm, 0);
    auto entry = [&](int var, std::size_t j) { return matrix[static_cast<std::size_t>(var) * mm + j]; };
    for (const auto &t : terms_) {
        for (std::size_t i = 0; i < mm; ++i) {
            const Elem ai = entry(t.vars[0], i);
            if (ai == 0) {
                continue;
            }
            for (std::size_t j = 0; j < mm; ++j) {
                const Elem bj = entry(t.vars[1], j);
                if (bj == 0) {
                    continue;
                }
                const std::uint64_t aibj = mulmod(mulmod(t.coeff, ai, p_), bj, p_);
                for (std::size_t k = 0; k < mm; ++k) {
                    const Elem ck = entry(t.vars[2], k);
                    if (ck == 0) {
                        continue;
                    }
                    std::array<std::size_t, 3> idx{i, j, k};
                    std::sort(idx.begin(), idx.end());
                    auto &c = acc[(idx[0] * mm + idx[1]) * mm + idx[2]];
                    c = (c + mulmod(aibj, ck, p_)) % p_;
                }
            }
        }
    }
    std::map<std::vector<int>, Elem> out;
    for (std::size_t i = 0; i < mm; ++i) {
        for (std::size_t j = i; j < mm; ++j) {
            for (std::size_t k = j; k < mm; ++k) {
                const std::uint64_t c = acc[(i * mm + j) * mm + k];
                if (c != 0) {
                    std::vector<int> e(mm, 0);
                    ++e[i];
                    ++e[j];
                    ++e[k];
                    out.emplace(std::move(e), static_cast<Elem>(c));
                }
            }
        }
    }
    return out;
}

std::string CubicForm::to_text() const {
    std::string out = fmt::format("cubic d={} p={}\n", dim_, p_);
    for (const auto &m : monomials()) {
        out += fmt::format("{} {}\n", m.coeff, fmt::join(m.exponents, " "));
    }
    return out;
}

CubicForm CubicForm::parse_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int dim = -1;
    long long p = -1;
    std::vector<std::pair<std::int64_t, std::vector<int>>> monomials;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        if (dim < 0) {
            char dbuf[16] = {};
            if (std::sscanf(line.c_str(), " cubic d=%d p=%lld %15s", &dim, &p, dbuf) != 2 || dim < 0 || p < 2) {
                throw std::invalid_argument(
                    fmt::format("line {}: expected header 'cubic d=<d> p=<p>', got '{}'", lineno, line));
            }
            continue;
        }
        std::istringstream ls(line);
        std::int64_t coeff = 0;
        if (!(ls >> coeff)) {
            throw std::invalid_argument(fmt::format("line {}: expected coefficient", lineno));
        }
        std::vector<int> exps;
        int e = 0;
        while (ls >> e) {
            exps.push_back(e);
        }
        if (!ls.eof()) {
            throw std::invalid_argument(fmt::format("line {}: malformed exponent list", lineno));
        }
        if (static_cast<int>(exps.size()) != dim + 2) {
            throw std::invalid_argument(
                fmt::format("line {}: expected {} exponents, got {}", lineno, dim + 2, exps.size()));
        }
        monomials.emplace_back(coeff, std::move(exps));
    }
    if (dim < 0) {
        throw std::invalid_argument("missing 'cubic d=<d> p=<p>' header");
    }
    if (p > 0xFFFFFF) {
        throw std::invalid_argument("characteristic too large");
    }
    return from_exponents(dim, static_cast<std::uint32_t>(p), monomials);
}

bool operator==(const CubicForm &a, const CubicForm &b) {
    if (a.dim_ != b.dim_ || a.p_ != b.p_ || a.terms_.size() != b.terms_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].vars != b.terms_[i].vars || a.terms_[i].coeff != b.terms_[i].coeff) {
            return false;
        }
    }
    return true;
}

CubicForm fermat_cubic(int dim, std::uint32_t p) {
    std::vector<CubicTerm> terms;
    for (int i = 0; i < dim + 2; ++i) {
        const auto v = static_cast<std::uint8_t>(i);
        terms.push_back({{v, v, v}, 1});
    }
    return CubicForm(dim, p, std::move(terms));
}

CubicForm nodal_cubic(int dim, std::uint32_t p) {
    if (dim < 1) {
        throw std::invalid_argument("node(d) needs d >= 1");
    }
    std::vector<CubicTerm> terms;
    const int n = dim + 2;
    auto u8 = [](int i) { return static_cast<std::uint8_t>(i); };
    // x_0 * Q(x_1, ..., x_{d+1}) with Q = x_1 x_2 [+ x_3^2] + x_i x_{i+1} + ...
    const bool odd = (n - 1) % 2 == 1;
    terms.push_back({{0, 1, 2}, 1});
    int i = 3;
    if (odd) {
        terms.push_back({{0, 3, 3}, 1});
        i = 4;
    }
    for (; i + 1 < n; i += 2) {
        terms.push_back({{0, u8(i), u8(i + 1)}, 1});
    }
    for (int j = 1; j < n; ++j) {
        if (odd && j == 3) {
            continue;
        }
        terms.push_back({{u8(j), u8(j), u8(j)}, 1});
    }
    return CubicForm(dim, p, std::move(terms));
}

CubicForm random_cubic(int dim, std::uint32_t p, std::uint64_t seed) {
    if (!is_prime(p)) {
        throw std::invalid_argument(fmt::format("{} is not prime", p));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
    const int n = dim + 2;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<CubicTerm> terms;
        for (int a = 0; a < n; ++a) {
            for (int b = a; b < n; ++b) {
                for (int c = b; c < n; ++c) {
                    const Elem x = coeff(rng);
                    if (x != 0) {
                        terms.push_back({{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                                          static_cast<std::uint8_t>(c)},
                                         x});
                    }
                }
            }
        }
        if (terms.empty()) {
            continue;
        }
        CubicForm f(dim, p, std::move(terms));
        if (is_reduced(f)) {
            return f;
        }
    }
    throw std::runtime_error("random_cubic: no reduced cubic found");
}

CubicForm named_cubic(std::string_view name, int dim, std::uint32_t p, std::uint64_t seed) {
    if (name == "fermat") {
        return fermat_cubic(dim, p);
    }
    if (name == "node") {
        return nodal_cubic(dim, p);
    }
    if (name == "random") {
        return random_cubic(dim, p, seed);
    }
    throw std::invalid_argument(fmt::format("unknown named cubic '{}' (expected fermat, node or random)", name));
}

} // namespace cubicfano::geometry
