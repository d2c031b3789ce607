#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cubicfano::geometry {

using Elem = std::uint32_t;

bool is_prime(std::uint64_t n);

/// F_{p^k} for prime p and k in {1, 2, 3}.
///
/// Elements are encoded as integers c_0 + c_1 p + c_2 p^2 where c_i are the
/// coefficients in the polynomial basis 1, a, a^2 for a root a of the
/// modulus. The prime subfield is therefore {0, ..., p-1} with its natural
/// encoding. Multiplication goes through discrete log tables.
class FiniteField {
  public:
    static FiniteField prime(std::uint32_t p);
    /// Degree-k extension of F_p defined by the lexicographically smallest
    /// monic irreducible polynomial of degree k.
    static FiniteField extension(std::uint32_t p, int degree);

    std::uint32_t characteristic() const { return p_; }
    int degree() const { return degree_; }
    std::uint32_t size() const { return size_; }
    bool is_prime_field() const { return degree_ == 1; }

    /// Coefficients m_0..m_{k-1} of the monic modulus x^k + sum m_i x^i.
    const std::vector<Elem> &modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const {
        if (degree_ == 1) {
            const Elem s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        Elem r = 0;
        Elem scale = 1;
        for (int i = 0; i < degree_; ++i) {
            Elem d = a % p_ + b % p_;
            if (d >= p_) {
                d -= p_;
            }
            r += d * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return r;
    }

    Elem neg(Elem a) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) {
            return 0;
        }
        std::uint32_t e = log_[a] + log_[b];
        if (e >= size_ - 1) {
            e -= size_ - 1;
        }
        return exp_[e];
    }

    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t e) const;
    /// x -> x^p.
    Elem frobenius(Elem a) const { return pow(a, p_); }

    /// Image of an integer under Z -> F_p -> this field.
    Elem from_int(std::int64_t n) const;

    /// Multiplicative generator used for the log tables.
    Elem generator() const;

  private:
    FiniteField(std::uint32_t p, int degree, std::vector<Elem> modulus);

    // Schoolbook product reduced by the modulus; used only to build tables.
    Elem slow_mul(Elem a, Elem b) const;

    std::uint32_t p_;
    int degree_;
    std::uint32_t size_;
    std::vector<Elem> modulus_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
};

/// Number of points of P^{n-1} over a field with q elements.
std::uint64_t projective_point_count(std::uint64_t q, int nvars);

/// Visit canonical projective representatives (first nonzero coordinate 1)
/// with global indices in [begin, end). The enumeration order is fixed: by
/// position of the leading 1, then odometer order on the tail coordinates
/// with the last coordinate varying fastest.
template <class Fn>
void for_each_projective_point(std::uint32_t q, int nvars, std::uint64_t begin, std::uint64_t end, Fn &&fn);

/// Decode the canonical representative with the given global index.
void projective_point_at(std::uint32_t q, int nvars, std::uint64_t index, std::span<Elem> out);

/// Normalize a nonzero vector so that its first nonzero coordinate is 1.
void normalize_projective(const FiniteField &field, std::span<Elem> v);

/// Global index of a normalized representative.
std::uint64_t projective_index(std::uint32_t q, std::span<const Elem> v);

template <class Fn>
void for_each_projective_point(std::uint32_t q, int nvars, std::uint64_t begin, std::uint64_t end, Fn &&fn) {
    if (begin >= end) {
        return;
    }
    std::vector<Elem> x(static_cast<std::size_t>(nvars), 0);
    projective_point_at(q, nvars, begin, x);
    int lead = 0;
    while (x[static_cast<std::size_t>(lead)] == 0) {
        ++lead;
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
        fn(idx, std::span<const Elem>(x));
        // advance the odometer on coordinates lead+1..nvars-1
        int pos = nvars - 1;
        while (pos > lead) {
            auto &c = x[static_cast<std::size_t>(pos)];
            if (++c < q) {
                break;
            }
            c = 0;
            --pos;
        }
        if (pos == lead) {
            x[static_cast<std::size_t>(lead)] = 0;
            ++lead;
            if (lead >= nvars) {
                break;
            }
            x[static_cast<std::size_t>(lead)] = 1;
        }
    }
}

} // namespace cubicfano::geometry
