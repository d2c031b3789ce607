#include "cubicfano/finite_field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cubicfano::geometry {

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

namespace {

std::uint32_t checked_size(std::uint32_t p, int degree) {
    std::uint64_t s = 1;
    for (int i = 0; i < degree; ++i) {
        s *= p;
    }
    if (s > (1u << 24)) {
        throw std::invalid_argument("finite field too large for table arithmetic: " + std::to_string(s));
    }
    return static_cast<std::uint32_t>(s);
}

// Evaluate the monic polynomial x^k + sum m_i x^i at x mod p.
std::uint64_t eval_monic(const std::vector<Elem> &m, std::uint64_t x, std::uint32_t p) {
    std::uint64_t acc = 1;
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
        acc = (acc * x + *it) % p;
    }
    return acc;
}

// Degrees 2 and 3 are irreducible iff rootless.
bool rootless(const std::vector<Elem> &m, std::uint32_t p) {
    for (std::uint64_t x = 0; x < p; ++x) {
        if (eval_monic(m, x, p) == 0) {
            return false;
        }
    }
    return true;
}

std::vector<Elem> smallest_irreducible(std::uint32_t p, int degree) {
    // lexicographic in (m_{k-1}, ..., m_0)
    std::vector<Elem> m(static_cast<std::size_t>(degree), 0);
    for (;;) {
        if (rootless(m, p)) {
            return m;
        }
        int i = 0;
        while (i < degree) {
            if (++m[static_cast<std::size_t>(i)] < p) {
                break;
            }
            m[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == degree) {
            throw std::logic_error("no irreducible polynomial found");
        }
    }
}

} // namespace

FiniteField FiniteField::prime(std::uint32_t p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    }
    return FiniteField(p, 1, {});
}

FiniteField FiniteField::extension(std::uint32_t p, int degree) {
    if (!is_prime(p)) {
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    }
    if (degree < 1 || degree > 3) {
        throw std::invalid_argument("only extensions of degree 1, 2 or 3 are supported");
    }
    if (degree == 1) {
        return prime(p);
    }
    return FiniteField(p, degree, smallest_irreducible(p, degree));
}

FiniteField::FiniteField(std::uint32_t p, int degree, std::vector<Elem> modulus)
    : p_(p), degree_(degree), size_(checked_size(p, degree)), modulus_(std::move(modulus)) {
    log_.assign(size_, 0);
    exp_.assign(size_ - 1, 0);
    // search for a multiplicative generator
    for (Elem g = 1; g < size_; ++g) {
        Elem x = 1;
        std::uint32_t k = 0;
        bool ok = true;
        for (; k < size_ - 1; ++k) {
            if (k > 0 && x == 1) {
                ok = false;
                break;
            }
            exp_[k] = x;
            x = slow_mul(x, g);
        }
        if (ok && x == 1) {
            for (std::uint32_t i = 0; i < size_ - 1; ++i) {
                log_[exp_[i]] = i;
            }
            return;
        }
    }
    throw std::logic_error("no multiplicative generator found");
}

Elem FiniteField::slow_mul(Elem a, Elem b) const {
    if (degree_ == 1) {
        return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    }
    const auto k = static_cast<std::size_t>(degree_);
    std::vector<std::uint64_t> da(k), db(k), prod(2 * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        }
    }
    // x^k = -sum m_i x^i
    for (std::size_t top = 2 * k - 1; top >= k; --top) {
        const std::uint64_t c = prod[top];
        prod[top] = 0;
        for (std::size_t i = 0; i < k; ++i) {
            prod[top - k + i] = (prod[top - k + i] + (p_ - modulus_[i]) % p_ * c) % p_;
        }
        if (top == k) {
            break;
        }
    }
    Elem r = 0;
    for (std::size_t i = k; i-- > 0;) {
        r = r * p_ + static_cast<Elem>(prod[i]);
    }
    return r;
}

Elem FiniteField::neg(Elem a) const {
    if (degree_ == 1) {
        return a == 0 ? 0 : p_ - a;
    }
    Elem r = 0;
    Elem scale = 1;
    for (int i = 0; i < degree_; ++i) {
        const Elem d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * scale;
        a /= p_;
        scale *= p_;
    }
    return r;
}

Elem FiniteField::inv(Elem a) const {
    if (a == 0) {
        throw std::domain_error("division by zero in finite field");
    }
    const std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : size_ - 1 - l];
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const {
    if (e == 0) {
        return 1;
    }
    if (a == 0) {
        return 0;
    }
    return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (e % (size_ - 1))) % (size_ - 1))];
}

Elem FiniteField::from_int(std::int64_t n) const {
    const auto p = static_cast<std::int64_t>(p_);
    return static_cast<Elem>(((n % p) + p) % p);
}

Elem FiniteField::generator() const { return exp_[size_ == 2 ? 0 : 1]; }

std::uint64_t projective_point_count(std::uint64_t q, int nvars) {
    std::uint64_t total = 0;
    std::uint64_t pw = 1;
    for (int i = 0; i < nvars; ++i) {
        total += pw;
        pw *= q;
    }
    return total;
}

void projective_point_at(std::uint32_t q, int nvars, std::uint64_t index, std::span<Elem> out) {
    std::fill(out.begin(), out.end(), 0);
    for (int lead = 0; lead < nvars; ++lead) {
        std::uint64_t block = 1;
        for (int i = lead + 1; i < nvars; ++i) {
            block *= q;
        }
        if (index < block) {
            out[static_cast<std::size_t>(lead)] = 1;
            for (int pos = nvars - 1; pos > lead; --pos) {
                out[static_cast<std::size_t>(pos)] = static_cast<Elem>(index % q);
                index /= q;
            }
            return;
        }
        index -= block;
    }
    throw std::out_of_range("projective point index out of range");
}

void normalize_projective(const FiniteField &field, std::span<Elem> v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0) {
            const Elem s = field.inv(v[i]);
            for (std::size_t j = i; j < v.size(); ++j) {
                v[j] = field.mul(v[j], s);
            }
            return;
        }
    }
    throw std::invalid_argument("zero vector has no projective class");
}

std::uint64_t projective_index(std::uint32_t q, std::span<const Elem> v) {
    const int nvars = static_cast<int>(v.size());
    std::uint64_t offset = 0;
    for (int lead = 0; lead < nvars; ++lead) {
        std::uint64_t block = 1;
        for (int i = lead + 1; i < nvars; ++i) {
            block *= q;
        }
        if (v[static_cast<std::size_t>(lead)] != 0) {
            std::uint64_t tail = 0;
            for (int pos = lead + 1; pos < nvars; ++pos) {
                tail = tail * q + v[static_cast<std::size_t>(pos)];
            }
            return offset + tail;
        }
        offset += block;
    }
    throw std::invalid_argument("zero vector has no projective index");
}

} // namespace cubicfano::geometry
