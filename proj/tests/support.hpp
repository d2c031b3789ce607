#pragma once

// Helpers shared by the test binaries: random classes and environments, and
// naive reference arithmetic that does not go through the library's tables.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cubicfano/cubic_form.hpp"
#include "cubicfano/motivic_ring.hpp"
#include "cubicfano/realizations.hpp"

namespace testsupport {

using cubicfano::Integer;
using cubicfano::motivic::VirtualClass;

inline const std::vector<std::string> &symbol_names() {
    static const std::vector<std::string> names{"X", "Y", "Z"};
    return names;
}

/// Up to four terms c * L^k * (product of up to two symbols).
inline VirtualClass random_class(std::mt19937_64 &rng, int max_terms = 4) {
    std::uniform_int_distribution<int> nterms(0, max_terms), coeff(-4, 4), lexp(-2, 3), nsym(0, 2), which(0, 2);
    VirtualClass a;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        VirtualClass t = VirtualClass::lefschetz(lexp(rng)) * VirtualClass(static_cast<long long>(coeff(rng)));
        const int s = nsym(rng);
        for (int j = 0; j < s; ++j) {
            t = t * VirtualClass::symbol(symbol_names()[static_cast<std::size_t>(which(rng))]);
        }
        a += t;
    }
    return a;
}

/// random_class plus, sometimes, a symmetric square of another random class.
inline VirtualClass random_class_with_sym(std::mt19937_64 &rng) {
    VirtualClass a = random_class(rng);
    if (rng() % 2 == 0) {
        a += cubicfano::motivic::sym2(random_class(rng, 2));
    }
    return a;
}

/// Point counts of a zero-dimensional variety with a random number of
/// closed points of each degree: N_m = sum_{d | m} d a_d.
inline std::vector<Integer> random_point_counts(std::mt19937_64 &rng, std::size_t length = 12) {
    std::vector<int> closed(length + 1, 0);
    for (std::size_t d = 1; d <= length; ++d) {
        closed[d] = static_cast<int>(rng() % 4);
    }
    std::vector<Integer> n(length, 0);
    for (std::size_t m = 1; m <= length; ++m) {
        for (std::size_t d = 1; d <= m; ++d) {
            if (m % d == 0) {
                n[m - 1] += Integer(d) * closed[d];
            }
        }
    }
    return n;
}

inline cubicfano::realize::Environment random_environment(cubicfano::realize::Target t, std::mt19937_64 &rng) {
    using cubicfano::realize::EPolynomial;
    using cubicfano::realize::Environment;
    using cubicfano::realize::Target;
    std::uniform_int_distribution<int> small(-6, 6), expo(0, 2);
    switch (t) {
    case Target::count: {
        Environment env = Environment::count(2 + static_cast<int>(rng() % 4));
        for (const auto &s : symbol_names()) {
            env.assign_counts(s, random_point_counts(rng));
        }
        return env;
    }
    case Target::euler: {
        Environment env = Environment::euler();
        for (const auto &s : symbol_names()) {
            env.assign_euler(s, small(rng));
        }
        return env;
    }
    case Target::real_euler: {
        Environment env = Environment::real_euler();
        for (const auto &s : symbol_names()) {
            const int c = small(rng);
            env.assign_real(s, c + 2 * (small(rng) / 2), c);
        }
        return env;
    }
    case Target::e_polynomial: {
        Environment env = Environment::e_polynomial();
        for (const auto &s : symbol_names()) {
            EPolynomial e;
            for (int i = 0; i < 3; ++i) {
                e.add_term(expo(rng), expo(rng), small(rng));
            }
            env.assign_e(s, e);
        }
        return env;
    }
    }
    throw std::logic_error("target");
}

/// f(x) mod p for x in F_p^n, straight from the exponent vectors.
inline std::uint32_t naive_eval(const cubicfano::geometry::CubicForm &f, const std::vector<std::uint32_t> &x) {
    const std::uint64_t p = f.characteristic();
    std::uint64_t s = 0;
    for (const auto &m : f.monomials()) {
        std::uint64_t t = m.coeff;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (int e = 0; e < m.exponents[i]; ++e) {
                t = t * x[i] % p;
            }
        }
        s = (s + t) % p;
    }
    return static_cast<std::uint32_t>(s);
}

/// Calls fn on every vector of F_q^n (as digit vectors), q^n of them.
template <class Fn>
void for_each_vector(std::uint32_t q, int n, Fn fn) {
    std::vector<std::uint32_t> x(static_cast<std::size_t>(n), 0);
    while (true) {
        fn(x);
        int i = n - 1;
        while (i >= 0 && ++x[static_cast<std::size_t>(i)] == q) {
            x[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) {
            return;
        }
    }
}

} // namespace testsupport
