#include "cubicfano/finite_geometry.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "cubicfano/realizations.hpp"

namespace cubicfano::geometry {

namespace {

// Split [0, total) into contiguous chunks, run fn on each, and return the
// per-chunk results in chunk order.
template <class T, class Fn>
std::vector<T> run_chunks(std::uint64_t total, unsigned threads, Fn fn) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(total, 1))));
    std::vector<T> results(workers);
    if (workers == 1) {
        results[0] = fn(std::uint64_t{0}, total);
        return results;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = total * w / workers;
        const std::uint64_t end = total * (w + 1) / workers;
        pool.emplace_back([&results, &fn, w, begin, end] { results[w] = fn(begin, end); });
    }
    for (auto &t : pool) {
        t.join();
    }
    return results;
}

void check_field(const CubicForm &f, const FiniteField &field) {
    if (field.characteristic() != f.characteristic()) {
        throw std::invalid_argument(fmt::format("cubic is defined over F_{} but the field has characteristic {}",
                                                f.characteristic(), field.characteristic()));
    }
}

void require_prime_field(const CubicForm &f, const FiniteField &field, const char *what) {
    check_field(f, field);
    if (!field.is_prime_field()) {
        throw std::invalid_argument(fmt::format("{} expects the prime base field", what));
    }
}

std::uint64_t upow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
    }
    return r;
}

// Decode the index-th canonical line of P^{n-1}(F_q): RREF rows with pivot
// columns i < j, row u free in columns > i except j, row v free in columns > j.
void line_at(std::uint32_t q, int n, std::uint64_t index, LineRep &line) {
    std::fill(line.u.begin(), line.u.end(), 0);
    std::fill(line.v.begin(), line.v.end(), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int free_u = n - i - 2;
            const int free_v = n - j - 1;
            const std::uint64_t block = upow(q, free_u + free_v);
            if (index >= block) {
                index -= block;
                continue;
            }
            line.u[static_cast<std::size_t>(i)] = 1;
            line.v[static_cast<std::size_t>(j)] = 1;
            for (int k = n - 1; k > j; --k) {
                line.v[static_cast<std::size_t>(k)] = static_cast<Elem>(index % q);
                index /= q;
            }
            for (int k = n - 1; k > i; --k) {
                if (k == j) {
                    continue;
                }
                line.u[static_cast<std::size_t>(k)] = static_cast<Elem>(index % q);
                index /= q;
            }
            return;
        }
    }
    throw std::out_of_range("line index out of range");
}

struct QuadraticScan {
    std::uint64_t n2 = 0;
    std::vector<std::uint64_t> rational;  // indices (in the F_{q^2} enumeration) of Frobenius-fixed points
    std::uint64_t conjugate_pairs = 0;
};

// Enumerate Y(F_{q^2}) and sort points by Frobenius behaviour.
QuadraticScan scan_quadratic(const CubicForm &f, const FiniteField &base, ScanOptions opts) {
    const FiniteField ext = FiniteField::extension(base.characteristic(), 2);
    const int n = f.nvars();
    const std::uint64_t total = projective_point_count(ext.size(), n);
    auto parts = run_chunks<QuadraticScan>(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
        QuadraticScan s;
        std::vector<Elem> image(static_cast<std::size_t>(n));
        for_each_projective_point(ext.size(), n, begin, end, [&](std::uint64_t idx, std::span<const Elem> x) {
            if (f.evaluate(ext, x) != 0) {
                return;
            }
            ++s.n2;
            for (std::size_t k = 0; k < image.size(); ++k) {
                image[k] = ext.frobenius(x[k]);
            }
            // Frobenius preserves the canonical normalization (1^p = 1).
            const std::uint64_t img = projective_index(ext.size(), image);
            if (img == idx) {
                s.rational.push_back(idx);
            } else if (idx < img) {
                ++s.conjugate_pairs;
            }
        });
        return s;
    });
    QuadraticScan out;
    for (auto &p : parts) {
        out.n2 += p.n2;
        out.conjugate_pairs += p.conjugate_pairs;
        out.rational.insert(out.rational.end(), p.rational.begin(), p.rational.end());
    }
    return out;
}

// Rational tangent directions at a rational point x of Y: lines through x
// whose restricted binary cubic has c0 = c1 = 0.
std::uint64_t tangent_directions(const CubicForm &f, const FiniteField &field, std::span<const Elem> x) {
    const int n = f.nvars();
    int lead = 0;
    while (x[static_cast<std::size_t>(lead)] == 0) {
        ++lead;
    }
    // directions modulo x: canonical points with coordinate `lead` equal to 0
    const std::uint64_t total = projective_point_count(field.size(), n - 1);
    std::vector<Elem> y(static_cast<std::size_t>(n), 0);
    std::uint64_t count = 0;
    for_each_projective_point(field.size(), n - 1, 0, total, [&](std::uint64_t, std::span<const Elem> w) {
        for (int k = 0, s = 0; k < n; ++k) {
            y[static_cast<std::size_t>(k)] = k == lead ? 0 : w[static_cast<std::size_t>(s++)];
        }
        const BinaryCubic c = f.restrict_to_line(field, x, y);
        if (c[0] == 0 && c[1] == 0) {
            ++count;
        }
    });
    return count;
}

} // namespace

std::uint64_t grassmannian_line_count(std::uint64_t q, int nvars) {
    // (q^n - 1)(q^{n-1} - 1) / ((q^2 - 1)(q - 1))
    const std::uint64_t a = upow(q, nvars) - 1;
    const std::uint64_t b = upow(q, nvars - 1) - 1;
    return a / (q - 1) * b / (q * q - 1);
}

std::uint64_t count_points(const CubicForm &f, const FiniteField &field, ScanOptions opts) {
    check_field(f, field);
    const int n = f.nvars();
    const std::uint64_t total = projective_point_count(field.size(), n);
    auto parts = run_chunks<std::uint64_t>(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t c = 0;
        for_each_projective_point(field.size(), n, begin, end, [&](std::uint64_t, std::span<const Elem> x) {
            if (f.evaluate(field, x) == 0) {
                ++c;
            }
        });
        return c;
    });
    std::uint64_t sum = 0;
    for (auto c : parts) {
        sum += c;
    }
    return sum;
}

std::vector<ProjectivePoint> singular_points(const CubicForm &f, const FiniteField &field, ScanOptions opts) {
    check_field(f, field);
    const int n = f.nvars();
    const std::uint64_t total = projective_point_count(field.size(), n);
    auto parts =
        run_chunks<std::vector<ProjectivePoint>>(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
            std::vector<ProjectivePoint> pts;
            for_each_projective_point(field.size(), n, begin, end, [&](std::uint64_t, std::span<const Elem> x) {
                if (f.evaluate(field, x) != 0) {
                    return;
                }
                for (const auto &g : f.gradient()) {
                    if (evaluate_quadratic(field, g, x) != 0) {
                        return;
                    }
                }
                pts.emplace_back(x.begin(), x.end());
            });
            return pts;
        });
    std::vector<ProjectivePoint> out;
    for (auto &p : parts) {
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

bool passes_smoothness_proxy(const CubicForm &f, ScanOptions opts) {
    const std::uint32_t p = f.characteristic();
    return singular_points(f, FiniteField::prime(p), opts).empty() &&
           singular_points(f, FiniteField::extension(p, 2), opts).empty();
}

std::uint64_t line_scan_size(const CubicForm &f, const FiniteField &field) {
    return grassmannian_line_count(field.size(), f.nvars());
}

bool line_contained(const CubicForm &f, const FiniteField &field, const LineRep &line) {
    const BinaryCubic c = f.restrict_to_line(field, line.u, line.v);
    return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
}

bool line_contained_by_sampling(const CubicForm &f, const FiniteField &field, const LineRep &line) {
    std::vector<Elem> x(line.u.size());
    if (f.evaluate(field, line.u) != 0) {
        return false;
    }
    for (Elem s = 0; s < field.size(); ++s) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] = field.add(field.mul(s, line.u[k]), line.v[k]);
        }
        if (f.evaluate(field, x) != 0) {
            return false;
        }
    }
    return true;
}

std::vector<LineRep> enumerate_lines(const CubicForm &f, const FiniteField &field, ScanOptions opts) {
    require_prime_field(f, field, "enumerate_lines");
    const int n = f.nvars();
    const std::uint64_t total = grassmannian_line_count(field.size(), n);
    auto parts = run_chunks<std::vector<LineRep>>(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<LineRep> found;
        LineRep line{std::vector<Elem>(static_cast<std::size_t>(n)), std::vector<Elem>(static_cast<std::size_t>(n))};
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            line_at(field.size(), n, idx, line);
            if (line_contained(f, field, line)) {
                found.push_back(line);
            }
        }
        return found;
    });
    std::vector<LineRep> out;
    for (auto &p : parts) {
        out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
    return out;
}

bool is_reduced(const CubicForm &f) {
    const std::uint32_t p = f.characteristic();
    const int n = f.nvars();
    const std::uint64_t forms = projective_point_count(p, n);
    std::vector<Elem> matrix(static_cast<std::size_t>(n * n));
    bool reduced = true;
    for_each_projective_point(p, n, 0, forms, [&](std::uint64_t, std::span<const Elem> l) {
        if (!reduced) {
            return;
        }
        int lead = 0;
        while (l[static_cast<std::size_t>(lead)] == 0) {
            ++lead;
        }
        // x = A y with x_k = y_k (k != lead), x_lead = y_lead - sum_{k != lead} l_k y_k,
        // so that l(x) = y_lead.
        std::fill(matrix.begin(), matrix.end(), 0);
        for (int k = 0; k < n; ++k) {
            matrix[static_cast<std::size_t>(k * n + k)] = 1;
        }
        for (int k = 0; k < n; ++k) {
            if (k != lead) {
                const Elem c = l[static_cast<std::size_t>(k)];
                matrix[static_cast<std::size_t>(lead * n + k)] = c == 0 ? 0 : p - c;
            }
        }
        const auto g = f.substitute(matrix, n);
        const bool divisible = std::all_of(g.begin(), g.end(), [&](const auto &kv) {
            return kv.first[static_cast<std::size_t>(lead)] >= 2;
        });
        if (divisible) {
            reduced = false;
        }
    });
    return reduced;
}

Integer count_sym2_points(const CubicForm &f, const FiniteField &field, ScanOptions opts) {
    require_prime_field(f, field, "count_sym2_points");
    const QuadraticScan s = scan_quadratic(f, field, opts);
    // unordered pairs {a, b} of rational points, a = b allowed
    Integer rational_pairs = 0;
    for (std::size_t i = 0; i < s.rational.size(); ++i) {
        for (std::size_t j = i; j < s.rational.size(); ++j) {
            ++rational_pairs;
        }
    }
    return rational_pairs + s.conjugate_pairs;
}

Integer count_hilb2_points(const CubicForm &f, const FiniteField &field, ScanOptions opts) {
    require_prime_field(f, field, "count_hilb2_points");
    if (!is_reduced(f)) {
        throw std::invalid_argument("count_hilb2_points: cubic is not reduced");
    }
    const Integer sym2 = count_sym2_points(f, field, opts);
    const int n = f.nvars();
    const std::uint64_t total = projective_point_count(field.size(), n);
    struct Partial {
        std::uint64_t points = 0;
        std::uint64_t directions = 0;
    };
    auto parts = run_chunks<Partial>(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
        Partial acc;
        for_each_projective_point(field.size(), n, begin, end, [&](std::uint64_t, std::span<const Elem> x) {
            if (f.evaluate(field, x) == 0) {
                ++acc.points;
                acc.directions += tangent_directions(f, field, x);
            }
        });
        return acc;
    });
    Integer points = 0, directions = 0;
    for (const auto &p : parts) {
        points += p.points;
        directions += p.directions;
    }
    // reduced pairs, then non-reduced length-2 subschemes
    return sym2 - points + directions;
}

CubicCensus brute_force_census(const CubicForm &f, const FiniteField &field, ScanOptions opts) {
    require_prime_field(f, field, "brute_force_census");
    CubicCensus c;
    c.q = field.size();
    c.dim = f.dim();
    c.n1 = count_points(f, field, opts);
    c.n2 = count_points(f, FiniteField::extension(field.characteristic(), 2), opts);
    c.ns = singular_points(f, field, opts).size();
    c.lines = enumerate_lines(f, field, opts).size();
    c.sym2 = count_sym2_points(f, field, opts);
    c.hilb2 = count_hilb2_points(f, field, opts);
    return c;
}

YFYCheck verify_yfy_counting(const CubicForm &f, const FiniteField &field, ScanOptions opts) {
    YFYCheck r;
    r.census = brute_force_census(f, field, opts);
    const auto &c = r.census;
    const Integer q = c.q;
    const Integer qd = ipow(q, static_cast<unsigned>(c.dim));
    const Integer pd = static_cast<std::uint64_t>(projective_point_count(c.q, c.dim + 1));
    r.hilb_lhs = c.hilb2;
    r.hilb_rhs = pd * c.n1 + q * q * c.lines;
    r.sym_lhs = c.sym2;
    r.sym_rhs = (1 + qd) * c.n1 + q * q * c.lines - qd * c.ns;
    return r;
}

Rational count_fano_by_formula(const Integer &n1, const Integer &n2, const Integer &ns, const Integer &q, int dim) {
    if (q < 2) {
        throw std::invalid_argument("count_fano_by_formula: q must be at least 2");
    }
    if (dim < 0) {
        throw std::invalid_argument("count_fano_by_formula: negative dimension");
    }
    const Integer qd = ipow(q, static_cast<unsigned>(dim));
    Rational r(n1 * n1 - 2 * (1 + qd) * n1 + n2, 2 * q * q);
    if (dim >= 2) {
        r += Rational(ipow(q, static_cast<unsigned>(dim - 2)) * ns);
    } else {
        r += Rational(ns, ipow(q, static_cast<unsigned>(2 - dim)));
    }
    return r;
}

std::vector<Integer> zeta_sym_counts(const CubicForm &f, const FiniteField &field, int order, ScanOptions opts) {
    require_prime_field(f, field, "zeta_sym_counts");
    if (order < 1 || order > 3) {
        throw std::invalid_argument("zeta_sym_counts: order must be 1, 2 or 3 (no extension tower beyond F_{q^3})");
    }
    std::vector<Integer> counts;
    for (int m = 1; m <= order; ++m) {
        counts.emplace_back(count_points(f, FiniteField::extension(field.characteristic(), m), opts));
    }
    return realize::hasse_weil_truncation(counts, order);
}

std::vector<std::uint64_t> closed_point_degrees(const CubicForm &f, const FiniteField &field, int max_degree) {
    require_prime_field(f, field, "closed_point_degrees");
    if (max_degree < 1 || max_degree > 3) {
        throw std::invalid_argument("closed_point_degrees: degree must be 1, 2 or 3");
    }
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(max_degree), 0);
    for (int m = 1; m <= max_degree; ++m) {
        const FiniteField ext = FiniteField::extension(field.characteristic(), m);
        const int n = f.nvars();
        std::vector<Elem> y(static_cast<std::size_t>(n));
        std::uint64_t exact = 0;
        for_each_projective_point(ext.size(), n, 0, projective_point_count(ext.size(), n),
                                  [&](std::uint64_t idx, std::span<const Elem> x) {
                                      if (f.evaluate(ext, x) != 0) {
                                          return;
                                      }
                                      // orbit length under x -> x^p
                                      std::copy(x.begin(), x.end(), y.begin());
                                      int len = 0;
                                      do {
                                          for (auto &c : y) {
                                              c = ext.frobenius(c);
                                          }
                                          ++len;
                                      } while (projective_index(ext.size(), y) != idx);
                                      if (len == m) {
                                          ++exact;
                                      }
                                  });
        hist[static_cast<std::size_t>(m - 1)] = exact / static_cast<std::uint64_t>(m);
    }
    return hist;
}

Integer count_effective_cycles(const std::vector<std::uint64_t> &histogram, int m) {
    std::vector<int> degrees;
    for (std::size_t k = 0; k < histogram.size(); ++k) {
        for (std::uint64_t i = 0; i < histogram[k]; ++i) {
            degrees.push_back(static_cast<int>(k) + 1);
        }
    }
    // choose a multiplicity for each closed point in turn
    std::function<Integer(std::size_t, int)> rec = [&](std::size_t i, int remaining) -> Integer {
        if (remaining == 0) {
            return 1;
        }
        if (i == degrees.size()) {
            return 0;
        }
        Integer total = 0;
        for (int mult = 0; mult * degrees[i] <= remaining; ++mult) {
            total += rec(i + 1, remaining - mult * degrees[i]);
        }
        return total;
    };
    return rec(0, m);
}

} // namespace cubicfano::geometry
