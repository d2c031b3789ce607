#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubicfano/commands.hpp"
#include "cubicfano/finite_geometry.hpp"
#include "cubicfano/hodge.hpp"
#include "cubicfano/motivic_ring.hpp"
#include "cubicfano/realizations.hpp"

namespace py = pybind11;
using namespace cubicfano;
using motivic::VirtualClass;

namespace {

py::int_ to_py(const Integer &n) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(n.str().c_str(), nullptr, 10));
}

Integer from_py(const py::handle &h) { return Integer(py::str(py::int_(py::reinterpret_borrow<py::object>(h))).cast<std::string>()); }

py::list to_py(const std::vector<Integer> &v) {
    py::list out;
    for (const auto &n : v) {
        out.append(to_py(n));
    }
    return out;
}

py::dict report_dict(const cli::VerificationReport &r) {
    py::dict terms;
    for (const auto &t : r.breakdown) {
        terms[py::str(t.name)] = t.value;
    }
    py::dict d;
    d["relation"] = r.relation;
    d["cubic"] = r.cubic;
    d["field"] = r.field;
    d["dim"] = r.dim;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["terms"] = terms;
    d["notes"] = r.notes;
    d["passed"] = r.pass;
    d["seconds"] = r.seconds;
    return d;
}

cli::RunConfig cubic_config(const std::string &named, int dim, std::uint32_t p, std::optional<std::uint64_t> seed,
                            const std::string &file, unsigned threads) {
    cli::RunConfig cfg;
    cfg.dim = dim;
    cfg.p = p;
    cfg.threads = threads;
    if (!file.empty()) {
        cfg.source = cli::CubicSource::file;
        cfg.file = file;
    } else if (named == "random") {
        cfg.source = cli::CubicSource::random;
        cfg.seed = seed.value_or(0);
    } else {
        cfg.source = cli::CubicSource::named;
        cfg.named = named;
        cfg.seed = seed.value_or(0);
    }
    return cfg;
}

py::dict diamond_dict(const hodge::HodgeDiamond &h) {
    py::dict d;
    for (const auto &[pq, n] : h.dims()) {
        d[py::make_tuple(pq.first, pq.second)] = n;
    }
    return d;
}

py::dict e_dict(const realize::EPolynomial &e) {
    py::dict d;
    for (const auto &[ab, c] : e.terms()) {
        d[py::make_tuple(ab.first, ab.second)] = to_py(c);
    }
    return d;
}

VirtualClass as_class(const py::handle &h) {
    if (py::isinstance<VirtualClass>(h)) {
        return h.cast<VirtualClass>();
    }
    if (py::isinstance<py::int_>(h)) {
        return VirtualClass(from_py(h));
    }
    if (py::isinstance<py::str>(h)) {
        return motivic::parse_class(h.cast<std::string>());
    }
    throw py::type_error("expected a Class, an int or a class expression string");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Grothendieck-ring classes, point counts and Hodge numbers of cubic hypersurfaces";

    py::register_exception<cli::InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<IntegralityError>(m, "IntegralityError", PyExc_ArithmeticError);
    py::register_exception<motivic::ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<VirtualClass>(m, "Class")
        .def(py::init([](const py::object &v) { return as_class(v); }), py::arg("value") = py::int_(0))
        .def_static("L", &VirtualClass::lefschetz, py::arg("k") = 1)
        .def_static("symbol", &VirtualClass::symbol)
        .def_static("parse", [](const std::string &s) { return motivic::parse_class(s); })
        .def("is_zero", &VirtualClass::is_zero)
        .def("__add__", [](const VirtualClass &a, const py::object &b) { return a + as_class(b); })
        .def("__radd__", [](const VirtualClass &a, const py::object &b) { return as_class(b) + a; })
        .def("__sub__", [](const VirtualClass &a, const py::object &b) { return a - as_class(b); })
        .def("__rsub__", [](const VirtualClass &a, const py::object &b) { return as_class(b) - a; })
        .def("__mul__", [](const VirtualClass &a, const py::object &b) { return a * as_class(b); })
        .def("__rmul__", [](const VirtualClass &a, const py::object &b) { return as_class(b) * a; })
        .def("__neg__", [](const VirtualClass &a) { return -a; })
        .def("__eq__",
             [](const VirtualClass &a, const py::object &b) {
                 try {
                     return a == as_class(b);
                 } catch (const py::type_error &) {
                     return false;
                 }
             })
        .def("__str__", [](const VirtualClass &a) { return motivic::to_string(a); })
        .def("__repr__", [](const VirtualClass &a) { return "Class('" + motivic::to_string(a) + "')"; });

    m.def("projective_space", &motivic::projective_space, py::arg("n"));
    m.def("sym2", [](const py::object &a) { return motivic::sym2(as_class(a)); });
    m.def("sym_power", [](const py::object &a, int n) { return motivic::sym_power(as_class(a), n); });
    m.def("hilb2_class", [](const py::object &x, int dim, const py::object &sing) {
        return motivic::hilb2_class(as_class(x), dim, as_class(sing));
    }, py::arg("x"), py::arg("dim"), py::arg("sing") = py::int_(0));
    m.def("rational_defect", [](const py::object &x, int dim) { return motivic::rational_defect(as_class(x), dim); });
    m.def("fano_class", [](const py::object &m_y, int dim, const py::object &sing) {
        return motivic::fano_class_from_defect(as_class(m_y), dim, as_class(sing));
    }, py::arg("defect"), py::arg("dim"), py::arg("sing") = py::int_(0));

    m.def("euler", [](const py::object &a, const py::dict &values) {
        auto env = realize::Environment::euler();
        for (const auto &[k, v] : values) {
            env.assign_euler(k.cast<std::string>(), from_py(v));
        }
        return to_py(realize::realize_integer(as_class(a), env));
    }, py::arg("cls"), py::arg("values") = py::dict());
    m.def("point_count", [](const py::object &a, const py::int_ &q, const py::dict &counts) {
        auto env = realize::Environment::count(from_py(q));
        for (const auto &[k, v] : counts) {
            std::vector<Integer> n;
            for (const auto &x : v) {
                n.push_back(from_py(x));
            }
            env.assign_counts(k.cast<std::string>(), n);
        }
        return to_py(realize::realize_integer(as_class(a), env));
    }, py::arg("cls"), py::arg("q"), py::arg("counts") = py::dict());
    m.def("real_euler", [](const py::object &a, const py::dict &values) {
        auto env = realize::Environment::real_euler();
        for (const auto &[k, v] : values) {
            auto t = v.cast<py::tuple>();
            env.assign_real(k.cast<std::string>(), from_py(t[0]), from_py(t[1]));
        }
        return to_py(realize::realize_integer(as_class(a), env));
    }, py::arg("cls"), py::arg("values") = py::dict());
    m.def("e_polynomial", [](const py::object &a, const py::dict &values) {
        auto env = realize::Environment::e_polynomial();
        for (const auto &[k, v] : values) {
            realize::EPolynomial e;
            for (const auto &[ab, c] : v.cast<py::dict>()) {
                auto t = ab.cast<py::tuple>();
                e.add_term(t[0].cast<int>(), t[1].cast<int>(), from_py(c));
            }
            env.assign_e(k.cast<std::string>(), e);
        }
        return e_dict(realize::realize_e(as_class(a), env));
    }, py::arg("cls"), py::arg("values") = py::dict());

    m.def("chi_fano", [](const py::int_ &chi, const py::int_ &sing) {
        return to_py(realize::chi_fano(from_py(chi), from_py(sing)));
    }, py::arg("chi"), py::arg("sing") = py::int_(0));
    m.def("chi_real_fano", [](const py::int_ &chi_r, const py::int_ &chi_c, const std::string &parity,
                              const py::int_ &chi_r_sing) {
        if (parity != "even" && parity != "odd") {
            throw py::value_error("parity must be 'even' or 'odd'");
        }
        return to_py(realize::chi_real_fano(from_py(chi_r), from_py(chi_c),
                                            parity == "even" ? realize::Parity::even : realize::Parity::odd,
                                            from_py(chi_r_sing)));
    }, py::arg("chi_r"), py::arg("chi_c"), py::arg("parity") = "even", py::arg("chi_r_sing") = py::int_(0));
    m.def("hasse_weil", [](const std::vector<py::int_> &counts, int order) {
        std::vector<Integer> n;
        for (const auto &c : counts) {
            n.push_back(from_py(c));
        }
        return to_py(realize::hasse_weil_truncation(n, order));
    }, py::arg("point_counts"), py::arg("order"));

    m.def("lines", [](const std::string &named, int dim, std::uint32_t p, std::optional<std::uint64_t> seed,
                      const std::string &file, unsigned threads) {
        return report_dict(cli::cmd_lines(cubic_config(named, dim, p, seed, file, threads)));
    }, py::arg("named") = "fermat", py::arg("dim") = -1, py::arg("p") = 0, py::arg("seed") = py::none(),
       py::arg("file") = "", py::arg("threads") = 1);
    m.def("verify", [](const std::string &named, int dim, std::uint32_t p, std::optional<std::uint64_t> seed,
                       const std::string &file, unsigned threads) {
        py::list out;
        for (const auto &r : cli::cmd_verify(cubic_config(named, dim, p, seed, file, threads))) {
            out.append(report_dict(r));
        }
        return out;
    }, py::arg("named") = "fermat", py::arg("dim") = -1, py::arg("p") = 0, py::arg("seed") = py::none(),
       py::arg("file") = "", py::arg("threads") = 1);
    m.def("zeta", [](const std::string &named, int dim, std::uint32_t p, int order, std::optional<std::uint64_t> seed,
                     const std::string &file) {
        auto cfg = cubic_config(named, dim, p, seed, file, 1);
        cfg.order = order;
        const auto z = cli::cmd_zeta(cfg);
        py::list oracle;
        for (const auto &o : z.oracle) {
            oracle.append(o ? py::object(to_py(*o)) : py::object(py::none()));
        }
        py::dict d;
        d["cubic"] = z.cubic;
        d["point_counts"] = to_py(z.point_counts);
        d["sym_counts"] = to_py(z.sym_counts);
        d["oracle"] = oracle;
        d["passed"] = z.pass;
        return d;
    }, py::arg("named") = "fermat", py::arg("dim") = -1, py::arg("p") = 0, py::arg("order") = 2,
       py::arg("seed") = py::none(), py::arg("file") = "");

    m.def("cubic_hodge", [](int dim) { return diamond_dict(hodge::cubic_hodge(dim)); }, py::arg("dim"));
    m.def("fano_hodge", [](int dim) { return diamond_dict(hodge::fano_hodge(dim)); }, py::arg("dim"));
    m.def("fano_table", &hodge::format_fano_table, py::arg("dim"));
    m.def("fano_psi", [](int dim) {
        return to_py(realize::psi_polynomial(hodge::e_polynomial(hodge::fano_hodge(dim))));
    }, py::arg("dim"));
}
