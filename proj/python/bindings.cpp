#include "gqla/genc.hpp"
#include "gqla/genq.hpp"
#include "gqla/io.hpp"
#include "gqla/random.hpp"
#include "gqla/sheaf.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gqla;

namespace {

/// Entries may be int, str or fractions.Fraction; results come back as Fraction.
Rational to_rational(const py::handle& x) { return parse_rational(py::str(x).cast<std::string>()); }

QMat to_qmat(const py::sequence& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? py::len(rows[0]) : 0;
    QMat m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        py::sequence row = rows[i];
        if (row.size() != c) throw std::invalid_argument("ragged matrix");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = to_rational(row[j]);
    }
    return m;
}

py::list from_qmat(const QMat& m) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    py::list rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < m.cols(); ++j) row.append(fraction(to_string(m(i, j))));
        rows.append(row);
    }
    return rows;
}

/// Gaussian entries as strings such as "1/2-3i", or ints.
GMat to_gmat(const py::sequence& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? py::len(rows[0]) : 0;
    GMat m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        py::sequence row = rows[i];
        if (row.size() != c) throw std::invalid_argument("ragged matrix");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = parse_gaussian(py::str(row[j]).cast<std::string>());
    }
    return m;
}

py::object to_python(const io::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

io::Json from_python(const py::object& o) {
    return io::Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

io::Document parse(const std::string& text) { return io::parse_document(text); }

PairUE named_pair(const std::string& name) {
    if (name == "h-h") return pair_h_h();
    if (name == "imh-h") return pair_imh_h();
    if (name == "r-h") return pair_r_h();
    if (name == "zero-h") return pair_zero_h();
    throw std::invalid_argument("unknown pair '" + name + "'");
}

GQStructure gq_of(const io::Document& d) {
    if (d.kind != io::kGQStructure) throw std::invalid_argument("expected a gq-structure document, got " + d.kind);
    return io::gq_from_json(d.payload, "/payload");
}

}  // namespace

PYBIND11_MODULE(_gqla, m) {
    m.doc() = "Exact linear algebra of generalized complex and quaternionic structures.";

    py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<io::ConventionError>(m, "ConventionError", PyExc_ValueError);
    py::register_exception<InvalidStructure>(m, "InvalidStructure", PyExc_ValueError);
    py::register_exception<ClassificationError>(m, "ClassificationError", PyExc_RuntimeError);

    m.attr("FORMAT_VERSION") = io::kFormatVersion;

    py::class_<GQStructure>(m, "GQStructure")
        .def_static("from_pair", [](const py::sequence& i, const py::sequence& j) {
            return GQStructure::from_pair(to_qmat(i), to_qmat(j));
        }, py::arg("i"), py::arg("j"))
        .def_static("from_document", [](const std::string& text) { return gq_of(parse(text)); }, py::arg("text"))
        .def_property_readonly("n", &GQStructure::n)
        .def("gen", [](const GQStructure& g, std::size_t a) { return from_qmat(g.gen(a)); }, py::arg("index"))
        .def("is_valid", [](const GQStructure& g) { return check_gq(g).valid; })
        .def("failure", [](const GQStructure& g) { return check_gq(g).failure; })
        .def("sheaf", [](const GQStructure& g) { return to_python(io::to_json(sheaf_of_pair(g.pair()))); })
        .def("scrambled", [](const GQStructure& g, std::uint64_t seed) { return scramble_seeded(g, seed); }, py::arg("seed"))
        .def("to_document", [](const GQStructure& g) { return io::serialize({io::kGQStructure, io::to_json(g)}); })
        .def("__eq__", [](const GQStructure& a, const GQStructure& b) { return a == b; });

    py::class_<Certificate>(m, "Certificate")
        .def_static("from_document", [](const std::string& text) {
            io::Document d = parse(text);
            if (d.kind != io::kCertificate) throw std::invalid_argument("expected a certificate document, got " + d.kind);
            return io::certificate_from_json(d.payload, "/payload");
        }, py::arg("text"))
        .def_readonly("partial", &Certificate::partial)
        .def_readonly("field_extension_required", &Certificate::field_extension_required)
        .def_readonly("seed", &Certificate::seed)
        .def("factor_dims", &Certificate::factor_dims)
        .def("supports", [](const Certificate& c) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& f : c.cs) out.emplace_back(to_string(f.support[0]), to_string(f.support[1]));
            return out;
        })
        .def("invariants", [](const Certificate& c) { return to_python(io::to_json(c.invariants)); })
        .def("to_document", [](const Certificate& c) { return io::serialize({io::kCertificate, io::to_json(c)}); });

    m.def("from_complex_symplectic", [](const py::sequence& j, const py::sequence& w) {
        return from_complex_symplectic(to_qmat(j), to_qmat(w));
    }, py::arg("j"), py::arg("w"), "Generators (J_J, J_w, J_J J_w); raises InvalidStructure for Kahler-type input.");
    m.def("is_complex_symplectic_pair", [](const py::sequence& j, const py::sequence& w) {
        return is_complex_symplectic_pair(to_qmat(j), to_qmat(w));
    }, py::arg("j"), py::arg("w"));
    m.def("classify", [](const GQStructure& g, std::uint64_t seed) {
        py::gil_scoped_release release;
        return classify(g, {seed});
    }, py::arg("structure"), py::arg("seed"));
    m.def("verify", [](const GQStructure& g, const Certificate& c) {
        VerifyReport r = verify_certificate_report(g, c);
        return py::make_tuple(r.ok, r.reason);
    }, py::arg("structure"), py::arg("certificate"), "(ok, reason) for the certificate against the structure.");
    m.def("random_composite", [](std::size_t cr_dim, const std::vector<std::size_t>& cs_dims, std::uint64_t seed) {
        SeededRng rng(seed);
        CompositeTruth t = random_composite(rng, {cr_dim, cs_dims});
        return py::make_tuple(t.g, t.factor_dims);
    }, py::arg("cr_dim"), py::arg("cs_dims"), py::arg("seed"), "(structure, factor dims) of a seeded scrambled product.");
    m.def("irrational_torsion_example", &irrational_torsion_example);
    m.def("pair_sheaf", [](const std::string& name) { return to_python(io::to_json(sheaf_of_pair(named_pair(name)))); },
          py::arg("name"), "Sheaf invariants of a bundled pair: h-h, imh-h, r-h or zero-h.");
    m.def("pair_document", [](const std::string& name) { return io::serialize({io::kPair, io::to_json(named_pair(name))}); },
          py::arg("name"));
    m.def("kronecker", [](const py::sequence& a, const py::sequence& b) {
        return to_python(io::to_json(kronecker(Pencil{to_gmat(a), to_gmat(b)})));
    }, py::arg("a"), py::arg("b"), "Kronecker invariants of the pencil A + lambda B over Q(i).");
    m.def("split_gc", [](const py::sequence& matrix) {
        GCStructure s(to_qmat(matrix));
        GCSplitting sp = split_gc(s);
        py::dict out;
        out["type"] = type_of(s).k;
        out["b"] = from_qmat(sp.b.matrix());
        out["a"] = from_qmat(sp.a);
        out["complex_part"] = from_qmat(sp.complex_part);
        out["symplectic_part"] = from_qmat(sp.symplectic_part);
        out["verified"] = verify_splitting(s, sp);
        return out;
    }, py::arg("matrix"));
    m.def("parse_document", [](const std::string& text) {
        io::Document d = parse(text);
        return py::make_tuple(d.kind, to_python(d.payload));
    }, py::arg("text"), "(kind, payload) after format and convention checks.");
    m.def("serialize", [](const std::string& kind, const py::object& payload) {
        return io::serialize({kind, from_python(payload)});
    }, py::arg("kind"), py::arg("payload"));
}
