#include "gqla/io.hpp"

#include <algorithm>

namespace gqla::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const std::string& where, const char* key) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(where, "expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

Gaussian gaussian_from_json(const Json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected {\"re\": ..., \"im\": ...}");
    return {rational_from_json(field(j, where, "re"), at(where, "re")), rational_from_json(field(j, where, "im"), at(where, "im"))};
}

Json poly_json(const Poly& p) {
    Json out = Json::array();
    for (const auto& c : p.coeffs()) out.push_back(to_json(c));
    return out;
}

template <class F, class Read>
Matrix<F> matrix_from_json(const Json& j, const std::string& where, Read read) {
    if (!j.is_array()) fail(where, "expected an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? (j[0].is_array() ? j[0].size() : 0) : 0;
    Matrix<F> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string wr = at(where, r);
        if (!j[r].is_array()) fail(wr, "expected a row array");
        if (j[r].size() != cols) fail(wr, "row has " + std::to_string(j[r].size()) + " entries, expected " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = read(j[r][c], at(wr, c));
    }
    return m;
}

/// An empty JSON array stands for an n x 0 matrix.
QMat columns_from_json(const Json& j, const std::string& where, std::size_t rows) {
    QMat m = qmat_from_json(j, where);
    if (m.rows() == 0) return QMat(rows, 0);
    if (m.rows() != rows) fail(where, "expected " + std::to_string(rows) + " rows");
    return m;
}

std::size_t size_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0)) fail(where, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

QMat square(const Json& j, const std::string& where, std::size_t n) {
    QMat m = qmat_from_json(j, where);
    if (m.rows() != n || m.cols() != n) fail(where, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    return m;
}

std::vector<int> ints_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) fail(at(where, i), "expected an integer");
        out.push_back(j[i].get<int>());
    }
    return out;
}

Json ints(const std::vector<int>& v) {
    Json out = Json::array();
    for (int x : v) out.push_back(x);
    return out;
}

ChartPoint chart_from_json(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a chart point string");
    try {
        return parse_chart_point(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

template <class T, class Build>
T build(const std::string& where, Build b) {
    try {
        return b();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        fail(where, e.what());
    }
}

}  // namespace

Json convention_header() {
    Json c;
    c["block_order"] = "V-first";
    c["pairing"] = "half";
    c["chart_anchor"] = "lambda=0:I,inf:-I";
    return c;
}

std::string serialize(const Document& d) {
    Json out;
    out["format_version"] = kFormatVersion;
    out["kind"] = d.kind;
    out["convention"] = convention_header();
    out["payload"] = d.payload;
    return out.dump(2) + "\n";
}

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    const Json& v = field(j, "", "format_version");
    if (!v.is_number_integer()) fail("/format_version", "expected an integer");
    if (v.get<int>() != kFormatVersion)
        fail("/format_version", "unsupported version " + std::to_string(v.get<int>()) + ", expected " + std::to_string(kFormatVersion));
    const Json& kind = field(j, "", "kind");
    static const std::vector<std::string> kinds = {kGCStructure, kGQStructure, kPair, kPencil, kCertificate, kReport};
    if (!kind.is_string() || std::find(kinds.begin(), kinds.end(), kind.get<std::string>()) == kinds.end())
        fail("/kind", "unknown document kind " + kind.dump());
    const Json& conv = field(j, "", "convention");
    if (!conv.is_object()) fail("/convention", "expected an object");
    const Json ours = convention_header();
    for (const auto& [key, want] : ours.items()) {
        auto it = conv.find(key);
        if (it == conv.end()) throw ConventionError("convention mismatch: missing '" + key + "'");
        if (*it != want)
            throw ConventionError("convention mismatch: " + key + " is " + it->dump() + ", expected " + want.dump());
    }
    return {kind.get<std::string>(), field(j, "", "payload")};
}

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const Gaussian& z) {
    Json out;
    out["re"] = to_string(z.re());
    out["im"] = to_string(z.im());
    return out;
}

Json to_json(const QMat& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const GMat& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const GCStructure& s) {
    Json out;
    out["n"] = s.n();
    out["matrix"] = to_json(s.matrix());
    return out;
}

Json to_json(const GQStructure& g) {
    Json out;
    out["n"] = g.n();
    out["I"] = to_json(g.gen(0));
    out["J"] = to_json(g.gen(1));
    out["K"] = to_json(g.gen(2));
    return out;
}

Json to_json(const HypercomplexTriple& t) {
    Json out;
    out["dim"] = t.dim();
    out["I"] = to_json(t.I());
    out["J"] = to_json(t.J());
    return out;
}

Json to_json(const PairUE& p) {
    Json out = to_json(p.e);
    out["U"] = to_json(p.u.basis());
    return out;
}

Json to_json(const Pencil& p) {
    Json out;
    out["rows"] = p.rows();
    out["cols"] = p.cols();
    out["A"] = to_json(p.a);
    out["B"] = to_json(p.b);
    return out;
}

Json to_json(const SheafInvariants& s) {
    Json out;
    out["minus"] = ints(s.minus);
    out["plus"] = ints(s.plus);
    Json tor = Json::array();
    for (const auto& t : s.torsion) {
        Json e;
        e["support"] = t.support_string();
        if (!t.point) e["poly"] = poly_json(t.poly);
        e["lengths"] = ints(t.lengths);
        tor.push_back(std::move(e));
    }
    out["torsion"] = tor;
    return out;
}

Json to_json(const KroneckerInvariants& k) {
    Json out;
    out["normal_rank"] = k.normal_rank;
    out["column_indices"] = ints(k.column_indices);
    out["row_indices"] = ints(k.row_indices);
    Json fin = Json::array();
    for (const auto& f : k.finite) {
        Json e;
        e["root"] = to_json(f.root);
        e["degrees"] = ints(f.degrees);
        fin.push_back(std::move(e));
    }
    out["finite"] = fin;
    Json sym = Json::array();
    for (const auto& f : k.symbolic) {
        Json e;
        e["poly"] = poly_json(f.poly);
        e["powers"] = ints(f.powers);
        sym.push_back(std::move(e));
    }
    out["symbolic"] = sym;
    out["infinite"] = ints(k.infinite);
    return out;
}

Json to_json(const Certificate& c) {
    Json out;
    out["partial"] = c.partial;
    Json ext = Json::array();
    for (const auto& s : c.field_extension_required) ext.push_back(s);
    out["field_extension_required"] = ext;
    out["seed"] = c.seed;
    out["b"] = to_json(c.b.matrix());
    out["a"] = to_json(c.a);
    if (c.cr) {
        Json cr = to_json(c.cr->e);
        cr["iota"] = to_json(c.cr->iota);
        cr["section"] = to_json(c.cr->section);
        out["cr"] = cr;
    } else {
        out["cr"] = nullptr;
    }
    Json cs = Json::array();
    for (const auto& f : c.cs) {
        Json e;
        e["dim"] = f.dim();
        e["j"] = to_json(f.j);
        e["w"] = to_json(f.w);
        e["frame"] = to_json(f.frame);
        e["support"] = Json::array({to_string(f.support[0]), to_string(f.support[1])});
        cs.push_back(std::move(e));
    }
    out["cs"] = cs;
    out["invariants"] = to_json(c.invariants);
    return out;
}

QMat qmat_from_json(const Json& j, const std::string& where) {
    return matrix_from_json<Rational>(j, where, rational_from_json);
}

GMat gmat_from_json(const Json& j, const std::string& where) {
    return matrix_from_json<Gaussian>(j, where, gaussian_from_json);
}

GCStructure gc_from_json(const Json& j, const std::string& where) {
    const std::size_t n = size_from_json(field(j, where, "n"), at(where, "n"));
    return GCStructure(square(field(j, where, "matrix"), at(where, "matrix"), 2 * n));
}

GQStructure gq_from_json(const Json& j, const std::string& where) {
    const std::size_t n = size_from_json(field(j, where, "n"), at(where, "n"));
    QMat i = square(field(j, where, "I"), at(where, "I"), 2 * n);
    QMat jj = square(field(j, where, "J"), at(where, "J"), 2 * n);
    GQStructure g = GQStructure::from_pair(std::move(i), std::move(jj));
    if (j.contains("K") && square(j["K"], at(where, "K"), 2 * n) != g.gen(2)) fail(at(where, "K"), "K differs from IJ");
    return g;
}

namespace {

HypercomplexTriple triple_from_json(const Json& j, const std::string& where) {
    const std::size_t d = size_from_json(field(j, where, "dim"), at(where, "dim"));
    QMat i = square(field(j, where, "I"), at(where, "I"), d);
    QMat jj = square(field(j, where, "J"), at(where, "J"), d);
    return build<HypercomplexTriple>(where, [&] { return HypercomplexTriple(std::move(i), std::move(jj)); });
}

}  // namespace

PairUE pair_from_json(const Json& j, const std::string& where) {
    HypercomplexTriple e = triple_from_json(j, where);
    QMat u = columns_from_json(field(j, where, "U"), at(where, "U"), e.dim());
    return build<PairUE>(where, [&] { return make_pair_checked(std::move(e), QSub::span(u)); });
}

Pencil pencil_from_json(const Json& j, const std::string& where) {
    const std::size_t rows = size_from_json(field(j, where, "rows"), at(where, "rows"));
    const std::size_t cols = size_from_json(field(j, where, "cols"), at(where, "cols"));
    Pencil p{gmat_from_json(field(j, where, "A"), at(where, "A")), gmat_from_json(field(j, where, "B"), at(where, "B"))};
    for (const auto& [name, m] : {std::pair<const char*, const GMat*>{"A", &p.a}, {"B", &p.b}}) {
        const bool empty = m->rows() == 0 && rows == 0;
        if (!empty && (m->rows() != rows || m->cols() != cols))
            fail(at(where, name), "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    if (rows == 0) p = {GMat(0, cols), GMat(0, cols)};
    return p;
}

SheafInvariants sheaf_from_json(const Json& j, const std::string& where) {
    SheafInvariants s;
    s.minus = ints_from_json(field(j, where, "minus"), at(where, "minus"));
    s.plus = ints_from_json(field(j, where, "plus"), at(where, "plus"));
    const Json& tor = field(j, where, "torsion");
    const std::string wt = at(where, "torsion");
    if (!tor.is_array()) fail(wt, "expected an array");
    for (std::size_t i = 0; i < tor.size(); ++i) {
        const std::string we = at(wt, i);
        TorsionEntry e;
        e.lengths = ints_from_json(field(tor[i], we, "lengths"), at(we, "lengths"));
        if (tor[i].contains("poly")) {
            const Json& pj = tor[i]["poly"];
            if (!pj.is_array()) fail(at(we, "poly"), "expected coefficients, lowest degree first");
            std::vector<Gaussian> coeffs;
            for (std::size_t k = 0; k < pj.size(); ++k) coeffs.push_back(gaussian_from_json(pj[k], at(at(we, "poly"), k)));
            e.poly = Poly(std::move(coeffs));
        } else {
            e.point = chart_from_json(field(tor[i], we, "support"), at(we, "support"));
        }
        s.torsion.push_back(std::move(e));
    }
    return s;
}

Certificate certificate_from_json(const Json& j, const std::string& where) {
    Certificate c;
    const Json& partial = field(j, where, "partial");
    if (!partial.is_boolean()) fail(at(where, "partial"), "expected a boolean");
    c.partial = partial.get<bool>();
    const Json& ext = field(j, where, "field_extension_required");
    if (!ext.is_array()) fail(at(where, "field_extension_required"), "expected an array");
    for (std::size_t i = 0; i < ext.size(); ++i) {
        if (!ext[i].is_string()) fail(at(at(where, "field_extension_required"), i), "expected a string");
        c.field_extension_required.push_back(ext[i].get<std::string>());
    }
    const Json& seed = field(j, where, "seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long>() >= 0))
        fail(at(where, "seed"), "expected a nonnegative integer");
    c.seed = seed.get<std::uint64_t>();
    c.a = qmat_from_json(field(j, where, "a"), at(where, "a"));
    if (c.a.rows() != c.a.cols()) fail(at(where, "a"), "expected a square matrix");
    QMat b = square(field(j, where, "b"), at(where, "b"), c.a.rows());
    c.b = build<BField>(at(where, "b"), [&] { return BField(std::move(b)); });
    const Json& cr = field(j, where, "cr");
    if (!cr.is_null()) {
        const std::string wc = at(where, "cr");
        CRQFactor f;
        f.e = triple_from_json(cr, wc);
        f.iota = columns_from_json(field(cr, wc, "iota"), at(wc, "iota"), f.e.dim());
        f.section = qmat_from_json(field(cr, wc, "section"), at(wc, "section"));
        c.cr = std::move(f);
    }
    const Json& cs = field(j, where, "cs");
    if (!cs.is_array()) fail(at(where, "cs"), "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::string wf = at(at(where, "cs"), i);
        const std::size_t d = size_from_json(field(cs[i], wf, "dim"), at(wf, "dim"));
        CSFactor f;
        f.j = square(field(cs[i], wf, "j"), at(wf, "j"), d);
        f.w = square(field(cs[i], wf, "w"), at(wf, "w"), d);
        f.frame = square(field(cs[i], wf, "frame"), at(wf, "frame"), 3);
        const Json& sp = field(cs[i], wf, "support");
        if (!sp.is_array() || sp.size() != 2) fail(at(wf, "support"), "expected two chart points");
        f.support = {chart_from_json(sp[0], at(at(wf, "support"), 0)), chart_from_json(sp[1], at(at(wf, "support"), 1))};
        c.cs.push_back(std::move(f));
    }
    c.invariants = sheaf_from_json(field(j, where, "invariants"), at(where, "invariants"));
    return c;
}

}  // namespace gqla::io
