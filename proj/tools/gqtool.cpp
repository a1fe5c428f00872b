#include "gqla/genc.hpp"
#include "gqla/genq.hpp"
#include "gqla/io.hpp"
#include "gqla/random.hpp"
#include "gqla/sheaf.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace gqla;
using io::Json;

namespace {

constexpr int kValid = 0;
constexpr int kInvalid = 1;
constexpr int kPartial = 2;

struct Options {
    std::optional<std::uint64_t> seed;
    std::string out;
    bool quiet = false;
};

/// Failure that ends the command with an exit code and a message on stderr.
struct Exit {
    int code;
    std::string message;
};

std::string read_text(const std::string& path) {
    std::ostringstream s;
    if (path.empty() || path == "-") {
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream f(path);
    if (!f) throw Exit{kInvalid, "cannot read " + path};
    s << f.rdbuf();
    return s.str();
}

io::Document read_document(const std::string& path) {
    try {
        return io::parse_document(read_text(path));
    } catch (const io::ParseError& e) {
        throw Exit{kInvalid, (path.empty() ? std::string("<stdin>") : path) + ": " + e.what()};
    } catch (const io::ConventionError& e) {
        throw Exit{kInvalid, (path.empty() ? std::string("<stdin>") : path) + ": " + e.what()};
    }
}

void expect_kind(const io::Document& d, std::initializer_list<const char*> kinds) {
    for (const char* k : kinds)
        if (d.kind == k) return;
    std::string want;
    for (const char* k : kinds) want += (want.empty() ? "" : ", ") + std::string(k);
    throw Exit{kInvalid, "unsupported document kind '" + d.kind + "', expected one of: " + want};
}

std::uint64_t require_seed(const Options& o, const std::string& command) {
    if (!o.seed) throw Exit{kInvalid, command + " is randomized and needs --seed"};
    return *o.seed;
}

void emit(const Options& o, const io::Document& d) {
    const std::string text = io::serialize(d);
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Exit{kInvalid, "cannot write " + o.out};
    f << text;
}

void note(const Options& o, const std::string& line) {
    if (!o.quiet) std::cerr << line << "\n";
}

Json report(const char* command, const std::string& input_kind) {
    Json r;
    r["command"] = command;
    r["input_kind"] = input_kind;
    return r;
}

template <class F>
auto payload(const std::string& what, F f) -> decltype(f()) {
    try {
        return f();
    } catch (const io::ParseError& e) {
        throw Exit{kInvalid, what + ": " + e.what()};
    } catch (const std::invalid_argument& e) {
        throw Exit{kInvalid, what + ": " + e.what()};
    }
}

// ---------------------------------------------------------------------------

/// Structural validity of a certificate: factors rebuild into a valid structure of the
/// declared dimension and the transform is invertible.
std::optional<std::string> certificate_defect(const Certificate& c) {
    GQStructure model = rebuild_model(c);
    if (model.n() != c.a.rows()) return "factor dimensions do not add up to the transform size";
    if (rank(c.a) != c.a.rows()) return "transform A is singular";
    GQReport r = check_gq(model);
    if (!r.valid) return "rebuilt structure: " + r.failure;
    return std::nullopt;
}

int cmd_check(const Options& o, const std::string& path) {
    io::Document d = read_document(path);
    Json r = report("check", d.kind);
    std::string failure;
    try {
        if (d.kind == io::kGCStructure) {
            const std::size_t n = d.payload.at("n").get<std::size_t>();
            QMat m = io::qmat_from_json(d.payload.at("matrix"), "/payload/matrix");
            if (m.rows() != 2 * n || m.cols() != 2 * n) failure = "matrix is not " + std::to_string(2 * n) + "x" + std::to_string(2 * n);
            else if (auto defect = gc_defect(m)) failure = *defect;
            else r["type"] = type_of(GCStructure::trusted(m)).k;
        } else if (d.kind == io::kGQStructure) {
            GQReport g = check_gq(io::gq_from_json(d.payload, "/payload"));
            if (!g.valid) failure = g.failure;
        } else if (d.kind == io::kPair) {
            PairUE p = io::pair_from_json(d.payload, "/payload");
            r["dim"] = p.dim();
            r["u_dim"] = p.u.dim();
        } else if (d.kind == io::kPencil) {
            Pencil p = io::pencil_from_json(d.payload, "/payload");
            r["rows"] = p.rows();
            r["cols"] = p.cols();
        } else if (d.kind == io::kCertificate) {
            Certificate c = io::certificate_from_json(d.payload, "/payload");
            if (auto defect = certificate_defect(c)) failure = *defect;
            r["partial"] = c.partial;
        } else {
            throw Exit{kInvalid, "check does not apply to '" + d.kind + "' documents"};
        }
    } catch (const Exit&) {
        throw;
    } catch (const std::exception& e) {
        failure = e.what();
    }
    r["valid"] = failure.empty();
    r["failure"] = failure;
    emit(o, {io::kReport, r});
    note(o, failure.empty() ? "valid " + d.kind : "invalid " + d.kind + ": " + failure);
    return failure.empty() ? kValid : kInvalid;
}

int cmd_sheaf(const Options& o, const std::string& path) {
    io::Document d = read_document(path);
    expect_kind(d, {io::kPair, io::kGQStructure, io::kPencil});
    Json r = report("sheaf", d.kind);
    if (d.kind == io::kPencil) {
        Pencil p = payload(path, [&] { return io::pencil_from_json(d.payload, "/payload"); });
        r["kronecker"] = io::to_json(kronecker(p));
    } else {
        PairUE pair = payload(path, [&] {
            if (d.kind == io::kPair) return io::pair_from_json(d.payload, "/payload");
            GQStructure g = io::gq_from_json(d.payload, "/payload");
            GQReport rep = check_gq(g);
            if (!rep.valid) throw std::invalid_argument("invalid structure: " + rep.failure);
            return g.pair();
        });
        SheafInvariants s = sheaf_of_pair(pair);
        r["sheaf"] = io::to_json(s);
        std::string line = "minus";
        for (int x : s.minus) line += " " + std::to_string(x);
        line += "; plus";
        for (int x : s.plus) line += " " + std::to_string(x);
        line += "; torsion";
        for (const auto& t : s.torsion) line += " " + t.support_string();
        note(o, line);
    }
    emit(o, {io::kReport, r});
    return kValid;
}

int cmd_classify(const Options& o, const std::string& path) {
    io::Document d = read_document(path);
    expect_kind(d, {io::kGQStructure, io::kGCStructure});
    const std::uint64_t seed = require_seed(o, "classify");
    if (d.kind == io::kGCStructure) {
        GCStructure s = payload(path, [&] { return io::gc_from_json(d.payload, "/payload"); });
        GCSplitting sp = split_gc(s);
        if (!verify_splitting(s, sp)) throw Exit{kInvalid, "splitting failed to reproduce the input"};
        Json r = report("classify", d.kind);
        r["type"] = type_of(s).k;
        r["b"] = io::to_json(sp.b.matrix());
        r["a"] = io::to_json(sp.a);
        r["complex_part"] = io::to_json(sp.complex_part);
        r["symplectic_part"] = io::to_json(sp.symplectic_part);
        emit(o, {io::kReport, r});
        note(o, "type " + std::to_string(type_of(s).k));
        return kValid;
    }
    GQStructure g = payload(path, [&] { return io::gq_from_json(d.payload, "/payload"); });
    GQReport rep = check_gq(g);
    if (!rep.valid) throw Exit{kInvalid, "invalid structure: " + rep.failure};
    Certificate c;
    try {
        c = classify(g, {seed});
    } catch (const ClassificationError& e) {
        throw Exit{kInvalid, std::string("classification failed: ") + e.what()};
    }
    emit(o, {io::kCertificate, io::to_json(c)});
    if (c.partial) {
        std::string ext;
        for (const auto& s : c.field_extension_required) ext += " " + s;
        note(o, "partial: torsion supports need a field extension:" + ext);
        return kPartial;
    }
    std::string dims;
    for (std::size_t x : c.factor_dims()) dims += " " + std::to_string(x);
    note(o, "factor dims" + dims);
    return kValid;
}

int cmd_verify(const Options& o, const std::string& structure_path, const std::string& certificate_path) {
    if ((structure_path.empty() || structure_path == "-") && (certificate_path.empty() || certificate_path == "-"))
        throw Exit{kInvalid, "verify reads at most one document from stdin"};
    io::Document ds = read_document(structure_path), dc = read_document(certificate_path);
    expect_kind(ds, {io::kGQStructure});
    expect_kind(dc, {io::kCertificate});
    GQStructure g = payload(structure_path, [&] { return io::gq_from_json(ds.payload, "/payload"); });
    Certificate c = payload(certificate_path, [&] { return io::certificate_from_json(dc.payload, "/payload"); });
    VerifyReport vr;
    GQReport rep = check_gq(g);
    if (!rep.valid) vr.reason = "invalid structure: " + rep.failure;
    else vr = verify_certificate_report(g, c);
    Json r = report("verify", dc.kind);
    r["ok"] = vr.ok;
    r["partial"] = c.partial;
    r["reason"] = vr.reason;
    if (vr.ok) r["rotation"] = io::to_json(vr.rotation);
    emit(o, {io::kReport, r});
    note(o, vr.ok ? "certificate verified" : "verification failed: " + vr.reason);
    if (vr.ok) return kValid;
    return c.partial ? kPartial : kInvalid;
}

PairUE named_pair(const std::string& name) {
    if (name == "h-h") return pair_h_h();
    if (name == "imh-h") return pair_imh_h();
    if (name == "r-h") return pair_r_h();
    if (name == "zero-h") return pair_zero_h();
    throw Exit{kInvalid, "unknown pair '" + name + "' (h-h, imh-h, r-h, zero-h)"};
}

struct MakeParams {
    std::string kind;
    std::string name = "imh-h";
    std::size_t m = 1;
    std::size_t dim = 8;
    std::size_t cr = 4;
    std::vector<std::size_t> cs;
};

int cmd_make(const Options& o, const MakeParams& p) {
    auto seeded = [&] { return SeededRng(require_seed(o, "make " + p.kind)); };
    io::Document d;
    if (p.kind == "pair") {
        d = {io::kPair, io::to_json(named_pair(p.name))};
    } else if (p.kind == "pencil") {
        d = {io::kPencil, io::to_json(pencil_of_pair(named_pair(p.name)))};
    } else if (p.kind == "cr-pair") {
        if (p.dim == 0 || p.dim % 4 != 0) throw Exit{kInvalid, "--dim must be a positive multiple of 4"};
        SeededRng rng = seeded();
        d = {io::kPair, io::to_json(random_cr_pair(rng, p.dim))};
    } else if (p.kind == "complex-symplectic") {
        SeededRng rng = seeded();
        auto [j, w] = random_complex_symplectic(rng, p.m);
        d = {io::kGQStructure, io::to_json(from_complex_symplectic(j, w))};
    } else if (p.kind == "composite") {
        SeededRng rng = seeded();
        CompositeSpec spec{p.cr, p.cs};
        d = {io::kGQStructure, io::to_json(random_composite(rng, spec).g)};
    } else if (p.kind == "irrational") {
        d = {io::kGQStructure, io::to_json(irrational_torsion_example())};
    } else if (p.kind == "co-cr") {
        d = {io::kGQStructure, io::to_json(from_co_cr(HypercomplexTriple::standard(p.m), QMat::identity(4 * p.m),
                                                      QMat::identity(4 * p.m)))};
    } else if (p.kind == "gc-complex") {
        SeededRng rng = seeded();
        d = {io::kGCStructure, io::to_json(from_complex(random_complex_structure(rng, p.m)))};
    } else if (p.kind == "gc-symplectic") {
        SeededRng rng = seeded();
        d = {io::kGCStructure, io::to_json(from_symplectic(random_symplectic(rng, p.m)))};
    } else {
        throw Exit{kInvalid, "unknown kind '" + p.kind +
                                 "' (pair, pencil, cr-pair, complex-symplectic, composite, irrational, co-cr, gc-complex, "
                                 "gc-symplectic)"};
    }
    emit(o, d);
    note(o, "made " + d.kind);
    return kValid;
}

int cmd_scramble(const Options& o, const std::string& path) {
    io::Document d = read_document(path);
    expect_kind(d, {io::kGQStructure, io::kGCStructure});
    const std::uint64_t seed = require_seed(o, "scramble");
    if (d.kind == io::kGQStructure) {
        GQStructure g = payload(path, [&] { return io::gq_from_json(d.payload, "/payload"); });
        emit(o, {io::kGQStructure, io::to_json(scramble_seeded(g, seed))});
    } else {
        GCStructure s = payload(path, [&] { return io::gc_from_json(d.payload, "/payload"); });
        SeededRng rng(seed);
        BField b(random_skew(rng, s.n()));
        QMat a = random_invertible(rng, s.n());
        emit(o, {io::kGCStructure, io::to_json(bfield_transform(gl_transform(s, a), b))});
    }
    note(o, "scrambled with seed " + std::to_string(seed));
    return kValid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact linear algebra of generalized complex and quaternionic structures."};
    app.require_subcommand(1);
    Options o;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = app.add_option("--seed", seed, "Seed for randomized commands")->type_name("U64");
    app.add_option("--out", o.out, "Output path (default stdout)");
    app.add_flag("--quiet", o.quiet, "No summary on stderr");

    std::string path, cert_path;
    MakeParams mp;
    auto* check = app.add_subcommand("check", "Validate a document and emit a report");
    check->add_option("path", path, "Input document (default stdin)");
    auto* sheaf = app.add_subcommand("sheaf", "Sheaf invariants of a pair or structure; Kronecker data of a pencil");
    sheaf->add_option("path", path, "Input document (default stdin)");
    auto* cls = app.add_subcommand("classify", "Certificate for a GQ structure, splitting for a GC structure");
    cls->add_option("path", path, "Input document (default stdin)");
    auto* ver = app.add_subcommand("verify", "Check a certificate against a structure");
    ver->add_option("structure", path, "Structure document")->required();
    ver->add_option("certificate", cert_path, "Certificate document (default stdin)");
    auto* make = app.add_subcommand("make", "Emit a bundled or seeded random document");
    make->add_option("kind", mp.kind, "pair, pencil, cr-pair, complex-symplectic, composite, irrational, co-cr, gc-complex, gc-symplectic")
        ->required();
    make->add_option("--name", mp.name, "Bundled pair: h-h, imh-h, r-h, zero-h");
    make->add_option("--m", mp.m, "Quaternionic or complex dimension parameter");
    make->add_option("--dim", mp.dim, "Real dimension of a CR pair");
    make->add_option("--cr", mp.cr, "CR factor dimension of a composite: 0, 4 or 8");
    make->add_option("--cs", mp.cs, "Complex-symplectic factor dimensions, each 4 or 8")->delimiter(',');
    auto* scr = app.add_subcommand("scramble", "Seeded B-field and GL transform of a structure");
    scr->add_option("path", path, "Input document (default stdin)");
    for (auto* sub : {check, sheaf, cls, ver, make, scr}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) o.seed = seed;

    try {
        if (*check) return cmd_check(o, path);
        if (*sheaf) return cmd_sheaf(o, path);
        if (*cls) return cmd_classify(o, path);
        if (*ver) return cmd_verify(o, path, cert_path);
        if (*make) return cmd_make(o, mp);
        if (*scr) return cmd_scramble(o, path);
    } catch (const Exit& e) {
        std::cerr << "gqtool: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "gqtool: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
