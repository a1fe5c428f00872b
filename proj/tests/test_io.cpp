#include "doctest.h"
#include "gqla/io.hpp"
#include "gqla/random.hpp"

using namespace gqla;

namespace {

std::string round_trip(const io::Document& d) { return io::serialize(io::parse_document(io::serialize(d))); }

}  // namespace

TEST_CASE("document header") {
    std::string text = io::serialize({io::kPair, io::to_json(pair_imh_h())});
    io::Json j = io::Json::parse(text);
    CHECK(j["format_version"] == io::kFormatVersion);
    CHECK(j["kind"] == "pair");
    CHECK(j["convention"]["block_order"] == "V-first");
    CHECK(text.back() == '\n');
    CHECK(io::parse_document(text).kind == "pair");
}

TEST_CASE("byte-stable round trips") {
    SeededRng rng(3);
    CompositeTruth t = random_composite(rng, {4, {4}});
    Certificate c = classify(t.g, {2});
    std::vector<io::Document> docs = {
        {io::kPair, io::to_json(pair_r_h())},
        {io::kPencil, io::to_json(pencil_of_pair(pair_imh_h()))},
        {io::kGQStructure, io::to_json(t.g)},
        {io::kGCStructure, io::to_json(from_complex(standard_complex(1)))},
        {io::kCertificate, io::to_json(c)},
    };
    for (const auto& d : docs) CHECK(round_trip(d) == io::serialize(d));

    // Through the typed readers as well.
    CHECK(io::gq_from_json(io::to_json(t.g)) == t.g);
    Certificate back = io::certificate_from_json(io::to_json(c));
    CHECK(io::to_json(back) == io::to_json(c));
    CHECK(verify_certificate(t.g, back));
    PairUE p = io::pair_from_json(io::to_json(pair_zero_h()));
    CHECK(p.u.dim() == 0);
    CHECK(sheaf_of_pair(p) == sheaf_of_pair(pair_zero_h()));
    SheafInvariants irr = classify(irrational_torsion_example()).invariants;
    CHECK(io::sheaf_from_json(io::to_json(irr)) == irr);
}

TEST_CASE("parse errors carry a location") {
    try {
        io::parse_document("{\"format_version\": 1,\n \"kind\": }");
        FAIL("no error");
    } catch (const io::ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    io::Json j = io::to_json(GQStructure::from_pair(QMat::identity(2), QMat::identity(2)));
    j["I"][1][0] = "x";
    try {
        io::gq_from_json(j, "/payload");
        FAIL("no error");
    } catch (const io::ParseError& e) {
        CHECK(std::string(e.what()).rfind("/payload/I/1/0:", 0) == 0);
    }
    j = io::to_json(pair_h_h());
    j.erase("U");
    CHECK_THROWS_WITH_AS(io::pair_from_json(j, "/payload"), "/payload: missing field 'U'", io::ParseError);
    CHECK_THROWS_AS(io::parse_document("{\"format_version\": 2, \"kind\": \"pair\"}"), io::ParseError);
    CHECK_THROWS_AS(io::parse_document("{\"format_version\": 1, \"kind\": \"sphere\"}"), io::ParseError);
}

TEST_CASE("convention mismatch") {
    io::Json j = io::Json::parse(io::serialize({io::kPair, io::to_json(pair_h_h())}));
    j["convention"]["pairing"] = "unit";
    CHECK_THROWS_AS(io::parse_document(j.dump()), io::ConventionError);
    j.erase("convention");
    CHECK_THROWS_AS(io::parse_document(j.dump()), io::ParseError);
}

TEST_CASE("semantic validation on read") {
    io::Json j = io::to_json(pair_h_h());
    j["J"] = j["I"];
    CHECK_THROWS_AS(io::pair_from_json(j), io::ParseError);
    io::Json g = io::to_json(from_complex(standard_complex(1)));
    g["matrix"][0][0] = "1";
    CHECK_THROWS_AS(io::gc_from_json(g), InvalidStructure);
    io::Json q = io::to_json(from_co_cr(HypercomplexTriple::standard(1), QMat::identity(4), QMat::identity(4)));
    q["K"][0][0] = "5";
    CHECK_THROWS_AS(io::gq_from_json(q), io::ParseError);
}
