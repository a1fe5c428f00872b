#pragma once

#include "gqla/genc.hpp"
#include "gqla/genq.hpp"
#include "gqla/sheaf.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace gqla::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

inline constexpr const char* kGCStructure = "gc-structure";
inline constexpr const char* kGQStructure = "gq-structure";
inline constexpr const char* kPair = "pair";
inline constexpr const char* kPencil = "pencil";
inline constexpr const char* kCertificate = "certificate";
inline constexpr const char* kReport = "report";

/// Malformed text or a payload field of the wrong shape; the message starts with the location.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The document was written under different conventions.
class ConventionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Block order, pairing normalization and chart anchor of every document.
Json convention_header();

struct Document {
    std::string kind;
    Json payload;
};

/// Two-space indented JSON with a trailing newline; keys in a fixed order.
std::string serialize(const Document& d);
/// Checks format_version, kind and the convention header.
Document parse_document(const std::string& text);

Json to_json(const Rational& q);
Json to_json(const Gaussian& z);
Json to_json(const QMat& m);
Json to_json(const GMat& m);
Json to_json(const GCStructure& s);
Json to_json(const GQStructure& g);
Json to_json(const HypercomplexTriple& t);
Json to_json(const PairUE& p);
Json to_json(const Pencil& p);
Json to_json(const SheafInvariants& s);
Json to_json(const KroneckerInvariants& k);
Json to_json(const Certificate& c);

/// Readers take the JSON pointer of `j` for error messages.
QMat qmat_from_json(const Json& j, const std::string& where = "");
GMat gmat_from_json(const Json& j, const std::string& where = "");
/// Validates the structure; invalid matrices raise InvalidStructure.
GCStructure gc_from_json(const Json& j, const std::string& where = "");
/// No validation beyond shapes; K is recomputed as IJ and must match when present.
GQStructure gq_from_json(const Json& j, const std::string& where = "");
PairUE pair_from_json(const Json& j, const std::string& where = "");
Pencil pencil_from_json(const Json& j, const std::string& where = "");
SheafInvariants sheaf_from_json(const Json& j, const std::string& where = "");
Certificate certificate_from_json(const Json& j, const std::string& where = "");

}  // namespace gqla::io
