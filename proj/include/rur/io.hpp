#pragma once

// Serialization of parametrizations: a versioned JSON document ("rur-doc/1")
// with decimal-string coefficients, plus a readable text rendering.

#include <string>
#include <vector>

#include "rur/fields.hpp"
#include "rur/mpoly.hpp"
#include "rur/rur.hpp"

namespace rur {

inline constexpr const char* kSchemaVersion = "rur-doc/1";
inline constexpr const char* kToolVersion = "rursolve 0.1.0";

/// Field- and engine-agnostic snapshot of a parametrization. Coefficients
/// are decimal strings ("a/b" for non-integral rationals), ascending by
/// degree, so the document round-trips losslessly.
struct RurDocument {
    std::string schema = kSchemaVersion;
    std::string tool = kToolVersion;
    std::vector<std::string> variables;
    FieldSpec field;
    LinearForm form;
    bool full = false;
    std::size_t dimension = 0;
    std::size_t delta = 0;
    std::vector<std::string> first;
    std::vector<std::string> f0;
    std::vector<std::vector<std::string>> coords;

    bool operator==(const RurDocument&) const = default;
};

RurDocument make_document(const ReducedRUR<Rat>& r, const std::vector<std::string>& vars);
RurDocument make_document(const ReducedRUR<Fp>& r, const std::vector<std::string>& vars);

std::string to_json(const RurDocument& doc);
RurDocument document_from_json(const std::string& text);

std::string to_text(const RurDocument& doc);

/// Rebuild the rational parametrization held in a document.
/// Throws ParseError when the document is not rational or malformed.
ReducedRUR<Rat> rational_rur_of(const RurDocument& doc);

/// Rebuild a prime-field parametrization held in a document.
ReducedRUR<Fp> prime_rur_of(const RurDocument& doc);

}  // namespace rur
