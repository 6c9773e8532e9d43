#include "rur/io.hpp"

#include <sstream>

#include <json.hpp>

#include "rur/errors.hpp"

namespace rur {

namespace {

using nlohmann::json;

std::vector<std::string> coeff_strings(const UPoly<Rat>& f) {
    std::vector<std::string> out;
    out.reserve(f.coeffs().size());
    for (const Rat& c : f.coeffs()) out.push_back(c.str());
    return out;
}

std::vector<std::string> coeff_strings(const UPoly<Fp>& f) {
    std::vector<std::string> out;
    out.reserve(f.coeffs().size());
    for (const Fp& c : f.coeffs()) out.push_back(std::to_string(c.value()));
    return out;
}

template <class K>
RurDocument document_of(const ReducedRUR<K>& r, const std::vector<std::string>& vars,
                        uint64_t prime) {
    RurDocument doc;
    doc.variables = vars;
    doc.field.prime = prime;
    doc.form = r.form;
    doc.full = r.full;
    doc.dimension = r.bigD;
    doc.delta = r.delta;
    doc.first = coeff_strings(r.first);
    doc.f0 = coeff_strings(r.f0);
    for (const auto& c : r.coords) doc.coords.push_back(coeff_strings(c));
    return doc;
}

[[noreturn]] void bad_doc(const std::string& msg) { throw ParseError("rur document: " + msg, 0, 0); }

UPoly<Rat> rat_poly(const std::vector<std::string>& coeffs) {
    std::vector<Rat> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) {
        try {
            c.push_back(Rat(s));
        } catch (const std::exception&) {
            bad_doc("invalid rational coefficient '" + s + "'");
        }
    }
    return UPoly<Rat>(std::move(c));
}

UPoly<Fp> prime_poly(const std::vector<std::string>& coeffs, const PrimeModulus& p) {
    std::vector<Fp> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) {
        try {
            c.push_back(embed_mpz(mpz_class(s), Fp(0, p)));
        } catch (const std::invalid_argument&) {
            bad_doc("invalid coefficient '" + s + "'");
        }
    }
    return UPoly<Fp>(std::move(c));
}

std::string poly_str(const std::vector<std::string>& coeffs) {
    // readable rendering without re-parsing: c_k*T^k descending
    std::ostringstream os;
    bool wrote = false;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        std::string c = coeffs[k];
        if (c == "0") continue;
        bool neg = !c.empty() && c[0] == '-';
        if (neg) c = c.substr(1);
        os << (wrote ? (neg ? " - " : " + ") : (neg ? "-" : ""));
        if (k == 0 || c != "1") {
            os << c;
            if (k > 0) os << "*";
        }
        if (k > 0) {
            os << "T";
            if (k > 1) os << "^" << k;
        }
        wrote = true;
    }
    if (!wrote) return "0";
    return os.str();
}

}  // namespace

RurDocument make_document(const ReducedRUR<Rat>& r, const std::vector<std::string>& vars) {
    return document_of(r, vars, 0);
}

RurDocument make_document(const ReducedRUR<Fp>& r, const std::vector<std::string>& vars) {
    uint64_t p = r.first.is_zero() ? (r.f0.is_zero() ? 0 : r.f0.lead().modulus())
                                   : r.first.lead().modulus();
    if (p == 0) throw InternalInvariantViolation("cannot infer the modulus of an empty image");
    return document_of(r, vars, p);
}

std::string to_json(const RurDocument& doc) {
    json j;
    j["schema"] = doc.schema;
    j["tool"] = doc.tool;
    j["variables"] = doc.variables;
    if (doc.field.is_rational()) {
        j["field"] = {{"type", "QQ"}};
    } else {
        j["field"] = {{"type", "FF"}, {"prime", std::to_string(doc.field.prime)}};
    }
    j["form"] = doc.form;
    j["kind"] = doc.full ? "full" : "radical";
    j["dimension"] = doc.dimension;
    j["delta"] = doc.delta;
    j["first"] = doc.first;
    j["f0"] = doc.f0;
    j["coords"] = doc.coords;
    return j.dump(2) + "\n";
}

RurDocument document_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        bad_doc(std::string("invalid JSON: ") + e.what());
    }
    RurDocument doc;
    try {
        doc.schema = j.at("schema").get<std::string>();
        if (doc.schema != kSchemaVersion) bad_doc("unsupported schema '" + doc.schema + "'");
        doc.tool = j.value("tool", "");
        doc.variables = j.at("variables").get<std::vector<std::string>>();
        const json& f = j.at("field");
        std::string type = f.at("type").get<std::string>();
        if (type == "QQ") {
            doc.field.prime = 0;
        } else if (type == "FF") {
            doc.field.prime = std::stoull(f.at("prime").get<std::string>());
        } else {
            bad_doc("unknown field type '" + type + "'");
        }
        doc.form = j.at("form").get<LinearForm>();
        std::string kind = j.at("kind").get<std::string>();
        if (kind != "radical" && kind != "full") bad_doc("unknown kind '" + kind + "'");
        doc.full = kind == "full";
        doc.dimension = j.at("dimension").get<std::size_t>();
        doc.delta = j.at("delta").get<std::size_t>();
        doc.first = j.at("first").get<std::vector<std::string>>();
        doc.f0 = j.at("f0").get<std::vector<std::string>>();
        doc.coords = j.at("coords").get<std::vector<std::vector<std::string>>>();
    } catch (const json::exception& e) {
        bad_doc(std::string("missing or mistyped field: ") + e.what());
    }
    if (doc.coords.size() != doc.variables.size()) bad_doc("one coordinate list per variable required");
    if (doc.form.size() != doc.variables.size()) bad_doc("form arity differs from the variables");
    return doc;
}

std::string to_text(const RurDocument& doc) {
    std::ostringstream os;
    os << doc.schema << " (" << (doc.full ? "full" : "radical") << ") over ";
    if (doc.field.is_rational())
        os << "QQ";
    else
        os << "FF " << doc.field.prime;
    os << "\n";
    os << "variables:";
    for (const auto& v : doc.variables) os << " " << v;
    os << "\n";
    os << "separating form: t =";
    bool wrote = false;
    for (std::size_t i = 0; i < doc.form.size(); ++i) {
        int64_t c = doc.form[i];
        if (c == 0) continue;
        if (wrote)
            os << (c < 0 ? " - " : " + ");
        else
            os << (c < 0 ? " -" : " ");
        int64_t m = c < 0 ? -c : c;
        if (m != 1) os << m << "*";
        os << doc.variables[i];
        wrote = true;
    }
    if (!wrote) os << " 0";
    os << "\n";
    os << "D = " << doc.dimension << ", delta = " << doc.delta << "\n";
    os << "f(T) = " << poly_str(doc.first) << "\n";
    os << "f0(T) = " << poly_str(doc.f0) << "\n";
    for (std::size_t i = 0; i < doc.coords.size(); ++i)
        os << doc.variables[i] << " = (" << poly_str(doc.coords[i]) << ") / f0\n";
    return os.str();
}

ReducedRUR<Rat> rational_rur_of(const RurDocument& doc) {
    if (!doc.field.is_rational()) bad_doc("expected a rational document");
    ReducedRUR<Rat> r;
    r.first = rat_poly(doc.first);
    r.f0 = rat_poly(doc.f0);
    for (const auto& c : doc.coords) r.coords.push_back(rat_poly(c));
    r.form = doc.form;
    r.delta = doc.delta;
    r.bigD = doc.dimension;
    r.full = doc.full;
    return r;
}

ReducedRUR<Fp> prime_rur_of(const RurDocument& doc) {
    if (doc.field.is_rational()) bad_doc("expected a prime-field document");
    PrimeModulus p(doc.field.prime);
    ReducedRUR<Fp> r;
    r.first = prime_poly(doc.first, p);
    r.f0 = prime_poly(doc.f0, p);
    for (const auto& c : doc.coords) r.coords.push_back(prime_poly(c, p));
    r.form = doc.form;
    r.delta = doc.delta;
    r.bigD = doc.dimension;
    r.full = doc.full;
    return r;
}

}  // namespace rur
