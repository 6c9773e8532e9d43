#include "rur/mpoly.hpp"

#include <cctype>
#include <unordered_map>

namespace rur {

Monomial Monomial::variable(std::size_t nvars, std::size_t var, uint32_t pow) {
    if (pow > 0xffff) throw ExponentOverflow("exponent " + std::to_string(pow) + " exceeds 16 bits");
    std::vector<uint16_t> e(nvars, 0);
    e.at(var) = static_cast<uint16_t>(pow);
    return Monomial(std::move(e));
}

uint32_t Monomial::degree() const {
    uint32_t d = 0;
    for (uint16_t x : e_) d += x;
    return d;
}

bool Monomial::is_one() const {
    for (uint16_t x : e_)
        if (x) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& b) const {
    if (e_.size() != b.e_.size()) throw InternalInvariantViolation("monomial arity mismatch");
    std::vector<uint16_t> e(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) {
        uint32_t s = uint32_t(e_[i]) + b.e_[i];
        if (s > 0xffff) throw ExponentOverflow("exponent " + std::to_string(s) + " exceeds 16 bits");
        e[i] = static_cast<uint16_t>(s);
    }
    return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& b) const {
    if (e_.size() != b.e_.size()) throw InternalInvariantViolation("monomial arity mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > b.e_[i]) return false;
    return true;
}

Monomial Monomial::operator/(const Monomial& b) const {
    if (!b.divides(*this)) throw NotDivisible("monomial quotient does not exist");
    std::vector<uint16_t> e(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) e[i] = static_cast<uint16_t>(e_[i] - b.e_[i]);
    return Monomial(std::move(e));
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    if (a.e_.size() != b.e_.size()) throw InternalInvariantViolation("monomial arity mismatch");
    std::vector<uint16_t> e(a.e_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a.e_[i], b.e_[i]);
    return Monomial(std::move(e));
}

bool Monomial::coprime_with(const Monomial& b) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] && b.e_[i]) return false;
    return true;
}

Monomial Monomial::extended() const {
    std::vector<uint16_t> e = e_;
    e.push_back(0);
    return Monomial(std::move(e));
}

namespace {
std::vector<std::size_t> identity_perm(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
}
}  // namespace

MonomialOrder::MonomialOrder(Kind kind, std::size_t nvars)
    : kind_(kind), perm_(identity_perm(nvars)) {}

MonomialOrder::MonomialOrder(Kind kind, std::vector<std::size_t> perm)
    : kind_(kind), perm_(std::move(perm)) {
    std::vector<bool> seen(perm_.size(), false);
    for (std::size_t v : perm_) {
        if (v >= perm_.size() || seen[v])
            throw InternalInvariantViolation("invalid variable permutation");
        seen[v] = true;
    }
}

Ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    if (a.nvars() != perm_.size() || b.nvars() != perm_.size())
        throw InternalInvariantViolation("monomial arity does not match order");
    if (kind_ == Kind::lex) {
        for (std::size_t v : perm_) {
            if (a[v] != b[v]) return a[v] > b[v] ? Ordering::greater : Ordering::less;
        }
        return Ordering::equal;
    }
    uint32_t da = a.degree(), db = b.degree();
    if (da != db) return da > db ? Ordering::greater : Ordering::less;
    for (std::size_t i = perm_.size(); i-- > 0;) {
        std::size_t v = perm_[i];
        if (a[v] != b[v]) return a[v] < b[v] ? Ordering::greater : Ordering::less;
    }
    return Ordering::equal;
}

namespace {

void canonicalize(ZPoly& p) {
    std::sort(p.begin(), p.end(), [](const ZTerm& a, const ZTerm& b) {
        return a.first.exponents() > b.first.exponents();
    });
    ZPoly out;
    out.reserve(p.size());
    for (auto& t : p) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
            if (out.back().second == 0) out.pop_back();
        } else if (t.second != 0) {
            out.push_back(std::move(t));
        }
    }
    p = std::move(out);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    r.reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) r.emplace_back(ma * mb, ca * cb);
    canonicalize(r);
    return r;
}

ZPoly zadd(ZPoly a, const ZPoly& b) {
    a.insert(a.end(), b.begin(), b.end());
    canonicalize(a);
    return a;
}

ZPoly zneg(ZPoly a) {
    for (auto& t : a) t.second = -t.second;
    return a;
}

ZPoly zpow(ZPoly base, uint32_t e, std::size_t nvars) {
    ZPoly r{{Monomial(nvars), mpz_class(1)}};
    while (e) {
        if (e & 1) r = zmul(r, base);
        base = zmul(base, base);
        e >>= 1;
    }
    return r;
}

struct PolyParser {
    const std::string& s;
    int line;
    std::size_t pos = 0;
    const std::unordered_map<std::string, std::size_t>& vars;
    std::size_t nvars;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg, line, static_cast<int>(at) + 1);
    }

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    ZPoly parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-' || peek() == '+') neg = s[pos++] == '-';
        ZPoly acc = parse_term();
        if (neg) acc = zneg(std::move(acc));
        while (!eof()) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos;
            ZPoly t = parse_term();
            acc = zadd(std::move(acc), c == '-' ? zneg(std::move(t)) : t);
        }
        return acc;
    }

    ZPoly parse_term() {
        ZPoly acc = parse_factor();
        while (peek() == '*') {
            ++pos;
            acc = zmul(acc, parse_factor());
        }
        return acc;
    }

    ZPoly parse_factor() {
        ZPoly base = parse_atom();
        if (peek() == '^') {
            std::size_t at = pos++;
            skip_ws();
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                fail("expected integer exponent after '^'", at + 1);
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            unsigned long e = 0;
            try {
                e = std::stoul(s.substr(start, pos - start));
            } catch (const std::out_of_range&) {
                throw ExponentOverflow("exponent literal out of range");
            }
            if (e > 0xffff) throw ExponentOverflow("exponent " + std::to_string(e) + " exceeds 16 bits");
            return zpow(std::move(base), static_cast<uint32_t>(e), nvars);
        }
        return base;
    }

    ZPoly parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of polynomial", pos);
        char c = s[pos];
        if (c == '(') {
            std::size_t open = pos++;
            ZPoly inner = parse_expr();
            if (peek() != ')') fail("unbalanced parenthesis", open);
            ++pos;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            mpz_class v(s.substr(start, pos - start));
            if (v == 0) return {};
            return {{Monomial(nvars), v}};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            auto it = vars.find(name);
            if (it == vars.end()) fail("unknown variable '" + name + "'", start);
            return {{Monomial::variable(nvars, it->second), mpz_class(1)}};
        }
        fail(std::string("unexpected character '") + c + "'", pos);
    }
};

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

ZPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vars.size(); ++i) index[vars[i]] = i;
    PolyParser pp{text, 1, 0, index, vars.size()};
    ZPoly p = pp.parse_expr();
    if (!pp.eof()) pp.fail("trailing input after polynomial", pp.pos);
    return p;
}

ParsedSystem parse_system(const std::string& text) {
    std::vector<std::string> lines = split_lines(text);
    ParsedSystem sys;
    std::unordered_map<std::string, std::size_t> index;
    int lineno = 0;
    std::size_t li = 0;

    auto next_content_line = [&](const char* what) -> std::string {
        while (li < lines.size()) {
            std::string s = strip(lines[li]);
            ++li;
            ++lineno;
            if (s.empty() || s[0] == '#') continue;
            return s;
        }
        throw ParseError(std::string("missing ") + what, lineno, 1);
    };

    std::string vline = next_content_line("'vars:' line");
    if (vline.rfind("vars:", 0) != 0) throw ParseError("expected 'vars:' line", lineno, 1);
    {
        std::string rest = vline.substr(5);
        std::size_t start = 0;
        while (true) {
            std::size_t comma = rest.find(',', start);
            std::string name = strip(rest.substr(start, comma == std::string::npos
                                                             ? std::string::npos
                                                             : comma - start));
            if (!is_identifier(name))
                throw ParseError("bad variable name '" + name + "'", lineno, 1);
            if (index.count(name))
                throw ParseError("duplicate variable '" + name + "'", lineno, 1);
            index[name] = sys.vars.size();
            sys.vars.push_back(name);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }

    std::string fline = next_content_line("'field:' line");
    if (fline.rfind("field:", 0) != 0) throw ParseError("expected 'field:' line", lineno, 1);
    {
        std::string rest = strip(fline.substr(6));
        if (rest == "QQ") {
            sys.field.prime = 0;
        } else if (rest.rfind("FF", 0) == 0) {
            std::string ps = strip(rest.substr(2));
            if (ps.empty() || ps.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("expected prime after 'FF'", lineno, 1);
            try {
                sys.field.prime = std::stoull(ps);
            } catch (const std::out_of_range&) {
                throw ParseError("prime out of range", lineno, 1);
            }
            if (sys.field.prime == 0) throw ParseError("prime must be positive", lineno, 1);
        } else {
            throw ParseError("field must be 'QQ' or 'FF <p>'", lineno, 1);
        }
    }

    while (li < lines.size()) {
        std::string raw = lines[li];
        ++li;
        ++lineno;
        std::string s = strip(raw);
        if (s.empty() || s[0] == '#') continue;
        PolyParser pp{raw, lineno, 0, index, sys.vars.size()};
        ZPoly p = pp.parse_expr();
        if (!pp.eof()) pp.fail("trailing input after polynomial", pp.pos);
        if (p.empty())
            throw ZeroPolynomial("polynomial on line " + std::to_string(lineno) +
                                 " cancels to zero");
        sys.polys.push_back(std::move(p));
    }
    if (sys.polys.empty()) throw ParseError("system lists no polynomials", lineno, 1);
    return sys;
}

}  // namespace rur
