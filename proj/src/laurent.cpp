#include "iks/laurent.hpp"

#include "iks/error.hpp"
#include "iks/numeric.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

namespace iks {

std::uint64_t LaurentPoly::field_order() const { return ipow(p, a); }

LaurentPoly canonicalize(const FieldTable& F, LaurentPoly f) {
    if (f.p != F.characteristic() || f.a != F.degree()) {
        throw DomainError("polynomial over F_" + std::to_string(f.p) + "^" + std::to_string(f.a) +
                          " used with F_" + std::to_string(F.characteristic()) + "^" +
                          std::to_string(F.degree()));
    }
    std::map<std::vector<int>, Elem> merged;
    for (const auto& t : f.terms) {
        if (t.exponent.size() != f.n_vars) {
            throw DomainError("term exponent has " + std::to_string(t.exponent.size()) + " entries, expected " +
                              std::to_string(f.n_vars));
        }
        if (t.coeff >= F.order()) {
            throw DomainError("coefficient " + std::to_string(t.coeff) + " is not an element of F_" +
                              std::to_string(F.order()));
        }
        auto [it, inserted] = merged.try_emplace(t.exponent, t.coeff);
        if (!inserted) it->second = F.add(it->second, t.coeff);
    }
    f.terms.clear();
    for (auto& [e, c] : merged) {
        if (c != 0) f.terms.push_back({c, e});
    }
    return f;
}

LaurentPoly parse_laurent_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed polynomial JSON: ") + e.what());
    }
    try {
        LaurentPoly f;
        f.p = j.at("p").get<std::uint32_t>();
        f.a = j.value("a", 1u);
        f.n_vars = j.at("vars").get<unsigned>();
        for (const auto& t : j.at("terms")) {
            const auto c = t.at("c").get<std::int64_t>();
            if (c < 0) throw ParseError("coefficient encodings must be non-negative");
            f.terms.push_back({static_cast<Elem>(c), t.at("e").get<std::vector<int>>()});
        }
        if (!is_prime(f.p)) throw ParseError("field characteristic " + std::to_string(f.p) + " is not prime");
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("polynomial JSON does not match the schema: ") + e.what());
    }
}

std::string to_json(const LaurentPoly& f) {
    nlohmann::json j;
    j["p"] = f.p;
    j["a"] = f.a;
    j["vars"] = f.n_vars;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : f.terms) j["terms"].push_back({{"c", t.coeff}, {"e", t.exponent}});
    return j.dump();
}

namespace {

class TextParser {
public:
    explicit TextParser(std::string_view s) : s_(s) {}

    struct RawTerm {
        std::int64_t coeff;
        std::map<unsigned, int> powers;
    };

    std::vector<RawTerm> parse() {
        std::vector<RawTerm> out;
        skip_ws();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = (get() == '-') ? -1 : 1;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            RawTerm t = term();
            t.coeff *= sign;
            out.push_back(std::move(t));
            first = false;
            skip_ws();
            if (at_end()) break;
        }
        return out;
    }

private:
    RawTerm term() {
        RawTerm t{1, {}};
        bool have_factor = false;
        while (true) {
            skip_ws();
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                t.coeff *= number();
            } else if (peek() == 'x') {
                get();
                const auto idx = number();
                if (idx < 1) fail("variable index must be at least 1");
                int e = 1;
                skip_ws();
                if (peek() == '^') {
                    get();
                    skip_ws();
                    int sign = 1;
                    if (peek() == '-' || peek() == '+') sign = (get() == '-') ? -1 : 1;
                    e = sign * static_cast<int>(number());
                }
                t.powers[static_cast<unsigned>(idx)] += e;
            } else {
                fail(at_end() ? "unexpected end of input" : std::string("unexpected character '") + peek() + "'");
            }
            have_factor = true;
            skip_ws();
            if (peek() == '*') {
                get();
                continue;
            }
            break;
        }
        if (!have_factor) fail("empty term");
        return t;
    }

    std::int64_t number() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) get();
        if (start == pos_) fail("expected a number");
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (ec != std::errc{}) fail("number out of range");
        return v;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) get();
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    char get() {
        const char c = s_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

LaurentPoly parse_laurent_text(std::string_view text, const FieldTable& F, unsigned n_vars) {
    TextParser parser(text);
    const auto raw = parser.parse();
    unsigned max_var = 0;
    for (const auto& t : raw) {
        for (const auto& [v, e] : t.powers) max_var = std::max(max_var, v);
    }
    if (n_vars == 0) n_vars = max_var;
    if (max_var > n_vars) {
        throw ParseError("variable x" + std::to_string(max_var) + " exceeds the declared " + std::to_string(n_vars) +
                         " variables");
    }
    LaurentPoly f;
    f.p = F.characteristic();
    f.a = F.degree();
    f.n_vars = n_vars;
    for (const auto& t : raw) {
        std::vector<int> e(n_vars, 0);
        for (const auto& [v, k] : t.powers) e[v - 1] += k;
        f.terms.push_back({F.from_int(t.coeff), std::move(e)});
    }
    f = canonicalize(F, std::move(f));
    if (f.terms.empty()) throw ParseError("polynomial is zero after reducing coefficients modulo " +
                                          std::to_string(F.characteristic()));
    return f;
}

LaurentPoly parse_laurent(std::string_view text, const FieldTable& F, unsigned n_vars) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        LaurentPoly f;
        try {
            f = canonicalize(F, parse_laurent_json(text));
        } catch (const DomainError& e) {
            throw ParseError(e.what());
        }
        if (f.terms.empty()) throw ParseError("polynomial has no nonzero terms");
        return f;
    }
    return parse_laurent_text(text, F, n_vars);
}

std::string to_text(const LaurentPoly& f) {
    std::string out;
    for (const auto& t : f.terms) {
        if (!out.empty()) out += " + ";
        out += std::to_string(t.coeff);
        for (unsigned i = 0; i < f.n_vars; ++i) {
            if (t.exponent[i] == 0) continue;
            out += "*x" + std::to_string(i + 1);
            if (t.exponent[i] != 1) out += "^" + std::to_string(t.exponent[i]);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace iks
