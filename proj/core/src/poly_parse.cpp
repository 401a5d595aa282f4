#include "montes/poly_parse.hpp"

#include <cctype>

#include "montes/error.hpp"

namespace montes {

namespace {

class Parser {
public:
    Parser(const std::string& s, const std::map<std::string, IntPoly>& b) : s_(s), bind_(b) {}

    IntPoly parse_all() {
        skip();
        IntPoly r = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return r;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    IntPoly expr() {
        skip();
        IntPoly r;
        if (eat('-')) {
            r = -term();
        } else {
            eat('+');
            r = term();
        }
        while (true) {
            if (eat('+'))
                r += term();
            else if (eat('-'))
                r -= term();
            else
                break;
        }
        return r;
    }

    IntPoly term() {
        IntPoly r = power();
        while (eat('*')) r = r * power();
        return r;
    }

    IntPoly power() {
        IntPoly base = atom();
        if (!eat('^')) return base;
        skip();
        size_t at = pos_;
        mpz_class e = exponent();
        if (!e.fits_uint_p() || e > 1000000) throw ParseError("exponent too large", at);
        return base.pow(static_cast<unsigned>(e.get_ui()));
    }

    // Right-associative: 2^3^2 = 2^9.
    mpz_class exponent() {
        mpz_class b = number();
        if (!eat('^')) return b;
        skip();
        size_t at = pos_;
        mpz_class e = exponent();
        if (!e.fits_uint_p() || (b > 1 && e > 64)) throw ParseError("exponent too large", at);
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e.get_ui());
        return r;
    }

    mpz_class number() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected a number", start);
        return mpz_class(s_.substr(start, pos_ - start));
    }

    IntPoly atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            IntPoly r = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return r;
        }
        if (c == '-') {
            ++pos_;
            return -power();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return IntPoly::constant(number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == "x") return IntPoly::x();
            auto it = bind_.find(id);
            if (it == bind_.end()) throw ParseError("unknown identifier '" + id + "'", start);
            return it->second;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    const std::string& s_;
    const std::map<std::string, IntPoly>& bind_;
    size_t pos_ = 0;
};

IntPoly parse_list(const std::string& s) {
    size_t pos = s.find('[') + 1;
    std::vector<mpz_class> coeffs;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    skip();
    if (pos < s.size() && s[pos] == ']') {
        ++pos;
    } else {
        while (true) {
            skip();
            size_t start = pos;
            if (pos < s.size() && s[pos] == '"') ++pos;
            size_t num_start = pos;
            if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == num_start || !std::isdigit(static_cast<unsigned char>(s[pos - 1])))
                throw ParseError("expected an integer coefficient", start);
            coeffs.emplace_back(s.substr(num_start, pos - num_start));
            if (s[start] == '"') {
                if (pos >= s.size() || s[pos] != '"') throw ParseError("unterminated string", pos);
                ++pos;
            }
            skip();
            if (pos < s.size() && s[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < s.size() && s[pos] == ']') {
                ++pos;
                break;
            }
            throw ParseError("expected ',' or ']'", pos);
        }
    }
    skip();
    if (pos != s.size()) throw ParseError("trailing characters after list", pos);
    return IntPoly(std::move(coeffs));
}

}  // namespace

IntPoly parse_poly(const std::string& text, const std::map<std::string, IntPoly>& bindings) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty polynomial", 0);
    if (text[first] == '[') return parse_list(text);
    return Parser(text, bindings).parse_all();
}

mpz_class parse_integer(const std::string& text) {
    size_t pos = 0;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) throw ParseError("expected an integer", digits);
    size_t end = pos;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw ParseError("trailing characters after integer", pos);
    std::string s = text.substr(start, end - start);
    if (s[0] == '+') s = s.substr(1);
    return mpz_class(s);
}

}  // namespace montes
