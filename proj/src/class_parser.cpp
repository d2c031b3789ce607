#include <cctype>

#include "cubicfano/motivic_ring.hpp"

namespace cubicfano::motivic {

namespace {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    VirtualClass parse() {
        VirtualClass r = expression();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return r;
    }

  private:
    VirtualClass expression() {
        skip_space();
        bool negate = false;
        if (accept('-')) {
            negate = true;
        } else {
            accept('+');
        }
        VirtualClass r = term();
        if (negate) {
            r = -r;
        }
        for (;;) {
            if (accept('+')) {
                r += term();
            } else if (accept('-')) {
                r -= term();
            } else {
                return r;
            }
        }
    }

    VirtualClass term() {
        VirtualClass r = factor();
        while (accept('*')) {
            r *= factor();
        }
        return r;
    }

    VirtualClass factor() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return VirtualClass(Integer(digits()));
        }
        if (c == '(') {
            ++pos_;
            VirtualClass r = expression();
            expect(')');
            return r;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::string id = identifier();
            if (id == "L") {
                return VirtualClass::lefschetz(exponent(true));
            }
            if (id.size() > 3 && id.rfind("Sym", 0) == 0 &&
                id.find_first_not_of("0123456789", 3) == std::string::npos) {
                const int n = std::stoi(id.substr(3));
                expect('(');
                VirtualClass inner = expression();
                expect(')');
                return sym_power(inner, n);
            }
            VirtualClass base = VirtualClass::symbol(id);
            const int k = exponent(false);
            VirtualClass r = 1;
            for (int i = 0; i < k; ++i) {
                r *= base;
            }
            return r;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    // Optional ^k suffix; default 1.
    int exponent(bool allow_negative) {
        if (!accept('^')) {
            return 1;
        }
        skip_space();
        bool negative = false;
        if (allow_negative && pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        const std::string d = digits();
        if (d.empty()) {
            fail("expected exponent");
        }
        const int k = std::stoi(d);
        return negative ? -k : k;
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    [[noreturn]] void fail(const std::string &what) const {
        throw ParseError("parse_class: " + what + " at offset " + std::to_string(pos_) + " in \"" +
                         std::string(text_) + "\"");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

VirtualClass parse_class(std::string_view text) { return Parser(text).parse(); }

} // namespace cubicfano::motivic
