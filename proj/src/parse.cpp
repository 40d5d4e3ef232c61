#include "gpa/parse.hpp"

#include <cctype>

namespace gpa {
namespace {

class Parser {
public:
    Parser(const std::string& text, ContextPtr ctx) : text_(text), ctx_(std::move(ctx)) {}

    GradedPoly run() {
        skip_ws();
        GradedPoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    GradedPoly expr() {
        GradedPoly acc = term();
        for (;;) {
            skip_ws();
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    GradedPoly term() {
        GradedPoly acc = unary();
        for (;;) {
            skip_ws();
            if (accept('*')) acc = acc * unary();
            else return acc;
        }
    }

    GradedPoly unary() {
        skip_ws();
        if (accept('-')) return -unary();
        return power();
    }

    GradedPoly power() {
        skip_ws();
        size_t mark = pos_;
        GradedPoly base = atom();
        skip_ws();
        if (!accept('^')) return base;
        // exponent base must be a single even generator
        if (base.term_count() != 1) fail("'^' applies only to even generators", mark);
        const auto& [m, c] = *base.terms().begin();
        if (c != 1 || m.factors.size() != 1 || m.factors[0].second != 1)
            fail("'^' applies only to even generators", mark);
        if (ctx_->gen(m.factors[0].first).odd())
            fail("'^' applies only to even generators", mark);
        skip_ws();
        int e = integer();
        return base.pow(e);
    }

    GradedPoly atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            GradedPoly p = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
        fail(std::string("unexpected character '") + c + "'");
        return GradedPoly(ctx_); // unreachable
    }

    GradedPoly rational() {
        Rat num(digits());
        skip_ws();
        if (accept('/')) {
            skip_ws();
            size_t mark = pos_;
            Rat den(digits());
            if (den == 0) fail("division by zero", mark);
            num /= den;
        }
        return GradedPoly(ctx_, num);
    }

    GradedPoly name() {
        size_t mark = pos_;
        std::string id;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            id += text_[pos_++];
        int gi = ctx_->find(id);
        if (gi < 0) fail("unknown generator '" + id + "'", mark);
        return GradedPoly::generator(ctx_, gi);
    }

    std::string digits() {
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected digits");
        std::string d;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            d += text_[pos_++];
        return d;
    }

    int integer() {
        std::string d = digits();
        if (d.size() > 6) fail("exponent too large");
        return std::stoi(d);
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }

    [[noreturn]] void fail(const std::string& msg, size_t at) {
        int line = 1, col = 1;
        for (size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') { ++line; col = 1; }
            else ++col;
        }
        throw ParseError(msg, line, col);
    }

    const std::string& text_;
    ContextPtr ctx_;
    size_t pos_ = 0;
};

} // namespace

GradedPoly parse_expr(const std::string& text, const ContextPtr& ctx) {
    return Parser(text, ctx).run();
}

} // namespace gpa
