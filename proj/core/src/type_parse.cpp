#include <cctype>

#include "itype/term.hpp"
#include "itype/types.hpp"

namespace itype {

namespace {

// Grammar, shared by both type languages:
//   type  ::= ident | '(' type ')' | group arrow type
//   group ::= open [type {',' type}] close
// with <...> for lists and [...] for multisets; arrow is "->" or "→".
class TypeParser {
public:
    TypeParser(std::string_view text, NameInterner& names, bool multiset)
        : text_(text), names_(names), open_(multiset ? '[' : '<'), close_(multiset ? ']' : '>') {}

    template <class Build>
    auto parse_whole(Build&& build) {
        auto result = build(*this);
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return result;
    }

    PreType pretype() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            PreType t = pretype();
            expect(')');
            return t;
        }
        if (peek() == open_) {
            PreList dom = prelist();
            expect_arrow();
            return PreType::arrow(std::move(dom), pretype());
        }
        return PreType::var(names_.intern(ident()));
    }

    PreList prelist() {
        PreList out;
        group([&] { out.push_back(pretype()); });
        return out;
    }

    IType itype() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            IType t = itype();
            expect(')');
            return t;
        }
        if (peek() == open_) {
            IMultiset dom = imultiset();
            expect_arrow();
            return IType::arrow(std::move(dom), itype());
        }
        return IType::var(names_.intern(ident()));
    }

    IMultiset imultiset() {
        std::vector<IType> out;
        group([&] { out.push_back(itype()); });
        return IMultiset(std::move(out));
    }

private:
    template <class Elem>
    void group(Elem&& elem) {
        expect(open_);
        skip_ws();
        if (peek() == close_) {
            ++pos_;
            return;
        }
        for (;;) {
            elem();
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect(close_);
            return;
        }
    }

    void expect_arrow() {
        skip_ws();
        if (text_.substr(pos_, 2) == "->") {
            pos_ += 2;
        } else if (text_.substr(pos_, 3) == "\xE2\x86\x92") {
            pos_ += 3;
        } else {
            fail("expected an arrow");
        }
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\'')) {
            ++pos_;
        }
        if (start == pos_) fail("expected a type variable");
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    std::string_view text_;
    NameInterner& names_;
    char open_;
    char close_;
    std::size_t pos_ = 0;
};

}  // namespace

PreType parse_pretype(std::string_view text, NameInterner& names) {
    TypeParser p(text, names, false);
    return p.parse_whole([](TypeParser& q) { return q.pretype(); });
}

PreList parse_prelist(std::string_view text, NameInterner& names) {
    TypeParser p(text, names, false);
    return p.parse_whole([](TypeParser& q) { return q.prelist(); });
}

IType parse_itype(std::string_view text, NameInterner& names) {
    TypeParser p(text, names, true);
    return p.parse_whole([](TypeParser& q) { return q.itype(); });
}

IMultiset parse_imultiset(std::string_view text, NameInterner& names) {
    TypeParser p(text, names, true);
    return p.parse_whole([](TypeParser& q) { return q.imultiset(); });
}

}  // namespace itype
