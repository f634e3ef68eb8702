#include "ncsaito/parser.hpp"

#include <cctype>
#include <map>

#include "ncsaito/errors.hpp"
#include "ncsaito/rational.hpp"

namespace ncsaito {

namespace {

class Parser {
public:
    Parser(const std::string& src, const std::vector<std::string>& vars, int trunc)
        : src_(src), trunc_(trunc), result_(static_cast<int>(vars.size()), trunc) {
        for (std::size_t i = 0; i < vars.size(); ++i) var_index_[vars[i]] = static_cast<int>(i);
    }

    Series parse() {
        skip_ws();
        bool negate = accept('-');
        if (!negate) accept('+');
        parse_term(negate);
        while (true) {
            skip_ws();
            if (accept('+')) parse_term(false);
            else if (accept('-')) parse_term(true);
            else break;
        }
        skip_ws();
        if (pos_ != src_.size()) fail("expected '+', '-' or end of input");
        return result_;
    }

private:
    [[noreturn]] void fail(const std::string& expected) const {
        throw Error(ErrorCode::ParseError,
                    "at byte " + std::to_string(pos_) + ": " + expected);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    bool peek_digit() {
        skip_ws();
        return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
    }

    bool peek_alpha() {
        skip_ws();
        return pos_ < src_.size() &&
               (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_');
    }

    std::string lex_uint() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an unsigned integer");
        return src_.substr(start, pos_ - start);
    }

    Rat lex_rational() {
        std::string num = lex_uint();
        skip_ws();
        if (accept('/')) {
            std::string den = lex_uint();
            Int d(den);
            if (d == 0) fail("zero denominator");
            return Rat{Int(num), d};
        }
        return Rat(Int(num));
    }

    // factor := var ('^' uint)?
    void parse_factor(Word& word) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("expected a variable name");
        std::string name = src_.substr(start, pos_ - start);
        auto it = var_index_.find(name);
        if (it == var_index_.end())
            throw Error(ErrorCode::UnknownVariable, "variable '" + name + "' not declared");
        int power = 1;
        skip_ws();
        if (accept('^')) power = std::stoi(lex_uint());
        if (power < 1) fail("power must be >= 1");
        for (int k = 0; k < power; ++k) word.push_back(it->second);
    }

    // term := [rational ('*')?] factor ('*' factor)*
    void parse_term(bool negate) {
        Rat coeff = 1;
        Word word;
        bool have_factor = false;
        if (peek_digit()) {
            coeff = lex_rational();
            skip_ws();
            if (!accept('*')) {
                // A bare rational term (constant) is allowed.
                if (!peek_alpha()) {
                    result_.add_term({}, negate ? -coeff : coeff);
                    return;
                }
                fail("expected '*' between coefficient and variable");
            }
        }
        parse_factor(word);
        have_factor = true;
        while (true) {
            skip_ws();
            std::size_t mark = pos_;
            if (!accept('*')) break;
            if (peek_digit()) { pos_ = mark; break; }  // next term's coefficient
            parse_factor(word);
        }
        (void)have_factor;
        if (static_cast<int>(word.size()) > trunc_) return;  // truncated away
        result_.add_term(word, negate ? -coeff : coeff);
    }

    const std::string& src_;
    int trunc_;
    std::size_t pos_ = 0;
    Series result_;
    std::map<std::string, int> var_index_;
};

}  // namespace

Series parse_series(const std::string& src, const std::vector<std::string>& vars, int trunc) {
    if (vars.empty())
        throw Error(ErrorCode::InvalidArgument, "at least one variable required");
    return Parser(src, vars, trunc).parse();
}

std::string word_to_string(const Word& w, const std::vector<std::string>& vars) {
    if (w.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t run = 1;
        while (i + run < w.size() && w[i + run] == w[i]) ++run;
        if (!out.empty()) out += "*";
        out += vars[static_cast<std::size_t>(w[i])];
        if (run > 1) out += "^" + std::to_string(run);
        i += run;
    }
    return out;
}

std::string series_to_string(const Series& f, const std::vector<std::string>& vars) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [w, c] : f.terms()) {
        Rat a = c;
        if (out.empty()) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        bool unit_coeff = (a == 1) && !w.empty();
        if (!unit_coeff) out += rat_to_string(a);
        if (!w.empty()) {
            if (!unit_coeff) out += "*";
            out += word_to_string(w, vars);
        }
    }
    return out;
}

}  // namespace ncsaito
