#include "ncsaito/rational.hpp"

#include <cctype>

#include "ncsaito/errors.hpp"

namespace ncsaito {

std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') ++pos;
    if (pos == s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        throw Error(ErrorCode::ParseError, "malformed rational literal '" + s + "'");
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == s.size()) return Rat(Int(s));
    if (s[pos] != '/')
        throw Error(ErrorCode::ParseError, "malformed rational literal '" + s + "'");
    std::string num = s.substr(0, pos);
    std::string den = s.substr(pos + 1);
    if (den.empty() || den[0] == '+' || den[0] == '-')
        throw Error(ErrorCode::ParseError, "malformed rational literal '" + s + "'");
    for (char c : den)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw Error(ErrorCode::ParseError, "malformed rational literal '" + s + "'");
    Int d(den);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    return Rat(Int(num), d);
}

}  // namespace ncsaito
