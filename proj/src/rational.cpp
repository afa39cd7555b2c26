#include "multibin/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace multibin {

namespace {

std::int64_t parse_int(const std::string& text, const std::string& original) {
    if (text.empty()) throw SchemaError("bad rational literal: '" + original + "'");
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (i == 0 && (c == '-' || c == '+') && text.size() > 1) continue;
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw SchemaError("bad rational literal: '" + original + "'");
        }
    }
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (errno != 0 || end != text.c_str() + text.size()) {
        throw SchemaError("bad rational literal: '" + original + "'");
    }
    return v;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const std::int64_t num = parse_int(text.substr(0, slash), text);
        const std::int64_t den = parse_int(text.substr(slash + 1), text);
        if (den == 0) throw SchemaError("zero denominator in '" + text + "'");
        return Rational(num, den);
    }
    if (const auto dot = text.find('.'); dot != std::string::npos) {
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 18) {
            throw SchemaError("bad decimal literal: '" + text + "'");
        }
        const bool negative = !whole.empty() && whole[0] == '-';
        const std::int64_t whole_v = whole.empty() || whole == "-" || whole == "+"
                                         ? 0
                                         : parse_int(whole, text);
        const std::int64_t frac_v = parse_int(frac, text);
        if (frac_v < 0) throw SchemaError("bad decimal literal: '" + text + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            if (scale > INT64_MAX / 10) throw OverflowError("decimal literal too long: '" + text + "'");
            scale *= 10;
        }
        const Rational base(whole_v < 0 ? -whole_v : whole_v);
        const Rational r = base + Rational(frac_v, scale);
        return negative ? Rational(0) - r : r;
    }
    return Rational(parse_int(text, text));
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace multibin
