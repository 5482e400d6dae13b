#include "trustlam/rat.hpp"

#include <cctype>

namespace trustlam {

std::optional<Rat> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool neg = false;
    if (s[pos] == '-') {
        neg = true;
        ++pos;
    }
    auto read_nat = [&](BigInt& out) -> bool {
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
        out = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            out = out * 10 + (s[pos] - '0');
            ++pos;
        }
        return true;
    };
    BigInt num, den = 1;
    if (!read_nat(num)) return std::nullopt;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        if (!read_nat(den) || den == 0) return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;
    Rat r(num, den);
    return neg ? Rat(-r) : r;
}

std::string rat_to_decimal(const Rat& r, int digits) {
    BigInt num = rat_num(r), den = rat_den(r);
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt whole = num / den, rem = num % den;
    std::string out = (neg ? "-" : "") + whole.str();
    if (digits > 0) {
        out += '.';
        for (int i = 0; i < digits; ++i) {
            rem *= 10;
            out += static_cast<char>('0' + static_cast<int>(rem / den));
            rem %= den;
        }
    }
    return out;
}

}  // namespace trustlam
