#include "poisred/rational.hpp"

#include <cctype>

namespace poisred {

std::string str(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::optional<Rational> parseRational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    if (text[i] == '-' || text[i] == '+') ++i;
    if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size()) {
        if (text[i] != '/') return std::nullopt;
        ++i;
        if (i == text.size()) return std::nullopt;
        std::size_t denStart = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i != text.size() || denStart == i) return std::nullopt;
    }
    try {
        Rational r(text);
        if (r.get_den() == 0) return std::nullopt;
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

} // namespace poisred
