#include "freshtab/utf8.hpp"

namespace freshtab {
namespace {

struct Decoded {
    char32_t cp;
    std::size_t len;
};

Decoded decode_at(std::string_view s, std::size_t i) {
    const auto byte = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (byte < 0x80) {
        return {byte, 1};
    } else if ((byte & 0xe0) == 0xc0) {
        len = 2;
        cp = byte & 0x1f;
    } else if ((byte & 0xf0) == 0xe0) {
        len = 3;
        cp = byte & 0x0f;
    } else if ((byte & 0xf8) == 0xf0) {
        len = 4;
        cp = byte & 0x07;
    } else {
        return {byte, 1};  // stray continuation byte
    }
    if (i + len > s.size()) return {byte, 1};
    for (std::size_t k = 1; k < len; ++k) {
        const auto cont = static_cast<unsigned char>(s[i + k]);
        if ((cont & 0xc0) != 0x80) return {byte, 1};
        cp = (cp << 6) | (cont & 0x3f);
    }
    return {cp, len};
}

void encode_to(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

char32_t lower_cp(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0xc0 && cp <= 0xde && cp != 0xd7) return cp + 0x20;   // Latin-1 capitals
    if (cp >= 0x410 && cp <= 0x42f) return cp + 0x20;               // Cyrillic А..Я
    if (cp == 0x401) return 0x451;                                  // Ё -> ё
    return cp;
}

}  // namespace

std::size_t utf8_length(std::string_view s) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < s.size(); i += decode_at(s, i).len) ++count;
    return count;
}

std::string utf8_truncate(std::string_view s, std::size_t max_points) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < s.size() && count < max_points) {
        i += decode_at(s, i).len;
        ++count;
    }
    return std::string(s.substr(0, i));
}

std::string fold_case(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        const Decoded d = decode_at(s, i);
        encode_to(lower_cp(d.cp), out);
        i += d.len;
    }
    return out;
}

}  // namespace freshtab
