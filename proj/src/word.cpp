#include "semroot/word.hpp"

#include <algorithm>

#include "semroot/error.hpp"

namespace semroot {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::io_failure: return "io-failure";
    case Errc::invalid_utf8: return "invalid-utf8";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::parse_failure: return "parse-failure";
    case Errc::empty_file: return "empty-file";
    case Errc::zero_vector: return "zero-vector";
    case Errc::unknown_word: return "unknown-word";
    case Errc::pair_not_in_support: return "pair-not-in-support";
    case Errc::coverage_mismatch: return "coverage-mismatch";
    case Errc::surface_collision: return "surface-collision";
    case Errc::alphabet_too_small: return "alphabet-too-small";
    case Errc::invalid_config: return "invalid-config";
    case Errc::format_error: return "format-error";
    case Errc::vocab_hash_mismatch: return "vocab-hash-mismatch";
    }
    return "error";
}

std::u32string utf8_decode(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        auto lead = static_cast<unsigned char>(bytes[i]);
        char32_t cp = 0;
        std::size_t extra = 0;
        if (lead < 0x80) {
            cp = lead;
        } else if ((lead & 0xE0) == 0xC0) {
            cp = lead & 0x1F;
            extra = 1;
        } else if ((lead & 0xF0) == 0xE0) {
            cp = lead & 0x0F;
            extra = 2;
        } else if ((lead & 0xF8) == 0xF0) {
            cp = lead & 0x07;
            extra = 3;
        } else {
            throw Error(Errc::invalid_utf8, "bad lead byte at offset " + std::to_string(i));
        }
        if (i + extra >= bytes.size()) {
            throw Error(Errc::invalid_utf8, "truncated sequence at offset " + std::to_string(i));
        }
        for (std::size_t k = 1; k <= extra; ++k) {
            auto cont = static_cast<unsigned char>(bytes[i + k]);
            if ((cont & 0xC0) != 0x80) {
                throw Error(Errc::invalid_utf8, "bad continuation byte at offset " + std::to_string(i + k));
            }
            cp = (cp << 6) | (cont & 0x3F);
        }
        static constexpr char32_t min_for_length[] = {0, 0x80, 0x800, 0x10000};
        if (cp < min_for_length[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            throw Error(Errc::invalid_utf8, "invalid code point at offset " + std::to_string(i));
        }
        out.push_back(cp);
        i += extra + 1;
    }
    return out;
}

std::string utf8_encode(std::u32string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : text) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

namespace {

bool is_space_or_control(char32_t cp) {
    if (cp < 0x20 || (cp >= 0x7F && cp < 0xA0)) return true;
    switch (cp) {
    case U' ': case 0x1680: case 0x2028: case 0x2029: case 0x202F: case 0x205F:
    case 0x3000: case 0xFEFF:
        return true;
    default:
        return cp >= 0x2000 && cp <= 0x200A;
    }
}

}  // namespace

bool is_valid_word(std::u32string_view word) {
    return !word.empty() && std::none_of(word.begin(), word.end(), is_space_or_control);
}

bool support_contains(const SupportSet& support, WordPair pair) {
    return std::binary_search(support.begin(), support.end(), pair);
}

std::uint64_t vocabulary_hash(const std::vector<std::u32string>& words) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](unsigned char byte) {
        h ^= byte;
        h *= 0x100000001b3ULL;
    };
    for (const auto& w : words) {
        for (char c : utf8_encode(w)) mix(static_cast<unsigned char>(c));
        mix('\n');
    }
    return h;
}

}  // namespace semroot
