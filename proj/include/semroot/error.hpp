#pragma once

#include <stdexcept>
#include <string>

namespace semroot {

enum class Errc {
    io_failure,
    invalid_utf8,
    dimension_mismatch,
    parse_failure,
    empty_file,
    zero_vector,
    unknown_word,
    pair_not_in_support,
    coverage_mismatch,
    surface_collision,
    alphabet_too_small,
    invalid_config,
    format_error,
    vocab_hash_mismatch,
};

const char* errc_name(Errc code);

/// Every data-level failure in the library surfaces as this exception.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace semroot
