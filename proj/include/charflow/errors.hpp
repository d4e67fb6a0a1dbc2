#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace charflow {

// Error category. Config/usage errors map to CLI exit code 1, mathematical
// domain errors to exit code 2.
enum class errc {
    // parsing / configuration
    syntax_error,
    unknown_function,
    unbound_variable,
    bad_parameter,
    not_found,
    tag_mismatch,
    io_error,
    // mathematical domain
    domain_fault,
    no_bracket,
    no_convergence,
    out_of_range,
    not_monotone,
    degeneration_on_support,
    parallel_directions,
    outside_domain,
    ambiguous_root,
    singular_point,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::syntax_error: return "syntax_error";
        case errc::unknown_function: return "unknown_function";
        case errc::unbound_variable: return "unbound_variable";
        case errc::bad_parameter: return "bad_parameter";
        case errc::not_found: return "not_found";
        case errc::tag_mismatch: return "tag_mismatch";
        case errc::io_error: return "io_error";
        case errc::domain_fault: return "domain_fault";
        case errc::no_bracket: return "no_bracket";
        case errc::no_convergence: return "no_convergence";
        case errc::out_of_range: return "out_of_range";
        case errc::not_monotone: return "not_monotone";
        case errc::degeneration_on_support: return "degeneration_on_support";
        case errc::parallel_directions: return "parallel_directions";
        case errc::outside_domain: return "outside_domain";
        case errc::ambiguous_root: return "ambiguous_root";
        case errc::singular_point: return "singular_point";
    }
    return "unknown";
}

inline bool is_math_error(errc c) {
    switch (c) {
        case errc::domain_fault:
        case errc::no_bracket:
        case errc::no_convergence:
        case errc::out_of_range:
        case errc::not_monotone:
        case errc::degeneration_on_support:
        case errc::parallel_directions:
        case errc::outside_domain:
        case errc::ambiguous_root:
        case errc::singular_point:
            return true;
        default:
            return false;
    }
}

class error : public std::runtime_error {
public:
    error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    errc code() const { return code_; }

    // Byte offset into the source text, for parser diagnostics.
    std::optional<std::size_t> offset;
    // Best iterate/estimate for non-convergence errors.
    std::optional<double> best_estimate;

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
    throw error(code, message);
}

}  // namespace charflow
