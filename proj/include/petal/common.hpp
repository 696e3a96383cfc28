#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace petal {

using cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Error tags, stable across the CLI surface (they select the exit code).
enum class Errc {
    io,
    parse,
    config,
    truncation_underflow,
    non_unit_leading_term,
    identity_germ,
    every_direction_characteristic,
    not_unique_direction,
    not_applicable,
    hypothesis_failed,
    chart_singular,
    out_of_region,
    cannot_certify_region,
    quadrature_failure,
    invariance_violation,
    inverse_recovery_failure,
    fit_diverged,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace petal
