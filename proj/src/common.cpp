#include "petal/common.hpp"

namespace petal {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::io: return "io-error";
        case Errc::parse: return "parse-error";
        case Errc::config: return "config-error";
        case Errc::truncation_underflow: return "truncation-underflow";
        case Errc::non_unit_leading_term: return "non-unit-leading-term";
        case Errc::identity_germ: return "identity-germ";
        case Errc::every_direction_characteristic: return "every-direction-characteristic";
        case Errc::not_unique_direction: return "not-unique-direction";
        case Errc::not_applicable: return "not-applicable";
        case Errc::hypothesis_failed: return "hypothesis-failed";
        case Errc::chart_singular: return "chart-singular";
        case Errc::out_of_region: return "out-of-region";
        case Errc::cannot_certify_region: return "cannot-certify-region";
        case Errc::quadrature_failure: return "quadrature-failure";
        case Errc::invariance_violation: return "invariance-violation";
        case Errc::inverse_recovery_failure: return "inverse-recovery-failure";
        case Errc::fit_diverged: return "fit-diverged";
    }
    return "error";
}

} // namespace petal
