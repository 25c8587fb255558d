#pragma once

#include <string>
#include <vector>

namespace sqz {

// Parameter records hold raw doubles so that a record with bad values can be
// built and inspected; validate() reports every broken invariant and the
// model operations refuse invalid records via require_valid().
//
// Units: powers in W, lengths in m, transmissivities/losses as fractions.

/// Doubling (SHG) enhancement cavity.
struct ShgParams {
    double t1 = 0.0;               // input-coupler transmissivity
    double l1 = 0.0;               // round-trip linear loss
    double e_nl = 0.0;             // single-pass conversion coefficient, 1/W
    double gamma_abs_ratio = 0.0;  // UV absorption coefficient over e_nl

    /// Total nonlinear loss coefficient, e_nl + absorption term.
    double gamma() const noexcept { return e_nl * (1.0 + gamma_abs_ratio); }
    double gamma_abs() const noexcept { return e_nl * gamma_abs_ratio; }
};

/// Sub-threshold OPO cavity together with its pump-induced loss law
/// L2(P) = loss_intercept + loss_slope * P.
struct OpoParams {
    double t2 = 0.0;              // output-coupler transmissivity
    double l2_base = 0.0;         // intracavity loss without pump
    double e_nl_opo = 0.0;        // single-pass conversion coefficient, 1/W
    double alpha = 0.0;           // total pump mode-matching efficiency
    double cavity_length = 0.0;   // round-trip optical length, m
    double loss_intercept = 0.0;  // induced-loss law constant
    double loss_slope = 0.0;      // induced-loss law slope, 1/W
};

/// Homodyne detection chain.
struct DetectionChain {
    double quantum_efficiency = 0.0;  // photodiode
    double visibility = 0.0;          // homodyne fringe visibility
    double propagation = 0.0;
};

struct Violation {
    std::string field;
    double value;
    std::string rule;
};

std::vector<Violation> validate(const ShgParams& p);
std::vector<Violation> validate(const OpoParams& p);
std::vector<Violation> validate(const DetectionChain& d);

/// Throws DomainError listing every violation when the record is invalid.
void require_valid(const ShgParams& p);
void require_valid(const OpoParams& p);
void require_valid(const DetectionChain& d);

// Values of the reference 795 nm setup.
ShgParams reference_shg();
OpoParams reference_opo();
DetectionChain reference_detection();
inline constexpr double reference_analysis_frequency = 2.0e6;  // Hz

}  // namespace sqz
