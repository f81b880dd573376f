#pragma once

// Analytic identity suite run against a concrete chain.

#include "paik/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace paik {

struct IdentityCheck {
    std::string name;
    bool passed = false;
    double max_error = 0.0;  // relative
    double tolerance = 0.0;
    std::size_t samples = 0;
};

struct IdentityOptions {
    double f_min = 0.1e6;
    double f_max = 20e6;
    std::size_t n_points = 200;
    std::size_t random_draws = 100;
    std::uint64_t seed = 7;
};

/// Frequencies on [f_min, f_max] where none of the chain factors is singular.
/// Singular points are nudged as in frequency_response.
std::vector<double> identity_frequencies(const ReadoutChain& chain, const IdentityOptions& options);

IdentityCheck check_open_circuit(const ReadoutChain& chain, const IdentityOptions& options = {});
IdentityCheck check_short_circuit(const ReadoutChain& chain, const IdentityOptions& options = {});
IdentityCheck check_three_port(const ReadoutChain& chain, const IdentityOptions& options = {});
IdentityCheck check_three_port_symmetry(const ReadoutChain& chain, const IdentityOptions& options = {});
IdentityCheck check_unit_determinant(const ReadoutChain& chain, const IdentityOptions& options = {});
IdentityCheck check_factorization(const ReadoutChain& chain, const IdentityOptions& options = {});
IdentityCheck check_area_invariance(const ReadoutChain& chain, const IdentityOptions& options = {});

std::vector<IdentityCheck> run_identity_suite(const ReadoutChain& chain, const IdentityOptions& options = {});

}  // namespace paik
