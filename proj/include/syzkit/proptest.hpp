#pragma once

// Seeded random inputs and the randomized property suites run by `syzkit proptest`.
//
// Trial t of a run with seed S draws from mt19937_64(trial_seed(S, t)), so each
// trial is reproducible on its own and the result does not depend on how many
// trials run before it.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "syzkit/exterior.hpp"
#include "syzkit/fourier.hpp"
#include "syzkit/report.hpp"
#include "syzkit/sustruct.hpp"

namespace syzkit {

using Rng = std::mt19937_64;

/// splitmix64 of seed + index · golden ratio.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

struct RandomShape {
    int max_degree = 2;   // coefficient degree
    int max_terms = 3;    // terms per coefficient
    int max_form_terms = 4;
    long range = 3;       // numerators and denominators in [-range, range]
    bool complex = true;
};

GR random_gr(Rng& rng, const RandomShape& shape);
Poly random_poly(Rng& rng, const VarList& vars, const RandomShape& shape);
/// degree < 0: mixed degrees.
Form random_form(Rng& rng, const FramePtr& frame, int degree, const RandomShape& shape);
/// I + P(r) with P real, symmetric and vanishing at the origin.
PolyMatrix random_mu(Rng& rng, const VarList& vars, const RandomShape& shape);
/// Hessian of a random real polynomial potential plus the identity.
PolyMatrix random_hessian_mu(Rng& rng, const VarList& vars, int degree);
/// Σ μ_ij dθ̌_i ∧ dr_j on the X̌ frame of the pair.
Form semiflat_omega(const SemiflatPair& pair, const PolyMatrix& mu);

struct SuiteInfo {
    std::string name;
    std::string description;
};

const std::vector<SuiteInfo>& proptest_suites();

/// One check item per property: the number of trials in the detail and, on failure, the first
/// failing trial index and input as witness. Throws for unknown suite names.
CheckReport run_suite(const std::string& name, int trials, std::uint64_t seed);

}  // namespace syzkit
