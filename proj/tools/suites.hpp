#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "heis/dgcat.hpp"
#include "heis/heisenberg.hpp"
#include "heis/report.hpp"

namespace heis::suites {

struct SuiteConfig {
    std::uint64_t seed = 42;
    int trials = 0;  // 0 selects each suite's own sample count
};

struct Criterion {
    int number;
    std::string name;
    std::function<Report(const SuiteConfig&)> run;
};

const std::vector<Criterion>& criteria();
const Criterion& criterion(int number);  // OutOfRange

// Individual suites, also reachable through the CLI.
Report combinatorial_identities(const SuiteConfig& cfg);
Report fiber_and_reindexing(const SuiteConfig& cfg);
Report pq_relations(const SuiteConfig& cfg);
Report pq_relations_for(const SpacePtr& space, int nmax);
Report decomposition_vs_exponentiation(const SuiteConfig& cfg);
Report filtered_dims(const SuiteConfig& cfg);
Report filtered_dims_for(const SpacePtr& space, int nmax);
Report fock_representation(const SuiteConfig& cfg);
// Dimensions plus relations on the degree <= max_degree part, cross-checked
// against the polynomial model when the space is rank-one even.
Report fock_checks_for(const SpacePtr& space, int max_degree);
Report hochschild_dims(const SuiteConfig& cfg);
Report chain_maps(const SuiteConfig& cfg);
Report homotopy_identity(const SuiteConfig& cfg);
Report f_after_g(const SuiteConfig& cfg);
Report psi_long_cycle(const SuiteConfig& cfg);
Report euler_pairings(const SuiteConfig& cfg);
Report operator_relations(const SuiteConfig& cfg);
// Operators on the point category compared with the class-function model.
Report point_operator_oracle(int nmax);
Report fock_identification_suite(const SuiteConfig& cfg);
Report restriction_square(const SuiteConfig& cfg);

// Samples a form respecting parity, integer entries in [-bound, bound].
SpacePtr random_space(const std::vector<bool>& odd, int bound, std::uint64_t seed);

}  // namespace heis::suites
