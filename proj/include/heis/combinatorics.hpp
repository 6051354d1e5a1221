#pragma once

#include <compare>
#include <string>
#include <vector>

#include "heis/exactla.hpp"

namespace heis {

// Parts sorted descending, all >= 1.
struct Partition {
    std::vector<int> parts;

    int size() const;
    int length() const { return static_cast<int>(parts.size()); }
    int multiplicity(int k) const;
    // (r_1, ..., r_max) where r_k counts parts equal to k.
    std::vector<int> multiplicities() const;
    auto operator<=>(const Partition&) const = default;
};

using OrderedPartition = std::vector<int>;

Rational factorial(int n);
Rational binom(const Rational& z, int k);
Rational s_pow(const Rational& z, int k);
Rational multinom(const Rational& z, const std::vector<int>& ks);

// Lexicographic on the descending part lists.
std::vector<Partition> partitions_of(int n);
std::vector<OrderedPartition> ordered_partitions(int n, int m);
Partition forget(const OrderedPartition& p);

std::string to_string(const Partition& p);

}  // namespace heis
