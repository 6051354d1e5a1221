#include "heis/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace heis {

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int Partition::multiplicity(int k) const {
    return static_cast<int>(std::count(parts.begin(), parts.end(), k));
}

std::vector<int> Partition::multiplicities() const {
    int top = parts.empty() ? 0 : parts.front();
    std::vector<int> r(static_cast<std::size_t>(top), 0);
    for (int p : parts) ++r[static_cast<std::size_t>(p - 1)];
    return r;
}

Rational factorial(int n) {
    if (n < 0) throw OutOfRange("factorial of a negative integer");
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

Rational binom(const Rational& z, int k) {
    if (k < 0) throw OutOfRange("binomial with negative k");
    Rational out = 1;
    for (int i = 0; i < k; ++i) out *= (z - i);
    return out / factorial(k);
}

Rational s_pow(const Rational& z, int k) { return binom(z + k - 1, k); }

Rational multinom(const Rational& z, const std::vector<int>& ks) {
    int total = 0;
    Rational denom = 1;
    for (int k : ks) {
        if (k < 0) throw OutOfRange("multinomial with a negative part");
        total += k;
        denom *= factorial(k);
    }
    Rational num = 1;
    for (int i = 0; i < total; ++i) num *= (z - i);
    return num / denom;
}

std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw OutOfRange("partitions of a negative integer");
    std::vector<Partition> out;
    std::vector<int> cur;
    // Emit in lexicographic order of descending part lists: smallest first part first.
    std::function<void(int, int)> rec = [&](int remaining, int maxpart) {
        if (remaining == 0) {
            out.push_back(Partition{cur});
            return;
        }
        for (int p = 1; p <= std::min(remaining, maxpart); ++p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<OrderedPartition> ordered_partitions(int n, int m) {
    if (n < 0 || m < 0) throw OutOfRange("ordered partitions with negative arguments");
    std::vector<OrderedPartition> out;
    if (m == 0) {
        if (n == 0) out.emplace_back();
        return out;
    }
    OrderedPartition cur(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == m - 1) {
            cur[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, remaining - v);
        }
    };
    rec(0, n);
    return out;
}

Partition forget(const OrderedPartition& p) {
    Partition out;
    for (int v : p) {
        if (v < 0) throw OutOfRange("ordered partition with a negative part");
        if (v > 0) out.parts.push_back(v);
    }
    std::sort(out.parts.rbegin(), out.parts.rend());
    return out;
}

std::string to_string(const Partition& p) {
    std::string s = "{";
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p.parts[i]);
    }
    return s + "}";
}

}  // namespace heis
