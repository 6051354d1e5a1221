#pragma once

// Independent reference computations. Nothing here calls into the library:
// permutations are plain vectors and Fock states are polynomials.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Perm = std::vector<int>;
using Q = mpq_class;

inline Perm compose(const Perm& s, const Perm& t) {  // (s t)(i) = s(t(i))
    Perm r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = s[static_cast<std::size_t>(t[i])];
    return r;
}

inline Perm inverse(const Perm& s) {
    Perm r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) r[static_cast<std::size_t>(s[i])] = static_cast<int>(i);
    return r;
}

inline std::vector<Perm> all_perms(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline Perm cycle(int n) {
    Perm p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = (i + 1) % n;
    return p;
}

// Cycle type, descending.
inline std::vector<int> cycle_type(const Perm& s) {
    std::vector<bool> seen(s.size(), false);
    std::vector<int> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(s[j])) {
            seen[j] = true;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

// Supertrace of phi -> sigma phi tau on the group algebra of S_n: #{phi : sigma phi tau = phi}.
inline long class_pairing(const Perm& sigma, const Perm& tau) {
    long count = 0;
    for (const auto& phi : all_perms(static_cast<int>(sigma.size())))
        if (compose(compose(sigma, phi), tau) == phi) ++count;
    return count;
}

// A representative permutation with the given cycle type.
inline Perm with_cycle_type(const std::vector<int>& type) {
    int n = 0;
    for (int k : type) n += k;
    Perm p(static_cast<std::size_t>(n));
    int start = 0;
    for (int k : type) {
        for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(start + i)] = start + (i + 1) % k;
        start += k;
    }
    return p;
}

// Creation on class functions of the point category: [lambda] -> [lambda u (n)].
inline std::vector<int> create(std::vector<int> type, int n) {
    type.push_back(n);
    std::sort(type.rbegin(), type.rend());
    return type;
}

// Annihilation via Mackey: [g] in S_{h+n} -> sum over cosets q of S_h x S_n fixed by g
// of <[t_n], [h2]> [h1], where g r_q = r_q (h1, h2).
inline std::map<std::vector<int>, Q> annihilate(const Perm& g, int h, int n) {
    const int total = h + n;
    auto in_young = [&](const Perm& p) {
        for (int i = 0; i < total; ++i)
            if ((i < h) != (p[static_cast<std::size_t>(i)] < h)) return false;
        return true;
    };
    // left coset reps: one per h-subset image
    std::vector<Perm> reps;
    for (const auto& p : all_perms(total)) {
        bool fresh = true;
        for (const auto& r : reps)
            if (in_young(compose(inverse(r), p))) {
                fresh = false;
                break;
            }
        if (fresh) reps.push_back(p);
    }
    std::map<std::vector<int>, Q> out;
    for (const auto& r : reps) {
        const Perm x = compose(inverse(r), compose(g, r));
        if (!in_young(x)) continue;
        Perm h1(static_cast<std::size_t>(h)), h2(static_cast<std::size_t>(n));
        for (int i = 0; i < h; ++i) h1[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
        for (int i = 0; i < n; ++i) h2[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(h + i)] - h;
        out[cycle_type(h1)] += class_pairing(cycle(n), h2);
    }
    return out;
}

// Rank-one even Fock space as polynomials in x_1, x_2, ...: a(n) multiplies by
// x_n, a(-n) acts as n chi d/dx_n. Monomials are exponent vectors.
using Poly = std::map<std::vector<int>, Q>;

inline Poly fock_op(const Poly& p, int level, const Q& chi) {
    Poly out;
    const std::size_t k = static_cast<std::size_t>(std::abs(level));
    for (const auto& [mono, c] : p) {
        std::vector<int> m = mono;
        if (m.size() < k) m.resize(k, 0);
        if (level > 0) {
            m[k - 1] += 1;
            out[m] += c;
        } else if (m[k - 1] > 0) {
            const Q factor = c * Q(static_cast<long>(k)) * chi * m[k - 1];
            m[k - 1] -= 1;
            out[m] += factor;
        }
    }
    Poly trimmed;
    for (const auto& [mono, c] : out) {
        if (c == 0) continue;
        std::vector<int> m = mono;
        while (!m.empty() && m.back() == 0) m.pop_back();
        trimmed[m] += c;
    }
    return trimmed;
}

}  // namespace oracle
