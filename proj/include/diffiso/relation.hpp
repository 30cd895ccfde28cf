#pragma once

// The arrow relation G ->phi H (phi maps G\H exactly onto H\G), choosable
// pairs and their neighborhood enumeration, involution cycle partitions of
// the edge space, the closed form f_r(n), and near-involution predicates.

#include <cmath>
#include <optional>
#include <utility>

#include "diffiso/core.hpp"

namespace diffiso {

// ---------------------------------------------------------- choosable pairs

// Ordered pair of edge ranks (e, f) with phi(e)=f, e in G, f not in G.
struct ChoosablePair {
    u64 e_rank;
    u64 f_rank;
    friend bool operator==(const ChoosablePair& a, const ChoosablePair& b) {
        return a.e_rank == b.e_rank && a.f_rank == b.f_rank;
    }
};

// Pairs ordered by e_rank ascending.
inline std::vector<ChoosablePair> choosable_pairs(const RGraph& g, const EdgePerm& phi) {
    require_same_space(g.space, phi.space);
    std::vector<ChoosablePair> out;
    for (u64 e : g.edge_ranks()) {
        u64 f = phi.table[e];
        if (f != e && !g.test(f)) out.push_back({e, f});
    }
    return out;
}

// The sublist of choosable_pairs(g, phi) whose two edges form a 2-cycle of
// the induced psi.
inline std::vector<ChoosablePair> good_choosable_pairs(const RGraph& g, const EdgePerm& phi,
                                                       const EdgePerm& psi) {
    require_same_space(phi.space, psi.space);
    std::vector<ChoosablePair> out;
    for (const ChoosablePair& p : choosable_pairs(g, phi))
        if (psi.table[p.e_rank] == p.f_rank && psi.table[p.f_rank] == p.e_rank) out.push_back(p);
    return out;
}

// ------------------------------------------------------------------- arrow

inline bool arrow(const RGraph& g, const RGraph& h, const EdgePerm& phi) {
    require_same_space(g.space, h.space);
    require_same_space(g.space, phi.space);
    return apply_perm(difference(g, h), phi) == difference(h, g);
}

// All H with arrow(g, H, phi): one binary choice per choosable pair, the
// rest of the edges copied from g. Contains g (the all-e selection).
inline std::vector<RGraph> neighborhood(const RGraph& g, const EdgePerm& phi) {
    auto pairs = choosable_pairs(g, phi);
    if (pairs.size() >= 63 || (u64{1} << pairs.size()) > enumeration_cap())
        throw capacity_error("neighborhood: 2^" + std::to_string(pairs.size()) +
                             " exceeds the enumeration cap");
    u64 count = u64{1} << pairs.size();
    RGraph base = g;
    for (const auto& p : pairs) base.reset(p.e_rank);
    std::vector<RGraph> out;
    out.reserve(count);
    for (u64 sel = 0; sel < count; ++sel) {
        RGraph h = base;
        for (size_t k = 0; k < pairs.size(); ++k)
            h.set((sel >> k) & 1 ? pairs[k].f_rank : pairs[k].e_rank);
        out.push_back(std::move(h));
    }
    return out;
}

// Number of ordered pairs (G1,G2) in X x X with arrow(G1, G2, psi).
inline u64 e_psi(const std::vector<RGraph>& x, const EdgePerm& psi) {
    u64 count = 0;
    for (const RGraph& g1 : x)
        for (const RGraph& g2 : x)
            if (arrow(g1, g2, psi)) ++count;
    return count;
}

// -------------------------------------------------------- cycle partitions

// Fixed edges and 2-cycles of the edge permutation induced by an involution.
struct CyclePartition {
    std::vector<u64> c1;                       // ranks with psi(e) = e
    std::vector<std::pair<u64, u64>> c2;       // {e,f}, e < f, swapped by psi
};

inline CyclePartition cycle_partition(const EdgePerm& psi) {
    if (!psi.source.is_involution()) throw contract_error("cycle_partition: psi^2 != id");
    CyclePartition out;
    for (u64 i = 0; i < psi.table.size(); ++i) {
        u64 j = psi.table[i];
        if (j == i)
            out.c1.push_back(i);
        else if (i < j)
            out.c2.emplace_back(i, j);
    }
    return out;
}

inline CyclePartition cycle_partition(const EdgeSpace& s, const Perm& psi) {
    return cycle_partition(induce_edge_perm(s, psi));
}

// ------------------------------------------------------------------ f_r(n)

// Maximum of |C2(psi)| over involutions: C(n,r)/2 when r odd and n even,
// (C(n,r) - C(floor(n/2), floor(r/2)))/2 otherwise.
inline u64 f_r(int n, int r) {
    if (r < 1 || r > n) throw validation_error("f_r: need 1 <= r <= n");
    u64 twice = 0;
    if (r % 2 == 1 && n % 2 == 0) {
        twice = binom(n, r);
    } else {
        twice = binom(n, r) - binom(n / 2, r / 2);
    }
    if (twice % 2 != 0) throw contract_error("f_r: parity inconsistency");
    return twice / 2;
}

// |C1| for an involution with a fixed points and b two-cycles:
//   sum over i = r mod 2, 0 <= i <= a of C(a,i) * C(b,(r-i)/2).
inline u64 c1_size_formula(int a, int b, int r) {
    if (a < 0 || b < 0 || r < 0) throw validation_error("c1_size_formula: negative parameter");
    u64 total = 0;
    for (int i = r % 2; i <= a && i <= r; i += 2) total += binom(a, i) * binom(b, (r - i) / 2);
    return total;
}

// ------------------------------------------------------------ lemma bounds

// 4^{m_g} * 3.9^{m - m_g}
inline double lemma32_bound(u64 m, u64 m_g) {
    if (m_g > m) throw validation_error("lemma32_bound: m_g > m");
    return std::pow(4.0, static_cast<double>(m_g)) * std::pow(3.9, static_cast<double>(m - m_g));
}

// same bound in natural log, safe for large m
inline double lemma32_bound_ln(u64 m, u64 m_g) {
    if (m_g > m) throw validation_error("lemma32_bound: m_g > m");
    return static_cast<double>(m_g) * std::log(4.0) +
           static_cast<double>(m - m_g) * std::log(3.9);
}

// ------------------------------------------------- near-involution structure

// unordered pairs {x,y} that are 2-cycles of both phi and psi
inline u64 shared_two_cycles(const Perm& phi, const Perm& psi) {
    if (phi.n() != psi.n()) throw validation_error("permutation size mismatch");
    u64 count = 0;
    for (int v = 1; v <= phi.n(); ++v) {
        int w = phi(v);
        if (w > v && phi(w) == v && psi(v) == w && psi(w) == v) ++count;
    }
    return count;
}

// The absolute constant of the exceptional-pair definition is not pinned by
// any finite statement; it stays a report parameter.
struct ExceptionalParams {
    double c = 1.0;
};

// (phi, psi) is exceptional when psi is an involution with at most 2c*sqrt(n)
// fixed points, phi and psi share at least n/2 - c*sqrt(n) 2-cycles and all
// fixed points, and every 2-cycle xy of psi has phi(x)=y or phi(y)=x.
inline bool is_exceptional(const Perm& phi, const Perm& psi, const ExceptionalParams& params) {
    if (params.c <= 0) throw validation_error("ExceptionalParams: c must be positive");
    if (phi.n() != psi.n()) throw validation_error("permutation size mismatch");
    int n = phi.n();
    double csqrt = params.c * std::sqrt(static_cast<double>(n));
    if (!psi.is_involution()) return false;
    auto fixed = psi.fixed_points();
    if (static_cast<double>(fixed.size()) > 2.0 * csqrt) return false;
    for (int v : fixed)
        if (phi(v) != v) return false;
    if (static_cast<double>(shared_two_cycles(phi, psi)) < n / 2.0 - csqrt) return false;
    for (auto [x, y] : psi.two_cycles())
        if (phi(x) != y && phi(y) != x) return false;
    return true;
}

// --------------------------------------------------- involution enumeration

inline constexpr int kMaxInvolutionN = 12;

namespace detail {

inline void involutions_rec(int n, std::vector<int>& img, std::vector<char>& used,
                            std::vector<Perm>& out) {
    int v = 0;
    while (v < n && used[v]) ++v;
    if (v == n) {
        out.emplace_back(img);
        return;
    }
    used[v] = 1;
    img[v] = v + 1;  // fixed point
    involutions_rec(n, img, used, out);
    for (int w = v + 1; w < n; ++w) {
        if (used[w]) continue;
        used[w] = 1;
        img[v] = w + 1;
        img[w] = v + 1;
        involutions_rec(n, img, used, out);
        used[w] = 0;
        img[w] = w + 1;
    }
    img[v] = v + 1;
    used[v] = 0;
}

}  // namespace detail

// All involutions of S_n, ordered by number of 2-cycles ascending, then by
// image lexicographically. The identity comes first.
inline std::vector<Perm> all_involutions(int n) {
    if (n < 1 || n > kMaxInvolutionN)
        throw capacity_error("involution enumeration capped at n <= " +
                             std::to_string(kMaxInvolutionN));
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    std::vector<char> used(n, 0);
    std::vector<Perm> out;
    detail::involutions_rec(n, img, used, out);
    std::sort(out.begin(), out.end(), [](const Perm& a, const Perm& b) {
        size_t ta = a.two_cycles().size(), tb = b.two_cycles().size();
        if (ta != tb) return ta < tb;
        return a.image < b.image;
    });
    return out;
}

// All permutations of S_n in lexicographic image order.
inline std::vector<Perm> all_perms(int n) {
    if (n < 1 || n > 10) throw capacity_error("full S_n enumeration capped at n <= 10");
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    std::vector<Perm> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

}  // namespace diffiso
