#pragma once

// Exact isomorphism of small hypergraphs via canonical forms.
//
// The canonical form of G is the minimum, over all vertex permutations p,
// of apply_perm(G, p) viewed as an integer (high colex rank = most
// significant bit). Minimization runs as branch-and-bound over partial
// label assignments: original vertices are assigned to labels n, n-1, ...
// in turn, and a branch dies as soon as the already-determined top bits
// exceed the incumbent. Results are memoized per edge space.

#include <array>
#include <atomic>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "diffiso/core.hpp"

namespace diffiso {

inline constexpr int kMaxCanonN = 10;

using CanonForm = RGraph;

namespace detail {

inline constexpr int kCanonWords = 4;  // C(10,5) = 252 bits
using CanonMask = std::array<u64, kCanonWords>;

// Immutable per-space tables for the canon search.
struct CanonContext {
    EdgeSpace space;
    // step t assigns label n-t; a position becomes determined at the step
    // where its smallest label is assigned
    struct Position {
        u32 rank;
        std::array<std::uint8_t, 8> prev_depth;  // depths of the r-1 larger labels
    };
    std::vector<std::vector<Position>> step_positions;  // [t]
    std::vector<CanonMask> det_mask;                    // ranks determined after step t

    explicit CanonContext(const EdgeSpace& s) : space(s) {
        const int n = s.n, r = s.r;
        step_positions.resize(n);
        std::vector<int> subset(r > 1 ? r - 1 : 0);
        for (int t = 0; t < n; ++t) {
            int label = n - t;
            // (r-1)-subsets of the labels assigned earlier, i.e. {label+1..n}
            if (r == 1) {
                Position p;
                p.rank = static_cast<u32>(label - 1);
                step_positions[t].push_back(p);
                continue;
            }
            if (t < r - 1) continue;
            // choose r-1 depths out of 0..t-1; label at depth d is n-d
            std::vector<int> idx(r - 1);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                Position p{};
                Edge e(r);
                e[0] = label;
                for (int j = 0; j < r - 1; ++j) {
                    p.prev_depth[j] = static_cast<std::uint8_t>(idx[j]);
                    e[j + 1] = n - idx[j];
                }
                std::sort(e.begin(), e.end());
                p.rank = static_cast<u32>(rank_edge(s, e));
                step_positions[t].push_back(p);
                // next combination
                int j = r - 2;
                while (j >= 0 && idx[j] == t - (r - 2 - j) - 1) --j;
                if (j < 0) break;
                ++idx[j];
                for (int l = j + 1; l < r - 1; ++l) idx[l] = idx[l - 1] + 1;
            }
        }
        det_mask.resize(n);
        CanonMask acc{};
        for (int t = 0; t < n; ++t) {
            for (const Position& p : step_positions[t]) acc[p.rank >> 6] |= u64{1} << (p.rank & 63);
            det_mask[t] = acc;
        }
    }
};

template <int W>
struct CanonSearch {
    using Mask = std::array<u64, W>;

    static bool less(const Mask& a, const Mask& b) {
        for (int w = W - 1; w >= 0; --w)
            if (a[w] != b[w]) return a[w] < b[w];
        return false;
    }
    static int top_bit(const Mask& m) {
        for (int w = W - 1; w >= 0; --w)
            if (m[w]) return w * 64 + 63 - std::countl_zero(m[w]);
        return -1;
    }

    const CanonContext& ctx;
    int n, r;
    Mask target{};  // input graph bits
    Mask best{};
    std::array<Mask, kMaxCanonN> det;  // ctx.det_mask truncated to W words
    std::array<int, kMaxCanonN> orig_at_depth{};
    std::array<int, kMaxCanonN> twin_class{};  // vertices swappable by an automorphism
    std::array<int, kMaxCanonN + 1> deg{};
    u64 used = 0;                               // bitmask over original vertices (0-based)
    u64 nodes = 0;
    std::array<u64, kMaxCanonN + 1> adj_row{};  // r=2 only: neighbor bits per vertex

    explicit CanonSearch(const CanonContext& c) : ctx(c), n(c.space.n), r(c.space.r) {
        for (int t = 0; t < n; ++t)
            for (int w = 0; w < W; ++w) det[t][w] = c.det_mask[t][w];
    }

    bool test(u64 rank) const { return (target[rank >> 6] >> (rank & 63)) & 1; }

    bool has_edge_sorted(Edge& e) const {
        std::sort(e.begin(), e.end());
        u64 rank = 0;
        for (int i = 0; i < r; ++i) rank += binom(e[i] - 1, i + 1);
        return test(rank);
    }

    // is the transposition (u v) an automorphism of the target graph?
    bool transposition_fixes(int u, int v) const {
        if (r == 2) {
            u64 strip = ~((u64{1} << (u - 1)) | (u64{1} << (v - 1)));
            return (adj_row[u] & strip) == (adj_row[v] & strip);
        }
        Edge img(r);
        for (u64 i = 0; i < ctx.space.edge_count; ++i) {
            if (!test(i)) continue;
            Edge e = unrank_edge(ctx.space, i);
            for (int j = 0; j < r; ++j) img[j] = e[j] == u ? v : (e[j] == v ? u : e[j]);
            if (!has_edge_sorted(img)) return false;
        }
        return true;
    }

    void run(const RGraph& g) {
        for (size_t w = 0; w < g.bits.size(); ++w) target[w] = g.bits[w];
        best.fill(~u64{0});
        if (r == 2) {
            for (int v = 1; v <= n; ++v) {
                adj_row[v] = 0;
                for (int w = 1; w <= n; ++w) {
                    if (w == v) continue;
                    int lo = std::min(v, w), hi = std::max(v, w);
                    u64 rank = binom(lo - 1, 1) + binom(hi - 1, 2);
                    if (test(rank)) adj_row[v] |= u64{1} << (w - 1);
                }
            }
        }
        for (u64 i = 0; i < ctx.space.edge_count; ++i) {
            if (!test(i)) continue;
            Edge e = unrank_edge(ctx.space, i);
            for (int v : e) ++deg[v];
        }
        for (int v = 1; v <= n; ++v) {
            twin_class[v - 1] = v;
            for (int u = 1; u < v; ++u) {
                if (twin_class[u - 1] != u) continue;
                if (deg[u] == deg[v] && transposition_fixes(u, v)) {
                    twin_class[v - 1] = u;
                    break;
                }
            }
        }
        Mask none{};
        descend(0, none);
    }

    void descend(int t, const Mask& bits) {
        if (t == n) {
            if (less(bits, best)) best = bits;
            return;
        }
        // children = candidate originals for label n-t; explore the smallest
        // new bits first (ties: low degree first) so the incumbent is sharp
        std::array<Mask, kMaxCanonN> child_bits;
        std::array<int, kMaxCanonN> child_v;
        int nc = 0;
        u64 class_seen = 0;
        for (int v = 1; v <= n; ++v) {
            if ((used >> (v - 1)) & 1) continue;
            // one representative per twin class: swapping two twins is an
            // automorphism, so their subtrees produce the same masks
            int cls = twin_class[v - 1];
            if ((class_seen >> (cls - 1)) & 1) continue;
            class_seen |= u64{1} << (cls - 1);
            Mask next = bits;
            if (r == 2) {
                u64 row = adj_row[v];
                for (const auto& p : ctx.step_positions[t]) {
                    int u = orig_at_depth[p.prev_depth[0]];
                    if ((row >> (u - 1)) & 1) next[p.rank >> 6] |= u64{1} << (p.rank & 63);
                }
            } else if (r == 1) {
                if ((target[0] >> (v - 1)) & 1) {
                    u32 rank = ctx.step_positions[t][0].rank;
                    next[rank >> 6] |= u64{1} << (rank & 63);
                }
            } else {
                Edge verts(r);
                for (const auto& p : ctx.step_positions[t]) {
                    verts[0] = v;
                    for (int j = 0; j < r - 1; ++j) verts[j + 1] = orig_at_depth[p.prev_depth[j]];
                    if (has_edge_sorted(verts)) next[p.rank >> 6] |= u64{1} << (p.rank & 63);
                }
            }
            int pos = nc++;
            while (pos > 0 && (less(next, child_bits[pos - 1]) ||
                               (next == child_bits[pos - 1] &&
                                deg[v] < deg[child_v[pos - 1]]))) {
                child_bits[pos] = child_bits[pos - 1];
                child_v[pos] = child_v[pos - 1];
                --pos;
            }
            child_bits[pos] = next;
            child_v[pos] = v;
        }
        for (int c = 0; c < nc; ++c) {
            // Sound prune: let q be the highest undetermined position where
            // the incumbent has a 1. Any completion matches the incumbent's
            // zeros above q unless it is already larger, so comparing
            // determined bits above q decides the branch.
            Mask undet_best;
            for (int w = 0; w < W; ++w) undet_best[w] = best[w] & ~det[t][w];
            int q = top_bit(undet_best);
            Mask cmp = det[t];
            if (q >= 0) {
                int qw = q >> 6, qb = q & 63;
                for (int w = 0; w < qw; ++w) cmp[w] = 0;
                cmp[qw] &= qb == 63 ? 0 : ~((u64{1} << (qb + 1)) - 1);
            }
            bool prune = false;
            for (int w = W - 1; w >= 0; --w) {
                u64 aw = child_bits[c][w] & cmp[w], bw = best[w] & cmp[w];
                if (aw != bw) {
                    prune = aw > bw;
                    break;
                }
            }
            if (prune) continue;
            int v = child_v[c];
            orig_at_depth[t] = v;
            used |= u64{1} << (v - 1);
            descend(t + 1, child_bits[c]);
            used &= ~(u64{1} << (v - 1));
        }
    }
};

}  // namespace detail

// ------------------------------------------------------------- CanonCache

// Memoized canonical forms, keyed by graph bitmask, one table per edge
// space. Concurrent readers share the lock; duplicated concurrent inserts
// of the same key are harmless (the value is a pure function of the key).
class CanonCache {
  public:
    CanonCache() = default;
    CanonCache(const CanonCache&) = delete;
    CanonCache& operator=(const CanonCache&) = delete;

    RGraph canon(const RGraph& g) {
        PerSpace& ps = space_entry(g.space);
        if (ps.full_ready.load(std::memory_order_acquire)) {
            RGraph out(g.space);
            out.bits[0] = ps.full_table[g.bits[0]];
            return out;
        }
        if (g.space.edge_count <= 64) {
            u64 key = g.bits[0];
            {
                std::shared_lock lock(ps.mutex);
                auto it = ps.small.find(key);
                if (it != ps.small.end()) {
                    RGraph out(g.space);
                    out.bits[0] = it->second;
                    return out;
                }
            }
            RGraph c = compute(ps, g);
            {
                std::unique_lock lock(ps.mutex);
                ps.small.emplace(key, c.bits[0]);
            }
            return c;
        }
        {
            std::shared_lock lock(ps.mutex);
            auto it = ps.big.find(g.bits);
            if (it != ps.big.end()) {
                RGraph out(g.space);
                out.bits = it->second;
                return out;
            }
        }
        RGraph c = compute(ps, g);
        {
            std::unique_lock lock(ps.mutex);
            ps.big.emplace(g.bits, c.bits);
        }
        return c;
    }

    // Fill the whole table for a small space in one sweep. Scanning masks in
    // ascending integer order, the first unseen member of each isomorphism
    // orbit is the orbit minimum, i.e. its own canonical form; its orbit is
    // then closed off under all edge permutations. Bit-identical to the
    // on-demand path.
    void precompute_all(const EdgeSpace& space) {
        if (space.n > kMaxCanonN)
            throw capacity_error("canon: n exceeds the n <= 10 enumeration cap");
        if (space.edge_count > 20)
            throw capacity_error("canon: space too large to precompute exhaustively");
        PerSpace& ps = space_entry(space);
        std::unique_lock lock(ps.mutex);
        if (ps.full_ready.load(std::memory_order_relaxed)) return;
        u64 total = u64{1} << space.edge_count;
        std::vector<u64> table(total, ~u64{0});
        std::vector<std::vector<u32>> perms;
        {
            std::vector<int> img(space.n);
            std::iota(img.begin(), img.end(), 1);
            do {
                perms.push_back(induce_edge_perm(space, Perm(img)).table);
            } while (std::next_permutation(img.begin(), img.end()));
        }
        for (u64 mask = 0; mask < total; ++mask) {
            if (table[mask] != ~u64{0}) continue;
            for (const auto& t : perms) {
                u64 img = 0, m = mask;
                while (m) {
                    img |= u64{1} << t[std::countr_zero(m)];
                    m &= m - 1;
                }
                table[img] = mask;
            }
        }
        ps.full_table = std::move(table);
        ps.full_ready.store(true, std::memory_order_release);
    }

  private:
    struct PerSpace {
        std::unique_ptr<detail::CanonContext> ctx;
        std::unordered_map<u64, u64> small;
        std::map<std::vector<u64>, std::vector<u64>> big;
        std::vector<u64> full_table;
        std::atomic<bool> full_ready{false};
        std::shared_mutex mutex;
    };

    PerSpace& space_entry(const EdgeSpace& space) {
        std::lock_guard lock(spaces_mutex_);
        auto key = std::make_pair(space.n, space.r);
        auto it = spaces_.find(key);
        if (it == spaces_.end()) {
            auto ps = std::make_unique<PerSpace>();
            it = spaces_.emplace(key, std::move(ps)).first;
        }
        return *it->second;
    }

    template <int W>
    RGraph compute_w(const detail::CanonContext& ctx, const RGraph& g) {
        detail::CanonSearch<W> search(ctx);
        search.run(g);
        RGraph out(g.space);
        for (size_t w = 0; w < out.bits.size(); ++w) out.bits[w] = search.best[w];
        return out;
    }

    RGraph compute(PerSpace& ps, const RGraph& g) {
        if (g.space.n > kMaxCanonN)
            throw capacity_error("canon: n exceeds the n <= 10 enumeration cap");
        {
            std::unique_lock lock(ps.mutex);
            if (!ps.ctx) ps.ctx = std::make_unique<detail::CanonContext>(g.space);
        }
        switch (g.space.mask_words()) {
            case 1: return compute_w<1>(*ps.ctx, g);
            case 2: return compute_w<2>(*ps.ctx, g);
            case 3: return compute_w<3>(*ps.ctx, g);
            default: return compute_w<4>(*ps.ctx, g);
        }
    }

    std::map<std::pair<int, int>, std::unique_ptr<PerSpace>> spaces_;
    std::mutex spaces_mutex_;
};

inline RGraph canon(const RGraph& g, CanonCache& cache) { return cache.canon(g); }

// ---------------------------------------------------------------- queries

inline std::vector<u64> degree_multiset(const RGraph& g) {
    std::vector<u64> deg(g.space.n, 0);
    for (u64 i : g.edge_ranks()) {
        Edge e = unrank_edge(g.space, i);
        for (int v : e) ++deg[v - 1];
    }
    std::sort(deg.begin(), deg.end());
    return deg;
}

// False only when provably non-isomorphic; never rejects isomorphic pairs.
inline bool prefilter(const RGraph& g1, const RGraph& g2) {
    require_same_space(g1.space, g2.space);
    if (g1.size() != g2.size()) return false;
    return degree_multiset(g1) == degree_multiset(g2);
}

inline bool are_isomorphic(const RGraph& g1, const RGraph& g2, CanonCache& cache) {
    require_same_space(g1.space, g2.space);
    if (g1.bits == g2.bits) return true;
    if (!prefilter(g1, g2)) return false;
    return cache.canon(g1) == cache.canon(g2);
}

}  // namespace diffiso
