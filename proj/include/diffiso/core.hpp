#pragma once

// Ranked edge space for r-uniform hypergraphs on [n], bitmask graphs,
// vertex permutations and their induced action on edge ranks.
//
// Edges are the r-subsets of {1,...,n}, addressed by colexicographic rank:
//   rank({s_1 < ... < s_r}) = sum_i C(s_i - 1, i),  ranks 0 .. C(n,r)-1.
// A graph is a bitmask over ranks (bit i set <=> edge of rank i present).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace diffiso {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

// ---------------------------------------------------------------- errors

// invalid user input (bad edge, bad permutation, bad parameters)
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// request exceeds a hard or configured resource cap
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// precondition that callers must guarantee (e.g. "psi is an involution")
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

// malformed input file
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------- binomials

inline constexpr int kMaxN = 64;  // C(64,32) still fits in 64 bits

namespace detail {

struct BinomTable {
    u64 c[kMaxN + 1][kMaxN + 1];
    BinomTable() {
        for (int n = 0; n <= kMaxN; ++n) {
            for (int k = 0; k <= kMaxN; ++k) c[n][k] = 0;
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
    }
};

inline const BinomTable& binom_table() {
    static const BinomTable t;
    return t;
}

}  // namespace detail

inline u64 binom(int n, int k) {
    if (n < 0) return 0;
    if (n > kMaxN)
        throw capacity_error("binom: n=" + std::to_string(n) + " exceeds table limit " +
                             std::to_string(kMaxN));
    if (k < 0 || k > n) return 0;
    return detail::binom_table().c[n][k];
}

// ----------------------------------------------------- enumeration caps

// Log2 cap on enumerated collection sizes (neighborhoods, generated
// families). DIFFISO_CAP_BITS overrides it; expert use only.
inline int enumeration_cap_log2() {
    static const int cap = [] {
        if (const char* s = std::getenv("DIFFISO_CAP_BITS")) {
            int v = std::atoi(s);
            if (v >= 1 && v <= 40) return v;
        }
        return 24;
    }();
    return cap;
}

inline u64 enumeration_cap() { return u64{1} << enumeration_cap_log2(); }

// Hard cap on bitmask width; beyond this a single graph is impractical.
inline constexpr u64 kMaxMaskBits = u64{1} << 22;

// ------------------------------------------------------------- EdgeSpace

struct EdgeSpace {
    int n = 0;          // vertices are 1..n
    int r = 0;          // uniformity, 1 <= r <= n
    u64 edge_count = 0; // C(n,r)

    EdgeSpace() = default;
    EdgeSpace(int n_, int r_) : n(n_), r(r_) {
        if (n < 1 || n > kMaxN)
            throw validation_error("EdgeSpace: n must be in [1," + std::to_string(kMaxN) + "]");
        if (r < 1 || r > n) throw validation_error("EdgeSpace: need 1 <= r <= n");
        edge_count = binom(n, r);
    }

    int mask_words() const {
        if (edge_count > kMaxMaskBits)
            throw capacity_error("edge space too large for bitmask graphs: C(" +
                                 std::to_string(n) + "," + std::to_string(r) + ") = " +
                                 std::to_string(edge_count));
        return static_cast<int>((edge_count + 63) / 64);
    }

    friend bool operator==(const EdgeSpace& a, const EdgeSpace& b) {
        return a.n == b.n && a.r == b.r;
    }
    friend bool operator!=(const EdgeSpace& a, const EdgeSpace& b) { return !(a == b); }
};

inline void require_same_space(const EdgeSpace& a, const EdgeSpace& b) {
    if (a != b)
        throw validation_error("edge space mismatch: (" + std::to_string(a.n) + "," +
                               std::to_string(a.r) + ") vs (" + std::to_string(b.n) + "," +
                               std::to_string(b.r) + ")");
}

// ------------------------------------------------------------------ Edge

// A sorted r-subset of [1,n].
using Edge = std::vector<int>;

inline void validate_edge(const EdgeSpace& s, const Edge& e) {
    if (static_cast<int>(e.size()) != s.r)
        throw validation_error("edge has " + std::to_string(e.size()) + " vertices, expected r=" +
                               std::to_string(s.r));
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 1 || e[i] > s.n) throw validation_error("edge vertex out of range [1,n]");
        if (i > 0 && e[i] <= e[i - 1])
            throw validation_error("edge vertices must be strictly increasing");
    }
}

inline u64 rank_edge(const EdgeSpace& s, const Edge& e) {
    validate_edge(s, e);
    u64 rank = 0;
    for (int i = 0; i < s.r; ++i) rank += binom(e[i] - 1, i + 1);
    return rank;
}

inline Edge unrank_edge(const EdgeSpace& s, u64 rank) {
    if (rank >= s.edge_count) throw validation_error("edge rank out of range");
    Edge e(s.r);
    u64 rem = rank;
    for (int i = s.r; i >= 1; --i) {
        // largest v with C(v-1, i) <= rem
        int v = i;  // C(i-1,i) = 0 <= rem always
        while (v < s.n && binom(v, i) <= rem) ++v;
        e[i - 1] = v;
        rem -= binom(v - 1, i);
    }
    return e;
}

// ---------------------------------------------------------------- RGraph

struct RGraph {
    EdgeSpace space;
    std::vector<u64> bits;  // bit i = edge of colex rank i; trailing bits zero

    RGraph() = default;
    explicit RGraph(const EdgeSpace& s) : space(s), bits(s.mask_words(), 0) {}

    static RGraph from_edges(const EdgeSpace& s, const std::vector<Edge>& edges) {
        RGraph g(s);
        for (const Edge& e : edges) g.set(rank_edge(s, e));
        return g;
    }

    static RGraph full(const EdgeSpace& s) {
        RGraph g(s);
        for (auto& w : g.bits) w = ~u64{0};
        g.trim();
        return g;
    }

    bool test(u64 i) const { return (bits[i >> 6] >> (i & 63)) & 1; }
    void set(u64 i) { bits[i >> 6] |= u64{1} << (i & 63); }
    void reset(u64 i) { bits[i >> 6] &= ~(u64{1} << (i & 63)); }

    u64 size() const {
        u64 c = 0;
        for (u64 w : bits) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (u64 w : bits)
            if (w) return false;
        return true;
    }

    void trim() {
        int tail = static_cast<int>(space.edge_count & 63);
        if (tail != 0 && !bits.empty()) bits.back() &= (u64{1} << tail) - 1;
    }

    std::vector<u64> edge_ranks() const {
        std::vector<u64> out;
        out.reserve(size());
        for (size_t w = 0; w < bits.size(); ++w) {
            u64 word = bits[w];
            while (word) {
                out.push_back(w * 64 + std::countr_zero(word));
                word &= word - 1;
            }
        }
        return out;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (u64 i : edge_ranks()) out.push_back(unrank_edge(space, i));
        return out;
    }

    friend bool operator==(const RGraph& a, const RGraph& b) {
        return a.space == b.space && a.bits == b.bits;
    }
    friend bool operator!=(const RGraph& a, const RGraph& b) { return !(a == b); }
    // total order on same-space masks, high word first
    friend bool operator<(const RGraph& a, const RGraph& b) {
        return std::lexicographical_compare(a.bits.rbegin(), a.bits.rend(), b.bits.rbegin(),
                                            b.bits.rend());
    }
};

inline RGraph difference(const RGraph& a, const RGraph& b) {
    require_same_space(a.space, b.space);
    RGraph out(a.space);
    for (size_t i = 0; i < out.bits.size(); ++i) out.bits[i] = a.bits[i] & ~b.bits[i];
    return out;
}

inline RGraph symmetric_difference(const RGraph& a, const RGraph& b) {
    require_same_space(a.space, b.space);
    RGraph out(a.space);
    for (size_t i = 0; i < out.bits.size(); ++i) out.bits[i] = a.bits[i] ^ b.bits[i];
    return out;
}

inline RGraph set_union(const RGraph& a, const RGraph& b) {
    require_same_space(a.space, b.space);
    RGraph out(a.space);
    for (size_t i = 0; i < out.bits.size(); ++i) out.bits[i] = a.bits[i] | b.bits[i];
    return out;
}

inline RGraph set_intersection(const RGraph& a, const RGraph& b) {
    require_same_space(a.space, b.space);
    RGraph out(a.space);
    for (size_t i = 0; i < out.bits.size(); ++i) out.bits[i] = a.bits[i] & b.bits[i];
    return out;
}

inline RGraph complement(const RGraph& g) {
    RGraph out(g.space);
    for (size_t i = 0; i < out.bits.size(); ++i) out.bits[i] = ~g.bits[i];
    out.trim();
    return out;
}

inline u64 vertex_degree(const RGraph& g, int v) {
    if (v < 1 || v > g.space.n) throw validation_error("vertex out of range");
    u64 deg = 0;
    for (u64 i : g.edge_ranks()) {
        Edge e = unrank_edge(g.space, i);
        if (std::find(e.begin(), e.end(), v) != e.end()) ++deg;
    }
    return deg;
}

// ------------------------------------------------------------------ Perm

struct Perm {
    // image[v-1] = phi(v), values 1..n
    std::vector<int> image;

    Perm() = default;
    explicit Perm(std::vector<int> img) : image(std::move(img)) { validate(); }

    static Perm identity(int n) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 1);
        return Perm(std::move(img));
    }

    // from a product of cycles, e.g. {{1,2},{3,4}} = (1 2)(3 4)
    static Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 1);
        for (const auto& cyc : cycles)
            for (size_t i = 0; i < cyc.size(); ++i) {
                int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
                if (from < 1 || from > n) throw validation_error("cycle vertex out of range");
                img[from - 1] = to;
            }
        Perm p(std::move(img));
        return p;
    }

    int n() const { return static_cast<int>(image.size()); }
    int operator()(int v) const { return image[v - 1]; }

    void validate() const {
        std::vector<char> seen(image.size(), 0);
        for (int v : image) {
            if (v < 1 || v > n() || seen[v - 1]) throw validation_error("not a permutation of [1,n]");
            seen[v - 1] = 1;
        }
    }

    Perm inverse() const {
        std::vector<int> img(image.size());
        for (int v = 1; v <= n(); ++v) img[image[v - 1] - 1] = v;
        return Perm(std::move(img));
    }

    // (a.compose(b))(v) = a(b(v))
    Perm compose(const Perm& b) const {
        if (n() != b.n()) throw validation_error("permutation size mismatch");
        std::vector<int> img(image.size());
        for (int v = 1; v <= n(); ++v) img[v - 1] = image[b(v) - 1];
        return Perm(std::move(img));
    }

    bool is_identity() const {
        for (int v = 1; v <= n(); ++v)
            if ((*this)(v) != v) return false;
        return true;
    }

    bool is_involution() const {
        for (int v = 1; v <= n(); ++v)
            if (image[image[v - 1] - 1] != v) return false;
        return true;
    }

    std::vector<int> fixed_points() const {
        std::vector<int> out;
        for (int v = 1; v <= n(); ++v)
            if ((*this)(v) == v) out.push_back(v);
        return out;
    }

    // unordered pairs {x,y}, x<y, with phi(x)=y and phi(y)=x
    std::vector<std::pair<int, int>> two_cycles() const {
        std::vector<std::pair<int, int>> out;
        for (int v = 1; v <= n(); ++v) {
            int w = (*this)(v);
            if (w > v && (*this)(w) == v) out.emplace_back(v, w);
        }
        return out;
    }

    friend bool operator==(const Perm& a, const Perm& b) { return a.image == b.image; }
    friend bool operator!=(const Perm& a, const Perm& b) { return !(a == b); }
    friend bool operator<(const Perm& a, const Perm& b) { return a.image < b.image; }
};

// -------------------------------------------------------------- EdgePerm

// The permutation induced on edge ranks by a vertex permutation.
struct EdgePerm {
    EdgeSpace space;
    Perm source;
    std::vector<u32> table;  // table[i] = rank of source-image of edge i

    EdgePerm inverse() const {
        EdgePerm out;
        out.space = space;
        out.source = source.inverse();
        out.table.resize(table.size());
        for (u64 i = 0; i < table.size(); ++i) out.table[table[i]] = static_cast<u32>(i);
        return out;
    }

    // (a.compose(b)).table[i] = a.table[b.table[i]]
    EdgePerm compose(const EdgePerm& b) const {
        require_same_space(space, b.space);
        EdgePerm out;
        out.space = space;
        out.source = source.compose(b.source);
        out.table.resize(table.size());
        for (u64 i = 0; i < table.size(); ++i) out.table[i] = table[b.table[i]];
        return out;
    }

    bool is_identity() const {
        for (u64 i = 0; i < table.size(); ++i)
            if (table[i] != i) return false;
        return true;
    }
};

inline EdgePerm induce_edge_perm(const EdgeSpace& s, const Perm& p) {
    if (p.n() != s.n) throw validation_error("permutation size does not match edge space");
    if (s.edge_count > kMaxMaskBits)
        throw capacity_error("edge space too large for an induced edge permutation table");
    EdgePerm ep;
    ep.space = s;
    ep.source = p;
    ep.table.resize(s.edge_count);
    Edge img(s.r);
    for (u64 i = 0; i < s.edge_count; ++i) {
        Edge e = unrank_edge(s, i);
        for (int j = 0; j < s.r; ++j) img[j] = p(e[j]);
        std::sort(img.begin(), img.end());
        ep.table[i] = static_cast<u32>(rank_edge(s, img));
    }
    return ep;
}

inline RGraph apply_perm(const RGraph& g, const EdgePerm& ep) {
    require_same_space(g.space, ep.space);
    RGraph out(g.space);
    for (size_t w = 0; w < g.bits.size(); ++w) {
        u64 word = g.bits[w];
        while (word) {
            u64 i = w * 64 + std::countr_zero(word);
            word &= word - 1;
            out.set(ep.table[i]);
        }
    }
    return out;
}

}  // namespace diffiso
