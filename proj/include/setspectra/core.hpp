#ifndef SETSPECTRA_CORE_HPP
#define SETSPECTRA_CORE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace setspectra {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Error taxonomy shared by all modules.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct contract_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when an internally verified guarantee fails; indicates a bug
// (or a genuine counterexample), never an expected condition.
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kMaxGround = 64;

struct GroundSpec {
    int n = 0;
    int k = 0;

    GroundSpec() = default;
    GroundSpec(int n_, int k_) : n(n_), k(k_) {
        if (k < 1 || n < k)
            throw contract_error("GroundSpec requires 1 <= k <= n");
    }
};

/// Subset of {1,...,n}, n <= 64, stored as a bitmask (element i <-> bit i-1).
/// Numeric order of the mask is colexicographic order of the set.
struct ElementSet {
    std::uint64_t bits = 0;

    ElementSet() = default;
    explicit ElementSet(std::uint64_t mask) : bits(mask) {}
    ElementSet(std::initializer_list<int> elems) {
        for (int e : elems) add(e);
    }

    static ElementSet single(int e) { return ElementSet(std::uint64_t{1} << (e - 1)); }
    /// {1,...,n}
    static ElementSet full(int n) {
        return ElementSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    void add(int e) {
        if (e < 1 || e > kMaxGround)
            throw contract_error("element out of range 1..64: " + std::to_string(e));
        bits |= std::uint64_t{1} << (e - 1);
    }
    bool contains(int e) const { return (bits >> (e - 1)) & 1u; }
    int size() const { return std::popcount(bits); }
    bool empty() const { return bits == 0; }

    bool subset_of(ElementSet other) const { return (bits & ~other.bits) == 0; }
    bool intersects(ElementSet other) const { return (bits & other.bits) != 0; }

    friend ElementSet operator&(ElementSet a, ElementSet b) { return ElementSet(a.bits & b.bits); }
    friend ElementSet operator|(ElementSet a, ElementSet b) { return ElementSet(a.bits | b.bits); }
    friend ElementSet operator-(ElementSet a, ElementSet b) { return ElementSet(a.bits & ~b.bits); }

    auto operator<=>(const ElementSet&) const = default;

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(size());
        for (std::uint64_t m = bits; m;) {
            int b = std::countr_zero(m);
            out.push_back(b + 1);
            m &= m - 1;
        }
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int e : elements()) {
            if (!first) s += ",";
            s += std::to_string(e);
            first = false;
        }
        return s + "}";
    }
};

/// Finite collection of distinct ElementSets over {1..n}, kept sorted in
/// colexicographic (= numeric mask) order. Optional uniformity k.
struct SetFamily {
    int n = 0;
    std::optional<int> k;
    std::vector<ElementSet> sets;

    SetFamily() = default;
    explicit SetFamily(int n_, std::optional<int> k_ = std::nullopt) : n(n_), k(k_) {
        if (n_ < 0 || n_ > kMaxGround)
            throw capacity_error("ground-set size must be in 0..64");
    }

    std::size_t size() const { return sets.size(); }
    bool empty() const { return sets.empty(); }

    bool contains(ElementSet s) const {
        return std::binary_search(sets.begin(), sets.end(), s);
    }

    /// Insert preserving sorted order; rejects out-of-range and duplicate sets.
    void add(ElementSet s) {
        if (!s.subset_of(ElementSet::full(n)))
            throw contract_error("set " + s.to_string() + " not within ground set [" +
                                 std::to_string(n) + "]");
        if (k && s.size() != *k)
            throw contract_error("set " + s.to_string() + " is not " + std::to_string(*k) +
                                 "-uniform");
        auto it = std::lower_bound(sets.begin(), sets.end(), s);
        if (it != sets.end() && *it == s)
            throw contract_error("duplicate set " + s.to_string());
        sets.insert(it, s);
    }

    /// Insert if absent; returns whether inserted.
    bool add_unique(ElementSet s) {
        auto it = std::lower_bound(sets.begin(), sets.end(), s);
        if (it != sets.end() && *it == s) return false;
        sets.insert(it, s);
        return true;
    }

    bool operator==(const SetFamily& other) const {
        return n == other.n && sets == other.sets;
    }

    auto begin() const { return sets.begin(); }
    auto end() const { return sets.end(); }
};

// ---------------------------------------------------------------------------
// Exact binomials
// ---------------------------------------------------------------------------

/// Exact C(n, i); zero when i > n or i < 0. n may be arbitrarily large.
inline BigCount binomial(const BigCount& n, long i) {
    if (i < 0 || n < i) return 0;
    BigCount r = 1;
    // r stays an exact binomial after every division
    for (long j = 0; j < i; ++j) {
        r *= n - j;
        r /= j + 1;
    }
    return r;
}

/// Tail sum  sum_{0 <= i <= s} C(n, i);  zero when s < 0 (empty sum).
inline BigCount binomial_tail(const BigCount& n, long s) {
    if (s < 0) return 0;
    BigCount total = 0;
    BigCount term = 1;  // C(n, 0)
    for (long i = 0;; ++i) {
        total += term;
        if (i == s) break;
        if (n < i + 1) break;  // remaining terms vanish
        term *= n - i;
        term /= i + 1;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Subset enumeration (colex order)
// ---------------------------------------------------------------------------

/// Calls fn(ElementSet) for every k-subset of {1..n} in colex order.
template <typename Fn>
void for_each_k_subset(int n, int k, Fn&& fn) {
    if (n < 0 || n > kMaxGround) throw capacity_error("n must be in 0..64");
    if (k < 0 || k > n) return;
    if (k == 0) {
        fn(ElementSet{});
        return;
    }
    std::uint64_t v = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = ElementSet::full(n).bits;
    while (true) {
        fn(ElementSet(v));
        // Gosper's hack
        std::uint64_t t = v | (v - 1);
        std::uint64_t next = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
        if (next > limit || next < v) break;
        v = next;
    }
}

inline SetFamily enumerate_k_subsets(const GroundSpec& g) {
    SetFamily out(g.n, g.k);
    out.sets.reserve(64);
    for_each_k_subset(g.n, g.k, [&](ElementSet s) { out.sets.push_back(s); });
    return out;
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

/// Every unordered pair of members meets; vacuously true for |F| <= 1.
inline bool is_intersecting(const SetFamily& f) {
    for (std::size_t i = 0; i < f.sets.size(); ++i)
        for (std::size_t j = i + 1; j < f.sets.size(); ++j)
            if (!f.sets[i].intersects(f.sets[j])) return false;
    return true;
}

/// No member is contained in a distinct member.
inline bool is_antichain(const SetFamily& f) {
    for (std::size_t i = 0; i < f.sets.size(); ++i)
        for (std::size_t j = 0; j < f.sets.size(); ++j)
            if (i != j && f.sets[i].subset_of(f.sets[j])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Canonical form under ground-set relabeling
// ---------------------------------------------------------------------------

/// Lexicographically least relabeling of f over all permutations of 1..n,
/// comparing the colex-sorted mask vectors elementwise. Exact scan over all
/// n! permutations; capacity-limited (default n <= 12, slow above 10).
inline SetFamily canonical_form(const SetFamily& f, int max_n = 12) {
    if (f.n > max_n)
        throw capacity_error("exact canonicalization limited to n <= " + std::to_string(max_n));
    const int n = f.n;
    std::vector<int> perm(n);  // perm[old-1] = new element - 1
    for (int i = 0; i < n; ++i) perm[i] = i;

    std::vector<std::uint64_t> best, cur;
    best.reserve(f.sets.size());
    cur.reserve(f.sets.size());
    for (const auto& s : f.sets) best.push_back(s.bits);
    // identity is a candidate; `best` already holds it sorted
    do {
        cur.clear();
        for (const auto& s : f.sets) {
            std::uint64_t img = 0;
            for (std::uint64_t m = s.bits; m;) {
                int b = std::countr_zero(m);
                img |= std::uint64_t{1} << perm[b];
                m &= m - 1;
            }
            cur.push_back(img);
        }
        std::sort(cur.begin(), cur.end());
        if (cur < best) best = cur;
    } while (std::next_permutation(perm.begin(), perm.end()));

    SetFamily out(f.n, f.k);
    out.sets.reserve(best.size());
    for (auto m : best) out.sets.push_back(ElementSet(m));
    return out;
}

}  // namespace setspectra

#endif  // SETSPECTRA_CORE_HPP
