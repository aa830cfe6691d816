#ifndef SETSPECTRA_SPECTRUM_HPP
#define SETSPECTRA_SPECTRUM_HPP

#include <map>

#include "core.hpp"
#include "transversal.hpp"

namespace setspectra {

struct SpectrumReport {
    SetFamily distinct_intersections;  // I(F)
    BigCount count;                    // |I(F)|
    BigCount tilde_count;              // |I(F) union F|
    std::map<int, BigCount> by_level;  // l -> |I_l| (filled by partitioned_spectrum)
};

struct SpectrumOptions {
    std::uint64_t pair_budget = 100'000'000;  // bound on |F|^2
};

// ---------------------------------------------------------------------------
// Brute-force spectra
// ---------------------------------------------------------------------------

/// I(F): distinct intersections over unordered pairs of distinct members.
inline SpectrumReport intersection_spectrum(const SetFamily& f,
                                            const SpectrumOptions& opts = {}) {
    const std::uint64_t m = f.size();
    if (m * m > opts.pair_budget)
        throw capacity_error("intersection_spectrum: pair budget exceeded");

    std::vector<std::uint64_t> masks;
    masks.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < f.sets.size(); ++i)
        for (std::size_t j = i + 1; j < f.sets.size(); ++j)
            masks.push_back(f.sets[i].bits & f.sets[j].bits);
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

    SpectrumReport r;
    r.distinct_intersections = SetFamily(f.n);
    for (auto mk : masks) r.distinct_intersections.sets.push_back(ElementSet(mk));
    r.count = masks.size();

    // |I(F) union F|, no second pair loop
    std::uint64_t extra = 0;
    for (const auto& s : f.sets)
        if (!std::binary_search(masks.begin(), masks.end(), s.bits)) ++extra;
    r.tilde_count = r.count + extra;
    return r;
}

/// Per-level spectra I_l: each pair's intersection is attributed to the
/// larger of the two members' levels; by_level[l] = |I_l| as a distinct set.
inline SpectrumReport partitioned_spectrum(const SetFamily& f, const TransversalBasis& b,
                                           const SpectrumOptions& opts = {}) {
    SpectrumReport r = intersection_spectrum(f, opts);
    auto decomp = level_decomposition(f, b);
    std::map<std::uint64_t, int> member_level;
    for (const auto& [l, fam] : decomp)
        for (const auto& s : fam.sets) member_level[s.bits] = l;

    std::map<int, std::vector<std::uint64_t>> per_level;
    for (std::size_t i = 0; i < f.sets.size(); ++i)
        for (std::size_t j = i + 1; j < f.sets.size(); ++j) {
            int l = std::max(member_level.at(f.sets[i].bits), member_level.at(f.sets[j].bits));
            per_level[l].push_back(f.sets[i].bits & f.sets[j].bits);
        }
    for (auto& [l, v] : per_level) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        r.by_level[l] = v.size();
    }
    return r;
}

// ---------------------------------------------------------------------------
// Built-in families
// ---------------------------------------------------------------------------

enum class FamilyKind { Star, A, Bp, HM };

struct FamilyRecipe {
    FamilyKind kind = FamilyKind::Star;
    int n = 0;
    int k = 0;
    int p = 0;  // only for Bp
};

/// |B_p(n,k)| = sum_{i>=p} C(2p-1,i) C(n-2p+1,k-i).
inline BigCount family_size_Bp(const BigCount& n, int k, int p) {
    BigCount total = 0;
    for (int i = p; i <= 2 * p - 1; ++i)
        total += binomial(2 * p - 1, i) * binomial(n - (2 * p - 1), k - i);
    return total;
}

/// B_p(n,k) = k-sets with at least p elements of {1,...,2p-1}. B_1 is the
/// full star at 1 and B_2 is the family A. The explicit construction is
/// cross-checked against the closed-form size.
inline SetFamily build_Bp(int n, int k, int p) {
    if (p < 1 || p > k) throw contract_error("build_Bp: requires 1 <= p <= k");
    if (n <= 2 * k) throw contract_error("build_Bp: requires n > 2k");
    ElementSet head;
    for (int e = 1; e <= 2 * p - 1; ++e) head.add(e);
    SetFamily out(n, k);
    for_each_k_subset(n, k, [&](ElementSet h) {
        if ((h & head).size() >= p) out.sets.push_back(h);
    });
    if (BigCount(out.size()) != family_size_Bp(n, k, p))
        throw consistency_error("build_Bp: size mismatch with closed form");
    return out;
}

inline SetFamily build_family(const FamilyRecipe& r) {
    switch (r.kind) {
        case FamilyKind::Star: return build_Bp(r.n, r.k, 1);
        case FamilyKind::A: return build_Bp(r.n, r.k, 2);
        case FamilyKind::Bp: return build_Bp(r.n, r.k, r.p);
        case FamilyKind::HM: return hilton_milner(r.n, r.k);
    }
    throw contract_error("build_family: unknown kind");
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// |I(S_x)| = sum_{0<=l<=k-2} C(n-1, l).
inline BigCount formula_star(const BigCount& n, int k) {
    return binomial_tail(n - 1, k - 2);
}

/// |I(A)| = 3 sum_{i<=k-2} C(n-3,i) + 3 sum_{i<=k-3} C(n-3,i) + sum_{i<=k-4} C(n-3,i).
inline BigCount formula_A(const BigCount& n, int k) {
    return 3 * binomial_tail(n - 3, k - 2) + 3 * binomial_tail(n - 3, k - 3) +
           binomial_tail(n - 3, k - 4);
}

/// Simplified form: 3 sum_{i<=k-2} C(n-2,i) + sum_{i<=k-4} C(n-3,i).
inline BigCount formula_A_simplified(const BigCount& n, int k) {
    return 3 * binomial_tail(n - 2, k - 2) + binomial_tail(n - 3, k - 4);
}

/// |I(B_p)| = sum_{i=1}^{p-1} C(2p-1,i) sum_{j<=k-p} C(n-2p+1,j)
///          + sum_{i=p}^{2p-1} C(2p-1,i) sum_{j<=k-i-1} C(n-2p+1,j).
inline BigCount formula_Bp(const BigCount& n, int k, int p) {
    if (p < 1 || p > k) throw contract_error("formula_Bp: requires 1 <= p <= k");
    const BigCount m = n - (2 * p - 1);
    BigCount total = 0;
    for (int i = 1; i <= p - 1; ++i)
        total += binomial(2 * p - 1, i) * binomial_tail(m, k - p);
    for (int i = p; i <= 2 * p - 1; ++i)
        total += binomial(2 * p - 1, i) * binomial_tail(m, k - i - 1);
    return total;
}

/// f(n,k,l) = 2^l l^2 k^(l-2) sum_{i<=k-l} C(n,i); upper bound for |I_l|.
inline BigCount bound_f(const BigCount& n, int k, int l) {
    if (l < 2 || l > k) throw contract_error("bound_f: requires 2 <= l <= k");
    BigCount pw = 1;
    for (int i = 0; i < l - 2; ++i) pw *= k;
    return (BigCount(1) << l) * l * l * pw * binomial_tail(n, k - l);
}

/// Intermediate bound of the |I_l| chain: (2^l - 1) |B^(l)| sum_{i<=k-l} C(n,i).
inline BigCount bound_Il(const BigCount& n, int k, int l, const BigCount& level_size) {
    return ((BigCount(1) << l) - 1) * level_size * binomial_tail(n, k - l);
}

// ---------------------------------------------------------------------------
// Star vs A comparison (exact rationals only)
// ---------------------------------------------------------------------------

struct StarVsA {
    BigCount star_count;
    BigCount a_count;
    Rational ratio;            // |I(S_x)| / |I(A)|
    bool two_thirds_ok;        // |I(S_x)| < 2/3 |I(A)|
    Rational refined_bound;    // n / (3(n-k))
    bool refined_ok;           // |I(S_x)| / |I(A)| < n / (3(n-k))
};

inline StarVsA compare_star_vs_A(const BigCount& n, int k) {
    StarVsA r;
    r.star_count = formula_star(n, k);
    r.a_count = formula_A(n, k);
    r.ratio = Rational(r.star_count, r.a_count);
    r.two_thirds_ok = 3 * r.star_count < 2 * r.a_count;
    r.refined_bound = Rational(n, 3 * (n - k));
    r.refined_ok = 3 * (n - k) * r.star_count < n * r.a_count;
    return r;
}

}  // namespace setspectra

#endif  // SETSPECTRA_SPECTRUM_HPP
