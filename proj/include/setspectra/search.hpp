#ifndef SETSPECTRA_SEARCH_HPP
#define SETSPECTRA_SEARCH_HPP

#include <deque>
#include <mutex>
#include <set>
#include <thread>

#include "core.hpp"
#include "spectrum.hpp"
#include "transversal.hpp"

namespace setspectra {

// ---------------------------------------------------------------------------
// Branching process (exact rational weights)
// ---------------------------------------------------------------------------

struct WeightedSequence {
    std::vector<int> elems;  // ordered, distinct
    Rational weight;
    ElementSet underlying;
};

struct LevelBoundCheck {
    int level = 0;
    BigCount level_size;  // |B^(l)|
    BigCount bound;       // t * l * k^(l-2)
    bool pass = false;
};

struct BranchingOutcome {
    std::vector<WeightedSequence> final_sequences;
    std::map<std::uint64_t, std::size_t> covered;  // B^(l) member -> witness index
    Rational total_weight;
    Rational min_weight_at_level;  // min weight among sequences with |S| = l
    Rational weight_floor;         // 1 / (t * l * k^(l-2))
    LevelBoundCheck bound_check;
};

struct BranchingOptions {
    std::uint64_t sequence_budget = 5'000'000;
};

namespace detail {

/// Deterministic choice among basis members disjoint from `avoid`:
/// smallest size first, colex-least tie-break. `max_size` restricts stage 1.
inline std::optional<ElementSet> pick_disjoint(const SetFamily& basis, ElementSet avoid,
                                               int max_size) {
    std::optional<ElementSet> best;
    for (const auto& b : basis.sets) {
        if (b.intersects(avoid) || b.size() > max_size) continue;
        if (!best || b.size() < best->size() ||
            (b.size() == best->size() && b < *best))
            best = b;
    }
    return best;
}

}  // namespace detail

/// The weighted sequence-splitting process certifying |B^(l)| <= t*l*k^(l-2):
/// start from the colex-least minimum-size basis member, split weight evenly
/// at every replacement, run until every sequence hits every basis member.
/// All stated guarantees are re-verified on the outcome; a failure is a
/// consistency_error.
inline BranchingOutcome branching_process(const TransversalBasis& b, int k, int l,
                                          const BranchingOptions& opts = {}) {
    if (b.t < 2) throw contract_error("branching_process: requires t >= 2");
    if (l < 2 || l > k) throw contract_error("branching_process: requires 2 <= l <= k");
    if (covering_number(level_upto(b.basis, l)) < 2)
        throw contract_error("branching_process: requires tau(B^(<=l)) >= 2");

    // B_1: colex-least among minimum-size members
    ElementSet b1;
    bool have = false;
    for (const auto& s : b.basis.sets)
        if (s.size() == b.t && (!have || s < b1)) { b1 = s; have = true; }

    std::deque<WeightedSequence> live;
    for (int y : b1.elements()) {
        WeightedSequence s;
        s.elems = {y};
        s.weight = Rational(1, b.t);
        s.underlying = ElementSet::single(y);
        live.push_back(std::move(s));
    }

    // Stage 1: replace each 1-sequence using a member of size <= l avoiding it.
    std::deque<WeightedSequence> stage2;
    for (const auto& s : live) {
        auto chosen = detail::pick_disjoint(b.basis, s.underlying, l);
        if (!chosen)
            throw consistency_error("branching_process: no B(y1) of size <= l despite tau >= 2");
        for (int y : chosen->elements()) {
            WeightedSequence t = s;
            t.elems.push_back(y);
            t.underlying.add(y);
            t.weight = s.weight / chosen->size();
            stage2.push_back(std::move(t));
        }
    }
    live = std::move(stage2);

    // Subsequent stages: queue in creation order, any disjoint member allowed.
    BranchingOutcome out;
    std::uint64_t processed = 0;
    while (!live.empty()) {
        WeightedSequence s = std::move(live.front());
        live.pop_front();
        if (++processed > opts.sequence_budget)
            throw budget_error("branching_process: sequence budget exceeded");
        auto chosen = detail::pick_disjoint(b.basis, s.underlying, k);
        if (!chosen) {
            out.final_sequences.push_back(std::move(s));
            continue;
        }
        for (int y : chosen->elements()) {
            WeightedSequence t = s;
            t.elems.push_back(y);
            t.underlying.add(y);
            t.weight = s.weight / chosen->size();
            live.push_back(std::move(t));
        }
    }

    // Verification block: total weight, Claim-2.4 coverage, weight floor, Eq. (2.2).
    out.total_weight = 0;
    for (const auto& s : out.final_sequences) out.total_weight += s.weight;
    if (out.total_weight != 1)
        throw consistency_error("branching_process: total weight != 1");

    const SetFamily bl = level(b.basis, l);
    for (std::size_t i = 0; i < out.final_sequences.size(); ++i) {
        const auto& s = out.final_sequences[i];
        if (s.underlying.size() == l && bl.contains(s.underlying))
            out.covered.try_emplace(s.underlying.bits, i);
    }
    for (const auto& m : bl.sets)
        if (!out.covered.count(m.bits))
            throw consistency_error("branching_process: " + m.to_string() +
                                    " in B^(l) not covered by any sequence");

    BigCount pw = 1;
    for (int i = 0; i < l - 2; ++i) pw *= k;
    const BigCount cap = BigCount(b.t) * l * pw;
    out.weight_floor = Rational(1, cap);
    out.min_weight_at_level = 1;
    bool any_at_level = false;
    for (const auto& s : out.final_sequences) {
        if (s.underlying.size() != l) continue;
        any_at_level = true;
        if (s.weight < out.min_weight_at_level) out.min_weight_at_level = s.weight;
        if (s.weight < out.weight_floor)
            throw consistency_error("branching_process: sequence weight below 1/(t*l*k^(l-2))");
    }
    if (!any_at_level) out.min_weight_at_level = 0;

    out.bound_check.level = l;
    out.bound_check.level_size = bl.size();
    out.bound_check.bound = cap;
    out.bound_check.pass = out.bound_check.level_size <= cap;
    if (!out.bound_check.pass)
        throw consistency_error("branching_process: |B^(l)| exceeds t*l*k^(l-2)");
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive maximizer search (maximal cliques of the intersection graph)
// ---------------------------------------------------------------------------

struct SearchLimits {
    std::uint64_t max_vertices = 100;     // guard on C(n,k)
    std::uint64_t max_cliques = 5'000'000;
    int threads = 1;
};

struct SearchResult {
    BigCount best_count;
    std::vector<SetFamily> witnesses;  // canonical forms, one per iso class
    std::uint64_t families_enumerated = 0;
    std::uint64_t iso_classes = 0;
    bool exhaustive = true;
};

namespace detail {

// fixed-capacity vertex bitset for the clique search (<= 128 vertices)
struct VSet {
    std::uint64_t w[2] = {0, 0};
    bool empty() const { return (w[0] | w[1]) == 0; }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    int count() const { return std::popcount(w[0]) + std::popcount(w[1]); }
    VSet operator&(const VSet& o) const {
        VSet r;
        r.w[0] = w[0] & o.w[0];
        r.w[1] = w[1] & o.w[1];
        return r;
    }
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (int word = 0; word < 2; ++word)
            for (std::uint64_t m = w[word]; m;) {
                int b = std::countr_zero(m);
                fn(word * 64 + b);
                m &= m - 1;
            }
    }
};

struct CliqueContext {
    const std::vector<ElementSet>* verts;
    const std::vector<VSet>* adj;
    std::uint64_t budget;
    std::uint64_t emitted = 0;
    bool truncated = false;
};

template <typename Emit>
void bron_kerbosch(CliqueContext& ctx, std::vector<int>& r, VSet p, VSet x, Emit&& emit) {
    if (ctx.truncated) return;
    if (p.empty() && x.empty()) {
        if (++ctx.emitted > ctx.budget) {
            ctx.truncated = true;
            return;
        }
        emit(r);
        return;
    }
    // pivot: vertex of P|X maximizing |P & N(u)|
    int pivot = -1, best = -1;
    auto consider = [&](int u) {
        int c = (p & (*ctx.adj)[u]).count();
        if (c > best) { best = c; pivot = u; }
    };
    p.for_each(consider);
    x.for_each(consider);

    std::vector<int> order;
    p.for_each([&](int v) {
        if (pivot < 0 || !(*ctx.adj)[pivot].test(v)) order.push_back(v);
    });
    for (int v : order) {
        r.push_back(v);
        bron_kerbosch(ctx, r, p & (*ctx.adj)[v], x & (*ctx.adj)[v], emit);
        r.pop_back();
        p.reset(v);
        x.set(v);
    }
}

}  // namespace detail

/// Enumerates every maximal intersecting k-uniform family on [n] (maximal
/// cliques of the intersection graph, pivoting enumeration in colex vertex
/// order), tracking max |I(F)| and the canonical forms of all maximizers.
/// Maximizing over maximal families suffices because I is monotone under
/// inclusion. Deterministic for any thread count.
inline SearchResult exhaustive_max_spectrum(int n, int k, const SearchLimits& limits = {}) {
    if (n <= 2 * k) throw contract_error("exhaustive_max_spectrum: requires n > 2k");
    std::vector<ElementSet> verts;
    for_each_k_subset(n, k, [&](ElementSet s) { verts.push_back(s); });
    if (verts.size() > limits.max_vertices || verts.size() > 128)
        throw capacity_error("exhaustive_max_spectrum: C(n,k) = " +
                             std::to_string(verts.size()) + " exceeds vertex guard");
    const int v = static_cast<int>(verts.size());
    std::vector<detail::VSet> adj(v);
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j)
            if (i != j && verts[i].intersects(verts[j])) adj[i].set(j);

    struct Partial {
        std::uint64_t best = 0;
        std::set<std::vector<std::uint64_t>> canon;  // canonical witnesses at best
        std::uint64_t enumerated = 0;
        bool truncated = false;
    };

    auto spectrum_of = [&](const std::vector<int>& clique) {
        std::vector<std::uint64_t> inter;
        for (std::size_t i = 0; i < clique.size(); ++i)
            for (std::size_t j = i + 1; j < clique.size(); ++j)
                inter.push_back(verts[clique[i]].bits & verts[clique[j]].bits);
        std::sort(inter.begin(), inter.end());
        inter.erase(std::unique(inter.begin(), inter.end()), inter.end());
        return inter.size();
    };
    auto canon_of = [&](const std::vector<int>& clique) {
        SetFamily f(n, k);
        for (int i : clique) f.sets.push_back(verts[i]);
        std::sort(f.sets.begin(), f.sets.end());
        SetFamily c = canonical_form(f);
        std::vector<std::uint64_t> key;
        for (const auto& s : c.sets) key.push_back(s.bits);
        return key;
    };

    const int threads = std::max(1, limits.threads);
    std::vector<Partial> parts(threads);
    auto run_branch = [&](int root, Partial& part) {
        // root-level BK branch: R = {root}, P = later neighbors, X = earlier
        detail::VSet p, x;
        for (int j = 0; j < v; ++j) {
            if (!adj[root].test(j)) continue;
            if (j > root)
                p.set(j);
            else
                x.set(j);
        }
        detail::CliqueContext ctx{&verts, &adj, limits.max_cliques, 0, false};
        std::vector<int> r = {root};
        detail::bron_kerbosch(ctx, r, p, x, [&](const std::vector<int>& clique) {
            ++part.enumerated;
            std::uint64_t c = spectrum_of(clique);
            if (c < part.best) return;
            if (c > part.best) {
                part.best = c;
                part.canon.clear();
            }
            part.canon.insert(canon_of(clique));
        });
        if (ctx.truncated) part.truncated = true;
    };

    if (threads == 1) {
        for (int root = 0; root < v; ++root) run_branch(root, parts[0]);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int root = t; root < v; root += threads) run_branch(root, parts[t]);
            });
        for (auto& th : pool) th.join();
    }

    // deterministic merge: max of bests, union of canonical witness sets
    SearchResult res;
    std::uint64_t best = 0;
    for (const auto& p : parts) best = std::max(best, p.best);
    std::set<std::vector<std::uint64_t>> canon;
    for (const auto& p : parts) {
        res.families_enumerated += p.enumerated;
        if (p.truncated) res.exhaustive = false;
        if (p.best == best) canon.insert(p.canon.begin(), p.canon.end());
    }
    res.best_count = best;
    res.iso_classes = canon.size();
    for (const auto& key : canon) {
        SetFamily f(n, k);
        for (auto m : key) f.sets.push_back(ElementSet(m));
        res.witnesses.push_back(std::move(f));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Crossover scans over the closed forms
// ---------------------------------------------------------------------------

struct CrossoverRow {
    long n;
    BigCount count_p;
    BigCount count_q;
    int sign;  // -1, 0, +1 of count_p - count_q
};

struct CrossoverTable {
    int k, p, q;
    std::vector<CrossoverRow> rows;
    std::optional<long> first_flip;  // least n whose sign differs from the first row
};

inline CrossoverTable crossover_scan(int k, int p, int q, long n_lo, long n_hi) {
    if (p < 1 || p > k || q < 1 || q > k)
        throw contract_error("crossover_scan: requires 1 <= p,q <= k");
    CrossoverTable t{k, p, q, {}, std::nullopt};
    for (long n = n_lo; n <= n_hi; ++n) {
        if (n <= 2 * k) continue;
        CrossoverRow row;
        row.n = n;
        row.count_p = formula_Bp(n, k, p);
        row.count_q = formula_Bp(n, k, q);
        row.sign = row.count_p > row.count_q ? 1 : (row.count_p < row.count_q ? -1 : 0);
        if (!t.rows.empty() && !t.first_flip && row.sign != t.rows.front().sign)
            t.first_flip = n;
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// n = 2k random complementary-pair construction
// ---------------------------------------------------------------------------

namespace detail {

// splitmix64: the fixed, documented seed generator of the external contract
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace detail

/// One k-set from each complementary pair of [2k], chosen by splitmix64 from
/// the seed: pairs are enumerated by their 1-containing representative in
/// colex order, one draw per pair, top bit decides. Always intersecting.
inline SetFamily random_pair_family(int k, std::uint64_t seed) {
    if (k < 2) throw contract_error("random_pair_family: requires k >= 2");
    const int n = 2 * k;
    if (n > kMaxGround) throw capacity_error("random_pair_family: 2k > 64");
    SetFamily out(n, k);
    std::uint64_t state = seed;
    const ElementSet full = ElementSet::full(n);
    for_each_k_subset(n, k, [&](ElementSet s) {
        if (!s.contains(1)) return;  // one representative per pair
        const bool take_rep = (detail::splitmix64(state) >> 63) == 0;
        out.sets.push_back(take_rep ? s : full - s);
    });
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

struct ShatterReport {
    bool ok = true;
    std::vector<ElementSet> missing;  // up to max_missing unrealized subsets
};

/// F almost shatters X iff every proper non-empty subset of X occurs as
/// F cap X for some member F.
inline ShatterReport almost_shatters(const SetFamily& f, ElementSet x,
                                     std::size_t max_missing = 16) {
    ShatterReport r;
    const auto elems = x.elements();
    const int m = static_cast<int>(elems.size());
    for (std::uint64_t sub = 1; sub + 1 < (std::uint64_t{1} << m); ++sub) {
        ElementSet a;
        for (int i = 0; i < m; ++i)
            if ((sub >> i) & 1u) a.add(elems[i]);
        bool hit = false;
        for (const auto& s : f.sets)
            if ((s & x) == a) { hit = true; break; }
        if (!hit) {
            r.ok = false;
            if (r.missing.size() < max_missing) r.missing.push_back(a);
        }
    }
    return r;
}

struct CompletenessReport {
    std::map<int, BigCount> realized;   // s -> distinct s-subsets occurring as intersections
    std::map<int, BigCount> possible;   // s -> C(n, s)
    BigCount total_realized;            // sizes 1..k-1
    BigCount bound_excluding_empty;     // sum_{i=1}^{k-1} C(n,i)
    BigCount bound_including_empty;     // sum_{i=0}^{k-1} C(n,i)
    bool matches_excluding_empty = false;
    bool matches_including_empty = false;
};

/// For each size 1..k-1, how many s-subsets of [n] occur as pairwise
/// intersections; totals are compared against both tail-sum expressions
/// (with and without the empty set term).
inline CompletenessReport spectrum_completeness(const SetFamily& f) {
    if (!f.k) throw contract_error("spectrum_completeness: family must be k-uniform");
    const int k = *f.k;
    CompletenessReport r;
    SpectrumOptions opts;
    auto spec = intersection_spectrum(f, opts);
    for (int s = 1; s <= k - 1; ++s) {
        BigCount c = 0;
        for (const auto& m : spec.distinct_intersections.sets)
            if (m.size() == s) ++c;
        r.realized[s] = c;
        r.possible[s] = binomial(f.n, s);
        r.total_realized += c;
    }
    r.bound_excluding_empty = binomial_tail(f.n, k - 1) - 1;
    r.bound_including_empty = binomial_tail(f.n, k - 1);
    r.matches_excluding_empty = r.total_realized == r.bound_excluding_empty;
    r.matches_including_empty = r.total_realized == r.bound_including_empty;
    return r;
}

}  // namespace setspectra

#endif  // SETSPECTRA_SEARCH_HPP
