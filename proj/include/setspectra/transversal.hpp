#ifndef SETSPECTRA_TRANSVERSAL_HPP
#define SETSPECTRA_TRANSVERSAL_HPP

#include <cstdint>
#include <map>
#include <optional>

#include "core.hpp"

namespace setspectra {

struct TransversalOptions {
    std::size_t output_cap = 5'000'000;     // transversal family size limit
    std::uint64_t sunflower_budget = 50'000'000;  // backtracking node budget
};

// ---------------------------------------------------------------------------
// T(G): all subsets of size <= k meeting every member
// ---------------------------------------------------------------------------

inline SetFamily transversals(const SetFamily& g, int k,
                              const TransversalOptions& opts = {}) {
    SetFamily out(g.n);
    std::size_t count = 0;
    for (int size = 0; size <= k; ++size) {
        for_each_k_subset(g.n, size, [&](ElementSet t) {
            for (const auto& m : g.sets)
                if (!t.intersects(m)) return;
            if (++count > opts.output_cap)
                throw capacity_error("transversal family exceeds cap after " +
                                     std::to_string(count - 1) + " sets");
            out.sets.push_back(t);
        });
    }
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

// ---------------------------------------------------------------------------
// Levels
// ---------------------------------------------------------------------------

/// G^(l): members of size exactly l.
inline SetFamily level(const SetFamily& g, int l) {
    SetFamily out(g.n);
    for (const auto& s : g.sets)
        if (s.size() == l) out.sets.push_back(s);
    return out;
}

/// B^(<=l): members of size at most l.
inline SetFamily level_upto(const SetFamily& g, int l) {
    SetFamily out(g.n);
    for (const auto& s : g.sets)
        if (s.size() <= l) out.sets.push_back(s);
    return out;
}

// ---------------------------------------------------------------------------
// Covering number (exact, brute force over subsets of the union)
// ---------------------------------------------------------------------------

/// tau(G): minimum size of a set meeting every member; tau(empty) = 0 and
/// a family containing the empty set has no transversal (returns n+1).
inline int covering_number(const SetFamily& g) {
    if (g.empty()) return 0;
    ElementSet uni;
    for (const auto& s : g.sets) {
        if (s.empty()) return g.n + 1;
        uni = uni | s;
    }
    auto elems = uni.elements();
    const int u = static_cast<int>(elems.size());
    for (int size = 1; size <= u; ++size) {
        bool found = false;
        for_each_k_subset(u, size, [&](ElementSet idx) {
            if (found) return;
            ElementSet t;
            for (int i : idx.elements()) t.add(elems[i - 1]);
            for (const auto& m : g.sets)
                if (!t.intersects(m)) return;
            found = true;
        });
        if (found) return size;
    }
    return u;  // unreachable: the union always hits everything
}

// ---------------------------------------------------------------------------
// Saturation
// ---------------------------------------------------------------------------

namespace detail {
inline void require_uniform_intersecting(const SetFamily& f, const char* op) {
    if (!f.k) throw contract_error(std::string(op) + ": family must be k-uniform");
    if (!is_intersecting(f))
        throw contract_error(std::string(op) + ": family is not intersecting");
}
}  // namespace detail

/// F is saturated iff no k-set outside F meets every member
/// (equivalently F = T(F)^(k)). Returns a violating k-set if any.
inline std::optional<ElementSet> saturation_violation(const SetFamily& f) {
    detail::require_uniform_intersecting(f, "is_saturated");
    std::optional<ElementSet> bad;
    for_each_k_subset(f.n, *f.k, [&](ElementSet h) {
        if (bad) return;
        if (f.contains(h)) return;
        for (const auto& m : f.sets)
            if (!h.intersects(m)) return;
        bad = h;
    });
    return bad;
}

inline bool is_saturated(const SetFamily& f) {
    return !saturation_violation(f).has_value();
}

/// Greedy completion: scan all k-sets in colex order, add each that keeps the
/// family intersecting. Deterministic; output is saturated.
inline SetFamily saturate(const SetFamily& f) {
    if (f.empty())
        throw contract_error("saturate: empty family (completion undefined)");
    detail::require_uniform_intersecting(f, "saturate");
    SetFamily out = f;
    for_each_k_subset(f.n, *f.k, [&](ElementSet h) {
        for (const auto& m : out.sets)
            if (!h.intersects(m)) return;
        out.add_unique(h);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Sunflowers
// ---------------------------------------------------------------------------

struct Sunflower {
    ElementSet center;
    SetFamily petals;
};

/// Searches for a sunflower of size p among members of d. Candidate centers
/// are the distinct pairwise intersections; for each center the petals are an
/// exact disjoint-residual packing found by backtracking (colex-least witness
/// under the deterministic search order). Exceeding the node budget raises
/// budget_error rather than returning an approximate answer.
inline std::optional<Sunflower> find_sunflower(const SetFamily& d, int p,
                                               const TransversalOptions& opts = {}) {
    if (p < 1) throw contract_error("find_sunflower: p must be >= 1");
    if (static_cast<std::size_t>(p) > d.size()) return std::nullopt;
    if (p == 1) {
        Sunflower s;
        s.center = d.sets.front();
        s.petals = SetFamily(d.n);
        s.petals.sets.push_back(d.sets.front());
        return s;
    }

    std::vector<ElementSet> centers;
    for (std::size_t i = 0; i < d.sets.size(); ++i)
        for (std::size_t j = i + 1; j < d.sets.size(); ++j)
            centers.push_back(d.sets[i] & d.sets[j]);
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());

    std::uint64_t nodes = 0;
    for (ElementSet c : centers) {
        // petals: members strictly containing c, residuals pairwise disjoint
        std::vector<ElementSet> cand, residual;
        for (const auto& m : d.sets) {
            if (c.subset_of(m) && m != c) {
                cand.push_back(m);
                residual.push_back(m - c);
            }
        }
        if (static_cast<int>(cand.size()) < p) continue;

        std::vector<std::size_t> chosen;
        auto dfs = [&](auto&& self, std::size_t start, ElementSet used) -> bool {
            if (static_cast<int>(chosen.size()) == p) return true;
            if (cand.size() - start < p - chosen.size()) return false;
            for (std::size_t i = start; i < cand.size(); ++i) {
                if (++nodes > opts.sunflower_budget)
                    throw budget_error("find_sunflower: node budget exceeded");
                if (residual[i].intersects(used)) continue;
                chosen.push_back(i);
                if (self(self, i + 1, used | residual[i])) return true;
                chosen.pop_back();
            }
            return false;
        };
        if (dfs(dfs, 0, ElementSet{})) {
            Sunflower s;
            s.center = c;
            s.petals = SetFamily(d.n);
            for (std::size_t i : chosen) s.petals.sets.push_back(cand[i]);
            return s;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Minimal transversal basis B(F)
// ---------------------------------------------------------------------------

struct TransversalBasis {
    SetFamily basis;
    int t = 0;    // min member size
    int tau = 0;  // covering number of the basis (= t for saturated F)
    std::map<int, SetFamily> levels;  // l -> B^(l), t <= l <= k
};

namespace detail {

inline std::vector<std::uint64_t> minimal_filter(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (i != j && (v[j] & ~v[i]) == 0) {  // v[j] proper subset (v unique)
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(v[i]);
    }
    return out;
}

}  // namespace detail

/// Berge-style incremental computation of the minimal members of T(F):
/// process members one at a time, extending each current minimal transversal
/// that misses the new member by one of its elements, truncating above size k
/// and re-filtering minimality.
inline SetFamily minimal_transversals_berge(const SetFamily& f, int k) {
    std::vector<std::uint64_t> trans = {0};
    for (const auto& m : f.sets) {
        std::vector<std::uint64_t> next;
        for (std::uint64_t t : trans) {
            if (t & m.bits) {
                next.push_back(t);
            } else if (std::popcount(t) < k) {
                for (std::uint64_t mm = m.bits; mm;) {
                    int b = std::countr_zero(mm);
                    next.push_back(t | (std::uint64_t{1} << b));
                    mm &= mm - 1;
                }
            }
        }
        trans = detail::minimal_filter(std::move(next));
    }
    SetFamily out(f.n);
    for (std::uint64_t t : trans) out.sets.push_back(ElementSet(t));
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

/// Brute-force oracle: enumerate all subsets of size <= k, keep transversals,
/// keep containment-minimal ones. Intended for n <= 16.
inline SetFamily minimal_transversals_brute(const SetFamily& f, int k) {
    if (f.n > 16) throw capacity_error("brute oracle limited to n <= 16");
    SetFamily all = transversals(f, k);
    std::vector<std::uint64_t> masks;
    for (const auto& s : all.sets) masks.push_back(s.bits);
    SetFamily out(f.n);
    for (std::uint64_t t : detail::minimal_filter(std::move(masks)))
        out.sets.push_back(ElementSet(t));
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

/// B(F) for a saturated intersecting family, with every guarantee of the
/// underlying structure theory verified: basis is an intersecting antichain,
/// F is exactly the k-sets containing a basis set, the basis has no sunflower
/// of size k+1, and tau(basis) = t. A failed guarantee is a consistency_error.
inline TransversalBasis minimal_transversals(const SetFamily& f,
                                             const TransversalOptions& opts = {}) {
    detail::require_uniform_intersecting(f, "minimal_transversals");
    if (auto bad = saturation_violation(f))
        throw contract_error("minimal_transversals: family is not saturated; " +
                             bad->to_string() + " can be added");
    const int k = *f.k;

    TransversalBasis tb;
    tb.basis = minimal_transversals_berge(f, k);
    if (tb.basis.empty())
        throw consistency_error("empty transversal basis");

    tb.t = k;
    for (const auto& b : tb.basis.sets) tb.t = std::min(tb.t, b.size());
    tb.tau = covering_number(tb.basis);

    if (!is_intersecting(tb.basis) || !is_antichain(tb.basis))
        throw consistency_error("basis is not an intersecting antichain");
    if (tb.tau != tb.t)
        throw consistency_error("tau(basis) != t");

    // reconstruction: the k-sets containing some basis set are exactly F
    SetFamily rebuilt(f.n, k);
    for_each_k_subset(f.n, k, [&](ElementSet h) {
        for (const auto& b : tb.basis.sets)
            if (b.subset_of(h)) {
                rebuilt.sets.push_back(h);
                return;
            }
    });
    if (!(rebuilt == f))
        throw consistency_error("basis does not regenerate the family");

    if (find_sunflower(tb.basis, k + 1, opts))
        throw consistency_error("basis contains a sunflower of size k+1");

    for (int l = tb.t; l <= k; ++l) tb.levels[l] = level(tb.basis, l);
    return tb;
}

// ---------------------------------------------------------------------------
// Level decomposition of F along its basis
// ---------------------------------------------------------------------------

/// Assigns each member F to level max{|B| : B in basis, B subset of F}.
inline std::map<int, SetFamily> level_decomposition(const SetFamily& f,
                                                    const TransversalBasis& b) {
    std::map<int, SetFamily> out;
    for (const auto& m : f.sets) {
        int best = -1;
        for (const auto& bs : b.basis.sets)
            if (bs.subset_of(m)) best = std::max(best, bs.size());
        if (best < 0)
            throw contract_error("member " + m.to_string() + " contains no basis set");
        auto [it, inserted] = out.try_emplace(best, SetFamily(f.n));
        it->second.sets.push_back(m);
    }
    return out;
}

/// Smallest alpha with tau(B^(<=alpha)) >= 2; requires a non-star family
/// (B^(1) empty). tau(empty) = 0, so empty prefixes never qualify.
inline int alpha(const TransversalBasis& b) {
    if (!level(b.basis, 1).empty())
        throw contract_error("alpha: star has no alpha (B^(1) nonempty)");
    int k_max = 0;
    for (const auto& s : b.basis.sets) k_max = std::max(k_max, s.size());
    for (int a = 1; a <= k_max; ++a)
        if (covering_number(level_upto(b.basis, a)) >= 2) return a;
    throw consistency_error("alpha: no prefix with tau >= 2 (t must be >= 2)");
}

// ---------------------------------------------------------------------------
// Hilton--Milner fixture
// ---------------------------------------------------------------------------

/// HM(n,k) := {F : 1 in F, F meets {2,...,k+1}} union {{2,...,k+1}}.
/// Standard saturated non-star test family.
inline SetFamily hilton_milner(int n, int k) {
    if (n <= 2 * k) throw contract_error("hilton_milner requires n > 2k");
    SetFamily out(n, k);
    ElementSet tail;
    for (int e = 2; e <= k + 1; ++e) tail.add(e);
    for_each_k_subset(n, k, [&](ElementSet h) {
        if (h.contains(1) && h.intersects(tail)) out.sets.push_back(h);
    });
    out.add_unique(tail);
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

}  // namespace setspectra

#endif  // SETSPECTRA_TRANSVERSAL_HPP
