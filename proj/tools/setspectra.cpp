// setspectra: exact intersection-spectrum toolkit for intersecting k-uniform
// families. Subcommands: spectrum, formula, basis, branch, search, scan,
// random2k, verify-all. All counts are exact big integers, serialized as
// decimal strings in JSON.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "setspectra/acceptance.hpp"
#include "setspectra/io.hpp"

namespace ss = setspectra;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct CommonArgs {
    std::string builtin;  // star|A|Bp|HM
    std::string input;
    std::string output;
    std::string format = "json";
    int n = 0, k = 0, p = 0, ell = 0;
    std::uint64_t seed = 0;
    int threads = 1;
};

std::uint64_t budget_from_env(std::uint64_t fallback) {
    if (const char* v = std::getenv("SETSPECTRA_BUDGET")) {
        char* end = nullptr;
        const auto parsed = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && parsed > 0) return parsed;
    }
    return fallback;
}

ss::SetFamily load_family(const CommonArgs& a) {
    if (!a.builtin.empty()) {
        ss::FamilyRecipe r;
        r.n = a.n;
        r.k = a.k;
        r.p = a.p;
        if (a.builtin == "star")
            r.kind = ss::FamilyKind::Star;
        else if (a.builtin == "A")
            r.kind = ss::FamilyKind::A;
        else if (a.builtin == "Bp")
            r.kind = ss::FamilyKind::Bp;
        else if (a.builtin == "HM")
            r.kind = ss::FamilyKind::HM;
        else
            throw CLI::ValidationError("--builtin must be star|A|Bp|HM");
        return ss::build_family(r);
    }
    if (a.input.empty())
        throw CLI::ValidationError("either --builtin or --in is required");
    std::ifstream in(a.input);
    if (!in) throw ss::contract_error("cannot open " + a.input);
    ss::json j;
    in >> j;
    return ss::family_from_json(j);
}

void emit(const CommonArgs& a, const std::string& text) {
    if (a.output.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(a.output);
        if (!out) throw ss::contract_error("cannot open " + a.output + " for writing");
        out << text << "\n";
    }
}

void emit_json(const CommonArgs& a, const ss::json& j) { emit(a, j.dump()); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact intersection spectra of intersecting k-uniform families"};
    app.require_subcommand(1);
    CommonArgs a;

    auto add_family_opts = [&](CLI::App* cmd) {
        cmd->add_option("--builtin", a.builtin, "star|A|Bp|HM fixture");
        cmd->add_option("--in", a.input, "family JSON file");
        cmd->add_option("--n", a.n, "ground-set size");
        cmd->add_option("--k", a.k, "uniformity");
        cmd->add_option("--p", a.p, "p for Bp");
    };
    auto add_out_opts = [&](CLI::App* cmd) {
        cmd->add_option("--out", a.output, "output path (default stdout)");
        cmd->add_option("--format", a.format, "json|csv");
    };

    auto* spectrum = app.add_subcommand("spectrum", "I(F) by brute force");
    bool with_levels = false;
    add_family_opts(spectrum);
    add_out_opts(spectrum);
    spectrum->add_flag("--levels", with_levels, "also compute per-level spectra I_l");

    auto* formula = app.add_subcommand("formula", "closed-form counts");
    std::string which = "A";
    formula->add_option("--which", which, "star|A|Bp|compare|tilde-compare");
    formula->add_option("--n", a.n, "ground-set size")->required();
    formula->add_option("--k", a.k, "uniformity")->required();
    formula->add_option("--p", a.p, "p for Bp");
    add_out_opts(formula);

    auto* basis = app.add_subcommand("basis", "minimal transversal basis B(F)");
    add_family_opts(basis);
    add_out_opts(basis);

    auto* branch = app.add_subcommand("branch", "branching process certificate");
    add_family_opts(branch);
    add_out_opts(branch);
    branch->add_option("--ell", a.ell, "level l (2 <= l <= k)")->required();

    auto* search = app.add_subcommand("search", "exhaustive maximizer search");
    search->add_option("--n", a.n, "ground-set size")->required();
    search->add_option("--k", a.k, "uniformity")->required();
    search->add_option("--threads", a.threads, "worker threads");
    add_out_opts(search);

    auto* scan = app.add_subcommand("scan", "crossover scan of |I(B_p)| vs |I(B_q)|");
    int q = 2;
    long n_lo = 0, n_hi = 0;
    scan->add_option("--k", a.k, "uniformity")->required();
    scan->add_option("--p", a.p, "first index")->required();
    scan->add_option("--q", q, "second index");
    scan->add_option("--n-lo", n_lo, "scan start")->required();
    scan->add_option("--n-hi", n_hi, "scan end")->required();
    add_out_opts(scan);

    auto* random2k = app.add_subcommand("random2k", "n=2k complementary-pair family");
    random2k->add_option("--k", a.k, "uniformity")->required();
    random2k->add_option("--seed", a.seed, "64-bit seed")->required();
    add_out_opts(random2k);

    auto* verify = app.add_subcommand("verify-all", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (spectrum->parsed()) {
            auto f = load_family(a);
            ss::SpectrumOptions opts;
            opts.pair_budget = budget_from_env(opts.pair_budget);
            ss::SpectrumReport r;
            if (with_levels) {
                auto b = ss::minimal_transversals(f);
                r = ss::partitioned_spectrum(f, b, opts);
            } else {
                r = ss::intersection_spectrum(f, opts);
            }
            emit_json(a, ss::spectrum_to_json(r));
        } else if (formula->parsed()) {
            ss::json out;
            if (which == "star") {
                out["count"] = ss::big_str(ss::formula_star(a.n, a.k));
            } else if (which == "A") {
                out["count"] = ss::big_str(ss::formula_A(a.n, a.k));
            } else if (which == "Bp") {
                out["count"] = ss::big_str(ss::formula_Bp(a.n, a.k, a.p));
            } else if (which == "compare") {
                auto c = ss::compare_star_vs_A(a.n, a.k);
                out["star"] = ss::big_str(c.star_count);
                out["A"] = ss::big_str(c.a_count);
                out["ratio"] = ss::rat_str(c.ratio);
                out["two_thirds_ok"] = c.two_thirds_ok;
                out["refined_bound"] = ss::rat_str(c.refined_bound);
                out["refined_ok"] = c.refined_ok;
            } else if (which == "tilde-compare") {
                // both readings of the B_2-vs-star comparison: plain I and
                // tilde I (for k-uniform families |tilde I| = |I| + |F|)
                ss::BigCount i_star = ss::formula_star(a.n, a.k);
                ss::BigCount i_a = ss::formula_A(a.n, a.k);
                ss::BigCount ti_star = i_star + ss::family_size_Bp(a.n, a.k, 1);
                ss::BigCount ti_a = i_a + ss::family_size_Bp(a.n, a.k, 2);
                out["I_B2"] = ss::big_str(i_a);
                out["I_star"] = ss::big_str(i_star);
                out["I_B2_gt_I_star"] = i_a > i_star;
                out["tilde_I_B2"] = ss::big_str(ti_a);
                out["tilde_I_star"] = ss::big_str(ti_star);
                out["tilde_I_B2_gt_tilde_I_star"] = ti_a > ti_star;
            } else {
                throw CLI::ValidationError("--which must be star|A|Bp|compare|tilde-compare");
            }
            emit_json(a, out);
        } else if (basis->parsed()) {
            auto f = load_family(a);
            auto b = ss::minimal_transversals(f);
            ss::json out = ss::basis_to_json(b);
            if (ss::level(b.basis, 1).empty()) out["alpha"] = ss::alpha(b);
            emit_json(a, out);
        } else if (branch->parsed()) {
            auto f = load_family(a);
            auto b = ss::minimal_transversals(f);
            auto o = ss::branching_process(b, *f.k, a.ell);
            emit_json(a, ss::branching_to_json(o));
        } else if (search->parsed()) {
            ss::SearchLimits limits;
            limits.threads = a.threads;
            limits.max_cliques = budget_from_env(limits.max_cliques);
            emit_json(a, ss::search_to_json(ss::exhaustive_max_spectrum(a.n, a.k, limits)));
        } else if (scan->parsed()) {
            auto t = ss::crossover_scan(a.k, a.p, q, n_lo, n_hi);
            if (a.format == "csv")
                emit(a, ss::crossover_to_csv(t));
            else
                emit_json(a, ss::crossover_to_json(t));
        } else if (random2k->parsed()) {
            auto f = ss::random_pair_family(a.k, a.seed);
            ss::json out;
            out["family"] = ss::family_to_json(f);
            auto c = ss::spectrum_completeness(f);
            ss::json comp;
            comp["total_realized"] = ss::big_str(c.total_realized);
            comp["bound_excluding_empty"] = ss::big_str(c.bound_excluding_empty);
            comp["bound_including_empty"] = ss::big_str(c.bound_including_empty);
            comp["matches_excluding_empty"] = c.matches_excluding_empty;
            comp["matches_including_empty"] = c.matches_including_empty;
            ss::json realized = ss::json::object();
            for (const auto& [s, cnt] : c.realized) realized[std::to_string(s)] = ss::big_str(cnt);
            comp["realized_by_size"] = std::move(realized);
            out["completeness"] = std::move(comp);
            // fraction of k-subsets X almost shattered
            std::uint64_t shattered = 0, total = 0;
            ss::for_each_k_subset(f.n, a.k, [&](ss::ElementSet x) {
                ++total;
                if (ss::almost_shatters(f, x).ok) ++shattered;
            });
            out["almost_shattered"] = shattered;
            out["k_subsets"] = total;
            emit_json(a, out);
        } else if (verify->parsed()) {
            return ss::print_acceptance(std::cout) ? kExitOk : kExitVerifyFail;
        }
    } catch (const ss::capacity_error& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const ss::budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const ss::consistency_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
