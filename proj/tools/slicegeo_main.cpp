// slicegeo: slice geometry of finite-dimensional unit balls, from the shell.
//
// Exit codes: 0 success, 2 validation failure, 3 invariant violation detected
// during checks, 1 anything else. Solver inconclusiveness is reported in-band
// (flags in rows), never as an error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slicegeo/criterion.hpp"
#include "slicegeo/csvio.hpp"
#include "slicegeo/midpoints.hpp"
#include "slicegeo/rng.hpp"
#include "slicegeo/slice.hpp"
#include "slicegeo/space_json.hpp"
#include "slicegeo/stepfn.hpp"

using namespace slicegeo;

namespace {

struct RunConfig {
    std::string out_dir;
    SolverBudget budget;
};

Vec parse_vec(const std::string& text) {
    Vec v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    return v;
}

std::vector<double> parse_reals(const std::string& text) { return parse_vec(text); }

// Integer grids come as "a..b" or a comma list.
std::vector<int> parse_int_grid(const std::string& text) {
    auto dots = text.find("..");
    std::vector<int> out;
    if (dots != std::string::npos) {
        int a = std::stoi(text.substr(0, dots));
        int b = std::stoi(text.substr(dots + 2));
        for (int k = a; k <= b; ++k) out.push_back(k);
        return out;
    }
    for (double v : parse_reals(text)) out.push_back(static_cast<int>(v));
    return out;
}

SpaceSpec load_validated(const std::string& path) {
    SpaceSpec spec = load_space(path);
    auto rep = validate(spec);
    if (!rep.ok) {
        for (const auto& is : rep.issues)
            std::cerr << path << ": " << is.invariant << ": " << is.detail << "\n";
        throw DomainError(Errc::invalid_spec, "space file failed validation: " + path);
    }
    return spec;
}

StepFunction load_stepfn(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::invalid_spec, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return stepfn_from_json(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream out(path);
    if (!out) fail(Errc::invalid_spec, "cannot write " + path);
    out << text;
}

nlohmann::json combination_json(const MidpointCombination& c) {
    nlohmann::json jc;
    jc["alpha"] = c.alpha;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : c.terms)
        terms.push_back({{"weight", t.weight}, {"u", t.u}, {"v", t.v}});
    jc["terms"] = terms;
    return jc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slice geometry toolkit for finite-dimensional normed spaces"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may appear after the subcommand

    RunConfig cfg;
    const char* env_out = std::getenv("SLICEGEO_OUT");
    cfg.out_dir = env_out ? env_out : "out";
    app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", cfg.budget.seed, "deterministic seed")->capture_default_str();
    app.add_option("--threads", cfg.budget.threads, "worker threads")->capture_default_str();
    app.add_option("--samples", cfg.budget.samples, "sphere sample budget")->capture_default_str();
    app.add_option("--starts", cfg.budget.starts, "multi-start budget")->capture_default_str();
    app.add_option("--iterations", cfg.budget.iterations, "iterations per start")
        ->capture_default_str();
    app.add_option("--resolution", cfg.budget.resolution, "oracle/grid resolution")
        ->capture_default_str();
    app.add_option("--margin", cfg.budget.margin, "separation margin")->capture_default_str();

    // ---- space ------------------------------------------------------------
    auto* space_cmd = app.add_subcommand("space", "validate or describe a space file");
    std::string space_file;
    auto* sp_validate = space_cmd->add_subcommand("validate", "check all invariants");
    sp_validate->add_option("file", space_file)->required();
    auto* sp_info = space_cmd->add_subcommand("info", "print a summary");
    sp_info->add_option("file", space_file)->required();

    // ---- slice --------------------------------------------------------------
    auto* slice_cmd = app.add_subcommand("slice", "slice diameters and witnesses");
    std::string sl_space, sl_functional = "1", sl_x0;
    double sl_depth = 0.5, sl_alpha = 2.0, sl_eps = 0.01;
    auto* sl_diam = slice_cmd->add_subcommand("diam", "diameter of one slice");
    sl_diam->add_option("--space", sl_space)->required();
    sl_diam->add_option("--functional", sl_functional, "comma list")->required();
    sl_diam->add_option("--depth", sl_depth)->required();
    auto* sl_min = slice_cmd->add_subcommand("min-diam", "search for the smallest slice");
    sl_min->add_option("--space", sl_space)->required();
    sl_min->add_option("--depth", sl_depth)->required();
    auto* sl_spread = slice_cmd->add_subcommand("witness-spread", "wide pair inside a slice");
    sl_spread->add_option("--space", sl_space)->required();
    sl_spread->add_option("--functional", sl_functional)->required();
    sl_spread->add_option("--depth", sl_depth)->required();
    sl_spread->add_option("--alpha", sl_alpha)->required();
    sl_spread->add_option("--eps", sl_eps)->required();
    auto* sl_sep = slice_cmd->add_subcommand("witness-separate", "separating slice around x0");
    sl_sep->add_option("--space", sl_space)->required();
    sl_sep->add_option("--x0", sl_x0)->required();
    sl_sep->add_option("--alpha", sl_alpha)->required();
    sl_sep->add_option("--eps", sl_eps)->required();

    // ---- cn-alpha / decay / verdict / sequence -------------------------------
    std::string cn_space, cn_ns = "1..4", cn_alphas = "1";
    double seq_alpha = 1.0, seq_eps = 0.1, verdict_theta = 1e-2;
    std::string seq_deltas = "0.05,0.2", seq_surrogate = "frechet";
    std::vector<std::string> seq_spaces;
    int decay_nmax = 4;

    auto* cn_cmd = app.add_subcommand("cn-alpha", "estimate C_n^alpha over a grid");
    cn_cmd->add_option("--space", cn_space)->required();
    cn_cmd->add_option("--alpha", cn_alphas, "comma list of alphas");
    cn_cmd->add_option("--n", cn_ns, "a..b or comma list");

    auto* decay_cmd = app.add_subcommand("decay", "decay profile with isotonic cleanup");
    decay_cmd->add_option("--space", cn_space)->required();
    decay_cmd->add_option("--alphas", cn_alphas, "comma list");
    decay_cmd->add_option("--nmax", decay_nmax);

    auto* verdict_cmd = app.add_subcommand("verdict", "decay-limit verdict for C_n^alpha");
    verdict_cmd->add_option("--space", cn_space)->required();
    verdict_cmd->add_option("--alphas", cn_alphas, "comma list");
    verdict_cmd->add_option("--theta", verdict_theta)->capture_default_str();

    auto* seq_cmd = app.add_subcommand("sequence", "family criterion with a filter surrogate");
    seq_cmd->add_option("--spaces", seq_spaces, "space files")->required()->expected(-1);
    seq_cmd->add_option("--alpha", seq_alpha)->required();
    seq_cmd->add_option("--eps", seq_eps)->required();
    seq_cmd->add_option("--deltas", seq_deltas);
    seq_cmd->add_option("--nmax", decay_nmax);
    seq_cmd->add_option("--surrogate", seq_surrogate, "frechet|density");

    // ---- sandbox --------------------------------------------------------------
    auto* sandbox_cmd = app.add_subcommand("sandbox", "step-function experiments");
    std::string sb_f, sb_g;
    std::vector<std::string> sb_h;
    double sb_eps = 0.1, sb_support = 0.25;
    int sb_count = 1000, sb_probes = 8, sb_n = 4;
    auto* sb_dm = sandbox_cmd->add_subcommand("dm", "convergence-in-measure distance");
    sb_dm->add_option("--f", sb_f)->required();
    sb_dm->add_option("--g", sb_g, "defaults to 0");
    auto* sb_calc = sandbox_cmd->add_subcommand("calculus", "randomized d_m inequality suite");
    sb_calc->add_option("--count", sb_count);
    auto* sb_spikes = sandbox_cmd->add_subcommand("spikes", "spike family and its average");
    sb_spikes->add_option("--support", sb_support, "dyadic 2^-j")->required();
    sb_spikes->add_option("--n", sb_n);
    auto* sb_near = sandbox_cmd->add_subcommand("near-disjoint", "near-disjointness scan");
    sb_near->add_option("--family", sb_h, "step function files")->required()->expected(-1);
    sb_near->add_option("--eps", sb_eps);
    sb_near->add_option("--probes", sb_probes);

    // ---- report --------------------------------------------------------------
    auto* report_cmd = app.add_subcommand("report", "post-process results");
    std::string rp_in;
    auto* rp_plot = report_cmd->add_subcommand("plot-data", "split decay curves for plotting");
    rp_plot->add_option("--in", rp_in, "results.csv path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        ResultsWriter writer;
        const SolverBudget& B = cfg.budget;

        if (*sp_validate) {
            SpaceSpec spec = load_space(space_file);
            auto rep = validate(spec);
            for (const auto& is : rep.issues)
                std::cout << is.invariant << ": " << is.detail << "\n";
            std::cout << (rep.ok ? "valid" : "invalid") << "\n";
            return rep.ok ? 0 : 2;
        }
        if (*sp_info) {
            SpaceSpec spec = load_validated(space_file);
            std::cout << "id: " << spec.id() << "\nkind: " << kind_name(spec.kind)
                      << "\ndim: " << spec.dim
                      << "\npolytopal: " << (is_polytopal(spec) ? "yes" : "no") << "\n";
            if (is_polytopal(spec) && spec.dim <= B.dim_budget) {
                auto geo = ball_geometry(spec, B);
                std::cout << "vertices: " << geo.vertices.size()
                          << "\nfacets: " << geo.facets.size() << "\n";
            }
            return 0;
        }

        if (*sl_diam || *sl_min || *sl_spread || *sl_sep) {
            SpaceSpec spec = load_validated(sl_space);
            if (*sl_diam) {
                Slice s = make_slice(spec, parse_vec(sl_functional), sl_depth);
                auto d = slice_diameter(s, B);
                writer.add({spec.id(), "slice-diam", {}, {}, sl_depth, {}, d.upper, d.lower,
                            d.upper, d.exact, B.seed, B.samples});
                writer.add_witness({spec.id(), "slice-diam", sl_depth, {}, {}, d.lower, d.exact,
                                    concat(d.witness_u, d.witness_v)});
                nlohmann::json j;
                j["functional"] = s.functional;
                j["depth"] = s.depth;
                j["lower"] = d.lower;
                j["upper"] = d.upper;
                j["exact"] = d.exact;
                j["witness_u"] = d.witness_u;
                j["witness_v"] = d.witness_v;
                write_text(cfg.out_dir + "/witness_slice_diam.json", j.dump(2) + "\n");
                std::cout << "diameter in [" << fmt_g12(d.lower) << ", " << fmt_g12(d.upper)
                          << "] exact=" << (d.exact ? "yes" : "no") << "\n";
            } else if (*sl_min) {
                auto r = min_slice_diameter(spec, sl_depth, B);
                writer.add({spec.id(), "slice-min-diam", {}, {}, sl_depth, {}, r.upper, r.lower,
                            r.upper, r.upper_certified, B.seed, B.samples});
                writer.add_witness({spec.id(), "slice-min-diam", sl_depth, {}, {}, r.upper,
                                    r.upper_certified, r.witness_functional});
                std::cout << "min diameter upper " << fmt_g12(r.upper) << " lower "
                          << fmt_g12(r.lower)
                          << (r.lower_resolution_qualified
                                  ? " (grid resolution " + std::to_string(r.resolution) + ")"
                                  : " (heuristic)")
                          << "\n";
            } else if (*sl_spread) {
                Slice s = make_slice(spec, parse_vec(sl_functional), sl_depth);
                auto w = slice_spread_witness(s, sl_alpha, sl_eps, B);
                std::optional<double> val;
                if (w.found) val = w.separation;
                writer.add({spec.id(), "slice-witness-spread", {}, sl_alpha, sl_depth, sl_eps, val,
                            {}, {}, w.found, B.seed, B.samples});
                if (w.found) {
                    writer.add_witness({spec.id(), "slice-witness-spread", sl_depth, sl_alpha,
                                        sl_eps, w.separation, true, concat(w.u, w.v)});
                    std::cout << "pair found, separation " << fmt_g12(w.separation) << "\n";
                } else {
                    std::cout << "not found (inconclusive at this budget)\n";
                }
            } else {
                auto r = separating_slice(spec, parse_vec(sl_x0), sl_alpha, sl_eps, B);
                std::optional<double> depth;
                if (r.separated) depth = r.slice.depth;
                writer.add({spec.id(), "slice-witness-separate", {}, sl_alpha, depth, sl_eps,
                            r.hull_distance_lower, {}, {}, r.separated && r.certified, B.seed,
                            B.samples});
                if (r.separated) {
                    writer.add_witness({spec.id(), "slice-witness-separate", r.slice.depth,
                                        sl_alpha, sl_eps, r.hull_distance_lower, r.certified,
                                        r.slice.functional});
                    std::cout << "separated: slice depth " << fmt_g12(r.slice.depth)
                              << ", hull distance >= " << fmt_g12(r.hull_distance_lower) << "\n";
                } else {
                    std::cout << "not separated: " << r.note << "\n";
                }
            }
            writer.write(cfg.out_dir);
            return 0;
        }

        if (*cn_cmd) {
            SpaceSpec spec = load_validated(cn_space);
            for (double alpha : parse_reals(cn_alphas)) {
                for (int n : parse_int_grid(cn_ns)) {
                    auto est = cn_alpha(spec, n, alpha, B);
                    writer.add({spec.id(), "cn-alpha", n, alpha, {}, {}, est.empirical_value,
                                est.certified_lower, est.empirical_value,
                                est.certified_lower.has_value(), B.seed, est.samples});
                    nlohmann::json j;
                    j["space"] = spec.id();
                    j["n"] = n;
                    j["alpha"] = alpha;
                    j["empirical_value"] = est.empirical_value;
                    if (est.certified_lower) j["certified_lower"] = *est.certified_lower;
                    j["witness_point"] = est.witness_point;
                    j["witness_combination"] = combination_json(est.witness_combination);
                    j["budget"] = {{"samples", est.samples},
                                   {"starts", est.starts},
                                   {"iterations", est.iterations},
                                   {"seed", est.seed}};
                    write_text(cfg.out_dir + "/witness_cn_" + std::to_string(n) + "_" +
                                   fmt_g12(alpha) + ".json",
                               j.dump(2) + "\n");
                }
            }
            writer.write(cfg.out_dir);
            return 0;
        }

        if (*decay_cmd) {
            SpaceSpec spec = load_validated(cn_space);
            auto p = decay_profile(spec, parse_reals(cn_alphas), decay_nmax, B);
            for (std::size_t ai = 0; ai < p.alphas.size(); ++ai)
                for (std::size_t ni = 0; ni < p.ns.size(); ++ni) {
                    const auto& est = p.estimates[ai][ni];
                    writer.add({spec.id(), "decay", p.ns[ni], p.alphas[ai], {}, {},
                                p.cleaned[ai][ni], est.certified_lower, p.raw[ai][ni],
                                est.certified_lower.has_value(), B.seed, est.samples});
                }
            writer.write(cfg.out_dir);
            return 0;
        }

        if (*verdict_cmd) {
            SpaceSpec spec = load_validated(cn_space);
            auto p = decay_profile(spec, parse_reals(cn_alphas), spec.dim + 1, B);
            auto v = uniform_verdict(p, verdict_theta);
            for (const auto& ev : v.table) {
                std::optional<double> lower;
                if (ev.has_certified_lower) lower = ev.certified_lower;
                writer.add({spec.id(), "verdict", v.stabilized_n, ev.alpha, {}, {},
                            ev.cleaned_value, lower, ev.cleaned_value, ev.has_certified_lower,
                            B.seed, B.samples});
            }
            writer.write(cfg.out_dir);
            auto vj = nlohmann::json::parse(verdict_to_json(v));
            vj["budget"] = {{"seed", B.seed}, {"samples", B.samples}, {"starts", B.starts},
                            {"iterations", B.iterations}, {"resolution", B.resolution}};
            write_text(cfg.out_dir + "/verdict.json", vj.dump(2) + "\n");
            std::cout << verdict_to_text(v);
            return 0;
        }

        if (*seq_cmd) {
            FilterSurrogate surrogate;
            if (seq_surrogate == "density")
                surrogate.mode = FilterSurrogate::Mode::density;
            else if (seq_surrogate != "frechet")
                fail(Errc::invalid_spec, "surrogate must be frechet or density");
            std::vector<DecayProfile> profiles;
            std::vector<std::string> ids;
            for (std::size_t k = 0; k < seq_spaces.size(); ++k) {
                SpaceSpec spec = load_validated(seq_spaces[k]);
                profiles.push_back(decay_profile(spec, {seq_alpha - seq_eps}, decay_nmax,
                                                 B.with_seed(derive_seed(B.seed, 90 + k))));
                ids.push_back(spec.id());
            }
            auto rep =
                sequence_criterion(profiles, seq_alpha, seq_eps, parse_reals(seq_deltas), surrogate);
            for (const auto& row : rep.rows)
                writer.add({"family", "sequence", row.least_n, seq_alpha, {}, seq_eps, row.delta,
                            {}, {}, rep.hypothesis_satisfied, B.seed, B.samples});
            writer.write(cfg.out_dir);
            auto sj = nlohmann::json::parse(sequence_report_to_json(rep, ids));
            sj["budget"] = {{"seed", B.seed}, {"samples", B.samples}, {"starts", B.starts},
                            {"iterations", B.iterations}, {"resolution", B.resolution}};
            write_text(cfg.out_dir + "/sequence.json", sj.dump(2) + "\n");
            std::cout << "hypothesis " << (rep.hypothesis_satisfied ? "satisfied" : "not satisfied")
                      << " on the sampled range\n";
            return 0;
        }

        if (*sb_dm) {
            StepFunction f = load_stepfn(sb_f);
            StepFunction g = sb_g.empty() ? constant_fn(0.0, f.coords) : load_stepfn(sb_g);
            double d = dm(f, g);
            writer.add({"sandbox", "sandbox-dm", {}, {}, {}, {}, d, {}, {}, true, B.seed, 0});
            writer.write(cfg.out_dir);
            std::cout << "dm = " << fmt_g12(d) << "\n";
            return 0;
        }

        if (*sb_calc) {
            Rng rng(B.seed);
            int violations = 0;
            for (int t = 0; t < sb_count; ++t) {
                std::vector<StepFunction> fs;
                for (int k = 0; k < 2; ++k) {
                    StepFunction f;
                    f.coords = 1 + static_cast<int>(rng.index(2));
                    for (int j = 0; j < f.coords; ++j)
                        f.resolutions.push_back(static_cast<int>(rng.index(5)));
                    f.values.resize(f.cell_count());
                    for (auto& v : f.values)
                        v = static_cast<double>(static_cast<long long>(rng.index(65)) - 32) / 8.0;
                    fs.push_back(std::move(f));
                }
                Vec lambdas = {rng.index(9) / 8.0, rng.index(9) / 8.0};
                violations += check_dm_calculus(fs, lambdas).violations;
            }
            writer.add({"sandbox", "sandbox-calculus", sb_count, {}, {}, {},
                        static_cast<double>(violations), {}, {}, violations == 0, B.seed, 0});
            writer.write(cfg.out_dir);
            std::cout << violations << " violations in " << sb_count << " trials\n";
            return violations == 0 ? 0 : 3;
        }

        if (*sb_spikes) {
            auto fam = spike_family(sb_support, sb_n);
            for (int j = 0; j < sb_n; ++j) {
                double to_one = l1_norm(sub_fn(fam[j], one_fn(fam[j].coords)));
                writer.add({"sandbox", "sandbox-spike-norm", j + 1, {}, {}, {}, l1_norm(fam[j]),
                            {}, to_one, true, B.seed, 0});
            }
            auto d = spike_average_deficit(sb_support, sb_n);
            writer.add({"sandbox", "sandbox-spike-deficit", sb_n, {}, {}, {}, d.value,
                        d.oracle_value, d.grid_used ? d.grid_value : d.oracle_value, d.grid_used,
                        B.seed, 0});
            writer.write(cfg.out_dir);
            std::cout << "average deficit " << fmt_g12(d.value)
                      << (d.grid_used ? " (grid + oracle)" : " (oracle only)") << "\n";
            return 0;
        }

        if (*sb_near) {
            std::vector<StepFunction> H;
            for (const auto& path : sb_h) H.push_back(load_stepfn(path));
            auto rep = near_disjointness_scan(H, sb_eps, sb_probes, B.seed);
            writer.add({"sandbox", "sandbox-near-disjoint", sb_probes, {}, {}, sb_eps, rep.delta,
                        {}, {}, rep.all_within_eps, B.seed, 0});
            writer.write(cfg.out_dir);
            std::cout << "delta = " << fmt_g12(rep.delta)
                      << (rep.all_within_eps ? " (all probes within eps)"
                                             : " (family not friendly at this eps)")
                      << "\n";
            return 0;
        }

        if (*rp_plot) {
            std::ifstream in(rp_in);
            if (!in) fail(Errc::invalid_spec, "cannot open " + rp_in);
            std::filesystem::create_directories(cfg.out_dir);
            std::string line;
            std::map<std::string, std::vector<std::string>> groups;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#' || line.rfind("space_id,", 0) == 0) continue;
                std::stringstream ss(line);
                std::vector<std::string> cols;
                std::string col;
                while (std::getline(ss, col, ',')) cols.push_back(col);
                if (cols.size() < 12) continue;
                if (cols[1] != "cn-alpha" && cols[1] != "decay") continue;
                groups["curve_" + cols[0] + "_alpha" + cols[3] + ".csv"].push_back(
                    cols[2] + "," + cols[6] + "," + cols[7] + "," + cols[9]);
            }
            for (auto& [name, rows] : groups) {
                std::ofstream out(cfg.out_dir + "/" + name);
                out << "n,value,lower,certified\n";
                for (const auto& r : rows) out << r << "\n";
            }
            std::cout << "wrote " << groups.size() << " curve files\n";
            return 0;
        }
    } catch (const DomainError& e) {
        std::cerr << e.what() << "\n";
        return (e.code() == Errc::invariant_violation) ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
