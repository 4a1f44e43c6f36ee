#include "slicegeo/criterion.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "slicegeo/parallel.hpp"
#include "slicegeo/rng.hpp"

namespace slicegeo {

DecayProfile decay_profile(const SpaceSpec& spec, const std::vector<double>& alphas, int nmax,
                           const SolverBudget& budget) {
    if (nmax < 2) fail(Errc::invalid_point, "nmax must be >= 2");
    for (double a : alphas)
        if (!(a > 0.0) || !(a < 2.0 + 1e-12))
            fail(Errc::invalid_point, "alphas must lie in (0, 2]");
    DecayProfile p;
    p.space_id = spec.id();
    p.dim = spec.dim;
    p.alphas = alphas;
    for (int n = 1; n <= nmax; ++n) p.ns.push_back(n);

    std::size_t cells = alphas.size() * p.ns.size();
    std::vector<CnAlphaEstimate> flat(cells);
    parallel_for(cells, budget.threads, [&](std::size_t c) {
        std::size_t ai = c / p.ns.size();
        std::size_t ni = c % p.ns.size();
        SolverBudget b = budget.with_seed(derive_seed(budget.seed, 17 + c));
        b.threads = 1;  // cells are already parallel
        flat[c] = cn_alpha(spec, p.ns[ni], alphas[ai], b);
    });

    p.estimates.resize(alphas.size());
    p.raw.resize(alphas.size());
    p.cleaned.resize(alphas.size());
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        double running = std::numeric_limits<double>::infinity();
        for (std::size_t ni = 0; ni < p.ns.size(); ++ni) {
            const auto& est = flat[ai * p.ns.size() + ni];
            p.estimates[ai].push_back(est);
            p.raw[ai].push_back(est.empirical_value);
            running = std::min(running, est.empirical_value);
            p.cleaned[ai].push_back(running);
        }
    }
    return p;
}

const char* verdict_name(VerdictKind v) {
    switch (v) {
        case VerdictKind::certified_failure: return "certified_failure";
        case VerdictKind::consistent_with_uniform: return "consistent_with_uniform";
        case VerdictKind::inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict uniform_verdict(const DecayProfile& profile, double theta) {
    Verdict v;
    v.theta = theta;
    v.space_id = profile.space_id;
    int want_n = profile.dim + 1;
    int col = -1;
    for (std::size_t ni = 0; ni < profile.ns.size(); ++ni)
        if (profile.ns[ni] == want_n) col = static_cast<int>(ni);
    if (col < 0)
        fail(Errc::missing_stabilized_column,
             "profile lacks the n = dim+1 = " + std::to_string(want_n) + " column");
    v.stabilized_n = want_n;

    bool any_certified_above = false;
    bool all_below = true;
    for (std::size_t ai = 0; ai < profile.alphas.size(); ++ai) {
        VerdictEvidence ev;
        ev.alpha = profile.alphas[ai];
        ev.cleaned_value = profile.cleaned[ai][col];
        const auto& est = profile.estimates[ai][col];
        if (est.certified_lower.has_value()) {
            ev.has_certified_lower = true;
            ev.certified_lower = *est.certified_lower;
            if (ev.certified_lower > theta) any_certified_above = true;
        }
        if (!(ev.cleaned_value < theta)) all_below = false;
        v.table.push_back(ev);
    }
    if (any_certified_above)
        v.kind = VerdictKind::certified_failure;
    else if (all_below)
        v.kind = VerdictKind::consistent_with_uniform;
    else
        v.kind = VerdictKind::inconclusive;
    return v;
}

const char* surrogate_name(FilterSurrogate::Mode m) {
    return m == FilterSurrogate::Mode::frechet ? "frechet" : "density";
}

bool surrogate_large(const FilterSurrogate& s, const std::vector<bool>& member) {
    if (member.empty()) return false;
    if (s.mode == FilterSurrogate::Mode::frechet) {
        // Cofiniteness shadowed on a finite window: the set must contain the
        // terminal run after its last missing index, in particular the end.
        return member.back();
    }
    std::size_t count = 0;
    for (bool b : member) count += b ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(member.size()) >= s.density_cut;
}

SequenceReport sequence_criterion(const std::vector<DecayProfile>& profiles, double alpha,
                                  double eps, const std::vector<double>& deltas,
                                  const FilterSurrogate& surrogate) {
    if (profiles.empty()) fail(Errc::grid_mismatch, "no profiles given");
    if (!(eps > 0.0) || !(eps < alpha)) fail(Errc::invalid_point, "need 0 < eps < alpha");
    const double level = alpha - eps;

    const auto& ns = profiles[0].ns;
    std::vector<int> acol(profiles.size(), -1);
    for (std::size_t k = 0; k < profiles.size(); ++k) {
        if (profiles[k].ns != ns) fail(Errc::grid_mismatch, "profiles disagree on the n grid");
        for (std::size_t ai = 0; ai < profiles[k].alphas.size(); ++ai)
            if (std::abs(profiles[k].alphas[ai] - level) <= 1e-12) acol[k] = static_cast<int>(ai);
        if (acol[k] < 0)
            fail(Errc::grid_mismatch, "profile " + profiles[k].space_id +
                                          " lacks the alpha - eps level in its grid");
    }

    SequenceReport rep;
    rep.alpha = alpha;
    rep.eps = eps;
    rep.surrogate = surrogate;
    rep.ns = ns;
    rep.hypothesis_satisfied = true;
    for (double delta : deltas) {
        SequenceRow row;
        row.delta = delta;
        for (std::size_t ni = 0; ni < ns.size(); ++ni) {
            std::vector<bool> member(profiles.size());
            int count = 0;
            for (std::size_t k = 0; k < profiles.size(); ++k) {
                member[k] = profiles[k].cleaned[acol[k]][ni] < delta;
                count += member[k] ? 1 : 0;
            }
            row.qualifying_counts.push_back(count);
            if (row.least_n < 0 && surrogate_large(surrogate, member))
                row.least_n = ns[ni];
        }
        if (row.least_n < 0) rep.hypothesis_satisfied = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string verdict_to_json(const Verdict& v, const std::string& surrogate_note) {
    nlohmann::json j;
    j["space"] = v.space_id;
    j["surrogate"] = surrogate_note;
    j["theta"] = v.theta;
    j["stabilized_n"] = v.stabilized_n;
    j["verdict"] = verdict_name(v.kind);
    nlohmann::json table = nlohmann::json::array();
    nlohmann::json evidence = nlohmann::json::array();
    for (const auto& ev : v.table) {
        nlohmann::json row;
        row["alpha"] = ev.alpha;
        row["cleaned_value"] = ev.cleaned_value;
        if (ev.has_certified_lower) row["certified_lower"] = ev.certified_lower;
        table.push_back(row);
        if (ev.has_certified_lower && ev.certified_lower > v.theta)
            evidence.push_back("alpha=" + std::to_string(ev.alpha) + ": certified lower bound " +
                               std::to_string(ev.certified_lower) + " exceeds theta");
    }
    j["table"] = table;
    j["evidence"] = evidence;
    return j.dump(2) + "\n";
}

std::string verdict_to_text(const Verdict& v) {
    std::string out = v.space_id + ": " + verdict_name(v.kind) + " (theta=" +
                      std::to_string(v.theta) + ", n=" + std::to_string(v.stabilized_n) + ")\n";
    for (const auto& ev : v.table) {
        out += "  alpha=" + std::to_string(ev.alpha) +
               " cleaned=" + std::to_string(ev.cleaned_value);
        if (ev.has_certified_lower)
            out += " certified_lower=" + std::to_string(ev.certified_lower);
        out += "\n";
    }
    return out;
}

std::string sequence_report_to_json(const SequenceReport& r,
                                    const std::vector<std::string>& space_ids) {
    nlohmann::json j;
    j["alpha"] = r.alpha;
    j["eps"] = r.eps;
    j["surrogate"] = surrogate_name(r.surrogate.mode);
    if (r.surrogate.mode == FilterSurrogate::Mode::density)
        j["density_cut"] = r.surrogate.density_cut;
    j["spaces"] = space_ids;
    j["n_grid"] = r.ns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json jr;
        jr["delta"] = row.delta;
        jr["least_n"] = row.least_n;
        jr["qualifying_counts"] = row.qualifying_counts;
        rows.push_back(jr);
    }
    j["table"] = rows;
    j["hypothesis_satisfied"] = r.hypothesis_satisfied;
    return j.dump(2) + "\n";
}

}  // namespace slicegeo
