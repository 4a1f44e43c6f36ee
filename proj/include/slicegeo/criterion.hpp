#pragma once

#include <string>
#include <vector>

#include "slicegeo/midpoints.hpp"

namespace slicegeo {

/// C_n^alpha estimates over an (alpha, n) grid. The true sequence is
/// non-increasing in n, so a running minimum strips solver noise; both raw
/// and cleaned values are kept.
struct DecayProfile {
    std::string space_id;
    int dim = 0;
    std::vector<double> alphas;
    std::vector<int> ns;
    std::vector<std::vector<CnAlphaEstimate>> estimates;  // [alpha][n]
    std::vector<std::vector<double>> raw;                 // [alpha][n]
    std::vector<std::vector<double>> cleaned;             // running minimum along n
};

DecayProfile decay_profile(const SpaceSpec& spec, const std::vector<double>& alphas, int nmax,
                           const SolverBudget& budget = {});

enum class VerdictKind { certified_failure, consistent_with_uniform, inconclusive };

const char* verdict_name(VerdictKind v);

struct VerdictEvidence {
    double alpha = 0.0;
    double cleaned_value = 0.0;
    bool has_certified_lower = false;
    double certified_lower = 0.0;
};

struct Verdict {
    VerdictKind kind = VerdictKind::inconclusive;
    double theta = 1e-2;
    int stabilized_n = 0;  // dim + 1 column used
    std::vector<VerdictEvidence> table;
    std::string space_id;
};

/// Reads the n = dim+1 column: in dim d the n-term hulls saturate there, so a
/// certified lower bound above theta pins the limit away from zero.
Verdict uniform_verdict(const DecayProfile& profile, double theta = 1e-2);

/// Computable stand-ins for ultrafilter largeness of index sets. Both are
/// documented approximations; no mode represents a free ultrafilter.
struct FilterSurrogate {
    enum class Mode { frechet, density } mode = Mode::frechet;
    double density_cut = 0.95;  // density mode threshold
};

const char* surrogate_name(FilterSurrogate::Mode m);

/// True when the index set is surrogate-large within {1..total}: frechet mode
/// wants a full terminal run; density mode wants |set|/total >= cut.
bool surrogate_large(const FilterSurrogate& s, const std::vector<bool>& member);

struct SequenceRow {
    double delta = 0.0;
    int least_n = -1;  // -1: no n qualified
    std::vector<int> qualifying_counts;  // per n, how many spaces pass
};

struct SequenceReport {
    double alpha = 0.0, eps = 0.0;
    FilterSurrogate surrogate;
    std::vector<int> ns;
    std::vector<SequenceRow> rows;
    bool hypothesis_satisfied = false;  // every delta found a qualifying n
};

/// For each delta, the least n such that {k : C_n^{alpha-eps}(X_k) < delta}
/// is surrogate-large over the sampled family.
SequenceReport sequence_criterion(const std::vector<DecayProfile>& profiles, double alpha,
                                  double eps, const std::vector<double>& deltas,
                                  const FilterSurrogate& surrogate = {});

std::string verdict_to_json(const Verdict& v, const std::string& surrogate_note = "none");
std::string verdict_to_text(const Verdict& v);
std::string sequence_report_to_json(const SequenceReport& r,
                                    const std::vector<std::string>& space_ids);

}  // namespace slicegeo
