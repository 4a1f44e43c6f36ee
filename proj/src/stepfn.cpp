#include "slicegeo/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "slicegeo/rng.hpp"

namespace slicegeo {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 24;

std::size_t cells_of(const std::vector<int>& res) {
    std::size_t n = 1;
    for (int r : res) {
        if (r < 0) fail(Errc::invalid_spec, "negative resolution");
        if (r > 40 || n > (kMaxCells >> r))
            fail(Errc::grid_incompatible, "common refinement exceeds the cell budget");
        n <<= r;
    }
    return n;
}

int dyadic_exponent(double s) {
    if (!(s > 0.0) || !(s < 1.0)) fail(Errc::non_dyadic_support, "support must lie in (0,1)");
    int j = static_cast<int>(std::lround(std::log2(1.0 / s)));
    if (j < 1 || std::ldexp(1.0, -j) != s)
        fail(Errc::non_dyadic_support, "support must be 2^-j for an integer j >= 1");
    return j;
}

}  // namespace

std::size_t StepFunction::cell_count() const {
    std::size_t n = 1;
    for (int r : resolutions) n <<= r;
    return n;
}

double StepFunction::cell_measure() const {
    int total = 0;
    for (int r : resolutions) total += r;
    return std::ldexp(1.0, -total);
}

StepFunction constant_fn(double c, int coords) {
    StepFunction f;
    f.coords = std::max(1, coords);
    f.resolutions.assign(f.coords, 0);
    f.values = {c};
    return f;
}

StepFunction spike_fn(double s, int coord, int coords) {
    int j = dyadic_exponent(s);
    StepFunction f;
    f.coords = std::max(coords, coord + 1);
    f.resolutions.assign(f.coords, 0);
    f.resolutions[coord] = j;
    cells_of(f.resolutions);  // budget before allocating
    f.values.assign(std::size_t{1} << j, 0.0);
    f.values[0] = std::ldexp(1.0, j);  // 1/s exactly
    return f;
}

StepFunction refine_to(const StepFunction& f, int coords, const std::vector<int>& resolutions) {
    if (coords < f.coords) fail(Errc::grid_incompatible, "cannot drop coordinates");
    for (int j = 0; j < f.coords; ++j)
        if (resolutions[j] < f.resolutions[j])
            fail(Errc::grid_incompatible, "cannot coarsen a resolution");
    StepFunction g;
    g.coords = coords;
    g.resolutions = resolutions;
    std::size_t n = cells_of(resolutions);
    g.values.assign(n, 0.0);

    // strides of the old grid, padded with zero-stride for new coordinates
    std::vector<std::size_t> old_stride(coords, 0);
    std::size_t acc = 1;
    for (int j = f.coords - 1; j >= 0; --j) {
        old_stride[j] = acc;
        acc <<= f.resolutions[j];
    }
    std::vector<std::size_t> digit(coords, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t oi = 0;
        for (int j = 0; j < coords; ++j) {
            int shift = resolutions[j] - (j < f.coords ? f.resolutions[j] : resolutions[j]);
            oi += (digit[j] >> shift) * old_stride[j];
        }
        g.values[i] = f.values[oi];
        // odometer increment
        for (int j = coords - 1; j >= 0; --j) {
            if (++digit[j] < (std::size_t{1} << resolutions[j])) break;
            digit[j] = 0;
        }
    }
    return g;
}

void unify(StepFunction& f, StepFunction& g) {
    int coords = std::max(f.coords, g.coords);
    std::vector<int> res(coords, 0);
    for (int j = 0; j < coords; ++j) {
        int rf = j < f.coords ? f.resolutions[j] : 0;
        int rg = j < g.coords ? g.resolutions[j] : 0;
        res[j] = std::max(rf, rg);
    }
    cells_of(res);  // budget check before allocating
    f = refine_to(f, coords, res);
    g = refine_to(g, coords, res);
}

StepFunction add_fn(const StepFunction& f, const StepFunction& g) {
    StepFunction a = f, b = g;
    unify(a, b);
    for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
    return a;
}

StepFunction sub_fn(const StepFunction& f, const StepFunction& g) {
    StepFunction a = f, b = g;
    unify(a, b);
    for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] -= b.values[i];
    return a;
}

StepFunction scale_fn(const StepFunction& f, double t) {
    StepFunction g = f;
    for (auto& v : g.values) v *= t;
    return g;
}

double l1_norm(const StepFunction& f) {
    double s = 0.0;
    for (double v : f.values) s += std::abs(v);
    return s * f.cell_measure();
}

double dm(const StepFunction& f, const StepFunction& g) {
    StepFunction a = f, b = g;
    unify(a, b);
    double measure = a.cell_measure();
    // distinct absolute differences with their measures, ascending
    std::map<double, double> weight;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        double d = std::abs(a.values[i] - b.values[i]);
        if (d > 0.0) weight[d] += measure;
    }
    if (weight.empty()) return 0.0;
    // tail measure T(eps) for eps in (u_{j-1}, u_j] equals the measure of
    // cells with |diff| >= u_j; feasibility on that interval needs T <= u_j,
    // and the infimum is then max(T, u_{j-1}).
    std::vector<std::pair<double, double>> lv(weight.begin(), weight.end());
    std::size_t r = lv.size();
    std::vector<double> tail(r, 0.0);
    double acc = 0.0;
    for (std::size_t j = r; j-- > 0;) {
        acc += lv[j].second;
        tail[j] = acc;
    }
    double prev = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
        if (tail[j] <= lv[j].first) return std::max(tail[j], prev);
        prev = lv[j].first;
    }
    return lv[r - 1].first;  // feasible only beyond the largest value
}

CalculusReport check_dm_calculus(const std::vector<StepFunction>& fs, const Vec& lambdas) {
    CalculusReport rep;
    rep.min_subadditivity_margin = std::numeric_limits<double>::infinity();
    rep.min_scaling_margin = std::numeric_limits<double>::infinity();
    const StepFunction zero = constant_fn(0.0);
    if (!fs.empty()) {
        StepFunction total = fs[0];
        double sum_d = dm(fs[0], zero);
        for (std::size_t i = 1; i < fs.size(); ++i) {
            total = add_fn(total, fs[i]);
            sum_d += dm(fs[i], zero);
        }
        double margin = sum_d - dm(total, zero);
        rep.min_subadditivity_margin = margin;
        ++rep.checks;
        if (margin < 0.0) ++rep.violations;
    }
    for (std::size_t i = 0; i < fs.size() && i < lambdas.size(); ++i) {
        double l = lambdas[i];
        if (l < 0.0 || l > 1.0) fail(Errc::invalid_point, "lambdas must lie in [0,1]");
        double margin = dm(fs[i], zero) - dm(scale_fn(fs[i], l), zero);
        rep.min_scaling_margin = std::min(rep.min_scaling_margin, margin);
        ++rep.checks;
        if (margin < 0.0) ++rep.violations;
    }
    return rep;
}

ScanReport near_disjointness_scan(const std::vector<StepFunction>& H, double eps, int probe_count,
                                  std::uint64_t seed) {
    if (H.empty()) fail(Errc::invalid_point, "H must be nonempty");
    if (!(eps > 0.0)) fail(Errc::invalid_point, "eps must be positive");
    if (probe_count < 1) fail(Errc::invalid_point, "need at least one probe");
    int hcoords = 1;
    for (const auto& g : H) hcoords = std::max(hcoords, g.coords);

    Rng rng(seed);
    ScanReport rep;
    std::vector<double> h_norms;
    for (const auto& g : H) h_norms.push_back(l1_norm(g));
    const StepFunction zero = constant_fn(0.0);

    for (int i = 0; i < probe_count; ++i) {
        int j = 1 + std::min(i, 12);  // shrinking dyadic support 2^-j
        double s = std::ldexp(1.0, -j);
        bool fresh = (i % 2 == 0);
        int coord = fresh ? hcoords : static_cast<int>(rng.index(hcoords));
        StepFunction probe = spike_fn(s, coord, std::max(hcoords, coord + 1));

        ProbeRecord rec;
        rec.coord = coord;
        rec.support = s;
        rec.dm_to_zero = dm(probe, zero);
        double pn = l1_norm(probe);
        for (std::size_t k = 0; k < H.size(); ++k) {
            double together = l1_norm(add_fn(probe, H[k]));
            rec.worst_deficit = std::max(rec.worst_deficit, pn + h_norms[k] - together);
        }
        rep.log.push_back(rec);
    }

    double min_bad = std::numeric_limits<double>::infinity();
    double max_dm = 0.0;
    for (const auto& rec : rep.log) {
        max_dm = std::max(max_dm, rec.dm_to_zero);
        if (rec.worst_deficit > eps) min_bad = std::min(min_bad, rec.dm_to_zero);
    }
    rep.all_within_eps = !std::isfinite(min_bad);
    rep.delta = rep.all_within_eps ? max_dm : min_bad;
    return rep;
}

std::vector<StepFunction> spike_family(double s, int n) {
    if (n < 1) fail(Errc::invalid_point, "n must be >= 1");
    dyadic_exponent(s);  // validates
    std::vector<StepFunction> out;
    for (int j = 0; j < n; ++j) out.push_back(spike_fn(s, j, n));
    return out;
}

double spike_deficit_grid(double s, int n) {
    int j = dyadic_exponent(s);
    if (n > 12) fail(Errc::grid_too_large, "grid path supports n <= 12");
    long long total_bits = static_cast<long long>(j) * n;
    if (total_bits > 24) fail(Errc::grid_too_large, "product grid exceeds 2^24 cells");

    // Walk the full n-coordinate product grid, reading every spike through its
    // step-function cells; the histogram over cells stays in exact integers.
    auto family = spike_family(s, n);
    std::size_t per = std::size_t{1} << j;
    std::vector<double> spike_cell(per, 0.0);
    for (std::size_t c = 0; c < per; ++c) spike_cell[c] = family[0].values[c];

    std::vector<double> count(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<std::size_t> digit(n, 0);
    std::size_t cells = std::size_t{1} << total_bits;
    for (std::size_t i = 0; i < cells; ++i) {
        int k = 0;
        for (int c = 0; c < n; ++c) k += spike_cell[digit[c]] != 0.0 ? 1 : 0;
        count[k] += 1.0;
        for (int c = n - 1; c >= 0; --c) {
            if (++digit[c] < per) break;
            digit[c] = 0;
        }
    }
    double measure = std::ldexp(1.0, -static_cast<int>(total_bits));
    double sum = 0.0;
    for (int k = 0; k <= n; ++k)
        sum += count[k] * std::abs(static_cast<double>(k) / (n * s) - 1.0);
    return sum * measure;
}

double spike_deficit_binomial(double s, int n) {
    dyadic_exponent(s);
    // term_k = C(n,k) s^k (1-s)^{n-k}
    double term = std::pow(1.0 - s, n);
    double ratio = s / (1.0 - s);
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        sum += term * std::abs(static_cast<double>(k) / (n * s) - 1.0);
        term *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return sum;
}

SpikeDeficit spike_average_deficit(double s, int n) {
    SpikeDeficit out;
    out.oracle_value = spike_deficit_binomial(s, n);
    try {
        out.grid_value = spike_deficit_grid(s, n);
        out.grid_used = true;
    } catch (const DomainError& e) {
        if (e.code() != Errc::grid_too_large) throw;
        out.value = out.oracle_value;
        return out;
    }
    if (std::abs(out.grid_value - out.oracle_value) > 1e-12)
        fail(Errc::invariant_violation, "grid and binomial deficits disagree beyond 1e-12");
    out.value = out.grid_value;
    return out;
}

std::string stepfn_to_json(const StepFunction& f) {
    nlohmann::json j;
    j["coords"] = f.coords;
    j["resolutions"] = f.resolutions;
    j["values"] = f.values;
    return j.dump() + "\n";
}

StepFunction stepfn_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    StepFunction f;
    f.coords = j.at("coords").get<int>();
    f.resolutions = j.at("resolutions").get<std::vector<int>>();
    f.values = j.at("values").get<Vec>();
    if (f.coords < 1 || static_cast<int>(f.resolutions.size()) != f.coords)
        fail(Errc::invalid_spec, "coords and resolutions disagree");
    if (f.values.size() != f.cell_count())
        fail(Errc::invalid_spec, "value array does not match the grid size");
    return f;
}

}  // namespace slicegeo
