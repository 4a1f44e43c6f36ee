#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicegeo/vec.hpp"

namespace slicegeo {

/// Floats in reports carry 12 significant digits.
std::string fmt_g12(double v);

/// Frozen results header. Optional fields print as empty columns; every row
/// records the seed and sample budget it was produced with.
struct ResultRow {
    std::string space_id;
    std::string op;
    std::optional<int> n;
    std::optional<double> alpha, depth, eps;
    std::optional<double> value, lower, upper;
    std::optional<bool> certified;
    std::uint64_t seed = 0;
    int budget_samples = 0;
};

/// Witness rows keep the flattened coordinates of the object they certify.
struct WitnessRow {
    std::string space_id;
    std::string op;
    std::optional<double> depth, alpha, eps;
    std::optional<double> value;
    bool certified = false;
    Vec witness;  // flattened coordinates, semicolon-separated on disk
};

class ResultsWriter {
public:
    void add(ResultRow row) { rows_.push_back(std::move(row)); }
    void add_witness(WitnessRow row) { witness_rows_.push_back(std::move(row)); }

    /// Deterministic body; volatile metadata is confined to comment lines.
    void write(const std::string& out_dir) const;

    static const char* results_header();
    static const char* witness_header();

private:
    std::vector<ResultRow> rows_;
    std::vector<WitnessRow> witness_rows_;
};

}  // namespace slicegeo
