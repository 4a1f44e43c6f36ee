#include "slicegeo/csvio.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "slicegeo/error.hpp"

namespace slicegeo {

std::string fmt_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string opt_num(const std::optional<double>& v) { return v ? fmt_g12(*v) : ""; }
std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }
std::string opt_bool(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : ""; }

std::string join_semicolon(const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ";";
        out += fmt_g12(v[i]);
    }
    return out;
}

std::string timestamp_comment() {
    std::time_t t = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return std::string("# generated_at=") + buf + "\n";
}

}  // namespace

const char* ResultsWriter::results_header() {
    return "space_id,op,n,alpha,depth,eps,value,lower,upper,certified,seed,budget_samples";
}

const char* ResultsWriter::witness_header() {
    return "space_id,op,depth,alpha,eps,value,certified,witness";
}

void ResultsWriter::write(const std::string& out_dir) const {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir + "/results.csv");
        if (!out) fail(Errc::invalid_spec, "cannot write " + out_dir + "/results.csv");
        out << timestamp_comment();
        out << results_header() << "\n";
        for (const auto& r : rows_) {
            out << r.space_id << ',' << r.op << ',' << opt_int(r.n) << ',' << opt_num(r.alpha)
                << ',' << opt_num(r.depth) << ',' << opt_num(r.eps) << ',' << opt_num(r.value)
                << ',' << opt_num(r.lower) << ',' << opt_num(r.upper) << ','
                << opt_bool(r.certified) << ',' << r.seed << ',' << r.budget_samples << "\n";
        }
    }
    if (!witness_rows_.empty()) {
        std::ofstream out(out_dir + "/witnesses.csv");
        if (!out) fail(Errc::invalid_spec, "cannot write " + out_dir + "/witnesses.csv");
        out << timestamp_comment();
        out << witness_header() << "\n";
        for (const auto& w : witness_rows_) {
            out << w.space_id << ',' << w.op << ',' << opt_num(w.depth) << ',' << opt_num(w.alpha)
                << ',' << opt_num(w.eps) << ',' << opt_num(w.value) << ','
                << (w.certified ? "true" : "false") << ',' << join_semicolon(w.witness) << "\n";
        }
    }
}

}  // namespace slicegeo
