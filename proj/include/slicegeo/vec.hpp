#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace slicegeo {

using Vec = std::vector<double>;
using Matrix = std::vector<Vec>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scaled(const Vec& a, double t) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * t;
    return r;
}

inline void axpy(Vec& y, double t, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += t * x[i];
}

inline Vec midpoint(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = 0.5 * (a[i] + b[i]);
    return r;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double linf_dist(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline bool is_zero(const Vec& a, double tol = 0.0) {
    for (double v : a)
        if (std::abs(v) > tol) return false;
    return true;
}

inline Vec concat(const Vec& a, const Vec& b) {
    Vec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline Vec head(const Vec& a, std::size_t n) { return Vec(a.begin(), a.begin() + n); }
inline Vec tail(const Vec& a, std::size_t n) { return Vec(a.end() - n, a.end()); }

}  // namespace slicegeo
