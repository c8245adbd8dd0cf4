#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace pnp {

using Vector = std::vector<double>;

inline double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline double norm2_sq(const Vector& a) { return dot(a, a); }

// y += c * x
inline void axpy(double c, const Vector& x, Vector& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline bool all_finite(const Vector& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace pnp
