#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace seqtc {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b)
{
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += a[k] * b[k];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec sub(const Vec& a, const Vec& b)
{
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        r[k] = a[k] - b[k];
    return r;
}

inline Vec add(const Vec& a, const Vec& b)
{
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        r[k] = a[k] + b[k];
    return r;
}

inline Vec scaled(const Vec& a, double c)
{
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        r[k] = a[k] * c;
    return r;
}

inline Vec axpy(const Vec& a, double c, const Vec& dir)
{
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        r[k] = a[k] + c * dir[k];
    return r;
}

inline double distance(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

inline Vec lerp(const Vec& a, const Vec& b, double t)
{
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        r[k] = a[k] + t * (b[k] - a[k]);
    return r;
}

/* Image of a unit vector under the standard non-vanishing tangent field
 * of S^{d-1} for even d: (x1,...,xd) -> (-x2, x1, -x4, x3, ...). */
inline Vec tangent_field_image(const Vec& e)
{
    if (e.size() % 2 != 0)
        throw std::invalid_argument("tangent field requires even dimension");
    Vec r(e.size());
    for (std::size_t k = 0; k + 1 < e.size(); k += 2) {
        r[k] = -e[k + 1];
        r[k + 1] = e[k];
    }
    return r;
}

/* Oriented projection line with a distinguished perpendicular direction.
 * project() is the scalar coordinate along e; height() along e_perp. */
struct ProjectionFrame {
    Vec e;
    Vec e_perp;

    double project(const Vec& x) const { return dot(x, e); }
    double height(const Vec& x) const { return dot(x, e_perp); }
};

} // namespace seqtc
