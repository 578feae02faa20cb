#pragma once

// Exact integer linear algebra on direction vectors: primitive vectors,
// unimodular completion of a primitive column, and GL(n,Z) actions.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace rodvol {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

inline Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

/// Floor division for signed operands (cpp_int `/` truncates toward zero).
inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0)))
        --q;
    return q;
}

/// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0)
        r += m;
    return r;
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(|a|, |b|) >= 0.
inline std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b)
{
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

/// Inverse of a modulo m (m >= 1, gcd(a, m) = 1), as the residue of least
/// absolute value; ties go to the positive residue. Modulo 1 everything is 0.
inline Integer min_residue_inverse(const Integer& a, const Integer& m)
{
    if (m == 1)
        return 0;
    auto [g, x, y] = extended_gcd(mod_floor(a, m), m);
    (void)y;
    if (g != 1)
        throw Error(ErrorCode::Precondition, "no modular inverse: operands not coprime");
    Integer r = mod_floor(x, m);
    if (2 * r > m)
        r -= m;
    return r;
}

/// gcd of the absolute values of the coordinates; 0 iff v is zero.
inline Integer content(std::span<const Integer> v)
{
    if (v.empty())
        throw Error(ErrorCode::Dimension, "content of an empty vector");
    Integer g = 0;
    for (const auto& x : v)
        g = boost::multiprecision::gcd(g, abs_int(x));
    return g;
}

inline Integer content(const IntVector& v) { return content(std::span<const Integer>(v)); }

/// Flip the sign so that the first nonzero coordinate is positive.
inline IntVector sign_canonical(IntVector v)
{
    auto it = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
    if (it != v.end() && *it < 0)
        for (auto& x : v)
            x = -x;
    return v;
}

inline IntVector to_int_vector(std::initializer_list<long long> xs)
{
    IntVector v;
    v.reserve(xs.size());
    for (long long x : xs)
        v.emplace_back(x);
    return v;
}

inline std::string to_string(const IntVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += v[i].str();
    }
    return s + ")";
}

/// Integer direction vector with coprime coordinates, identified up to sign.
/// Stored with the first nonzero coordinate positive.
class PrimitiveVector {
public:
    explicit PrimitiveVector(IntVector coords)
    {
        const Integer g = content(coords);
        if (g == 0)
            throw Error(ErrorCode::ZeroVector, "direction vector is zero");
        if (g != 1)
            throw Error(ErrorCode::NonPrimitive,
                        "direction " + rodvol::to_string(coords) + " has gcd " + g.str());
        coords_ = sign_canonical(std::move(coords));
    }

    PrimitiveVector(std::initializer_list<long long> xs) : PrimitiveVector(to_int_vector(xs)) {}

    std::size_t dim() const noexcept { return coords_.size(); }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    const IntVector& coords() const noexcept { return coords_; }

    friend bool operator==(const PrimitiveVector&, const PrimitiveVector&) = default;
    friend bool operator<(const PrimitiveVector& a, const PrimitiveVector& b)
    {
        return a.coords_ < b.coords_;
    }

    std::string str() const { return rodvol::to_string(coords_); }

private:
    IntVector coords_;
};

/// Dense square integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), a_(n * n) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) : n_(rows.size()), a_()
    {
        a_.reserve(n_ * n_);
        for (const auto& row : rows) {
            if (row.size() != n_)
                throw Error(ErrorCode::Dimension, "matrix rows must form a square");
            for (long long x : row)
                a_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    Integer& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    IntVector column(std::size_t c) const
    {
        IntVector v(n_);
        for (std::size_t r = 0; r < n_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }

    IntVector apply(std::span<const Integer> v) const
    {
        if (v.size() != n_)
            throw Error(ErrorCode::Dimension, "matrix/vector dimension mismatch");
        IntVector out(n_);
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c)
                out[r] += (*this)(r, c) * v[c];
        return out;
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y)
    {
        if (x.n_ != y.n_)
            throw Error(ErrorCode::Dimension, "matrix product dimension mismatch");
        IntMatrix z(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k) {
                if (x(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < x.n_; ++j)
                    z(i, j) += x(i, k) * y(k, j);
            }
        return z;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    /// Minor with row r and column c removed.
    IntMatrix minor(std::size_t r, std::size_t c) const
    {
        IntMatrix m(n_ - 1);
        for (std::size_t i = 0, mi = 0; i < n_; ++i) {
            if (i == r)
                continue;
            for (std::size_t j = 0, mj = 0; j < n_; ++j) {
                if (j == c)
                    continue;
                m(mi, mj++) = (*this)(i, j);
            }
            ++mi;
        }
        return m;
    }

    std::string str() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < n_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < n_; ++j) {
                if (j)
                    s += ",";
                s += (*this)(i, j).str();
            }
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t n_ = 0;
    std::vector<Integer> a_;
};

/// Fraction-free (Bareiss) determinant. Every division is exact.
inline Integer determinant(const IntMatrix& m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Rank over Q of a list of integer vectors of equal length.
inline std::size_t rank(const std::vector<IntVector>& rows)
{
    if (rows.empty())
        return 0;
    std::vector<IntVector> a = rows;
    const std::size_t cols = a.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            if (a[i][c] == 0)
                continue;
            const Integer f = a[i][c], g = a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] = a[i][j] * g - a[r][j] * f;
            const Integer h = content(a[i]);
            if (h > 1)
                for (auto& x : a[i])
                    x /= h;
        }
        ++r;
    }
    return r;
}

/// Integer matrix with determinant exactly +1 or -1.
class UnimodularMatrix {
public:
    explicit UnimodularMatrix(IntMatrix m) : m_(std::move(m))
    {
        det_ = determinant(m_);
        if (det_ != 1 && det_ != -1)
            throw Error(ErrorCode::NotUnimodular, "determinant is " + det_.str());
    }

    UnimodularMatrix(std::initializer_list<std::initializer_list<long long>> rows)
        : UnimodularMatrix(IntMatrix(rows))
    {
    }

    const IntMatrix& matrix() const noexcept { return m_; }
    std::size_t size() const noexcept { return m_.size(); }
    const Integer& det() const noexcept { return det_; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    friend UnimodularMatrix operator*(const UnimodularMatrix& a, const UnimodularMatrix& b)
    {
        return UnimodularMatrix(a.m_ * b.m_);
    }

    friend bool operator==(const UnimodularMatrix& a, const UnimodularMatrix& b)
    {
        return a.m_ == b.m_;
    }

private:
    IntMatrix m_;
    Integer det_;
};

namespace detail {

// Completion of a primitive column v (dimension >= 2) to a det +1 matrix
// whose last column is v, following the inductive Bezout construction:
// first column (s, (t/d) * tail), where d = gcd(tail) and s*d - t*v0 = 1,
// then the completion of tail/d fills the middle columns.
inline IntMatrix complete_column(const IntVector& v)
{
    const std::size_t n = v.size();
    IntMatrix m(n);
    for (std::size_t r = 0; r < n; ++r)
        m(r, n - 1) = v[r];

    if (n == 2) {
        // x*v1 - y*v0 = 1
        const Integer& a = v[0];
        const Integer& b = v[1];
        Integer x, y;
        if (a == 0) {
            x = b;
            y = 0;
        } else {
            x = min_residue_inverse(b, abs_int(a));
            y = (x * b - 1) / a;
        }
        m(0, 0) = x;
        m(1, 0) = y;
        return m;
    }

    IntVector tail(v.begin() + 1, v.end());
    const Integer d = content(tail);
    if (d == 0) {
        // v = (+-1, 0, ..., 0): columns (sigma e_2, e_3, ..., e_n, v).
        const Integer sigma = v[0] * ((n - 1) % 2 == 0 ? 1 : -1);
        m(1, 0) = sigma;
        for (std::size_t j = 1; j + 1 < n; ++j)
            m(j + 1, j) = 1;
        return m;
    }

    Integer s, t;
    if (v[0] == 0) {
        s = 1;
        t = 0;
    } else {
        s = min_residue_inverse(d, abs_int(v[0]));
        t = (s * d - 1) / v[0];
    }
    m(0, 0) = s;
    for (std::size_t r = 1; r < n; ++r)
        m(r, 0) = t * (tail[r - 1] / d);

    IntVector reduced = tail;
    for (auto& x : reduced)
        x /= d;
    const IntMatrix sub = complete_column(reduced);
    for (std::size_t j = 1; j + 1 < n; ++j)
        for (std::size_t r = 1; r < n; ++r)
            m(r, j) = sub(r - 1, j - 1);
    return m;
}

} // namespace detail

/// Unimodular completion: det(M) = +1 and last column equal to v.
/// Requires v primitive of dimension >= 2.
inline UnimodularMatrix bezout_complete(std::span<const Integer> v)
{
    if (v.size() < 2)
        throw Error(ErrorCode::Dimension, "completion needs dimension >= 2");
    if (content(v) != 1)
        throw Error(ErrorCode::Precondition, "completion needs a primitive vector");
    UnimodularMatrix m(detail::complete_column(IntVector(v.begin(), v.end())));
    if (m.det() != 1)
        throw Error(ErrorCode::Invariant, "completion has determinant " + m.det().str());
    return m;
}

inline UnimodularMatrix bezout_complete(const PrimitiveVector& v)
{
    return bezout_complete(std::span<const Integer>(v.coords()));
}

/// Exact inverse through the adjugate: M^-1 = det(M) * adj(M) when det = +-1.
inline UnimodularMatrix unimodular_inverse(const UnimodularMatrix& m)
{
    const std::size_t n = m.size();
    IntMatrix inv(n);
    if (n == 1) {
        inv(0, 0) = m.det();
        return UnimodularMatrix(inv);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Integer cof = determinant(m.matrix().minor(i, j));
            if ((i + j) % 2)
                cof = -cof;
            inv(j, i) = cof * m.det();
        }
    return UnimodularMatrix(inv);
}

/// Sign-canonical M*v for each direction.
inline std::vector<PrimitiveVector> transform_directions(const UnimodularMatrix& m,
                                                         std::span<const PrimitiveVector> dirs)
{
    std::vector<PrimitiveVector> out;
    out.reserve(dirs.size());
    for (const auto& d : dirs) {
        if (d.dim() != m.size())
            throw Error(ErrorCode::Dimension, "direction " + d.str() + " does not match matrix size");
        out.emplace_back(m.matrix().apply(d.coords()));
    }
    return out;
}

inline std::vector<PrimitiveVector> transform_directions(const UnimodularMatrix& m,
                                                         const std::vector<PrimitiveVector>& dirs)
{
    return transform_directions(m, std::span<const PrimitiveVector>(dirs));
}

} // namespace rodvol
