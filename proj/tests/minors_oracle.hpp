#pragma once

// Independent stratum oracle for exact Laurent-polynomial matrices over F_p.
// Elementary divisors over k[[t]] are read off from determinantal divisors:
// d_k = min valuation of the k x k minors, and the k-th smallest exponent is
// d_k - d_{k-1}. Nothing here touches the library's series or matrix code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

// sum c[i] t^(lo + i) with coefficients in [0, p).
struct Poly {
    int lo = 0;
    std::vector<std::int64_t> c;
};

inline Poly normalize(Poly a, std::int64_t p)
{
    for (auto& x : a.c) x = ((x % p) + p) % p;
    std::size_t b = 0;
    while (b < a.c.size() && a.c[b] == 0) ++b;
    a.c.erase(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(b));
    a.lo += static_cast<int>(b);
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
    if (a.c.empty()) a.lo = 0;
    return a;
}

inline Poly mono(std::int64_t c, int e, std::int64_t p) { return normalize(Poly{e, {c}}, p); }

inline Poly add(const Poly& a, const Poly& b, std::int64_t p, std::int64_t sign = 1)
{
    if (a.c.empty()) return normalize(Poly{b.lo, [&] { auto v = b.c; for (auto& x : v) x *= sign; return v; }()}, p);
    if (b.c.empty()) return a;
    const int lo = std::min(a.lo, b.lo);
    const int hi = std::max(a.lo + static_cast<int>(a.c.size()), b.lo + static_cast<int>(b.c.size()));
    Poly r{lo, std::vector<std::int64_t>(static_cast<std::size_t>(hi - lo), 0)};
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[static_cast<std::size_t>(a.lo - lo) + i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[static_cast<std::size_t>(b.lo - lo) + i] += sign * b.c[i];
    return normalize(r, p);
}

inline Poly mul(const Poly& a, const Poly& b, std::int64_t p)
{
    if (a.c.empty() || b.c.empty()) return {};
    Poly r{a.lo + b.lo, std::vector<std::int64_t>(a.c.size() + b.c.size() - 1, 0)};
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % p;
    }
    return normalize(r, p);
}

inline std::optional<int> val(const Poly& a)
{
    if (a.c.empty()) return std::nullopt;
    return a.lo;
}

using Mat = std::vector<std::vector<Poly>>;

inline Mat matmul(const Mat& a, const Mat& b, std::int64_t p)
{
    const std::size_t n = a.size();
    Mat r(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) r[i][j] = add(r[i][j], mul(a[i][k], b[k][j], p), p);
        }
    }
    return r;
}

// Determinant of the submatrix on the given rows and columns, by cofactors.
inline Poly minor(const Mat& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                  std::int64_t p)
{
    if (rows.size() == 1) return a[rows[0]][cols[0]];
    Poly acc;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<std::size_t> sub_cols = cols;
        sub_cols.erase(sub_cols.begin() + static_cast<std::ptrdiff_t>(j));
        const std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
        const Poly term = mul(a[rows[0]][cols[j]], minor(a, sub_rows, sub_cols, p), p);
        acc = add(acc, term, p, j % 2 == 0 ? 1 : -1);
    }
    return acc;
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> s(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
        if (pos == k) {
            f(s);
            return;
        }
        for (std::size_t i = from; i < n; ++i) {
            s[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

// Dominant (non-increasing) elementary-divisor exponents.
inline std::vector<int> stratum(const Mat& a, std::int64_t p)
{
    const std::size_t n = a.size();
    std::vector<int> d(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        int best = std::numeric_limits<int>::max();
        subsets(n, k, [&](const std::vector<std::size_t>& rows) {
            subsets(n, k, [&](const std::vector<std::size_t>& cols) {
                if (auto v = val(minor(a, rows, cols, p))) best = std::min(best, *v);
            });
        });
        d[k] = best;
    }
    std::vector<int> e;
    for (std::size_t k = 1; k <= n; ++k) e.push_back(d[k] - d[k - 1]);
    std::reverse(e.begin(), e.end());
    return e;
}

} // namespace oracle
