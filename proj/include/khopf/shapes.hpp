#pragma once

// Compositions, peak compositions, strict partitions and shifted diagrams:
// the index objects of every basis family, plus the transformations between
// them (interval sets, Lambda, reversal/complement/transpose, flat, odd).

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace khopf {

using Composition = std::vector<int>;     // positive parts, possibly empty
using StrictPartition = std::vector<int>; // strictly decreasing positive parts

inline int comp_size(const Composition& a) { return std::accumulate(a.begin(), a.end(), 0); }

inline bool is_composition(const Composition& a) {
    for (int p : a)
        if (p < 1) return false;
    return true;
}

// Every part except possibly the last is >= 2.
inline bool is_peak_composition(const Composition& a) {
    if (!is_composition(a)) return false;
    for (size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i] < 2) return false;
    return true;
}

inline bool is_strict_partition(const StrictPartition& p) {
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 1) return false;
        if (i > 0 && p[i - 1] <= p[i]) return false;
    }
    return true;
}

inline bool is_partition(const std::vector<int>& p) {
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 1) return false;
        if (i > 0 && p[i - 1] < p[i]) return false;
    }
    return true;
}

// Canonical order on index objects: graded by size, then lexicographically
// with larger leading parts first, so e.g. (3) < (2,1) < (1,2) < (1,1,1).
inline bool canonical_less(const std::vector<int>& a, const std::vector<int>& b) {
    int sa = comp_size(a), sb = comp_size(b);
    if (sa != sb) return sa < sb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), std::greater<int>());
}

struct CanonicalLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        return canonical_less(a, b);
    }
};

// Text form "3,2" / "()".
inline std::string shape_to_string(const std::vector<int>& a) {
    if (a.empty()) return "()";
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s;
}

inline std::vector<int> shape_from_string(const std::string& s) {
    std::vector<int> out;
    if (s.empty() || s == "()") return out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stoi(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interval sets and Lambda.

// I(alpha) = {a1, a1+a2, ...} minus the total.
inline std::set<int> interval_set(const Composition& a) {
    std::set<int> s;
    int acc = 0;
    for (size_t i = 0; i + 1 < a.size(); ++i) {
        acc += a[i];
        s.insert(acc);
    }
    return s;
}

inline Composition comp_from_set(const std::set<int>& s, int n) {
    for (int v : s)
        if (v < 1 || v >= n) throw std::invalid_argument("comp_from_set: set not inside [n-1]");
    Composition a;
    int prev = 0;
    for (int v : s) {
        a.push_back(v - prev);
        prev = v;
    }
    if (n > prev) a.push_back(n - prev);
    else if (n == 0) return {};
    return a;
}

// Unique peak composition with I(Lambda(a)) = { i in I(a) : 0 < i-1 not in I(a) }.
inline Composition lambda_peak(const Composition& a) {
    std::set<int> I = interval_set(a);
    std::set<int> J;
    for (int i : I)
        if (i - 1 > 0 && !I.count(i - 1)) J.insert(i);
    return comp_from_set(J, comp_size(a));
}

// ---------------------------------------------------------------------------
// Composition transforms.

inline Composition comp_reverse(const Composition& a) {
    Composition r(a.rbegin(), a.rend());
    return r;
}

inline Composition comp_complement(const Composition& a) {
    int n = comp_size(a);
    std::set<int> I = interval_set(a), C;
    for (int i = 1; i < n; ++i)
        if (!I.count(i)) C.insert(i);
    return comp_from_set(C, n);
}

inline Composition comp_transpose(const Composition& a) { return comp_reverse(comp_complement(a)); }

// flat: (a_k+1, a_{k-1}, ..., a_2, a_1-1) for peak compositions with k > 1.
inline Composition comp_flat(const Composition& a) {
    if (!is_peak_composition(a)) throw std::invalid_argument("flat: not a peak composition");
    if (a.size() <= 1) return a;
    Composition r;
    r.push_back(a.back() + 1);
    for (size_t i = a.size() - 2; i >= 1; --i) r.push_back(a[i]);
    r.push_back(a.front() - 1);
    return r;
}

// odd: replace each even part x by the two parts (1, x-1).
inline Composition comp_odd(const Composition& a) {
    if (!is_peak_composition(a)) throw std::invalid_argument("odd: not a peak composition");
    Composition r;
    for (int p : a) {
        if (p % 2 == 0) {
            r.push_back(1);
            r.push_back(p - 1);
        } else {
            r.push_back(p);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Shifted diagrams for strict partitions.

struct Box {
    int row, col;  // 1-based; shifted: row i spans columns i..i+lambda_i-1
    bool operator==(const Box&) const = default;
    auto operator<=>(const Box&) const = default;
};

inline bool strict_contains(const StrictPartition& lam, const StrictPartition& mu) {
    if (mu.size() > lam.size()) return false;
    for (size_t i = 0; i < mu.size(); ++i)
        if (mu[i] > lam[i]) return false;
    return true;
}

// SD_{lambda/mu} = {(i, i+j-1) : mu_i < j <= lambda_i}; empty when mu !<= lambda.
inline std::vector<Box> shifted_diagram(const StrictPartition& lam, const StrictPartition& mu = {}) {
    std::vector<Box> boxes;
    if (!strict_contains(lam, mu)) return boxes;
    for (int i = 1; i <= (int)lam.size(); ++i) {
        int lo = (i <= (int)mu.size()) ? mu[i - 1] : 0;
        for (int j = lo + 1; j <= lam[i - 1]; ++j) boxes.push_back({i, i + j - 1});
    }
    return boxes;
}

inline std::vector<Box> removable_corners(const StrictPartition& lam) {
    std::vector<Box> rc;
    for (int i = 1; i <= (int)lam.size(); ++i) {
        StrictPartition mu = lam;
        mu[i - 1] -= 1;
        if (mu[i - 1] == 0) mu.erase(mu.begin() + (i - 1));
        if (!is_strict_partition(mu)) continue;
        if (mu.size() < lam.size() && i < (int)lam.size()) continue;  // row vanished in the middle
        rc.push_back({i, i + lam[i - 1] - 1});
    }
    return rc;
}

inline bool is_vertical_strip(const std::vector<Box>& boxes) {
    std::set<int> rows;
    for (const auto& b : boxes)
        if (!rows.insert(b.row).second) return false;
    return true;
}

inline int cols_occupied(const std::vector<Box>& boxes) {
    std::set<int> cols;
    for (const auto& b : boxes) cols.insert(b.col);
    return (int)cols.size();
}

// ---------------------------------------------------------------------------
// Enumerations, emitted in canonical order.

inline std::vector<Composition> compositions_of(int n) {
    std::vector<Composition> out;
    if (n == 0) { out.push_back({}); return out; }
    Composition cur;
    std::function<void(int)> rec = [&](int rem) {
        if (rem == 0) { out.push_back(cur); return; }
        for (int p = rem; p >= 1; --p) {  // larger first part first
            cur.push_back(p);
            rec(rem - p);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

inline std::vector<Composition> peak_compositions_of(int n) {
    std::vector<Composition> out;
    for (const auto& a : compositions_of(n))
        if (is_peak_composition(a)) out.push_back(a);
    return out;
}

inline std::vector<StrictPartition> strict_partitions_of(int n) {
    std::vector<StrictPartition> out;
    for (const auto& a : compositions_of(n))
        if (is_strict_partition(a)) out.push_back(a);
    return out;
}

inline std::vector<std::vector<int>> partitions_of(int n) {
    std::vector<std::vector<int>> out;
    for (const auto& a : compositions_of(n))
        if (is_partition(a)) out.push_back(a);
    return out;
}

template <typename Enum>
inline auto shapes_up_to(int d, Enum enumerate) {
    decltype(enumerate(0)) out;
    for (int n = 0; n <= d; ++n)
        for (auto& s : enumerate(n)) out.push_back(s);
    return out;
}

// All strict mu contained in lambda.
inline std::vector<StrictPartition> strict_subpartitions(const StrictPartition& lam) {
    std::vector<StrictPartition> out;
    for (int n = 0; n <= comp_size(lam); ++n)
        for (const auto& mu : strict_partitions_of(n))
            if (strict_contains(lam, mu)) out.push_back(mu);
    std::sort(out.begin(), out.end(), CanonicalLess{});
    return out;
}

// Transpose of an ordinary partition.
inline std::vector<int> partition_transpose(const std::vector<int>& lam) {
    std::vector<int> t;
    for (int c = 1; !lam.empty() && c <= lam[0]; ++c) {
        int cnt = 0;
        for (int p : lam)
            if (p >= c) ++cnt;
        t.push_back(cnt);
    }
    return t;
}

}  // namespace khopf
