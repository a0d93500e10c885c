#pragma once

// Packed words, small/big multipermutations, set compositions, and the
// product/coproduct/zeta machinery of the two multi-Malvenuto-Reutenauer
// algebras at bounded size.  Infinite pseudobasis sums are never
// materialized; operations take explicit length caps and are exact for all
// conclusions depending only on terms within the cap.

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "khopf/exactpoly.hpp"
#include "khopf/shapes.hpp"

namespace khopf {

using Word = std::vector<int>;

inline int word_max(const Word& w) { return w.empty() ? 0 : *std::max_element(w.begin(), w.end()); }

inline Word standardize(const Word& w) {
    std::set<int> vals(w.begin(), w.end());
    std::map<int, int> phi;
    int next = 1;
    for (int v : vals) phi[v] = next++;
    Word r;
    r.reserve(w.size());
    for (int v : w) r.push_back(phi[v]);
    return r;
}

inline bool is_packed(const Word& w) { return standardize(w) == w; }

// Removes adjacent equal letters; the unique <=_m-minimal word below w.
inline Word collapse(const Word& w) {
    Word r;
    for (int v : w)
        if (r.empty() || r.back() != v) r.push_back(v);
    return r;
}

inline bool is_small_multiperm(const Word& w) { return is_packed(w) && collapse(w) == w; }

inline std::set<int> word_descents(const Word& w) {
    std::set<int> d;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] > w[i + 1]) d.insert((int)i + 1);
    return d;
}

inline std::set<int> word_peaks(const Word& w) {
    std::set<int> p;
    for (size_t i = 1; i + 1 < w.size(); ++i)
        if (w[i - 1] < w[i] && w[i] > w[i + 1]) p.insert((int)i + 1);
    return p;
}

inline Composition alpha_des(const Word& w) { return comp_from_set(word_descents(w), (int)w.size()); }
inline Composition alpha_peak(const Word& w) { return comp_from_set(word_peaks(w), (int)w.size()); }

inline std::string word_to_string(const Word& w) {
    if (w.empty()) return "()";
    bool wide = false;
    for (int v : w)
        if (v > 9) wide = true;
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (wide && i) s += ",";
        s += std::to_string(w[i]);
    }
    return s;
}

inline Word word_from_string(const std::string& s) {
    Word w;
    if (s.empty() || s == "()") return w;
    if (s.find(',') != std::string::npos) {
        for (int v : shape_from_string(s)) w.push_back(v);
    } else {
        for (char c : s) w.push_back(c - '0');
    }
    return w;
}

// ---------------------------------------------------------------------------
// Shuffle product.

inline std::map<Word, long long> shuffle(const Word& v, const Word& w) {
    std::map<Word, long long> out;
    Word cur;
    std::function<void(size_t, size_t)> rec = [&](size_t i, size_t j) {
        if (i == v.size() && j == w.size()) {
            out[cur] += 1;
            return;
        }
        if (i < v.size()) {
            cur.push_back(v[i]);
            rec(i + 1, j);
            cur.pop_back();
        }
        if (j < w.size()) {
            cur.push_back(w[j]);
            rec(i, j + 1);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

inline Word word_shift(const Word& w, int k) {
    Word r = w;
    for (int& v : r) v += k;
    return r;
}

// ---------------------------------------------------------------------------
// Elements of mMR: finite combinations of the pseudobasis [w]_m.

using MmrElement = std::map<Word, BetaPoly>;
using MmrTensor = std::map<std::pair<Word, Word>, BetaPoly>;

inline void mmr_add(MmrElement& a, const Word& w, const BetaPoly& c) {
    auto it = a.find(w);
    if (it == a.end()) a.emplace(w, c);
    else {
        bp_add_inplace(it->second, c);
        if (bp_is_zero(it->second)) a.erase(it);
    }
}

// Product formula: sum over small multipermutations w with max m+n such that
// the low subword collapses to w1 and the shifted high subword collapses to
// w2, weighted by beta^(len(w) - len(w1) - len(w2)).  Exact for all terms of
// length <= cap.
inline MmrElement mmr_product_basis(const Word& w1, const Word& w2, int cap) {
    if (!is_small_multiperm(w1) || !is_small_multiperm(w2))
        throw std::invalid_argument("mmr_product: inputs must be small multipermutations");
    if (cap < (int)(w1.size() + w2.size()))
        throw std::invalid_argument("mmr_product: cap below len(w1)+len(w2)");
    MmrElement out;
    int m = word_max(w1);
    Word hi = word_shift(w2, m);
    Word cur;
    // State: next low letter is w1[i] (fresh) or w1[i-1] (repeat); same for hi.
    std::function<void(size_t, size_t)> rec = [&](size_t i, size_t j) {
        if (i == w1.size() && j == w2.size()) {
            int extra = (int)cur.size() - (int)(w1.size() + w2.size());
            mmr_add(out, cur, bp_monomial(1, extra));
            // keep extending with repeats (handled below), so no return
        }
        if ((int)cur.size() >= cap) return;
        int last = cur.empty() ? 0 : cur.back();
        // fresh low letter
        if (i < w1.size() && w1[i] != last) {
            cur.push_back(w1[i]);
            rec(i + 1, j);
            cur.pop_back();
        }
        // repeat current low letter
        if (i > 0 && w1[i - 1] != last) {
            cur.push_back(w1[i - 1]);
            rec(i, j);
            cur.pop_back();
        }
        // fresh high letter
        if (j < w2.size() && hi[j] != last) {
            cur.push_back(hi[j]);
            rec(i, j + 1);
            cur.pop_back();
        }
        // repeat current high letter
        if (j > 0 && hi[j - 1] != last) {
            cur.push_back(hi[j - 1]);
            rec(i, j);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

inline MmrElement mmr_product(const MmrElement& a, const MmrElement& b, int cap) {
    MmrElement out;
    for (const auto& [w1, c1] : a)
        for (const auto& [w2, c2] : b) {
            BetaPoly c = bp_mul(c1, c2);
            for (const auto& [w, cw] : mmr_product_basis(w1, w2, cap)) mmr_add(out, w, bp_mul(c, cw));
        }
    return out;
}

// Coproduct: disjoint prefix/suffix splits (weight 1) plus overlapping splits
// (weight beta), each side standardized.
inline MmrTensor mmr_coproduct_basis(const Word& w) {
    MmrTensor out;
    size_t n = w.size();
    auto add = [&](const Word& a, const Word& b, const BetaPoly& c) {
        auto key = std::make_pair(standardize(a), standardize(b));
        auto it = out.find(key);
        if (it == out.end()) out.emplace(key, c);
        else bp_add_inplace(it->second, c);
    };
    for (size_t i = 0; i <= n; ++i)
        add(Word(w.begin(), w.begin() + i), Word(w.begin() + i, w.end()), bp_const(1));
    for (size_t i = 1; i <= n; ++i)
        add(Word(w.begin(), w.begin() + i), Word(w.begin() + i - 1, w.end()), bp_monomial(1, 1));
    return out;
}

inline MmrTensor mmr_coproduct(const MmrElement& a) {
    MmrTensor out;
    for (const auto& [w, c] : a)
        for (const auto& [pair, cw] : mmr_coproduct_basis(w)) {
            auto it = out.find(pair);
            BetaPoly v = bp_mul(c, cw);
            if (it == out.end()) out.emplace(pair, v);
            else bp_add_inplace(it->second, v);
        }
    return out;
}

// Iterated coproduct with k legs (k >= 1).
inline std::map<std::vector<Word>, BetaPoly> mmr_coproduct_iterated(const MmrElement& a, int k) {
    std::map<std::vector<Word>, BetaPoly> cur;
    for (const auto& [w, c] : a) cur[{w}] = c;
    for (int step = 1; step < k; ++step) {
        std::map<std::vector<Word>, BetaPoly> next;
        for (const auto& [legs, c] : cur) {
            MmrElement last;
            last[legs.back()] = bp_const(1);
            for (const auto& [pair, cw] : mmr_coproduct(last)) {
                std::vector<Word> nl(legs.begin(), legs.end() - 1);
                nl.push_back(pair.first);
                nl.push_back(pair.second);
                auto it = next.find(nl);
                BetaPoly v = bp_mul(c, cw);
                if (it == next.end()) next.emplace(nl, v);
                else bp_add_inplace(it->second, v);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Zeta functionals.

inline bool strictly_increasing(const Word& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] >= w[i + 1]) return false;
    return true;
}

inline bool strictly_decreasing(const Word& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] <= w[i + 1]) return false;
    return true;
}

// Valley word: w1 > ... > wi < ... < wn for some i.
inline bool is_valley_word(const Word& w) {
    size_t n = w.size();
    for (size_t i = 0; i < n; ++i) {
        bool ok = true;
        for (size_t j = 0; j + 1 <= i; ++j)
            if (w[j] <= w[j + 1]) { ok = false; break; }
        for (size_t j = i; ok && j + 1 < n; ++j)
            if (w[j] >= w[j + 1]) ok = false;
        if (ok) return true;
    }
    return n == 0;
}

enum class ZetaKind { lt, gt, conv };

// Value on a plain packed word.
inline UniPoly zeta_word(const Word& w, ZetaKind kind) {
    UniPoly u;
    int n = (int)w.size();
    switch (kind) {
        case ZetaKind::lt:
            if (strictly_increasing(w)) u.add(n, 1, 0);
            break;
        case ZetaKind::gt:
            if (strictly_decreasing(w)) u.add(n, 1, 0);
            break;
        case ZetaKind::conv: {
            if (n == 0) { u.add(0, 1, 0); break; }
            if (is_valley_word(w)) { u.add(n, 2, 0); break; }
            // w1 > ... > wi = wi+1 < ... < wn
            for (int i = 1; i < n; ++i) {
                bool ok = w[i - 1] == w[i];
                for (int j = 0; ok && j + 1 < i; ++j)
                    if (w[j] <= w[j + 1]) ok = false;
                for (int j = i; ok && j + 1 < n; ++j)
                    if (w[j] >= w[j + 1]) ok = false;
                if (ok) { u.add(n, 1, 0); break; }
            }
            break;
        }
    }
    return u;
}

// Value on the pseudobasis element [w]_m (w a small multipermutation).
inline UniPoly zeta_element_basis(const Word& w, ZetaKind kind) {
    UniPoly u;
    int n = (int)w.size();
    switch (kind) {
        case ZetaKind::lt:
        case ZetaKind::gt:
            return zeta_word(w, kind);
        case ZetaKind::conv:
            if (n == 0) u.add(0, 1, 0);
            else if (is_valley_word(w)) {
                u.add(n, 2, 0);
                u.add(n + 1, 1, 1);  // beta * t^(n+1)
            }
            break;
    }
    return u;
}

inline UniPoly zeta_element(const MmrElement& a, ZetaKind kind) {
    UniPoly out;
    for (const auto& [w, c] : a) {
        UniPoly u = zeta_element_basis(w, kind);
        for (size_t k = 0; k < u.coeffs.size(); ++k) {
            BetaPoly prod = bp_mul(u.coeffs[k], c);
            for (size_t j = 0; j < prod.size(); ++j)
                if (prod[j] != 0) out.add((int)k, prod[j], (int)j);
        }
    }
    out.trim();
    return out;
}

// zeta_alpha: coefficient of t^{a1} x ... x t^{ak} in zeta^{(x)k} Delta^{(k-1)},
// with zeta = zeta_<.
inline BetaPoly zeta_alpha(const MmrElement& h, const Composition& alpha) {
    if (alpha.empty()) {  // counit
        auto it = h.find(Word{});
        return it == h.end() ? BetaPoly{} : it->second;
    }
    int k = (int)alpha.size();
    BetaPoly total;
    for (const auto& [legs, c] : mmr_coproduct_iterated(h, k)) {
        bool ok = true;
        for (int i = 0; i < k; ++i)
            if ((int)legs[i].size() != alpha[i] || !strictly_increasing(legs[i])) { ok = false; break; }
        if (ok) bp_add_inplace(total, c);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Set compositions.

using SetComp = std::vector<std::vector<int>>;  // blocks, each sorted ascending

inline int setcomp_size(const SetComp& A) {
    int n = 0;
    for (const auto& b : A) n += (int)b.size();
    return n;
}

inline std::string setcomp_to_string(const SetComp& A) {
    if (A.empty()) return "()";
    std::string s;
    for (const auto& b : A) {
        s += "{";
        for (size_t i = 0; i < b.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(b[i]);
        }
        s += "}";
    }
    return s;
}

inline SetComp setcomp_from_string(const std::string& s) {
    SetComp A;
    size_t pos = 0;
    while ((pos = s.find('{', pos)) != std::string::npos) {
        size_t end = s.find('}', pos);
        A.push_back({});
        for (int v : shape_from_string(s.substr(pos + 1, end - pos - 1))) A.back().push_back(v);
        std::sort(A.back().begin(), A.back().end());
        pos = end + 1;
    }
    return A;
}

// Block index (0-based) containing value v, or -1.
inline int setcomp_block_of(const SetComp& A, int v) {
    for (size_t j = 0; j < A.size(); ++j)
        if (std::binary_search(A[j].begin(), A[j].end(), v)) return (int)j;
    return -1;
}

inline std::set<int> setcomp_descents(const SetComp& A) {
    std::set<int> d;
    int n = setcomp_size(A);
    for (int i = 1; i < n; ++i)
        if (setcomp_block_of(A, i + 1) < setcomp_block_of(A, i)) d.insert(i);
    return d;
}

inline std::set<int> setcomp_peaks(const SetComp& A) {
    std::set<int> p;
    auto des = setcomp_descents(A);
    int n = setcomp_size(A);
    for (int i = 2; i < n; ++i)
        if (des.count(i) && !des.count(i - 1)) p.insert(i);
    return p;
}

inline int setcomp_o(const SetComp& A) {
    int n = setcomp_size(A), o = 0;
    for (int i = 1; i < n; ++i) {
        int b = setcomp_block_of(A, i);
        if (b >= 0 && b == setcomp_block_of(A, i + 1)) ++o;
    }
    return o;
}

inline bool is_big_multiperm(const SetComp& A) {
    for (const auto& b : A)
        for (size_t i = 0; i + 1 < b.size(); ++i)
            if (b[i + 1] == b[i] + 1) return false;
    return true;
}

// Membership in Sbar: whenever {i, i+1} lies in block A_j, the union of the
// first j blocks contains neither i-1 nor i+2.
inline bool is_sbar_multiperm(const SetComp& A) {
    int n = setcomp_size(A);
    std::set<int> seen;
    for (const auto& block : A) {
        for (int v : block) seen.insert(v);
        for (size_t i = 0; i + 1 < block.size(); ++i)
            if (block[i + 1] == block[i] + 1) {
                int a = block[i];
                if ((a - 1 >= 1 && seen.count(a - 1)) || (a + 2 <= n && seen.count(a + 2))) return false;
            }
    }
    return true;
}

// Star bijections between packed words and set compositions.
inline SetComp word_star(const Word& w) {
    SetComp A(word_max(w));
    for (size_t j = 0; j < w.size(); ++j) A[w[j] - 1].push_back((int)j + 1);
    return A;
}

inline Word setcomp_star(const SetComp& A) {
    Word w(setcomp_size(A));
    for (size_t i = 0; i < A.size(); ++i)
        for (int v : A[i]) w[v - 1] = (int)i + 1;
    return w;
}

// Order-preserving relabeling of the values to [n].
inline SetComp setcomp_standardize(const SetComp& A) {
    std::set<int> vals;
    for (const auto& b : A) vals.insert(b.begin(), b.end());
    std::map<int, int> phi;
    int next = 1;
    for (int v : vals) phi[v] = next++;
    SetComp r;
    for (const auto& b : A) {
        std::vector<int> nb;
        for (int v : b) nb.push_back(phi[v]);
        std::sort(nb.begin(), nb.end());
        if (!nb.empty()) r.push_back(nb);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Bullet product and the I_M normal form.

inline std::vector<SetComp> bullet_product(const SetComp& A, const SetComp& B) {
    int m = setcomp_size(A);
    SetComp Bs = B;
    for (auto& b : Bs)
        for (int& v : b) v += m;
    std::vector<SetComp> out;
    SetComp cur;
    std::function<void(size_t, size_t)> rec = [&](size_t i, size_t j) {
        if (i == A.size() && j == Bs.size()) {
            out.push_back(cur);
            return;
        }
        if (i < A.size()) {
            cur.push_back(A[i]);
            rec(i + 1, j);
            cur.pop_back();
        }
        if (j < Bs.size()) {
            cur.push_back(Bs[j]);
            rec(i, j + 1);
            cur.pop_back();
        }
        if (i < A.size() && j < Bs.size()) {
            std::vector<int> merged = A[i];
            merged.insert(merged.end(), Bs[j].begin(), Bs[j].end());
            std::sort(merged.begin(), merged.end());
            cur.push_back(merged);
            rec(i + 1, j + 1);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

struct NormalForm {
    SetComp rep;     // big multipermutation
    int beta_power;  // |B| - |rep|
};

// One reduction step: drop i+1 from the block containing both i and i+1,
// then standardize.  Always collapses the smallest eligible i.
inline NormalForm normal_form(const SetComp& B) {
    SetComp cur = B;
    int steps = 0;
    for (;;) {
        int n = setcomp_size(cur);
        int found = -1;
        for (int i = 1; i < n && found < 0; ++i) {
            int bi = setcomp_block_of(cur, i);
            if (bi >= 0 && bi == setcomp_block_of(cur, i + 1)) found = i;
        }
        if (found < 0) break;
        SetComp next;
        for (const auto& b : cur) {
            std::vector<int> nb;
            for (int v : b)
                if (v != found + 1) nb.push_back(v);
            if (!nb.empty()) next.push_back(nb);
        }
        cur = setcomp_standardize(next);
        ++steps;
    }
    return {cur, steps};
}

// ---------------------------------------------------------------------------
// Elements of MMR and the R basis.

using MmrBigElement = std::map<SetComp, BetaPoly>;

inline void mmrbig_add(MmrBigElement& a, const SetComp& A, const BetaPoly& c) {
    auto it = a.find(A);
    if (it == a.end()) a.emplace(A, c);
    else {
        bp_add_inplace(it->second, c);
        if (bp_is_zero(it->second)) a.erase(it);
    }
}

inline void mmrbig_add_reduced(MmrBigElement& a, const SetComp& A, const BetaPoly& c) {
    NormalForm nf = normal_form(A);
    BetaPoly shifted(nf.beta_power, Rational(0));
    shifted.insert(shifted.end(), c.begin(), c.end());
    mmrbig_add(a, nf.rep, shifted);
}

inline MmrBigElement mmrbig_product(const MmrBigElement& a, const MmrBigElement& b) {
    MmrBigElement out;
    for (const auto& [A, ca] : a)
        for (const auto& [B, cb] : b) {
            BetaPoly c = bp_mul(ca, cb);
            for (const auto& C : bullet_product(A, B)) mmrbig_add_reduced(out, C, c);
        }
    return out;
}

// All set compositions of [n].
inline std::vector<SetComp> set_compositions_of(int n) {
    std::vector<SetComp> out;
    std::vector<int> elems(n);
    std::iota(elems.begin(), elems.end(), 1);
    SetComp cur;
    std::function<void(std::vector<int>)> rec = [&](std::vector<int> rest) {
        if (rest.empty()) {
            out.push_back(cur);
            return;
        }
        int k = (int)rest.size();
        for (int mask = 1; mask < (1 << k); ++mask) {
            std::vector<int> block, rem;
            for (int i = 0; i < k; ++i) ((mask >> i) & 1 ? block : rem).push_back(rest[i]);
            cur.push_back(block);
            rec(rem);
            cur.pop_back();
        }
    };
    rec(elems);
    return out;
}

inline std::vector<SetComp> big_multiperms_of(int n) {
    std::vector<SetComp> out;
    for (auto& A : set_compositions_of(n))
        if (is_big_multiperm(A)) out.push_back(A);
    return out;
}

inline std::vector<SetComp> sbar_multiperms_of(int n) {
    std::vector<SetComp> out;
    for (auto& A : set_compositions_of(n))
        if (is_sbar_multiperm(A)) out.push_back(A);
    return out;
}

constexpr int kSetCompEnumerationCap = 8;

inline void check_setcomp_cap(int n, const char* who) {
    if (n > kSetCompEnumerationCap)
        throw std::invalid_argument(std::string(who) + ": enumeration cap " +
                                    std::to_string(kSetCompEnumerationCap) + " exceeded (n=" +
                                    std::to_string(n) + ")");
}

inline MmrBigElement r_element(const Composition& alpha) {
    int n = comp_size(alpha);
    check_setcomp_cap(n, "r_element");
    std::set<int> I = interval_set(alpha);
    MmrBigElement out;
    for (const auto& A : big_multiperms_of(n))
        if (setcomp_descents(A) == I) mmrbig_add(out, A, bp_const(1));
    return out;
}

// Expands a reduced MMR element over the R basis; requires that coefficients
// are constant on descent classes (which holds for products of R's).
inline std::map<Composition, BetaPoly, CanonicalLess> expand_over_r(const MmrBigElement& e) {
    std::map<Composition, BetaPoly, CanonicalLess> out;
    std::map<Composition, BetaPoly, CanonicalLess> ref;
    std::map<Composition, SetComp, CanonicalLess> witness;
    for (const auto& [A, c] : e) {
        Composition alpha = comp_from_set(setcomp_descents(A), setcomp_size(A));
        auto it = ref.find(alpha);
        if (it == ref.end()) {
            ref.emplace(alpha, c);
            witness.emplace(alpha, A);
        } else if (!(it->second == c)) {
            throw std::runtime_error("expand_over_r: coefficients not constant on descent class of " +
                                     shape_to_string(alpha));
        }
    }
    // Completeness: every big multipermutation in each descent class present.
    std::set<int> sizes;
    for (const auto& [A, c] : e) sizes.insert(setcomp_size(A));
    for (int n : sizes)
        for (const auto& A : big_multiperms_of(n)) {
            Composition alpha = comp_from_set(setcomp_descents(A), n);
            if (ref.count(alpha) && !e.count(A))
                throw std::runtime_error("expand_over_r: descent class of " + shape_to_string(alpha) +
                                         " incomplete");
        }
    for (auto& [alpha, c] : ref) out[alpha] = c;
    return out;
}

inline std::map<Composition, BetaPoly, CanonicalLess> r_product(const Composition& alpha,
                                                                const Composition& gamma) {
    check_setcomp_cap(comp_size(alpha) + comp_size(gamma), "r_product");
    return expand_over_r(mmrbig_product(r_element(alpha), r_element(gamma)));
}

// ---------------------------------------------------------------------------
// Enumeration of small multipermutations by length.

inline std::vector<Word> small_multiperms_of_length(int len) {
    std::vector<Word> out;
    Word cur;
    std::function<void(int)> rec = [&](int maxv) {
        if ((int)cur.size() == len) {
            if (word_max(cur) == maxv) out.push_back(cur);
            return;
        }
        for (int v = 1; v <= maxv + 1; ++v) {
            if (!cur.empty() && cur.back() == v) continue;
            cur.push_back(v);
            rec(std::max(maxv, v));
            cur.pop_back();
        }
    };
    if (len == 0) out.push_back({});
    else rec(0);
    return out;
}

}  // namespace khopf
