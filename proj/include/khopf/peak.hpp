#pragma once

// The abstract multipeak algebras MPeak_P (tpeak basis Pi) and MPeak_Q
// (opeak basis Thetabar): basis arithmetic by closed product/coproduct/
// antipode formulas, conversion between the bases, realization inside MMR,
// and the projection to shifted symmetric functions.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "khopf/rational.hpp"
#include "khopf/shapes.hpp"
#include "khopf/shifted.hpp"
#include "khopf/words.hpp"

namespace khopf {

enum class PeakBasis { tpeak, opeak };

struct PeakElement {
    PeakBasis basis = PeakBasis::tpeak;
    std::map<Composition, BetaPoly, CanonicalLess> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    BetaPoly coeff(const Composition& a) const {
        auto it = coeffs.find(a);
        return it == coeffs.end() ? BetaPoly{} : it->second;
    }
};

inline void peak_add(PeakElement& x, const Composition& a, const BetaPoly& c) {
    if (bp_is_zero(c)) return;
    if (!is_peak_composition(a)) return;  // Pi_a := 0 off the peak compositions
    auto it = x.coeffs.find(a);
    if (it == x.coeffs.end()) x.coeffs.emplace(a, c);
    else {
        bp_add_inplace(it->second, c);
        if (bp_is_zero(it->second)) x.coeffs.erase(it);
    }
}

inline PeakElement peak_unit(PeakBasis basis) {
    PeakElement e;
    e.basis = basis;
    e.coeffs[{}] = bp_const(1);
    return e;
}

inline PeakElement peak_generator(PeakBasis basis, const Composition& a) {
    if (!is_peak_composition(a))
        throw std::invalid_argument("peak_generator: " + shape_to_string(a) + " is not a peak composition");
    PeakElement e;
    e.basis = basis;
    e.coeffs[a] = bp_const(1);
    return e;
}

inline bool operator==(const PeakElement& x, const PeakElement& y) {
    return x.basis == y.basis && x.coeffs == y.coeffs;
}

// Text form "4*P[3,1] + 2b*P[2,1]" (P/Q prefix by basis, b = beta).
inline std::string peak_to_string(const PeakElement& x) {
    if (x.coeffs.empty()) return "0";
    std::string prefix = (x.basis == PeakBasis::tpeak) ? "P" : "Q";
    std::string out;
    for (const auto& [a, c] : x.coeffs) {
        std::string cs = bp_to_string(c);
        bool simple = true;  // single beta monomial?
        int nonzero = 0;
        for (const auto& v : c)
            if (v != 0) ++nonzero;
        simple = nonzero <= 1;
        if (!out.empty()) out += " + ";
        std::string term;
        if (cs == "1") term = "";
        else if (simple) term = cs + "*";
        else term = "(" + cs + ")*";
        out += term + prefix + "[" + shape_to_string(a) + "]";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Glued compositions.

namespace detail {
inline Composition glue_lhd(const Composition& a, const Composition& g) {  // a <| g: concatenation
    Composition r = a;
    r.insert(r.end(), g.begin(), g.end());
    return r;
}
inline Composition glue_rhd(const Composition& a, const Composition& g) {  // a |> g
    Composition r(a.begin(), a.end() - 1);
    r.push_back(a.back() + g.front());
    r.insert(r.end(), g.begin() + 1, g.end());
    return r;
}
inline Composition glue_circ(const Composition& a, const Composition& g) {  // a o g
    Composition r(a.begin(), a.end() - 1);
    r.push_back(a.back() + g.front() - 1);
    r.insert(r.end(), g.begin() + 1, g.end());
    return r;
}
inline Composition glue_brhd(const Composition& a, const Composition& g) {  // a |>> g (black)
    Composition r(a.begin(), a.end() - 1);
    r.push_back(a.back() + 1);
    r.push_back(g.front() - 1);
    r.insert(r.end(), g.begin() + 1, g.end());
    return r;
}
inline Composition glue_bullet(const Composition& a, const Composition& g) {  // a . g
    Composition r = a;
    r.push_back(g.front() - 1);
    r.insert(r.end(), g.begin() + 1, g.end());
    return r;
}
inline Composition glue_star(const Composition& a, const Composition& g) {  // a * g
    Composition r(a.begin(), a.end() - 1);
    r.push_back(a.back() - 2 + g.front());
    r.insert(r.end(), g.begin() + 1, g.end());
    return r;
}
}  // namespace detail

// Pi_a Pi_g = Pi_{a|>>g} + Pi_{a|>g} + Pi_{a<|g} + b Pi_{aog} + b Pi_{a.g},
// with non-peak indices suppressed.
inline PeakElement tpeak_mul_basis(const Composition& a, const Composition& g) {
    PeakElement out;
    out.basis = PeakBasis::tpeak;
    if (a.empty() || g.empty()) {
        peak_add(out, a.empty() ? g : a, bp_const(1));
        return out;
    }
    peak_add(out, detail::glue_brhd(a, g), bp_const(1));
    peak_add(out, detail::glue_rhd(a, g), bp_const(1));
    peak_add(out, detail::glue_lhd(a, g), bp_const(1));
    peak_add(out, detail::glue_circ(a, g), bp_monomial(1, 1));
    peak_add(out, detail::glue_bullet(a, g), bp_monomial(1, 1));
    return out;
}

// Thetabar_a Thetabar_g: six-term formula with the r/s edge flags.
inline PeakElement opeak_mul_basis(const Composition& a, const Composition& g) {
    PeakElement out;
    out.basis = PeakBasis::opeak;
    if (a.empty() || g.empty()) {
        peak_add(out, a.empty() ? g : a, bp_const(1));
        return out;
    }
    int r = (a.back() > 1) ? 1 : 0;
    int s = (g.front() > 2 || (g.size() == 1 && g.front() == 2)) ? 1 : 0;
    peak_add(out, detail::glue_brhd(a, g), bp_const(1));
    peak_add(out, detail::glue_rhd(a, g), bp_const(2));
    peak_add(out, detail::glue_lhd(a, g), bp_const(1));
    peak_add(out, detail::glue_circ(a, g), bp_monomial(1 + r + s, 1));
    peak_add(out, detail::glue_bullet(a, g), bp_monomial(1, 1));
    if (r && s) peak_add(out, detail::glue_star(a, g), bp_monomial(1, 2));
    return out;
}

inline PeakElement peak_mul(const PeakElement& x, const PeakElement& y) {
    if (x.basis != y.basis) throw std::invalid_argument("peak_mul: convert to a common basis first");
    PeakElement out;
    out.basis = x.basis;
    for (const auto& [a, ca] : x.coeffs)
        for (const auto& [g, cg] : y.coeffs) {
            PeakElement t = (x.basis == PeakBasis::tpeak) ? tpeak_mul_basis(a, g) : opeak_mul_basis(a, g);
            BetaPoly c = bp_mul(ca, cg);
            for (const auto& [d, cd] : t.coeffs) peak_add(out, d, bp_mul(c, cd));
        }
    return out;
}

inline PeakElement peak_scale(const PeakElement& x, const BetaPoly& c) {
    PeakElement out;
    out.basis = x.basis;
    for (const auto& [a, ca] : x.coeffs) peak_add(out, a, bp_mul(ca, c));
    return out;
}

inline PeakElement peak_sum(const PeakElement& x, const PeakElement& y) {
    if (x.basis != y.basis) throw std::invalid_argument("peak_sum: basis mismatch");
    PeakElement out = x;
    for (const auto& [a, c] : y.coeffs) peak_add(out, a, c);
    return out;
}

// ---------------------------------------------------------------------------
// Basis conversion (Lemma: opeak in terms of tpeak and back).

namespace detail {
// Iterates delta over the given per-part bounds (inclusive), calling fn.
inline void for_each_delta(const std::vector<int>& bounds, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> d(bounds.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == bounds.size()) { fn(d); return; }
        for (int v = 0; v <= bounds[i]; ++v) {
            d[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
}
}  // namespace detail

// Thetabar_a = sum_{delta in {0,1}^l} 2^{l-|delta|} beta^{|delta|} Pi_{a-delta}.
inline PeakElement opeak_to_tpeak_basis(const Composition& a) {
    PeakElement out;
    out.basis = PeakBasis::tpeak;
    int l = (int)a.size();
    detail::for_each_delta(std::vector<int>(l, 1), [&](const std::vector<int>& d) {
        Composition b = a;
        int dsum = 0;
        for (int i = 0; i < l; ++i) {
            b[i] -= d[i];
            dsum += d[i];
        }
        if (!is_peak_composition(b)) return;
        peak_add(out, b, bp_monomial(Rational(Integer(1) << (l - dsum)), dsum));
    });
    return out;
}

// Pi_a = sum_{delta >= 0} 2^{-l-|delta|} (-beta)^{|delta|} Thetabar_{a-delta};
// finite because parts must stay positive (and >= 2 except the last).
inline PeakElement tpeak_to_opeak_basis(const Composition& a) {
    PeakElement out;
    out.basis = PeakBasis::opeak;
    int l = (int)a.size();
    std::vector<int> bounds(l);
    for (int i = 0; i < l; ++i) bounds[i] = a[i] - ((i + 1 < l) ? 2 : 1);
    detail::for_each_delta(bounds, [&](const std::vector<int>& d) {
        Composition b = a;
        int dsum = 0;
        for (int i = 0; i < l; ++i) {
            b[i] -= d[i];
            dsum += d[i];
        }
        if (!is_peak_composition(b)) return;
        Rational c(1, Integer(1) << (l + dsum));
        if (dsum % 2 == 1) c = -c;
        peak_add(out, b, bp_monomial(c, dsum));
    });
    return out;
}

inline PeakElement peak_convert(const PeakElement& x, PeakBasis to) {
    if (x.basis == to) return x;
    PeakElement out;
    out.basis = to;
    for (const auto& [a, c] : x.coeffs) {
        PeakElement t =
            (to == PeakBasis::tpeak) ? opeak_to_tpeak_basis(a) : tpeak_to_opeak_basis(a);
        for (const auto& [b, cb] : t.coeffs) peak_add(out, b, bp_mul(c, cb));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coproducts and antipodes on the generators.

using PeakTensor = std::map<std::pair<Composition, Composition>, BetaPoly>;

// Delta(Thetabar_n) = sum Thetabar_i (x) Thetabar_{n-i};
// Delta(Pi_n) = 1 (x) Pi_n + sum_{i>=1} Pi_i (x) Thetabar_{n-i}.
inline PeakTensor coproduct_generator(int n, PeakBasis basis) {
    if (n < 1) throw std::invalid_argument("coproduct_generator: n >= 1");
    PeakTensor out;
    if (basis == PeakBasis::opeak) {
        for (int i = 0; i <= n; ++i) {
            Composition l = (i == 0) ? Composition{} : Composition{i};
            Composition r = (i == n) ? Composition{} : Composition{n - i};
            out[{l, r}] = bp_const(1);
        }
    } else {
        out[{{}, {n}}] = bp_const(1);
        for (int i = 1; i <= n; ++i) {
            Composition r = (i == n) ? Composition{} : Composition{n - i};
            out[{{i}, r}] = bp_const(1);
        }
    }
    return out;
}

// S(Thetabar_n) = (-1)^n sum_k C(n-1, k-1) beta^{n-k} Thetabar_k;
// S(Pi_n)       = (-1)^n sum_k C(n, k)     beta^{n-k} Pi_k.
inline PeakElement antipode_generator(int n, PeakBasis basis) {
    if (n < 1) throw std::invalid_argument("antipode_generator: n >= 1");
    PeakElement out;
    out.basis = basis;
    Integer binom = 1;
    for (int k = 1; k <= n; ++k) {
        Integer c;
        if (basis == PeakBasis::opeak) {
            // C(n-1, k-1)
            c = 1;
            for (int i = 1; i <= k - 1; ++i) c = c * (n - i) / i;
        } else {
            c = 1;
            for (int i = 1; i <= k; ++i) c = c * (n - i + 1) / i;
        }
        Rational v(c);
        if (n % 2 == 1) v = -v;
        peak_add(out, {k}, bp_monomial(v, n - k));
    }
    (void)binom;
    return out;
}

// ---------------------------------------------------------------------------
// Realization inside MMR.

inline MmrBigElement realize_in_mmr(const Composition& alpha, PeakBasis basis) {
    if (!is_peak_composition(alpha)) throw std::invalid_argument("realize_in_mmr: not a peak composition");
    int n = comp_size(alpha);
    check_setcomp_cap(n, "realize_in_mmr");
    std::set<int> I = interval_set(alpha);
    MmrBigElement out;
    if (basis == PeakBasis::tpeak) {
        for (const auto& A : big_multiperms_of(n))
            if (setcomp_peaks(A) == I) mmrbig_add(out, A, bp_const(1));
    } else {
        int l = (int)alpha.size();
        for (const auto& A : sbar_multiperms_of(n))
            if (setcomp_peaks(A) == I) {
                int e = l - setcomp_o(A);
                mmrbig_add_reduced(out, A, bp_const(Rational(Integer(1) << e)));
            }
    }
    return out;
}

inline MmrBigElement realize_element(const PeakElement& x) {
    MmrBigElement out;
    for (const auto& [a, c] : x.coeffs) {
        for (const auto& [A, cA] : realize_in_mmr(a, x.basis)) mmrbig_add(out, A, bp_mul(c, cA));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Projection to shifted symmetric functions: Pi_a -> sum_l k^a_l b^{|a|-|l|} gp_l.

struct SymExpansion {
    SymFamilyTag family;
    std::map<StrictPartition, BetaPoly, CanonicalLess> coeffs;
};

inline SymExpansion project_to_sym(const PeakElement& x) {
    PeakElement t = peak_convert(x, PeakBasis::tpeak);
    SymExpansion out;
    out.family = SymFamilyTag::gp;
    for (const auto& [a, c] : t.coeffs) {
        int n = comp_size(a);
        for (int m = 0; m <= n; ++m)
            for (const auto& lam : strict_partitions_of(m)) {
                long long k = kcoeff(a, lam);
                if (k == 0) continue;
                BetaPoly contrib = bp_mul(c, bp_monomial(Rational(k), n - m));
                auto it = out.coeffs.find(lam);
                if (it == out.coeffs.end()) out.coeffs.emplace(lam, contrib);
                else bp_add_inplace(it->second, contrib);
            }
    }
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = bp_is_zero(it->second) ? out.coeffs.erase(it) : std::next(it);
    return out;
}

// Evaluates a gp-expansion as a truncated polynomial.
inline TruncPoly sym_expansion_to_poly(const SymExpansion& e, const TruncationContext& ctx) {
    TruncPoly out(ctx);
    for (const auto& [lam, c] : e.coeffs) out += sym_basis(e.family, lam, ctx).beta_scaled(c);
    return out;
}

}  // namespace khopf
