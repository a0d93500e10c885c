#pragma once

// Quasisymmetric bases: monomial M, multifundamental L, the multipeak
// families K and Kbar, the multiset antipode series for K, plus the
// morphisms Theta, omega and the QSym antipode.
//
// Primed alphabet encoding: i' -> 2i-1, i -> 2i, so the total order and
// parity tests are integer comparisons; x_{ceil(v)} = x_{(v+1)/2}.

#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "khopf/exactpoly.hpp"
#include "khopf/expansion.hpp"
#include "khopf/shapes.hpp"
#include "khopf/words.hpp"

namespace khopf {

enum class QBasisTag { M, L, L0, K, Kbar, K_antipode };

inline std::string qbasis_name(QBasisTag t) {
    switch (t) {
        case QBasisTag::M: return "M";
        case QBasisTag::L: return "L";
        case QBasisTag::L0: return "L0";
        case QBasisTag::K: return "K";
        case QBasisTag::Kbar: return "Kbar";
        case QBasisTag::K_antipode: return "SK";
    }
    return "?";
}

namespace detail {

inline int primed_var(int v) { return (v + 1) / 2; }   // 1-based variable index
inline bool primed_is_primed(int v) { return v % 2 == 1; }

// Shared memo for constructed basis elements.
inline TruncPoly memo_poly(const std::string& key, const std::function<TruncPoly()>& build) {
    static std::map<std::string, TruncPoly> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    TruncPoly p = build();
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(p)).first->second;
}

// Enumerates N-tuples (S_1 <= ... <= S_N) of nonempty (multi)sets over the
// primed alphabet subject to the K/Kbar boundary conditions, accumulating
// (sign*beta)^{|S|-N} x^S.
inline TruncPoly peak_tuple_series(const Composition& alpha, const TruncationContext& ctx, bool kbar,
                                   bool multiset, bool negative_beta) {
    const int N = comp_size(alpha);
    const int maxval = 2 * ctx.num_vars;
    const int maxtotal = std::min(ctx.max_xdeg, N + ctx.max_betadeg);
    std::set<int> I = interval_set(alpha);

    TruncPoly out(ctx);
    if (N == 0) return poly_one(ctx);
    if (N > maxtotal) return out;

    std::vector<int> varexp(ctx.num_vars, 0);
    int total = 0;

    // i: 0-based index of the set being built; last: last value placed in the
    // current set (0 when empty); boundlow: minimal allowed first value.
    std::function<void(int, int)> start_set;   // (i, boundlow)
    std::function<void(int, int)> extend_set;  // (i, last)

    auto evens_only_set = [&](int i) { return kbar && (i == 0 || I.count(i) > 0); };

    extend_set = [&](int i, int last) {
        // Close the current set and start the next one, or add more elements.
        if (i + 1 == N) {
            Monomial m{varexp, total - N};
            out.add_term(m, (negative_beta && (total - N) % 2 == 1) ? Rational(-1) : Rational(1));
        } else if (total + (N - i - 1) <= maxtotal) {
            // next set: min >= last, equality allowed only with matching parity
            bool share_ok = I.count(i + 1) ? primed_is_primed(last) : !primed_is_primed(last);
            start_set(i + 1, last + (share_ok ? 0 : 1));
        }
        if (total < maxtotal) {
            int from = multiset ? last : last + 1;
            bool evens = evens_only_set(i);
            for (int v = from; v <= maxval; ++v) {
                if (evens && primed_is_primed(v)) continue;
                varexp[primed_var(v) - 1] += 1;
                total += 1;
                extend_set(i, v);
                varexp[primed_var(v) - 1] -= 1;
                total -= 1;
            }
        }
    };

    start_set = [&](int i, int boundlow) {
        bool evens = evens_only_set(i);
        for (int v = std::max(1, boundlow); v <= maxval; ++v) {
            if (evens && primed_is_primed(v)) continue;
            if (total + 1 + (N - i - 1) > maxtotal) break;
            varexp[primed_var(v) - 1] += 1;
            total += 1;
            extend_set(i, v);
            varexp[primed_var(v) - 1] -= 1;
            total -= 1;
        }
    };

    start_set(0, 1);
    return out;
}

// Multifundamental L: tuples of nonempty subsets of positives, strict
// boundary at positions in I(alpha).
inline TruncPoly multifundamental_series(const Composition& alpha, const TruncationContext& ctx) {
    const int N = comp_size(alpha);
    const int maxval = ctx.num_vars;
    const int maxtotal = std::min(ctx.max_xdeg, N + ctx.max_betadeg);
    std::set<int> I = interval_set(alpha);

    TruncPoly out(ctx);
    if (N == 0) return poly_one(ctx);
    if (N > maxtotal) return out;

    std::vector<int> varexp(ctx.num_vars, 0);
    int total = 0;

    std::function<void(int, int)> start_set;
    std::function<void(int, int)> extend_set;

    extend_set = [&](int i, int last) {
        if (i + 1 == N) {
            Monomial m{varexp, total - N};
            out.add_term(m, 1);
        } else if (total + (N - i - 1) <= maxtotal) {
            bool strict = I.count(i + 1) > 0;
            start_set(i + 1, last + (strict ? 1 : 0));
        }
        if (total < maxtotal) {
            for (int v = last + 1; v <= maxval; ++v) {
                varexp[v - 1] += 1;
                total += 1;
                extend_set(i, v);
                varexp[v - 1] -= 1;
                total -= 1;
            }
        }
    };

    start_set = [&](int i, int boundlow) {
        for (int v = std::max(1, boundlow); v <= maxval; ++v) {
            if (total + 1 + (N - i - 1) > maxtotal) break;
            varexp[v - 1] += 1;
            total += 1;
            extend_set(i, v);
            varexp[v - 1] -= 1;
            total -= 1;
        }
    };

    start_set(0, 1);
    return out;
}

}  // namespace detail

inline TruncPoly qsym_basis(QBasisTag tag, const Composition& alpha, const TruncationContext& ctx) {
    if (!is_composition(alpha)) throw std::invalid_argument("qsym_basis: invalid composition");
    if ((tag == QBasisTag::K || tag == QBasisTag::Kbar || tag == QBasisTag::K_antipode) &&
        !is_peak_composition(alpha))
        throw std::invalid_argument("qsym_basis: " + qbasis_name(tag) + " requires a peak composition, got " +
                                    shape_to_string(alpha));
    std::string key = qbasis_name(tag) + "/" + shape_to_string(alpha) + "/" + ctx.fingerprint();
    return detail::memo_poly(key, [&]() -> TruncPoly {
        switch (tag) {
            case QBasisTag::M: return detail::monomial_qsym_raw(alpha, ctx);
            case QBasisTag::L: return detail::multifundamental_series(alpha, ctx);
            case QBasisTag::L0: {
                TruncPoly p(ctx);
                std::set<int> I = interval_set(alpha);
                for (const auto& gamma : compositions_of(comp_size(alpha))) {
                    std::set<int> J = interval_set(gamma);
                    bool refines = true;
                    for (int v : I)
                        if (!J.count(v)) { refines = false; break; }
                    if (refines) p += detail::monomial_qsym_raw(gamma, ctx);
                }
                return p;
            }
            case QBasisTag::K: return detail::peak_tuple_series(alpha, ctx, false, false, false);
            case QBasisTag::Kbar: return detail::peak_tuple_series(alpha, ctx, true, false, false);
            case QBasisTag::K_antipode: return detail::peak_tuple_series(alpha, ctx, false, true, true);
        }
        throw std::logic_error("unreachable");
    });
}

// All indices of the family with size <= maxsize (default: up to D).
inline std::vector<BasisElement> qsym_family(QBasisTag tag, const TruncationContext& ctx, int maxsize = -1) {
    if (maxsize < 0) maxsize = ctx.max_xdeg;
    bool peak_indexed =
        (tag == QBasisTag::K || tag == QBasisTag::Kbar || tag == QBasisTag::K_antipode);
    std::vector<BasisElement> out;
    for (int n = 0; n <= maxsize; ++n) {
        auto idx = peak_indexed ? peak_compositions_of(n) : compositions_of(n);
        for (const auto& a : idx)
            out.push_back({shape_to_string(a), n, qsym_basis(tag, a, ctx)});
    }
    return out;
}

struct BasisExpansion {
    std::string family;
    TruncationContext ctx;
    std::map<std::string, BetaPoly> coeffs;
    bool residual_zero = true;
    std::string witness;

    BetaPoly coeff_key(const std::string& key) const {
        auto it = coeffs.find(key);
        return it == coeffs.end() ? BetaPoly{} : it->second;
    }
    BetaPoly coeff(const std::vector<int>& key) const { return coeff_key(shape_to_string(key)); }
};

inline BasisExpansion expand_in(const TruncPoly& f, QBasisTag tag) {
    BasisExpansion be;
    be.family = qbasis_name(tag);
    be.ctx = f.ctx();
    if (tag == QBasisTag::M) {
        // Direct pattern extraction; valid for quasisymmetric input.
        ClassifyResult cls = classify(f);
        if (!cls.quasisymmetric) {
            be.residual_zero = false;
            be.witness = cls.qsym_witness ? monomial_to_string(cls.qsym_witness->second) : "not quasisymmetric";
            return be;
        }
        for (const auto& [m, c] : f.terms()) {
            std::vector<int> where;
            std::vector<int> pat = exponent_pattern(m, &where);
            bool at_front = true;
            for (size_t i = 0; i < where.size(); ++i)
                if (where[i] != (int)i) { at_front = false; break; }
            if (at_front) bp_add_inplace(be.coeffs[shape_to_string(pat)], bp_monomial(c, m.b));
        }
        for (auto it = be.coeffs.begin(); it != be.coeffs.end();)
            it = bp_is_zero(it->second) ? be.coeffs.erase(it) : std::next(it);
        return be;
    }
    ExpansionResult r = expand_in_basis(f, qsym_family(tag, f.ctx()), +1);
    be.coeffs = std::move(r.coeffs);
    be.residual_zero = r.residual_zero;
    be.witness = r.witness;
    return be;
}

// ---------------------------------------------------------------------------
// Theta, omega, antipode, dual pairings.

// Theta(L_alpha) = K_{Lambda(alpha)}, extended linearly and continuously.
inline TruncPoly theta(const TruncPoly& f) {
    BasisExpansion le = expand_in(f, QBasisTag::L);
    if (!le.residual_zero)
        throw std::invalid_argument("theta: input not expandable in L within context (witness " +
                                    le.witness + ")");
    TruncPoly out(f.ctx());
    for (const auto& [key, c] : le.coeffs) {
        Composition alpha = shape_from_string(key);
        out += qsym_basis(QBasisTag::K, lambda_peak(alpha), f.ctx()).beta_scaled(c);
    }
    return out;
}

namespace detail {
inline TruncPoly omega_like(const TruncPoly& f, bool antipode) {
    BasisExpansion le = expand_in(f, QBasisTag::L0);
    if (!le.residual_zero)
        throw std::invalid_argument("omega/antipode: input not expandable in the fundamental basis (witness " +
                                    le.witness + ")");
    TruncPoly out(f.ctx());
    for (const auto& [key, c] : le.coeffs) {
        Composition alpha = shape_from_string(key);
        BetaPoly cc = c;
        if (antipode && comp_size(alpha) % 2 == 1)
            for (auto& x : cc) x = -x;
        out += qsym_basis(QBasisTag::L0, comp_transpose(alpha), f.ctx()).beta_scaled(cc);
    }
    return out;
}
}  // namespace detail

// omega(L_alpha) = L_{alpha^t} on the beta=0 fundamental family (beta inert).
inline TruncPoly omega(const TruncPoly& f) { return detail::omega_like(f, false); }

// S(L_alpha) = (-1)^{|alpha|} L_{alpha^t}.
inline TruncPoly antipode_qsym(const TruncPoly& f) { return detail::omega_like(f, true); }

enum class DualForm { NSym_QSym, Peak_QSym };

// <R_alpha, .> / [Pi_alpha, .]: coefficient of L_alpha (resp. K_alpha).
inline BetaPoly pair_dual(const Composition& index, const TruncPoly& f, DualForm form) {
    QBasisTag tag = (form == DualForm::NSym_QSym) ? QBasisTag::L : QBasisTag::K;
    BasisExpansion be = expand_in(f, tag);
    if (!be.residual_zero)
        throw std::invalid_argument("pair_dual: expansion failed (witness " + be.witness + ")");
    return be.coeff(index);
}

// ---------------------------------------------------------------------------
// Word-level access to the peak coproduct.

// A small multipermutation with Des(w) = I(alpha); when alpha is a peak
// composition this also has Peak(w) = I(alpha).
inline Word word_with_descent_comp(const Composition& alpha) {
    Word w;
    int k = (int)alpha.size();
    std::vector<int> base(k + 1, 0);
    for (int j = k - 1; j >= 0; --j) base[j] = base[j + 1] + alpha[j];
    // run j (0-based) gets ascending values base[j+1]+1 .. base[j+1]+alpha[j]
    for (int j = 0; j < k; ++j)
        for (int v = 1; v <= alpha[j]; ++v) w.push_back(base[j + 1] + v);
    return w;
}

struct KTensorTerm {
    Composition left, right;
    BetaPoly coeff;
};

// Delta(K_alpha) through any word with peak composition alpha.
inline std::vector<KTensorTerm> k_coproduct_terms(const Composition& alpha) {
    if (!is_peak_composition(alpha)) throw std::invalid_argument("k_coproduct_terms: not a peak composition");
    Word w = word_with_descent_comp(alpha);
    if (alpha_peak(w) != alpha) throw std::logic_error("k_coproduct_terms: word construction failed");
    std::map<std::pair<std::string, std::string>, BetaPoly> acc;
    size_t n = w.size();
    auto add = [&](const Word& a, const Word& b, const BetaPoly& c) {
        auto key = std::make_pair(shape_to_string(alpha_peak(a)), shape_to_string(alpha_peak(b)));
        bp_add_inplace(acc[key], c);
    };
    for (size_t i = 0; i <= n; ++i)
        add(Word(w.begin(), w.begin() + i), Word(w.begin() + i, w.end()), bp_const(1));
    for (size_t i = 1; i <= n; ++i)
        add(Word(w.begin(), w.begin() + i), Word(w.begin() + i - 1, w.end()), bp_monomial(1, 1));
    std::vector<KTensorTerm> out;
    for (const auto& [key, c] : acc)
        out.push_back({shape_from_string(key.first), shape_from_string(key.second), c});
    return out;
}

// S(K_gamma): the multiset series evaluated at gamma^flat, with the sign
// (-1)^{|gamma|} required by the antipode axiom (cross-checked against the
// fundamental-basis antipode in the tests).
inline TruncPoly antipode_K(const Composition& gamma, const TruncationContext& ctx) {
    TruncPoly p = qsym_basis(QBasisTag::K_antipode, comp_flat(gamma), ctx);
    return (comp_size(gamma) % 2) ? p.scaled(-1) : p;
}

}  // namespace khopf
