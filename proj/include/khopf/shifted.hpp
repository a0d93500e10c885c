#pragma once

// Shifted and unshifted symmetric function families: s, P, Q, G, g, GP, GQ,
// gp, gq, JP, JQ, jp, jq, J, j, with skew and //-variants, structure
// constants, closed change-of-basis formulas, the Cauchy kernel, antipode
// identity checks and positivity scans.
//
// Unshifted G/g follow the set-valued-tableau / reverse-plane-partition
// conventions that make <g_l, G_m> = delta and gp_n = sum g_(i,1^(n-i)) hold;
// both are verified by the test suite rather than assumed.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "khopf/exactpoly.hpp"
#include "khopf/expansion.hpp"
#include "khopf/qsym.hpp"
#include "khopf/shapes.hpp"

namespace khopf {

enum class SymFamilyTag { s, P, Q, G, g, GP, GQ, gp, gq, JP, JQ, jp, jq, J, j };

inline std::string sym_name(SymFamilyTag t) {
    switch (t) {
        case SymFamilyTag::s: return "s";
        case SymFamilyTag::P: return "P";
        case SymFamilyTag::Q: return "Q";
        case SymFamilyTag::G: return "G";
        case SymFamilyTag::g: return "g";
        case SymFamilyTag::GP: return "GP";
        case SymFamilyTag::GQ: return "GQ";
        case SymFamilyTag::gp: return "gp";
        case SymFamilyTag::gq: return "gq";
        case SymFamilyTag::JP: return "JP";
        case SymFamilyTag::JQ: return "JQ";
        case SymFamilyTag::jp: return "jp";
        case SymFamilyTag::jq: return "jq";
        case SymFamilyTag::J: return "J";
        case SymFamilyTag::j: return "j";
    }
    return "?";
}

inline bool sym_is_shifted(SymFamilyTag t) {
    switch (t) {
        case SymFamilyTag::s:
        case SymFamilyTag::G:
        case SymFamilyTag::g:
        case SymFamilyTag::J:
        case SymFamilyTag::j: return false;
        default: return true;
    }
}

// +1: xdeg - betadeg == |index| (G-type); -1: xdeg + betadeg == |index| (g-type).
inline int sym_grading(SymFamilyTag t) {
    switch (t) {
        case SymFamilyTag::g:
        case SymFamilyTag::gp:
        case SymFamilyTag::gq:
        case SymFamilyTag::j:
        case SymFamilyTag::jp:
        case SymFamilyTag::jq: return -1;
        default: return +1;
    }
}

namespace detail {

struct Grid {
    std::vector<Box> boxes;           // sorted row-major (row, col ascending)
    std::vector<int> left, below;     // neighbor index in boxes, or -1
    std::vector<bool> diagonal;       // col == row (shifted diagrams)

    static Grid shifted(const StrictPartition& lam, const StrictPartition& mu) {
        return make(shifted_diagram(lam, mu));
    }
    static Grid unshifted(const std::vector<int>& lam, const std::vector<int>& mu) {
        std::vector<Box> boxes;
        if ((int)mu.size() > (int)lam.size()) return make(boxes);
        for (int i = 1; i <= (int)lam.size(); ++i) {
            int lo = (i <= (int)mu.size()) ? mu[i - 1] : 0;
            if (lo > lam[i - 1]) return make({});
            for (int j = lo + 1; j <= lam[i - 1]; ++j) boxes.push_back({i, j});
        }
        return make(boxes);
    }
    static Grid make(std::vector<Box> boxes) {
        std::sort(boxes.begin(), boxes.end());
        Grid g;
        g.boxes = boxes;
        auto find = [&](int r, int c) -> int {
            for (int i = 0; i < (int)boxes.size(); ++i)
                if (boxes[i].row == r && boxes[i].col == c) return i;
            return -1;
        };
        for (const auto& b : boxes) {
            g.left.push_back(find(b.row, b.col - 1));
            g.below.push_back(find(b.row - 1, b.col));
            g.diagonal.push_back(b.row == b.col);
        }
        return g;
    }
};

inline bool even_value(int v) { return v % 2 == 0; }  // unprimed in the encoding

// Set/multiset-valued tableau enumerator over the primed alphabet.
//   shifted semistandardness: a boundary value shared along a row must be
//   unprimed, along a column primed; P-flavor bans primed diagonal entries.
// Accumulates (sign)^(|T|-n) beta^(|T|-n) x^T into `out`.
inline void shifted_set_valued_series(const Grid& grid, const TruncationContext& ctx, bool ban_primed_diag,
                                      bool multiset, bool negative_beta, TruncPoly& out) {
    const int nboxes = (int)grid.boxes.size();
    const int maxval = 2 * ctx.num_vars;
    const int maxtotal = std::min(ctx.max_xdeg, nboxes + ctx.max_betadeg);
    if (nboxes == 0) {
        out += poly_one(ctx);
        return;
    }
    if (nboxes > maxtotal) return;

    std::vector<int> varexp(ctx.num_vars, 0);
    std::vector<int> boxmax(nboxes, 0);
    int total = 0;

    std::function<void(int)> start_box;
    std::function<void(int, int)> extend_box;

    extend_box = [&](int bi, int last) {
        boxmax[bi] = last;
        if (bi + 1 == nboxes) {
            Monomial m{varexp, total - nboxes};
            out.add_term(m, (negative_beta && (total - nboxes) % 2 == 1) ? Rational(-1) : Rational(1));
        } else if (total + (nboxes - bi - 1) <= maxtotal) {
            start_box(bi + 1);
        }
        if (total < maxtotal) {
            int from = multiset ? last : last + 1;
            for (int v = from; v <= maxval; ++v) {
                if (ban_primed_diag && grid.diagonal[bi] && !even_value(v)) continue;
                varexp[(v + 1) / 2 - 1] += 1;
                total += 1;
                extend_box(bi, v);
                varexp[(v + 1) / 2 - 1] -= 1;
                total -= 1;
            }
        }
    };

    start_box = [&](int bi) {
        int lo = 1;
        if (grid.left[bi] >= 0) {
            int m = boxmax[grid.left[bi]];
            lo = std::max(lo, m + (even_value(m) ? 0 : 1));  // row share: unprimed only
        }
        if (grid.below[bi] >= 0) {
            int m = boxmax[grid.below[bi]];
            lo = std::max(lo, m + (even_value(m) ? 1 : 0));  // column share: primed only
        }
        for (int v = lo; v <= maxval; ++v) {
            if (ban_primed_diag && grid.diagonal[bi] && !even_value(v)) continue;
            if (total + 1 + (nboxes - bi - 1) > maxtotal) break;
            varexp[(v + 1) / 2 - 1] += 1;
            total += 1;
            extend_box(bi, v);
            varexp[(v + 1) / 2 - 1] -= 1;
            total -= 1;
        }
    };

    start_box(0);
}

// Unshifted set-valued tableaux over the plain alphabet (rows weakly
// increasing with shares allowed, columns strictly increasing).
inline void set_valued_series(const Grid& grid, const TruncationContext& ctx, TruncPoly& out) {
    const int nboxes = (int)grid.boxes.size();
    const int maxval = ctx.num_vars;
    const int maxtotal = std::min(ctx.max_xdeg, nboxes + ctx.max_betadeg);
    if (nboxes == 0) {
        out += poly_one(ctx);
        return;
    }
    if (nboxes > maxtotal) return;

    std::vector<int> varexp(ctx.num_vars, 0);
    std::vector<int> boxmax(nboxes, 0);
    int total = 0;

    std::function<void(int)> start_box;
    std::function<void(int, int)> extend_box;

    extend_box = [&](int bi, int last) {
        boxmax[bi] = last;
        if (bi + 1 == nboxes) {
            out.add_term(Monomial{varexp, total - nboxes}, 1);
        } else if (total + (nboxes - bi - 1) <= maxtotal) {
            start_box(bi + 1);
        }
        if (total < maxtotal) {
            for (int v = last + 1; v <= maxval; ++v) {
                varexp[v - 1] += 1;
                total += 1;
                extend_box(bi, v);
                varexp[v - 1] -= 1;
                total -= 1;
            }
        }
    };

    start_box = [&](int bi) {
        int lo = 1;
        if (grid.left[bi] >= 0) lo = std::max(lo, boxmax[grid.left[bi]]);       // weak along rows
        if (grid.below[bi] >= 0) lo = std::max(lo, boxmax[grid.below[bi]] + 1); // strict up columns
        for (int v = lo; v <= maxval; ++v) {
            if (total + 1 + (nboxes - bi - 1) > maxtotal) break;
            varexp[v - 1] += 1;
            total += 1;
            extend_box(bi, v);
            varexp[v - 1] -= 1;
            total -= 1;
        }
    };

    start_box(0);
}

// Shifted reverse plane partitions: single entries, weakly increasing rows
// and columns, optional all-primed diagonal.  Weight: distinct columns per
// unprimed value plus distinct rows per primed value; term
// (-beta)^(n - |wt|) x^wt.
inline void shifted_rpp_series(const Grid& grid, const TruncationContext& ctx, bool primed_diag_required,
                               TruncPoly& out) {
    const int nboxes = (int)grid.boxes.size();
    const int maxval = 2 * ctx.num_vars;
    if (nboxes == 0) {
        out += poly_one(ctx);
        return;
    }
    std::vector<int> entry(nboxes, 0);

    auto finish = [&]() {
        // wt: for unprimed v count distinct columns, for primed v distinct rows.
        std::map<int, std::set<int>> occupancy;  // value -> set of cols (unprimed) or rows (primed)
        for (int i = 0; i < nboxes; ++i) {
            int v = entry[i];
            occupancy[v].insert(even_value(v) ? grid.boxes[i].col : grid.boxes[i].row);
        }
        std::vector<int> varexp(ctx.num_vars, 0);
        int wt = 0;
        for (const auto& [v, s] : occupancy) {
            varexp[(v + 1) / 2 - 1] += (int)s.size();
            wt += (int)s.size();
        }
        int bexp = nboxes - wt;
        if (wt > ctx.max_xdeg || bexp > ctx.max_betadeg || bexp < 0) return;
        out.add_term(Monomial{varexp, bexp}, (bexp % 2 == 1) ? Rational(-1) : Rational(1));
    };

    std::function<void(int)> rec = [&](int bi) {
        if (bi == nboxes) {
            finish();
            return;
        }
        int lo = 1;
        if (grid.left[bi] >= 0) lo = std::max(lo, entry[grid.left[bi]]);
        if (grid.below[bi] >= 0) lo = std::max(lo, entry[grid.below[bi]]);
        for (int v = lo; v <= maxval; ++v) {
            if (primed_diag_required && grid.diagonal[bi] && even_value(v)) continue;
            entry[bi] = v;
            rec(bi + 1);
        }
    };
    rec(0);
}

// Unshifted reverse plane partitions over the plain alphabet; weight counts
// distinct columns per value.
inline void rpp_series(const Grid& grid, const TruncationContext& ctx, TruncPoly& out) {
    const int nboxes = (int)grid.boxes.size();
    const int maxval = ctx.num_vars;
    if (nboxes == 0) {
        out += poly_one(ctx);
        return;
    }
    std::vector<int> entry(nboxes, 0);
    auto finish = [&]() {
        std::map<int, std::set<int>> cols;
        for (int i = 0; i < nboxes; ++i) cols[entry[i]].insert(grid.boxes[i].col);
        std::vector<int> varexp(ctx.num_vars, 0);
        int wt = 0;
        for (const auto& [v, s] : cols) {
            varexp[v - 1] += (int)s.size();
            wt += (int)s.size();
        }
        int bexp = nboxes - wt;
        if (wt > ctx.max_xdeg || bexp > ctx.max_betadeg || bexp < 0) return;
        out.add_term(Monomial{varexp, bexp}, (bexp % 2 == 1) ? Rational(-1) : Rational(1));
    };
    std::function<void(int)> rec = [&](int bi) {
        if (bi == nboxes) {
            finish();
            return;
        }
        int lo = 1;
        if (grid.left[bi] >= 0) lo = std::max(lo, entry[grid.left[bi]]);
        if (grid.below[bi] >= 0) lo = std::max(lo, entry[grid.below[bi]]);
        for (int v = lo; v <= maxval; ++v) {
            entry[bi] = v;
            rec(bi + 1);
        }
    };
    rec(0);
}

// Semistandard shifted bar tableaux.  Underlying fillings are semistandard
// shifted tableaux with single entries; equal-entry runs (horizontal for
// unprimed, vertical for primed) are cut into blocks, a run of length r
// contributing sum_k C(r-1, k-1) beta^(r-k) x^k.
inline void bar_tableau_series(const Grid& grid, const TruncationContext& ctx, bool ban_primed_diag,
                               TruncPoly& out) {
    const int nboxes = (int)grid.boxes.size();
    const int maxval = 2 * ctx.num_vars;
    if (nboxes == 0) {
        out += poly_one(ctx);
        return;
    }
    std::vector<int> entry(nboxes, 0);

    static std::vector<std::vector<long long>> binom;
    if (binom.empty()) {
        binom.assign(32, std::vector<long long>(32, 0));
        for (int i = 0; i < 32; ++i) {
            binom[i][0] = 1;
            for (int k = 1; k <= i; ++k)
                binom[i][k] = binom[i - 1][k - 1] + (k <= i - 1 ? binom[i - 1][k] : 0);
        }
    }

    auto finish = [&]() {
        // maximal runs: same entry at adjacent boxes (unprimed: row runs;
        // primed: column runs)
        TruncPoly prod = poly_one(ctx);
        std::vector<bool> used(nboxes, false);
        for (int i = 0; i < nboxes && !prod.is_zero(); ++i) {
            if (used[i]) continue;
            int v = entry[i];
            int r = 1;
            used[i] = true;
            int cur = i;
            for (;;) {
                int next = -1;
                for (int k = 0; k < nboxes; ++k) {
                    if (used[k] || entry[k] != v) continue;
                    bool row_adj = grid.boxes[k].row == grid.boxes[cur].row &&
                                   grid.boxes[k].col == grid.boxes[cur].col + 1;
                    bool col_adj = grid.boxes[k].col == grid.boxes[cur].col &&
                                   grid.boxes[k].row == grid.boxes[cur].row + 1;
                    if ((even_value(v) && row_adj) || (!even_value(v) && col_adj)) { next = k; break; }
                }
                if (next < 0) break;
                used[next] = true;
                cur = next;
                ++r;
            }
            TruncPoly factor(ctx);
            for (int k = 1; k <= r; ++k) {
                Monomial m{std::vector<int>(ctx.num_vars, 0), r - k};
                m.x[(v + 1) / 2 - 1] = k;
                factor.add_term(m, Rational(binom[r - 1][k - 1]));
            }
            prod = prod * factor;
        }
        out += prod;
    };

    std::function<void(int)> rec = [&](int bi) {
        if (bi == nboxes) {
            finish();
            return;
        }
        for (int v = 1; v <= maxval; ++v) {
            if (ban_primed_diag && grid.diagonal[bi] && !even_value(v)) continue;
            if (grid.left[bi] >= 0) {
                int m = entry[grid.left[bi]];
                if (v < m || (v == m && !even_value(v))) continue;
            }
            if (grid.below[bi] >= 0) {
                int m = entry[grid.below[bi]];
                if (v < m || (v == m && even_value(v))) continue;
            }
            entry[bi] = v;
            rec(bi + 1);
        }
    };
    rec(0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Family construction.

inline void check_sym_index(SymFamilyTag tag, const std::vector<int>& lam, const std::vector<int>& mu) {
    bool shifted = sym_is_shifted(tag);
    if (shifted && (!is_strict_partition(lam) || !is_strict_partition(mu)))
        throw std::invalid_argument(sym_name(tag) + ": index must be a strict partition, got " +
                                    shape_to_string(lam) + "/" + shape_to_string(mu));
    if (!shifted && (!is_partition(lam) || !is_partition(mu)))
        throw std::invalid_argument(sym_name(tag) + ": index must be a partition, got " +
                                    shape_to_string(lam) + "/" + shape_to_string(mu));
}

inline TruncPoly sym_basis(SymFamilyTag tag, const std::vector<int>& lam, const std::vector<int>& mu,
                           const TruncationContext& ctx) {
    check_sym_index(tag, lam, mu);
    std::string key = sym_name(tag) + "/" + shape_to_string(lam) + "/" + shape_to_string(mu) + "/" +
                      ctx.fingerprint();
    return detail::memo_poly(key, [&]() -> TruncPoly {
        TruncPoly out(ctx);
        bool shifted = sym_is_shifted(tag);
        if (shifted && !strict_contains(lam, mu)) return out;
        if (!shifted) {
            if ((int)mu.size() > (int)lam.size()) return out;
            for (size_t i = 0; i < mu.size(); ++i)
                if (mu[i] > lam[i]) return out;
        }
        detail::Grid grid = shifted ? detail::Grid::shifted(lam, mu) : detail::Grid::unshifted(lam, mu);
        switch (tag) {
            case SymFamilyTag::s: {
                // semistandard Young tableaux = set-valued with singletons;
                // restrict via a one-element alphabet budget trick: enumerate
                // with |T| = #boxes by capping beta at 0 in a local context.
                TruncationContext c0(ctx.num_vars, ctx.max_xdeg, 0);
                TruncPoly tmp(c0);
                detail::set_valued_series(grid, c0, tmp);
                for (const auto& [m, c] : tmp.terms()) out.add_term(m, c);
                return out;
            }
            case SymFamilyTag::G:
                detail::set_valued_series(grid, ctx, out);
                return out;
            case SymFamilyTag::g:
                detail::rpp_series(grid, ctx, out);
                return out;
            case SymFamilyTag::P:
            case SymFamilyTag::Q: {
                TruncationContext c0(ctx.num_vars, ctx.max_xdeg, 0);
                TruncPoly tmp(c0);
                detail::shifted_set_valued_series(grid, c0, tag == SymFamilyTag::P, false, false, tmp);
                for (const auto& [m, c] : tmp.terms()) out.add_term(m, c);
                return out;
            }
            case SymFamilyTag::GP:
                detail::shifted_set_valued_series(grid, ctx, true, false, false, out);
                return out;
            case SymFamilyTag::GQ:
                detail::shifted_set_valued_series(grid, ctx, false, false, false, out);
                return out;
            case SymFamilyTag::JP:
                detail::shifted_set_valued_series(grid, ctx, true, true, true, out);
                return out;
            case SymFamilyTag::JQ:
                detail::shifted_set_valued_series(grid, ctx, false, true, true, out);
                return out;
            case SymFamilyTag::gp:
                detail::shifted_rpp_series(grid, ctx, true, out);
                return out;
            case SymFamilyTag::gq:
                detail::shifted_rpp_series(grid, ctx, false, out);
                return out;
            case SymFamilyTag::jp:
                detail::bar_tableau_series(grid, ctx, true, out);
                return out;
            case SymFamilyTag::jq:
                detail::bar_tableau_series(grid, ctx, false, out);
                return out;
            case SymFamilyTag::J:
                // (-1)^{|shape|} S(G) = omega(G^{(-beta)}) since S acts as
                // (-1)^deg omega on each homogeneous layer
                return omega(sym_basis(SymFamilyTag::G, lam, mu, ctx).beta_negated());
            case SymFamilyTag::j:
                return omega(sym_basis(SymFamilyTag::g, lam, mu, ctx).beta_negated());
        }
        throw std::logic_error("unreachable");
    });
}

inline TruncPoly sym_basis(SymFamilyTag tag, const std::vector<int>& lam, const TruncationContext& ctx) {
    return sym_basis(tag, lam, {}, ctx);
}

inline std::vector<BasisElement> sym_family(SymFamilyTag tag, const TruncationContext& ctx,
                                            int maxsize = -1) {
    if (maxsize < 0) maxsize = ctx.max_xdeg;
    std::vector<BasisElement> out;
    for (int n = 0; n <= maxsize; ++n) {
        std::vector<std::vector<int>> idx =
            sym_is_shifted(tag) ? strict_partitions_of(n) : partitions_of(n);
        for (const auto& a : idx) out.push_back({shape_to_string(a), n, sym_basis(tag, a, ctx)});
    }
    return out;
}

inline BasisExpansion expand_in_family(const TruncPoly& f, SymFamilyTag tag) {
    ExpansionResult r = expand_in_basis(f, sym_family(tag, f.ctx()), sym_grading(tag));
    BasisExpansion be;
    be.family = sym_name(tag);
    be.ctx = f.ctx();
    be.coeffs = std::move(r.coeffs);
    be.residual_zero = r.residual_zero;
    be.witness = r.witness;
    return be;
}

// ---------------------------------------------------------------------------
// Double-slash functions.

inline TruncPoly slashslash(SymFamilyTag tag, const StrictPartition& nu, const StrictPartition& lam,
                            const TruncationContext& ctx) {
    if (tag != SymFamilyTag::GP && tag != SymFamilyTag::GQ)
        throw std::invalid_argument("slashslash: GP or GQ only");
    TruncPoly out(ctx);
    if (!strict_contains(nu, lam)) return out;  // convention: 0 when lam is not inside nu
    auto rc = removable_corners(lam);
    std::set<Box> rcset(rc.begin(), rc.end());
    for (const auto& mu : strict_subpartitions(lam)) {
        auto strip = shifted_diagram(lam, mu);
        bool ok = true;
        for (const auto& b : strip)
            if (!rcset.count(b)) { ok = false; break; }
        if (!ok) continue;
        out += sym_basis(tag, nu, mu, ctx).beta_shifted(comp_size(lam) - comp_size(mu));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed change-of-basis formulas.

// GQ_mu = sum over vertical-strip extensions lam >= mu (same length):
//   2^{l(mu)} (-1)^{cols(lam/mu)} (-beta/2)^{|lam/mu|} GP_lam.
inline std::map<StrictPartition, BetaPoly, CanonicalLess> gq_to_gp_closed(const StrictPartition& mu,
                                                                          bool dual) {
    std::map<StrictPartition, BetaPoly, CanonicalLess> out;
    int l = (int)mu.size();
    for (int mask = 0; mask < (1 << l); ++mask) {
        StrictPartition lam = mu;
        for (int i = 0; i < l; ++i)
            if ((mask >> i) & 1) lam[i] += (dual ? -1 : +1);
        bool ok = is_strict_partition(lam) && (int)lam.size() == l;
        for (int i = 0; ok && i < l; ++i)
            if (lam[i] < 1) ok = false;
        if (!ok) continue;
        const StrictPartition& big = dual ? mu : lam;
        const StrictPartition& small = dual ? lam : mu;
        auto strip = shifted_diagram(big, small);
        if (!is_vertical_strip(strip)) continue;
        int sz = (int)strip.size();
        // 2^{l} * (-1)^{cols} * (-beta/2)^{sz}
        Rational c = Rational(Integer(1) << l);
        if (cols_occupied(strip) % 2 == 1) c = -c;
        Rational half = Rational(1, 2);
        for (int i = 0; i < sz; ++i) c *= -half;
        out[lam] = bp_monomial(c, sz);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structure constants.

struct CoeffTable {
    std::string kind;  // a, b, ahat, bhat, k
    int bound = 0;
    std::string ctx_fingerprint;
    // key: (lambda, mu, nu) -> (beta exponent, value)
    std::map<std::tuple<std::string, std::string, std::string>, std::pair<int, Rational>> entries;
};

namespace detail {
inline void table_insert(CoeffTable& t, const std::vector<int>& lam, const std::vector<int>& mu,
                         const std::vector<int>& nu, int bexp, const Rational& v) {
    if (v == 0) return;
    t.entries[{shape_to_string(lam), shape_to_string(mu), shape_to_string(nu)}] = {bexp, v};
}
}  // namespace detail

// Extracts the single rational at the grading-forced beta power; throws if
// the coefficient has any other beta component.
inline Rational graded_coeff(const BetaPoly& c, int expected_bexp, const std::string& what) {
    for (int k = 0; k < (int)c.size(); ++k)
        if (c[k] != 0 && k != expected_bexp)
            throw std::runtime_error(what + ": coefficient off the graded beta power (beta^" +
                                     std::to_string(k) + ")");
    return bp_coeff(c, expected_bexp);
}

enum class StructKind { a, b, ahat, bhat };

inline std::string struct_kind_name(StructKind k) {
    switch (k) {
        case StructKind::a: return "a";
        case StructKind::b: return "b";
        case StructKind::ahat: return "ahat";
        case StructKind::bhat: return "bhat";
    }
    return "?";
}

// a/b from products GP_l GP_m / GQ_l GQ_m; ahat from GQ_{n//l} in GQ, bhat
// from GP_{n//l} in GP.  Entries are asserted integral.
inline CoeffTable structure_coeffs(StructKind kind, int bound, const TruncationContext& ctx) {
    if (ctx.num_vars < bound || ctx.max_xdeg < bound)
        throw std::invalid_argument("structure_coeffs: context inadequate (need N,D >= bound)");
    CoeffTable table;
    table.kind = struct_kind_name(kind);
    table.bound = bound;
    table.ctx_fingerprint = ctx.fingerprint();

    bool product_side = (kind == StructKind::a || kind == StructKind::b);
    SymFamilyTag tag = (kind == StructKind::a || kind == StructKind::bhat) ? SymFamilyTag::GP
                                                                           : SymFamilyTag::GQ;
    if (product_side) {
        for (int na = 0; na <= bound; ++na)
            for (const auto& lam : strict_partitions_of(na))
                for (int nb = 0; na + nb <= bound; ++nb)
                    for (const auto& mu : strict_partitions_of(nb)) {
                        TruncPoly prod = sym_basis(tag, lam, ctx) * sym_basis(tag, mu, ctx);
                        BasisExpansion be = expand_in_family(prod, tag);
                        if (!be.residual_zero)
                            throw std::runtime_error("structure_coeffs: expansion failed at " +
                                                     shape_to_string(lam) + "*" + shape_to_string(mu) +
                                                     " (witness " + be.witness + ")");
                        for (const auto& [key, c] : be.coeffs) {
                            auto nu = shape_from_string(key);
                            if (comp_size(nu) > bound) continue;
                            int bexp = comp_size(nu) - na - nb;
                            Rational v = graded_coeff(c, bexp, "structure_coeffs");
                            if (!is_integer(v))
                                throw std::runtime_error("structure_coeffs: non-integer entry at " +
                                                         shape_to_string(lam) + "," + shape_to_string(mu) +
                                                         "," + key);
                            detail::table_insert(table, lam, mu, nu, bexp, v);
                        }
                    }
    } else {
        for (int nn = 0; nn <= bound; ++nn)
            for (const auto& nu : strict_partitions_of(nn))
                for (const auto& lam : strict_subpartitions(nu)) {
                    TruncPoly ss = slashslash(tag, nu, lam, ctx);
                    BasisExpansion be = expand_in_family(ss, tag);
                    if (!be.residual_zero)
                        throw std::runtime_error("structure_coeffs: // expansion failed at " +
                                                 shape_to_string(nu) + "//" + shape_to_string(lam) +
                                                 " (witness " + be.witness + ")");
                    for (const auto& [key, c] : be.coeffs) {
                        auto mu = shape_from_string(key);
                        int bexp = comp_size(lam) + comp_size(mu) - nn;
                        if (bexp < 0) continue;
                        Rational v = graded_coeff(c, bexp, "structure_coeffs");
                        if (!is_integer(v))
                            throw std::runtime_error("structure_coeffs: non-integer entry at " +
                                                     shape_to_string(lam) + "," + key + "," +
                                                     shape_to_string(nu));
                        detail::table_insert(table, lam, mu, nu, bexp, v);
                    }
                }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Cauchy identity.

struct CauchyReport {
    bool ok = true;
    std::string detail;
};

// Compares sum GP(x) gq(y) = sum GQ(x) gp(y) = prod (1 - xbar_i y_j)/(1 - x_i y_j)
// exactly up to bidegree (dx, dy) in nx + ny variables.
inline CauchyReport cauchy_check(int dx, int dy, int nx, int ny) {
    TruncationContext cx(nx, dx);
    TruncationContext cy(ny, dy);
    TruncationContext big(nx + ny, dx + dy, dx + dy);
    auto cut = [&](const TruncPoly& f) { return truncate_bidegree(f, nx, dx, dy); };

    auto sum_side = [&](SymFamilyTag xt, SymFamilyTag yt) {
        TruncPoly total(big);
        for (int n = 0; n <= dx; ++n)
            for (const auto& lam : strict_partitions_of(n)) {
                TruncPoly gx = embed(sym_basis(xt, lam, cx), big, 0);
                TruncPoly gy = embed(sym_basis(yt, lam, cy), big, nx);
                total += cut(gx * gy);
            }
        return total;
    };

    TruncPoly lhs = sum_side(SymFamilyTag::GP, SymFamilyTag::gq);
    TruncPoly mid = sum_side(SymFamilyTag::GQ, SymFamilyTag::gp);

    // Kernel: for each pair (i, j), (1 + beta x_i + x_i y_j) / ((1 + beta x_i)(1 - x_i y_j)).
    TruncPoly kernel = poly_one(big);
    for (int i = 0; i < nx; ++i) {
        TruncPoly xi = poly_var(big, i);
        TruncPoly inv1bx(big);  // 1/(1+beta x_i) = sum (-beta x_i)^k
        for (int k = 0; k <= big.max_xdeg && k <= big.max_betadeg; ++k) {
            Monomial m{std::vector<int>(big.num_vars, 0), k};
            m.x[i] = k;
            inv1bx.add_term(m, (k % 2) ? Rational(-1) : Rational(1));
        }
        for (int j = 0; j < ny; ++j) {
            TruncPoly yj = poly_var(big, nx + j);
            TruncPoly numer = poly_one(big) + poly_beta(big) * xi + xi * yj;
            TruncPoly geom(big);  // 1/(1 - x_i y_j)
            for (int k = 0; 2 * k <= big.max_xdeg; ++k) {
                Monomial m{std::vector<int>(big.num_vars, 0), 0};
                m.x[i] = k;
                m.x[nx + j] = k;
                geom.add_term(m, 1);
            }
            kernel = cut(kernel * numer);
            kernel = cut(kernel * inv1bx);
            kernel = cut(kernel * geom);
        }
    }

    CauchyReport rep;
    if (!(lhs == mid)) {
        rep.ok = false;
        TruncPoly diff = lhs - mid;
        rep.detail = "GP.gq vs GQ.gp differ at " + monomial_to_string(diff.terms().begin()->first);
        return rep;
    }
    if (!(lhs == kernel)) {
        rep.ok = false;
        TruncPoly diff = lhs - kernel;
        rep.detail = "sum vs kernel differ at " + monomial_to_string(diff.terms().begin()->first);
        return rep;
    }
    rep.detail = "all three expressions agree to bidegree (" + std::to_string(dx) + "," +
                 std::to_string(dy) + ")";
    return rep;
}

// ---------------------------------------------------------------------------
// k^alpha_lambda: standard shifted set-valued tableaux counted by peak set.

inline long long kcoeff(const Composition& alpha, const StrictPartition& lam) {
    if (!is_peak_composition(alpha)) throw std::invalid_argument("kcoeff: alpha must be a peak composition");
    if (!is_strict_partition(lam)) throw std::invalid_argument("kcoeff: lambda must be strict");
    const int N = comp_size(alpha);
    if (N < comp_size(lam)) return 0;
    detail::Grid grid = detail::Grid::shifted(lam, {});
    const int nboxes = (int)grid.boxes.size();
    if (nboxes == 0) return N == 0 ? 1 : 0;
    std::set<int> target = interval_set(alpha);

    long long count = 0;
    std::vector<std::vector<int>> content(nboxes);
    std::vector<bool> used(N + 1, false);

    auto no_consecutive = [](const std::vector<int>& s, int v) {
        for (int u : s)
            if (u + 1 == v || u - 1 == v) return false;
        return true;
    };

    auto finish = [&]() {
        // positions of each value
        std::vector<int> row(N + 1), col(N + 1);
        for (int b = 0; b < nboxes; ++b)
            for (int v : content[b]) {
                row[v] = grid.boxes[b].row;
                col[v] = grid.boxes[b].col;
            }
        std::set<int> peaks;
        for (int i = 2; i < N; ++i)
            if (col[i] > col[i - 1] && row[i] < row[i + 1]) peaks.insert(i);
        if (peaks == target) ++count;
    };

    // Fill boxes in row-reading order; each box gets an increasing set of
    // unused values, no two consecutive, with min above the left/below maxima.
    std::function<void(int, int)> rec = [&](int bi, int remaining) {
        if (bi == nboxes) {
            if (remaining == 0) finish();
            return;
        }
        int lo = 1;
        if (grid.left[bi] >= 0) lo = std::max(lo, content[grid.left[bi]].back() + 1);
        if (grid.below[bi] >= 0) lo = std::max(lo, content[grid.below[bi]].back() + 1);
        std::function<void(int, int)> grow = [&](int last, int rem) {
            // close the box (nonempty) and move on
            if (!content[bi].empty() && rem >= nboxes - bi - 1) rec(bi + 1, rem);
            int from = content[bi].empty() ? lo : last + 1;
            for (int v = from; v <= N; ++v) {
                if (used[v] || !no_consecutive(content[bi], v)) continue;
                if (rem - 1 < nboxes - bi - 1) break;
                used[v] = true;
                content[bi].push_back(v);
                grow(v, rem - 1);
                content[bi].pop_back();
                used[v] = false;
            }
        };
        grow(0, remaining);
    };
    rec(0, N);
    return count;
}

// ---------------------------------------------------------------------------
// Antipode identities.

struct AntipodeReport {
    bool ok = true;
    std::string detail;
};

enum class AntipodeFamily { GP, GQ, gp, gq };

// For capital families: sum over lam of (-1)^{|lam|} J*_lam(x) * (tag)_{nu//lam}
// equals delta_{nu, empty}.  For small families the skew functions replace //.
inline AntipodeReport antipode_identity_check(AntipodeFamily which, const StrictPartition& nu,
                                              const TruncationContext& ctx) {
    TruncPoly acc(ctx);
    bool capital = (which == AntipodeFamily::GP || which == AntipodeFamily::GQ);
    SymFamilyTag gtag = capital ? (which == AntipodeFamily::GP ? SymFamilyTag::GP : SymFamilyTag::GQ)
                                : (which == AntipodeFamily::gp ? SymFamilyTag::gp : SymFamilyTag::gq);
    SymFamilyTag jtag = capital ? (which == AntipodeFamily::GP ? SymFamilyTag::JP : SymFamilyTag::JQ)
                                : (which == AntipodeFamily::gp ? SymFamilyTag::jp : SymFamilyTag::jq);
    for (const auto& lam : strict_subpartitions(nu)) {
        TruncPoly right = capital ? slashslash(gtag, nu, lam, ctx) : sym_basis(gtag, nu, lam, ctx);
        TruncPoly left = sym_basis(jtag, lam, ctx);
        TruncPoly term = left * right;
        if (comp_size(lam) % 2 == 1) term = term.scaled(-1);
        acc += term;
    }
    TruncPoly expect = nu.empty() ? poly_one(ctx) : poly_zero(ctx);
    AntipodeReport rep;
    if (!(acc == expect)) {
        rep.ok = false;
        TruncPoly diff = acc - expect;
        rep.detail = "antipode identity fails at nu=" + shape_to_string(nu) + ", monomial " +
                     monomial_to_string(diff.terms().begin()->first);
    } else {
        rep.detail = "nu=" + shape_to_string(nu) + " ok";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Dual pairings between the g-type and G-type families.

// [f, g] with f in the finite span of gp/gq and g in the span of GP/GQ:
// expand f over one small family and g over the complementary capital family
// and contract.  qp_route pairs (gq, GP); otherwise (gp, GQ).
inline BetaPoly pair_shifted(const TruncPoly& f, const TruncPoly& g, bool qp_route) {
    SymFamilyTag small = qp_route ? SymFamilyTag::gq : SymFamilyTag::gp;
    SymFamilyTag big = qp_route ? SymFamilyTag::GP : SymFamilyTag::GQ;
    BasisExpansion fe = expand_in_family(f, small);
    if (!fe.residual_zero)
        throw std::invalid_argument("pair_shifted: left expansion failed (witness " + fe.witness + ")");
    BasisExpansion ge = expand_in_family(g, big);
    if (!ge.residual_zero)
        throw std::invalid_argument("pair_shifted: right expansion failed (witness " + ge.witness + ")");
    BetaPoly total;
    for (const auto& [key, c] : fe.coeffs) {
        auto it = ge.coeffs.find(key);
        if (it != ge.coeffs.end()) bp_add_inplace(total, bp_mul(c, it->second));
    }
    return total;
}

// <f, g> for f in span{g_lambda} and g in span{G_mu} (Hall-type duality
// through the Schur basis is replaced by the direct g/G contraction).
inline BetaPoly pair_unshifted(const TruncPoly& f, const TruncPoly& g) {
    BasisExpansion fe = expand_in_family(f, SymFamilyTag::g);
    if (!fe.residual_zero)
        throw std::invalid_argument("pair_unshifted: left expansion failed (witness " + fe.witness + ")");
    BasisExpansion ge = expand_in_family(g, SymFamilyTag::G);
    if (!ge.residual_zero)
        throw std::invalid_argument("pair_unshifted: right expansion failed (witness " + ge.witness + ")");
    BetaPoly total;
    for (const auto& [key, c] : fe.coeffs) {
        auto it = ge.coeffs.find(key);
        if (it != ge.coeffs.end()) bp_add_inplace(total, bp_mul(c, it->second));
    }
    return total;
}

// ---------------------------------------------------------------------------
// Conjecture harness.

struct ScanResult {
    std::string name;
    int bound = 0;
    bool nonnegative = true;
    bool integral = true;
    std::vector<std::string> lines;            // one line per scanned object
    std::vector<std::string> counterexamples;  // full dumps of violations
};

namespace detail {
inline void scan_coeffs(ScanResult& res, const std::string& label, const std::string& idx,
                        const BetaPoly& c, bool require_integral) {
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        if (c[k] < 0) {
            res.nonnegative = false;
            res.counterexamples.push_back(label + " term " + idx + ": coefficient " + rat_to_string(c[k]) +
                                          "*b^" + std::to_string(k));
        }
        if (require_integral && !is_integer(c[k])) {
            res.integral = false;
            res.counterexamples.push_back(label + " term " + idx + ": non-integer " + rat_to_string(c[k]));
        }
    }
}
}  // namespace detail

// Names follow the CLI: co_gp, co_gq, jp_jq_schur, GP_in_JP, GQ_in_JQ,
// jq_in_gq, jp_in_gp, schur_pos_GP_GQ, a_nonneg.
inline ScanResult positivity_scan(const std::string& name, int bound, const TruncationContext& ctx) {
    if (ctx.num_vars < bound || ctx.max_xdeg < bound)
        throw std::invalid_argument("positivity_scan: context inadequate (need N,D >= bound)");
    ScanResult res;
    res.name = name;
    res.bound = bound;

    auto scan_table = [&](StructKind kind) {
        CoeffTable t = structure_coeffs(kind, bound, ctx);
        for (const auto& [key, val] : t.entries) {
            const auto& [lam, mu, nu] = key;
            if (val.second < 0) {
                res.nonnegative = false;
                res.counterexamples.push_back(struct_kind_name(kind) + "[" + lam + ";" + mu + ";" + nu +
                                              "] = " + rat_to_string(val.second));
            }
        }
        res.lines.push_back(struct_kind_name(kind) + " table bound " + std::to_string(bound) + ": " +
                            std::to_string(t.entries.size()) + " entries");
    };

    auto scan_family_expansion = [&](SymFamilyTag from, SymFamilyTag to, bool strict_index,
                                     bool require_integral) {
        for (int n = 1; n <= bound; ++n) {
            auto shapes = strict_index ? strict_partitions_of(n) : partitions_of(n);
            for (const auto& lam : shapes) {
                BasisExpansion be = expand_in_family(sym_basis(from, lam, ctx), to);
                if (!be.residual_zero)
                    throw std::runtime_error("positivity_scan: expansion failed for " + sym_name(from) +
                                             "_" + shape_to_string(lam) + " (witness " + be.witness + ")");
                for (const auto& [key, c] : be.coeffs)
                    detail::scan_coeffs(res, sym_name(from) + "_" + shape_to_string(lam) + " in " +
                                                 sym_name(to),
                                        key, c, require_integral);
                res.lines.push_back(sym_name(from) + "_" + shape_to_string(lam) + " in " + sym_name(to) +
                                    ": " + std::to_string(be.coeffs.size()) + " terms");
            }
        }
    };

    if (name == "co_gp") {
        scan_table(StructKind::bhat);  // GP_{nu//lambda} in GP+ <=> bhat >= 0
    } else if (name == "co_gq") {
        scan_table(StructKind::ahat);
    } else if (name == "a_nonneg") {
        scan_table(StructKind::a);
    } else if (name == "jp_jq_schur") {
        scan_family_expansion(SymFamilyTag::jp, SymFamilyTag::s, true, true);
        scan_family_expansion(SymFamilyTag::jq, SymFamilyTag::s, true, true);
    } else if (name == "schur_pos_GP_GQ") {
        scan_family_expansion(SymFamilyTag::GP, SymFamilyTag::s, true, true);
        scan_family_expansion(SymFamilyTag::GQ, SymFamilyTag::s, true, true);
    } else if (name == "GP_in_JP") {
        scan_family_expansion(SymFamilyTag::GP, SymFamilyTag::JP, true, true);
    } else if (name == "GQ_in_JQ") {
        scan_family_expansion(SymFamilyTag::GQ, SymFamilyTag::JQ, true, true);
    } else if (name == "jq_in_gq") {
        scan_family_expansion(SymFamilyTag::jq, SymFamilyTag::gq, true, true);
    } else if (name == "jp_in_gp") {
        scan_family_expansion(SymFamilyTag::jp, SymFamilyTag::gp, true, true);
    } else {
        throw std::invalid_argument("positivity_scan: unknown conjecture '" + name + "'");
    }
    return res;
}

}  // namespace khopf
