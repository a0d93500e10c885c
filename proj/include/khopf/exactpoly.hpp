#pragma once

// Exact truncated polynomial ring over Q[b] in N ordered variables.  Every
// generating function in the library lives here: terms of total x-degree > D
// or beta-degree > B are discarded by construction, all coefficients are
// exact rationals.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "khopf/rational.hpp"

namespace khopf {

struct TruncationContext {
    int num_vars = 1;   // N
    int max_xdeg = 1;   // D
    int max_betadeg = 1;  // B

    TruncationContext() = default;
    TruncationContext(int n, int d) : TruncationContext(n, d, d) {}
    TruncationContext(int n, int d, int b) : num_vars(n), max_xdeg(d), max_betadeg(b) {
        if (n < 1 || d < 1 || b < 0) throw std::invalid_argument("TruncationContext: need N>=1, D>=1, B>=0");
    }

    bool operator==(const TruncationContext& o) const = default;

    std::string fingerprint() const {
        return "N=" + std::to_string(num_vars) + ",D=" + std::to_string(max_xdeg) +
               ",B=" + std::to_string(max_betadeg);
    }
};

struct Monomial {
    std::vector<int> x;  // exponent per variable
    int b = 0;           // beta exponent

    int xdeg() const { return std::accumulate(x.begin(), x.end(), 0); }
    bool operator==(const Monomial& o) const = default;
};

// Display/pivot order: graded on total x-degree, then lexicographic on the
// exponent vector with larger exponents on early variables first, beta last.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.xdeg(), db = b.xdeg();
        if (da != db) return da < db;
        for (size_t i = 0; i < a.x.size() && i < b.x.size(); ++i)
            if (a.x[i] != b.x[i]) return a.x[i] > b.x[i];
        if (a.x.size() != b.x.size()) return a.x.size() < b.x.size();
        return a.b < b.b;
    }
};

class TruncPoly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    TruncPoly() = default;
    explicit TruncPoly(const TruncationContext& ctx) : ctx_(ctx) {}

    const TruncationContext& ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        if ((int)m.x.size() != ctx_.num_vars) throw std::invalid_argument("monomial/context arity mismatch");
        if (m.xdeg() > ctx_.max_xdeg || m.b > ctx_.max_betadeg) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool operator==(const TruncPoly& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }

    TruncPoly& operator+=(const TruncPoly& o) {
        require_same_ctx(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    TruncPoly& operator-=(const TruncPoly& o) {
        require_same_ctx(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
    friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }

    friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
        a.require_same_ctx(b);
        TruncPoly r(a.ctx_);
        const int D = a.ctx_.max_xdeg, B = a.ctx_.max_betadeg;
        for (const auto& [ma, ca] : a.terms_) {
            int da = ma.xdeg();
            for (const auto& [mb, cb] : b.terms_) {
                if (da + mb.xdeg() > D || ma.b + mb.b > B) continue;
                Monomial m = ma;
                for (int i = 0; i < (int)m.x.size(); ++i) m.x[i] += mb.x[i];
                m.b += mb.b;
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    TruncPoly scaled(const Rational& c) const {
        TruncPoly r(ctx_);
        if (c == 0) return r;
        for (const auto& [m, co] : terms_) r.terms_.emplace(m, co * c);
        return r;
    }

    TruncPoly beta_shifted(int k) const {  // multiply by beta^k
        TruncPoly r(ctx_);
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            mm.b += k;
            if (mm.b <= ctx_.max_betadeg) r.terms_.emplace(mm, c);
        }
        return r;
    }

    TruncPoly beta_negated() const {  // beta -> -beta
        TruncPoly r(ctx_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, (m.b % 2) ? -c : c);
        return r;
    }

    TruncPoly beta_scaled(const BetaPoly& f) const {  // multiply by f(beta)
        TruncPoly r(ctx_);
        for (size_t k = 0; k < f.size(); ++k)
            if (f[k] != 0) r += beta_shifted((int)k).scaled(f[k]);
        return r;
    }

    // Terms of total x-degree exactly d.
    TruncPoly xdeg_component(int d) const {
        TruncPoly r(ctx_);
        for (const auto& [m, c] : terms_)
            if (m.xdeg() == d) r.terms_.emplace(m, c);
        return r;
    }

    // Terms with xdeg - sign*bdeg == w  (sign = +1 or -1).
    TruncPoly weight_component(int w, int sign) const {
        TruncPoly r(ctx_);
        for (const auto& [m, c] : terms_)
            if (m.xdeg() - sign * m.b == w) r.terms_.emplace(m, c);
        return r;
    }

    TruncPoly truncated_xdeg(int d) const {
        TruncPoly r(ctx_);
        for (const auto& [m, c] : terms_)
            if (m.xdeg() <= d) r.terms_.emplace(m, c);
        return r;
    }

    int max_total_xdeg() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.xdeg());
        return d;
    }

    void require_same_ctx(const TruncPoly& o) const {
        if (!(ctx_ == o.ctx_))
            throw std::invalid_argument("context mismatch: {" + ctx_.fingerprint() + "} vs {" +
                                        o.ctx_.fingerprint() + "}");
    }

private:
    TruncationContext ctx_;
    TermMap terms_;
};

inline TruncPoly poly_zero(const TruncationContext& ctx) { return TruncPoly(ctx); }

inline TruncPoly poly_const(const TruncationContext& ctx, const Rational& c) {
    TruncPoly p(ctx);
    p.add_term(Monomial{std::vector<int>(ctx.num_vars, 0), 0}, c);
    return p;
}

inline TruncPoly poly_one(const TruncationContext& ctx) { return poly_const(ctx, 1); }

inline TruncPoly poly_var(const TruncationContext& ctx, int i) {  // x_{i+1}, 0-based i
    TruncPoly p(ctx);
    Monomial m{std::vector<int>(ctx.num_vars, 0), 0};
    m.x.at(i) = 1;
    p.add_term(m, 1);
    return p;
}

inline TruncPoly poly_beta(const TruncationContext& ctx) {
    TruncPoly p(ctx);
    p.add_term(Monomial{std::vector<int>(ctx.num_vars, 0), 1}, 1);
    return p;
}

// ---------------------------------------------------------------------------
// Univariate series in t with beta-polynomial coefficients (zeta targets).

struct UniPoly {
    std::vector<BetaPoly> coeffs;  // coeffs[k] multiplies t^k

    void add(int k, const Rational& c, int bexp) {
        if ((int)coeffs.size() <= k) coeffs.resize(k + 1);
        bp_add_inplace(coeffs[k], bp_monomial(c, bexp));
    }
    void trim() {
        while (!coeffs.empty() && bp_is_zero(coeffs.back())) coeffs.pop_back();
    }
    bool is_zero() const {
        for (const auto& c : coeffs)
            if (!bp_is_zero(c)) return false;
        return true;
    }
    bool operator==(const UniPoly& o) const {
        UniPoly a = *this, b = o;
        a.trim();
        b.trim();
        return a.coeffs == b.coeffs;
    }
};

inline std::string unipoly_to_string(const UniPoly& u) {
    std::string out;
    for (size_t k = 0; k < u.coeffs.size(); ++k) {
        const auto& bp = u.coeffs[k];
        for (size_t j = 0; j < bp.size(); ++j) {
            if (bp[j] == 0) continue;
            Rational c = bp[j];
            std::string piece;
            if (!out.empty()) {
                out += (c < 0) ? " - " : " + ";
                if (c < 0) c = -c;
            } else if (c < 0) {
                piece = "-";
                c = -c;
            }
            std::string factors;
            if (c != 1 || (j == 0 && k == 0)) factors = rat_to_string(c);
            if (j > 0) {
                if (!factors.empty()) factors += "*";
                factors += "b";
                if (j > 1) factors += "^" + std::to_string(j);
            }
            if (k > 0) {
                if (!factors.empty()) factors += "*";
                factors += "t";
                if (k > 1) factors += "^" + std::to_string(k);
            }
            out += piece + factors;
        }
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Specialization and substitution.

// zeta_Q: f(t, 0, 0, ...) as a series in t over Z[beta].
inline UniPoly specialize_zeta_q(const TruncPoly& f) {
    UniPoly u;
    for (const auto& [m, c] : f.terms()) {
        bool only_first = true;
        for (size_t i = 1; i < m.x.size(); ++i)
            if (m.x[i] != 0) { only_first = false; break; }
        if (only_first) u.add(m.x.empty() ? 0 : m.x[0], c, m.b);
    }
    u.trim();
    return u;
}

// Sets x_i = 0 for i > k  (1-based k).
inline TruncPoly specialize_first_k(const TruncPoly& f, int k) {
    TruncPoly r(f.ctx());
    for (const auto& [m, c] : f.terms()) {
        bool keep = true;
        for (int i = k; i < (int)m.x.size(); ++i)
            if (m.x[i] != 0) { keep = false; break; }
        if (keep) r.add_term(m, c);
    }
    return r;
}

inline TruncPoly poly_pow(const TruncPoly& f, int e) {
    TruncPoly r = poly_one(f.ctx());
    for (int i = 0; i < e; ++i) r = r * f;
    return r;
}

// Substitutes x_i -> -x_i/(1 + beta x_i), expanded as a truncated series.
inline TruncPoly bar_substitute(const TruncPoly& f) {
    const auto& ctx = f.ctx();
    std::vector<TruncPoly> bar;
    bar.reserve(ctx.num_vars);
    for (int i = 0; i < ctx.num_vars; ++i) {
        TruncPoly s(ctx);
        for (int j = 0; j + 1 <= ctx.max_xdeg && j <= ctx.max_betadeg; ++j) {
            Monomial m{std::vector<int>(ctx.num_vars, 0), j};
            m.x[i] = j + 1;
            s.add_term(m, (j % 2 == 0) ? Rational(-1) : Rational(1));
        }
        bar.push_back(s);
    }
    TruncPoly r(ctx);
    for (const auto& [m, c] : f.terms()) {
        TruncPoly t(ctx);
        t.add_term(Monomial{std::vector<int>(ctx.num_vars, 0), m.b}, c);
        for (int i = 0; i < ctx.num_vars; ++i)
            for (int e = 0; e < m.x[i]; ++e) t = t * bar[i];
        r += t;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Classification.

// The composition pattern of a monomial: nonzero exponents in variable order,
// plus the variable positions carrying them.
inline std::vector<int> exponent_pattern(const Monomial& m, std::vector<int>* where = nullptr) {
    std::vector<int> pat;
    for (int i = 0; i < (int)m.x.size(); ++i)
        if (m.x[i] != 0) {
            pat.push_back(m.x[i]);
            if (where) where->push_back(i);
        }
    return pat;
}

struct ClassifyResult {
    bool symmetric = true;
    bool quasisymmetric = true;
    bool beta_homogeneous = true;
    int beta_weight = 0;  // common value of xdeg - bdeg when homogeneous
    std::optional<std::pair<Monomial, Monomial>> qsym_witness;  // coefficient mismatch pair
    std::optional<Monomial> homogeneity_witness;
};

namespace detail {
// All increasing k-subsets of {0..n-1}.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) { fn(idx); return; }
        for (int i = start; i < n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}
}  // namespace detail

inline ClassifyResult classify(const TruncPoly& f) {
    ClassifyResult res;
    const int N = f.ctx().num_vars;

    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        int w = m.xdeg() - m.b;
        if (first) { res.beta_weight = w; first = false; }
        else if (w != res.beta_weight && res.beta_homogeneous) {
            res.beta_homogeneous = false;
            res.homogeneity_witness = m;
        }
    }

    // Quasisymmetry: for every pattern seen, every placement must carry the
    // same coefficient as the front placement.
    std::map<std::pair<std::vector<int>, int>, Rational> front;  // (pattern, bexp) -> coeff at x_1..x_k
    auto mono_of = [&](const std::vector<int>& pat, const std::vector<int>& pos, int b) {
        Monomial m{std::vector<int>(N, 0), b};
        for (size_t i = 0; i < pat.size(); ++i) m.x[pos[i]] = pat[i];
        return m;
    };
    std::map<std::pair<std::vector<int>, int>, bool> seen;
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> pat = exponent_pattern(m);
        seen[{pat, m.b}] = true;
    }
    for (const auto& [key, _] : seen) {
        const auto& [pat, b] = key;
        int k = (int)pat.size();
        if (k > N) continue;
        std::vector<int> frontpos(k);
        std::iota(frontpos.begin(), frontpos.end(), 0);
        Rational ref = f.coefficient(mono_of(pat, frontpos, b));
        bool bad = false;
        Monomial badm;
        detail::for_each_subset(N, k, [&](const std::vector<int>& pos) {
            if (bad) return;
            Monomial m = mono_of(pat, pos, b);
            if (f.coefficient(m) != ref) { bad = true; badm = m; }
        });
        if (bad && res.quasisymmetric) {
            res.quasisymmetric = false;
            res.qsym_witness = {mono_of(pat, frontpos, b), badm};
        }
    }

    // Symmetry: quasisymmetric + pattern coefficient invariant under all
    // rearrangements (absent rearrangements count as coefficient zero).
    if (!res.quasisymmetric) {
        res.symmetric = false;
    } else {
        for (const auto& [key, _] : seen) {
            auto [pat, b] = key;
            int k = (int)pat.size();
            if (k > N) continue;
            std::vector<int> frontpos(k);
            std::iota(frontpos.begin(), frontpos.end(), 0);
            std::vector<int> perm = pat;
            std::sort(perm.begin(), perm.end());
            Rational ref = f.coefficient(mono_of(perm, frontpos, b));
            do {
                if (f.coefficient(mono_of(perm, frontpos, b)) != ref) { res.symmetric = false; break; }
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (!res.symmetric) break;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Tensor splitting: f |-> f(x, y) regrouped as sum of left (x) tensor right (y).

struct TensorExpansion {
    // Bilinear normal form; left factors are monomial (quasi)symmetric
    // functions when produced by tensor_split.
    std::vector<std::pair<TruncPoly, TruncPoly>> pairs;
};

// Embeds f into a wider context, shifting variables by `offset`.
inline TruncPoly embed(const TruncPoly& f, const TruncationContext& big, int offset) {
    if (big.num_vars < f.ctx().num_vars + offset) throw std::invalid_argument("embed: target too small");
    TruncPoly r(big);
    for (const auto& [m, c] : f.terms()) {
        Monomial mm{std::vector<int>(big.num_vars, 0), m.b};
        for (int i = 0; i < (int)m.x.size(); ++i) mm.x[i + offset] = m.x[i];
        r.add_term(mm, c);
    }
    return r;
}

// Drops terms whose degree in the first nx variables exceeds dx, or whose
// degree in the remaining variables exceeds dy.
inline TruncPoly truncate_bidegree(const TruncPoly& f, int nx, int dx, int dy) {
    TruncPoly r(f.ctx());
    for (const auto& [m, c] : f.terms()) {
        int a = 0, b = 0;
        for (int i = 0; i < (int)m.x.size(); ++i) (i < nx ? a : b) += m.x[i];
        if (a <= dx && b <= dy) r.add_term(m, c);
    }
    return r;
}

inline TruncPoly tensor_to_poly(const TensorExpansion& te, const TruncationContext& big) {
    TruncPoly sum(big);
    for (const auto& [l, r] : te.pairs) {
        int n = l.ctx().num_vars;
        sum += embed(l, big, 0) * embed(r, big, n);
    }
    return sum;
}

namespace detail {

// Monomial quasisymmetric function M_alpha for a raw composition.
inline TruncPoly monomial_qsym_raw(const std::vector<int>& alpha, const TruncationContext& ctx) {
    TruncPoly p(ctx);
    int k = (int)alpha.size();
    if (k == 0) return poly_one(ctx);
    if (std::accumulate(alpha.begin(), alpha.end(), 0) > ctx.max_xdeg) return p;
    for_each_subset(ctx.num_vars, k, [&](const std::vector<int>& pos) {
        Monomial m{std::vector<int>(ctx.num_vars, 0), 0};
        for (int i = 0; i < k; ++i) m.x[pos[i]] = alpha[i];
        p.add_term(m, 1);
    });
    return p;
}

inline TruncPoly monomial_sym_raw(const std::vector<int>& lambda, const TruncationContext& ctx) {
    // m_lambda: sum of M_alpha over distinct rearrangements alpha of lambda.
    std::vector<int> a = lambda;
    std::sort(a.begin(), a.end());
    TruncPoly p(ctx);
    do {
        p += monomial_qsym_raw(a, ctx);
    } while (std::next_permutation(a.begin(), a.end()));
    return p;
}

}  // namespace detail

enum class SplitMode { ordered, symmetric };

// Decomposes f(x, y) with the x alphabet entirely before (ordered) or merged
// with (symmetric) the y alphabet.  Ordered mode on the monomial basis is the
// QSym deconcatenation coproduct.
inline TensorExpansion tensor_split(const TruncPoly& f, SplitMode mode) {
    const auto& ctx = f.ctx();
    ClassifyResult cls = classify(f);
    if (mode == SplitMode::ordered && !cls.quasisymmetric) {
        auto& [a, b] = *cls.qsym_witness;
        throw std::invalid_argument("tensor_split(ordered): input not quasisymmetric; coefficient mismatch between monomials with patterns at front vs elsewhere (beta^" +
                                    std::to_string(a.b) + ")");
    }
    if (mode == SplitMode::symmetric && !cls.symmetric)
        throw std::invalid_argument("tensor_split(symmetric): input not symmetric");

    // Collect composition (or partition) coefficients from front placements.
    std::map<std::vector<int>, BetaPoly> coeffs;
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> where;
        std::vector<int> pat = exponent_pattern(m, &where);
        bool at_front = true;
        for (size_t i = 0; i < where.size(); ++i)
            if (where[i] != (int)i) { at_front = false; break; }
        if (!at_front) continue;
        if (mode == SplitMode::symmetric && !std::is_sorted(pat.begin(), pat.end(), std::greater<int>()))
            continue;  // partitions only; other placements are rearrangements
        bp_add_inplace(coeffs[pat], bp_monomial(c, m.b));
    }

    std::map<std::vector<int>, TruncPoly> grouped;  // left index -> right poly
    auto add_pair = [&](const std::vector<int>& left, const std::vector<int>& right, const BetaPoly& c) {
        auto it = grouped.find(left);
        TruncPoly rp = (mode == SplitMode::ordered) ? detail::monomial_qsym_raw(right, ctx)
                                                    : detail::monomial_sym_raw(right, ctx);
        TruncPoly contrib = rp.beta_scaled(c);
        if (it == grouped.end()) grouped.emplace(left, contrib);
        else it->second += contrib;
    };

    if (mode == SplitMode::ordered) {
        for (const auto& [alpha, c] : coeffs) {
            for (size_t i = 0; i <= alpha.size(); ++i) {
                std::vector<int> l(alpha.begin(), alpha.begin() + i);
                std::vector<int> r(alpha.begin() + i, alpha.end());
                add_pair(l, r, c);
            }
        }
    } else {
        for (const auto& [lambda, c] : coeffs) {
            // All ways to split the multiset lambda into two sub-multisets.
            int k = (int)lambda.size();
            for (int mask = 0; mask < (1 << k); ++mask) {
                std::vector<int> l, r;
                for (int i = 0; i < k; ++i) ((mask >> i) & 1 ? l : r).push_back(lambda[i]);
                // Avoid double counting splits of repeated parts: only take
                // masks where equal parts are chosen left-to-right.
                bool canonical = true;
                for (int i = 1; i < k; ++i)
                    if (lambda[i] == lambda[i - 1] && ((mask >> i) & 1) && !((mask >> (i - 1)) & 1))
                        canonical = false;
                if (canonical) add_pair(l, r, c);
            }
        }
    }

    TensorExpansion te;
    for (const auto& [left, right] : grouped) {
        if (right.is_zero()) continue;
        TruncPoly lp = (mode == SplitMode::ordered) ? detail::monomial_qsym_raw(left, ctx)
                                                    : detail::monomial_sym_raw(left, ctx);
        te.pairs.emplace_back(lp, right);
    }
    return te;
}

// ---------------------------------------------------------------------------
// Canonical text form.

inline std::string monomial_to_string(const Monomial& m) {
    std::string out;
    for (int i = 0; i < (int)m.x.size(); ++i) {
        if (m.x[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(i + 1);
        if (m.x[i] > 1) out += "^" + std::to_string(m.x[i]);
    }
    if (m.b > 0) {
        std::string bs = "b";
        if (m.b > 1) bs += "^" + std::to_string(m.b);
        out = out.empty() ? bs : bs + "*" + out;
    }
    return out;
}

inline std::string poly_to_string(const TruncPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        Rational cc = c;
        if (out.empty()) {
            if (cc < 0) { out += "-"; cc = -cc; }
        } else {
            out += (cc < 0) ? " - " : " + ";
            if (cc < 0) cc = -cc;
        }
        std::string ms = monomial_to_string(m);
        if (ms.empty()) out += rat_to_string(cc);
        else if (cc == 1) out += ms;
        else out += rat_to_string(cc) + "*" + ms;
    }
    return out;
}

}  // namespace khopf
