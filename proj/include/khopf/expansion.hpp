#pragma once

// Exact expansion of a truncated polynomial over a graded basis family.
//
// Every basis family in this library is homogeneous for one of two gradings:
//   big   (grading=+1): xdeg - betadeg == |index|   (M, L, K, s, G, GP, J, ...)
//   small (grading=-1): xdeg + betadeg == |index|   (g, gp, gq, jp, jq, j)
// A weight component of the input is matched degree by degree against the
// beta^0 layers of the family, one exact rational linear solve per degree.
// This subsumes triangular elimination without assuming a triangular order;
// failures are reported honestly with a witness monomial.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "khopf/exactpoly.hpp"

namespace khopf {

struct BasisElement {
    std::string key;
    int size = 0;
    TruncPoly poly;
};

struct ExpansionResult {
    std::map<std::string, BetaPoly> coeffs;
    bool residual_zero = true;
    std::string witness;  // first unexplained monomial when residual is nonzero

    BetaPoly coeff(const std::string& key) const {
        auto it = coeffs.find(key);
        return it == coeffs.end() ? BetaPoly{} : it->second;
    }
};

namespace detail {

using XMono = std::vector<int>;
using XPoly = std::map<XMono, Rational>;

// Extracts the layer { xdeg == d, betadeg == k } as an x-polynomial.
inline XPoly poly_layer(const TruncPoly& f, int d, int k) {
    XPoly out;
    for (const auto& [m, c] : f.terms())
        if (m.b == k && m.xdeg() == d) out[m.x] = c;
    return out;
}

// Solves sum_j c_j * cols[j] = rhs exactly over Q.  Returns nullopt when the
// system is inconsistent or the solution is not unique.
inline std::optional<std::vector<Rational>> solve_exact(const std::vector<XPoly>& cols, const XPoly& rhs,
                                                        std::string* err) {
    std::map<XMono, int> rowindex;
    for (const auto& col : cols)
        for (const auto& [m, c] : col) rowindex.emplace(m, 0);
    for (const auto& [m, c] : rhs) rowindex.emplace(m, 0);
    int nrows = 0;
    for (auto& [m, idx] : rowindex) idx = nrows++;
    int ncols = (int)cols.size();

    std::vector<std::vector<Rational>> a(nrows, std::vector<Rational>(ncols + 1));
    for (int j = 0; j < ncols; ++j)
        for (const auto& [m, c] : cols[j]) a[rowindex[m]][j] = c;
    for (const auto& [m, c] : rhs) a[rowindex[m]][ncols] = c;

    std::vector<int> pivot_col_of_row;
    int row = 0;
    for (int col = 0; col < ncols && row < nrows; ++col) {
        int sel = -1;
        for (int r = row; r < nrows; ++r)
            if (a[r][col] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(a[sel], a[row]);
        Rational inv = a[row][col];
        for (int c = col; c <= ncols; ++c) a[row][c] /= inv;
        for (int r = 0; r < nrows; ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (int c = col; c <= ncols; ++c) a[r][c] -= f * a[row][c];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    if ((int)pivot_col_of_row.size() < ncols) {
        if (err) *err = "underdetermined solve (context too small to separate indices)";
        return std::nullopt;
    }
    for (int r = row; r < nrows; ++r)
        if (a[r][ncols] != 0) {
            if (err) *err = "inconsistent solve";
            return std::nullopt;
        }
    std::vector<Rational> sol(ncols);
    for (int r = 0; r < (int)pivot_col_of_row.size(); ++r) sol[pivot_col_of_row[r]] = a[r][ncols];
    return sol;
}

}  // namespace detail

inline ExpansionResult expand_in_basis(const TruncPoly& f, const std::vector<BasisElement>& basis,
                                       int grading) {
    if (grading != 1 && grading != -1) throw std::invalid_argument("expand_in_basis: grading must be +-1");
    const auto& ctx = f.ctx();
    const int D = ctx.max_xdeg, B = ctx.max_betadeg;

    ExpansionResult res;
    std::map<int, std::vector<int>> by_size;  // size -> basis positions
    for (int i = 0; i < (int)basis.size(); ++i) by_size[basis[i].size].push_back(i);

    // Weight classes present in f.
    std::set<int> weights;
    for (const auto& [m, c] : f.terms()) weights.insert(m.xdeg() - grading * m.b);

    TruncPoly residual = f;
    for (int w : weights) {
        if (grading == +1) {
            for (int d = std::max(0, w); d <= D; ++d) {
                int bexp = d - w;
                if (bexp < 0 || bexp > B) continue;
                auto it = by_size.find(d);
                if (it == by_size.end()) continue;
                detail::XPoly rhs = detail::poly_layer(residual, d, bexp);
                if (rhs.empty()) continue;
                std::vector<detail::XPoly> cols;
                for (int i : it->second) cols.push_back(detail::poly_layer(basis[i].poly, d, 0));
                std::string err;
                auto sol = detail::solve_exact(cols, rhs, &err);
                if (!sol) {
                    res.residual_zero = false;
                    res.witness = "size " + std::to_string(d) + ": " + err;
                    return res;
                }
                for (size_t j = 0; j < sol->size(); ++j) {
                    if ((*sol)[j] == 0) continue;
                    int i = it->second[j];
                    residual -= basis[i].poly.beta_shifted(bexp).scaled((*sol)[j]);
                    bp_add_inplace(res.coeffs[basis[i].key], bp_monomial((*sol)[j], bexp));
                }
            }
        } else {
            for (int d = std::min(D, w); d >= 0; --d) {
                int bexp = w - d;
                if (bexp < 0 || bexp > B) continue;
                auto it = by_size.find(d);
                if (it == by_size.end()) continue;
                detail::XPoly rhs = detail::poly_layer(residual, d, bexp);
                if (rhs.empty()) continue;
                std::vector<detail::XPoly> cols;
                for (int i : it->second) cols.push_back(detail::poly_layer(basis[i].poly, d, 0));
                std::string err;
                auto sol = detail::solve_exact(cols, rhs, &err);
                if (!sol) {
                    res.residual_zero = false;
                    res.witness = "size " + std::to_string(d) + ": " + err;
                    return res;
                }
                for (size_t j = 0; j < sol->size(); ++j) {
                    if ((*sol)[j] == 0) continue;
                    int i = it->second[j];
                    residual -= basis[i].poly.beta_shifted(bexp).scaled((*sol)[j]);
                    bp_add_inplace(res.coeffs[basis[i].key], bp_monomial((*sol)[j], bexp));
                }
            }
        }
        // Anything left in this weight class is unexplained.
        TruncPoly left = residual.weight_component(w, grading);
        if (!left.is_zero()) {
            res.residual_zero = false;
            res.witness = monomial_to_string(left.terms().begin()->first);
            return res;
        }
    }
    // Clean zero coefficients.
    for (auto it = res.coeffs.begin(); it != res.coeffs.end();)
        it = bp_is_zero(it->second) ? res.coeffs.erase(it) : std::next(it);
    return res;
}

// Reassembles sum coeffs[key] * basis(key); inverse of a successful expansion.
inline TruncPoly recombine(const ExpansionResult& r, const std::vector<BasisElement>& basis,
                           const TruncationContext& ctx) {
    std::map<std::string, const TruncPoly*> lookup;
    for (const auto& b : basis) lookup[b.key] = &b.poly;
    TruncPoly out(ctx);
    for (const auto& [key, c] : r.coeffs) {
        auto it = lookup.find(key);
        if (it == lookup.end()) throw std::invalid_argument("recombine: unknown key " + key);
        out += it->second->beta_scaled(c);
    }
    return out;
}

// Tensor product family on a doubled context: keys "kx|ky".
inline std::vector<BasisElement> tensor_basis(const std::vector<BasisElement>& bx,
                                              const std::vector<BasisElement>& by,
                                              const TruncationContext& big, int nx) {
    std::vector<BasisElement> out;
    std::vector<TruncPoly> ex, ey;
    for (const auto& b : bx) ex.push_back(embed(b.poly, big, 0));
    for (const auto& b : by) ey.push_back(embed(b.poly, big, nx));
    for (size_t i = 0; i < bx.size(); ++i)
        for (size_t j = 0; j < by.size(); ++j) {
            if (bx[i].size + by[j].size > big.max_xdeg) continue;
            out.push_back({bx[i].key + "|" + by[j].key, bx[i].size + by[j].size, ex[i] * ey[j]});
        }
    return out;
}

}  // namespace khopf
