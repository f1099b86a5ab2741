#include "k2slot/cyclic_algebra.hpp"

#include <utility>

#include "k2slot/errors.hpp"
#include "k2slot/io.hpp"

namespace k2slot {

namespace {

int bidx(i64 m, i64 i, i64 j) { return static_cast<int>(i * m + j); }

// coordinates of (vector u) * (basis s), exploiting that table rows are
// single monomials
std::vector<Poly> mul_vec_basis(const SymbolAlgebra& A,
                                const std::vector<Poly>& u, int s) {
    std::vector<Poly> out(A.dim(), A.K.zero());
    for (i64 r = 0; r < A.dim(); ++r) {
        if (u[r].is_zero()) continue;
        const std::vector<Poly>& row = A.table[r][s];
        for (i64 w = 0; w < A.dim(); ++w) {
            if (row[w].is_zero()) continue;
            out[w] = A.K.add(out[w], A.K.mul(u[r], row[w]));
        }
    }
    return out;
}

std::vector<Poly> mul_basis_vec(const SymbolAlgebra& A, int s,
                                const std::vector<Poly>& v) {
    std::vector<Poly> out(A.dim(), A.K.zero());
    for (i64 r = 0; r < A.dim(); ++r) {
        if (v[r].is_zero()) continue;
        const std::vector<Poly>& row = A.table[s][r];
        for (i64 w = 0; w < A.dim(); ++w) {
            if (row[w].is_zero()) continue;
            out[w] = A.K.add(out[w], A.K.mul(v[r], row[w]));
        }
    }
    return out;
}

// Row reduction over K; works in place and returns the rank.
i64 matrix_rank(const ExtField& K, std::vector<std::vector<Poly>>& M) {
    if (M.empty()) return 0;
    const i64 rows = static_cast<i64>(M.size());
    const i64 cols = static_cast<i64>(M[0].size());
    i64 rank = 0;
    for (i64 col = 0; col < cols && rank < rows; ++col) {
        i64 pivot = -1;
        for (i64 r = rank; r < rows; ++r)
            if (!M[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(M[rank], M[pivot]);
        Poly inv = K.inv(M[rank][col]);
        for (i64 c = col; c < cols; ++c) M[rank][c] = K.mul(M[rank][c], inv);
        for (i64 r = rank + 1; r < rows; ++r) {
            if (M[r][col].is_zero()) continue;
            Poly factor = M[r][col];
            for (i64 c = col; c < cols; ++c)
                M[r][c] = K.sub(M[r][c], K.mul(factor, M[rank][c]));
        }
        ++rank;
    }
    return rank;
}

// left multiplication by e = e_p + c*e_q as a dim x dim matrix over K
std::vector<std::vector<Poly>> left_mul_matrix(const SymbolAlgebra& A, int p,
                                               int q, const Poly& c) {
    std::vector<std::vector<Poly>> L(A.dim(),
                                     std::vector<Poly>(A.dim(), A.K.zero()));
    for (i64 s = 0; s < A.dim(); ++s) {
        for (i64 w = 0; w < A.dim(); ++w) {
            Poly entry = A.table[p][s][w];
            if (q >= 0 && !A.table[q][s][w].is_zero())
                entry = A.K.add(entry, A.K.mul(c, A.table[q][s][w]));
            L[w][s] = entry;
        }
    }
    return L;
}

}  // namespace

SymbolAlgebra build_algebra(const FieldSpec& spec, const ExtField& K,
                            const Poly& a_in, const Poly& b_in) {
    Poly a = K.reduce(a_in);
    Poly b = K.reduce(b_in);
    if (a.is_zero() || b.is_zero())
        throw MathError("ZeroParameter", "symbol algebra parameters must be nonzero");
    const i64 m = spec.m();
    if (m > kMaxAlgebraM)
        throw MathError("CapExceeded",
                        "symbol algebra supports m <= " + std::to_string(kMaxAlgebraM));
    const i64 dim = m * m;

    std::vector<Poly> omega_pow(m);
    omega_pow[0] = K.one();
    Poly omega = K.embed(spec.zeta());
    for (i64 e = 1; e < m; ++e) omega_pow[e] = K.mul(omega_pow[e - 1], omega);

    SymbolAlgebra A{spec, K, a, b, {}};
    A.table.assign(dim, std::vector<std::vector<Poly>>(
                            dim, std::vector<Poly>(dim, K.zero())));
    for (i64 i = 0; i < m; ++i)
        for (i64 j = 0; j < m; ++j)
            for (i64 k = 0; k < m; ++k)
                for (i64 l = 0; l < m; ++l) {
                    Poly scalar = omega_pow[(j * k) % m];
                    if (i + k >= m) scalar = K.mul(scalar, a);
                    if (j + l >= m) scalar = K.mul(scalar, b);
                    A.table[bidx(m, i, j)][bidx(m, k, l)]
                           [bidx(m, (i + k) % m, (j + l) % m)] = scalar;
                }

    for (int p = 0; p < dim; ++p)
        for (int q = 0; q < dim; ++q) {
            const std::vector<Poly>& pq = A.table[p][q];
            for (int r = 0; r < dim; ++r) {
                if (mul_vec_basis(A, pq, r) != mul_basis_vec(A, p, A.table[q][r]))
                    throw MathError("InternalError",
                                    "associativity failed on a basis triple");
            }
        }
    return A;
}

SymbolAlgebra build_algebra(const FieldSpec& spec, const FqElem& a,
                            const FqElem& b) {
    ExtField K(spec, poly_from_ints(spec.fq(), {0, 1}));
    return build_algebra(spec, K, K.embed(a), K.embed(b));
}

std::vector<Poly> algebra_mul(const SymbolAlgebra& A, const std::vector<Poly>& u,
                              const std::vector<Poly>& v) {
    std::vector<Poly> out(A.dim(), A.K.zero());
    for (i64 r = 0; r < A.dim(); ++r) {
        if (u[r].is_zero()) continue;
        for (i64 s = 0; s < A.dim(); ++s) {
            if (v[s].is_zero()) continue;
            Poly scale = A.K.mul(u[r], v[s]);
            const std::vector<Poly>& row = A.table[r][s];
            for (i64 w = 0; w < A.dim(); ++w) {
                if (row[w].is_zero()) continue;
                out[w] = A.K.add(out[w], A.K.mul(scale, row[w]));
            }
        }
    }
    return out;
}

i64 center_dimension(const SymbolAlgebra& A) {
    const i64 dim = A.dim();
    const int gx = bidx(A.m(), 1, 0);
    const int gy = bidx(A.m(), 0, 1);
    // rows: coordinates of z*g - g*z for both generators; columns: z = e_p
    std::vector<std::vector<Poly>> M(2 * dim,
                                     std::vector<Poly>(dim, A.K.zero()));
    for (i64 p = 0; p < dim; ++p) {
        for (i64 w = 0; w < dim; ++w) {
            M[w][p] = A.K.sub(A.table[p][gx][w], A.table[gx][p][w]);
            M[dim + w][p] = A.K.sub(A.table[p][gy][w], A.table[gy][p][w]);
        }
    }
    return dim - matrix_rank(A.K, M);
}

SplitWitness split_witness(const SymbolAlgebra& A, i64 budget) {
    const ExtField& K = A.K;
    i64 effort = 0;
    if (A.m() == 2) {
        for (i64 xr = 0; xr < K.card(); ++xr) {
            Poly x0 = K.from_rank(xr);
            Poly ax2 = K.mul(A.a, K.mul(x0, x0));
            for (i64 yr = 0; yr < K.card(); ++yr) {
                Poly y0 = K.from_rank(yr);
                Poly lhs = K.add(ax2, K.mul(A.b, K.mul(y0, y0)));
                for (i64 zr = 0; zr < K.card(); ++zr) {
                    if (xr == 0 && yr == 0 && zr == 0) continue;
                    if (effort >= budget)
                        throw MathError("BudgetExhausted",
                                        "isotropy search cap reached; not a disproof");
                    ++effort;
                    Poly z0 = K.from_rank(zr);
                    if (lhs == K.mul(z0, z0)) return {true, {x0, y0, z0}};
                }
            }
        }
        throw MathError("InternalError", "no isotropy over a finite field");
    }

    // zero-divisor scan over elements with at most two nonzero coordinates,
    // leading coordinate normalized to 1
    const i64 dim = A.dim();
    for (i64 p = 0; p < dim; ++p) {
        if (effort >= budget)
            throw MathError("BudgetExhausted",
                            "zero divisor search cap reached; not a disproof");
        ++effort;
        std::vector<std::vector<Poly>> L = left_mul_matrix(A, static_cast<int>(p), -1, K.zero());
        if (matrix_rank(K, L) < dim) {
            std::vector<Poly> e(dim, K.zero());
            e[p] = K.one();
            return {false, e};
        }
    }
    for (i64 p = 0; p < dim; ++p)
        for (i64 q = p + 1; q < dim; ++q)
            for (i64 cr = 1; cr < K.card(); ++cr) {
                if (effort >= budget)
                    throw MathError("BudgetExhausted",
                                    "zero divisor search cap reached; not a disproof");
                ++effort;
                Poly c = K.from_rank(cr);
                std::vector<std::vector<Poly>> L =
                    left_mul_matrix(A, static_cast<int>(p), static_cast<int>(q), c);
                if (matrix_rank(K, L) < dim) {
                    std::vector<Poly> e(dim, K.zero());
                    e[p] = K.one();
                    e[q] = c;
                    return {false, e};
                }
            }
    throw MathError("BudgetExhausted",
                    "no zero divisor with support 2; not a disproof");
}

SymbolAlgebra symbol_to_algebra(const Symbol2& s, const FieldSpec& spec) {
    auto constant_of = [&](const RatFun& f) {
        if (f.num.deg() != 0 || f.den.deg() != 0)
            throw MathError("NonConstantEntries",
                            "symbol entry " + render_ratfun(spec, f) +
                                " is not a constant");
        return f.num.c[0];
    };
    FqElem a = constant_of(s.a);
    FqElem b = constant_of(s.b);
    // bilinearity: c*{a,b} and {a^c,b} agree as classes
    a = spec.fq().pow(a, s.coeff);
    return build_algebra(spec, a, b);
}

}  // namespace k2slot
