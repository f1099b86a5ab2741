#pragma once

#include <vector>

#include "k2slot/local2d.hpp"

// Independent ground truth for local intersection numbers: the dimension of
// k[x,y]/(f, g, (x,y)^D) over k, increased in D until it stabilizes. Returns
// -1 when no stable value appears below the cap (infinite intersection).
inline k2slot::i64 truncated_local_dimension(const k2slot::Fq& k,
                                             const k2slot::BivariatePoly& f,
                                             const k2slot::BivariatePoly& g,
                                             int cap = 24) {
    using namespace k2slot;
    i64 prev = -1;
    for (int D = 1; D <= cap; ++D) {
        // monomial basis x^i y^j with i + j < D
        std::vector<std::pair<int, int>> basis;
        for (int i = 0; i < D; ++i)
            for (int j = 0; i + j < D; ++j) basis.emplace_back(i, j);
        auto index_of = [&](int i, int j) {
            // i + j < D guaranteed by construction of the products
            int skipped = 0;
            for (int r = 0; r < i; ++r) skipped += D - r;
            return skipped + j;
        };
        std::vector<std::vector<FqElem>> rows;
        for (const BivariatePoly* h : {&f, &g}) {
            for (const auto& [mi, mj] : basis) {
                std::vector<FqElem> row(basis.size(), k.zero());
                bool any = false;
                for (const auto& [key, v] : h->c) {
                    int i = key.first + mi, j = key.second + mj;
                    if (i + j >= D) continue;
                    row[index_of(i, j)] = k.add(row[index_of(i, j)], v);
                    any = true;
                }
                if (any) rows.push_back(std::move(row));
            }
        }
        // row rank over k
        i64 rank = 0;
        size_t cols = basis.size();
        for (size_t col = 0; col < cols && rank < static_cast<i64>(rows.size());
             ++col) {
            size_t piv = rank;
            while (piv < rows.size() && rows[piv][col] == k.zero()) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[rank], rows[piv]);
            FqElem inv = k.inv(rows[rank][col]);
            for (size_t c = col; c < cols; ++c)
                rows[rank][c] = k.mul(rows[rank][c], inv);
            for (size_t r = 0; r < rows.size(); ++r) {
                if (r == static_cast<size_t>(rank) || rows[r][col] == k.zero())
                    continue;
                FqElem factor = rows[r][col];
                for (size_t c = col; c < cols; ++c)
                    rows[r][c] = k.sub(rows[r][c], k.mul(factor, rows[rank][c]));
            }
            ++rank;
        }
        i64 dim = static_cast<i64>(basis.size()) - rank;
        if (dim == prev) return dim;
        prev = dim;
    }
    return -1;
}
