#include "k2slot/local2d.hpp"

#include <algorithm>

#include "k2slot/errors.hpp"
#include "k2slot/io.hpp"

namespace k2slot {

namespace {

void biv_accumulate(const Fq& k, BivariatePoly& f, int i, int j, const FqElem& v) {
    auto key = std::make_pair(i, j);
    auto it = f.c.find(key);
    if (it == f.c.end()) {
        if (!k.is_zero(v)) f.c.emplace(key, v);
        return;
    }
    FqElem sum = k.add(it->second, v);
    if (k.is_zero(sum))
        f.c.erase(it);
    else
        it->second = sum;
}

BivariatePoly biv_scale(const Fq& k, const BivariatePoly& f, const FqElem& s) {
    BivariatePoly out;
    if (k.is_zero(s)) return out;
    for (const auto& [key, v] : f.c) out.c.emplace(key, k.mul(v, s));
    return out;
}

// multiplication by s * x^i * y^j
BivariatePoly biv_mono_mul(const Fq& k, const BivariatePoly& f, const FqElem& s,
                           int i, int j) {
    BivariatePoly out;
    if (k.is_zero(s)) return out;
    for (const auto& [key, v] : f.c)
        out.c.emplace(std::make_pair(key.first + i, key.second + j), k.mul(v, s));
    return out;
}

// head monomial: largest (total degree, x degree, y degree)
std::pair<int, int> biv_head(const BivariatePoly& f) {
    std::pair<int, int> best = {-1, -1};
    int best_total = -1;
    for (const auto& [key, v] : f.c) {
        (void)v;
        int total = key.first + key.second;
        if (total > best_total ||
            (total == best_total && key > best)) {
            best_total = total;
            best = key;
        }
    }
    return best;
}

// scales so the head coefficient is 1; zero stays zero
BivariatePoly biv_monic(const Fq& k, const BivariatePoly& f) {
    if (f.is_zero()) return f;
    FqElem head = f.c.at(biv_head(f));
    return biv_scale(k, f, k.inv(head));
}

// restriction to the line y = 0, as a polynomial in x
Poly biv_restrict_y0(const Fq& k, const BivariatePoly& f) {
    Poly out;
    for (const auto& [key, v] : f.c) {
        if (key.second != 0) continue;
        if (static_cast<int>(out.c.size()) <= key.first)
            out.c.resize(key.first + 1, k.zero());
        out.c[key.first] = v;
    }
    return poly_trim(std::move(out));
}

BivariatePoly biv_divide_y(const BivariatePoly& f) {
    BivariatePoly out;
    for (const auto& [key, v] : f.c)
        out.c.emplace(std::make_pair(key.first, key.second - 1), v);
    return out;
}

BivariatePoly biv_derivative_x(const Fq& k, const BivariatePoly& f) {
    BivariatePoly out;
    for (const auto& [key, v] : f.c) {
        if (key.first == 0) continue;
        FqElem scaled = k.mul(v, k.from_int(key.first));
        if (!k.is_zero(scaled))
            out.c.emplace(std::make_pair(key.first - 1, key.second), scaled);
    }
    return out;
}

BivariatePoly biv_derivative_y(const Fq& k, const BivariatePoly& f) {
    BivariatePoly out;
    for (const auto& [key, v] : f.c) {
        if (key.second == 0) continue;
        FqElem scaled = k.mul(v, k.from_int(key.second));
        if (!k.is_zero(scaled))
            out.c.emplace(std::make_pair(key.first, key.second - 1), scaled);
    }
    return out;
}

// view as a polynomial in x with coefficients in k[y]
std::vector<Poly> to_x_major(const Fq& k, const BivariatePoly& f) {
    int dx = -1;
    for (const auto& [key, v] : f.c) {
        (void)v;
        dx = std::max(dx, key.first);
    }
    std::vector<Poly> out(dx + 1);
    for (const auto& [key, v] : f.c) {
        Poly& coeff = out[key.first];
        if (static_cast<int>(coeff.c.size()) <= key.second)
            coeff.c.resize(key.second + 1, k.zero());
        coeff.c[key.second] = v;
    }
    for (Poly& p : out) p = poly_trim(std::move(p));
    return out;
}

BivariatePoly from_x_major(const Fq& k, const std::vector<Poly>& v) {
    BivariatePoly out;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        for (int j = 0; j <= v[i].deg(); ++j)
            if (!k.is_zero(v[i].c[j]))
                out.c.emplace(std::make_pair(i, j), v[i].c[j]);
    return out;
}

int xdeg(const std::vector<Poly>& f) { return static_cast<int>(f.size()) - 1; }

void x_major_trim(std::vector<Poly>& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

// content of f in k[y] and the primitive part f / content
Poly x_major_content(const Fq& k, const std::vector<Poly>& f) {
    Poly g = poly_zero();
    for (const Poly& coeff : f) g = poly_gcd(k, g, coeff);
    return g;
}

std::vector<Poly> x_major_divide_content(const Fq& k, const std::vector<Poly>& f,
                                         const Poly& content) {
    std::vector<Poly> out(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        out[i] = f[i].is_zero() ? poly_zero() : poly_div_exact(k, f[i], content);
    return out;
}

// pseudo-remainder of a by b in k[y][x]; b nonzero
std::vector<Poly> x_major_prem(const Fq& k, std::vector<Poly> a,
                               const std::vector<Poly>& b) {
    const Poly& lead = b.back();
    while (true) {
        x_major_trim(a);
        if (xdeg(a) < xdeg(b)) return a;
        int shift = xdeg(a) - xdeg(b);
        Poly top = a.back();
        // a = lead*a - top * x^shift * b
        std::vector<Poly> next(a.size());
        for (int i = 0; i < static_cast<int>(a.size()); ++i)
            next[i] = poly_mul(k, a[i], lead);
        for (int i = 0; i <= xdeg(b); ++i)
            next[i + shift] =
                poly_sub(k, next[i + shift], poly_mul(k, b[i], top));
        a = std::move(next);
    }
}

i64 mod_m(const FieldSpec& F, i64 v) {
    i64 m = F.m();
    return ((v % m) + m) % m;
}

BivariatePoly canonical_prime(const FieldSpec& F, const BivariatePoly& p) {
    if (p.is_zero())
        throw MathError("ZeroParameter", "prime polynomial must be nonzero");
    BivariatePoly q = biv_monic(F.fq(), p);
    if (!F.fq().is_zero(biv_at_origin(F.fq(), q)))
        throw MathError("NotThroughOrigin",
                        "prime " + render_bipoly(F, q) +
                            " does not vanish at the origin");
    return q;
}

}  // namespace

BivariatePoly biv_make(const Fq& k,
                       const std::vector<std::tuple<int, int, i64>>& terms) {
    BivariatePoly out;
    for (const auto& [i, j, v] : terms) biv_accumulate(k, out, i, j, k.from_int(v));
    return out;
}

BivariatePoly biv_add(const Fq& k, const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly out = a;
    for (const auto& [key, v] : b.c) biv_accumulate(k, out, key.first, key.second, v);
    return out;
}

BivariatePoly biv_neg(const Fq& k, const BivariatePoly& a) {
    BivariatePoly out;
    for (const auto& [key, v] : a.c) out.c.emplace(key, k.neg(v));
    return out;
}

BivariatePoly biv_sub(const Fq& k, const BivariatePoly& a, const BivariatePoly& b) {
    return biv_add(k, a, biv_neg(k, b));
}

BivariatePoly biv_mul(const Fq& k, const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly out;
    for (const auto& [ka, va] : a.c)
        for (const auto& [kb, vb] : b.c)
            biv_accumulate(k, out, ka.first + kb.first, ka.second + kb.second,
                           k.mul(va, vb));
    return out;
}

int biv_total_degree(const BivariatePoly& f) {
    int d = -1;
    for (const auto& [key, v] : f.c) {
        (void)v;
        d = std::max(d, key.first + key.second);
    }
    return d;
}

FqElem biv_at_origin(const Fq& k, const BivariatePoly& f) {
    auto it = f.c.find({0, 0});
    return it == f.c.end() ? k.zero() : it->second;
}

bool biv_less(const BivariatePoly& a, const BivariatePoly& b) {
    int da = biv_total_degree(a), db = biv_total_degree(b);
    if (da != db) return da < db;
    auto ia = a.c.begin(), ib = b.c.begin();
    for (; ia != a.c.end() && ib != b.c.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second.c != ib->second.c) return ia->second.c < ib->second.c;
    }
    return a.c.size() < b.c.size();
}

BivariatePoly biv_gcd(const Fq& k, const BivariatePoly& a, const BivariatePoly& b) {
    if (a.is_zero()) return biv_monic(k, b);
    if (b.is_zero()) return biv_monic(k, a);
    std::vector<Poly> fa = to_x_major(k, a);
    std::vector<Poly> fb = to_x_major(k, b);
    Poly ca = x_major_content(k, fa);
    Poly cb = x_major_content(k, fb);
    std::vector<Poly> pa = x_major_divide_content(k, fa, ca);
    std::vector<Poly> pb = x_major_divide_content(k, fb, cb);
    if (xdeg(pa) < xdeg(pb)) std::swap(pa, pb);
    while (true) {
        x_major_trim(pb);
        if (pb.empty()) break;
        std::vector<Poly> r = x_major_prem(k, pa, pb);
        x_major_trim(r);
        pa = std::move(pb);
        if (r.empty())
            pb.clear();
        else
            pb = x_major_divide_content(k, r, x_major_content(k, r));
    }
    Poly content = poly_gcd(k, ca, cb);
    std::vector<Poly> result(pa.size());
    Poly pa_content = x_major_content(k, pa);
    std::vector<Poly> pp = x_major_divide_content(k, pa, pa_content);
    for (size_t i = 0; i < pp.size(); ++i) result[i] = poly_mul(k, pp[i], content);
    return biv_monic(k, from_x_major(k, result));
}

std::string render_bipoly(const FieldSpec& F, const BivariatePoly& f) {
    std::vector<std::pair<int, int>> keys;
    for (const auto& [key, v] : f.c) {
        (void)v;
        keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        int ta = a.first + a.second, tb = b.first + b.second;
        if (ta != tb) return ta < tb;
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    std::string out;
    for (const auto& [xi, yj] : keys) {
        const FqElem& coeff = f.c.at({xi, yj});
        for (size_t g = 0; g < coeff.c.size(); ++g) {
            if (coeff.c[g] == 0) continue;
            std::vector<std::string> factors;
            if (coeff.c[g] != 1 || (g == 0 && xi == 0 && yj == 0))
                factors.push_back(render_int(coeff.c[g]));
            if (g == 1)
                factors.push_back(F.gen_name());
            else if (g > 1)
                factors.push_back(F.gen_name() + "^" + render_int(static_cast<i64>(g)));
            if (xi == 1)
                factors.push_back("x");
            else if (xi > 1)
                factors.push_back("x^" + render_int(xi));
            if (yj == 1)
                factors.push_back("y");
            else if (yj > 1)
                factors.push_back("y^" + render_int(yj));
            if (!out.empty()) out += "+";
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i > 0) out += "*";
                out += factors[i];
            }
        }
    }
    return out.empty() ? "0" : out;
}

IntersectionNumber intersection_multiplicity(const Fq& k, const BivariatePoly& f,
                                             const BivariatePoly& g) {
    if (f.is_zero() || g.is_zero())
        throw MathError("ZeroParameter",
                        "intersection multiplicity needs nonzero curves");
    BivariatePoly common = biv_gcd(k, f, g);
    if (k.is_zero(biv_at_origin(k, common))) return {true, 0};

    // no shared component through the origin from here on
    i64 total = 0;
    BivariatePoly F = f, G = g;
    while (true) {
        if (!k.is_zero(biv_at_origin(k, F)) || !k.is_zero(biv_at_origin(k, G)))
            return {false, total};
        Poly fr = biv_restrict_y0(k, F);
        Poly gr = biv_restrict_y0(k, G);
        if (fr.is_zero() && gr.is_zero())
            throw MathError("InternalError", "shared component slipped past the gcd");
        if (fr.is_zero() || gr.is_zero()) {
            if (fr.is_zero()) {
                std::swap(F, G);
                std::swap(fr, gr);
            }
            // G = y * H: split off the line y and recurse on H
            i64 ord = 0;
            while (ord <= fr.deg() && k.is_zero(fr.c[ord])) ++ord;
            total += ord;
            G = biv_divide_y(G);
            continue;
        }
        if (fr.deg() > gr.deg()) {
            std::swap(F, G);
            std::swap(fr, gr);
        }
        // kill the leading restricted term of G with a multiple of F
        FqElem c = k.mul(poly_lc(gr), k.inv(poly_lc(fr)));
        G = biv_sub(k, G, biv_mono_mul(k, F, c, gr.deg() - fr.deg(), 0));
        if (G.is_zero())
            throw MathError("InternalError", "shared component slipped past the gcd");
    }
}

FactoredBivariate factored_make(const FieldSpec& F, FqElem unit,
                                std::vector<std::pair<BivariatePoly, i64>> factors) {
    const Fq& k = F.fq();
    if (k.is_zero(unit))
        throw MathError("ZeroParameter", "unit of a factored element must be nonzero");
    std::vector<std::pair<BivariatePoly, i64>> canon;
    for (auto& [f, e] : factors) {
        if (f.is_zero())
            throw MathError("ZeroParameter", "factors must be nonzero");
        if (e == 0) continue;
        if (biv_total_degree(f) == 0) {
            unit = k.mul(unit, k.pow(biv_at_origin(k, f), e));
            continue;
        }
        FqElem head = f.c.at(biv_head(f));
        unit = k.mul(unit, k.pow(head, e));
        BivariatePoly fm = biv_monic(k, f);
        bool merged = false;
        for (auto& [g, ge] : canon)
            if (g == fm) {
                ge += e;
                merged = true;
                break;
            }
        if (!merged) canon.emplace_back(std::move(fm), e);
    }
    canon.erase(std::remove_if(canon.begin(), canon.end(),
                               [](const auto& fe) { return fe.second == 0; }),
                canon.end());
    for (const auto& [f, e] : canon) {
        (void)e;
        BivariatePoly fx = biv_derivative_x(k, f);
        BivariatePoly fy = biv_derivative_y(k, f);
        BivariatePoly d = biv_gcd(k, f, biv_gcd(k, fx, fy));
        if (biv_total_degree(d) > 0)
            throw MathError("NotSquarefree",
                            "factor " + render_bipoly(F, f) + " is not squarefree");
    }
    for (size_t i = 0; i < canon.size(); ++i)
        for (size_t j = i + 1; j < canon.size(); ++j) {
            BivariatePoly d = biv_gcd(k, canon[i].first, canon[j].first);
            if (biv_total_degree(d) > 0)
                throw MathError("NotCoprime",
                                "factors " + render_bipoly(F, canon[i].first) +
                                    " and " + render_bipoly(F, canon[j].first) +
                                    " share a component");
        }
    std::sort(canon.begin(), canon.end(),
              [](const auto& a, const auto& b) { return biv_less(a.first, b.first); });
    return {unit, std::move(canon)};
}

FactoredBivariate factored_one(const FieldSpec& F) {
    return {F.fq().one(), {}};
}

FactoredBivariate factored_mul(const FieldSpec& F, const FactoredBivariate& a,
                               const FactoredBivariate& b) {
    std::vector<std::pair<BivariatePoly, i64>> factors = a.factors;
    factors.insert(factors.end(), b.factors.begin(), b.factors.end());
    return factored_make(F, F.fq().mul(a.unit, b.unit), std::move(factors));
}

LocalSymbol local_symbol_make(const FieldSpec& F, FactoredBivariate a,
                              FactoredBivariate b, i64 coeff) {
    return {std::move(a), std::move(b), mod_m(F, coeff)};
}

i64 prime_valuation(const FieldSpec& F, const BivariatePoly& p,
                    const FactoredBivariate& u) {
    BivariatePoly q = canonical_prime(F, p);
    i64 v = 0;
    for (const auto& [f, e] : u.factors)
        if (f == q) v += e;
    return v;
}

FactoredBivariate local_residue(const FieldSpec& F, const LocalSymbol& s,
                                const BivariatePoly& p) {
    const Fq& k = F.fq();
    BivariatePoly q = canonical_prime(F, p);
    i64 va = prime_valuation(F, q, s.a);
    i64 vb = prime_valuation(F, q, s.b);
    FqElem unit = (va * vb) % 2 != 0 ? k.neg(k.one()) : k.one();
    unit = k.mul(unit, k.pow(s.a.unit, -vb));
    unit = k.mul(unit, k.pow(s.b.unit, va));
    std::vector<std::pair<BivariatePoly, i64>> factors;
    for (const auto& [f, e] : s.a.factors)
        if (!(f == q)) factors.emplace_back(f, -vb * e);
    for (const auto& [f, e] : s.b.factors)
        if (!(f == q)) factors.emplace_back(f, va * e);
    FactoredBivariate out = factored_make(F, unit, std::move(factors));
    // the whole residue is raised to the symbol coefficient
    out.unit = k.pow(out.unit, s.coeff);
    for (auto& [f, e] : out.factors) {
        (void)f;
        e *= s.coeff;
    }
    return factored_make(F, out.unit, std::move(out.factors));
}

i64 mult_index(const FieldSpec& F, const BivariatePoly& p,
               const FactoredBivariate& u) {
    const Fq& k = F.fq();
    BivariatePoly q = canonical_prime(F, p);
    for (const auto& [f, e] : u.factors) {
        (void)e;
        if (f == q)
            throw MathError("SharedComponent",
                            "element is not a unit at " + render_bipoly(F, q));
    }
    i64 total = 0;
    for (const auto& [f, e] : u.factors) {
        if (!k.is_zero(biv_at_origin(k, f))) continue;
        IntersectionNumber i = intersection_multiplicity(k, q, f);
        if (i.infinite)
            throw MathError("InfiniteIntersection",
                            "factor " + render_bipoly(F, f) +
                                " shares a component with " + render_bipoly(F, q));
        total += e * i.value;
    }
    return mod_m(F, total);
}

Reciprocity2DReport reciprocity_2d(const FieldSpec& F,
                                   const std::vector<LocalSymbol>& symbols) {
    const Fq& k = F.fq();
    std::vector<BivariatePoly> primes;
    for (const LocalSymbol& s : symbols)
        for (const FactoredBivariate* entry : {&s.a, &s.b})
            for (const auto& [f, e] : entry->factors) {
                (void)e;
                if (!k.is_zero(biv_at_origin(k, f))) continue;
                if (std::find(primes.begin(), primes.end(), f) == primes.end())
                    primes.push_back(f);
            }
    std::sort(primes.begin(), primes.end(), biv_less);

    Reciprocity2DReport report;
    i64 total = 0;
    for (const BivariatePoly& q : primes) {
        i64 contribution = 0;
        for (const LocalSymbol& s : symbols)
            contribution += mult_index(F, q, local_residue(F, s, q));
        contribution = mod_m(F, contribution);
        total += contribution;
        report.breakdown.emplace_back(q, contribution);
    }
    report.total = mod_m(F, total);
    report.ok = report.total == 0;
    return report;
}

}  // namespace k2slot
