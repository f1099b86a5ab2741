#include "k2slot/slot.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "k2slot/io.hpp"

namespace k2slot {

namespace {

i64 mod_m(i64 c, i64 m) {
    c %= m;
    return c < 0 ? c + m : c;
}

struct PolyLess {
    bool operator()(const Poly& a, const Poly& b) const { return poly_less(a, b); }
};

// Everything the linear residue evaluation needs at one place that can see
// the slot f. Shared by every class certified against the same f; only the
// target indices differ per class.
struct CorePlace {
    Place v;
    ExtField kappa;
    i64 va;    // v(f)
    i64 iota;  // index of -1 in kappa
    i64 phi;   // index of the unit part of f at v
    const std::vector<i64>* index_table;  // per-element indices, if small
    std::vector<i64> prime_index;         // index of interned primes at v, -1 unset
};

// Candidate primes interned to ids so the hot evaluation loop uses array
// lookups; the outside index decides admissibility away from the core.
struct PrimeInfo {
    Poly pi;
    i64 core_idx;  // index into the core place list, -1 when outside
    i64 outside;   // index of f at the prime, only when outside
};

// Monic polynomial of degree d whose coefficient tuple (c_0, ..., c_{d-1})
// is the base-q expansion of n with c_0 most significant; n ascending agrees
// with poly_less among monic polynomials of one degree.
Poly magnitude_poly(const Fq& k, int d, i64 n) {
    Poly f;
    f.c.assign(d + 1, k.zero());
    f.c[d] = k.one();
    for (int i = d - 1; i >= 0; --i) {
        f.c[i] = k.from_rank(n % k.q());
        n /= k.q();
    }
    return f;
}

// Sieve tables are only built while q^D stays below this, so the memory for
// one search context is bounded regardless of the caller's budget.
constexpr i64 kMaxSieveMagnitudes = 1 << 21;

// One-irreducible-factor tables for all monic polynomials of each degree,
// indexed by magnitude; an unmarked entry means the polynomial is
// irreducible. factor() recovers the full factor multiset by exact division
// against the tables, or by trial division against the tabulated small
// irreducibles beyond them, so a degree scan avoids running a factorization
// per polynomial.
class MagnitudeSieve {
public:
    explicit MagnitudeSieve(const Fq& k) : k_(k) {
        spf_.push_back({});
        counts_.push_back({});
    }

    int built() const { return static_cast<int>(spf_.size()) - 1; }

    void extend(int D) {
        while (built() < D) build_next();
    }

    std::vector<std::pair<Poly, int>> factor(int d, i64 n) {
        if (d <= built()) return decode(d, n);
        // trial division by the tabulated irreducibles; the tables stop at
        // the memory cap, so a deep remainder still needs a factorization
        int cap = 0;
        for (i64 size = 1; cap < d / 2 && size <= kMaxSieveMagnitudes / k_.q();
             ++cap)
            size *= k_.q();
        extend(cap);
        std::vector<std::pair<Poly, int>> out;
        Poly rest = magnitude_poly(k_, d, n);
        for (int fd = 1; fd <= cap && rest.deg() >= 2 * fd; ++fd) {
            const std::vector<Entry>& table = spf_[static_cast<size_t>(fd)];
            for (i64 np = 0;
                 np < static_cast<i64>(table.size()) && rest.deg() >= 2 * fd; ++np) {
                if (table[static_cast<size_t>(np)].fdeg != 0) continue;
                Poly pi = magnitude_poly(k_, fd, np);
                for (;;) {
                    auto [q, r] = poly_divmod(k_, rest, pi);
                    if (!r.is_zero()) break;
                    add(out, pi);
                    rest = std::move(q);
                }
            }
        }
        if (rest.deg() >= 1) {
            // no factor of degree <= cap remains, so a remainder of degree
            // up to 2*cap+1 is irreducible
            if (rest.deg() <= 2 * cap + 1) {
                add(out, std::move(rest));
            } else {
                for (auto& [pi, e] : poly_factor(k_, rest, 0).factors)
                    for (int i = 0; i < e; ++i) add(out, pi);
            }
        }
        return out;
    }

    // factor count per magnitude of degree D with every exponent below m;
    // -1 marks an inadmissible polynomial
    const std::vector<int16_t>& counts(int D, i64 m) {
        extend(D);
        std::vector<int16_t>& table = counts_[static_cast<size_t>(D)];
        if (!table.empty() || spf_[static_cast<size_t>(D)].empty()) return table;
        i64 total = static_cast<i64>(spf_[static_cast<size_t>(D)].size());
        table.assign(static_cast<size_t>(total), 0);
        for (i64 n = 0; n < total; ++n) {
            int count = 0;
            for (const auto& [pi, e] : decode(D, n)) {
                if (e >= m) {
                    count = -1;
                    break;
                }
                count += e;
            }
            table[static_cast<size_t>(n)] = static_cast<int16_t>(count);
        }
        return table;
    }

private:
    struct Entry {
        int fdeg = 0;  // degree of the recorded factor, 0 when irreducible
        i64 fmag = 0;
    };

    std::vector<std::pair<Poly, int>> decode(int d, i64 n) const {
        std::vector<std::pair<Poly, int>> out;
        int cd = d;
        i64 cn = n;
        while (cd > 0) {
            const Entry& e = spf_[static_cast<size_t>(cd)][static_cast<size_t>(cn)];
            if (e.fdeg == 0) {
                add(out, magnitude_poly(k_, cd, cn));
                break;
            }
            Poly pi = magnitude_poly(k_, e.fdeg, e.fmag);
            Poly rest = poly_div_exact(k_, magnitude_poly(k_, cd, cn), pi);
            add(out, std::move(pi));
            cd -= e.fdeg;
            cn = magnitude_of(rest);
        }
        return out;
    }

    i64 magnitude_of(const Poly& f) const {
        i64 n = 0;
        for (size_t i = 0; i + 1 < f.c.size(); ++i)
            n = n * k_.q() + k_.rank(f.c[i]);
        return n;
    }

    static void add(std::vector<std::pair<Poly, int>>& out, Poly pi) {
        for (auto& [knownPi, e] : out)
            if (knownPi == pi) {
                ++e;
                return;
            }
        out.emplace_back(std::move(pi), 1);
    }

    void build_next() {
        int D = static_cast<int>(spf_.size());
        i64 total = 1;
        for (int i = 0; i < D; ++i) total *= k_.q();
        std::vector<Entry> table(static_cast<size_t>(total));
        // every reducible polynomial of degree D has an irreducible factor
        // of degree at most D/2, so marking those degrees suffices
        for (int d = 1; 2 * d <= D; ++d) {
            std::vector<i64> irr_mag;
            std::vector<Poly> irr;
            for (i64 np = 0; np < static_cast<i64>(spf_[static_cast<size_t>(d)].size());
                 ++np)
                if (spf_[static_cast<size_t>(d)][static_cast<size_t>(np)].fdeg == 0) {
                    irr_mag.push_back(np);
                    irr.push_back(magnitude_poly(k_, d, np));
                }
            i64 cof = total;
            for (int i = 0; i < d; ++i) cof /= k_.q();
            for (i64 ng = 0; ng < cof; ++ng) {
                Poly g = magnitude_poly(k_, D - d, ng);
                for (size_t j = 0; j < irr.size(); ++j) {
                    Poly h = poly_mul(k_, irr[j], g);
                    Entry& slot = table[static_cast<size_t>(magnitude_of(h))];
                    if (slot.fdeg == 0) {
                        slot.fdeg = d;
                        slot.fmag = irr_mag[j];
                    }
                }
            }
        }
        spf_.push_back(std::move(table));
        counts_.push_back({});
    }

    const Fq& k_;
    std::vector<std::vector<Entry>> spf_;
    std::vector<std::vector<int16_t>> counts_;
};

// Search state shared across the classes of one linkage problem: the sieve,
// power-residue index tables for small residue fields, and the evaluation
// skeleton for a fixed slot function.
struct SlotSearchContext {
    explicit SlotSearchContext(const Fq& k) : sieve(k) {}

    MagnitudeSieve sieve;
    std::map<Poly, std::vector<i64>, PolyLess> index_tables;

    // skeleton for the current slot function, rebuilt when f changes
    bool has_f = false;
    RatFun f;
    std::vector<CorePlace> core;
    std::map<Poly, size_t, PolyLess> core_of_prime;
    std::vector<i64> base_index;  // index of every base-field constant
    std::vector<FqElem> scalars;
    std::map<Poly, size_t, PolyLess> prime_id;
    std::vector<PrimeInfo> primes;
};

constexpr i64 kIndexTableCap = 4096;

// index of every nonzero element of kappa, indexed by ExtField rank
const std::vector<i64>& kappa_index_table(SlotSearchContext& ctx,
                                          const ExtField& kappa) {
    std::vector<i64>& table = ctx.index_tables[kappa.pi()];
    if (!table.empty()) return table;
    table.assign(static_cast<size_t>(kappa.card()), 0);
    for (i64 r = 1; r < kappa.card(); ++r)
        table[static_cast<size_t>(r)] = mth_power_index(kappa, kappa.from_rank(r));
    return table;
}

i64 unit_part_index(const FieldSpec& F, const ExtField& kappa, const Place& v,
                    const RatFun& f, i64 vf) {
    RatFun shift = v.infinite ? ratfun_from_poly(F, poly_x(F.fq()))
                              : ratfun_from_poly(F, v.pi);
    i64 e = v.infinite ? vf : -vf;
    RatFun local = rat_mul(F, f, rat_pow(F, shift, e));
    return mth_power_index(kappa, residue(F, v, local));
}

}  // namespace

SlotProblem slot_problem(FieldSpec spec, std::vector<K2Element> classes) {
    for (const K2Element& alpha : classes)
        if (!(alpha.spec == spec))
            throw MathError("SpecMismatch", "classes live over different fields");
    return SlotProblem{std::move(spec), std::move(classes)};
}

std::vector<Place> joint_support(const SlotProblem& problem) {
    std::vector<Place> all;
    for (const K2Element& alpha : problem.classes)
        for (const ResidueClass& rc : ramification(alpha).entries) all.push_back(rc.place);
    std::sort(all.begin(), all.end(), place_less);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

RatFun weak_approx_slot(const FieldSpec& F, const std::vector<Place>& S) {
    const Fq& k = F.fq();
    Poly f = poly_one(k);
    std::vector<Poly> finite;
    bool has_inf = false;
    for (const Place& v : S) {
        if (v.infinite) {
            has_inf = true;
        } else {
            f = poly_mul(k, f, v.pi);
            finite.push_back(v.pi);
        }
    }
    if (has_inf && std::gcd(static_cast<i64>(f.deg()), F.m()) != 1) {
        // the support may already hold every irreducible of the least
        // correcting degree, so escalate until a fresh factor exists
        for (int d = 1;; ++d) {
            if (std::gcd(static_cast<i64>(f.deg() + d), F.m()) != 1) continue;
            try {
                f = poly_mul(k, f, irreducible_of_degree_avoiding(k, d, finite));
                break;
            } catch (const MathError&) {
            }
        }
    }
    return ratfun_from_poly(F, f);
}

namespace {

// Per-slot evaluation skeleton: the core places, their local data, the
// scalar candidates, and the constant index table. Depends only on F and f,
// so one build serves every class certified against the same slot.
void build_slot_skeleton(SlotSearchContext& ctx, const FieldSpec& F,
                         const RatFun& f) {
    const Fq& k = F.fq();
    const i64 m = F.m();
    ctx.core.clear();
    ctx.core_of_prime.clear();
    ctx.scalars.clear();
    ctx.prime_id.clear();
    ctx.primes.clear();

    // Places that can carry a nonzero residue of {f, b} for any candidate b:
    // the support of f, infinity, and the primes dividing b (handled
    // separately below). Ramified places of a certifiable class lie in the
    // support of f, since the certificate needs v(f) nonzero there.
    std::vector<Place> core_places = support(F, f);
    core_places.push_back(place_infinity());
    std::sort(core_places.begin(), core_places.end(), place_less);
    core_places.erase(std::unique(core_places.begin(), core_places.end()),
                      core_places.end());

    for (const Place& v : core_places) {
        ExtField kappa = residue_field(F, v);
        i64 va = valuation(F, v, f);
        i64 iota = mth_power_index(kappa, kappa.embed(k.from_int(-1)));
        i64 phi = unit_part_index(F, kappa, v, f, va);
        const std::vector<i64>* table = nullptr;
        if (!v.infinite && kappa.card() <= kIndexTableCap)
            table = &kappa_index_table(ctx, kappa);
        ctx.core.push_back(CorePlace{v, kappa, va, iota, phi, table, {}});
        if (!v.infinite) ctx.core_of_prime[v.pi] = ctx.core.size() - 1;
    }

    // power-residue index of every base-field constant
    ExtField base(F, poly_x(k));
    ctx.base_index.assign(k.q(), 0);
    for (i64 r = 1; r < k.q(); ++r)
        ctx.base_index[r] = mth_power_index(base, base.embed(k.from_rank(r)));

    // scalar candidates: -1 and +1 first, then one least representative for
    // every power-residue class the two do not already cover
    FqElem minus_one = k.from_int(-1);
    ctx.scalars.push_back(minus_one);
    if (!(k.one() == minus_one)) ctx.scalars.push_back(k.one());
    std::set<i64> covered = {0, ctx.base_index[k.rank(minus_one)]};
    for (i64 j = 1; j < m; ++j) {
        if (covered.count(j) > 0) continue;
        for (i64 r = 1; r < k.q(); ++r)
            if (ctx.base_index[r] == j) {
                ctx.scalars.push_back(k.from_rank(r));
                break;
            }
    }

    ctx.f = f;
    ctx.has_f = true;
}

SlotCertificate certify_slot_impl(const K2Element& alpha, const RatFun& f,
                                  int degree_bound, i64 budget,
                                  SlotSearchContext& ctx) {
    const FieldSpec& F = alpha.spec;
    const Fq& k = F.fq();
    const i64 m = F.m();
    if (f.is_zero())
        throw MathError("ZeroFunction", "the slot must be a nonzero function");
    if (degree_bound < 0) degree_bound = 0;
    if (budget < 1) budget = 1;

    RamificationProfile profile = ramification(alpha);
    SlotCertificate cert;
    cert.f = f;
    for (const ResidueClass& rc : profile.entries) {
        i64 vf = valuation(F, rc.place, f);
        if (std::gcd(vf < 0 ? -vf : vf, m) != 1)
            throw MathError("PreconditionViolated",
                            "v(f) = " + render_int(vf) + " is not coprime to m = " +
                                render_int(m) + " at place " + render_place(F, rc.place));
        cert.support.push_back(rc.place);
        cert.valuations.push_back(vf);
    }

    if (!ctx.has_f || !(ctx.f == f)) build_slot_skeleton(ctx, F, f);
    std::vector<CorePlace>& core = ctx.core;
    std::vector<i64> targets(core.size(), 0);
    for (const ResidueClass& rc : profile.entries)
        for (size_t i = 0; i < core.size(); ++i)
            if (core[i].v == rc.place) targets[i] = rc.index;

    auto intern = [&](const Poly& pi) -> size_t {
        auto it = ctx.prime_id.find(pi);
        if (it != ctx.prime_id.end()) return it->second;
        PrimeInfo info{pi, -1, 0};
        auto cit = ctx.core_of_prime.find(pi);
        if (cit != ctx.core_of_prime.end()) {
            info.core_idx = static_cast<i64>(cit->second);
        } else {
            ExtField kappa = ExtField::trusted(F, pi);
            Poly num = kappa.reduce(f.num);
            Poly den = kappa.reduce(f.den);
            info.outside = mth_power_index(kappa, kappa.mul(num, kappa.inv(den)));
        }
        ctx.primes.push_back(std::move(info));
        for (CorePlace& cp : core) cp.prime_index.push_back(-1);
        size_t id = ctx.primes.size() - 1;
        ctx.prime_id.emplace(pi, id);
        return id;
    };

    auto prime_index_at = [&](CorePlace& cp, size_t id) -> i64 {
        if (cp.v.infinite) return 0;  // monic primes reduce to 1 at infinity
        i64& slot = cp.prime_index[id];
        if (slot < 0) {
            Poly r = cp.kappa.reduce(ctx.primes[id].pi);
            slot = cp.index_table
                       ? (*cp.index_table)[static_cast<size_t>(cp.kappa.rank(r))]
                       : mth_power_index(cp.kappa, r);
        }
        return slot;
    };

    // residue indices of {f, b} for b = c * prod(pi^e) via the linear
    // formula ind = parity(va*vb)*iota - vb*phi + va*ind_v(unit part of b)
    i64 effort = 0;
    std::vector<std::pair<size_t, int>> fac_ids;
    auto try_magnitude = [&](const std::vector<std::pair<Poly, int>>& factors,
                             int total_deg) -> bool {
        bool admissible = true;
        fac_ids.clear();
        for (const auto& [pi, e] : factors) {
            size_t id = intern(pi);
            if (ctx.primes[id].core_idx < 0 &&
                mod_m(e * ctx.primes[id].outside, m) != 0) {
                admissible = false;
                break;
            }
            fac_ids.emplace_back(id, e);
        }
        for (const FqElem& c : ctx.scalars) {
            if (effort >= budget) return false;
            ++effort;
            ++cert.candidates_tried;
            if (!admissible) continue;
            i64 gamma = ctx.base_index[k.rank(c)];
            bool match = true;
            for (size_t i = 0; i < core.size() && match; ++i) {
                CorePlace& cp = core[i];
                i64 vb = cp.v.infinite ? -total_deg : 0;
                i64 unit = mod_m(static_cast<i64>(cp.kappa.d()) * gamma, m);
                for (const auto& [id, e] : fac_ids) {
                    if (ctx.primes[id].core_idx == static_cast<i64>(i)) {
                        vb = e;
                        continue;
                    }
                    unit = mod_m(unit + e * prime_index_at(cp, id), m);
                }
                i64 sign = (cp.va * vb) % 2 != 0 ? cp.iota : 0;
                i64 got = mod_m(sign - vb * cp.phi + cp.va * unit, m);
                match = got == targets[i];
            }
            if (!match) continue;
            Poly bpoly = poly_const(k, c);
            for (const auto& [pi, e] : factors)
                for (int i = 0; i < e; ++i) bpoly = poly_mul(k, bpoly, pi);
            RatFun b = ratfun_from_poly(F, bpoly);
            K2Element delta = k2_add(alpha, k2_negate(k2_symbol(F, f, b)));
            if (!is_zero(delta))
                throw MathError("InternalError",
                                "fast residue evaluation disagrees with the recheck");
            cert.has_cofactor = true;
            cert.cofactor = b;
            return true;
        }
        return false;
    };

    if (try_magnitude({}, 0)) return cert;
    for (int D = 1; D <= degree_bound && effort < budget; ++D) {
        __int128 total = 1;
        for (int i = 0; i < D; ++i) total *= k.q();
        // cached factor counts pay off only when the whole degree will be
        // scanned and the tables fit; otherwise decode per polynomial
        bool tabled = total <= static_cast<__int128>(budget - effort) &&
                      total <= kMaxSieveMagnitudes;
        const std::vector<int16_t>* counts =
            tabled ? &ctx.sieve.counts(D, m) : nullptr;
        // first pass: count irreducible factors (with multiplicity) of each
        // magnitude, discarding anything with an exponent at or above m
        std::vector<std::pair<i64, int>> mags;
        for (__int128 n = 0; n < total && effort < budget; ++n) {
            ++effort;
            int count = 0;
            if (counts) {
                count = (*counts)[static_cast<size_t>(n)];
            } else {
                for (const auto& [pi, e] :
                     ctx.sieve.factor(D, static_cast<i64>(n))) {
                    if (e >= m) {
                        count = -1;
                        break;
                    }
                    count += e;
                }
            }
            if (count >= 0) mags.emplace_back(static_cast<i64>(n), count);
        }
        int max_count = 0;
        for (const auto& [n, count] : mags) max_count = std::max(max_count, count);
        for (int want = 1; want <= max_count; ++want) {
            for (const auto& [n, count] : mags) {
                if (count != want) continue;
                if (try_magnitude(ctx.sieve.factor(D, n), D)) return cert;
                if (effort >= budget) return cert;
            }
        }
    }
    return cert;
}

}  // namespace

SlotCertificate certify_slot(const K2Element& alpha, const RatFun& f, int degree_bound,
                             i64 budget) {
    SlotSearchContext ctx(alpha.spec.fq());
    return certify_slot_impl(alpha, f, degree_bound, budget, ctx);
}

LinkageResult strong_linkage(const SlotProblem& problem, int degree_bound, i64 budget) {
    RatFun f = weak_approx_slot(problem.spec, joint_support(problem));
    LinkageResult out{f, {}};
    SlotSearchContext ctx(problem.spec.fq());
    for (const K2Element& alpha : problem.classes)
        out.certificates.push_back(
            certify_slot_impl(alpha, f, degree_bound, budget, ctx));
    return out;
}

std::string splitting_field_descriptor(const FieldSpec& F, const RatFun& f) {
    if (f.is_zero())
        throw MathError("ZeroFunction", "the slot must be a nonzero function");
    std::string ground = "F_" + render_int(F.q()) + "(t)";
    if (f == ratfun_one(F)) return ground;
    return ground + "((" + render_ratfun(F, f) + ")^(1/" + render_int(F.m()) + "))";
}

}  // namespace k2slot
