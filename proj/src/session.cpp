#include "k2slot/session.hpp"

#include <sstream>

#include <json.hpp>

#include "k2slot/errors.hpp"
#include "k2slot/io.hpp"

namespace k2slot {

namespace {

using Json = nlohmann::ordered_json;

std::string render_field_header(const FieldSpec& F) {
    std::string out = "field GF(" + render_int(F.q()) + ")";
    if (F.e() > 1) {
        Poly mod = poly_from_ints(F.fq(), F.fq().modulus());
        out += "=GF(" + render_int(F.p()) + ")[" + F.gen_name() + "]/(" +
               render_poly(F, mod, F.gen_name()) + ")";
    }
    return out + " m=" + render_int(F.m());
}

// Nonzero coordinates of an algebra element as a sum of x^i y^j monomials.
std::string render_algebra_element(const SymbolAlgebra& A, const std::vector<Poly>& v) {
    const FieldSpec& F = A.spec;
    i64 m = A.m();
    std::string out;
    for (i64 idx = 0; idx < static_cast<i64>(v.size()); ++idx) {
        if (v[idx].is_zero()) continue;
        i64 i = idx / m, j = idx % m;
        std::vector<std::string> parts;
        std::string coeff = render_poly(F, v[idx]);
        if (coeff != "1" || (i == 0 && j == 0)) parts.push_back(coeff);
        if (i == 1)
            parts.push_back("x");
        else if (i > 1)
            parts.push_back("x^" + render_int(i));
        if (j == 1)
            parts.push_back("y");
        else if (j > 1)
            parts.push_back("y^" + render_int(j));
        if (!out.empty()) out += "+";
        for (size_t p = 0; p < parts.size(); ++p) {
            if (p > 0) out += "*";
            out += parts[p];
        }
    }
    return out.empty() ? "0" : out;
}

struct Reporter {
    const FieldSpec& F;
    const SessionConfig& cfg;
    std::ostringstream text;
    Json commands = Json::array();

    void k2_command(const ParsedProblem& p, const char* verb) {
        text << "k2 " << verb << " " << list_text(p.classes) << ";\n";
        Json cmd;
        cmd["command"] = std::string("k2 ") + verb;
        Json classes = Json::array();
        for (const K2Element& alpha : p.classes) {
            std::string name = render_class(F, alpha);
            Json cls;
            cls["class"] = name;
            if (p.kind == ProblemKind::K2Reciprocity) {
                ReciprocityReport rep = reciprocity_check(alpha);
                text << "  class " << name << ": " << (rep.ok ? "ok" : "FAILED")
                     << ", total " << rep.total << "\n";
                cls["ok"] = rep.ok;
                cls["total"] = rep.total;
            } else {
                RamificationProfile prof = ramification(alpha);
                if (p.kind == ProblemKind::K2Zero) {
                    text << "  class " << name << ": "
                         << (prof.empty() ? "zero" : "nonzero") << "\n";
                    cls["result"] = prof.empty() ? "zero" : "nonzero";
                } else {
                    text << "  class " << name << ":"
                         << (prof.empty() ? " unramified" : "") << "\n";
                }
                Json entries = Json::array();
                for (const ResidueClass& r : prof.entries) {
                    text << "    place " << render_place(F, r.place) << ": index "
                         << r.index << ", representative "
                         << render_poly(F, r.representative) << "\n";
                    Json e;
                    e["place"] = render_place(F, r.place);
                    e["index"] = r.index;
                    e["representative"] = render_poly(F, r.representative);
                    entries.push_back(e);
                }
                cls["profile"] = entries;
            }
            classes.push_back(cls);
        }
        cmd["classes"] = classes;
        commands.push_back(cmd);
    }

    void slot_command(const ParsedProblem& p) {
        bool given = p.kind == ProblemKind::SlotVerify;
        RatFun f = p.slot;
        std::vector<SlotCertificate> certs;
        if (given) {
            text << "slot verify " << render_ratfun(F, f) << " "
                 << list_text(p.classes) << ";\n";
            for (const K2Element& alpha : p.classes)
                certs.push_back(certify_slot(alpha, f, cfg.degree_bound, cfg.budget));
        } else {
            text << "slot find " << list_text(p.classes) << ";\n";
            LinkageResult link =
                strong_linkage(slot_problem(F, p.classes), cfg.degree_bound, cfg.budget);
            f = link.f;
            certs = std::move(link.certificates);
        }
        text << "  slot f = " << render_ratfun(F, f) << (given ? " (given)" : "") << "\n";
        text << "  splitting field " << splitting_field_descriptor(F, f) << "\n";
        Json cmd;
        cmd["command"] = given ? "slot verify" : "slot find";
        cmd["slot"] = render_ratfun(F, f);
        cmd["splitting_field"] = splitting_field_descriptor(F, f);
        Json classes = Json::array();
        for (size_t i = 0; i < p.classes.size(); ++i) {
            const SlotCertificate& c = certs[i];
            std::string name = render_class(F, p.classes[i]);
            text << "  class " << name << ":\n";
            Json cls;
            cls["class"] = name;
            Json sup = Json::array();
            if (c.support.empty()) {
                text << "    unramified\n";
            } else {
                text << "    support:";
                for (size_t j = 0; j < c.support.size(); ++j) {
                    text << (j ? ", " : " ") << render_place(F, c.support[j])
                         << " (v=" << c.valuations[j] << ")";
                    Json s;
                    s["place"] = render_place(F, c.support[j]);
                    s["valuation"] = c.valuations[j];
                    sup.push_back(s);
                }
                text << "\n";
            }
            cls["support"] = sup;
            if (c.has_cofactor) {
                text << "    cofactor b = " << render_ratfun(F, c.cofactor)
                     << " (verified, candidates tried " << c.candidates_tried << ")\n";
                cls["cofactor"] = render_ratfun(F, c.cofactor);
            } else {
                text << "    cofactor not found within degree bound "
                     << cfg.degree_bound << " (candidates tried " << c.candidates_tried
                     << ")\n";
                cls["cofactor"] = nullptr;
            }
            cls["verified"] = c.has_cofactor;
            cls["candidates_tried"] = c.candidates_tried;
            classes.push_back(cls);
        }
        cmd["classes"] = classes;
        commands.push_back(cmd);
    }

    void alg_command(const ParsedProblem& p) {
        bool split = p.kind == ProblemKind::AlgSplit;
        std::string sa = render_fqelem(F, p.alg_a);
        std::string sb = render_fqelem(F, p.alg_b);
        text << "alg " << (split ? "split" : "build") << "(" << sa << "," << sb
             << ");\n";
        SymbolAlgebra A = build_algebra(F, p.alg_a, p.alg_b);
        i64 center = center_dimension(A);
        text << "  algebra (" << sa << "," << sb << ") of degree " << F.m()
             << " over GF(" << F.q() << ")\n";
        text << "  dimension " << A.dim() << ", center dimension " << center << "\n";
        Json cmd;
        cmd["command"] = split ? "alg split" : "alg build";
        cmd["a"] = sa;
        cmd["b"] = sb;
        cmd["m"] = F.m();
        cmd["dimension"] = A.dim();
        cmd["center_dimension"] = center;
        if (split) {
            SplitWitness w = split_witness(A, cfg.budget);
            Json witness;
            if (w.isotropy) {
                text << "  witness: isotropy x0=" << render_poly(F, w.data[0])
                     << ", y0=" << render_poly(F, w.data[1])
                     << ", z0=" << render_poly(F, w.data[2])
                     << " with a*x0^2+b*y0^2 = z0^2\n";
                witness["kind"] = "isotropy";
                Json triple = Json::array();
                for (const Poly& v : w.data) triple.push_back(render_poly(F, v));
                witness["triple"] = triple;
            } else {
                text << "  witness: zero divisor " << render_algebra_element(A, w.data)
                     << "\n";
                witness["kind"] = "zero_divisor";
                witness["element"] = render_algebra_element(A, w.data);
            }
            cmd["witness"] = witness;
        }
        commands.push_back(cmd);
    }

    void r2d_mult_command(const ParsedProblem& p) {
        std::string ps = render_bipoly(F, p.prime);
        std::string es = render_factored(F, p.element);
        text << "r2d mult(" << ps << "," << es << ");\n";
        i64 index = mult_index(F, p.prime, p.element);
        text << "  mult index " << index << " (mod " << F.m() << ")\n";
        Json cmd;
        cmd["command"] = "r2d mult";
        cmd["prime"] = ps;
        cmd["element"] = es;
        cmd["index"] = index;
        cmd["m"] = F.m();
        commands.push_back(cmd);
    }

    void r2d_reciprocity_command(const ParsedProblem& p) {
        std::string list;
        for (size_t i = 0; i < p.local_symbols.size(); ++i) {
            if (i > 0) list += ", ";
            list += render_local_symbol(F, p.local_symbols[i]);
        }
        text << "r2d reciprocity " << list << ";\n";
        Reciprocity2DReport rep = reciprocity_2d(F, p.local_symbols);
        text << "  " << (rep.ok ? "ok" : "FAILED") << ", total " << rep.total
             << " (mod " << F.m() << ")\n";
        Json cmd;
        cmd["command"] = "r2d reciprocity";
        cmd["ok"] = rep.ok;
        cmd["total"] = rep.total;
        cmd["m"] = F.m();
        Json breakdown = Json::array();
        for (const auto& [prime, contribution] : rep.breakdown) {
            text << "  prime " << render_bipoly(F, prime) << ": contribution "
                 << contribution << "\n";
            Json b;
            b["prime"] = render_bipoly(F, prime);
            b["contribution"] = contribution;
            breakdown.push_back(b);
        }
        cmd["breakdown"] = breakdown;
        commands.push_back(cmd);
    }

    std::string list_text(const std::vector<K2Element>& classes) const {
        std::string out;
        for (size_t i = 0; i < classes.size(); ++i) {
            if (i > 0) out += ", ";
            out += render_class(F, classes[i]);
        }
        return out;
    }
};

}  // namespace

std::string run_session(const ParsedSession& s, const SessionConfig& cfg) {
    if (cfg.degree_bound < 1)
        throw InputError("BadConfig", "degree bound must be at least 1");
    if (cfg.budget < 1) throw InputError("BadConfig", "budget must be at least 1");
    Reporter rep{s.spec, cfg, {}, Json::array()};
    rep.text << render_field_header(s.spec) << ";\n";
    for (const ParsedProblem& p : s.problems) {
        switch (p.kind) {
            case ProblemKind::K2Residues:
                rep.k2_command(p, "residues");
                break;
            case ProblemKind::K2Zero:
                rep.k2_command(p, "zero");
                break;
            case ProblemKind::K2Reciprocity:
                rep.k2_command(p, "reciprocity");
                break;
            case ProblemKind::SlotFind:
            case ProblemKind::SlotVerify:
                rep.slot_command(p);
                break;
            case ProblemKind::AlgBuild:
            case ProblemKind::AlgSplit:
                rep.alg_command(p);
                break;
            case ProblemKind::R2dMult:
                rep.r2d_mult_command(p);
                break;
            case ProblemKind::R2dReciprocity:
                rep.r2d_reciprocity_command(p);
                break;
        }
    }
    if (!cfg.json) return rep.text.str();
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    Json field;
    field["q"] = s.spec.q();
    field["p"] = s.spec.p();
    field["e"] = s.spec.e();
    field["m"] = s.spec.m();
    if (s.spec.e() > 1) {
        field["generator"] = s.spec.gen_name();
        field["modulus"] = s.spec.fq().modulus();
    }
    doc["field"] = field;
    doc["seed"] = cfg.seed;
    doc["degree_bound"] = cfg.degree_bound;
    doc["budget"] = cfg.budget;
    doc["commands"] = rep.commands;
    return doc.dump(2) + "\n";
}

}  // namespace k2slot
