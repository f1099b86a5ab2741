#include "k2slot/io.hpp"

#include <sstream>

namespace k2slot {

std::string render_int(i64 n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

namespace {

void append_monomial(std::string& out, i64 coeff, const std::string& gen_name, int gen_pow,
                     const std::string& var, int var_pow) {
    std::vector<std::string> factors;
    if (coeff != 1 || (gen_pow == 0 && var_pow == 0))
        factors.push_back(render_int(coeff));
    if (gen_pow == 1)
        factors.push_back(gen_name);
    else if (gen_pow > 1)
        factors.push_back(gen_name + "^" + render_int(gen_pow));
    if (var_pow == 1)
        factors.push_back(var);
    else if (var_pow > 1)
        factors.push_back(var + "^" + render_int(var_pow));
    if (!out.empty()) out += "+";
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i > 0) out += "*";
        out += factors[i];
    }
}

}  // namespace

std::string render_fqelem(const FieldSpec& F, const FqElem& a) {
    std::string out;
    for (size_t j = 0; j < a.c.size(); ++j)
        if (a.c[j] != 0)
            append_monomial(out, a.c[j], F.gen_name(), static_cast<int>(j), "", 0);
    return out.empty() ? "0" : out;
}

std::string render_poly(const FieldSpec& F, const Poly& f, const std::string& var) {
    std::string out;
    for (int i = 0; i <= f.deg(); ++i)
        for (size_t j = 0; j < f.c[i].c.size(); ++j)
            if (f.c[i].c[j] != 0)
                append_monomial(out, f.c[i].c[j], F.gen_name(), static_cast<int>(j), var, i);
    return out.empty() ? "0" : out;
}

std::string render_ratfun(const FieldSpec& F, const RatFun& f) {
    if (f.den == poly_one(F.fq())) return render_poly(F, f.num);
    return render_poly(F, f.num) + "/" + render_poly(F, f.den);
}

std::string render_place(const FieldSpec& F, const Place& v) {
    return v.infinite ? "inf" : render_poly(F, v.pi);
}

}  // namespace k2slot
