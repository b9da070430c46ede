#include "ozc/poly2.hpp"
#include "ozc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ozc {

BiPoly::BiPoly(FieldPtr field) : field_(std::move(field)) {}

BiPoly BiPoly::constant(FieldElement c) {
    BiPoly p(c.field());
    p.add_term({0, 0}, c);
    return p;
}

BiPoly BiPoly::var_x(const FieldPtr& field) {
    BiPoly p(field);
    p.add_term({1, 0}, FieldElement::one(field));
    return p;
}

BiPoly BiPoly::var_y(const FieldPtr& field) {
    BiPoly p(field);
    p.add_term({0, 1}, FieldElement::one(field));
    return p;
}

long BiPoly::degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.total();
}

long BiPoly::degree_x() const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m.dx));
    return d;
}

long BiPoly::degree_y() const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m.dy));
    return d;
}

FieldElement BiPoly::coeff(Mono m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? FieldElement::zero(field_) : it->second;
}

void BiPoly::add_term(Mono m, const FieldElement& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BiPoly BiPoly::homogeneous_part(unsigned d) const {
    BiPoly p(field_);
    for (const auto& [m, c] : terms_)
        if (m.total() == d) p.add_term(m, c);
    return p;
}

BiPoly BiPoly::leading_form() const {
    if (terms_.empty()) return BiPoly(field_);
    return homogeneous_part(terms_.rbegin()->first.total());
}

BiPoly BiPoly::operator-() const {
    BiPoly p(field_);
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    check_same_field(field_, o.field_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    check_same_field(field_, o.field_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

namespace {

// Denominator-cleared copy of a polynomial over a degree-1 field: every
// coefficient is a plain rational, so one common denominator turns the
// whole product into integer cross sums.
struct ClearedPoly {
    std::vector<Mono> mono;
    std::vector<Integer> num;
    Integer den{1};
};

ClearedPoly clear_denominators(const BiPoly& f) {
    ClearedPoly out;
    for (const auto& [m, c] : f.terms()) {
        const Rational& r = c.coords()[0];
        mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), r.get_den().get_mpz_t());
    }
    out.mono.reserve(f.terms().size());
    out.num.reserve(f.terms().size());
    for (const auto& [m, c] : f.terms()) {
        const Rational& r = c.coords()[0];
        out.mono.push_back(m);
        out.num.push_back(r.get_num() * (out.den / r.get_den()));
    }
    return out;
}

// Accumulates all cross products on a dense exponent grid with mpz_addmul,
// one rational canonicalization per surviving output term. Orders of
// magnitude cheaper than a map insert plus mpq add per term pair once the
// operands carry thousands of terms.
BiPoly grid_multiply(const BiPoly& a, const BiPoly& b) {
    ClearedPoly ca = clear_denominators(a);
    ClearedPoly cb = clear_denominators(b);
    size_t dx = static_cast<size_t>(a.degree_x() + b.degree_x());
    size_t dy = static_cast<size_t>(a.degree_y() + b.degree_y());
    size_t w = dy + 1;
    std::vector<Integer> grid((dx + 1) * w);
    for (size_t i = 0; i < ca.mono.size(); i++) {
        size_t base = ca.mono[i].dx * w + ca.mono[i].dy;
        const Integer& na = ca.num[i];
        for (size_t j = 0; j < cb.mono.size(); j++) {
            size_t at = base + cb.mono[j].dx * w + cb.mono[j].dy;
            mpz_addmul(grid[at].get_mpz_t(), na.get_mpz_t(), cb.num[j].get_mpz_t());
        }
    }
    Integer den = ca.den * cb.den;
    BiPoly p(a.field());
    for (size_t i = 0; i <= dx; i++)
        for (size_t j = 0; j <= dy; j++) {
            Integer& n = grid[i * w + j];
            if (n == 0) continue;
            Rational r(std::move(n), den);
            r.canonicalize();
            p.add_term({static_cast<unsigned>(i), static_cast<unsigned>(j)},
                       FieldElement(a.field(), std::move(r)));
        }
    return p;
}

} // namespace

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    check_same_field(a.field_, b.field_);
    size_t na = a.terms_.size(), nb = b.terms_.size();
    if (na > 0 && nb > 0 && na * nb >= 4096 && a.field_->degree() == 1) {
        size_t cells = static_cast<size_t>(a.degree_x() + b.degree_x() + 1) *
                       static_cast<size_t>(a.degree_y() + b.degree_y() + 1);
        if (cells <= (size_t{1} << 22)) return grid_multiply(a, b);
    }
    BiPoly p(a.field_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            p.add_term({ma.dx + mb.dx, ma.dy + mb.dy}, ca * cb);
    return p;
}

BiPoly BiPoly::operator*(const FieldElement& c) const {
    BiPoly p(field_);
    if (c.is_zero()) return p;
    for (const auto& [m, v] : terms_) p.terms_.emplace(m, v * c);
    return p;
}

BiPoly BiPoly::pow(unsigned e) const {
    BiPoly r = constant(FieldElement::one(field_));
    for (unsigned i = 0; i < e; i++) r = r * *this;
    return r;
}

namespace {

// f(gx, gy) with the powers of gy precomputed: collapse each x-stripe of f
// against the table, then run Horner in gx. Avoids the large cross products
// a per-monomial px[i]*py[j] evaluation would cost.
BiPoly substitute_horner(const BiPoly& f, const BiPoly& gx, const std::vector<BiPoly>& py) {
    const FieldPtr& F = f.field();
    if (f.is_zero()) return BiPoly(F);
    long dx = std::max(f.degree_x(), 0l);
    std::vector<BiPoly> stripe(static_cast<size_t>(dx) + 1, BiPoly(F));
    for (const auto& [m, c] : f.terms()) stripe[m.dx] += py[m.dy] * c;
    BiPoly r = std::move(stripe[dx]);
    for (long i = dx; i-- > 0;) r = r * gx + stripe[i];
    return r;
}

std::vector<BiPoly> power_table(const BiPoly& g, long top) {
    std::vector<BiPoly> py{BiPoly::constant(FieldElement::one(g.field()))};
    for (long j = 0; j < top; j++) py.push_back(py.back() * g);
    return py;
}

} // namespace

BiPoly BiPoly::substitute(const BiPoly& gx, const BiPoly& gy) const {
    check_same_field(field_, gx.field_);
    check_same_field(field_, gy.field_);
    return substitute_horner(*this, gx, power_table(gy, std::max(degree_y(), 0l)));
}

std::pair<BiPoly, BiPoly> substitute_pair(const BiPoly& f1, const BiPoly& f2, const BiPoly& gx,
                                          const BiPoly& gy) {
    check_same_field(f1.field(), f2.field());
    check_same_field(f1.field(), gx.field());
    check_same_field(f1.field(), gy.field());
    std::vector<BiPoly> py =
        power_table(gy, std::max({f1.degree_y(), f2.degree_y(), 0l}));
    return {substitute_horner(f1, gx, py), substitute_horner(f2, gx, py)};
}

FieldElement BiPoly::evaluate(const FieldElement& x, const FieldElement& y) const {
    FieldElement acc = FieldElement::zero(field_);
    for (const auto& [m, c] : terms_) {
        FieldElement v = c;
        for (unsigned i = 0; i < m.dx; i++) v *= x;
        for (unsigned i = 0; i < m.dy; i++) v *= y;
        acc += v;
    }
    return acc;
}

bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.terms_ == b.terms_;
}

int compare(const BiPoly& a, const BiPoly& b) {
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (ia != a.terms().end() && ib != b.terms().end()) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (int c = compare(ia->second, ib->second)) return c;
        ++ia;
        ++ib;
    }
    if (ia != a.terms().end()) return 1;
    if (ib != b.terms().end()) return -1;
    return 0;
}

std::optional<FieldElement> proportional(const BiPoly& f, const BiPoly& g) {
    if (g.is_zero()) throw ZeroInput("proportional: reference polynomial is zero");
    if (f.is_zero()) return std::nullopt;
    const auto& tf = f.terms();
    const auto& tg = g.terms();
    if (tf.size() != tg.size()) return std::nullopt;
    FieldElement c = tf.begin()->second * tg.begin()->second.inverse();
    auto ig = tg.begin();
    for (const auto& [m, v] : tf) {
        if (m != ig->first || v != ig->second * c) return std::nullopt;
        ++ig;
    }
    return c;
}

// ---- printing ----

std::string BiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono;
        if (m.dx == 1) mono = "x";
        else if (m.dx > 1) mono = "x^" + std::to_string(m.dx);
        if (m.dy) {
            if (!mono.empty()) mono += "*";
            mono += m.dy == 1 ? "y" : "y^" + std::to_string(m.dy);
        }
        std::string lit = c.str();
        bool multi = lit.find(" + ") != std::string::npos || lit.find(" - ") != std::string::npos;
        std::string term;
        if (mono.empty()) term = lit;
        else if (c.is_one()) term = mono;
        else if ((-c).is_one()) term = "-" + mono;
        else if (multi) term = "(" + lit + ")*" + mono;
        else term = lit + "*" + mono;
        if (first) {
            out = term;
            first = false;
        } else if (term.front() == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

// ---- parsing ----

namespace {

struct Lexer {
    std::string_view s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
    }
    bool done() {
        skip();
        return pos >= s.size();
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        pos++;
        return true;
    }
    Integer number() {
        skip();
        std::string digits;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            digits += s[pos++];
        if (digits.empty()) throw ParseError("expected a number at position " + std::to_string(pos));
        return Integer(digits);
    }
};

struct PolyParser {
    Lexer lx;
    FieldPtr F;

    BiPoly expr() {
        bool neg = false;
        if (lx.eat('-')) neg = true;
        else lx.eat('+');
        BiPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (lx.eat('+')) acc += term();
            else if (lx.eat('-')) acc -= term();
            else break;
        }
        return acc;
    }

    BiPoly term() {
        BiPoly acc = factor();
        while (true) {
            char c = lx.peek();
            if (c == '*') {
                lx.pos++;
                acc = acc * factor();
            } else if (c == '/') {
                lx.pos++;
                BiPoly d = factor();
                if (!d.is_constant() || d.is_zero())
                    throw ParseError("division only by a nonzero constant");
                acc = acc * d.coeff({0, 0}).inverse();
            } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c)) ||
                       std::isdigit(static_cast<unsigned char>(c))) {
                acc = acc * factor(); // juxtaposition, as in "2x"
            } else {
                break;
            }
        }
        return acc;
    }

    BiPoly factor() {
        BiPoly b = base();
        if (lx.eat('^')) {
            Integer e = lx.number();
            if (e < 0 || e > 4096) throw ParseError("exponent out of range");
            b = b.pow(static_cast<unsigned>(e.get_ui()));
        }
        return b;
    }

    BiPoly base() {
        char c = lx.peek();
        if (c == '(') {
            lx.pos++;
            BiPoly inner = expr();
            if (!lx.eat(')')) throw ParseError("missing ')'");
            return inner;
        }
        if (c == 'x') {
            lx.pos++;
            return BiPoly::var_x(F);
        }
        if (c == 'y') {
            lx.pos++;
            return BiPoly::var_y(F);
        }
        if (c == 't') {
            lx.pos++;
            return BiPoly::constant(FieldElement::generator(F));
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return BiPoly::constant(FieldElement(F, Rational(lx.number())));
        throw ParseError(std::string("unexpected character '") + c + "' in polynomial");
    }
};

} // namespace

BiPoly parse_bipoly(const FieldPtr& field, std::string_view text) {
    PolyParser p{Lexer{text, 0}, field};
    if (p.lx.done()) throw ParseError("empty polynomial");
    BiPoly r = p.expr();
    if (!p.lx.done())
        throw ParseError("trailing input in polynomial at position " + std::to_string(p.lx.pos));
    return r;
}

// ---- univariate bridging ----

std::optional<UniPoly> poly_in_y(const BiPoly& f) {
    if (f.degree_x() > 0) return std::nullopt;
    UniPoly u(static_cast<size_t>(f.degree_y() + 1), FieldElement::zero(f.field()));
    for (const auto& [m, c] : f.terms()) u[m.dy] = c;
    return u;
}

BiPoly unipoly_in(const FieldPtr& field, const UniPoly& u, bool in_y) {
    BiPoly p(field);
    for (size_t i = 0; i < u.size(); i++) {
        unsigned d = static_cast<unsigned>(i);
        p.add_term(in_y ? Mono{0, d} : Mono{d, 0}, u[i]);
    }
    return p;
}

// ---- exact linear solving over the coefficient field ----

std::optional<std::vector<FieldElement>>
solve_linear_coeffs(const BiPoly& target, const std::vector<BiPoly>& span) {
    const FieldPtr& F = target.field();
    std::vector<Mono> monos;
    auto note = [&](const BiPoly& p) {
        for (const auto& [m, c] : p.terms()) monos.push_back(m);
    };
    note(target);
    for (const BiPoly& p : span) note(p);
    std::sort(monos.begin(), monos.end());
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());

    size_t rows = monos.size(), cols = span.size();
    std::vector<std::vector<FieldElement>> M(rows);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) M[r].push_back(span[c].coeff(monos[r]));
        M[r].push_back(target.coeff(monos[r]));
    }

    std::vector<long> pivot_of_col(cols, -1);
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; c++) {
        size_t sel = rank;
        while (sel < rows && M[sel][c].is_zero()) sel++;
        if (sel == rows) continue;
        std::swap(M[rank], M[sel]);
        FieldElement inv = M[rank][c].inverse();
        for (auto& v : M[rank]) v *= inv;
        for (size_t r = 0; r < rows; r++) {
            if (r == rank || M[r][c].is_zero()) continue;
            FieldElement f = M[r][c];
            for (size_t k = 0; k <= cols; k++) M[r][k] -= M[rank][k] * f;
        }
        pivot_of_col[c] = static_cast<long>(rank);
        rank++;
    }
    for (size_t r = rank; r < rows; r++)
        if (!M[r][cols].is_zero()) return std::nullopt;

    std::vector<FieldElement> sol(cols, FieldElement::zero(F));
    for (size_t c = 0; c < cols; c++)
        if (pivot_of_col[c] >= 0) sol[c] = M[static_cast<size_t>(pivot_of_col[c])][cols];
    return sol;
}

std::vector<std::vector<FieldElement>> linear_relations(const std::vector<BiPoly>& polys) {
    if (polys.empty()) return {};
    const FieldPtr& F = polys[0].field();
    std::vector<Mono> monos;
    for (const BiPoly& p : polys)
        for (const auto& [m, c] : p.terms()) monos.push_back(m);
    std::sort(monos.begin(), monos.end());
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());

    size_t rows = monos.size(), cols = polys.size();
    std::vector<std::vector<FieldElement>> M(rows);
    for (size_t r = 0; r < rows; r++)
        for (size_t c = 0; c < cols; c++) M[r].push_back(polys[c].coeff(monos[r]));

    std::vector<long> pivot_of_col(cols, -1);
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; c++) {
        size_t sel = rank;
        while (sel < rows && M[sel][c].is_zero()) sel++;
        if (sel == rows) continue;
        std::swap(M[rank], M[sel]);
        FieldElement inv = M[rank][c].inverse();
        for (auto& v : M[rank]) v *= inv;
        for (size_t r = 0; r < rows; r++) {
            if (r == rank || M[r][c].is_zero()) continue;
            FieldElement f = M[r][c];
            for (size_t k = 0; k < cols; k++) M[r][k] -= M[rank][k] * f;
        }
        pivot_of_col[c] = static_cast<long>(rank);
        rank++;
    }

    std::vector<std::vector<FieldElement>> basis;
    for (size_t free = 0; free < cols; free++) {
        if (pivot_of_col[free] >= 0) continue;
        std::vector<FieldElement> v(cols, FieldElement::zero(F));
        v[free] = FieldElement::one(F);
        for (size_t c = 0; c < cols; c++)
            if (pivot_of_col[c] >= 0)
                v[c] = -M[static_cast<size_t>(pivot_of_col[c])][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

BiPoly monic(const BiPoly& f) {
    if (f.is_zero()) throw ZeroInput("cannot normalize the zero polynomial");
    return f * f.terms().rbegin()->second.inverse();
}

} // namespace ozc
