#include "ozc/numfield.hpp"

#include "ozc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace ozc {

namespace {

// ---- dense univariate arithmetic over Q, ascending coefficients ----

using QPoly = std::vector<Rational>;

int qp_degree(const QPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; i--)
        if (p[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

void qp_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); i++) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
    }
    qp_trim(r);
    return r;
}

// Division with remainder; den must be nonzero.
std::pair<QPoly, QPoly> qp_divmod(QPoly num, const QPoly& den) {
    int dd = qp_degree(den);
    if (dd < 0) throw ZeroDivision("polynomial division by zero");
    QPoly quot;
    int dn = qp_degree(num);
    if (dn >= dd) quot.assign(static_cast<size_t>(dn - dd + 1), Rational(0));
    const Rational& lead = den[static_cast<size_t>(dd)];
    while ((dn = qp_degree(num)) >= dd) {
        Rational c = num[static_cast<size_t>(dn)] / lead;
        quot[static_cast<size_t>(dn - dd)] = c;
        for (int i = 0; i <= dd; i++)
            num[static_cast<size_t>(dn - dd + i)] -= c * den[static_cast<size_t>(i)];
    }
    qp_trim(num);
    qp_trim(quot);
    return {quot, num};
}

QPoly qp_exact_div(const QPoly& num, const QPoly& den) {
    auto [q, r] = qp_divmod(num, den);
    if (!r.empty()) throw InternalVerificationFailure("expected exact polynomial division");
    return q;
}

// ---- modulus sanity filter ----

std::optional<std::vector<Integer>> divisors_of(const Integer& n, size_t cap) {
    std::vector<Integer> divs{Integer(1)};
    Integer m = abs(n);
    while (m > 1) {
        auto p = smallest_prime_factor(m);
        if (!p) return std::nullopt;
        long v = valuation(m, *p);
        size_t base = divs.size();
        Integer pk(1);
        for (long e = 1; e <= v; e++) {
            pk *= *p;
            for (size_t i = 0; i < base; i++) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > cap) return std::nullopt;
            }
        }
        Integer whole;
        mpz_pow_ui(whole.get_mpz_t(), p->get_mpz_t(), static_cast<unsigned long>(v));
        m /= whole;
    }
    return divs;
}

// Rational-root test on a monic modulus with rational coefficients. Complete
// irreducibility certificate for degree <= 3; for higher degree it is only a
// filter, and deeper reducibility is certified lazily by inversions.
void reject_rational_roots(const std::vector<Rational>& modulus) {
    Integer denlcm(1);
    for (const Rational& c : modulus) mpz_lcm(denlcm.get_mpz_t(), denlcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> z;
    z.reserve(modulus.size());
    for (const Rational& c : modulus) {
        Rational scaled = c * Rational(denlcm);
        z.push_back(scaled.get_num());
    }
    if (z.front() == 0) throw ReducibleModulus("modulus has root 0");
    auto num_divs = divisors_of(z.front(), 4096);
    auto den_divs = divisors_of(z.back(), 4096);
    if (!num_divs || !den_divs) return; // constant term too hard to factor; skip
    for (const Integer& p : *num_divs) {
        for (const Integer& q : *den_divs) {
            for (int sign = 0; sign < 2; sign++) {
                Rational root(sign ? -p : p, q);
                root.canonicalize();
                Rational value(0), power(1);
                for (const Rational& c : modulus) {
                    value += c * power;
                    power *= root;
                }
                if (value == 0)
                    throw ReducibleModulus("modulus has rational root " + rational_to_string(root));
            }
        }
    }
}

} // namespace

// ---- NumberField ----

FieldPtr NumberField::finish(NumberField f) {
    f.degree_ = static_cast<unsigned>(f.modulus_.size() - 1);
    // t^d = -(m_0 + m_1 t + ... + m_{d-1} t^{d-1}); extend the table through
    // t^(2d-2), which covers every product of two reduced elements.
    unsigned d = f.degree_;
    std::vector<Rational> cur(d, Rational(0));
    for (unsigned i = 0; i < d; i++) cur[i] = -f.modulus_[i];
    f.powers_.clear();
    unsigned entries = d >= 2 ? d - 1 : 1;
    for (unsigned k = 0; k < entries; k++) {
        f.powers_.push_back(cur);
        if (k + 1 == entries) break;
        // multiply by t and fold the overflow through t^d
        std::vector<Rational> next(d, Rational(0));
        Rational top = cur[d - 1];
        for (unsigned i = d - 1; i >= 1; i--) next[i] = cur[i - 1];
        if (top != 0)
            for (unsigned i = 0; i < d; i++) next[i] += top * f.powers_[0][i];
        cur = std::move(next);
    }
    return std::make_shared<const NumberField>(std::move(f));
}

FieldPtr NumberField::rationals() {
    NumberField f;
    f.mode_ = Mode::Rationals;
    f.modulus_ = {Rational(0), Rational(1)}; // t
    return finish(std::move(f));
}

FieldPtr NumberField::cyclotomic(unsigned long n) {
    if (n == 0) throw ParseError("cyclotomic order must be positive");
    NumberField f;
    f.mode_ = Mode::Cyclotomic;
    f.cyclo_n_ = n;
    f.modulus_ = cyclotomic_polynomial(n);
    return finish(std::move(f));
}

FieldPtr NumberField::custom(std::vector<Rational> modulus, bool trusted) {
    while (modulus.size() > 1 && modulus.back() == 0) modulus.pop_back();
    if (modulus.size() < 2) throw ParseError("modulus must have degree >= 1");
    if (modulus.back() != 1) throw ParseError("modulus must be monic");
    if (!trusted && modulus.size() > 2) reject_rational_roots(modulus);
    NumberField f;
    f.mode_ = Mode::Custom;
    f.modulus_ = std::move(modulus);
    return finish(std::move(f));
}

bool NumberField::same(const NumberField& other) const {
    return modulus_ == other.modulus_;
}

std::string NumberField::describe() const {
    switch (mode_) {
        case Mode::Rationals: return "Q";
        case Mode::Cyclotomic: return "Q(zeta_" + std::to_string(cyclo_n_) + ")";
        case Mode::Custom: {
            std::ostringstream os;
            os << "Q[t]/(";
            bool first = true;
            for (int i = static_cast<int>(modulus_.size()) - 1; i >= 0; i--) {
                const Rational& c = modulus_[static_cast<size_t>(i)];
                if (c == 0) continue;
                if (!first) os << (c > 0 ? " + " : " - ");
                else if (c < 0) os << "-";
                first = false;
                Rational a = abs(c);
                if (i == 0) os << rational_to_string(a);
                else {
                    if (a != 1) os << rational_to_string(a) << "*";
                    os << "t";
                    if (i > 1) os << "^" << i;
                }
            }
            os << ")";
            return os.str();
        }
    }
    return "?";
}

std::vector<Rational> cyclotomic_polynomial(unsigned long n) {
    // x^n - 1 divided by the cyclotomic polynomials of the proper divisors.
    QPoly num(n + 1, Rational(0));
    num[0] = Rational(-1);
    num[n] = Rational(1);
    for (unsigned long d = 1; d < n; d++) {
        if (n % d != 0) continue;
        num = qp_exact_div(num, cyclotomic_polynomial(d));
    }
    return num;
}

// ---- FieldElement ----

FieldElement::FieldElement(FieldPtr field, Rational value) : field_(std::move(field)) {
    c_.assign(field_->degree(), Rational(0));
    c_[0] = std::move(value);
}

FieldElement FieldElement::zero(const FieldPtr& field) { return FieldElement(field, Rational(0)); }
FieldElement FieldElement::one(const FieldPtr& field) { return FieldElement(field, Rational(1)); }

FieldElement FieldElement::generator(const FieldPtr& field) {
    if (field->degree() == 1) return FieldElement(field, -field->modulus()[0]);
    std::vector<Rational> c(field->degree(), Rational(0));
    c[1] = Rational(1);
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::from_coords(FieldPtr field, std::vector<Rational> coords) {
    if (coords.size() != field->degree()) throw ParseError("coordinate vector has wrong length");
    return FieldElement(std::move(field), std::move(coords));
}

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool FieldElement::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); i++)
        if (c_[i] != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < c_.size(); i++)
        if (c_[i] != 0) return false;
    return true;
}

Rational FieldElement::rational_value() const {
    if (!is_rational()) throw InternalVerificationFailure("element is not rational");
    return c_[0];
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (Rational& x : r.c_) x = -x;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same_field(*this, o);
    for (size_t i = 0; i < c_.size(); i++) c_[i] += o.c_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same_field(*this, o);
    for (size_t i = 0; i < c_.size(); i++) c_[i] -= o.c_[i];
    return *this;
}

void FieldElement::reduce(std::vector<Rational>& full) const {
    unsigned d = field_->degree();
    const auto& table = field_->power_table();
    for (size_t k = full.size(); k-- > d;) {
        Rational top = std::move(full[k]);
        full[k] = Rational(0);
        if (top == 0) continue;
        const auto& row = table[k - d]; // coordinates of t^k
        for (unsigned i = 0; i < d; i++) full[i] += top * row[i];
    }
    full.resize(d);
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same_field(*this, o);
    unsigned d = field_->degree();
    std::vector<Rational> full(2 * d - 1, Rational(0));
    for (unsigned i = 0; i < d; i++) {
        if (c_[i] == 0) continue;
        for (unsigned j = 0; j < d; j++) {
            if (o.c_[j] == 0) continue;
            full[i + j] += c_[i] * o.c_[j];
        }
    }
    reduce(full);
    c_ = std::move(full);
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw ZeroDivision("inverse of zero");
    if (is_rational()) return FieldElement(field_, Rational(1) / c_[0]);
    // Extended Euclid in Q[t] against the modulus.
    QPoly r0 = field_->modulus(), r1(c_.begin(), c_.end());
    qp_trim(r1);
    QPoly s0 = {}, s1 = {Rational(1)}; // coefficients of the element argument
    while (qp_degree(r1) > 0) {
        auto [q, r2] = qp_divmod(r0, r1);
        QPoly qs1 = qp_mul(q, s1);
        QPoly s2 = s0;
        if (s2.size() < qs1.size()) s2.resize(qs1.size(), Rational(0));
        for (size_t i = 0; i < qs1.size(); i++) s2[i] -= qs1[i];
        qp_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (qp_degree(r1) < 0) {
        // gcd(element, modulus) nonconstant: the element is a zero divisor.
        if (field_->mode() == NumberField::Mode::Custom)
            throw ReducibleModulus("inversion certified the modulus reducible");
        throw InternalVerificationFailure("zero divisor over an irreducible modulus");
    }
    const Rational& unit = r1[0];
    std::vector<Rational> inv(field_->degree(), Rational(0));
    for (size_t i = 0; i < s1.size() && i < inv.size(); i++) inv[i] = s1[i] / unit;
    if (s1.size() > inv.size()) throw InternalVerificationFailure("inverse exceeds field degree");
    FieldElement result(field_, std::move(inv));
    FieldElement check = result;
    check *= *this;
    if (!check.is_one()) throw InternalVerificationFailure("inverse failed verification");
    return result;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    check_same_field(*this, o);
    return *this *= o.inverse();
}

FieldElement FieldElement::pow(long e) const {
    if (e == 0) return one(field_);
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    FieldElement acc = one(field_);
    while (k) {
        if (k & 1ul) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    return a.c_ == b.c_;
}

std::string FieldElement::str() const {
    if (is_rational()) return rational_to_string(c_[0]);
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; i--) {
        const Rational& a = c_[static_cast<size_t>(i)];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        first = false;
        Rational v = abs(a);
        if (i == 0) os << rational_to_string(v);
        else {
            if (v != 1) os << rational_to_string(v) << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) return "0";
    return os.str();
}

int compare(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    for (size_t i = 0; i < a.coords().size(); i++) {
        int c = cmp(a.coords()[i], b.coords()[i]);
        if (c != 0) return c;
    }
    return 0;
}

void check_same_field(const FieldElement& a, const FieldElement& b) {
    check_same_field(a.field(), b.field());
}

void check_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return;
    if (a && b && a->same(*b)) return;
    throw FieldMismatch("operands belong to different fields");
}

// ---- field element parsing ----

namespace {

struct FETokenizer {
    std::string_view s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) i++;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return s[i];
    }
};

// term := rational ['*' tpow] | tpow ; tpow := 't' ['^' nat]
// element := ['-'] term (('+'|'-') term)*
FieldElement parse_fe(const FieldPtr& field, std::string_view text) {
    FETokenizer tk{text};
    FieldElement acc = FieldElement::zero(field);
    bool expect_term = true;
    int sign = 1;
    if (!tk.eof() && (tk.peek() == '-' || tk.peek() == '+')) {
        sign = tk.peek() == '-' ? -1 : 1;
        tk.i++;
    }
    while (true) {
        if (tk.eof()) {
            if (expect_term) throw ParseError("dangling sign in field literal");
            break;
        }
        if (!expect_term) {
            char c = tk.peek();
            if (c == '+' || c == '-') {
                sign = c == '-' ? -1 : 1;
                tk.i++;
                expect_term = true;
                continue;
            }
            throw ParseError(std::string("unexpected character '") + c + "' in field literal");
        }
        // one term
        Rational coeff(1);
        bool saw_coeff = false;
        char c = tk.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = tk.i;
            while (tk.i < tk.s.size() &&
                   (std::isdigit(static_cast<unsigned char>(tk.s[tk.i])) || tk.s[tk.i] == '/'))
                tk.i++;
            coeff = parse_rational(tk.s.substr(start, tk.i - start));
            saw_coeff = true;
            if (!tk.eof() && tk.peek() == '*') tk.i++;
        }
        long tdeg = 0;
        if (!tk.eof() && tk.peek() == 't') {
            tk.i++;
            tdeg = 1;
            if (!tk.eof() && tk.peek() == '^') {
                tk.i++;
                tk.skip_ws();
                size_t start = tk.i;
                while (tk.i < tk.s.size() && std::isdigit(static_cast<unsigned char>(tk.s[tk.i]))) tk.i++;
                if (start == tk.i) throw ParseError("missing exponent after '^'");
                tdeg = std::stol(std::string(tk.s.substr(start, tk.i - start)));
            }
        } else if (!saw_coeff) {
            throw ParseError("expected term in field literal");
        }
        FieldElement term = FieldElement(field, sign < 0 ? -coeff : coeff);
        if (tdeg > 0) term *= FieldElement::generator(field).pow(tdeg);
        acc += term;
        expect_term = false;
    }
    return acc;
}

} // namespace

FieldElement parse_field_element(const FieldPtr& field, std::string_view text) {
    return parse_fe(field, text);
}

// ---- root of unity order ----

std::optional<unsigned long> root_of_unity_order(const FieldElement& u) {
    if (u.is_zero()) throw ZeroInput("root_of_unity_order of zero");
    if (u.is_rational()) {
        Rational r = u.rational_value();
        if (r == 1) return 1;
        if (r == -1) return 2;
        return std::nullopt;
    }
    unsigned long d = u.field()->degree();
    // phi(k) >= sqrt(k/2), so phi(k) <= d forces k <= 2 d^2; scan with margin.
    unsigned long limit = 2 * d * d + 6;
    FieldElement p = u;
    for (unsigned long k = 1; k <= limit; k++) {
        if (euler_phi(k) <= d && p.is_one()) return k;
        p *= u;
    }
    return std::nullopt;
}

// ---- norm via Sylvester determinant ----

Rational field_norm(const FieldElement& a) {
    if (a.is_rational()) return rational_pow(a.rational_value(), a.field()->degree());
    QPoly f = a.field()->modulus();
    QPoly g(a.coords().begin(), a.coords().end());
    qp_trim(g);
    int m = qp_degree(f), n = qp_degree(g);
    size_t size = static_cast<size_t>(m + n);
    std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, Rational(0)));
    for (int row = 0; row < n; row++)
        for (int k = 0; k <= m; k++) s[static_cast<size_t>(row)][static_cast<size_t>(row + k)] = f[static_cast<size_t>(m - k)];
    for (int row = 0; row < m; row++)
        for (int k = 0; k <= n; k++) s[static_cast<size_t>(n + row)][static_cast<size_t>(row + k)] = g[static_cast<size_t>(n - k)];
    // exact Gaussian elimination
    Rational det(1);
    for (size_t col = 0; col < size; col++) {
        size_t piv = col;
        while (piv < size && s[piv][col] == 0) piv++;
        if (piv == size) return Rational(0);
        if (piv != col) {
            std::swap(s[piv], s[col]);
            det = -det;
        }
        det *= s[col][col];
        Rational inv = Rational(1) / s[col][col];
        for (size_t r = col + 1; r < size; r++) {
            if (s[r][col] == 0) continue;
            Rational factor = s[r][col] * inv;
            for (size_t k2 = col; k2 < size; k2++) s[r][k2] -= factor * s[col][k2];
        }
    }
    // Res(f, g) with f monic: the determinant as built equals the resultant up
    // to the sign introduced by row ordering, which is +1 for this layout.
    return det;
}

// ---- square roots ----

namespace {

// Jacobi-symbol-free Legendre for odd prime p and 1 <= a < p.
int legendre(unsigned long a, unsigned long p) {
    unsigned long r = 1, base = a % p, e = (p - 1) / 2;
    while (e) {
        if (e & 1ul) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == 1 ? 1 : (r == p - 1 ? -1 : 0);
}

// sqrt of the squarefree integer d inside Q(zeta_n), when the classical
// generators allow it; verified by squaring before use.
std::optional<FieldElement> cyclotomic_sqrt_of_squarefree(const FieldPtr& F, const Integer& d) {
    unsigned long n = F->cyclotomic_order();
    if (d == 1) return FieldElement::one(F);
    FieldElement t = FieldElement::generator(F);
    auto zeta = [&](unsigned long k) { // primitive k-th root, needs k | n
        return t.pow(static_cast<long>(n / k));
    };
    FieldElement acc = FieldElement::one(F);
    Integer target = 1; // what acc^2 currently equals, as a signed integer
    Integer m = abs(d);
    while (m > 1) {
        auto p = smallest_prime_factor(m);
        if (!p) return std::nullopt;
        if (*p == 2) {
            if (n % 8 != 0) return std::nullopt;
            FieldElement z8 = zeta(8);
            acc *= z8 + z8.inverse(); // squares to 2
            target *= 2;
        } else {
            unsigned long pl = p->get_ui();
            if (n % pl != 0) return std::nullopt;
            FieldElement zp = zeta(pl);
            FieldElement gauss = FieldElement::zero(F);
            for (unsigned long a2 = 1; a2 < pl; a2++) {
                FieldElement term = zp.pow(static_cast<long>(a2));
                if (legendre(a2, pl) < 0) term = -term;
                gauss += term;
            }
            acc *= gauss; // squares to p* = (-1)^((p-1)/2) p
            target *= (pl % 4 == 1) ? *p : -*p;
        }
        m /= *p;
    }
    if (target != d) {
        // off by the sign: multiply by i when available
        if (target == -d) {
            if (n % 4 != 0) return std::nullopt;
            acc *= zeta(4);
        } else {
            return std::nullopt;
        }
    }
    FieldElement sq = acc;
    sq *= acc;
    if (!(sq == FieldElement(F, Rational(d)))) throw InternalVerificationFailure("Gauss sum square mismatch");
    return acc;
}

} // namespace

std::optional<FieldElement> field_sqrt(const FieldElement& a) {
    const FieldPtr& F = a.field();
    if (a.is_zero()) return FieldElement::zero(F);
    if (a.is_rational()) {
        Rational r = a.rational_value();
        if (auto root = rational_sqrt(r)) return FieldElement(F, *root);
        if (F->mode() != NumberField::Mode::Cyclotomic) return std::nullopt;
        // r = (s/den)^2 * d with d squarefree; build sqrt(d) from Gauss sums.
        Integer M = r.get_num() * r.get_den();
        auto decomp = squarefree_decomposition(M);
        if (!decomp) return std::nullopt;
        auto [s, d] = *decomp;
        auto root_d = cyclotomic_sqrt_of_squarefree(F, d);
        if (!root_d) return std::nullopt;
        FieldElement result = *root_d;
        result *= FieldElement(F, Rational(s, r.get_den()));
        FieldElement check = result;
        check *= result;
        if (!(check == a)) throw InternalVerificationFailure("field_sqrt verification failed");
        return result;
    }
    return std::nullopt;
}

// ---- multiplicative dependence ----

namespace {

// Least pair r1 >= 1, r2 != 0 with x^r1 = y^r2 for rationals x, y outside
// {0, 1, -1}; nullopt for provable independence, and nullopt overall failure
// is impossible except when factoring breaks (signalled by the bool).
std::pair<std::optional<std::pair<long, long>>, bool> rational_dependence(const Rational& x,
                                                                          const Rational& y) {
    Integer mixed = x.get_num() * x.get_den();
    auto p = smallest_prime_factor(mixed);
    if (!p) return {std::nullopt, false};
    long e = valuation(x.get_num(), *p) - valuation(x.get_den(), *p);
    long f = (y.get_num() == 0 ? 0 : valuation(y.get_num(), *p)) - valuation(y.get_den(), *p);
    if (e == 0) return {std::nullopt, false}; // factor did not touch x: cannot happen
    if (f == 0) return {std::nullopt, true};
    long g = std::gcd(std::abs(e), std::abs(f));
    long r1 = std::abs(f) / g;
    long r2 = (e / g) * (f > 0 ? 1 : -1);
    if (r1 * e != r2 * f) throw InternalVerificationFailure("valuation solve failed");
    Rational w = rational_pow(x, r1) / rational_pow(y, r2);
    if (w == 1) return {std::make_pair(r1, r2), true};
    if (w == -1) return {std::make_pair(2 * r1, 2 * r2), true};
    return {std::nullopt, true};
}

} // namespace

DependenceResult multiplicative_dependence(const FieldElement& a, const FieldElement& b,
                                           unsigned long bound) {
    if (a.is_zero() || b.is_zero()) throw ZeroInput("multiplicative_dependence of zero");
    if (root_of_unity_order(a) || root_of_unity_order(b))
        throw RootOfUnityInput("multiplicative_dependence of a root of unity");

    auto bounded_fallback = [&]() -> DependenceResult {
        std::vector<FieldElement> bpow; // b^1 .. b^bound
        FieldElement cur = b;
        for (unsigned long k = 1; k <= bound; k++) {
            bpow.push_back(cur);
            cur *= b;
        }
        std::vector<FieldElement> bneg; // b^-1 .. b^-bound
        FieldElement binv = b.inverse();
        cur = binv;
        for (unsigned long k = 1; k <= bound; k++) {
            bneg.push_back(cur);
            cur *= binv;
        }
        FieldElement apow = a;
        for (unsigned long r1 = 1; r1 <= bound; r1++) {
            for (unsigned long r2 = 1; r2 <= bound; r2++) {
                if (apow == bpow[r2 - 1])
                    return {std::make_pair(static_cast<long>(r1), static_cast<long>(r2)), true};
                if (apow == bneg[r2 - 1])
                    return {std::make_pair(static_cast<long>(r1), -static_cast<long>(r2)), true};
            }
            apow *= a;
        }
        return {std::nullopt, false};
    };

    if (a.is_rational() && b.is_rational()) {
        auto [rel, ok] = rational_dependence(a.rational_value(), b.rational_value());
        if (ok) return {rel, true};
        return bounded_fallback();
    }

    Rational na = field_norm(a), nb = field_norm(b);
    if (na == 0 || nb == 0) throw ReducibleModulus("zero norm of a nonzero element");
    bool ua = abs(na) == 1, ub = abs(nb) == 1;
    if (ua != ub) return {std::nullopt, true}; // norm obstruction is decisive
    if (!ua) {
        auto [rel, ok] = rational_dependence(na, nb);
        if (!ok) return bounded_fallback();
        if (!rel) return {std::nullopt, true};
        auto [p1, p2] = *rel;
        // Any relation descends to the norm lattice Z*(p1, p2); the cofactor
        // w = a^p1 b^-p2 has norm +-1 and a relation exists iff w is torsion.
        FieldElement w = a.pow(p1) * b.pow(-p2);
        if (auto ord = root_of_unity_order(w)) {
            long m = static_cast<long>(*ord);
            return {std::make_pair(m * p1, m * p2), true};
        }
        return {std::nullopt, true};
    }
    return bounded_fallback();
}

} // namespace ozc
