#include "ozc/rational.hpp"

#include "ozc/errors.hpp"

#include <cctype>

namespace ozc {

Rational parse_rational(std::string_view text) {
    size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) b++;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) e--;
    std::string s(text.substr(b, e - b));
    if (s.empty()) throw ParseError("empty rational literal");
    auto digits_ok = [](const std::string& t, size_t from) {
        if (from >= t.size()) return false;
        for (size_t i = from; i < t.size(); i++)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto parse_int = [&](const std::string& t) -> Integer {
        size_t from = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (!digits_ok(t, from)) throw ParseError("bad integer literal '" + t + "'");
        return Integer(t);
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    Integer num = parse_int(s.substr(0, slash));
    std::string dtxt = s.substr(slash + 1);
    if (dtxt.empty() || dtxt[0] == '-' || dtxt[0] == '+')
        throw ParseError("denominator must be a plain positive integer in '" + s + "'");
    Integer den = parse_int(dtxt);
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_pow(const Rational& r, long e) {
    if (e == 0) return Rational(1);
    if (r == 0) {
        if (e < 0) throw ZeroDivision("0 raised to a negative power");
        return Rational(0);
    }
    Rational base = r;
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    Rational acc(1);
    while (k) {
        if (k & 1ul) acc *= base;
        base *= base;
        k >>= 1;
    }
    if (neg) acc = Rational(1) / acc;
    return acc;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rational(0);
    Integer num = r.get_num(), den = r.get_den();
    Integer sn, sd;
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational root(sn, sd);
    root.canonicalize();
    return root;
}

std::optional<Integer> smallest_prime_factor(const Integer& n) {
    Integer m = abs(n);
    if (m <= 1) return std::nullopt;
    static const unsigned long kTrialLimit = 1ul << 20;
    if (mpz_divisible_ui_p(m.get_mpz_t(), 2)) return Integer(2);
    for (unsigned long p = 3; p <= kTrialLimit; p += 2) {
        if (Integer(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return Integer(p);
    }
    // No small factor: m itself is prime, or a hard composite we refuse to split.
    if (mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) return m;
    if (m <= Integer(kTrialLimit) * kTrialLimit) return m; // fully trial-divided: prime
    return std::nullopt;
}

long valuation(Integer n, const Integer& p) {
    if (n == 0) throw ZeroInput("valuation of zero");
    long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        v++;
    }
    return v;
}

std::optional<std::pair<Integer, Integer>> squarefree_decomposition(const Integer& n) {
    if (n == 0) return std::nullopt;
    Integer m = abs(n), s = 1, d = 1;
    while (m > 1) {
        auto p = smallest_prime_factor(m);
        if (!p) return std::nullopt;
        long v = valuation(m, *p);
        for (long i = 0; i < v / 2; i++) s *= *p;
        if (v % 2) d *= *p;
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p->get_mpz_t(), static_cast<unsigned long>(v));
        m /= pk;
    }
    if (n < 0) d = -d;
    return std::make_pair(s, d);
}

unsigned long euler_phi(unsigned long k) {
    unsigned long result = k;
    for (unsigned long p = 2; p * p <= k; p++) {
        if (k % p == 0) {
            while (k % p == 0) k /= p;
            result -= result / p;
        }
    }
    if (k > 1) result -= result / k;
    return result;
}

} // namespace ozc
