#include "ozc/amalgam.hpp"
#include "ozc/errors.hpp"

#include <algorithm>

namespace ozc {

// ---- letters ----

Letter Letter::shear(const FieldElement& a) {
    if (a.is_zero()) throw InternalVerificationFailure("shear letter with zero coefficient");
    return Letter{Kind::Shear, a, {}};
}

Letter Letter::swap(const FieldPtr& field) {
    return Letter{Kind::Swap, FieldElement::zero(field), {}};
}

Letter Letter::jonq(UniPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    if (p.size() < 3 || !p[0].is_zero() || !p[1].is_zero())
        throw InternalVerificationFailure(
            "triangular letter needs degree >= 2 and no constant or linear part");
    FieldElement marker = FieldElement::zero(p[0].field());
    return Letter{Kind::Jonq, std::move(marker), std::move(p)};
}

long Letter::degree() const {
    return kind == Kind::Jonq ? static_cast<long>(p.size()) - 1 : 1;
}

PlaneAutomorphism Letter::to_map(const FieldPtr& field) const {
    BiPoly x = BiPoly::var_x(field), y = BiPoly::var_y(field);
    switch (kind) {
    case Kind::Shear: return PlaneAutomorphism(x, x * a + y);
    case Kind::Swap: return PlaneAutomorphism(y, x);
    case Kind::Jonq: return PlaneAutomorphism(x + unipoly_in(field, p, true), y);
    }
    throw InternalVerificationFailure("unreachable letter kind");
}

PlaneAutomorphism Letter::inverse_map(const FieldPtr& field) const {
    BiPoly x = BiPoly::var_x(field), y = BiPoly::var_y(field);
    switch (kind) {
    case Kind::Shear: return PlaneAutomorphism(x, y - x * a);
    case Kind::Swap: return PlaneAutomorphism(y, x);
    case Kind::Jonq: return PlaneAutomorphism(x - unipoly_in(field, p, true), y);
    }
    throw InternalVerificationFailure("unreachable letter kind");
}

bool operator==(const Letter& a, const Letter& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Letter::Kind::Shear) return a.a == b.a;
    if (a.kind == Letter::Kind::Jonq) return a.p == b.p;
    return true;
}

// ---- words ----

AmalgamWord::AmalgamWord(PlaneAutomorphism head, std::vector<Letter> letters)
    : head_(std::move(head)), letters_(std::move(letters)) {
    if (!head_.is_affine() || !head_.is_triangular())
        throw InternalVerificationFailure("word head must be upper-triangular affine");
    for (size_t i = 0; i + 1 < letters_.size(); i++)
        if (letters_[i].is_affine_type() == letters_[i + 1].is_affine_type())
            throw InternalVerificationFailure("letter types must alternate");
}

PlaneAutomorphism AmalgamWord::realize() const {
    const FieldPtr& F = head_.field();
    PlaneAutomorphism acc = PlaneAutomorphism::identity(F);
    for (size_t i = letters_.size(); i-- > 0;) acc = compose(letters_[i].to_map(F), acc);
    return compose(head_, acc);
}

std::pair<long, long> AmalgamWord::expected_bidegree() const {
    long all = 1;
    long first_jonq = 0;
    for (const Letter& l : letters_) {
        if (l.kind != Letter::Kind::Jonq) continue;
        all *= l.degree();
        if (!first_jonq) first_jonq = l.degree();
    }
    if (!first_jonq) return {1, 1};
    long rest = all / first_jonq;
    switch (letters_.front().kind) {
    case Letter::Kind::Jonq: return {all, rest};
    case Letter::Kind::Shear: return {all, all};
    case Letter::Kind::Swap: return {rest, all};
    }
    throw InternalVerificationFailure("unreachable letter kind");
}

bool operator==(const AmalgamWord& a, const AmalgamWord& b) {
    return a.head_ == b.head_ && a.letters_ == b.letters_;
}

std::string AmalgamWord::str() const {
    std::string s = head_.str();
    for (const Letter& l : letters_) {
        s += " * ";
        switch (l.kind) {
        case Letter::Kind::Shear: s += "shear(" + l.a.str() + ")"; break;
        case Letter::Kind::Swap: s += "swap"; break;
        case Letter::Kind::Jonq:
            s += "step(" + unipoly_in(head_.field(), l.p, true).str() + ")";
            break;
        }
    }
    return s;
}

// ---- factorization ----

namespace {

// affine map written as triangular part times an optional coset letter
std::pair<PlaneAutomorphism, std::optional<Letter>> split_affine(const BiPoly& f,
                                                                 const BiPoly& g) {
    const FieldPtr& F = f.field();
    FieldElement a21 = g.coeff({1, 0}), a22 = g.coeff({0, 1});
    PlaneAutomorphism whole(f, g);
    if (!a22.is_zero()) {
        FieldElement a = a21 * a22.inverse();
        if (a.is_zero()) return {whole, std::nullopt};
        Letter k = Letter::shear(a);
        return {compose(whole, k.inverse_map(F)), k};
    }
    Letter k = Letter::swap(F);
    return {compose(whole, k.inverse_map(F)), k};
}

// rewrite letter * head as head' * letter' without leaving the letter's factor
std::pair<PlaneAutomorphism, Letter> push_left(const Letter& lam,
                                               const PlaneAutomorphism& head) {
    const FieldPtr& F = head.field();
    if (lam.kind == Letter::Kind::Jonq) {
        // head = (a x + b y + c, d y + e); the letter's polynomial picks up
        // d y + e, its fresh constant and linear parts move into the head
        FieldElement a = head.fx().coeff({1, 0});
        BiPoly q = unipoly_in(F, lam.p, true).substitute(BiPoly::var_x(F), head.fy());
        FieldElement q0 = q.coeff({0, 0}), q1 = q.coeff({0, 1});
        q.add_term({0, 0}, -q0);
        q.add_term({0, 1}, -q1);
        BiPoly new_fx =
            head.fx() + BiPoly::var_y(F) * q1 + BiPoly::constant(FieldElement(q0));
        return {PlaneAutomorphism(new_fx, head.fy()),
                Letter::jonq(*poly_in_y(q * a.inverse()))};
    }
    PlaneAutomorphism prod = compose(lam.to_map(F), head);
    auto [h, k] = split_affine(prod.fx(), prod.fy());
    if (!k)
        throw InternalVerificationFailure("affine letter dissolved while moving the head");
    return {h, *k};
}

} // namespace

AmalgamWord factorize(const PlaneAutomorphism& phi) {
    const FieldPtr& F = phi.field();
    BiPoly f = phi.fx(), g = phi.fy();
    std::vector<Letter> letters;

    while (std::max(f.degree(), g.degree()) > 1) {
        long d1 = f.degree(), d2 = g.degree();
        if (d1 > d2) {
            // strip multiples of powers of g off f
            UniPoly p(static_cast<size_t>(d1 / d2) + 1, FieldElement::zero(F));
            while (f.degree() > d2) {
                long df = f.degree();
                if (df % d2)
                    throw NotAnAutomorphism("component degree " + std::to_string(df) +
                                            " is not a multiple of " + std::to_string(d2));
                long m = df / d2;
                auto c = proportional(f.leading_form(), g.leading_form().pow(static_cast<unsigned>(m)));
                if (!c)
                    throw NotAnAutomorphism("leading forms fail to match at degree " +
                                            std::to_string(df));
                p[static_cast<size_t>(m)] = *c;
                f -= g.pow(static_cast<unsigned>(m)) * (*c);
            }
            letters.push_back(Letter::jonq(std::move(p)));
        } else if (d1 == d2) {
            auto a = proportional(g.leading_form(), f.leading_form());
            if (!a)
                throw NotAnAutomorphism("leading forms of equal degree are not proportional");
            g -= f * (*a);
            letters.push_back(Letter::shear(*a));
        } else {
            letters.push_back(Letter::swap(F));
            std::swap(f, g);
        }
    }

    auto [head, tail_letter] = split_affine(f, g);
    for (size_t i = letters.size(); i-- > 0;) {
        if (head.is_identity()) break;
        auto [h, k] = push_left(letters[i], head);
        head = h;
        letters[i] = k;
    }
    if (tail_letter) letters.push_back(*tail_letter);

    AmalgamWord w(std::move(head), std::move(letters));
    if (!(w.realize() == phi))
        throw InternalVerificationFailure("factorization does not reproduce the map");
    return w;
}

bool is_bounded(const PlaneAutomorphism& phi) {
    // deg(phi o phi) <= deg(phi) exactly when the cyclic core is a single
    // letter or shorter: a cyclically reduced word of length >= 2 multiplies
    // its letter degrees under squaring, while one letter keeps its degree.
    // Deciding through the normal form avoids squaring the polynomials, which
    // is what makes high-degree conjugates affordable.
    return cyclically_reduce(phi).core.length() <= 1;
}

PlaneAutomorphism invert(const PlaneAutomorphism& phi) {
    const FieldPtr& F = phi.field();
    AmalgamWord w = factorize(phi);

    const BiPoly& hx = w.head().fx();
    const BiPoly& hy = w.head().fy();
    FieldElement p = hx.coeff({1, 0}), q = hx.coeff({0, 1}), r = hx.coeff({0, 0});
    FieldElement s = hy.coeff({0, 1}), t = hy.coeff({0, 0});
    BiPoly yy = (BiPoly::var_y(F) - BiPoly::constant(t)) * s.inverse();
    BiPoly xx = (BiPoly::var_x(F) - BiPoly::constant(r)) * p.inverse() - yy * (q * p.inverse());
    PlaneAutomorphism inv = PlaneAutomorphism::identity(F);
    for (size_t i = w.length(); i-- > 0;) inv = compose(inv, w.letters()[i].inverse_map(F));
    inv = compose(inv, PlaneAutomorphism(xx, yy));
    if (!compose(phi, inv).is_identity())
        throw InternalVerificationFailure("inverse candidate failed the identity check");
    return inv;
}

CyclicReduction cyclically_reduce(const PlaneAutomorphism& phi) {
    const FieldPtr& F = phi.field();
    PlaneAutomorphism conj = PlaneAutomorphism::identity(F);
    AmalgamWord w = factorize(phi);
    while (w.length() >= 3 && w.length() % 2 == 1) {
        PlaneAutomorphism c1 = compose(w.head(), w.letters()[0].to_map(F));
        PlaneAutomorphism rest = PlaneAutomorphism::identity(F);
        for (size_t i = w.length(); i-- > 1;) rest = compose(w.letters()[i].to_map(F), rest);
        AmalgamWord next = factorize(compose(rest, c1));
        if (next.length() >= w.length())
            throw InternalVerificationFailure("cyclic reduction failed to shorten the word");
        conj = compose(conj, c1);
        w = std::move(next);
    }
    return {conj, std::move(w)};
}

ConjugacyIntoFactor conjugate_into_factor(const std::vector<PlaneAutomorphism>& gens) {
    if (gens.empty()) throw ZeroInput("conjugate_into_factor needs at least one generator");
    const FieldPtr& F = gens[0].field();
    ConjugacyIntoFactor out;

    bool elementary = true, all_affine = true, all_triangular = true;
    for (const PlaneAutomorphism& g : gens) {
        bool aff = g.is_affine(), tri = g.is_triangular();
        elementary = elementary && (aff || tri);
        all_affine = all_affine && aff;
        all_triangular = all_triangular && tri;
    }
    if (elementary) {
        if (all_affine || all_triangular) {
            out.placement =
                all_affine ? FactorPlacement::IntoAffine : FactorPlacement::IntoJonquieres;
            out.conjugator = PlaneAutomorphism::identity(F);
            out.conjugated_generators = gens;
        }
        return out;
    }

    for (const PlaneAutomorphism& g : gens)
        if (!is_bounded(g)) return out;
    size_t i1 = 0, best = 0;
    for (size_t i = 0; i < gens.size(); i++) {
        size_t len = factorize(gens[i]).length();
        if (len > best) {
            best = len;
            i1 = i;
        }
    }
    for (size_t j = 0; j < gens.size(); j++)
        if (j != i1 && !is_bounded(compose(gens[i1], gens[j]))) return out;

    if (best % 2 == 0)
        throw InternalVerificationFailure("bounded word of even length cannot occur");
    CyclicReduction red = cyclically_reduce(gens[i1]);
    PlaneAutomorphism cinv = invert(red.conjugator);

    bool conj_affine = true, conj_triangular = true;
    std::vector<PlaneAutomorphism> conjugated;
    for (const PlaneAutomorphism& g : gens) {
        // left association first: c^-1 * g collapses against g's leading
        // letters, so the second compose runs on small maps
        PlaneAutomorphism cg = compose(compose(cinv, g), red.conjugator);
        conj_affine = conj_affine && cg.is_affine();
        conj_triangular = conj_triangular && cg.is_triangular();
        conjugated.push_back(std::move(cg));
    }
    if (!conj_affine && !conj_triangular) return out;
    out.placement =
        conj_affine ? FactorPlacement::IntoAffine : FactorPlacement::IntoJonquieres;
    out.conjugator = red.conjugator;
    out.conjugated_generators = std::move(conjugated);
    return out;
}

} // namespace ozc
