#include "ozc/planeauto.hpp"
#include "ozc/errors.hpp"

namespace ozc {

std::string PlanePoint::str() const {
    return "(" + x.str() + ", " + y.str() + ")";
}

int compare(const PlanePoint& a, const PlanePoint& b) {
    if (int c = compare(a.x, b.x)) return c;
    return compare(a.y, b.y);
}

namespace {

BiPoly partial(const BiPoly& f, bool by_x) {
    BiPoly d(f.field());
    for (const auto& [m, c] : f.terms()) {
        unsigned e = by_x ? m.dx : m.dy;
        if (e == 0) continue;
        Mono n = by_x ? Mono{m.dx - 1, m.dy} : Mono{m.dx, m.dy - 1};
        d.add_term(n, c * FieldElement(f.field(), Rational(e)));
    }
    return d;
}

} // namespace

PlaneAutomorphism::PlaneAutomorphism(BiPoly fx, BiPoly fy)
    : fx_(std::move(fx)), fy_(std::move(fy)) {
    check_same_field(fx_.field(), fy_.field());
    BiPoly jac = partial(fx_, true) * partial(fy_, false) - partial(fx_, false) * partial(fy_, true);
    if (jac.is_zero() || !jac.is_constant())
        throw NotAnAutomorphism("Jacobian determinant is not a nonzero constant: " + jac.str());
}

PlaneAutomorphism::PlaneAutomorphism(Unchecked, BiPoly fx, BiPoly fy)
    : fx_(std::move(fx)), fy_(std::move(fy)) {}

PlaneAutomorphism PlaneAutomorphism::identity(const FieldPtr& field) {
    return PlaneAutomorphism(Unchecked{}, BiPoly::var_x(field), BiPoly::var_y(field));
}

bool PlaneAutomorphism::is_identity() const {
    return fx_ == BiPoly::var_x(field()) && fy_ == BiPoly::var_y(field());
}

bool PlaneAutomorphism::is_triangular() const {
    for (const auto& [m, c] : fx_.terms())
        if (m.dx > 1 || (m.dx == 1 && m.dy > 0)) return false;
    if (fx_.coeff({1, 0}).is_zero()) return false;
    for (const auto& [m, c] : fy_.terms())
        if (m.dx > 0 || m.dy > 1) return false;
    return !fy_.coeff({0, 1}).is_zero();
}

PlanePoint PlaneAutomorphism::apply(const PlanePoint& p) const {
    return {fx_.evaluate(p.x, p.y), fy_.evaluate(p.x, p.y)};
}

PlaneAutomorphism compose(const PlaneAutomorphism& f, const PlaneAutomorphism& g) {
    auto [cx, cy] = substitute_pair(f.fx_, f.fy_, g.fx_, g.fy_);
    return PlaneAutomorphism(PlaneAutomorphism::Unchecked{}, std::move(cx), std::move(cy));
}

int compare(const PlaneAutomorphism& a, const PlaneAutomorphism& b) {
    if (int c = compare(a.fx(), b.fx())) return c;
    return compare(a.fy(), b.fy());
}

std::string PlaneAutomorphism::str() const {
    return "(" + fx_.str() + ", " + fy_.str() + ")";
}

PlaneAutomorphism parse_automorphism(const FieldPtr& field, std::string_view sx,
                                     std::string_view sy) {
    return PlaneAutomorphism(parse_bipoly(field, sx), parse_bipoly(field, sy));
}

} // namespace ozc
