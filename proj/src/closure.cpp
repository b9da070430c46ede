#include "ozc/closure.hpp"
#include "ozc/errors.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

namespace ozc {

namespace {

struct PointLess {
    bool operator()(const PlanePoint& a, const PlanePoint& b) const { return compare(a, b) < 0; }
};

struct CurveLess {
    bool operator()(const BiPoly& a, const BiPoly& b) const { return compare(a, b) < 0; }
};

struct ElemLess {
    bool operator()(const FieldElement& a, const FieldElement& b) const {
        return compare(a, b) < 0;
    }
};

struct MapLess {
    bool operator()(const PlaneAutomorphism& a, const PlaneAutomorphism& b) const {
        return compare(a, b) < 0;
    }
};

// each map followed by its inverse, so moves[k ^ 1] undoes moves[k]
std::vector<PlaneAutomorphism> with_inverses(const std::vector<PlaneAutomorphism>& maps) {
    std::vector<PlaneAutomorphism> moves;
    moves.reserve(2 * maps.size());
    for (const PlaneAutomorphism& g : maps) {
        moves.push_back(g);
        moves.push_back(invert(g));
    }
    return moves;
}

// Orbits of unbounded maps gain digits exponentially fast, so waiting for the
// point cap would mean arithmetic on numbers with millions of digits. An
// orbit whose coordinates outgrow this guard is treated as non-closing.
bool oversized(const FieldElement& v) {
    size_t bits = 0;
    for (const Rational& r : v.coords())
        bits += mpz_sizeinbase(r.get_num().get_mpz_t(), 2) +
                mpz_sizeinbase(r.get_den().get_mpz_t(), 2);
    return bits > 8192;
}

bool oversized(const PlanePoint& p) { return oversized(p.x) || oversized(p.y); }

} // namespace

OrbitSearch is_periodic(const std::vector<PlaneAutomorphism>& maps, const PlanePoint& p,
                        unsigned long cap) {
    if (maps.empty()) throw ZeroInput("periodicity search needs at least one map");
    std::vector<PlaneAutomorphism> moves = with_inverses(maps);
    std::set<PlanePoint, PointLess> visited{p};
    std::vector<PlanePoint> frontier{p};
    bool capped = false;
    while (!frontier.empty() && !capped) {
        std::vector<PlanePoint> next;
        for (const PlanePoint& q : frontier) {
            for (const PlaneAutomorphism& mv : moves) {
                PlanePoint r = mv.apply(q);
                if (visited.insert(r).second) {
                    next.push_back(r);
                    if (visited.size() > cap || oversized(r)) capped = true;
                }
                if (capped) break;
            }
            if (capped) break;
        }
        frontier = std::move(next);
    }
    return {!capped, {visited.begin(), visited.end()}};
}

std::optional<PlaneAutomorphism> find_infinite_order_word(
    const std::vector<PlaneAutomorphism>& gens, unsigned long word_cap) {
    if (gens.empty()) throw ZeroInput("word search needs at least one generator");
    std::vector<PlaneAutomorphism> moves = with_inverses(gens);
    PlaneAutomorphism id = PlaneAutomorphism::identity(gens[0].field());
    std::set<PlaneAutomorphism, MapLess> seen{id};
    std::vector<PlaneAutomorphism> frontier{id};
    for (unsigned long len = 1; len <= word_cap && !frontier.empty(); len++) {
        std::vector<PlaneAutomorphism> next;
        for (const PlaneAutomorphism& w : frontier)
            for (const PlaneAutomorphism& mv : moves) {
                PlaneAutomorphism cand = compose(w, mv);
                if (!seen.insert(cand).second) continue;
                if (!is_torsion(cand)) return cand;
                next.push_back(cand);
            }
        frontier = std::move(next);
    }
    return std::nullopt;
}

Subvariety closure_in_union(const std::vector<BiPoly>& components,
                            const std::vector<PlaneAutomorphism>& gens, const PlanePoint& p,
                            const ClosureConfig& cfg) {
    if (gens.empty()) throw ZeroInput("need at least one map");
    std::vector<BiPoly> comps;
    for (const BiPoly& f : components) {
        if (f.is_zero() || f.is_constant()) continue;
        BiPoly m = monic(f);
        if (!std::count(comps.begin(), comps.end(), m)) comps.push_back(m);
    }
    std::sort(comps.begin(), comps.end(), CurveLess{});

    bool on_some = false;
    for (const BiPoly& f : comps) on_some = on_some || f.evaluate(p.x, p.y).is_zero();
    if (!on_some) throw PointOffVariety("the point lies on none of the components");

    OrbitSearch os = is_periodic(gens, p, cfg.orbit_cap);
    if (os.periodic) return Subvariety::of_points(os.points);

    // the image of V(f) under a move is cut out by f composed with the inverse
    std::vector<PlaneAutomorphism> moves = with_inverses(gens);
    const size_t n = comps.size(), outside = n;
    std::vector<std::vector<size_t>> image(n, std::vector<size_t>(moves.size(), outside));
    for (size_t i = 0; i < n; i++)
        for (size_t k = 0; k < moves.size(); k++) {
            BiPoly img = monic(moves[k ^ 1].pullback(comps[i]));
            auto it = std::lower_bound(comps.begin(), comps.end(), img, CurveLess{});
            if (it != comps.end() && *it == img) image[i][k] = it - comps.begin();
        }

    // a component is unusable once any move sends it outside the list or onto
    // an unusable component
    std::vector<char> alive(n, 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < n; i++) {
            if (!alive[i]) continue;
            for (size_t k = 0; k < moves.size(); k++) {
                size_t t = image[i][k];
                if (t == outside || !alive[t]) {
                    alive[i] = 0;
                    changed = true;
                    break;
                }
            }
        }
    }

    std::vector<std::vector<size_t>> reaches;
    for (size_t i = 0; i < n; i++) {
        if (!alive[i] || !comps[i].evaluate(p.x, p.y).is_zero()) continue;
        std::set<size_t> reach{i};
        std::vector<size_t> stack{i};
        while (!stack.empty()) {
            size_t c = stack.back();
            stack.pop_back();
            for (size_t k = 0; k < moves.size(); k++)
                if (reach.insert(image[c][k]).second) stack.push_back(image[c][k]);
        }
        reaches.push_back({reach.begin(), reach.end()});
    }
    if (reaches.empty()) return Subvariety::plane();

    const std::vector<size_t>* best = &reaches[0];
    for (const auto& r : reaches)
        if (r.size() < best->size()) best = &r;
    for (const auto& r : reaches)
        if (!std::includes(r.begin(), r.end(), best->begin(), best->end()))
            throw InternalVerificationFailure("no smallest invariant union exists");
    std::vector<BiPoly> result;
    for (size_t i : *best) result.push_back(comps[i]);
    return Subvariety::of_curves(std::move(result));
}

ClosureResult orbit_closure(const std::vector<PlaneAutomorphism>& gens, const PlanePoint& p,
                            const ClosureConfig& cfg) {
    if (gens.empty()) throw ZeroInput("at least one generator is required");
    ClosureResult res;
    auto finish = [&](Subvariety v, const std::string& step) {
        res.closure = std::move(v);
        res.deciding_step = step;
        if (!res.closure.contains(p))
            throw InternalVerificationFailure("closure does not contain the start point");
        for (const PlaneAutomorphism& g : gens)
            if (!is_invariant(g, res.closure))
                throw InternalVerificationFailure("closure is not invariant under a generator");
        return res;
    };

    // step 1: maybe the orbit is just finite
    OrbitSearch os = is_periodic(gens, p, cfg.orbit_cap);
    if (os.periodic) {
        res.trace.push_back("step 1: orbit closed with " + std::to_string(os.points.size()) +
                            " points");
        return finish(Subvariety::of_points(os.points), "step 1");
    }
    res.trace.push_back("step 1: " + std::to_string(os.points.size()) +
                        " distinct orbit points without closing");
    res.caveats.push_back("orbit search stopped after " + std::to_string(os.points.size()) +
                          " points without closing (cap " + std::to_string(cfg.orbit_cap) +
                          "); the orbit is treated as infinite");

    // step 2: bring the whole group into one factor
    ConjugacyIntoFactor cj = conjugate_into_factor(gens);
    if (cj.placement == FactorPlacement::NotConjugate) {
        res.trace.push_back("step 2: the group is not conjugate into either factor");
        return finish(Subvariety::plane(), "step 2");
    }
    res.trace.push_back(
        std::string("step 2: conjugated into the ") +
        (cj.placement == FactorPlacement::IntoAffine ? "affine" : "triangular") +
        " factor by " + cj.conjugator->str());
    PlaneAutomorphism c = *cj.conjugator, cinv = invert(c);
    std::vector<PlaneAutomorphism> h = cj.conjugated_generators;
    PlanePoint q = cinv.apply(p);

    auto pull_back_answer = [&](const Subvariety& v) {
        if (v.kind == Subvariety::Kind::Points) {
            std::vector<PlanePoint> pts;
            for (const PlanePoint& r : v.points) pts.push_back(c.apply(r));
            return Subvariety::of_points(std::move(pts));
        }
        if (v.kind == Subvariety::Kind::Curves) {
            std::vector<BiPoly> cs;
            for (const BiPoly& f : v.curves) cs.push_back(cinv.pullback(f));
            return Subvariety::of_curves(std::move(cs));
        }
        return v;
    };
    auto answer_in_union = [&](const std::vector<BiPoly>& X, const std::string& step) {
        try {
            Subvariety v = closure_in_union(X, h, q, cfg);
            res.trace.push_back("step 8: smallest invariant union kept " +
                                std::to_string(v.kind == Subvariety::Kind::Curves
                                                   ? v.curves.size()
                                                   : v.points.size()) +
                                " components");
            return finish(pull_back_answer(v), step);
        } catch (const PointOffVariety&) {
            res.trace.push_back("step 8: the point lies on none of the candidate curves");
            return finish(Subvariety::plane(), step);
        }
    };

    // step 3: split off the torsion generators
    std::vector<PlaneAutomorphism> nontor, tor;
    std::vector<size_t> tor_pos;
    for (size_t i = 0; i < h.size(); i++) {
        if (is_torsion(h[i])) {
            tor.push_back(h[i]);
            tor_pos.push_back(i);
        } else {
            nontor.push_back(h[i]);
        }
    }
    res.trace.push_back("step 3: " + std::to_string(nontor.size()) + " infinite-order and " +
                        std::to_string(tor.size()) + " torsion generators");
    if (nontor.empty()) {
        std::optional<PlaneAutomorphism> w = find_infinite_order_word(h, cfg.word_cap);
        if (!w)
            throw Inconclusive(
                "every generator is torsion, no infinite-order word of length <= " +
                std::to_string(cfg.word_cap) +
                " exists, and the orbit search only ruled out periodicity up to the cap");
        res.trace.push_back("step 3: infinite-order word " + w->str());
        nontor.push_back(*w);
    }

    std::vector<LatticeDescriptor> nd;
    for (size_t i = 0; i < nontor.size(); i++) {
        try {
            nd.push_back(classify(nontor[i], cfg.multdep_bound));
        } catch (const EigenvalueOutsideField& e) {
            throw EigenvalueOutsideField("step 3, classifying an infinite-order generator: " +
                                             std::string(e.what()),
                                         e.char_poly);
        }
    }
    for (const LatticeDescriptor& d : nd)
        if (!d.multdep_exhaustive) {
            res.caveats.push_back("multiplicative dependence search stopped at bound " +
                                  std::to_string(cfg.multdep_bound) +
                                  "; a relation may have been missed");
            break;
        }

    // step 4: a generator with only finitely many invariant curves pins X down
    for (size_t i = 0; i < nd.size(); i++)
        if (nd[i].kind == LatticeKind::NonFibration) {
            res.trace.push_back("step 4: an infinite-order generator admits only " +
                                std::to_string(nd[i].curves.size()) + " invariant curves");
            return answer_in_union(nd[i].curves, "step 4");
        }

    // step 5: incompatible fibrations cut X down to the common support
    for (size_t i = 0; i < nd.size(); i++)
        for (size_t j = i + 1; j < nd.size(); j++) {
            if (nd[i].kind == nd[j].kind && equivalent_fibration(nd[i], nd[j])) continue;
            Subvariety s = support_intersection_dim1(nd[i], nontor[i], nd[j], nontor[j]);
            res.trace.push_back("step 5: two generators carry incompatible fibrations; their "
                                "common support has " +
                                std::to_string(s.curves.size()) + " curves");
            return answer_in_union(s.curves, "step 5");
        }

    if (nd[0].kind == LatticeKind::OrbitFibration) {
        // step 6: every infinite-order generator preserves one affine fibration
        const BiPoly& pi = *nd[0].pi;
        res.trace.push_back("step 6: shared fibration " + pi.str());
        std::vector<BiPoly> trans;
        for (const LatticeDescriptor& d : nd)
            if (d.transversal) {
                BiPoly t = monic(*d.transversal);
                if (!std::count(trans.begin(), trans.end(), t)) trans.push_back(t);
            }

        // step 6-1: a torsion generator that skews the fibration leaves almost
        // no room for invariant curves
        for (size_t j = 0; j < tor.size(); j++) {
            if (affine_equivariant(pi, tor[j])) continue;
            res.trace.push_back("step 6-1: torsion generator " +
                                std::to_string(tor_pos[j] + 1) +
                                " does not preserve the fibration");
            std::vector<BiPoly> X = trans;
            PlaneAutomorphism tj_inv = invert(tor[j]);
            for (const BiPoly& L : trans) X.push_back(monic(tj_inv.pullback(L)));
            return answer_in_union(X, "step 6-1");
        }

        // step 6-2: the whole group acts on the base line; follow the base orbit
        std::vector<std::pair<FieldElement, FieldElement>> down;
        for (const PlaneAutomorphism& g : h) {
            std::optional<AffineEquivariance> e = affine_equivariant(pi, g);
            if (!e) throw InternalVerificationFailure("fibration lost equivariance");
            down.push_back({e->u, e->v});
        }
        FieldElement t0 = pi.evaluate(q.x, q.y);
        std::set<FieldElement, ElemLess> base{t0};
        std::vector<FieldElement> frontier{t0};
        bool capped = false;
        while (!frontier.empty() && !capped) {
            std::vector<FieldElement> next;
            for (const FieldElement& t : frontier) {
                for (const auto& [u, v] : down) {
                    for (const FieldElement& r : {u * t + v, (t - v) * u.inverse()}) {
                        if (base.insert(r).second) {
                            next.push_back(r);
                            if (base.size() > cfg.orbit_cap || oversized(r)) capped = true;
                        }
                        if (capped) break;
                    }
                    if (capped) break;
                }
                if (capped) break;
            }
            frontier = std::move(next);
        }
        if (!capped) {
            res.trace.push_back("step 6-2: base orbit closed with " +
                                std::to_string(base.size()) + " values");
            std::vector<BiPoly> X;
            for (const FieldElement& t : base) X.push_back(pi - BiPoly::constant(t));
            return answer_in_union(X, "step 6-2");
        }
        res.trace.push_back("step 6-2: base orbit exceeded the cap");
        res.caveats.push_back("base orbit search stopped without closing (cap " +
                              std::to_string(cfg.orbit_cap) +
                              "); the base orbit is treated as infinite");
        for (const BiPoly& L : trans) {
            if (!L.evaluate(q.x, q.y).is_zero()) continue;
            bool inv = true;
            for (const PlaneAutomorphism& g : h)
                inv = inv && is_invariant(g, Subvariety::of_curves({L}));
            if (inv) {
                res.trace.push_back("step 6-2: an invariant transversal carries the point");
                return finish(pull_back_answer(Subvariety::of_curves({L})), "step 6-2");
            }
        }
        return finish(Subvariety::plane(), "step 6-2");
    }

    // step 7: every infinite-order generator preserves one projective pair
    const BiPoly& num = *nd[0].pq_num;
    const BiPoly& den = *nd[0].pq_den;
    const PlanePoint base_pt = *nd[0].special_point;
    res.trace.push_back("step 7: shared pair [" + num.str() + " : " + den.str() + "]");

    for (size_t j = 0; j < tor.size(); j++) {
        if (tor[j].apply(base_pt) == base_pt) continue;
        res.trace.push_back("step 7: torsion generator " + std::to_string(tor_pos[j] + 1) +
                            " moves the base point");
        std::vector<PlanePoint> orb{base_pt};
        for (PlanePoint r = tor[j].apply(base_pt); !(r == base_pt); r = tor[j].apply(r))
            orb.push_back(r);
        std::vector<BiPoly> X;
        for (const PlanePoint& r : orb) {
            if (r == base_pt) continue;
            MinimalInvariant mi = minimal_invariant_through(nd[0], nontor[0], r);
            for (const BiPoly& f : mi.variety.curves) X.push_back(f);
        }
        return answer_in_union(X, "step 7");
    }

    // step 7-1: torsion generators may still exchange one pair of fibers
    std::vector<BiPoly> exch;
    bool any_noneq = false;
    for (size_t j = 0; j < tor.size(); j++) {
        if (projective_equivariant(num, den, tor[j])) continue;
        any_noneq = true;
        res.trace.push_back("step 7-1: torsion generator " + std::to_string(tor_pos[j] + 1) +
                            " does not act on the pair");
        PlaneAutomorphism tj_inv = invert(tor[j]);
        // a pure-num or pure-den fiber may be non-reduced; store its support
        auto fiber_of = [&](const FieldElement& cn, const FieldElement& cd) {
            if (cn.is_zero() && cd.is_zero()) return;
            if (nd[0].pq_mixed) {
                if (cn.is_zero()) return; // nonzero constant, cuts nothing
                if (cd.is_zero()) {
                    exch.push_back(nd[0].pq_special[0]);
                    exch.push_back(nd[0].pq_special[1]);
                } else {
                    exch.push_back(num * cn + den * cd);
                }
            } else if (cn.is_zero()) {
                exch.push_back(nd[0].pq_special[1]);
            } else if (cd.is_zero()) {
                exch.push_back(nd[0].pq_special[0]);
            } else {
                exch.push_back(num * cn + den * cd);
            }
        };
        for (const auto& rel :
             linear_relations({tj_inv.pullback(num), tj_inv.pullback(den), num, den})) {
            fiber_of(rel[0], rel[1]);
            fiber_of(rel[2], rel[3]);
        }
    }
    if (any_noneq) {
        if (nd[0].pq_mixed || nd[0].pq_s1 > 1) exch.push_back(nd[0].pq_special[0]);
        if (nd[0].pq_mixed || nd[0].pq_s2 > 1) exch.push_back(nd[0].pq_special[1]);
        return answer_in_union(exch, "step 7-1");
    }

    // step 7-2: the whole group acts on the projective line; follow the image
    // of the point downstairs
    std::vector<std::array<FieldElement, 4>> mats;
    for (const PlaneAutomorphism& g : h) {
        std::optional<ProjectiveEquivariance> e = projective_equivariant(num, den, g);
        if (!e) throw InternalVerificationFailure("pair lost equivariance");
        mats.push_back({e->m11, e->m12, e->m21, e->m22});
    }
    FieldElement one = FieldElement::one(gens[0].field());
    FieldElement zero = FieldElement::zero(gens[0].field());
    auto rep = [&](const FieldElement& t1, const FieldElement& t2) {
        if (!t2.is_zero()) return std::make_pair(t1 * t2.inverse(), one);
        if (t1.is_zero())
            throw InternalVerificationFailure("point landed on the base of the pair");
        return std::make_pair(one, zero);
    };
    auto pair_less = [](const std::pair<FieldElement, FieldElement>& a,
                        const std::pair<FieldElement, FieldElement>& b) {
        int c = compare(a.first, b.first);
        return c != 0 ? c < 0 : compare(a.second, b.second) < 0;
    };
    std::set<std::pair<FieldElement, FieldElement>, decltype(pair_less)> proj(pair_less);
    std::pair<FieldElement, FieldElement> start =
        rep(num.evaluate(q.x, q.y), den.evaluate(q.x, q.y));
    proj.insert(start);
    std::vector<std::pair<FieldElement, FieldElement>> frontier{start};
    bool capped = false;
    while (!frontier.empty() && !capped) {
        std::vector<std::pair<FieldElement, FieldElement>> next;
        for (const auto& t : frontier) {
            for (const auto& m : mats) {
                FieldElement det = m[0] * m[3] - m[1] * m[2];
                if (det.is_zero())
                    throw InternalVerificationFailure("degenerate action on the pair");
                auto fwd = rep(m[0] * t.first + m[1] * t.second,
                               m[2] * t.first + m[3] * t.second);
                auto bwd = rep(m[3] * t.first - m[1] * t.second,
                               m[0] * t.second - m[2] * t.first);
                for (const auto& r : {fwd, bwd}) {
                    if (proj.insert(r).second) {
                        next.push_back(r);
                        if (proj.size() > cfg.orbit_cap || oversized(r.first)) capped = true;
                    }
                    if (capped) break;
                }
                if (capped) break;
            }
            if (capped) break;
        }
        frontier = std::move(next);
    }
    if (capped) {
        res.trace.push_back("step 7-2: the orbit downstairs exceeded the cap");
        res.caveats.push_back("orbit search downstairs stopped without closing (cap " +
                              std::to_string(cfg.orbit_cap) +
                              "); the orbit downstairs is treated as infinite");
        return finish(Subvariety::plane(), "step 7-2");
    }
    res.trace.push_back("step 7-2: orbit downstairs closed with " +
                        std::to_string(proj.size()) + " points");
    std::vector<BiPoly> X;
    for (const auto& t : proj) {
        if (t.second.is_zero()) {
            X.push_back(nd[0].pq_special[1]);
        } else if (t.first.is_zero()) {
            X.push_back(nd[0].pq_special[0]);
            if (nd[0].pq_mixed) X.push_back(nd[0].pq_special[1]);
        } else {
            X.push_back(num * t.second - den * t.first);
        }
    }
    return answer_in_union(X, "step 7-2");
}

} // namespace ozc
