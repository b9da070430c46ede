// Orbit closures of a point under a finitely generated group of plane
// automorphisms: periodicity search, infinite-order certificates, and the
// master case split over the generators' invariant-subvariety structure.
#pragma once

#include "ozc/lattice.hpp"

#include <string>

namespace ozc {

struct ClosureConfig {
    unsigned long orbit_cap = 10000; // distinct points explored before giving up
    unsigned long word_cap = 8;      // length bound for infinite-order words
    unsigned long multdep_bound = 64;
};

struct OrbitSearch {
    bool periodic = false;
    // the full orbit (sorted) when periodic; the points seen so far otherwise
    std::vector<PlanePoint> points;
};

// breadth-first walk under the maps and their inverses; gives up after cap
// distinct points, or earlier when the coordinates outgrow a fixed height
// guard (an orbit that keeps gaining digits cannot close)
OrbitSearch is_periodic(const std::vector<PlaneAutomorphism>& maps, const PlanePoint& p,
                        unsigned long cap);

// first word in the generators and their inverses, by length then order of
// construction, that has infinite order; absent if the cap exhausts first
std::optional<PlaneAutomorphism> find_infinite_order_word(
    const std::vector<PlaneAutomorphism>& gens, unsigned long word_cap);

// smallest invariant union of the given curves containing p, the finite orbit
// if p turns out periodic, or the whole plane when p sits only on components
// that cannot belong to any invariant union; throws PointOffVariety when p
// lies on none of the curves at all
Subvariety closure_in_union(const std::vector<BiPoly>& components,
                            const std::vector<PlaneAutomorphism>& gens, const PlanePoint& p,
                            const ClosureConfig& cfg = {});

struct ClosureResult {
    Subvariety closure;
    std::string deciding_step;         // which case of the algorithm answered
    std::vector<std::string> trace;    // one line per step taken
    std::vector<std::string> caveats;  // every cap-based shortcut that was used
};

// Zariski closure of the orbit of p under the group the generators produce.
// Throws Inconclusive when every generator is torsion and no infinite-order
// word shows up within the caps, and propagates EigenvalueOutsideField from
// classification of affine generators.
ClosureResult orbit_closure(const std::vector<PlaneAutomorphism>& gens, const PlanePoint& p,
                            const ClosureConfig& cfg = {});

} // namespace ozc
