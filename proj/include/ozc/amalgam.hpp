// Decomposition of plane automorphisms into alternating elementary pieces,
// with the conjugacy machinery built on top of it: boundedness detection,
// cyclic reduction, and simultaneous conjugation of a family into the affine
// or the triangular subgroup.
#pragma once

#include "ozc/planeauto.hpp"

#include <optional>
#include <vector>

namespace ozc {

// One factor of the alternating product. Affine-type letters are coset
// representatives of the affine part: (x, a x + y) with a nonzero, or the
// coordinate swap. The other type is (x + p(y), y) where p has only terms of
// degree two and higher.
struct Letter {
    enum class Kind { Shear, Swap, Jonq };

    Kind kind;
    FieldElement a; // Shear coefficient; unused otherwise
    UniPoly p;      // Jonq coefficients, ascending; unused otherwise

    static Letter shear(const FieldElement& a);
    static Letter swap(const FieldPtr& field);
    static Letter jonq(UniPoly p);

    bool is_affine_type() const { return kind != Kind::Jonq; }
    long degree() const;
    PlaneAutomorphism to_map(const FieldPtr& field) const;
    PlaneAutomorphism inverse_map(const FieldPtr& field) const;

    friend bool operator==(const Letter& a, const Letter& b);
};

// head * letters[0] * letters[1] * ... with the head an upper-triangular
// affine map and letter types alternating. The leftmost factor is applied
// last when the word acts on points.
class AmalgamWord {
  public:
    AmalgamWord(PlaneAutomorphism head, std::vector<Letter> letters);

    const PlaneAutomorphism& head() const { return head_; }
    const std::vector<Letter>& letters() const { return letters_; }
    size_t length() const { return letters_.size(); }

    PlaneAutomorphism realize() const;
    // what the realized map's coordinate degrees must be, from letter degrees
    std::pair<long, long> expected_bidegree() const;

    friend bool operator==(const AmalgamWord& a, const AmalgamWord& b);
    std::string str() const;

  private:
    PlaneAutomorphism head_;
    std::vector<Letter> letters_;
};

// unique alternating decomposition of the map
AmalgamWord factorize(const PlaneAutomorphism& phi);

// degree does not grow under squaring; equivalent to having a conjugate
// inside the affine or triangular subgroup
bool is_bounded(const PlaneAutomorphism& phi);

struct CyclicReduction {
    PlaneAutomorphism conjugator;
    AmalgamWord core; // conjugator * core * conjugator^-1 == input
};

CyclicReduction cyclically_reduce(const PlaneAutomorphism& phi);

enum class FactorPlacement { IntoAffine, IntoJonquieres, NotConjugate };

struct ConjugacyIntoFactor {
    FactorPlacement placement = FactorPlacement::NotConjugate;
    // c such that c^-1 g c lies in the named subgroup for every generator
    std::optional<PlaneAutomorphism> conjugator;
    std::vector<PlaneAutomorphism> conjugated_generators; // parallel to input
};

ConjugacyIntoFactor conjugate_into_factor(const std::vector<PlaneAutomorphism>& gens);

} // namespace ozc
