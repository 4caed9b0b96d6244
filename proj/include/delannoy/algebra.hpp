#pragma once

#include "delannoy/karoubi.hpp"
#include "delannoy/relations.hpp"

namespace delannoy {

// A commutative algebra object: carrier with unit 1 -> A and
// multiplication A tensor A -> A, all compressed by the carrier idempotent.
struct AlgebraObject {
    KObject carrier;
    Morphism unit;   // C(point) -> ambient
    Morphism mult;   // C(ambient x ambient, flattened) -> ambient
};

// The Schwartz algebra C(X): pullbacks of the diagonal and of X -> pt.
AlgebraObject schwartz_algebra(const GSet& X);

// Axioms as exact identities. Unit law and commutativity always; the
// associativity identity runs through the flattened triple product and is
// checked when the ambient is within the given total-arm cap (larger
// carriers are covered by the pullback-functoriality route in the tests).
void check_algebra_axioms(const AlgebraObject& A, int assoc_total_arm_cap = 3);

// Span of { u o h o e : h ambient } as vectors over Hom(source e, target u).
std::vector<QVec> compressed_image(const Morphism& u, const Morphism& e);

// The invariant algebra Gamma(A) = Hom(1, A) with its structure constants.
struct GammaAlgebra {
    std::vector<QVec> basis;                  // vectors in Hom(pt, ambient)
    std::vector<std::vector<QVec>> prod;      // prod[i][j] = coords of g_i g_j
    QVec unit_coords;
    std::size_t dim() const { return basis.size(); }
};
GammaAlgebra gamma(const AlgebraObject& A);
bool gamma_is_field(const AlgebraObject& A);

// Trace map eps_A : A -> 1 (categorical trace of the action), and forms.
Morphism trace_map(const AlgebraObject& A);
// (x, y) = lambda(x y), curried into a morphism A -> A^dual.
Morphism form_to_dual(const AlgebraObject& A, const Morphism& lambda);
// Perfectness: a two-sided inverse of the curried form in the compressed
// Hom space.
bool form_is_perfect(const AlgebraObject& A, const Morphism& lambda);
bool is_etale(const AlgebraObject& A);
bool frobenius_check(const AlgebraObject& A, const Morphism& lambda);

// The subalgebra L_a + 1 of C(R): closed under multiplication, Gamma = k,
// not etale (the sub-etale counterexample).
AlgebraObject subetale_example(const Registry& reg);

// E-idempotents of a Schwartz algebra: 0/1 vectors over the orbits of
// X x X satisfying the multiplicative, symmetry and triple conditions.
// Enumerated through the relation lattice; each output is certified
// against the three conditions directly.
struct EIdempotent {
    EquivRelation relation;
    QVec gamma;   // over pair orbits of X x X
};
std::vector<EIdempotent> e_idempotents(const GSet& X);

// Etale subalgebras of C(X) for transitive X: one per E-idempotent, with
// the quotient data and the pullback embedding.
struct EtaleSubalgebra {
    EquivRelation relation;
    GSet quotient;
    GMap projection;
    Morphism embedding;   // C(quotient) -> C(X)
};
std::vector<EtaleSubalgebra> etale_subalgebras(const GSet& X);

// Exactness of 0 -> A -> B -> B tensor_A B for a subalgebra A of B
// (B etale): Hom-space exactness per simple appearing in B.
bool relative_tensor_exactness(const Registry& reg, const AlgebraObject& A, const AlgebraObject& B,
                               const Morphism& inclusion);

enum class Simplicity { Simple, NotSimple, Undetermined };
Simplicity is_simple(const Registry& reg, const AlgebraObject& A);

// Restriction ideals of C(R^(n)) at one pin: the ideals generated by the
// extreme-length summands on each side, the case (a)/(b) report, and the
// label profile of the quotient by their sum.
struct ResIdealReport {
    int n = 0;
    bool pq_zero = false;
    bool case_a = false;           // p + q proper
    bool case_b_split = false;     // A' = A'/p + A'/q (only when not case_a)
    std::map<LabelTuple, int> quotient_profile;
};
ResIdealReport restriction_ideals(const Registry& reg, int n);

// Length statistics of a decomposable object over G^s.
struct LengthStats {
    std::vector<int> li;
    int ltot = 0;
    int tn = 0;                       // length of T_n at n = ltot
    std::map<LabelTuple, int> top;    // the tuples contributing to T_n
};
LengthStats length_stats(const Registry& reg, const KObject& M);

// The lambda_i = empty component of an algebra over G^s, as an algebra
// over the remaining factors.
AlgebraObject invariant_component(const Registry& reg, const AlgebraObject& B, int coord);

// Adjunction transfer: from an algebra map f : Res_U(A) -> 1 (U the
// stabilizer of `pins` points) to the unique g : A -> C(R^(r)) with
// f = eps o Res(g); g is verified to be an algebra homomorphism.
struct AdjunctionResult {
    Morphism g;
    bool unique = false;
    bool algebra_hom = false;
};
AdjunctionResult adjunction_transfer(const AlgebraObject& A, int pins, const Morphism& f);

// Restriction of a morphism over G along a chain of `pins` single-point
// restrictions (coordinates split left to right).
Morphism restrict_chain(const Morphism& f, int pins);
GSet restrict_chain_base(const GSet& X, int pins);

} // namespace delannoy
