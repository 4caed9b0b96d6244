#pragma once

#include <map>
#include <string>
#include <vector>

#include "delannoy/linalg.hpp"
#include "delannoy/morphism.hpp"

namespace delannoy {

// An object of the Karoubi envelope: ambient Schwartz object plus an
// exact idempotent endomorphism.
struct KObject {
    GSet ambient;
    Morphism idem;
};

KObject kobject_full(const GSet& X);   // (X, id)

// Simple-object labels: words over {a, b}; the empty word is the unit.
using Label = std::string;
Label dual_label(const Label& l);
bool valid_label(const Label& l);

// Labels over G^s are tuples, one word per group coordinate.
using LabelTuple = std::vector<Label>;

// The registry of simple objects L_lambda, each realized as a summand of
// C(R^(len(lambda))) by a primitive idempotent.
struct Registry {
    int depth = -1;                       // all labels of length <= depth present
    std::map<Label, Morphism> idems;      // label -> idempotent on C(R^(len))

    bool has(const Label& l) const { return idems.count(l) != 0; }
    KObject simple(const Label& l) const;
    // Multiplicity tables of C(R^(n)) recorded during the build.
    std::map<int, std::map<Label, int>> schwartz_tables;
};

// Build (or extend) the registry to the given depth by decomposing
// End(C(R^(n))) with exact rational linear algebra and labeling the new
// length-n simples through the restriction rule.
void build_registry(Registry& reg, int depth);

// Compose-with operators on Hom spaces (matrices against the canonical
// orbit bases).
QMat left_compose_op(const Morphism& e, const GSet& X);    // h -> e o h on Hom(X, src e)
QMat right_compose_op(const Morphism& e, const GSet& Z);   // h -> h o e on Hom(tgt e, Z)

// External product of registry simples across group coordinates.
KObject boxed_simple(const Registry& reg, const LabelTuple& labels);

// Compressed Hom dimension dim e_N Hom(ambients) e_M.
int khom_dim(const KObject& M, const KObject& N);

// Isotypic multiplicities of M against boxed registry labels, with the
// exactness cross-checks sum(m^2) = dim End_K(M) and the trace identity.
std::map<LabelTuple, int> decompose_labels(const Registry& reg, const KObject& M);

// Full decomposition data: per label, inclusion/projection morphism pairs
// with proj o incl = id and sum over blocks of incl o proj = idem.
struct Block {
    LabelTuple label;
    int multiplicity = 0;
    std::vector<Morphism> incl;   // boxed ambient -> M ambient
    std::vector<Morphism> proj;
};
std::vector<Block> decompose(const Registry& reg, const KObject& M);
bool is_iso(const Registry& reg, const KObject& M, const KObject& N);

// Restriction: split one group coordinate at a pinned point.
struct RestrictedObject {
    GSet base;     // over G^(s+1)
    GSet orig;     // over G^s
    int coord = 0;
    struct PieceInfo {
        int orig_piece = 0;
        std::vector<int> slots;   // per original arm position: 0 left, 1 pin, 2 right
    };
    std::vector<PieceInfo> pieces;
};
RestrictedObject restrict_base(const GSet& X, int coord);
Point embed_restricted(const RestrictedObject& R, int piece, const Point& p);
Morphism restrict_morphism(const Morphism& f, const RestrictedObject& RY, const RestrictedObject& RX);
KObject restrict_k(const KObject& M, int coord);

// Evaluation at the unique fully pinned point of a restricted base.
Morphism counit_at_fixed_point(const GSet& base);

// Restriction rule check: multiset of Res L_lambda against the
// cut-and-delete formula.
struct RestrictionReport {
    Label lambda;
    std::map<LabelTuple, int> computed;
    std::map<LabelTuple, int> formula;
    bool ok = false;
};
RestrictionReport verify_restriction_rule(const Registry& reg, const Label& lambda);
std::map<LabelTuple, int> restriction_formula(const Label& lambda);

// Tensor product decomposition of two simples (same group).
std::map<Label, int> tensor_decompose(const Registry& reg, const Label& a, const Label& b);

// Hom(1, L_a tensor L_b) is nonzero exactly when b is the dual label.
bool dual_label_check(const Registry& reg, const Label& a);

// Multiplicity of the boxed unit: the invariant space dimension.
int invariant_dim(const Registry& reg, const KObject& M);

} // namespace delannoy
