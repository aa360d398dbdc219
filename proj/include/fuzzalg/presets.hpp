#pragma once

// The standard example theories (semigroups, ideals, groups, normal groups)
// and two non-trivial derivations showcasing the calculus. Everything here is
// also reachable through the DSL; these builders exist so tests and the
// bundled examples share one definition.

#include "fuzzalg/derivation.hpp"
#include "fuzzalg/logic.hpp"

namespace fuzzalg::presets {

Language semigroup_lang();
Language group_lang();

// |- (x*y)*z == x*(y*z)
Theory semigroup_theory(FramePtr fr);
// semigroup plus, per level l:  mem l y |- mem l mul(x,y)
Theory left_ideal_theory(FramePtr fr);
// semigroup plus, per level l:  mem l x |- mem l mul(x,y)
Theory right_ideal_theory(FramePtr fr);
// union of the two ideal theories
Theory ideal_theory(FramePtr fr);

// Group axioms, in this order:
//   0: |- mul(x, inv(x)) == e        1: |- mul(inv(x), x) == e
//   2: |- mul(e, x) == x             3: |- mul(x, e) == x
//   4: |- mul(mul(x,y), z) == mul(x, mul(y,z))
Theory group_theory(FramePtr fr);
// Variant with axiom 3 replaced by |- mul(x, x) == x (collapses every model
// to a one-element group; kept as a separate fixture on purpose).
Theory idempotent_group_theory(FramePtr fr);
// Group plus, per level l:  mem l x |- mem l mul(y, mul(x, inv(y)))
Theory normal_group_theory(FramePtr fr);

// From the group axioms: derives  {mem l x} |- mem l e
// (any element existing to degree l forces the unit to exist to degree l).
Derivation derive_unit_existence(const Theory& group_th, FrameElem l);

// From the normal-group axioms: derives
//   {mem l mul(y, mul(x, inv(y)))} |- mem l x
// (conjugates existing to degree l force the original element to degree l).
Derivation derive_conjugation_reflection(const Theory& normal_th, FrameElem l);

}  // namespace fuzzalg::presets
