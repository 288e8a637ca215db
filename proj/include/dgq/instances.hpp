#pragma once

#include "dgq/dgcat.hpp"

namespace dgq {

// Two objects X1, X2, freely generated by a single closed degree-0 morphism
// f : X1 -> X2 (Hom(X2, X1) = 0, endomorphisms are scalars).
TableCat cat_a0(Field f);

// Two objects with every Hom one-dimensional in degree 0 and composition
// g ° f = mu * id (mu = 1 is the category I_2; mu = 0 its degenerate cousin).
TableCat cat_i2(Field f, long long mu);

// One object with End = k.
TableCat cat_endk(Field f);

// One object, End spanned by id and a closed degree-1 generator x with x^2 = 0.
TableCat cat_kx2(Field f);

}  // namespace dgq
