#pragma once

#include "dgq/dgcat.hpp"

namespace dgq {

// One-sided twisted complex over a table category: formal sum of shifted
// objects C_i[r_i] plus a strictly upper triangular degree-1 matrix q with
// q_{ij} in Hom(C_j, C_i), vanishing for i >= j, satisfying the
// Maurer-Cartan equation. With our shift convention the equation reads
//   (-1)^{r_i} d(q_{ij}) + sum_m q_{im} ° q_{mj} = 0.
class TwistedComplex {
  public:
    TwistedComplex(const TableCat* base) : base_(base) {}

    const TableCat& base() const { return *base_; }
    int n_summands() const { return (int)summands_.size(); }
    const std::vector<std::pair<int, int>>& summands() const { return summands_; }
    int object_of(int i) const { return summands_[i].first; }
    int shift_of(int i) const { return summands_[i].second; }

    int add_summand(int obj, int shift);
    // q_{ij}: only i < j representable; underlying degree must be 1 + r_i - r_j.
    void set_q(int i, int j, const Mor& m);
    Mor q(int i, int j) const;

    // Maurer-Cartan check, entrywise.
    bool mc_holds(std::string* witness = nullptr) const;

    std::string describe() const;

  private:
    const TableCat* base_;
    std::vector<std::pair<int, int>> summands_;
    std::map<std::pair<int, int>, Mor> q_;
};

TwistedComplex singleton(const TableCat& base, int obj, int shift = 0);
TwistedComplex shift_twisted(const TwistedComplex& t, int n);

// Morphism of twisted complexes: a matrix of base morphisms, homogeneous of
// matrix degree `deg`; entry (i, j) has underlying degree deg + r'_i - r_j.
struct TwMor {
    const TwistedComplex* src = nullptr;
    const TwistedComplex* tgt = nullptr;
    int deg = 0;
    std::map<std::pair<int, int>, Mor> entry;

    bool is_zero() const;
};

TwMor tw_zero(const TwistedComplex& src, const TwistedComplex& tgt, int deg);
TwMor tw_identity(const TwistedComplex& t);
TwMor tw_add(const TwMor& a, const TwMor& b);
TwMor tw_scale(const TwMor& a, const Scalar& c);
// matrix multiplication, no extra signs
TwMor tw_compose(const TwMor& g, const TwMor& f);
// (df)_{ij} = (-1)^{r'_i} d(f_{ij}) + (q' f)_{ij} - (-1)^{deg f} (f q)_{ij}
TwMor tw_d(const TwMor& f);

// The Hom complex of A^pretr together with its basis bookkeeping.
struct PretrHom {
    Complex cx;
    // (target summand i, source summand j, underlying basis pos) -> position
    std::map<std::tuple<int, int, Pos>, Pos> index;

    GradedVec coords(const TwMor& f) const;
    TwMor element(const TwistedComplex& src, const TwistedComplex& tgt, int deg,
                  const GradedVec& v) const;
};

PretrHom pretr_hom(const TwistedComplex& src, const TwistedComplex& tgt);

// Cone(f) = (Y ⊕ X[1], [[q_Y, f], [0, -q_X]]) for f closed of degree 0.
TwistedComplex cone(const TwMor& f);

struct ContractibilityResult {
    bool contractible = false;
    std::optional<ChainMap> homotopy;   // d h + h d = id on End(t) when contractible
};
ContractibilityResult is_contractible(const TwistedComplex& t);
// f closed of degree 0 is a homotopy equivalence iff Cone(f) is contractible.
ContractibilityResult is_homotopy_equivalence(const TwMor& f);

std::map<int, int> ext_tr(const TwistedComplex& x, const TwistedComplex& y, int lo, int hi);

// Materialize the full DG subcategory of A^pretr on the given twisted
// complexes as a table category (labels carry matrix positions).
struct TwistedTable {
    TableCat cat;
    // per (x, y): matrix-entry key -> basis position in cat.hom(x, y)
    std::vector<std::vector<std::map<std::tuple<int, int, Pos>, Pos>>> index;

    Mor to_table(int x, int y, const TwMor& f) const;
};
TwistedTable table_from_twisted(const TableCat& base,
                                const std::vector<TwistedComplex>& objects);

// A realization of a table category in complexes: one complex per object and
// one graded map per Hom basis element (a strict DG functor to complexes).
struct Realization {
    std::vector<Complex> obj;
    // (src, tgt, basis pos) -> blocks (source degree -> matrix), offset = element degree
    std::map<std::tuple<int, int, Pos>, std::map<int, SparseMatrix>> image;

    // image of an arbitrary morphism as blocks acting V(src) -> V(tgt)
    std::map<int, SparseMatrix> apply(const TableCat& cat, const Mor& m) const;
};

// Totalization of a twisted complex under a realization, with summand offsets.
struct Totalization {
    Complex cx;
    std::map<std::tuple<int, int, int>, int> index;   // (summand, obj degree, obj idx) -> idx
};
Totalization realize_twisted(const TableCat& base, const Realization& real,
                             const TwistedComplex& t);
// The induced map of totalizations for a twisted morphism.
ChainMap realize_tw_mor(const TableCat& base, const Realization& real, const TwMor& f,
                        const Totalization& tsrc, const Totalization& ttgt);

}  // namespace dgq
