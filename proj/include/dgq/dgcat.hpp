#pragma once

#include <functional>
#include <memory>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dgq/complex.hpp"

namespace dgq {

// Morphism element of a table category: lives in Hom(src, tgt), possibly
// inhomogeneous; coefficients over the Hom complex basis positions.
struct Mor {
    int src = -1, tgt = -1;
    GradedVec v;

    bool is_zero() const { return v.is_zero(); }
    std::optional<int> degree() const { return v.degree(); }
};

struct ValidationIssue {
    std::string kind;      // "d2" | "leibniz" | "assoc" | "unit" | ...
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

// DG category presented by tables: finite object set, finite-basis Hom
// complexes, composition structure constants, designated units.
class TableCat {
  public:
    explicit TableCat(Field f) : field_(f) {}

    Field field() const { return field_; }
    int n_objects() const { return (int)objects_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    int object_index(const std::string& name) const;

    int add_object(const std::string& name);
    Complex& hom(int src, int tgt);
    const Complex& hom(int src, int tgt) const;

    // g ° f for composable basis positions; stored sparsely, zero if absent.
    void set_comp(int src, int mid, int tgt, Pos g, Pos f, const GradedVec& gf);
    const GradedVec& comp(int src, int mid, int tgt, Pos g, Pos f) const;

    void set_unit(int obj, const GradedVec& u);
    const GradedVec& unit(int obj) const;
    Mor unit_mor(int obj) const;

    Mor zero_mor(int src, int tgt) const;
    Mor basis_mor(int src, int tgt, Pos p) const;
    Mor compose(const Mor& g, const Mor& f) const;     // g ° f
    Mor d(const Mor& m) const;
    Mor scale(const Mor& m, const Scalar& c) const;
    Mor add(const Mor& a, const Mor& b) const;

    // Full axiom check: d^2, Leibniz on basis pairs, associativity on basis
    // triples, unit closure/degree/neutrality.
    ValidationReport validate() const;

    // Per-degree cohomology of Hom(x, y) on [lo, hi].
    std::map<int, int> ext_table(int x, int y, int lo, int hi) const;

  private:
    Field field_;
    std::vector<std::string> objects_;
    std::map<std::pair<int, int>, Complex> hom_;
    // comp key: (src, mid, tgt, pos of g in Hom(mid,tgt), pos of f in Hom(src,mid))
    std::map<std::tuple<int, int, int, Pos, Pos>, GradedVec> comp_;
    std::vector<GradedVec> units_;
    static const GradedVec kZero;
};

// A° : same objects, Hom(x, y) = Hom_A(y, x), Koszul-signed composition.
TableCat opposite(const TableCat& a);

// A ⊗ B with the Koszul sign in composition.
TableCat tensor_categories(const TableCat& a, const TableCat& b);

// The full DG subcategory of complexes spanned by `objs`: Hom = hom_complex,
// composition = actual composition of graded maps.
TableCat category_of_complexes(Field f, const std::vector<std::string>& names,
                               const std::vector<Complex>& objs);

// Deterministic, seeded basis scrambling: invertible change of basis in every
// Hom complex, with d / composition / units transported. Validity is preserved.
TableCat scramble_hom_bases(const TableCat& a, uint64_t seed);

// Seeded generator for valid table categories over f: end-of-complexes type,
// optionally scrambled. Hom degrees land in [-1, 1], dims stay small.
struct RandomCatSpec {
    int n_objects = 2;
    int max_hom_dim_per_degree = 3;
    bool scramble = true;
    // last object: 0 = unconstrained, 1 = contractible, 2 = a point complex,
    // 3 = seeded choice between the two (End stays cohomologically small)
    int last_mode = 0;
};
TableCat random_table_category(Field f, uint64_t seed, const RandomCatSpec& spec);

// DG functor between table categories: object map + images of Hom basis elements.
struct TableFunctor {
    const TableCat* source = nullptr;
    const TableCat* target = nullptr;
    std::vector<int> obj;                      // source object -> target object
    std::map<std::tuple<int, int, Pos>, Mor> gen_image;   // (src,tgt,basis pos) -> image

    Mor apply(const Mor& m) const;
    ValidationReport validate() const;         // units, composition, d, degrees
};

TableFunctor identity_functor(const TableCat& a);
// Inclusion of the full subcategory on `objs` (source must be that subcategory).
TableFunctor full_subcategory_inclusion(const TableCat& sub, const TableCat& amb,
                                        const std::vector<int>& objs);
TableCat full_subcategory(const TableCat& a, const std::vector<int>& objs);

// Quasi-equivalence check on a window: H(Hom) fully faithful per pair, plus a
// bounded essential-surjectivity search in Ho(target).
enum class Verdict { Yes, No, Inconclusive };
struct QuasiEquivResult {
    Verdict verdict = Verdict::Inconclusive;
    std::string witness;
};
QuasiEquivResult check_quasi_equivalence(const TableFunctor& F, int lo, int hi);

// Is [u] an isomorphism in Ho(C)? Search for a two-sided inverse in H^0.
bool is_homotopy_iso_class(const TableCat& c, const Mor& u, int lo, int hi);

}  // namespace dgq
