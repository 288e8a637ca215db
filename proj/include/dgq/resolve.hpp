#pragma once

#include "dgq/module.hpp"

namespace dgq {

// Presentation of a semi-free right module over a table category `a`:
// free generators g_i at objects U_i with degrees n_i, and a differential
//   d(g_j) = sum_i g_i · q_{ij},  q_{ij} in Hom_a(U_j, U_i) of degree n_j + 1 - n_i,
// where q_{ij} = 0 unless stage(i) < stage(j). The stage filtration is the
// semi-freeness certificate; its validation includes d^2 = 0.
struct SemiFreeGen {
    int obj = -1;
    int deg = 0;
    int stage = 0;
    std::string name;
};

class SemiFreeModule {
  public:
    explicit SemiFreeModule(const TableCat* a) : a_(a) {}

    const TableCat& base() const { return *a_; }
    int n_gens() const { return (int)gens_.size(); }
    const SemiFreeGen& gen(int i) const { return gens_[i]; }
    int add_gen(int obj, int deg, int stage, const std::string& name);
    void set_q(int i, int j, const Mor& m);
    Mor q(int i, int j) const;

    // stage monotonicity, entry degrees, and d^2 = 0 (Maurer-Cartan)
    ValidationReport validate_certificate() const;

    // The value complex at object z: basis (gen i, basis of Hom(z, U_i)).
    struct Value {
        Complex cx;
        std::map<std::pair<int, Pos>, Pos> index;   // (gen, hom pos) -> complex pos
    };
    Value value_at(int z) const;

    // Full materialization as a module over aop (free modules restrict and
    // induce along full subcategory inclusions without change).
    Module materialize(const TableCat& aop) const;

  private:
    const TableCat* a_;
    std::vector<SemiFreeGen> gens_;
    std::map<std::pair<int, int>, Mor> q_;
};

// A semi-free resolution (or truncation thereof) of a right module target:
// counit[i] is the image of g_i in target.value(U_i), a closed degree-n_i
// element making the counit a module map.
struct Resolution {
    SemiFreeModule p;
    std::vector<GradedVec> counit;
    const Module* target = nullptr;           // module over aop
    std::map<std::pair<int, int>, bool> cells;   // (obj, degree) -> counit cone acyclic
    bool complete = false;                       // procedure reached a fixpoint

    // counit as a chain map value_at(z) -> target.value(z)
    ChainMap counit_map(const SemiFreeModule::Value& v, int z) const;
};

// Lemma-style iterative resolution: adjoin generators at objects of b_objs
// killing the cone cohomology of the counit, within gen degrees
// [lo-1, hi+1], up to step_bound stages.
Resolution semi_free_resolve(const TableCat& a, const Module& m,
                             const std::vector<int>& b_objs, int lo, int hi, int step_bound);

// Truncated two-sided bar resolution of m restricted to b_objs, with levels
// 1..length_bound. Generators at level l have degree >= lo - 1 only retained.
Resolution bar_resolution(const TableCat& a, const Module& m, const std::vector<int>& b_objs,
                          int length_bound, int lo, int hi);

// quick validity check of a resolution's counit (chain map + equivariance on
// sampled generators); heavy validation sits in the tests
ValidationReport validate_counit(const TableCat& aop, const Resolution& r);

// Cone(LInd Res h_Y -> h_Y) as a semi-free right A-module presentation plus
// its materialization; the quotient-side replacement of Y.
struct OrthogonalCone {
    SemiFreeModule pres;
    Module mat;                  // over aop
    bool resolution_complete = false;
    bool orthogonal = false;     // certified member of B-perp on the window
    std::string witness;
};
OrthogonalCone lind_res_cone(const TableCat& a, const TableCat& aop,
                             const std::vector<int>& b_objs, int y, int lo, int hi,
                             int step_bound);

// Does LInd Res m -> m become a quasi-isomorphism on the window?
struct InducedImageResult {
    Verdict verdict = Verdict::Inconclusive;
    std::string witness;
};
InducedImageResult check_induced_image(const TableCat& a, const TableCat& aop, const Module& m,
                                       const std::vector<int>& b_objs, int lo, int hi,
                                       int step_bound);

}  // namespace dgq
