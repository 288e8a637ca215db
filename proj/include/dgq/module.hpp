#pragma once

#include "dgq/dgcat.hpp"

namespace dgq {

// DG module over a table category, always stored covariantly: the action of a
// morphism b : X -> Y is a degree-|b| map value(X) -> value(Y) satisfying
//   act_{g°f} = act_g ° act_f,   act_{db} = d ° act_b - (-1)^{|b|} act_b ° d.
// Contravariant (right) modules over A are left modules over opposite(A); the
// Koszul signs live in the opposite category's composition and in the signed
// Yoneda action below.
class Module {
  public:
    explicit Module(const TableCat* cat) : cat_(cat), val_(cat->n_objects(), Complex(cat->field())) {}

    const TableCat& cat() const { return *cat_; }
    Field field() const { return cat_->field(); }
    Complex& value(int obj) { return val_[obj]; }
    const Complex& value(int obj) const { return val_[obj]; }

    // action block of a Hom basis element b (at pos in Hom(src, tgt)), for a
    // given value degree n: value(src)^n -> value(tgt)^{n + deg b}
    void set_act(int src, int tgt, Pos b, int n, const SparseMatrix& block);
    SparseMatrix act(int src, int tgt, Pos b, int n) const;

    // action of an arbitrary morphism on a value vector at its source object
    GradedVec apply(const Mor& m, const GradedVec& v) const;

    ValidationReport validate() const;

  private:
    const TableCat* cat_;
    std::vector<Complex> val_;
    std::map<std::tuple<int, int, Pos, int>, SparseMatrix> act_;
};

// h_Y as a left module over aop = opposite(a): value(Z) = Hom_a(Z, Y),
// act_{b°}(v) = (-1)^{|b||v|} v ° b.
Module yoneda_right(const TableCat& a, const TableCat& aop, int y);
// h~_X over a itself: value(Z) = Hom_a(X, Z), act_b(v) = b ° v.
Module yoneda_left(const TableCat& a, int x);

// Module map: one chain map per object, commuting with all actions.
struct ModuleMap {
    const Module* src = nullptr;
    const Module* tgt = nullptr;
    std::vector<ChainMap> at;   // per object, degree 0

    ValidationReport validate() const;
};

// restriction along a table functor F : A -> C of a module over C
Module restrict_module(const TableFunctor& F, const Module& m);

// Tensor product of a right module (over aop) and a left module (over a):
// quotient of ⊕_X G(X) ⊗ F(X) by u·b ⊗ v - u ⊗ b·v.
struct TensorResult {
    Complex cx{Field::rationals()};
    // coordinates of the class of a pure tensor u (x) v at object X
    GradedVec pure(int x, const GradedVec& u, const GradedVec& v) const;
    // the pure tensor (object, G-pos, F-pos) whose class is quotient basis (deg, idx)
    std::tuple<int, Pos, Pos> basis_preimage(Pos quotient_pos) const;

    // bookkeeping
    const TableCat* a = nullptr;
    std::vector<std::map<std::tuple<int, int, int, int>, Pos>> tindex;  // per object
    std::shared_ptr<QuotientOfComplex> quo;
    std::map<std::pair<int, Pos>, Pos> big_index;   // (object, pos in G(X)(x)F(X)) -> big pos
    std::map<Pos, std::tuple<int, Pos, Pos>> rev_big;   // big pos -> (object, G-pos, F-pos)
};
TensorResult module_tensor(const TableCat& a, const TableCat& aop, const Module& g,
                           const Module& f);

// Induction along F : A -> C of a left A-module M (values (Res_F h_Y) ⊗_A M).
// `a_op` must be opposite(*F.source).
Module induce_module(const TableFunctor& F, const TableCat& a_op, const Module& m);

// dimension of the complex Hom_{mod}(M, N) in each degree of [lo, hi]
std::map<int, int> module_hom_dims(const Module& m, const Module& n, int lo, int hi);

// per-object cone acyclicity of a module map inside the window
struct QisResult {
    Verdict verdict = Verdict::Inconclusive;
    std::string witness;
};
QisResult is_quasi_isomorphism(const ModuleMap& f, int lo, int hi);

// right-orthogonality: value(U) acyclic for every U in B (module given as a
// left module over opposite(a), i.e. a right a-module)
bool in_right_orthogonal(const Module& m, const std::vector<int>& b_objs, int lo, int hi,
                         std::string* witness = nullptr);

TableFunctor opposite_functor(const TableFunctor& F, const TableCat& src_op,
                              const TableCat& tgt_op);

}  // namespace dgq
