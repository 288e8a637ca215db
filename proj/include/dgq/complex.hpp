#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgq/sparse.hpp"

namespace dgq {

// Position of a homogeneous basis element: (degree, index within degree).
using Pos = std::pair<int, int>;

// Element of a graded space: finitely many (degree, index) -> coefficient.
struct GradedVec {
    std::map<Pos, Scalar> c;

    bool is_zero() const { return c.empty(); }
    void add(Pos p, const Scalar& s);
    GradedVec plus(const GradedVec& o) const;
    GradedVec scaled(const Scalar& s) const;
    // Defined only for homogeneous nonzero vectors.
    std::optional<int> degree() const;
};

// Finite-basis complex of k-vector spaces with degree +1 differential.
// Degrees outside `window` (when set) are unasserted: the complex was
// materialized from a lazy source and is only trustworthy inside it.
class Complex {
  public:
    explicit Complex(Field f) : field_(f) {}

    Field field() const { return field_; }
    int dim(int n) const;
    int total_dim() const;
    const std::vector<std::string>& labels(int n) const;
    std::vector<int> degrees() const;          // degrees with dim > 0, sorted
    int min_degree() const;
    int max_degree() const;

    int add_basis(int degree, const std::string& label);   // returns index in degree
    void set_d(int degree, const SparseMatrix& m);
    // d restricted to degree n: dim(n) columns, dim(n+1) rows.
    SparseMatrix d(int n) const;
    void add_d_entry(int degree, int row, int col, const Scalar& v);

    void set_window(int lo, int hi) { window_ = {lo, hi}; }
    std::optional<std::pair<int, int>> window() const { return window_; }
    bool degree_in_window(int n) const;

    GradedVec apply_d(const GradedVec& v) const;
    // Verifies d°d = 0 entrywise on all materialized degrees.
    bool d_squared_zero(std::string* witness = nullptr) const;

    std::string describe() const;

  private:
    Field field_;
    std::map<int, std::vector<std::string>> basis_;
    std::map<int, SparseMatrix> d_;            // keyed by source degree
    std::optional<std::pair<int, int>> window_;
    static const std::vector<std::string> kEmpty;
};

// Per-degree result of a cohomology computation.
struct Cohomology {
    int degree = 0;
    int dim = 0;
    std::vector<SparseVec> reps;   // cocycle representatives, coords in C^degree
};

// dim and representatives of H^n; throws error("window-insufficient: ...")
// if the complex cannot vouch for degrees n-1..n+1.
Cohomology cohomology(const Complex& c, int n);
std::map<int, int> cohomology_table(const Complex& c, int lo, int hi);
bool acyclic_in(const Complex& c, int lo, int hi);

// Express the class of cocycle v in the basis `h.reps` modulo coboundaries.
// Returns nullopt if v is not in the span (should not happen for cocycles of c).
std::optional<std::vector<Scalar>> class_coords(const Complex& c, const Cohomology& h,
                                                const SparseVec& v);

// Degree-preserving map of complexes up to an offset: blocks[n] : C^n -> D^(n+offset).
struct ChainMap {
    const Complex* source = nullptr;
    const Complex* target = nullptr;
    int offset = 0;                          // 0 for chain maps, -1 for homotopies
    std::map<int, SparseMatrix> blocks;      // keyed by source degree

    SparseMatrix block(int n) const;
    GradedVec apply(const GradedVec& v) const;
    // d_target ° f - (-1)^offset f ° d_source, evaluated on degree n.
    bool commutes_with_d(std::string* witness = nullptr) const;
};

ChainMap identity_map(const Complex& c);
ChainMap zero_map(const Complex& src, const Complex& tgt);

// Mapping cone of a closed degree-0 chain map: target ⊕ source[1],
// d(v, u) = (dv + f(u), -du). Returns the cone plus basis bookkeeping.
struct ConeResult {
    Complex cx;
    // (part, degree, index): part 0 = target slot, 1 = shifted source slot
    std::vector<std::tuple<int, int, int>> origin;
};
ConeResult cone_complex(const ChainMap& f);

// shift(c, n): degrees drop by n (element of degree d lands in degree d-n),
// differential scaled by (-1)^n.
Complex shift_complex(const Complex& c, int n);

Complex tensor_complex(const Complex& a, const Complex& b);
// Hom(a, b)^n = prod_p Lin(a^p, b^(p+n));  d(phi) = d_b ° phi - (-1)^n phi ° d_a.
Complex hom_complex(const Complex& a, const Complex& b);
Complex direct_sum(const Complex& a, const Complex& b);

// Quotient of c by the subcomplex spanned by `sub` (must be d-stable).
Complex quotient_complex(const Complex& c, const std::vector<GradedVec>& sub);

// Quotient with the projection retained: images of arbitrary vectors of c can
// be expressed in the quotient basis afterwards.
class QuotientOfComplex {
  public:
    QuotientOfComplex(const Complex& c, const std::vector<GradedVec>& sub);
    const Complex& cx() const { return cx_; }
    GradedVec project(const GradedVec& v) const;
    // original basis indices whose classes form the quotient basis at `degree`
    const std::vector<int>& survivors(int degree) const;

  private:
    Complex cx_;
    // per degree: relation span followed by surviving standard basis
    std::map<int, RowSpan> span_;
    std::map<int, int> n_rel_;            // generators used by relations
    std::map<int, std::vector<int>> comp_;
};

// Homotopy h with  d h + h d = f  for a degree-0 map f (certifying f ≃ 0),
// or nullopt when the linear system has no solution over the materialized degrees.
std::optional<ChainMap> solve_homotopy(const ChainMap& f);

// id_C ≃ 0, i.e. the complex is contractible.
std::optional<ChainMap> contracting_homotopy(const Complex& c);

}  // namespace dgq
