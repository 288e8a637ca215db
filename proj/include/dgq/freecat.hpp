#pragma once

#include "dgq/dgcat.hpp"

namespace dgq {

// Composable word in a graded quiver, stored in diagram order: letters[0] is
// applied first. The empty word at an object is that object's unit.
struct Word {
    int src = -1;
    std::vector<int> letters;

    bool operator<(const Word& o) const {
        if (src != o.src) return src < o.src;
        return letters < o.letters;
    }
    bool operator==(const Word& o) const { return src == o.src && letters == o.letters; }
};

// Noncommutative polynomial: finite k-linear combination of words.
struct NCPoly {
    std::map<Word, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const Word& w, const Scalar& c);
    NCPoly plus(const NCPoly& o) const;
    NCPoly scaled(const Scalar& c) const;
};

struct FreeGen {
    std::string name;
    int src = -1, tgt = -1, deg = 0;
    NCPoly dif;    // degree deg+1 combination of composable words src -> tgt
};

// DG category freely generated by a graded quiver with differential.
class FreeCat {
  public:
    explicit FreeCat(Field f) : field_(f) {}

    Field field() const { return field_; }
    int n_objects() const { return (int)objects_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    int add_object(const std::string& name);
    int object_index(const std::string& name) const;

    int n_gens() const { return (int)gens_.size(); }
    const FreeGen& gen(int i) const { return gens_[i]; }
    int add_gen(const std::string& name, int src, int tgt, int deg);
    void set_dif(int gen, const NCPoly& p);
    int gen_index(const std::string& name) const;

    int word_tgt(const Word& w) const;
    int word_degree(const Word& w) const;
    int word_src(const Word& w) const { return w.src; }
    std::string word_label(const Word& w) const;

    // Leibniz differential with the global sign convention.
    NCPoly d_word(const Word& w) const;
    NCPoly d_poly(const NCPoly& p) const;
    NCPoly multiply(const NCPoly& a, const NCPoly& b) const;   // a ° b (b first)

    // All composable words x -> y with length <= max_len and degree in
    // [deg_lo, deg_hi]; throws if more than `cap` words are generated.
    std::vector<Word> enumerate_words(int x, int y, int max_len, int deg_lo, int deg_hi,
                                      size_t cap = 500000) const;

    // Checks word composability of differentials, their degrees and d^2 = 0
    // on every generator (computed exactly).
    ValidationReport validate() const;

    // All generator differentials change word length by the same amount; the
    // length filtration is then exact and truncated cohomology is certified.
    std::optional<int> length_homogeneous_delta() const;

  private:
    Field field_;
    std::vector<std::string> objects_;
    std::vector<FreeGen> gens_;
};

// Truncated materialization of Hom(x, y): all words of length <= ambient_len
// with degree in [deg_lo, deg_hi]; the differential is exact on every column
// of length <= safe_len (terms never leave the ambient space there).
struct FreeHomTrunc {
    const FreeCat* fc = nullptr;
    int x = -1, y = -1;
    int ambient_len = 0, safe_len = 0;
    int deg_lo = 0, deg_hi = 0;
    std::vector<Word> words;
    std::map<Word, int> index;
    std::vector<int> length, degree;
    std::vector<SparseVec> dcol;    // per column, over word indices

    int dim_at(int deg, int max_len) const;
};

FreeHomTrunc materialize_free_hom(const FreeCat& fc, int x, int y, int max_len, int deg_lo,
                                  int deg_hi, size_t cap = 500000);

// Cohomology estimate of a truncated Hom with stabilization metadata.
struct DegreeEstimate {
    int dim = 0;
    bool stable = false;      // unchanged over the last two truncation lengths
    bool certified = false;   // exact by the length-graded argument
    std::vector<SparseVec> reps;   // in the word basis of the final truncation
};
std::map<int, DegreeEstimate> free_ext_estimate(const FreeHomTrunc& t, int lo, int hi,
                                                int stable_runs = 2);

// DG functor from a free category to a table category (generator images).
struct FreeFunctor {
    const FreeCat* source = nullptr;
    const TableCat* target = nullptr;
    std::vector<int> obj;
    std::vector<Mor> gen_image;

    Mor apply_word(const Word& w) const;
    Mor apply_poly(int src, int tgt, const NCPoly& p) const;
    ValidationReport validate() const;
};

// The category K freely generated by f, g, alpha_1, alpha_2, u with
// d(alpha_1) = gf - 1, d(alpha_2) = fg - 1, d(u) = f alpha_1 - alpha_2 f.
FreeCat free_cat_K(Field f);
// Broken variant: d(alpha_1) = gf, d(alpha_2) = fg (no unit terms), same u.
FreeCat free_cat_K_broken(Field f);
// Free category on the single arrow f : X1 -> X2 of degree 0.
FreeCat free_cat_a0(Field f);

// The resolution functor K -> I2 (f, g to the generators, alphas and u to 0).
FreeFunctor functor_K_to_i2(const FreeCat& k, const TableCat& i2);

}  // namespace dgq
