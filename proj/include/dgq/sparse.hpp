#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dgq/field.hpp"

namespace dgq {

// Sparse vector: (index, nonzero scalar) pairs sorted by index.
struct SparseVec {
    std::vector<std::pair<int, Scalar>> t;

    bool is_zero() const { return t.empty(); }
    void add_term(int i, const Scalar& c);          // accumulate, drops zeros
    SparseVec scaled(const Scalar& c) const;
    SparseVec plus(const SparseVec& o) const;
    Scalar at(int i, Field f) const;
    int max_index() const;
};

// Sparse matrix, row-major. rows() x cols(), entries exact.
class SparseMatrix {
  public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols, Field f) : rows_(rows), cols_(cols), field_(f), row_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Field field() const { return field_; }

    void set(int r, int c, const Scalar& v);        // overwrite entry
    void add(int r, int c, const Scalar& v);        // accumulate entry
    Scalar get(int r, int c) const;
    const SparseVec& row(int r) const { return row_[r]; }
    bool is_zero() const;
    int nnz() const;

    SparseVec apply(const SparseVec& v) const;      // matrix * column vector
    std::vector<Scalar> apply_dense(const std::vector<Scalar>& v) const;
    SparseMatrix times(const SparseMatrix& o) const;
    SparseMatrix plus(const SparseMatrix& o) const;
    SparseMatrix scaled(const Scalar& c) const;
    SparseMatrix transpose() const;

    // Exact Gaussian elimination utilities.
    int rank() const;
    // Basis of { v : A v = 0 } as columns (each a SparseVec of length cols()).
    std::vector<SparseVec> kernel_basis() const;
    // One solution of A x = b, if any.
    std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;

  private:
    int rows_ = 0, cols_ = 0;
    Field field_ = Field::rationals();
    std::vector<SparseVec> row_;
};

// Incremental reduced row span with coordinate tracking: supports rank,
// membership tests, and expressing a new vector over the inserted generators.
class RowSpan {
  public:
    // track_coords: keep the expression of each row over the inserted
    // generators (needed by express(); skip for plain rank/membership use)
    explicit RowSpan(Field f, bool track_coords = true)
        : field_(f), track_(track_coords) {}

    // Reduce v against the span. Returns the residual; coords receives the
    // combination of previously inserted generators that was subtracted.
    SparseVec reduce(const SparseVec& v, std::vector<std::pair<int, Scalar>>* coords = nullptr) const;
    // Insert v (reduced first); returns true if it enlarged the span.
    bool insert(const SparseVec& v);
    bool contains(const SparseVec& v) const;
    // Solve v = sum_i c_i * gen_i exactly, if possible.
    std::optional<std::vector<std::pair<int, Scalar>>> express(const SparseVec& v) const;
    int rank() const { return (int)rows_.size(); }
    int generators_inserted() const { return n_inserted_; }

  private:
    struct Row {
        SparseVec vec;                                  // reduced, leading coeff 1
        int pivot;
        std::vector<std::pair<int, Scalar>> coords;     // in terms of inserted generators
    };
    Field field_;
    bool track_ = true;
    std::vector<Row> rows_;    // sorted by pivot
    int n_inserted_ = 0;
};

}  // namespace dgq
