#include "dgq/sparse.hpp"

#include <algorithm>
#include <map>

namespace dgq {

// ---------------------------------------------------------------- SparseVec

void SparseVec::add_term(int i, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(t.begin(), t.end(), i,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != t.end() && it->first == i) {
        Scalar s = it->second + c;
        if (s.is_zero()) t.erase(it);
        else it->second = s;
    } else {
        t.insert(it, {i, c});
    }
}

SparseVec SparseVec::scaled(const Scalar& c) const {
    SparseVec r;
    if (c.is_zero()) return r;
    r.t.reserve(t.size());
    for (auto& [i, v] : t) r.t.push_back({i, v * c});
    return r;
}

SparseVec SparseVec::plus(const SparseVec& o) const {
    SparseVec r;
    size_t a = 0, b = 0;
    while (a < t.size() || b < o.t.size()) {
        if (b == o.t.size() || (a < t.size() && t[a].first < o.t[b].first)) {
            r.t.push_back(t[a++]);
        } else if (a == t.size() || o.t[b].first < t[a].first) {
            r.t.push_back(o.t[b++]);
        } else {
            Scalar s = t[a].second + o.t[b].second;
            if (!s.is_zero()) r.t.push_back({t[a].first, s});
            ++a;
            ++b;
        }
    }
    return r;
}

Scalar SparseVec::at(int i, Field f) const {
    auto it = std::lower_bound(t.begin(), t.end(), i,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != t.end() && it->first == i) return it->second;
    return Scalar::zero(f);
}

int SparseVec::max_index() const { return t.empty() ? -1 : t.back().first; }

// ---------------------------------------------------------------- SparseMatrix

void SparseMatrix::set(int r, int c, const Scalar& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw error("SparseMatrix: index out of range");
    auto& row = row_[r].t;
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != row.end() && it->first == c) {
        if (v.is_zero()) row.erase(it);
        else it->second = v;
    } else if (!v.is_zero()) {
        row.insert(it, {c, v});
    }
}

void SparseMatrix::add(int r, int c, const Scalar& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw error("SparseMatrix: index out of range");
    row_[r].add_term(c, v);
}

Scalar SparseMatrix::get(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw error("SparseMatrix: index out of range");
    return row_[r].at(c, field_);
}

bool SparseMatrix::is_zero() const {
    for (auto& r : row_)
        if (!r.is_zero()) return false;
    return true;
}

int SparseMatrix::nnz() const {
    int n = 0;
    for (auto& r : row_) n += (int)r.t.size();
    return n;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
    SparseVec r;
    for (int i = 0; i < rows_; ++i) {
        Scalar acc = Scalar::zero(field_);
        size_t a = 0, b = 0;
        const auto& rw = row_[i].t;
        while (a < rw.size() && b < v.t.size()) {
            if (rw[a].first < v.t[b].first) ++a;
            else if (v.t[b].first < rw[a].first) ++b;
            else { acc = acc + rw[a].second * v.t[b].second; ++a; ++b; }
        }
        if (!acc.is_zero()) r.t.push_back({i, acc});
    }
    return r;
}

std::vector<Scalar> SparseMatrix::apply_dense(const std::vector<Scalar>& v) const {
    if ((int)v.size() != cols_) throw error("apply_dense: size mismatch");
    std::vector<Scalar> r(rows_, Scalar::zero(field_));
    for (int i = 0; i < rows_; ++i)
        for (auto& [j, c] : row_[i].t) r[i] = r[i] + c * v[j];
    return r;
}

SparseMatrix SparseMatrix::times(const SparseMatrix& o) const {
    if (cols_ != o.rows_) throw error("matrix product: shape mismatch");
    SparseMatrix r(rows_, o.cols_, field_);
    for (int i = 0; i < rows_; ++i) {
        std::map<int, Scalar> acc;
        for (auto& [k, a] : row_[i].t)
            for (auto& [j, b] : o.row_[k].t) {
                auto it = acc.find(j);
                if (it == acc.end()) acc.emplace(j, a * b);
                else it->second = it->second + a * b;
            }
        for (auto& [j, v] : acc)
            if (!v.is_zero()) r.row_[i].t.push_back({j, v});
    }
    return r;
}

SparseMatrix SparseMatrix::plus(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix sum: shape mismatch");
    SparseMatrix r(rows_, cols_, field_);
    for (int i = 0; i < rows_; ++i) r.row_[i] = row_[i].plus(o.row_[i]);
    return r;
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
    SparseMatrix r(rows_, cols_, field_);
    for (int i = 0; i < rows_; ++i) r.row_[i] = row_[i].scaled(c);
    return r;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix r(cols_, rows_, field_);
    for (int i = 0; i < rows_; ++i)
        for (auto& [j, v] : row_[i].t) r.row_[j].t.push_back({i, v});
    return r;
}

int SparseMatrix::rank() const {
    RowSpan span(field_, false);
    for (int i = 0; i < rows_; ++i) span.insert(row_[i]);
    return span.rank();
}

std::vector<SparseVec> SparseMatrix::kernel_basis() const {
    // Row-reduce, track pivots; free columns yield kernel vectors.
    std::vector<SparseVec> rows;
    std::vector<int> pivot_of_row;
    for (int i = 0; i < rows_; ++i) {
        SparseVec v = row_[i];
        for (size_t k = 0; k < rows.size(); ++k) {
            Scalar c = v.at(pivot_of_row[k], field_);
            if (!c.is_zero()) v = v.plus(rows[k].scaled(-c));
        }
        if (v.is_zero()) continue;
        int p = v.t.front().first;
        v = v.scaled(v.t.front().second.inverse());
        // back-substitute into existing rows
        for (size_t k = 0; k < rows.size(); ++k) {
            Scalar c = rows[k].at(p, field_);
            if (!c.is_zero()) rows[k] = rows[k].plus(v.scaled(-c));
        }
        rows.push_back(v);
        pivot_of_row.push_back(p);
    }
    std::vector<bool> is_pivot(cols_, false);
    for (int p : pivot_of_row) is_pivot[p] = true;
    std::vector<SparseVec> kernel;
    for (int j = 0; j < cols_; ++j) {
        if (is_pivot[j]) continue;
        SparseVec v;
        v.add_term(j, Scalar::one(field_));
        for (size_t k = 0; k < rows.size(); ++k) {
            Scalar c = rows[k].at(j, field_);
            if (!c.is_zero()) v.add_term(pivot_of_row[k], -c);
        }
        kernel.push_back(v);
    }
    return kernel;
}

std::optional<std::vector<Scalar>> SparseMatrix::solve(const std::vector<Scalar>& b) const {
    if ((int)b.size() != rows_) throw error("solve: rhs size mismatch");
    // Reduce the transpose-augmented system: operate on columns as rows.
    SparseMatrix at = transpose();          // cols_ x rows_
    RowSpan span(field_);
    for (int j = 0; j < cols_; ++j) span.insert(at.row(j));
    SparseVec bv;
    for (int i = 0; i < rows_; ++i)
        if (!b[i].is_zero()) bv.t.push_back({i, b[i]});
    auto expr = span.express(bv);
    if (!expr) return std::nullopt;
    // generator index == column index (insert() numbers every call)
    std::vector<Scalar> x(cols_, Scalar::zero(field_));
    for (auto& [j, c] : *expr) x[j] = c;
    return x;
}

// ---------------------------------------------------------------- RowSpan

SparseVec RowSpan::reduce(const SparseVec& v, std::vector<std::pair<int, Scalar>>* coords) const {
    if (coords && !track_) throw error("RowSpan: coordinates were not tracked");
    SparseVec r = v;
    std::map<int, Scalar> used;
    for (auto& row : rows_) {
        Scalar c = r.at(row.pivot, field_);
        if (c.is_zero()) continue;
        r = r.plus(row.vec.scaled(-c));
        if (coords)
            for (auto& [g, rc] : row.coords) {
                auto it = used.find(g);
                if (it == used.end()) used.emplace(g, c * rc);
                else it->second = it->second + c * rc;
            }
    }
    if (coords) {
        coords->clear();
        for (auto& [g, c] : used)
            if (!c.is_zero()) coords->push_back({g, c});
    }
    return r;
}

bool RowSpan::insert(const SparseVec& v) {
    std::vector<std::pair<int, Scalar>> coords;
    SparseVec r = reduce(v, track_ ? &coords : nullptr);
    int self = n_inserted_++;
    if (r.is_zero()) return false;
    Scalar lead = r.t.front().second;
    Row row;
    row.pivot = r.t.front().first;
    row.vec = r.scaled(lead.inverse());
    if (track_) {
        // residual = v - sum coords, so the normalized row expresses as
        // (v - sum coords)/lead over the generators
        row.coords.push_back({self, lead.inverse()});
        for (auto& [g, c] : coords) row.coords.push_back({g, -(c * lead.inverse())});
    }
    auto it = std::lower_bound(rows_.begin(), rows_.end(), row.pivot,
                               [](const Row& a, int p) { return a.pivot < p; });
    rows_.insert(it, std::move(row));
    return true;
}

bool RowSpan::contains(const SparseVec& v) const { return reduce(v).is_zero(); }

std::optional<std::vector<std::pair<int, Scalar>>> RowSpan::express(const SparseVec& v) const {
    std::vector<std::pair<int, Scalar>> coords;
    SparseVec r = reduce(v, &coords);
    if (!r.is_zero()) return std::nullopt;
    return coords;
}

}  // namespace dgq
