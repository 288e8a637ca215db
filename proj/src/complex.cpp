#include "dgq/complex.hpp"

#include <algorithm>
#include <sstream>

namespace dgq {

const std::vector<std::string> Complex::kEmpty;

// ---------------------------------------------------------------- GradedVec

void GradedVec::add(Pos p, const Scalar& s) {
    if (s.is_zero()) return;
    auto it = c.find(p);
    if (it == c.end()) c.emplace(p, s);
    else {
        it->second = it->second + s;
        if (it->second.is_zero()) c.erase(it);
    }
}

GradedVec GradedVec::plus(const GradedVec& o) const {
    GradedVec r = *this;
    for (auto& [p, s] : o.c) r.add(p, s);
    return r;
}

GradedVec GradedVec::scaled(const Scalar& s) const {
    GradedVec r;
    if (s.is_zero()) return r;
    for (auto& [p, v] : c) r.c.emplace(p, v * s);
    return r;
}

std::optional<int> GradedVec::degree() const {
    if (c.empty()) return std::nullopt;
    int d = c.begin()->first.first;
    for (auto& [p, s] : c)
        if (p.first != d) return std::nullopt;
    return d;
}

// ---------------------------------------------------------------- Complex

int Complex::dim(int n) const {
    auto it = basis_.find(n);
    return it == basis_.end() ? 0 : (int)it->second.size();
}

int Complex::total_dim() const {
    int t = 0;
    for (auto& [n, b] : basis_) t += (int)b.size();
    return t;
}

const std::vector<std::string>& Complex::labels(int n) const {
    auto it = basis_.find(n);
    return it == basis_.end() ? kEmpty : it->second;
}

std::vector<int> Complex::degrees() const {
    std::vector<int> d;
    for (auto& [n, b] : basis_)
        if (!b.empty()) d.push_back(n);
    return d;
}

int Complex::min_degree() const {
    auto d = degrees();
    return d.empty() ? 0 : d.front();
}

int Complex::max_degree() const {
    auto d = degrees();
    return d.empty() ? 0 : d.back();
}

int Complex::add_basis(int degree, const std::string& label) {
    basis_[degree].push_back(label);
    return (int)basis_[degree].size() - 1;
}

void Complex::set_d(int degree, const SparseMatrix& m) {
    if (m.rows() != dim(degree + 1) || m.cols() != dim(degree))
        throw error("Complex::set_d: block shape mismatch");
    d_[degree] = m;
}

SparseMatrix Complex::d(int n) const {
    auto it = d_.find(n);
    if (it != d_.end()) return it->second;
    return SparseMatrix(dim(n + 1), dim(n), field_);
}

void Complex::add_d_entry(int degree, int row, int col, const Scalar& v) {
    auto it = d_.find(degree);
    if (it == d_.end())
        it = d_.emplace(degree, SparseMatrix(dim(degree + 1), dim(degree), field_)).first;
    it->second.add(row, col, v);
}

bool Complex::degree_in_window(int n) const {
    if (!window_) return true;
    return window_->first <= n && n <= window_->second;
}

GradedVec Complex::apply_d(const GradedVec& v) const {
    GradedVec r;
    std::map<int, SparseVec> per_degree;
    for (auto& [p, s] : v.c) per_degree[p.first].add_term(p.second, s);
    for (auto& [n, vec] : per_degree) {
        SparseVec img = d(n).apply(vec);
        for (auto& [i, s] : img.t) r.add({n + 1, i}, s);
    }
    return r;
}

bool Complex::d_squared_zero(std::string* witness) const {
    for (auto& [n, m] : d_) {
        SparseMatrix dd = d(n + 1).times(m);
        if (!dd.is_zero()) {
            if (witness) {
                std::ostringstream os;
                os << "d^2 != 0 from degree " << n;
                *witness = os.str();
            }
            return false;
        }
    }
    return true;
}

std::string Complex::describe() const {
    std::ostringstream os;
    os << "complex over " << field_.name() << ":";
    for (int n : degrees()) os << " [" << n << "]^" << dim(n);
    return os.str();
}

// ---------------------------------------------------------------- cohomology

Cohomology cohomology(const Complex& c, int n) {
    if (auto w = c.window()) {
        if (n - 1 < w->first || n + 1 > w->second)
            throw error("window-insufficient: cohomology at degree " + std::to_string(n) +
                        " needs degrees " + std::to_string(n - 1) + ".." + std::to_string(n + 1));
    }
    Cohomology h;
    h.degree = n;
    auto kernel = c.d(n).kernel_basis();
    SparseMatrix prev = c.d(n - 1);
    RowSpan span(c.field(), false);
    for (int j = 0; j < prev.cols(); ++j) {
        SparseVec col;
        for (int r = 0; r < prev.rows(); ++r) {
            Scalar v = prev.get(r, j);
            if (!v.is_zero()) col.t.push_back({r, v});
        }
        span.insert(col);
    }
    for (auto& z : kernel)
        if (span.insert(z)) {
            h.reps.push_back(z);
            ++h.dim;
        }
    return h;
}

std::map<int, int> cohomology_table(const Complex& c, int lo, int hi) {
    std::map<int, int> t;
    for (int n = lo; n <= hi; ++n) t[n] = cohomology(c, n).dim;
    return t;
}

bool acyclic_in(const Complex& c, int lo, int hi) {
    for (int n = lo; n <= hi; ++n)
        if (cohomology(c, n).dim != 0) return false;
    return true;
}

std::optional<std::vector<Scalar>> class_coords(const Complex& c, const Cohomology& h,
                                                const SparseVec& v) {
    RowSpan span(c.field());
    SparseMatrix prev = c.d(h.degree - 1);
    int nb = prev.cols();
    for (int j = 0; j < nb; ++j) {
        SparseVec col;
        for (int r = 0; r < prev.rows(); ++r) {
            Scalar s = prev.get(r, j);
            if (!s.is_zero()) col.t.push_back({r, s});
        }
        span.insert(col);
    }
    for (auto& rep : h.reps) span.insert(rep);
    auto expr = span.express(v);
    if (!expr) return std::nullopt;
    std::vector<Scalar> coords(h.reps.size(), Scalar::zero(c.field()));
    for (auto& [g, s] : *expr)
        if (g >= nb) coords[g - nb] = s;
    return coords;
}

// ---------------------------------------------------------------- ChainMap

SparseMatrix ChainMap::block(int n) const {
    auto it = blocks.find(n);
    if (it != blocks.end()) return it->second;
    return SparseMatrix(target->dim(n + offset), source->dim(n), source->field());
}

GradedVec ChainMap::apply(const GradedVec& v) const {
    GradedVec r;
    std::map<int, SparseVec> per_degree;
    for (auto& [p, s] : v.c) per_degree[p.first].add_term(p.second, s);
    for (auto& [n, vec] : per_degree) {
        SparseVec img = block(n).apply(vec);
        for (auto& [i, s] : img.t) r.add({n + offset, i}, s);
    }
    return r;
}

bool ChainMap::commutes_with_d(std::string* witness) const {
    Scalar sign = offset % 2 == 0 ? Scalar::one(source->field()) : Scalar(source->field(), -1);
    for (int n : source->degrees()) {
        // d_T ° f_n - (-1)^offset f_(n+1) ° d_S  on C^n
        SparseMatrix lhs = target->d(n + offset).times(block(n));
        SparseMatrix rhs = block(n + 1).times(source->d(n)).scaled(sign);
        if (!lhs.plus(rhs.scaled(Scalar(source->field(), -1))).is_zero()) {
            if (witness) *witness = "fails to commute with d at degree " + std::to_string(n);
            return false;
        }
    }
    return true;
}

ChainMap identity_map(const Complex& c) {
    ChainMap f;
    f.source = &c;
    f.target = &c;
    for (int n : c.degrees()) {
        SparseMatrix m(c.dim(n), c.dim(n), c.field());
        for (int i = 0; i < c.dim(n); ++i) m.set(i, i, Scalar::one(c.field()));
        f.blocks[n] = m;
    }
    return f;
}

ChainMap zero_map(const Complex& src, const Complex& tgt) {
    ChainMap f;
    f.source = &src;
    f.target = &tgt;
    return f;
}

// ---------------------------------------------------------------- cone / shift

ConeResult cone_complex(const ChainMap& f) {
    if (f.offset != 0) throw error("cone: map must have degree 0");
    const Complex& X = *f.source;
    const Complex& Y = *f.target;
    if (X.field() != Y.field()) throw error("cone: field mismatch");
    std::string w;
    if (!f.commutes_with_d(&w)) throw error("cone: map is not closed (" + w + ")");

    ConeResult res{Complex(X.field()), {}};
    Complex& C = res.cx;
    // index maps per degree: y-part then shifted x-part
    std::map<int, std::pair<int, int>> sizes;   // degree -> (dimY, dimX[1])
    std::vector<int> all_degrees;
    for (int n : Y.degrees()) all_degrees.push_back(n);
    for (int n : X.degrees()) all_degrees.push_back(n - 1);
    std::sort(all_degrees.begin(), all_degrees.end());
    all_degrees.erase(std::unique(all_degrees.begin(), all_degrees.end()), all_degrees.end());
    for (int n : all_degrees) {
        for (int i = 0; i < Y.dim(n); ++i) {
            C.add_basis(n, "t:" + Y.labels(n)[i]);
            res.origin.push_back({0, n, i});
        }
        for (int i = 0; i < X.dim(n + 1); ++i) {
            C.add_basis(n, "s[1]:" + X.labels(n + 1)[i]);
            res.origin.push_back({1, n + 1, i});
        }
        sizes[n] = {Y.dim(n), X.dim(n + 1)};
    }
    Scalar minus1(X.field(), -1);
    for (int n : all_degrees) {
        auto [dy, dx] = sizes[n];
        int rows = C.dim(n + 1), cols = dy + dx;
        if (rows == 0 || cols == 0) continue;
        SparseMatrix m(rows, cols, X.field());
        int ry = Y.dim(n + 1);
        SparseMatrix dY = Y.d(n);
        for (int i = 0; i < dY.rows(); ++i)
            for (auto& [j, v] : dY.row(i).t) m.add(i, j, v);
        SparseMatrix fb = f.block(n + 1);   // X^{n+1} -> Y^{n+1}
        for (int i = 0; i < fb.rows(); ++i)
            for (auto& [j, v] : fb.row(i).t) m.add(i, dy + j, v);
        SparseMatrix dX = X.d(n + 1);       // X^{n+1} -> X^{n+2}
        for (int i = 0; i < dX.rows(); ++i)
            for (auto& [j, v] : dX.row(i).t) m.add(ry + i, dy + j, minus1 * v);
        C.set_d(n, m);
    }
    if (X.window() && Y.window()) {
        C.set_window(std::max(X.window()->first - 1, Y.window()->first),
                     std::min(X.window()->second - 1, Y.window()->second));
    } else if (X.window()) {
        C.set_window(X.window()->first - 1, X.window()->second - 1);
    } else if (Y.window()) {
        C.set_window(Y.window()->first, Y.window()->second);
    }
    return res;
}

Complex shift_complex(const Complex& c, int n) {
    Complex r(c.field());
    for (int m : c.degrees())
        for (int i = 0; i < c.dim(m); ++i) r.add_basis(m - n, c.labels(m)[i]);
    Scalar sgn = n % 2 == 0 ? Scalar::one(c.field()) : Scalar(c.field(), -1);
    for (int m : c.degrees()) {
        SparseMatrix d = c.d(m);
        if (d.rows() == 0 || d.cols() == 0) continue;
        r.set_d(m - n, d.scaled(sgn));
    }
    if (c.window()) r.set_window(c.window()->first - n, c.window()->second - n);
    return r;
}

Complex tensor_complex(const Complex& a, const Complex& b) {
    if (a.field() != b.field()) throw error("tensor: field mismatch");
    Complex r(a.field());
    // index bookkeeping: (p, i, q, j) -> index in degree p+q
    std::map<std::tuple<int, int, int, int>, int> idx;
    for (int p : a.degrees())
        for (int q : b.degrees())
            for (int i = 0; i < a.dim(p); ++i)
                for (int j = 0; j < b.dim(q); ++j) {
                    int k = r.add_basis(p + q, a.labels(p)[i] + "(x)" + b.labels(q)[j]);
                    idx[{p, i, q, j}] = k;
                }
    Scalar one = Scalar::one(a.field());
    for (auto& [key, col] : idx) {
        auto [p, i, q, j] = key;
        int n = p + q;
        Scalar sgn = p % 2 == 0 ? one : Scalar(a.field(), -1);
        SparseMatrix da = a.d(p);
        for (int r2 = 0; r2 < da.rows(); ++r2) {
            Scalar v = da.get(r2, i);
            if (!v.is_zero()) r.add_d_entry(n, idx.at({p + 1, r2, q, j}), col, v);
        }
        SparseMatrix db = b.d(q);
        for (int r2 = 0; r2 < db.rows(); ++r2) {
            Scalar v = db.get(r2, j);
            if (!v.is_zero()) r.add_d_entry(n, idx.at({p, i, q + 1, r2}), col, sgn * v);
        }
    }
    return r;
}

Complex hom_complex(const Complex& a, const Complex& b) {
    if (a.field() != b.field()) throw error("hom: field mismatch");
    Complex r(a.field());
    // basis element (p, i, q, j) is the map sending a-basis (p, i) to b-basis (q, j)
    std::map<std::tuple<int, int, int, int>, int> ix;
    for (int p : a.degrees())
        for (int q : b.degrees())
            for (int i = 0; i < a.dim(p); ++i)
                for (int j = 0; j < b.dim(q); ++j)
                    ix[{p, i, q, j}] =
                        r.add_basis(q - p, "[" + a.labels(p)[i] + "=>" + b.labels(q)[j] + "]");
    for (auto& [key, col] : ix) {
        auto [p, i, q, j] = key;
        int n = q - p;
        // d_b ° phi
        SparseMatrix db = b.d(q);
        for (int r2 = 0; r2 < db.rows(); ++r2) {
            Scalar v = db.get(r2, j);
            if (!v.is_zero()) r.add_d_entry(n, ix.at({p, i, q + 1, r2}), col, v);
        }
        // -(-1)^n phi ° d_a : contributes at source degree p-1
        Scalar sgn = n % 2 == 0 ? Scalar(a.field(), -1) : Scalar::one(a.field());
        SparseMatrix da = a.d(p - 1);
        for (int s = 0; s < da.cols(); ++s) {
            Scalar v = da.get(i, s);
            if (!v.is_zero()) r.add_d_entry(n, ix.at({p - 1, s, q, j}), col, sgn * v);
        }
    }
    return r;
}

Complex direct_sum(const Complex& a, const Complex& b) {
    if (a.field() != b.field()) throw error("direct_sum: field mismatch");
    Complex r(a.field());
    std::map<int, int> aoff, boff;
    std::vector<int> degs;
    for (int n : a.degrees()) degs.push_back(n);
    for (int n : b.degrees()) degs.push_back(n);
    std::sort(degs.begin(), degs.end());
    degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
    for (int n : degs) {
        aoff[n] = 0;
        for (int i = 0; i < a.dim(n); ++i) r.add_basis(n, a.labels(n)[i]);
        boff[n] = a.dim(n);
        for (int i = 0; i < b.dim(n); ++i) r.add_basis(n, b.labels(n)[i]);
    }
    for (int n : degs) {
        SparseMatrix da = a.d(n);
        for (int i = 0; i < da.rows(); ++i)
            for (auto& [j, v] : da.row(i).t) r.add_d_entry(n, i, j, v);
        SparseMatrix db = b.d(n);
        int ro = a.dim(n + 1), co = boff[n];
        for (int i = 0; i < db.rows(); ++i)
            for (auto& [j, v] : db.row(i).t) r.add_d_entry(n, ro + i, co + j, v);
    }
    return r;
}

Complex quotient_complex(const Complex& c, const std::vector<GradedVec>& sub) {
    return QuotientOfComplex(c, sub).cx();
}

QuotientOfComplex::QuotientOfComplex(const Complex& c, const std::vector<GradedVec>& sub)
    : cx_(c.field()) {
    std::map<int, std::vector<SparseVec>> per_degree;
    for (auto& v : sub) {
        auto d = v.degree();
        if (!d) throw error("QuotientOfComplex: relations must be homogeneous");
        SparseVec s;
        for (auto& [p, x] : v.c) s.add_term(p.second, x);
        per_degree[*d].push_back(s);
    }
    for (int n : c.degrees()) {
        RowSpan span(c.field());
        auto it = per_degree.find(n);
        if (it != per_degree.end())
            for (auto& s : it->second) span.insert(s);
        n_rel_[n] = span.generators_inserted();
        auto& comp = comp_[n];
        for (int j = 0; j < c.dim(n); ++j) {
            SparseVec e;
            e.add_term(j, Scalar::one(c.field()));
            if (span.insert(e)) {
                comp.push_back(j);
                cx_.add_basis(n, c.labels(n)[j]);
            }
        }
        span_.emplace(n, std::move(span));
    }
    for (int n : c.degrees()) {
        auto nx = comp_.find(n + 1);
        if (nx == comp_.end()) continue;
        SparseMatrix d = c.d(n);
        auto& mycomp = comp_[n];
        for (size_t q = 0; q < mycomp.size(); ++q) {
            SparseVec img;
            for (int r = 0; r < d.rows(); ++r) {
                Scalar v = d.get(r, mycomp[q]);
                if (!v.is_zero()) img.t.push_back({r, v});
            }
            GradedVec gv;
            for (auto& [i, s] : img.t) gv.add({n + 1, i}, s);
            GradedVec pp = project(gv);
            for (auto& [p, s] : pp.c) {
                if (p.first != n + 1) throw error("QuotientOfComplex: relations not d-stable");
                cx_.add_d_entry(n, p.second, (int)q, s);
            }
        }
    }
}

const std::vector<int>& QuotientOfComplex::survivors(int degree) const {
    static const std::vector<int> empty;
    auto it = comp_.find(degree);
    return it == comp_.end() ? empty : it->second;
}

GradedVec QuotientOfComplex::project(const GradedVec& v) const {
    GradedVec out;
    std::map<int, SparseVec> per;
    for (auto& [p, c] : v.c) per[p.first].add_term(p.second, c);
    for (auto& [n, vec] : per) {
        auto it = span_.find(n);
        if (it == span_.end()) {
            if (!vec.is_zero()) throw error("QuotientOfComplex: vector outside materialized degrees");
            continue;
        }
        auto expr = it->second.express(vec);
        if (!expr) throw error("QuotientOfComplex: projection failed");
        int nrel = n_rel_.at(n);
        auto& comp = comp_.at(n);
        // generator index g >= nrel corresponds to comp[g - nrel]... generators
        // are numbered by insertion call; standard basis vector j was call nrel + j
        for (auto& [g, s] : *expr) {
            if (g < nrel) continue;
            int j = g - nrel;   // original standard index
            // find quotient position of j
            auto pos = std::lower_bound(comp.begin(), comp.end(), j);
            if (pos == comp.end() || *pos != j)
                throw error("QuotientOfComplex: non-surviving coordinate in expression");
            out.add({n, (int)(pos - comp.begin())}, s);
        }
    }
    return out;
}

// ---------------------------------------------------------------- homotopy solving

std::optional<ChainMap> solve_homotopy(const ChainMap& f) {
    if (f.offset != 0) throw error("solve_homotopy: f must have degree 0");
    const Complex& C = *f.source;
    const Complex& D = *f.target;
    Field k = C.field();
    // unknowns h_n : C^n -> D^{n-1}
    std::map<std::tuple<int, int, int>, int> var;   // (n, row in D^{n-1}, col in C^n)
    int nv = 0;
    for (int n : C.degrees())
        for (int rr = 0; rr < D.dim(n - 1); ++rr)
            for (int cc = 0; cc < C.dim(n); ++cc) var[{n, rr, cc}] = nv++;
    // equations: for each degree n: d_D h_n + h_{n+1} d_C = f_n  on C^n
    std::vector<std::tuple<int, int, int>> eqs;     // (n, row in D^n, col in C^n)
    for (int n : C.degrees())
        for (int rr = 0; rr < D.dim(n); ++rr)
            for (int cc = 0; cc < C.dim(n); ++cc) eqs.push_back({n, rr, cc});
    SparseMatrix A((int)eqs.size(), nv, k);
    std::vector<Scalar> b;
    b.reserve(eqs.size());
    for (size_t e = 0; e < eqs.size(); ++e) {
        auto [n, rr, cc] = eqs[e];
        SparseMatrix dD = D.d(n - 1);
        for (int m = 0; m < D.dim(n - 1); ++m) {
            Scalar v = dD.get(rr, m);
            if (v.is_zero()) continue;
            auto it = var.find({n, m, cc});
            if (it != var.end()) A.add((int)e, it->second, v);
        }
        SparseMatrix dC = C.d(n);
        for (int m = 0; m < C.dim(n + 1); ++m) {
            Scalar v = dC.get(m, cc);
            if (v.is_zero()) continue;
            auto it = var.find({n + 1, rr, m});
            if (it != var.end()) A.add((int)e, it->second, v);
        }
        b.push_back(f.block(n).get(rr, cc));
    }
    auto x = A.solve(b);
    if (!x) return std::nullopt;
    ChainMap h;
    h.source = &C;
    h.target = &D;
    h.offset = -1;
    for (int n : C.degrees()) {
        if (D.dim(n - 1) == 0 || C.dim(n) == 0) continue;
        SparseMatrix m(D.dim(n - 1), C.dim(n), k);
        for (int rr = 0; rr < D.dim(n - 1); ++rr)
            for (int cc = 0; cc < C.dim(n); ++cc) {
                Scalar v = (*x)[var.at({n, rr, cc})];
                if (!v.is_zero()) m.set(rr, cc, v);
            }
        h.blocks[n] = m;
    }
    return h;
}

std::optional<ChainMap> contracting_homotopy(const Complex& c) {
    ChainMap id = identity_map(c);
    return solve_homotopy(id);
}

}  // namespace dgq
