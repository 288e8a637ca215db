#include "dgq/dgcat.hpp"

#include <algorithm>
#include <sstream>

namespace dgq {

const GradedVec TableCat::kZero;

std::string ValidationReport::summary() const {
    if (ok()) return "valid";
    std::ostringstream os;
    os << issues.size() << " issue(s):";
    for (auto& i : issues) os << "\n  [" << i.kind << "] " << i.detail;
    return os.str();
}

// ---------------------------------------------------------------- TableCat

int TableCat::object_index(const std::string& name) const {
    for (int i = 0; i < (int)objects_.size(); ++i)
        if (objects_[i] == name) return i;
    throw error("unknown object '" + name + "'");
}

int TableCat::add_object(const std::string& name) {
    objects_.push_back(name);
    units_.push_back(GradedVec{});
    return (int)objects_.size() - 1;
}

Complex& TableCat::hom(int src, int tgt) {
    auto key = std::make_pair(src, tgt);
    auto it = hom_.find(key);
    if (it == hom_.end()) it = hom_.emplace(key, Complex(field_)).first;
    return it->second;
}

const Complex& TableCat::hom(int src, int tgt) const {
    auto it = hom_.find({src, tgt});
    if (it == hom_.end()) {
        static thread_local std::map<Field::Kind, Complex> empties;
        auto e = empties.find(field_.kind);
        if (e == empties.end()) e = empties.emplace(field_.kind, Complex(field_)).first;
        return e->second;
    }
    return it->second;
}

void TableCat::set_comp(int src, int mid, int tgt, Pos g, Pos f, const GradedVec& gf) {
    if (gf.is_zero()) return;
    comp_[{src, mid, tgt, g, f}] = gf;
}

const GradedVec& TableCat::comp(int src, int mid, int tgt, Pos g, Pos f) const {
    auto it = comp_.find({src, mid, tgt, g, f});
    return it == comp_.end() ? kZero : it->second;
}

void TableCat::set_unit(int obj, const GradedVec& u) { units_.at(obj) = u; }
const GradedVec& TableCat::unit(int obj) const { return units_.at(obj); }

Mor TableCat::unit_mor(int obj) const { return Mor{obj, obj, units_.at(obj)}; }

Mor TableCat::zero_mor(int src, int tgt) const { return Mor{src, tgt, {}}; }

Mor TableCat::basis_mor(int src, int tgt, Pos p) const {
    Mor m{src, tgt, {}};
    m.v.add(p, Scalar::one(field_));
    return m;
}

Mor TableCat::compose(const Mor& g, const Mor& f) const {
    if (f.tgt != g.src) throw error("compose: morphisms not composable");
    Mor r{f.src, g.tgt, {}};
    for (auto& [pg, cg] : g.v.c)
        for (auto& [pf, cf] : f.v.c) {
            const GradedVec& gv = comp(f.src, f.tgt, g.tgt, pg, pf);
            if (gv.is_zero()) continue;
            Scalar c = cg * cf;
            for (auto& [p, s] : gv.c) r.v.add(p, s * c);
        }
    return r;
}

Mor TableCat::d(const Mor& m) const {
    return Mor{m.src, m.tgt, hom(m.src, m.tgt).apply_d(m.v)};
}

Mor TableCat::scale(const Mor& m, const Scalar& c) const { return Mor{m.src, m.tgt, m.v.scaled(c)}; }

Mor TableCat::add(const Mor& a, const Mor& b) const {
    if (a.src != b.src || a.tgt != b.tgt) throw error("add: hom mismatch");
    return Mor{a.src, a.tgt, a.v.plus(b.v)};
}

ValidationReport TableCat::validate() const {
    ValidationReport rep;
    auto note = [&](const std::string& kind, const std::string& detail) {
        rep.issues.push_back({kind, detail});
    };
    Scalar one = Scalar::one(field_);

    for (auto& [key, cx] : hom_) {
        std::string w;
        if (!cx.d_squared_zero(&w))
            note("d2", "Hom(" + objects_[key.first] + "," + objects_[key.second] + "): " + w);
    }
    // composition degrees
    for (auto& [key, gv] : comp_) {
        auto [x, y, z, pg, pf] = key;
        (void)x; (void)y; (void)z;
        auto d = gv.degree();
        if (d && *d != pg.first + pf.first)
            note("degree", "composition of degrees " + std::to_string(pg.first) + "," +
                               std::to_string(pf.first) + " lands in degree " + std::to_string(*d));
    }
    // units
    for (int x = 0; x < n_objects(); ++x) {
        const GradedVec& u = units_[x];
        for (auto& [p, c] : u.c)
            if (p.first != 0) note("unit", objects_[x] + ": unit has a degree != 0 component");
        Mor um{x, x, u};
        if (!d(um).is_zero()) note("unit", objects_[x] + ": d(id) != 0");
        for (int y = 0; y < n_objects(); ++y) {
            const Complex& h = hom(x, y);
            for (int n : h.degrees())
                for (int i = 0; i < h.dim(n); ++i) {
                    Mor f = basis_mor(x, y, {n, i});
                    Mor lf = compose(unit_mor(y), f);
                    Mor rf = compose(f, unit_mor(x));
                    if (!add(lf, scale(f, Scalar(field_, -1))).is_zero())
                        note("unit", "id_" + objects_[y] + " ° " + h.labels(n)[i] + " != " +
                                         h.labels(n)[i]);
                    if (!add(rf, scale(f, Scalar(field_, -1))).is_zero())
                        note("unit", h.labels(n)[i] + " ° id_" + objects_[x] + " != " +
                                         h.labels(n)[i]);
                }
        }
    }
    // Leibniz on basis pairs
    for (int x = 0; x < n_objects(); ++x)
        for (int y = 0; y < n_objects(); ++y)
            for (int z = 0; z < n_objects(); ++z) {
                const Complex& hf = hom(x, y);
                const Complex& hg = hom(y, z);
                for (int ng : hg.degrees())
                    for (int ig = 0; ig < hg.dim(ng); ++ig)
                        for (int nf : hf.degrees())
                            for (int jf = 0; jf < hf.dim(nf); ++jf) {
                                Mor g = basis_mor(y, z, {ng, ig});
                                Mor f = basis_mor(x, y, {nf, jf});
                                Mor lhs = d(compose(g, f));
                                Scalar sg = ng % 2 == 0 ? one : Scalar(field_, -1);
                                Mor rhs = add(compose(d(g), f), scale(compose(g, d(f)), sg));
                                if (!add(lhs, scale(rhs, Scalar(field_, -1))).is_zero()) {
                                    note("leibniz", "d(" + hg.labels(ng)[ig] + " ° " +
                                                        hf.labels(nf)[jf] + ") violates Leibniz");
                                }
                            }
            }
    // associativity on basis triples
    for (int x = 0; x < n_objects(); ++x)
        for (int y = 0; y < n_objects(); ++y)
            for (int z = 0; z < n_objects(); ++z)
                for (int w = 0; w < n_objects(); ++w) {
                    const Complex& hf = hom(x, y);
                    const Complex& hg = hom(y, z);
                    const Complex& hh = hom(z, w);
                    for (int nh : hh.degrees())
                        for (int ih = 0; ih < hh.dim(nh); ++ih)
                            for (int ng : hg.degrees())
                                for (int ig = 0; ig < hg.dim(ng); ++ig)
                                    for (int nf : hf.degrees())
                                        for (int jf = 0; jf < hf.dim(nf); ++jf) {
                                            Mor h = basis_mor(z, w, {nh, ih});
                                            Mor g = basis_mor(y, z, {ng, ig});
                                            Mor f = basis_mor(x, y, {nf, jf});
                                            Mor a = compose(compose(h, g), f);
                                            Mor b = compose(h, compose(g, f));
                                            if (!add(a, scale(b, Scalar(field_, -1))).is_zero())
                                                note("assoc",
                                                     "(" + hh.labels(nh)[ih] + " ° " +
                                                         hg.labels(ng)[ig] + ") ° " +
                                                         hf.labels(nf)[jf] + " != h ° (g ° f)");
                                        }
                }
    return rep;
}

std::map<int, int> TableCat::ext_table(int x, int y, int lo, int hi) const {
    return cohomology_table(hom(x, y), lo, hi);
}

// ---------------------------------------------------------------- opposite

TableCat opposite(const TableCat& a) {
    TableCat r(a.field());
    for (auto& name : a.objects()) r.add_object(name + "");
    for (int x = 0; x < a.n_objects(); ++x)
        for (int y = 0; y < a.n_objects(); ++y) {
            const Complex& h = a.hom(y, x);
            Complex& rh = r.hom(x, y);
            for (int n : h.degrees())
                for (int i = 0; i < h.dim(n); ++i) rh.add_basis(n, h.labels(n)[i]);
            for (int n : h.degrees()) {
                SparseMatrix d = h.d(n);
                if (d.rows() && d.cols()) rh.set_d(n, d);
            }
        }
    for (int x = 0; x < a.n_objects(); ++x) r.set_unit(x, a.unit(x));
    // g° ° f° = (-1)^{|f||g|} (f ° g)°, for f°: x->y (f: y->x), g°: y->z (g: z->y)
    for (int x = 0; x < a.n_objects(); ++x)
        for (int y = 0; y < a.n_objects(); ++y)
            for (int z = 0; z < a.n_objects(); ++z) {
                const Complex& hf = a.hom(y, x);   // f° in Hom°(x,y)
                const Complex& hg = a.hom(z, y);   // g° in Hom°(y,z)
                for (int ng : hg.degrees())
                    for (int ig = 0; ig < hg.dim(ng); ++ig)
                        for (int nf : hf.degrees())
                            for (int jf = 0; jf < hf.dim(nf); ++jf) {
                                Mor f = a.basis_mor(y, x, {nf, jf});
                                Mor g = a.basis_mor(z, y, {ng, ig});
                                Mor fg = a.compose(f, g);   // z -> x in a
                                if (fg.is_zero()) continue;
                                Scalar sgn = (ng * nf) % 2 == 0 ? Scalar::one(a.field())
                                                                : Scalar(a.field(), -1);
                                r.set_comp(x, y, z, {ng, ig}, {nf, jf}, fg.v.scaled(sgn));
                            }
            }
    return r;
}

// ---------------------------------------------------------------- tensor

namespace {
// rebuilds the basis index map of tensor_complex (same enumeration order)
std::map<std::tuple<int, int, int, int>, Pos> tensor_index(const Complex& a, const Complex& b) {
    std::map<std::tuple<int, int, int, int>, Pos> ix;
    std::map<int, int> counts;
    for (int p : a.degrees())
        for (int q : b.degrees())
            for (int i = 0; i < a.dim(p); ++i)
                for (int j = 0; j < b.dim(q); ++j) {
                    int n = p + q;
                    ix[{p, i, q, j}] = {n, counts[n]++};
                }
    return ix;
}
}  // namespace

TableCat tensor_categories(const TableCat& a, const TableCat& b) {
    if (a.field() != b.field()) throw error("tensor_categories: field mismatch");
    TableCat r(a.field());
    int nb = b.n_objects();
    auto oi = [&](int i, int j) { return i * nb + j; };
    for (int i = 0; i < a.n_objects(); ++i)
        for (int j = 0; j < nb; ++j) r.add_object(a.objects()[i] + "(x)" + b.objects()[j]);

    std::map<std::pair<int, int>, std::map<std::tuple<int, int, int, int>, Pos>> index;
    for (int x = 0; x < r.n_objects(); ++x)
        for (int y = 0; y < r.n_objects(); ++y) {
            int xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb;
            const Complex& ha = a.hom(xa, ya);
            const Complex& hb = b.hom(xb, yb);
            r.hom(x, y) = tensor_complex(ha, hb);
            index[{x, y}] = tensor_index(ha, hb);
        }
    // units
    for (int x = 0; x < r.n_objects(); ++x) {
        int xa = x / nb, xb = x % nb;
        GradedVec u;
        auto& ix = index.at({x, x});
        for (auto& [pa, ca] : a.unit(xa).c)
            for (auto& [pb, cb] : b.unit(xb).c)
                u.add(ix.at({pa.first, pa.second, pb.first, pb.second}), ca * cb);
        r.set_unit(x, u);
    }
    // composition with the Koszul sign: (f1 ⊗ g1)(f2 ⊗ g2) = (-1)^{|g1||f2|} f1f2 ⊗ g1g2
    for (int x = 0; x < r.n_objects(); ++x)
        for (int y = 0; y < r.n_objects(); ++y)
            for (int z = 0; z < r.n_objects(); ++z) {
                int xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb, za = z / nb, zb = z % nb;
                auto& ixy = index.at({x, y});
                auto& iyz = index.at({y, z});
                auto& ixz = index.at({x, z});
                for (auto& [keyg, posg] : iyz)
                    for (auto& [keyf, posf] : ixy) {
                        auto [pg, ig, qg, jg] = keyg;   // f1 at (pg,ig) in a, g1 at (qg,jg) in b
                        auto [pf, if_, qf, jf] = keyf;  // f2, g2
                        Mor f1 = a.basis_mor(ya, za, {pg, ig});
                        Mor f2 = a.basis_mor(xa, ya, {pf, if_});
                        Mor g1 = b.basis_mor(yb, zb, {qg, jg});
                        Mor g2 = b.basis_mor(xb, yb, {qf, jf});
                        Mor ff = a.compose(f1, f2);
                        Mor gg = b.compose(g1, g2);
                        if (ff.is_zero() || gg.is_zero()) continue;
                        Scalar sgn = (qg * pf) % 2 == 0 ? Scalar::one(a.field())
                                                        : Scalar(a.field(), -1);
                        GradedVec out;
                        for (auto& [pa, ca] : ff.v.c)
                            for (auto& [pb, cb] : gg.v.c)
                                out.add(ixz.at({pa.first, pa.second, pb.first, pb.second}),
                                        ca * cb * sgn);
                        r.set_comp(x, y, z, posg, posf, out);
                    }
            }
    return r;
}

// ---------------------------------------------------------------- complexes category

namespace {
std::map<std::tuple<int, int, int, int>, Pos> hom_index(const Complex& a, const Complex& b) {
    std::map<std::tuple<int, int, int, int>, Pos> ix;
    std::map<int, int> counts;
    for (int p : a.degrees())
        for (int q : b.degrees())
            for (int i = 0; i < a.dim(p); ++i)
                for (int j = 0; j < b.dim(q); ++j) {
                    int n = q - p;
                    ix[{p, i, q, j}] = {n, counts[n]++};
                }
    return ix;
}
}  // namespace

TableCat category_of_complexes(Field f, const std::vector<std::string>& names,
                               const std::vector<Complex>& objs) {
    if (names.size() != objs.size()) throw error("category_of_complexes: size mismatch");
    TableCat r(f);
    for (auto& n : names) r.add_object(n);
    std::map<std::pair<int, int>, std::map<std::tuple<int, int, int, int>, Pos>> index;
    for (int x = 0; x < r.n_objects(); ++x)
        for (int y = 0; y < r.n_objects(); ++y) {
            r.hom(x, y) = hom_complex(objs[x], objs[y]);
            index[{x, y}] = hom_index(objs[x], objs[y]);
        }
    for (int x = 0; x < r.n_objects(); ++x) {
        GradedVec u;
        auto& ix = index.at({x, x});
        for (int p : objs[x].degrees())
            for (int i = 0; i < objs[x].dim(p); ++i) u.add(ix.at({p, i, p, i}), Scalar::one(f));
        r.set_unit(x, u);
    }
    // composition of basis maps: E_{(p,i)->(q,j)} after E_{(p',i')->(q',j')} is
    // nonzero iff (q',j') == (p,i), giving E_{(p',i')->(q,j)}; no sign.
    for (int x = 0; x < r.n_objects(); ++x)
        for (int y = 0; y < r.n_objects(); ++y)
            for (int z = 0; z < r.n_objects(); ++z) {
                auto& ixy = index.at({x, y});
                auto& iyz = index.at({y, z});
                auto& ixz = index.at({x, z});
                for (auto& [keyg, posg] : iyz) {
                    auto [pg, ig, qg, jg] = keyg;
                    for (auto& [keyf, posf] : ixy) {
                        auto [pf, if_, qf, jf] = keyf;
                        if (qf != pg || jf != ig) continue;
                        GradedVec out;
                        out.add(ixz.at({pf, if_, qg, jg}), Scalar::one(f));
                        r.set_comp(x, y, z, posg, posf, out);
                    }
                }
            }
    return r;
}

// ---------------------------------------------------------------- scrambling

namespace {
struct BasisChange {
    // per degree: new basis in terms of old: columns of P are new basis vectors
    std::map<int, SparseMatrix> P, Pinv;
};

SparseMatrix random_invertible(Field f, int n, Rng& rng) {
    // permutation * unitriangular with small entries * nonzero diagonal
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[(int)rng.below(i + 1)]);
    SparseMatrix m(n, n, f);
    for (int j = 0; j < n; ++j) {
        m.set(perm[j], j, rng.scalar(f, 1, f.kind == Field::Kind::Fp ? (long long)f.p - 1 : 3));
        for (int i = 0; i < j; ++i)
            if (rng.below(3) == 0) m.add(perm[i], j, rng.scalar(f, 1, 2));
    }
    return m;
}

SparseMatrix invert(const SparseMatrix& m) {
    int n = m.rows();
    SparseMatrix inv(n, n, m.field());
    for (int j = 0; j < n; ++j) {
        std::vector<Scalar> e(n, Scalar::zero(m.field()));
        e[j] = Scalar::one(m.field());
        auto x = m.solve(e);
        if (!x) throw error("invert: singular matrix");
        for (int i = 0; i < n; ++i)
            if (!(*x)[i].is_zero()) inv.set(i, j, (*x)[i]);
    }
    return inv;
}

GradedVec convert(const GradedVec& v, const std::map<int, SparseMatrix>& Pinv, Field f) {
    // coordinates in old basis -> coordinates in new basis: v' = Pinv v
    GradedVec out;
    std::map<int, SparseVec> per;
    for (auto& [p, c] : v.c) per[p.first].add_term(p.second, c);
    for (auto& [n, vec] : per) {
        auto it = Pinv.find(n);
        if (it == Pinv.end()) {
            for (auto& [i, c] : vec.t) out.add({n, i}, c);
            continue;
        }
        SparseVec nv = it->second.apply(vec);
        for (auto& [i, c] : nv.t) out.add({n, i}, c);
    }
    (void)f;
    return out;
}
}  // namespace

TableCat scramble_hom_bases(const TableCat& a, uint64_t seed) {
    Rng rng(seed);
    Field f = a.field();
    std::map<std::pair<int, int>, BasisChange> change;
    TableCat r(f);
    for (auto& name : a.objects()) r.add_object(name);
    for (int x = 0; x < a.n_objects(); ++x)
        for (int y = 0; y < a.n_objects(); ++y) {
            const Complex& h = a.hom(x, y);
            BasisChange bc;
            Complex& rh = r.hom(x, y);
            for (int n : h.degrees()) {
                int m = h.dim(n);
                SparseMatrix P = random_invertible(f, m, rng);
                bc.P[n] = P;
                bc.Pinv[n] = invert(P);
                for (int i = 0; i < m; ++i) rh.add_basis(n, h.labels(n)[i] + "~");
            }
            // d' = Pinv_{n+1} d P_n
            for (int n : h.degrees()) {
                SparseMatrix d = h.d(n);
                if (d.rows() == 0 || d.cols() == 0) continue;
                SparseMatrix left = bc.Pinv.count(n + 1) ? bc.Pinv[n + 1]
                                                         : SparseMatrix(0, 0, f);
                SparseMatrix nd = d.times(bc.P[n]);
                if (left.rows()) nd = left.times(nd);
                rh.set_d(n, nd);
            }
            change[{x, y}] = std::move(bc);
        }
    for (int x = 0; x < a.n_objects(); ++x)
        r.set_unit(x, convert(a.unit(x), change[{x, x}].Pinv, f));
    // comp'(g', f') = Pinv(comp(P g', P f'))
    for (int x = 0; x < a.n_objects(); ++x)
        for (int y = 0; y < a.n_objects(); ++y)
            for (int z = 0; z < a.n_objects(); ++z) {
                const Complex& hf = a.hom(x, y);
                const Complex& hg = a.hom(y, z);
                auto& bcf = change[{x, y}];
                auto& bcg = change[{y, z}];
                auto& bco = change[{x, z}];
                for (int ng : hg.degrees())
                    for (int ig = 0; ig < hg.dim(ng); ++ig)
                        for (int nf : hf.degrees())
                            for (int jf = 0; jf < hf.dim(nf); ++jf) {
                                // new basis element (ng, ig) = P column ig in old coords
                                Mor g{y, z, {}};
                                for (int i2 = 0; i2 < hg.dim(ng); ++i2) {
                                    Scalar c = bcg.P[ng].get(i2, ig);
                                    if (!c.is_zero()) g.v.add({ng, i2}, c);
                                }
                                Mor fm{x, y, {}};
                                for (int i2 = 0; i2 < hf.dim(nf); ++i2) {
                                    Scalar c = bcf.P[nf].get(i2, jf);
                                    if (!c.is_zero()) fm.v.add({nf, i2}, c);
                                }
                                Mor gf = a.compose(g, fm);
                                if (gf.is_zero()) continue;
                                GradedVec out = convert(gf.v, bco.Pinv, f);
                                r.set_comp(x, y, z, {ng, ig}, {nf, jf}, out);
                            }
            }
    return r;
}

// ---------------------------------------------------------------- random categories

TableCat random_table_category(Field f, uint64_t seed, const RandomCatSpec& spec) {
    Rng rng(seed);
    std::vector<Complex> objs;
    std::vector<std::string> names;
    for (int i = 0; i < spec.n_objects; ++i) {
        int mode = i == spec.n_objects - 1 ? spec.last_mode : 0;
        if (mode == 3) mode = rng.below(2) ? 1 : 2;
        for (int attempt = 0;; ++attempt) {
            int d0, d1;
            if (mode == 1) {
                d0 = 1;
                d1 = 1;
            } else if (mode == 2) {
                d0 = rng.below(2) ? 1 : 0;
                d1 = 1 - d0;
            } else {
                d0 = (int)rng.below(3);
                d1 = (int)rng.below(3 - (d0 == 2 ? 1 : 0));
                if (d0 + d1 == 0) d0 = 1;
            }
            Complex c(f);
            for (int k = 0; k < d0; ++k) c.add_basis(0, "v" + std::to_string(i) + "_" + std::to_string(k));
            for (int k = 0; k < d1; ++k) c.add_basis(1, "w" + std::to_string(i) + "_" + std::to_string(k));
            if (mode == 1) {
                c.add_d_entry(0, 0, 0, Scalar::one(f));
            } else if (mode != 2) {
                for (int r2 = 0; r2 < d1; ++r2)
                    for (int c2 = 0; c2 < d0; ++c2)
                        if (rng.below(2)) c.add_d_entry(0, r2, c2, rng.scalar(f, 1, 4));
            }
            // enforce pairwise Hom dimension bounds
            bool ok = true;
            for (auto& prev : objs) {
                Complex h1 = hom_complex(prev, c), h2 = hom_complex(c, prev);
                for (int n = -1; n <= 1; ++n)
                    if (h1.dim(n) > spec.max_hom_dim_per_degree ||
                        h2.dim(n) > spec.max_hom_dim_per_degree)
                        ok = false;
            }
            Complex self = hom_complex(c, c);
            for (int n = -1; n <= 1; ++n)
                if (self.dim(n) > spec.max_hom_dim_per_degree) ok = false;
            if (ok || attempt > 50) {
                objs.push_back(c);
                names.push_back("O" + std::to_string(i));
                break;
            }
        }
    }
    TableCat cat = category_of_complexes(f, names, objs);
    if (spec.scramble) cat = scramble_hom_bases(cat, seed * 2 + 1);
    return cat;
}

// ---------------------------------------------------------------- functors

Mor TableFunctor::apply(const Mor& m) const {
    Mor r{obj.at(m.src), obj.at(m.tgt), {}};
    for (auto& [p, c] : m.v.c) {
        auto it = gen_image.find({m.src, m.tgt, p});
        if (it == gen_image.end()) continue;   // image zero
        for (auto& [q, s] : it->second.v.c) r.v.add(q, s * c);
    }
    return r;
}

ValidationReport TableFunctor::validate() const {
    ValidationReport rep;
    auto note = [&](const std::string& kind, const std::string& detail) {
        rep.issues.push_back({kind, detail});
    };
    const TableCat& A = *source;
    const TableCat& C = *target;
    for (int x = 0; x < A.n_objects(); ++x)
        if (obj.at(x) < 0 || obj.at(x) >= C.n_objects()) note("object", "object map out of range");
    // degrees + differentials per basis element
    for (int x = 0; x < A.n_objects(); ++x)
        for (int y = 0; y < A.n_objects(); ++y) {
            const Complex& h = A.hom(x, y);
            for (int n : h.degrees())
                for (int i = 0; i < h.dim(n); ++i) {
                    Mor f = A.basis_mor(x, y, {n, i});
                    Mor img = apply(f);
                    auto dg = img.degree();
                    if (dg && *dg != n)
                        note("degree", h.labels(n)[i] + ": image degree " + std::to_string(*dg));
                    Mor lhs = apply(A.d(f));
                    Mor rhs = C.d(img);
                    if (!C.add(lhs, C.scale(rhs, Scalar(C.field(), -1))).is_zero())
                        note("differential", h.labels(n)[i] + ": F(df) != d F(f)");
                }
        }
    // units
    for (int x = 0; x < A.n_objects(); ++x) {
        Mor u = apply(A.unit_mor(x));
        Mor cu = C.unit_mor(obj.at(x));
        if (!C.add(u, C.scale(cu, Scalar(C.field(), -1))).is_zero())
            note("unit", A.objects()[x] + ": F(id) != id");
    }
    // composition on basis pairs
    for (int x = 0; x < A.n_objects(); ++x)
        for (int y = 0; y < A.n_objects(); ++y)
            for (int z = 0; z < A.n_objects(); ++z) {
                const Complex& hf = A.hom(x, y);
                const Complex& hg = A.hom(y, z);
                for (int ng : hg.degrees())
                    for (int ig = 0; ig < hg.dim(ng); ++ig)
                        for (int nf : hf.degrees())
                            for (int jf = 0; jf < hf.dim(nf); ++jf) {
                                Mor g = A.basis_mor(y, z, {ng, ig});
                                Mor f = A.basis_mor(x, y, {nf, jf});
                                Mor lhs = apply(A.compose(g, f));
                                Mor rhs = C.compose(apply(g), apply(f));
                                if (!C.add(lhs, C.scale(rhs, Scalar(C.field(), -1))).is_zero())
                                    note("composition", "F(" + hg.labels(ng)[ig] + " ° " +
                                                            hf.labels(nf)[jf] + ") mismatch");
                            }
            }
    return rep;
}

TableFunctor identity_functor(const TableCat& a) {
    TableFunctor F;
    F.source = &a;
    F.target = &a;
    for (int x = 0; x < a.n_objects(); ++x) F.obj.push_back(x);
    for (int x = 0; x < a.n_objects(); ++x)
        for (int y = 0; y < a.n_objects(); ++y) {
            const Complex& h = a.hom(x, y);
            for (int n : h.degrees())
                for (int i = 0; i < h.dim(n); ++i)
                    F.gen_image[{x, y, {n, i}}] = a.basis_mor(x, y, {n, i});
        }
    return F;
}

TableCat full_subcategory(const TableCat& a, const std::vector<int>& objs) {
    TableCat r(a.field());
    for (int x : objs) r.add_object(a.objects()[x]);
    for (size_t i = 0; i < objs.size(); ++i)
        for (size_t j = 0; j < objs.size(); ++j) r.hom((int)i, (int)j) = a.hom(objs[i], objs[j]);
    for (size_t i = 0; i < objs.size(); ++i) r.set_unit((int)i, a.unit(objs[i]));
    for (size_t i = 0; i < objs.size(); ++i)
        for (size_t j = 0; j < objs.size(); ++j)
            for (size_t k = 0; k < objs.size(); ++k) {
                const Complex& hf = a.hom(objs[i], objs[j]);
                const Complex& hg = a.hom(objs[j], objs[k]);
                for (int ng : hg.degrees())
                    for (int ig = 0; ig < hg.dim(ng); ++ig)
                        for (int nf : hf.degrees())
                            for (int jf = 0; jf < hf.dim(nf); ++jf) {
                                const GradedVec& gv =
                                    a.comp(objs[i], objs[j], objs[k], {ng, ig}, {nf, jf});
                                if (!gv.is_zero())
                                    r.set_comp((int)i, (int)j, (int)k, {ng, ig}, {nf, jf}, gv);
                            }
            }
    return r;
}

TableFunctor full_subcategory_inclusion(const TableCat& sub, const TableCat& amb,
                                        const std::vector<int>& objs) {
    TableFunctor F;
    F.source = &sub;
    F.target = &amb;
    for (int x : objs) F.obj.push_back(x);
    for (int x = 0; x < sub.n_objects(); ++x)
        for (int y = 0; y < sub.n_objects(); ++y) {
            const Complex& h = sub.hom(x, y);
            for (int n : h.degrees())
                for (int i = 0; i < h.dim(n); ++i)
                    F.gen_image[{x, y, {n, i}}] = amb.basis_mor(objs[x], objs[y], {n, i});
        }
    return F;
}

// ---------------------------------------------------------------- quasi-equivalence

namespace {

// H^0 classes of Hom(x, y) as morphisms
std::vector<Mor> h0_classes(const TableCat& c, int x, int y) {
    const Complex& h = c.hom(x, y);
    Cohomology h0 = cohomology(h, 0);
    std::vector<Mor> out;
    for (auto& rep : h0.reps) {
        Mor m{x, y, {}};
        for (auto& [i, s] : rep.t) m.v.add({0, i}, s);
        out.push_back(m);
    }
    return out;
}

// solve sum_j mu_j [v_j ° u] = [target class of w] in H^0(Hom(x, z))
bool solvable_left(const TableCat& c, const std::vector<Mor>& vs, const Mor& u, const Mor& w) {
    const Complex& hz = c.hom(u.src, w.tgt);
    Cohomology h0 = cohomology(hz, 0);
    SparseMatrix A(h0.dim, (int)vs.size(), c.field());
    for (size_t j = 0; j < vs.size(); ++j) {
        Mor vu = c.compose(vs[j], u);
        SparseVec vec;
        for (auto& [p, s] : vu.v.c) vec.add_term(p.second, s);
        auto coords = class_coords(hz, h0, vec);
        if (!coords) return false;
        for (int i = 0; i < h0.dim; ++i)
            if (!(*coords)[i].is_zero()) A.set(i, (int)j, (*coords)[i]);
    }
    SparseVec wv;
    for (auto& [p, s] : w.v.c) wv.add_term(p.second, s);
    auto wc = class_coords(hz, h0, wv);
    if (!wc) return false;
    return A.solve(*wc).has_value();
}

}  // namespace

bool is_homotopy_iso_class(const TableCat& c, const Mor& u, int lo, int hi) {
    (void)lo;
    (void)hi;
    // [u] iso in Ho(C)  <=>  exists [v] with [v][u] = [id_src] and [u][v'] = [id_tgt];
    // both are linear problems over H^0.
    auto vs = h0_classes(c, u.tgt, u.src);
    if (!solvable_left(c, vs, u, c.unit_mor(u.src))) return false;
    // right inverse: sum mu_j [u ° v_j] = [id_tgt]
    const Complex& hz = c.hom(u.tgt, u.tgt);
    Cohomology h0 = cohomology(hz, 0);
    SparseMatrix A(h0.dim, (int)vs.size(), c.field());
    for (size_t j = 0; j < vs.size(); ++j) {
        Mor uv = c.compose(u, vs[j]);
        SparseVec vec;
        for (auto& [p, s] : uv.v.c) vec.add_term(p.second, s);
        auto coords = class_coords(hz, h0, vec);
        if (!coords) return false;
        for (int i = 0; i < h0.dim; ++i)
            if (!(*coords)[i].is_zero()) A.set(i, (int)j, (*coords)[i]);
    }
    SparseVec idv;
    for (auto& [p, s] : c.unit(u.tgt).c) idv.add_term(p.second, s);
    auto ic = class_coords(hz, h0, idv);
    if (!ic) return false;
    return A.solve(*ic).has_value();
}

QuasiEquivResult check_quasi_equivalence(const TableFunctor& F, int lo, int hi) {
    const TableCat& A = *F.source;
    const TableCat& C = *F.target;
    // full faithfulness on H in the window
    for (int x = 0; x < A.n_objects(); ++x)
        for (int y = 0; y < A.n_objects(); ++y) {
            const Complex& hs = A.hom(x, y);
            const Complex& ht = C.hom(F.obj[x], F.obj[y]);
            for (int n = lo; n <= hi; ++n) {
                Cohomology src = cohomology(hs, n);
                Cohomology tgt = cohomology(ht, n);
                if (src.dim != tgt.dim)
                    return {Verdict::No, "H^" + std::to_string(n) + "(Hom(" + A.objects()[x] +
                                             "," + A.objects()[y] + ")): dims " +
                                             std::to_string(src.dim) + " vs " +
                                             std::to_string(tgt.dim)};
                if (src.dim == 0) continue;
                SparseMatrix M(tgt.dim, src.dim, A.field());
                for (int j = 0; j < src.dim; ++j) {
                    Mor rep{x, y, {}};
                    for (auto& [i, s] : src.reps[j].t) rep.v.add({n, i}, s);
                    Mor img = F.apply(rep);
                    SparseVec vec;
                    for (auto& [p, s] : img.v.c) vec.add_term(p.second, s);
                    auto coords = class_coords(ht, tgt, vec);
                    if (!coords)
                        return {Verdict::No, "image class not a cocycle class (internal)"};
                    for (int i = 0; i < tgt.dim; ++i)
                        if (!(*coords)[i].is_zero()) M.set(i, j, (*coords)[i]);
                }
                if (M.rank() != src.dim)
                    return {Verdict::No, "H^" + std::to_string(n) + "(Hom(" + A.objects()[x] +
                                             "," + A.objects()[y] + ")) not injective"};
            }
        }
    // essential surjectivity: every target object reachable up to homotopy equivalence
    bool all_reached = true;
    std::string pending;
    for (int t = 0; t < C.n_objects(); ++t) {
        bool hit = false;
        for (int x = 0; x < A.n_objects() && !hit; ++x)
            if (F.obj[x] == t) hit = true;
        if (hit) continue;
        // contractible targets are reached by any contractible image object
        bool t_contractible = contracting_homotopy(C.hom(t, t)).has_value();
        for (int x = 0; x < A.n_objects() && !hit; ++x) {
            int fx = F.obj[x];
            if (t_contractible && contracting_homotopy(C.hom(fx, fx)).has_value()) {
                hit = true;
                break;
            }
            for (auto& u : h0_classes(C, fx, t))
                if (is_homotopy_iso_class(C, u, lo, hi)) {
                    hit = true;
                    break;
                }
        }
        if (!hit) {
            // provable failure when no degree-0 classes exist at all and t is not contractible
            bool no_candidates = true;
            for (int x = 0; x < A.n_objects(); ++x) {
                if (cohomology(C.hom(F.obj[x], t), 0).dim > 0 &&
                    cohomology(C.hom(t, F.obj[x]), 0).dim > 0)
                    no_candidates = false;
            }
            if (no_candidates && !t_contractible)
                return {Verdict::No, "object " + C.objects()[t] + " unreachable in Ho"};
            all_reached = false;
            pending = "object " + C.objects()[t] + ": no homotopy equivalence found in bounds";
        }
    }
    if (!all_reached) return {Verdict::Inconclusive, pending};
    return {Verdict::Yes, ""};
}

}  // namespace dgq
