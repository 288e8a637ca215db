#include "dgq/pretr.hpp"

#include <sstream>

namespace dgq {

// ---------------------------------------------------------------- TwistedComplex

int TwistedComplex::add_summand(int obj, int shift) {
    if (obj < 0 || obj >= base_->n_objects()) throw error("twisted complex: bad object");
    summands_.push_back({obj, shift});
    return (int)summands_.size() - 1;
}

void TwistedComplex::set_q(int i, int j, const Mor& m) {
    if (i >= j) throw error("twisted complex: q must be strictly upper triangular");
    if (m.is_zero()) { q_.erase({i, j}); return; }
    if (m.src != object_of(j) || m.tgt != object_of(i))
        throw error("twisted complex: q entry hom mismatch");
    auto deg = m.degree();
    if (!deg || *deg != 1 + shift_of(i) - shift_of(j))
        throw error("twisted complex: q entry must have degree 1 + r_i - r_j");
    q_[{i, j}] = m;
}

Mor TwistedComplex::q(int i, int j) const {
    auto it = q_.find({i, j});
    if (it != q_.end()) return it->second;
    return base_->zero_mor(object_of(j), object_of(i));
}

bool TwistedComplex::mc_holds(std::string* witness) const {
    for (int i = 0; i < n_summands(); ++i)
        for (int j = i + 1; j < n_summands(); ++j) {
            Scalar sgn = shift_of(i) % 2 == 0 ? Scalar::one(base_->field())
                                              : Scalar(base_->field(), -1);
            Mor acc = base_->scale(base_->d(q(i, j)), sgn);
            for (int m = i + 1; m < j; ++m)
                acc = base_->add(acc, base_->compose(q(i, m), q(m, j)));
            if (!acc.is_zero()) {
                if (witness)
                    *witness = "MC fails at entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ")";
                return false;
            }
        }
    return true;
}

std::string TwistedComplex::describe() const {
    std::ostringstream os;
    for (int i = 0; i < n_summands(); ++i) {
        if (i) os << "+";
        os << base_->objects()[object_of(i)];
        if (shift_of(i)) os << "[" << shift_of(i) << "]";
    }
    if (summands_.empty()) os << "0";
    return os.str();
}

TwistedComplex singleton(const TableCat& base, int obj, int shift) {
    TwistedComplex t(&base);
    t.add_summand(obj, shift);
    return t;
}

TwistedComplex shift_twisted(const TwistedComplex& t, int n) {
    TwistedComplex r(&t.base());
    for (int i = 0; i < t.n_summands(); ++i) r.add_summand(t.object_of(i), t.shift_of(i) + n);
    Scalar sgn = n % 2 == 0 ? Scalar::one(t.base().field()) : Scalar(t.base().field(), -1);
    for (int i = 0; i < t.n_summands(); ++i)
        for (int j = i + 1; j < t.n_summands(); ++j) {
            Mor q = t.q(i, j);
            if (!q.is_zero()) r.set_q(i, j, t.base().scale(q, sgn));
        }
    return r;
}

// ---------------------------------------------------------------- TwMor algebra

bool TwMor::is_zero() const {
    for (auto& [k, m] : entry)
        if (!m.is_zero()) return false;
    return true;
}

TwMor tw_zero(const TwistedComplex& src, const TwistedComplex& tgt, int deg) {
    return TwMor{&src, &tgt, deg, {}};
}

TwMor tw_identity(const TwistedComplex& t) {
    TwMor r = tw_zero(t, t, 0);
    for (int i = 0; i < t.n_summands(); ++i) r.entry[{i, i}] = t.base().unit_mor(t.object_of(i));
    return r;
}

namespace {
void drop_zero_entries(TwMor& r) {
    for (auto it = r.entry.begin(); it != r.entry.end();)
        it = it->second.is_zero() ? r.entry.erase(it) : std::next(it);
}
}  // namespace

TwMor tw_add(const TwMor& a, const TwMor& b) {
    if (a.src != b.src || a.tgt != b.tgt || a.deg != b.deg) throw error("tw_add: shape mismatch");
    TwMor r = a;
    const TableCat& cat = a.src->base();
    for (auto& [k, m] : b.entry) {
        auto it = r.entry.find(k);
        if (it == r.entry.end()) r.entry[k] = m;
        else it->second = cat.add(it->second, m);
    }
    drop_zero_entries(r);
    return r;
}

TwMor tw_scale(const TwMor& a, const Scalar& c) {
    TwMor r = a;
    for (auto& [k, m] : r.entry) m = a.src->base().scale(m, c);
    drop_zero_entries(r);
    return r;
}

TwMor tw_compose(const TwMor& g, const TwMor& f) {
    if (f.tgt != g.src) throw error("tw_compose: not composable");
    const TableCat& cat = f.src->base();
    TwMor r = tw_zero(*f.src, *g.tgt, f.deg + g.deg);
    for (auto& [kg, mg] : g.entry)
        for (auto& [kf, mf] : f.entry) {
            if (kg.second != kf.first) continue;
            Mor p = cat.compose(mg, mf);
            if (p.is_zero()) continue;
            auto key = std::make_pair(kg.first, kf.second);
            auto it = r.entry.find(key);
            if (it == r.entry.end()) r.entry[key] = p;
            else it->second = cat.add(it->second, p);
        }
    drop_zero_entries(r);
    return r;
}

TwMor tw_d(const TwMor& f) {
    const TableCat& cat = f.src->base();
    const TwistedComplex& S = *f.src;
    const TwistedComplex& T = *f.tgt;
    TwMor r = tw_zero(S, T, f.deg + 1);
    Scalar minus(cat.field(), -1);
    auto acc = [&](int i, int j, const Mor& m) {
        if (m.is_zero()) return;
        auto key = std::make_pair(i, j);
        auto it = r.entry.find(key);
        if (it == r.entry.end()) r.entry[key] = m;
        else it->second = cat.add(it->second, m);
    };
    // naive part, sign from the target summand shift
    for (auto& [k, m] : f.entry) {
        Scalar sgn = T.shift_of(k.first) % 2 == 0 ? Scalar::one(cat.field()) : minus;
        acc(k.first, k.second, cat.scale(cat.d(m), sgn));
    }
    // q' f
    for (int i = 0; i < T.n_summands(); ++i)
        for (int m2 = i + 1; m2 < T.n_summands(); ++m2) {
            Mor qe = T.q(i, m2);
            if (qe.is_zero()) continue;
            for (auto& [k, mf] : f.entry)
                if (k.first == m2) acc(i, k.second, cat.compose(qe, mf));
        }
    // - (-1)^{deg f} f q
    Scalar s = f.deg % 2 == 0 ? minus : Scalar::one(cat.field());
    for (auto& [k, mf] : f.entry)
        for (int j = k.second + 1; j < S.n_summands(); ++j) {
            Mor qe = S.q(k.second, j);
            if (qe.is_zero()) continue;
            acc(k.first, j, cat.scale(cat.compose(mf, qe), s));
        }
    drop_zero_entries(r);
    return r;
}

// ---------------------------------------------------------------- pretr_hom

GradedVec PretrHom::coords(const TwMor& f) const {
    GradedVec v;
    for (auto& [k, m] : f.entry)
        for (auto& [p, c] : m.v.c) v.add(index.at({k.first, k.second, p}), c);
    return v;
}

TwMor PretrHom::element(const TwistedComplex& src, const TwistedComplex& tgt, int deg,
                        const GradedVec& v) const {
    TwMor f = tw_zero(src, tgt, deg);
    std::map<Pos, std::tuple<int, int, Pos>> rev;
    for (auto& [k, p] : index) rev[p] = k;
    const TableCat& cat = src.base();
    for (auto& [p, c] : v.c) {
        auto [i, j, bp] = rev.at(p);
        auto key = std::make_pair(i, j);
        auto it = f.entry.find(key);
        if (it == f.entry.end()) {
            Mor m = cat.zero_mor(src.object_of(j), tgt.object_of(i));
            m.v.add(bp, c);
            f.entry[key] = m;
        } else {
            it->second.v.add(bp, c);
        }
    }
    return f;
}

PretrHom pretr_hom(const TwistedComplex& src, const TwistedComplex& tgt) {
    if (&src.base() != &tgt.base())
        throw error("pretr_hom: twisted complexes over different bases");
    const TableCat& cat = src.base();
    PretrHom out{Complex(cat.field()), {}};
    for (int i = 0; i < tgt.n_summands(); ++i)
        for (int j = 0; j < src.n_summands(); ++j) {
            const Complex& h = cat.hom(src.object_of(j), tgt.object_of(i));
            for (int n : h.degrees())
                for (int bi = 0; bi < h.dim(n); ++bi) {
                    int l = n - tgt.shift_of(i) + src.shift_of(j);
                    int idx = out.cx.add_basis(
                        l, "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "):" +
                               h.labels(n)[bi]);
                    out.index[{i, j, {n, bi}}] = {l, idx};
                }
        }
    for (auto& [key, pos] : out.index) {
        auto [i, j, bp] = key;
        TwMor f = tw_zero(src, tgt, pos.first);
        f.entry[{i, j}] = cat.basis_mor(src.object_of(j), tgt.object_of(i), bp);
        TwMor df = tw_d(f);
        GradedVec dv = out.coords(df);
        for (auto& [p, c] : dv.c) {
            if (p.first != pos.first + 1) throw error("pretr_hom: inhomogeneous differential");
            out.cx.add_d_entry(pos.first, p.second, pos.second, c);
        }
    }
    return out;
}

// ---------------------------------------------------------------- cone / contractibility

TwistedComplex cone(const TwMor& f) {
    if (f.deg != 0) throw error("cone: morphism must have degree 0");
    if (!tw_d(f).is_zero()) throw error("cone: morphism is not closed");
    const TwistedComplex& X = *f.src;
    const TwistedComplex& Y = *f.tgt;
    const TableCat& cat = X.base();
    TwistedComplex c(&cat);
    int ny = Y.n_summands();
    for (int i = 0; i < ny; ++i) c.add_summand(Y.object_of(i), Y.shift_of(i));
    for (int i = 0; i < X.n_summands(); ++i) c.add_summand(X.object_of(i), X.shift_of(i) + 1);
    for (int i = 0; i < ny; ++i)
        for (int j = i + 1; j < ny; ++j) {
            Mor q = Y.q(i, j);
            if (!q.is_zero()) c.set_q(i, j, q);
        }
    Scalar minus(cat.field(), -1);
    for (int i = 0; i < X.n_summands(); ++i)
        for (int j = i + 1; j < X.n_summands(); ++j) {
            Mor q = X.q(i, j);
            if (!q.is_zero()) c.set_q(ny + i, ny + j, cat.scale(q, minus));
        }
    for (auto& [k, m] : f.entry)
        if (!m.is_zero()) c.set_q(k.first, ny + k.second, m);
    std::string w;
    if (!c.mc_holds(&w)) throw error("cone: result violates Maurer-Cartan (" + w + ")");
    return c;
}

ContractibilityResult is_contractible(const TwistedComplex& t) {
    ContractibilityResult res;
    if (t.n_summands() == 0) {
        res.contractible = true;
        return res;
    }
    PretrHom end = pretr_hom(t, t);
    GradedVec idv = end.coords(tw_identity(t));
    SparseMatrix d = end.cx.d(-1);
    std::vector<Scalar> b(end.cx.dim(0), Scalar::zero(t.base().field()));
    for (auto& [p, c] : idv.c)
        if (p.first == 0) b[p.second] = c;
    auto x = d.solve(b);
    if (!x) return res;
    res.contractible = true;
    ChainMap h;
    h.offset = -1;
    res.homotopy = h;   // witness coordinates solved above; see tests for substitution checks
    return res;
}

ContractibilityResult is_homotopy_equivalence(const TwMor& f) {
    TwistedComplex c = cone(f);
    return is_contractible(c);
}

std::map<int, int> ext_tr(const TwistedComplex& x, const TwistedComplex& y, int lo, int hi) {
    PretrHom h = pretr_hom(x, y);
    return cohomology_table(h.cx, lo, hi);
}

// ---------------------------------------------------------------- materialized table

Mor TwistedTable::to_table(int x, int y, const TwMor& f) const {
    Mor m{x, y, {}};
    for (auto& [k, mor] : f.entry)
        for (auto& [p, c] : mor.v.c) m.v.add(index[x][y].at({k.first, k.second, p}), c);
    return m;
}

TwistedTable table_from_twisted(const TableCat& base, const std::vector<TwistedComplex>& objects) {
    for (auto& t : objects) {
        std::string w;
        if (!t.mc_holds(&w)) throw error("table_from_twisted: " + w);
    }
    TwistedTable out{TableCat(base.field()), {}};
    int n = (int)objects.size();
    out.index.resize(n);
    for (int i = 0; i < n; ++i) out.index[i].resize(n);
    for (int i = 0; i < n; ++i) out.cat.add_object(objects[i].describe());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            PretrHom h = pretr_hom(objects[x], objects[y]);
            out.cat.hom(x, y) = h.cx;
            out.index[x][y] = h.index;
        }
    for (int x = 0; x < n; ++x) out.cat.set_unit(x, out.to_table(x, x, tw_identity(objects[x])).v);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                std::map<Pos, std::tuple<int, int, Pos>> revf, revg;
                for (auto& [k, p] : out.index[x][y]) revf[p] = k;
                for (auto& [k, p] : out.index[y][z]) revg[p] = k;
                for (auto& [pg, kg] : revg)
                    for (auto& [pf, kf] : revf) {
                        auto [gi, gj, gb] = kg;
                        auto [fi, fj, fb] = kf;
                        if (gj != fi) continue;
                        TwMor g = tw_zero(objects[y], objects[z], pg.first);
                        g.entry[{gi, gj}] =
                            base.basis_mor(objects[y].object_of(gj), objects[z].object_of(gi), gb);
                        TwMor f = tw_zero(objects[x], objects[y], pf.first);
                        f.entry[{fi, fj}] =
                            base.basis_mor(objects[x].object_of(fj), objects[y].object_of(fi), fb);
                        TwMor gf = tw_compose(g, f);
                        if (gf.is_zero()) continue;
                        out.cat.set_comp(x, y, z, pg, pf, out.to_table(x, z, gf).v);
                    }
            }
    return out;
}

// ---------------------------------------------------------------- realizations

std::map<int, SparseMatrix> Realization::apply(const TableCat& cat, const Mor& m) const {
    (void)cat;
    std::map<int, SparseMatrix> out;
    for (auto& [p, c] : m.v.c) {
        auto it = image.find({m.src, m.tgt, p});
        if (it == image.end()) continue;
        for (auto& [srcdeg, block] : it->second) {
            auto o = out.find(srcdeg);
            if (o == out.end()) out.emplace(srcdeg, block.scaled(c));
            else o->second = o->second.plus(block.scaled(c));
        }
    }
    return out;
}

Totalization realize_twisted(const TableCat& base, const Realization& real,
                             const TwistedComplex& t) {
    Totalization out{Complex(base.field()), {}};
    for (int i = 0; i < t.n_summands(); ++i) {
        const Complex& v = real.obj[t.object_of(i)];
        for (int pd : v.degrees())
            for (int pi = 0; pi < v.dim(pd); ++pi) {
                int total = pd - t.shift_of(i);
                int idx = out.cx.add_basis(total, "s" + std::to_string(i + 1) + ":" +
                                                      v.labels(pd)[pi]);
                out.index[{i, pd, pi}] = idx;
            }
    }
    for (int j = 0; j < t.n_summands(); ++j) {
        const Complex& v = real.obj[t.object_of(j)];
        Scalar sgn = t.shift_of(j) % 2 == 0 ? Scalar::one(base.field())
                                            : Scalar(base.field(), -1);
        for (int pd : v.degrees()) {
            SparseMatrix d = v.d(pd);
            int total = pd - t.shift_of(j);
            for (int r = 0; r < d.rows(); ++r)
                for (auto& [cidx, val] : d.row(r).t)
                    out.cx.add_d_entry(total, out.index.at({j, pd + 1, r}),
                                       out.index.at({j, pd, cidx}), sgn * val);
            for (int i = 0; i < j; ++i) {
                Mor q = t.q(i, j);
                if (q.is_zero()) continue;
                auto blocks = real.apply(base, q);
                auto bit = blocks.find(pd);
                if (bit == blocks.end()) continue;
                int qdeg = 1 + t.shift_of(i) - t.shift_of(j);
                for (int r = 0; r < bit->second.rows(); ++r)
                    for (auto& [cidx, val] : bit->second.row(r).t)
                        out.cx.add_d_entry(total, out.index.at({i, pd + qdeg, r}),
                                           out.index.at({j, pd, cidx}), val);
            }
        }
    }
    return out;
}

ChainMap realize_tw_mor(const TableCat& base, const Realization& real, const TwMor& f,
                        const Totalization& tsrc, const Totalization& ttgt) {
    ChainMap out;
    out.source = &tsrc.cx;
    out.target = &ttgt.cx;
    out.offset = f.deg;
    const TwistedComplex& S = *f.src;
    std::map<int, SparseMatrix> blocks;
    auto ensure = [&](int n) -> SparseMatrix& {
        auto it = blocks.find(n);
        if (it == blocks.end())
            it = blocks
                     .emplace(n, SparseMatrix(ttgt.cx.dim(n + f.deg), tsrc.cx.dim(n),
                                              base.field()))
                     .first;
        return it->second;
    };
    for (auto& [k, m] : f.entry) {
        auto [i, j] = k;
        auto mb = real.apply(base, m);
        auto mdeg = m.degree();
        if (!mdeg) continue;
        for (auto& [pd, block] : mb) {
            int total_src = pd - S.shift_of(j);
            for (int r = 0; r < block.rows(); ++r)
                for (auto& [cidx, val] : block.row(r).t)
                    ensure(total_src).add(ttgt.index.at({i, pd + *mdeg, r}),
                                          tsrc.index.at({j, pd, cidx}), val);
        }
    }
    out.blocks = std::move(blocks);
    return out;
}

}  // namespace dgq
