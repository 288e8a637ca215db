#include "dgq/module.hpp"

namespace dgq {

// ---------------------------------------------------------------- Module

void Module::set_act(int src, int tgt, Pos b, int n, const SparseMatrix& block) {
    if (block.is_zero()) return;
    act_[{src, tgt, b, n}] = block;
}

SparseMatrix Module::act(int src, int tgt, Pos b, int n) const {
    auto it = act_.find({src, tgt, b, n});
    if (it != act_.end()) return it->second;
    return SparseMatrix(val_[tgt].dim(n + b.first), val_[src].dim(n), field());
}

GradedVec Module::apply(const Mor& m, const GradedVec& v) const {
    GradedVec out;
    std::map<int, SparseVec> per;
    for (auto& [p, c] : v.c) per[p.first].add_term(p.second, c);
    for (auto& [bp, bc] : m.v.c)
        for (auto& [n, vec] : per) {
            SparseVec img = act(m.src, m.tgt, bp, n).apply(vec);
            for (auto& [i, s] : img.t) out.add({n + bp.first, i}, s * bc);
        }
    return out;
}

ValidationReport Module::validate() const {
    ValidationReport rep;
    auto note = [&](const std::string& kind, const std::string& detail) {
        rep.issues.push_back({kind, detail});
    };
    const TableCat& A = *cat_;
    for (int x = 0; x < A.n_objects(); ++x) {
        std::string w;
        if (!val_[x].d_squared_zero(&w)) note("d2", "value(" + A.objects()[x] + "): " + w);
    }
    for (int x = 0; x < A.n_objects(); ++x) {
        for (int n : val_[x].degrees())
            for (int i = 0; i < val_[x].dim(n); ++i) {
                GradedVec e;
                e.add({n, i}, Scalar::one(field()));
                GradedVec u = apply(A.unit_mor(x), e);
                u.add({n, i}, Scalar(field(), -1));
                if (!u.is_zero()) {
                    note("unit", "unit of " + A.objects()[x] + " does not act as identity");
                    goto next_obj;
                }
            }
    next_obj:;
    }
    // operator Leibniz per action basis element
    for (int x = 0; x < A.n_objects(); ++x)
        for (int y = 0; y < A.n_objects(); ++y) {
            const Complex& h = A.hom(x, y);
            for (int bn : h.degrees())
                for (int bi = 0; bi < h.dim(bn); ++bi) {
                    Mor b = A.basis_mor(x, y, {bn, bi});
                    Mor db = A.d(b);
                    for (int n : val_[x].degrees()) {
                        SparseMatrix lhs(val_[y].dim(n + bn + 1), val_[x].dim(n), field());
                        for (auto& [p, c] : db.v.c)
                            lhs = lhs.plus(act(x, y, p, n).scaled(c));
                        SparseMatrix r1 = val_[y].d(n + bn).times(act(x, y, {bn, bi}, n));
                        SparseMatrix r2 = act(x, y, {bn, bi}, n + 1).times(val_[x].d(n));
                        Scalar sg = bn % 2 == 0 ? Scalar(field(), -1) : Scalar::one(field());
                        SparseMatrix rhs = r1.plus(r2.scaled(sg));
                        if (!lhs.plus(rhs.scaled(Scalar(field(), -1))).is_zero()) {
                            note("leibniz", "action of " + h.labels(bn)[bi] + " (" +
                                                A.objects()[x] + "->" + A.objects()[y] +
                                                ") violates the operator Leibniz rule");
                            break;
                        }
                    }
                }
        }
    // associativity of the action on composable basis pairs
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
                                Mor gf = A.compose(g, f);
                                for (int n : val_[x].degrees()) {
                                    SparseMatrix lhs(val_[z].dim(n + ng + nf), val_[x].dim(n),
                                                     field());
                                    for (auto& [p, c] : gf.v.c)
                                        lhs = lhs.plus(act(x, z, p, n).scaled(c));
                                    SparseMatrix rhs =
                                        act(y, z, {ng, ig}, n + nf).times(act(x, y, {nf, jf}, n));
                                    if (!lhs.plus(rhs.scaled(Scalar(field(), -1))).is_zero()) {
                                        note("assoc", "act(" + hg.labels(ng)[ig] + " ° " +
                                                          hf.labels(nf)[jf] + ") mismatch");
                                        break;
                                    }
                                }
                            }
            }
    return rep;
}

// ---------------------------------------------------------------- Yoneda modules

Module yoneda_right(const TableCat& a, const TableCat& aop, int y) {
    Module m(&aop);
    for (int z = 0; z < a.n_objects(); ++z) m.value(z) = a.hom(z, y);
    // act of b° (basis of Hom_a(z2, z) viewed in Hom_aop(z, z2)): v |-> (-1)^{|b||v|} v ° b
    for (int z = 0; z < a.n_objects(); ++z)
        for (int z2 = 0; z2 < a.n_objects(); ++z2) {
            const Complex& hb = a.hom(z2, z);
            const Complex& hv = a.hom(z, y);
            for (int bn : hb.degrees())
                for (int bi = 0; bi < hb.dim(bn); ++bi) {
                    Mor b = a.basis_mor(z2, z, {bn, bi});
                    for (int n : hv.degrees()) {
                        SparseMatrix block(a.hom(z2, y).dim(n + bn), hv.dim(n), a.field());
                        Scalar sg = (bn * n) % 2 == 0 ? Scalar::one(a.field())
                                                      : Scalar(a.field(), -1);
                        for (int vi = 0; vi < hv.dim(n); ++vi) {
                            Mor v = a.basis_mor(z, y, {n, vi});
                            Mor vb = a.compose(v, b);
                            for (auto& [p, c] : vb.v.c)
                                if (p.first == n + bn) block.add(p.second, vi, c * sg);
                        }
                        m.set_act(z, z2, {bn, bi}, n, block);
                    }
                }
        }
    return m;
}

Module yoneda_left(const TableCat& a, int x) {
    Module m(&a);
    for (int z = 0; z < a.n_objects(); ++z) m.value(z) = a.hom(x, z);
    for (int z = 0; z < a.n_objects(); ++z)
        for (int z2 = 0; z2 < a.n_objects(); ++z2) {
            const Complex& hb = a.hom(z, z2);
            const Complex& hv = a.hom(x, z);
            for (int bn : hb.degrees())
                for (int bi = 0; bi < hb.dim(bn); ++bi) {
                    Mor b = a.basis_mor(z, z2, {bn, bi});
                    for (int n : hv.degrees()) {
                        SparseMatrix block(a.hom(x, z2).dim(n + bn), hv.dim(n), a.field());
                        for (int vi = 0; vi < hv.dim(n); ++vi) {
                            Mor v = a.basis_mor(x, z, {n, vi});
                            Mor bv = a.compose(b, v);
                            for (auto& [p, c] : bv.v.c)
                                if (p.first == n + bn) block.add(p.second, vi, c);
                        }
                        m.set_act(z, z2, {bn, bi}, n, block);
                    }
                }
        }
    return m;
}

// ---------------------------------------------------------------- module maps

ValidationReport ModuleMap::validate() const {
    ValidationReport rep;
    const TableCat& A = src->cat();
    for (int x = 0; x < A.n_objects(); ++x) {
        std::string w;
        if (!at[x].commutes_with_d(&w))
            rep.issues.push_back({"chainmap", A.objects()[x] + ": " + w});
    }
    for (int x = 0; x < A.n_objects(); ++x)
        for (int y = 0; y < A.n_objects(); ++y) {
            const Complex& h = A.hom(x, y);
            for (int bn : h.degrees())
                for (int bi = 0; bi < h.dim(bn); ++bi) {
                    Mor b = A.basis_mor(x, y, {bn, bi});
                    bool bad = false;
                    for (int n : src->value(x).degrees()) {
                        for (int i = 0; i < src->value(x).dim(n) && !bad; ++i) {
                            GradedVec e;
                            e.add({n, i}, Scalar::one(A.field()));
                            GradedVec lhs = tgt->apply(b, at[x].apply(e));
                            GradedVec rhs = at[y].apply(src->apply(b, e));
                            if (!lhs.plus(rhs.scaled(Scalar(A.field(), -1))).is_zero()) {
                                rep.issues.push_back({"equivariance",
                                                      "map does not commute with " +
                                                          h.labels(bn)[bi]});
                                bad = true;
                            }
                        }
                        if (bad) break;
                    }
                }
        }
    return rep;
}

// ---------------------------------------------------------------- restriction

Module restrict_module(const TableFunctor& F, const Module& m) {
    const TableCat& A = *F.source;
    Module r(&A);
    for (int x = 0; x < A.n_objects(); ++x) r.value(x) = m.value(F.obj[x]);
    for (int x = 0; x < A.n_objects(); ++x)
        for (int y = 0; y < A.n_objects(); ++y) {
            const Complex& h = A.hom(x, y);
            for (int bn : h.degrees())
                for (int bi = 0; bi < h.dim(bn); ++bi) {
                    Mor img = F.apply(A.basis_mor(x, y, {bn, bi}));
                    if (img.is_zero()) continue;
                    for (int n : r.value(x).degrees()) {
                        SparseMatrix block(r.value(y).dim(n + bn), r.value(x).dim(n), A.field());
                        for (auto& [p, c] : img.v.c)
                            block = block.plus(m.act(F.obj[x], F.obj[y], p, n).scaled(c));
                        r.set_act(x, y, {bn, bi}, n, block);
                    }
                }
        }
    return r;
}

// ---------------------------------------------------------------- tensor

GradedVec TensorResult::pure(int x, const GradedVec& u, const GradedVec& v) const {
    GradedVec big;
    for (auto& [pu, cu] : u.c)
        for (auto& [pv, cv] : v.c) {
            Pos p = tindex[x].at({pu.first, pu.second, pv.first, pv.second});
            big.add(big_index.at({x, p}), cu * cv);
        }
    return quo->project(big);
}

std::tuple<int, Pos, Pos> TensorResult::basis_preimage(Pos quotient_pos) const {
    const auto& surv = quo->survivors(quotient_pos.first);
    int orig = surv.at(quotient_pos.second);
    return rev_big.at({quotient_pos.first, orig});
}

TensorResult module_tensor(const TableCat& a, const TableCat& aop, const Module& g,
                           const Module& f) {
    if (&g.cat() != &aop || &f.cat() != &a)
        throw error("module_tensor: variance mismatch (expect right (x) left)");
    Field k = a.field();
    TensorResult out;
    out.a = &a;
    Complex big(k);
    out.tindex.resize(a.n_objects());
    for (int x = 0; x < a.n_objects(); ++x) {
        const Complex& gx = g.value(x);
        const Complex& fx = f.value(x);
        std::map<int, int> counts;
        for (int p : gx.degrees())
            for (int q : fx.degrees())
                for (int i = 0; i < gx.dim(p); ++i)
                    for (int j = 0; j < fx.dim(q); ++j) {
                        int n = p + q;
                        Pos tpos{n, counts[n]++};
                        out.tindex[x][{p, i, q, j}] = tpos;
                        int idx = big.add_basis(n, a.objects()[x] + ":" + gx.labels(p)[i] +
                                                       "(x)" + fx.labels(q)[j]);
                        out.big_index[{x, tpos}] = {n, idx};
                        out.rev_big[{n, idx}] = {x, {p, i}, {q, j}};
                    }
    }
    for (int x = 0; x < a.n_objects(); ++x) {
        const Complex& gx = g.value(x);
        const Complex& fx = f.value(x);
        for (auto& [key, tpos] : out.tindex[x]) {
            auto [p, i, q, j] = key;
            Pos bigpos = out.big_index.at({x, tpos});
            SparseMatrix dg = gx.d(p);
            for (int r = 0; r < dg.rows(); ++r) {
                Scalar c = dg.get(r, i);
                if (c.is_zero()) continue;
                Pos bt = out.big_index.at({x, out.tindex[x].at({p + 1, r, q, j})});
                big.add_d_entry(bigpos.first, bt.second, bigpos.second, c);
            }
            SparseMatrix df = fx.d(q);
            Scalar sg = p % 2 == 0 ? Scalar::one(k) : Scalar(k, -1);
            for (int r = 0; r < df.rows(); ++r) {
                Scalar c = df.get(r, j);
                if (c.is_zero()) continue;
                Pos bt = out.big_index.at({x, out.tindex[x].at({p, i, q + 1, r})});
                big.add_d_entry(bigpos.first, bt.second, bigpos.second, c * sg);
            }
        }
    }
    // relations u·b (x) v - u (x) b·v over all basis morphisms b : X -> Y
    std::vector<GradedVec> rels;
    for (int x = 0; x < a.n_objects(); ++x)
        for (int y = 0; y < a.n_objects(); ++y) {
            const Complex& h = a.hom(x, y);
            const Complex& gy = g.value(y);
            const Complex& fx = f.value(x);
            for (int bn : h.degrees())
                for (int bi = 0; bi < h.dim(bn); ++bi) {
                    Mor bop{y, x, {}};   // b° in Hom_aop(y, x), same basis positions
                    bop.v.add({bn, bi}, Scalar::one(k));
                    Mor b = a.basis_mor(x, y, {bn, bi});
                    for (int p : gy.degrees())
                        for (int i = 0; i < gy.dim(p); ++i)
                            for (int q : fx.degrees())
                                for (int j = 0; j < fx.dim(q); ++j) {
                                    GradedVec rel;
                                    GradedVec u;
                                    u.add({p, i}, Scalar::one(k));
                                    GradedVec ub = g.apply(bop, u);
                                    Scalar sg = (bn * p) % 2 == 0 ? Scalar::one(k)
                                                                  : Scalar(k, -1);
                                    for (auto& [pp, cc] : ub.c)
                                        rel.add(out.big_index.at(
                                                    {x, out.tindex[x].at(
                                                            {pp.first, pp.second, q, j})}),
                                                cc * sg);
                                    GradedVec v;
                                    v.add({q, j}, Scalar::one(k));
                                    GradedVec bv = f.apply(b, v);
                                    for (auto& [pp, cc] : bv.c)
                                        rel.add(out.big_index.at(
                                                    {y, out.tindex[y].at(
                                                            {p, i, pp.first, pp.second})}),
                                                -cc);
                                    if (!rel.is_zero()) rels.push_back(rel);
                                }
                }
        }
    out.quo = std::make_shared<QuotientOfComplex>(big, rels);
    out.cx = out.quo->cx();
    return out;
}

// ---------------------------------------------------------------- induction

Module induce_module(const TableFunctor& F, const TableCat& a_op, const Module& m) {
    const TableCat& A = *F.source;
    const TableCat& C = *F.target;
    if (&m.cat() != &A) throw error("induce_module: module not over the functor source");
    const TableCat& Aop = a_op;

    Module out(&C);
    std::vector<TensorResult> tens;
    for (int yy = 0; yy < C.n_objects(); ++yy) {
        // the right A-module X -> Hom_C(FX, yy), stored over A°
        Module hy(&Aop);
        for (int x = 0; x < A.n_objects(); ++x) hy.value(x) = C.hom(F.obj[x], yy);
        for (int z = 0; z < A.n_objects(); ++z)
            for (int z2 = 0; z2 < A.n_objects(); ++z2) {
                const Complex& hb = A.hom(z2, z);
                const Complex& hv = C.hom(F.obj[z], yy);
                for (int bn : hb.degrees())
                    for (int bi = 0; bi < hb.dim(bn); ++bi) {
                        Mor img = F.apply(A.basis_mor(z2, z, {bn, bi}));
                        if (img.is_zero()) continue;
                        for (int n : hv.degrees()) {
                            SparseMatrix block(C.hom(F.obj[z2], yy).dim(n + bn), hv.dim(n),
                                               A.field());
                            Scalar sg = (bn * n) % 2 == 0 ? Scalar::one(A.field())
                                                          : Scalar(A.field(), -1);
                            for (int vi = 0; vi < hv.dim(n); ++vi) {
                                Mor v = C.basis_mor(F.obj[z], yy, {n, vi});
                                Mor vb = C.compose(v, img);
                                for (auto& [p, c] : vb.v.c)
                                    if (p.first == n + bn) block.add(p.second, vi, c * sg);
                            }
                            hy.set_act(z, z2, {bn, bi}, n, block);
                        }
                    }
            }
        tens.push_back(module_tensor(A, Aop, hy, m));
        out.value(yy) = tens.back().cx;
    }
    // action of C on the h-variable: b : y -> y2 sends class of u (x) v to class of (b°u) (x) v
    for (int y = 0; y < C.n_objects(); ++y)
        for (int y2 = 0; y2 < C.n_objects(); ++y2) {
            const Complex& hb = C.hom(y, y2);
            for (int bn : hb.degrees())
                for (int bi = 0; bi < hb.dim(bn); ++bi) {
                    Mor b = C.basis_mor(y, y2, {bn, bi});
                    std::map<int, SparseMatrix> blocks;
                    auto ensure = [&](int n) -> SparseMatrix& {
                        auto e = blocks.find(n);
                        if (e == blocks.end())
                            e = blocks
                                    .emplace(n, SparseMatrix(out.value(y2).dim(n + bn),
                                                             out.value(y).dim(n), A.field()))
                                    .first;
                        return e->second;
                    };
                    for (int n : out.value(y).degrees())
                        for (int col = 0; col < out.value(y).dim(n); ++col) {
                            auto [x, gp, fp] = tens[y].basis_preimage({n, col});
                            Mor u = C.basis_mor(F.obj[x], y, gp);
                            Mor bu = C.compose(b, u);
                            GradedVec v;
                            v.add(fp, Scalar::one(A.field()));
                            if (bu.is_zero()) continue;
                            GradedVec img = tens[y2].pure(x, bu.v, v);
                            for (auto& [pp, cc] : img.c) ensure(n).add(pp.second, col, cc);
                        }
                    for (auto& [n, blk] : blocks) out.set_act(y, y2, {bn, bi}, n, blk);
                }
        }
    return out;
}

// ---------------------------------------------------------------- hom dims / qis

std::map<int, int> module_hom_dims(const Module& m, const Module& n, int lo, int hi) {
    const TableCat& A = m.cat();
    if (&n.cat() != &A) throw error("module_hom_dims: different base categories");
    Field k = A.field();
    std::map<int, int> out;
    for (int l = lo; l <= hi; ++l) {
        std::map<std::tuple<int, int, int, int>, int> var;   // (obj, p, row, col)
        int nv = 0;
        for (int z = 0; z < A.n_objects(); ++z)
            for (int p : m.value(z).degrees())
                for (int r = 0; r < n.value(z).dim(p + l); ++r)
                    for (int c = 0; c < m.value(z).dim(p); ++c) var[{z, p, r, c}] = nv++;
        std::vector<SparseVec> rows;
        for (int z = 0; z < A.n_objects(); ++z)
            for (int z2 = 0; z2 < A.n_objects(); ++z2) {
                const Complex& h = A.hom(z, z2);
                for (int bn : h.degrees())
                    for (int bi = 0; bi < h.dim(bn); ++bi)
                        for (int p : m.value(z).degrees()) {
                            SparseMatrix actM = m.act(z, z2, {bn, bi}, p);
                            SparseMatrix actN = n.act(z, z2, {bn, bi}, p + l);
                            int rows_n = n.value(z2).dim(p + bn + l);
                            int cols_m = m.value(z).dim(p);
                            if (rows_n == 0 || cols_m == 0) continue;
                            Scalar sg = (l * bn) % 2 == 0 ? Scalar::one(k) : Scalar(k, -1);
                            for (int r = 0; r < rows_n; ++r)
                                for (int c = 0; c < cols_m; ++c) {
                                    SparseVec eq;
                                    for (int mid = 0; mid < m.value(z2).dim(p + bn); ++mid) {
                                        Scalar a = actM.get(mid, c);
                                        if (a.is_zero()) continue;
                                        auto itv = var.find({z2, p + bn, r, mid});
                                        if (itv != var.end()) eq.add_term(itv->second, a);
                                    }
                                    for (int mid = 0; mid < n.value(z).dim(p + l); ++mid) {
                                        Scalar a = actN.get(r, mid);
                                        if (a.is_zero()) continue;
                                        auto itv = var.find({z, p, mid, c});
                                        if (itv != var.end())
                                            eq.add_term(itv->second, -(a * sg));
                                    }
                                    if (!eq.is_zero()) rows.push_back(eq);
                                }
                        }
            }
        SparseMatrix sys((int)rows.size(), nv, k);
        for (size_t r = 0; r < rows.size(); ++r)
            for (auto& [c, v] : rows[r].t) sys.add((int)r, c, v);
        out[l] = nv - sys.rank();
    }
    return out;
}

QisResult is_quasi_isomorphism(const ModuleMap& f, int lo, int hi) {
    const TableCat& A = f.src->cat();
    for (int x = 0; x < A.n_objects(); ++x) {
        auto cone = cone_complex(f.at[x]);
        for (int n = lo; n <= hi; ++n)
            if (cohomology(cone.cx, n).dim != 0)
                return {Verdict::No, A.objects()[x] + " at degree " + std::to_string(n)};
    }
    return {Verdict::Yes, ""};
}

bool in_right_orthogonal(const Module& m, const std::vector<int>& b_objs, int lo, int hi,
                         std::string* witness) {
    for (int u : b_objs)
        for (int n = lo; n <= hi; ++n)
            if (cohomology(m.value(u), n).dim != 0) {
                if (witness)
                    *witness = m.cat().objects()[u] + " has cohomology at degree " +
                               std::to_string(n);
                return false;
            }
    return true;
}

TableFunctor opposite_functor(const TableFunctor& F, const TableCat& src_op,
                              const TableCat& tgt_op) {
    TableFunctor G;
    G.source = &src_op;
    G.target = &tgt_op;
    G.obj = F.obj;
    for (auto& [key, img] : F.gen_image) {
        auto [x, y, p] = key;
        Mor m2{G.obj[y], G.obj[x], img.v};
        G.gen_image[{y, x, p}] = m2;
    }
    return G;
}

}  // namespace dgq
