#include "dgq/resolve.hpp"

namespace dgq {

// ---------------------------------------------------------------- SemiFreeModule

int SemiFreeModule::add_gen(int obj, int deg, int stage, const std::string& name) {
    if (obj < 0 || obj >= a_->n_objects()) throw error("semifree: bad object");
    gens_.push_back({obj, deg, stage, name});
    return (int)gens_.size() - 1;
}

void SemiFreeModule::set_q(int i, int j, const Mor& m) {
    if (m.is_zero()) { q_.erase({i, j}); return; }
    if (gens_[i].stage >= gens_[j].stage)
        throw error("semifree: q entry violates the stage filtration");
    if (m.src != gens_[j].obj || m.tgt != gens_[i].obj) throw error("semifree: q endpoints");
    auto deg = m.degree();
    if (!deg || *deg != gens_[j].deg + 1 - gens_[i].deg)
        throw error("semifree: q entry degree mismatch");
    q_[{i, j}] = m;
}

Mor SemiFreeModule::q(int i, int j) const {
    auto it = q_.find({i, j});
    if (it != q_.end()) return it->second;
    return a_->zero_mor(gens_[j].obj, gens_[i].obj);
}

ValidationReport SemiFreeModule::validate_certificate() const {
    ValidationReport rep;
    for (auto& [key, m] : q_) {
        auto [i, j] = key;
        if (gens_[i].stage >= gens_[j].stage)
            rep.issues.push_back({"stage", "q(" + gens_[i].name + "," + gens_[j].name +
                                               ") breaks well-foundedness"});
        auto deg = m.degree();
        if (!deg || *deg != gens_[j].deg + 1 - gens_[i].deg)
            rep.issues.push_back({"degree", "q(" + gens_[i].name + "," + gens_[j].name + ")"});
    }
    // d^2 = 0: (-1)^{n_i} d q_{ij} + sum_m q_{im} q_{mj} = 0
    for (auto& [key, unused] : q_) {
        (void)unused;
        auto [i, j] = key;
        Scalar sg = gens_[i].deg % 2 == 0 ? Scalar::one(a_->field()) : Scalar(a_->field(), -1);
        Mor acc = a_->scale(a_->d(q(i, j)), sg);
        for (int m = 0; m < n_gens(); ++m) {
            Mor qim = q(i, m), qmj = q(m, j);
            if (qim.is_zero() || qmj.is_zero()) continue;
            acc = a_->add(acc, a_->compose(qim, qmj));
        }
        if (!acc.is_zero())
            rep.issues.push_back({"d2", "d^2 != 0 at generator pair (" + gens_[i].name + "," +
                                            gens_[j].name + ")"});
    }
    // also pairs with q_{ij} = 0 but a possibly nonzero product path
    for (int i = 0; i < n_gens(); ++i)
        for (int j = 0; j < n_gens(); ++j) {
            if (q_.count({i, j})) continue;
            Mor acc = a_->zero_mor(gens_[j].obj, gens_[i].obj);
            bool any = false;
            for (int m = 0; m < n_gens(); ++m) {
                Mor qim = q(i, m), qmj = q(m, j);
                if (qim.is_zero() || qmj.is_zero()) continue;
                acc = a_->add(acc, a_->compose(qim, qmj));
                any = true;
            }
            if (any && !acc.is_zero())
                rep.issues.push_back({"d2", "d^2 != 0 at generator pair (" + gens_[i].name +
                                                "," + gens_[j].name + ")"});
        }
    return rep;
}

SemiFreeModule::Value SemiFreeModule::value_at(int z) const {
    Value v{Complex(a_->field()), {}};
    for (int i = 0; i < n_gens(); ++i) {
        const Complex& h = a_->hom(z, gens_[i].obj);
        for (int hn : h.degrees())
            for (int hi = 0; hi < h.dim(hn); ++hi) {
                int idx = v.cx.add_basis(gens_[i].deg + hn,
                                         gens_[i].name + "." + h.labels(hn)[hi]);
                v.index[{i, {hn, hi}}] = {gens_[i].deg + hn, idx};
            }
    }
    for (auto& [key, pos] : v.index) {
        auto [i, bp] = key;
        Scalar sg = gens_[i].deg % 2 == 0 ? Scalar::one(a_->field()) : Scalar(a_->field(), -1);
        const Complex& h = a_->hom(z, gens_[i].obj);
        SparseMatrix dh = h.d(bp.first);
        for (int r = 0; r < dh.rows(); ++r) {
            Scalar c = dh.get(r, bp.second);
            if (c.is_zero()) continue;
            Pos t = v.index.at({i, {bp.first + 1, r}});
            v.cx.add_d_entry(pos.first, t.second, pos.second, c * sg);
        }
        for (int i2 = 0; i2 < n_gens(); ++i2) {
            Mor qe = q(i2, i);
            if (qe.is_zero()) continue;
            Mor qb = a_->compose(qe, a_->basis_mor(z, gens_[i].obj, bp));
            for (auto& [p, c] : qb.v.c) {
                Pos t = v.index.at({i2, p});
                if (t.first != pos.first + 1) throw error("semifree value: degree skew");
                v.cx.add_d_entry(pos.first, t.second, pos.second, c);
            }
        }
    }
    return v;
}

Module SemiFreeModule::materialize(const TableCat& aop) const {
    Module out(&aop);
    std::vector<Value> vals;
    for (int z = 0; z < a_->n_objects(); ++z) {
        vals.push_back(value_at(z));
        out.value(z) = vals.back().cx;
    }
    // act of c° (c : z2 -> z in a): gen_i·b |-> (-1)^{|c|(n_i+|b|)} gen_i·(b ° c)
    for (int z = 0; z < a_->n_objects(); ++z)
        for (int z2 = 0; z2 < a_->n_objects(); ++z2) {
            const Complex& hc = a_->hom(z2, z);
            for (int cn : hc.degrees())
                for (int ci = 0; ci < hc.dim(cn); ++ci) {
                    Mor c = a_->basis_mor(z2, z, {cn, ci});
                    std::map<int, SparseMatrix> blocks;
                    auto ensure = [&](int n) -> SparseMatrix& {
                        auto e = blocks.find(n);
                        if (e == blocks.end())
                            e = blocks
                                    .emplace(n, SparseMatrix(out.value(z2).dim(n + cn),
                                                             out.value(z).dim(n), a_->field()))
                                    .first;
                        return e->second;
                    };
                    for (auto& [key, pos] : vals[z].index) {
                        auto [i, bp] = key;
                        Mor b = a_->basis_mor(z, gens_[i].obj, bp);
                        Mor bc = a_->compose(b, c);
                        if (bc.is_zero()) continue;
                        Scalar sg = (cn * (gens_[i].deg + bp.first)) % 2 == 0
                                        ? Scalar::one(a_->field())
                                        : Scalar(a_->field(), -1);
                        for (auto& [p, s] : bc.v.c) {
                            Pos t = vals[z2].index.at({i, p});
                            ensure(pos.first).add(t.second, pos.second, s * sg);
                        }
                    }
                    for (auto& [n, blk] : blocks) out.set_act(z, z2, {cn, ci}, n, blk);
                }
        }
    return out;
}

// ---------------------------------------------------------------- Resolution

ChainMap Resolution::counit_map(const SemiFreeModule::Value& v, int z) const {
    const TableCat& a = p.base();
    const Module& m = *target;
    ChainMap f;
    f.source = &v.cx;
    f.target = &m.value(z);
    std::map<int, SparseMatrix> blocks;
    auto ensure = [&](int n) -> SparseMatrix& {
        auto e = blocks.find(n);
        if (e == blocks.end())
            e = blocks.emplace(n, SparseMatrix(m.value(z).dim(n), v.cx.dim(n), a.field())).first;
        return e->second;
    };
    for (auto& [key, pos] : v.index) {
        auto [i, bp] = key;
        if (counit[i].is_zero()) continue;
        // honest right action: p_i · b = (-1)^{|b| n_i} act_{b°}(p_i)
        Mor bop{p.gen(i).obj, z, {}};
        bop.v.add(bp, Scalar::one(a.field()));
        GradedVec img = m.apply(bop, counit[i]);
        Scalar sg = (bp.first * p.gen(i).deg) % 2 == 0 ? Scalar::one(a.field())
                                                       : Scalar(a.field(), -1);
        for (auto& [pp, cc] : img.c) ensure(pos.first).add(pp.second, pos.second, cc * sg);
    }
    f.blocks = std::move(blocks);
    return f;
}

namespace {

// decode a cone cocycle into (target part, shifted source part) graded vectors
void split_cone_vector(const ConeResult& cone, int degree, const SparseVec& vec,
                       GradedVec& target_part, GradedVec& source_part) {
    int seen = 0;
    for (auto& [part, d0, i0] : cone.origin) {
        int cone_deg = part == 0 ? d0 : d0 - 1;
        if (cone_deg != degree) continue;
        Scalar c = vec.at(seen, cone.cx.field());
        ++seen;
        if (c.is_zero()) continue;
        if (part == 0) target_part.add({d0, i0}, c);
        else source_part.add({d0, i0}, c);
    }
}

}  // namespace

Resolution semi_free_resolve(const TableCat& a, const Module& m,
                             const std::vector<int>& b_objs, int lo, int hi, int step_bound) {
    Resolution r{SemiFreeModule(&a), {}, &m, {}, false};
    int glo = lo - 2, ghi = hi + 1;
    for (int step = 0; step <= step_bound; ++step) {
        struct NewGen {
            int obj, deg;
            GradedVec counit;
            std::vector<std::pair<int, Mor>> qcol;
            std::string name;
        };
        std::vector<NewGen> incoming;
        bool window_ok = true;
        r.cells.clear();
        for (int u : b_objs) {
            SemiFreeModule::Value v = r.p.value_at(u);
            ChainMap phi = r.counit_map(v, u);
            ConeResult cone = cone_complex(phi);
            std::map<Pos, std::pair<int, Pos>> rev;
            for (auto& [key, pos] : v.index) rev[pos] = {key.first, key.second};
            for (int t = lo - 1; t <= hi + 1; ++t) {
                bool ok = cohomology(cone.cx, t).dim == 0;
                r.cells[{u, t}] = ok;
                window_ok = window_ok && ok;
            }
            for (int t = glo; t <= ghi; ++t) {
                Cohomology h = cohomology(cone.cx, t);
                for (int rix = 0; rix < h.dim; ++rix) {
                    GradedVec mpart, xpart;
                    split_cone_vector(cone, t, h.reps[rix], mpart, xpart);
                    NewGen ng;
                    ng.obj = u;
                    ng.deg = t;
                    ng.counit = mpart.scaled(Scalar(a.field(), -1));
                    std::map<int, Mor> qc;
                    for (auto& [pp, cc] : xpart.c) {
                        auto [gi, bp] = rev.at(pp);
                        auto it = qc.find(gi);
                        if (it == qc.end()) {
                            Mor mm = a.zero_mor(u, r.p.gen(gi).obj);
                            mm.v.add(bp, cc);
                            qc.emplace(gi, mm);
                        } else {
                            it->second.v.add(bp, cc);
                        }
                    }
                    for (auto& [gi, mm] : qc) ng.qcol.push_back({gi, mm});
                    ng.name = "g" + std::to_string(r.p.n_gens() + (int)incoming.size()) + "[" +
                              a.objects()[u] + "@" + std::to_string(t) + "]";
                    incoming.push_back(std::move(ng));
                }
            }
        }
        if (window_ok) {
            r.complete = true;
            break;
        }
        if (incoming.empty() || step == step_bound) break;
        for (auto& ng : incoming) {
            int gi = r.p.add_gen(ng.obj, ng.deg, step, ng.name);
            for (auto& [src, mm] : ng.qcol) r.p.set_q(src, gi, mm);
            r.counit.push_back(ng.counit);
        }
    }
    return r;
}

// ---------------------------------------------------------------- bar resolution

Resolution bar_resolution(const TableCat& a, const Module& m, const std::vector<int>& b_objs,
                          int length_bound, int lo, int hi) {
    Resolution r{SemiFreeModule(&a), {}, &m, {}, false};
    Field k = a.field();
    struct BarGen {
        std::vector<int> objs;   // V_1 .. V_l
        Pos u;                   // basis position in m.value(V_l)
        std::vector<Pos> fs;     // f_1 .. f_{l-1}, f_t in Hom(V_t, V_{t+1})
        int deg = 0;
        bool operator<(const BarGen& o) const {
            return std::tie(objs, u, fs) < std::tie(o.objs, o.u, o.fs);
        }
    };
    std::vector<BarGen> bars;
    std::vector<int> level_of;
    std::map<BarGen, int> lookup;
    for (int u0 : b_objs) {
        const Complex& mu = m.value(u0);
        for (int p : mu.degrees())
            for (int i = 0; i < mu.dim(p); ++i) {
                BarGen b;
                b.objs = {u0};
                b.u = {p, i};
                b.deg = p;   // one epsilon (-1) plus the global [-1] shift (+1)
                lookup[b] = (int)bars.size();
                bars.push_back(b);
                level_of.push_back(1);
            }
    }
    size_t level_start = 0;
    for (int l = 2; l <= length_bound; ++l) {
        size_t level_end = bars.size();
        for (size_t bi = level_start; bi < level_end; ++bi) {
            for (int v1 : b_objs) {
                const Complex& h = a.hom(v1, bars[bi].objs.front());
                for (int fn : h.degrees())
                    for (int fi = 0; fi < h.dim(fn); ++fi) {
                        BarGen nb = bars[bi];
                        nb.objs.insert(nb.objs.begin(), v1);
                        nb.fs.insert(nb.fs.begin(), Pos{fn, fi});
                        nb.deg = bars[bi].deg + fn - 1;
                        lookup[nb] = (int)bars.size();
                        bars.push_back(nb);
                        level_of.push_back(l);
                    }
            }
        }
        level_start = level_end;
    }
    for (size_t bi = 0; bi < bars.size(); ++bi)
        r.p.add_gen(bars[bi].objs.front(), bars[bi].deg, level_of[bi] * 100000 - bars[bi].deg,
                    "bar" + std::to_string(bi));
    auto find_gen = [&](const BarGen& g) -> int {
        auto it = lookup.find(g);
        return it == lookup.end() ? -1 : it->second;
    };
    r.counit.assign(bars.size(), GradedVec{});
    Scalar minus(k, -1);
    // word u eps f_{l-1} eps ... f_1 eps: Leibniz with sign (-1)^{degrees left}
    for (size_t j = 0; j < bars.size(); ++j) {
        const BarGen& g = bars[j];
        int l = level_of[j];
        std::vector<int> letdeg;
        letdeg.push_back(g.u.first);
        letdeg.push_back(-1);
        for (int t = l - 2; t >= 0; --t) {
            letdeg.push_back(g.fs[t].first);
            letdeg.push_back(-1);
        }
        auto sign_before = [&](int pos) {
            int s = 0;
            for (int i = 0; i < pos; ++i) s += letdeg[i];
            return s % 2 == 0 ? Scalar::one(k) : minus;
        };
        std::map<int, Scalar> dterms;
        auto accum = [&](int gi, const Scalar& c) {
            if (gi < 0 || c.is_zero()) return;
            auto it = dterms.find(gi);
            if (it == dterms.end()) dterms.emplace(gi, c);
            else it->second = it->second + c;
        };
        // internal d of u
        {
            const Complex& mu = m.value(g.objs.back());
            SparseMatrix dm = mu.d(g.u.first);
            for (int r2 = 0; r2 < dm.rows(); ++r2) {
                Scalar c = dm.get(r2, g.u.second);
                if (c.is_zero()) continue;
                BarGen ng = g;
                ng.u = {g.u.first + 1, r2};
                ng.deg = g.deg + 1;
                accum(find_gen(ng), c);
            }
        }
        // internal d of f_t, letter position 2(l-1-t)+2
        for (int t = l - 1; t >= 1; --t) {
            int pos = 2 * (l - 1 - t) + 2;
            Scalar sg = sign_before(pos);
            const Complex& h = a.hom(g.objs[t - 1], g.objs[t]);
            Pos fp = g.fs[t - 1];
            SparseMatrix dh = h.d(fp.first);
            for (int r2 = 0; r2 < dh.rows(); ++r2) {
                Scalar c = dh.get(r2, fp.second);
                if (c.is_zero()) continue;
                BarGen ng = g;
                ng.fs[t - 1] = {fp.first + 1, r2};
                ng.deg = g.deg + 1;
                accum(find_gen(ng), c * sg);
            }
        }
        // contraction of the epsilon after u: u · f_{l-1}
        if (l >= 2) {
            Scalar sg = sign_before(1);
            Mor fop{g.objs.back(), g.objs[l - 2], {}};
            fop.v.add(g.fs[l - 2], Scalar::one(k));
            GradedVec uv;
            uv.add(g.u, Scalar::one(k));
            GradedVec uf = m.apply(fop, uv);
            Scalar kos = (g.fs[l - 2].first * g.u.first) % 2 == 0 ? Scalar::one(k) : minus;
            for (auto& [pp, cc] : uf.c) {
                BarGen ng;
                ng.objs.assign(g.objs.begin(), g.objs.end() - 1);
                ng.u = pp;
                ng.fs.assign(g.fs.begin(), g.fs.end() - 1);
                ng.deg = g.deg + 1;
                accum(find_gen(ng), cc * kos * sg);
            }
        }
        // inner contractions between f_{t+1} and f_t, epsilon position 2(l-2-t)+3
        for (int t = l - 2; t >= 1; --t) {
            int pos = 2 * (l - 2 - t) + 3;
            Scalar sg = sign_before(pos);
            Mor ft1 = a.basis_mor(g.objs[t], g.objs[t + 1], g.fs[t]);
            Mor ft = a.basis_mor(g.objs[t - 1], g.objs[t], g.fs[t - 1]);
            Mor comp = a.compose(ft1, ft);
            for (auto& [pp, cc] : comp.v.c) {
                BarGen ng = g;
                ng.objs.erase(ng.objs.begin() + t);
                ng.fs.erase(ng.fs.begin() + (t - 1));
                ng.fs[t - 1] = pp;
                ng.deg = g.deg + 1;
                accum(find_gen(ng), cc * sg);
            }
        }
        // d_bar = -(all of the above)
        for (auto& [gi, c] : dterms) {
            if (c.is_zero()) continue;
            if (bars[gi].objs.front() != g.objs.front())
                throw error("bar: contraction changed the generator object");
            Mor qe = a.scale(a.unit_mor(g.objs.front()), -c);
            Mor cur = r.p.q(gi, (int)j);
            r.p.set_q(gi, (int)j, a.add(cur, qe));
        }
        if (l >= 2) {
            // trailing contraction -> q coefficient -sign * f_1
            int pos = (int)letdeg.size() - 1;
            Scalar sg = sign_before(pos);
            BarGen ng = g;
            ng.objs.erase(ng.objs.begin());
            Pos f1 = ng.fs.front();
            ng.fs.erase(ng.fs.begin());
            ng.deg = g.deg - f1.first + 1;
            int gi = find_gen(ng);
            if (gi >= 0) {
                Mor qe = a.scale(a.basis_mor(g.objs.front(), g.objs[1], f1), sg * minus);
                Mor cur = r.p.q(gi, (int)j);
                r.p.set_q(gi, (int)j, a.add(cur, qe));
            }
        } else {
            // counit alpha(gen_u) = (-1)^{|u|} u
            GradedVec cu;
            cu.add(g.u, g.u.first % 2 == 0 ? Scalar::one(k) : minus);
            r.counit[j] = cu;
        }
    }
    for (int u : b_objs) {
        SemiFreeModule::Value v = r.p.value_at(u);
        ChainMap phi = r.counit_map(v, u);
        ConeResult cone = cone_complex(phi);
        for (int t = lo - 1; t <= hi + 1; ++t)
            r.cells[{u, t}] = cohomology(cone.cx, t).dim == 0;
    }
    return r;
}

ValidationReport validate_counit(const TableCat& aop, const Resolution& r) {
    ValidationReport rep;
    (void)aop;
    const TableCat& a = r.p.base();
    for (int z = 0; z < a.n_objects(); ++z) {
        SemiFreeModule::Value v = r.p.value_at(z);
        ChainMap phi = r.counit_map(v, z);
        std::string w;
        if (!phi.commutes_with_d(&w))
            rep.issues.push_back({"counit", a.objects()[z] + ": " + w});
    }
    return rep;
}

// ---------------------------------------------------------------- orthogonal cone

OrthogonalCone lind_res_cone(const TableCat& a, const TableCat& aop,
                             const std::vector<int>& b_objs, int y, int lo, int hi,
                             int step_bound) {
    Module hy = yoneda_right(a, aop, y);
    Resolution res = semi_free_resolve(a, hy, b_objs, lo, hi, step_bound);

    OrthogonalCone out{SemiFreeModule(&a), Module(&aop), false, false, ""};
    out.resolution_complete = res.complete;
    int gy = out.pres.add_gen(y, 0, -1, "hY");
    std::vector<int> shifted;
    for (int i = 0; i < res.p.n_gens(); ++i) {
        const SemiFreeGen& g = res.p.gen(i);
        shifted.push_back(out.pres.add_gen(g.obj, g.deg - 1, g.stage, g.name + "~"));
    }
    Scalar minus(a.field(), -1);
    for (int i = 0; i < res.p.n_gens(); ++i)
        for (int j = 0; j < res.p.n_gens(); ++j) {
            Mor qe = res.p.q(i, j);
            if (!qe.is_zero()) out.pres.set_q(shifted[i], shifted[j], a.scale(qe, minus));
        }
    for (int i = 0; i < res.p.n_gens(); ++i) {
        if (res.counit[i].is_zero()) continue;
        Mor pm{res.p.gen(i).obj, y, res.counit[i]};
        out.pres.set_q(gy, shifted[i], pm);
    }
    out.mat = out.pres.materialize(aop);
    std::string w;
    out.orthogonal = res.complete && in_right_orthogonal(out.mat, b_objs, lo, hi, &w);
    out.witness = w;
    return out;
}

InducedImageResult check_induced_image(const TableCat& a, const TableCat& aop, const Module& m,
                                       const std::vector<int>& b_objs, int lo, int hi,
                                       int step_bound) {
    (void)aop;
    Resolution res = semi_free_resolve(a, m, b_objs, lo, hi, step_bound);
    bool refutable = res.complete;
    for (int z = 0; z < a.n_objects(); ++z) {
        SemiFreeModule::Value v = res.p.value_at(z);
        ChainMap phi = res.counit_map(v, z);
        ConeResult cone = cone_complex(phi);
        for (int n = lo; n <= hi; ++n) {
            if (cohomology(cone.cx, n).dim != 0) {
                if (refutable)
                    return {Verdict::No, a.objects()[z] + " at degree " + std::to_string(n)};
                return {Verdict::Inconclusive,
                        "cone cohomology at " + a.objects()[z] + ", degree " +
                            std::to_string(n) + " with an incomplete resolution"};
            }
        }
    }
    if (!res.complete) return {Verdict::Inconclusive, "resolution budget exhausted"};
    return {Verdict::Yes, ""};
}

}  // namespace dgq
