#include "dgq/catresolve.hpp"

namespace dgq {

FreeFunctor CategoryResolution::functor() const {
    FreeFunctor f;
    f.source = &cat;
    f.target = target;
    f.obj = obj;
    f.gen_image = gen_image;
    return f;
}

namespace {

// express a cocycle of Hom_C(x, y) as a coboundary, if it is one
std::optional<GradedVec> bound_in_target(const TableCat& c, const Mor& m) {
    if (m.is_zero()) return GradedVec{};
    auto deg = m.degree();
    if (!deg) return std::nullopt;
    const Complex& h = c.hom(m.src, m.tgt);
    SparseMatrix d = h.d(*deg - 1);
    std::vector<Scalar> rhs(h.dim(*deg), Scalar::zero(c.field()));
    for (auto& [p, s] : m.v.c) rhs[p.second] = s;
    auto x = d.solve(rhs);
    if (!x) return std::nullopt;
    GradedVec out;
    for (int i = 0; i < (int)x->size(); ++i) out.add({*deg - 1, i}, (*x)[i]);
    return out;
}

}  // namespace

CategoryResolution semi_free_resolve_category(const TableCat& c, int lo, int hi,
                                              const CatResolveOptions& opt) {
    CategoryResolution res{FreeCat(c.field()), &c, {}, {}, {}, false, 0};
    for (int i = 0; i < c.n_objects(); ++i) {
        res.cat.add_object(c.objects()[i]);
        res.obj.push_back(i);
    }
    Field k = c.field();
    // pair order: endomorphism cells first, so relation-killing generators are
    // in place before the off-diagonal cells are inspected within a stage
    std::vector<std::pair<int, int>> pair_order;
    for (int x = 0; x < c.n_objects(); ++x) pair_order.push_back({x, x});
    for (int x = 0; x < c.n_objects(); ++x)
        for (int y = 0; y < c.n_objects(); ++y)
            if (x != y) pair_order.push_back({x, y});
    for (int stage = 0; stage <= opt.step_bound; ++stage) {
        res.stages = stage;
        struct NewGen {
            int src, tgt, deg;
            NCPoly dif;
            GradedVec image;
        };
        int added_this_stage = 0;
        bool all_ok = true;
        res.cells.clear();
        for (auto& [x, y] : pair_order) {
            {
                std::vector<NewGen> incoming;
                FreeFunctor psi = res.functor();
                FreeHomTrunc tr =
                    materialize_free_hom(res.cat, x, y, opt.word_length, lo - 1, hi + 1, opt.cap);
                auto est = free_ext_estimate(tr, lo, hi, 2);
                const Complex& hc = c.hom(x, y);
                for (int m = lo; m <= hi; ++m) {
                    Cohomology ht = cohomology(hc, m);
                    auto& e = est[m];
                    // induced map on classes
                    SparseMatrix mat(ht.dim, (int)e.reps.size(), k);
                    bool resolved = true;
                    for (size_t j = 0; j < e.reps.size(); ++j) {
                        Mor img = c.zero_mor(x, y);
                        for (auto& [wi, s] : e.reps[j].t)
                            img = c.add(img, c.scale(psi.apply_word(tr.words[wi]), s));
                        SparseVec vec;
                        for (auto& [p, s] : img.v.c)
                            if (p.first == m) vec.add_term(p.second, s);
                        auto coords = class_coords(hc, ht, vec);
                        if (!coords) { resolved = false; continue; }
                        for (int i = 0; i < ht.dim; ++i)
                            if (!(*coords)[i].is_zero()) mat.set(i, (int)j, (*coords)[i]);
                    }
                    int rank = mat.rank();
                    bool injective = rank == (int)e.reps.size();
                    bool surjective = rank == ht.dim;
                    res.cells[{x, y, m}] =
                        resolved && injective && surjective && (e.stable || e.certified);
                    if (res.cells[{x, y, m}]) continue;
                    all_ok = false;
                    int added = 0;
                    // (i) surjectivity: adjoin closed generators hitting missed classes
                    if (!surjective && added < opt.per_cell_gens) {
                        RowSpan image_span(k, false);
                        // rows: coordinates of image classes in ht basis
                        for (int j = 0; j < (int)e.reps.size(); ++j) {
                            SparseVec row;
                            for (int i = 0; i < ht.dim; ++i) {
                                Scalar v = mat.get(i, j);
                                if (!v.is_zero()) row.add_term(i, v);
                            }
                            image_span.insert(row);
                        }
                        for (int t = 0; t < ht.dim && added < opt.per_cell_gens; ++t) {
                            SparseVec unit;
                            unit.add_term(t, Scalar::one(k));
                            if (image_span.contains(unit)) continue;
                            image_span.insert(unit);
                            NewGen g;
                            g.src = x;
                            g.tgt = y;
                            g.deg = m;
                            for (auto& [i2, s] : ht.reps[t].t) g.image.add({m, i2}, s);
                            incoming.push_back(g);
                            ++added;
                        }
                    }
                    // (ii) injectivity: kill kernel classes with new generators
                    if (!injective && added < opt.per_cell_gens) {
                        auto kernel = mat.kernel_basis();
                        for (auto& kv : kernel) {
                            if (added >= opt.per_cell_gens) break;
                            // representative word polynomial of the kernel class
                            NCPoly poly;
                            Mor img = c.zero_mor(x, y);
                            for (auto& [j, s] : kv.t) {
                                for (auto& [wi, ws] : e.reps[j].t)
                                    poly.add(tr.words[wi], ws * s);
                                Mor part = c.zero_mor(x, y);
                                for (auto& [wi, ws] : e.reps[j].t)
                                    part = c.add(part, c.scale(psi.apply_word(tr.words[wi]), ws));
                                img = c.add(img, c.scale(part, s));
                            }
                            if (poly.is_zero()) continue;
                            auto bound = bound_in_target(c, img);
                            if (!bound) continue;   // class not exact in C: surjectivity issue
                            NewGen g;
                            g.src = x;
                            g.tgt = y;
                            g.deg = m - 1;
                            g.dif = poly;
                            g.image = *bound;
                            incoming.push_back(g);
                            ++added;
                        }
                    }
                }
            }
                if (stage < opt.step_bound)
                    for (auto& g : incoming) {
                        int gi = res.cat.add_gen("r" + std::to_string(res.cat.n_gens()), g.src,
                                                 g.tgt, g.deg);
                        res.cat.set_dif(gi, g.dif);
                        res.gen_image.push_back(Mor{g.src, g.tgt, g.image});
                        ++added_this_stage;
                    }
            }
        }
        if (all_ok) {
            res.complete = true;
            break;
        }
        if (added_this_stage == 0 || stage == opt.step_bound) break;
    }
    return res;
}

}  // namespace dgq
