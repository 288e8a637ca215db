#include "dgq/quotient.hpp"

#include <algorithm>
#include <sstream>

#include "dgq/instances.hpp"

namespace dgq {

QuotientCategory drinfeld_quotient(const TableCat& a, const std::vector<int>& b_objs) {
    for (int u : b_objs)
        if (u < 0 || u >= a.n_objects()) throw error("drinfeld_quotient: B not a subset of Ob A");
    return QuotientCategory{&a, b_objs};
}

// ---------------------------------------------------------------- FilteredHom

namespace {
struct DegRange {
    bool empty = true;
    int lo = 0, hi = 0;
    void absorb(int d) {
        if (empty) { lo = hi = d; empty = false; }
        else { lo = std::min(lo, d); hi = std::max(hi, d); }
    }
    DegRange plus(const DegRange& o) const {
        if (empty || o.empty) return {};
        return {false, lo + o.lo, hi + o.hi};
    }
};

DegRange hom_range(const Complex& h) {
    DegRange r;
    for (int n : h.degrees()) r.absorb(n);
    return r;
}
}  // namespace

FilteredHom::FilteredHom(const QuotientCategory& q, int x, int y, int max_level, int deg_lo,
                         int deg_hi, size_t cap)
    : q_(&q), x_(x), y_(y), max_level_(max_level), deg_lo_(deg_lo), deg_hi_(deg_hi) {
    const TableCat& a = *q.a;
    int wlo = deg_lo - 1, whi = deg_hi + 1;
    std::map<std::pair<std::vector<int>, std::vector<Pos>>, int> full;
    for (int n = 0; n <= max_level; ++n) {
        // suffix ranges: T[j][u] = degree range of slots j..n starting at object u
        std::vector<std::map<int, DegRange>> T(n + 1);
        for (int u = 0; u < a.n_objects(); ++u) T[n][u] = hom_range(a.hom(u, y));
        for (int j = n - 1; j >= 0; --j)
            for (int u = 0; u < a.n_objects(); ++u) {
                DegRange best;
                for (int v : q.b_objs) {
                    DegRange step = hom_range(a.hom(u, v));
                    auto it = T[j + 1].find(v);
                    DegRange rest = it == T[j + 1].end() ? DegRange{} : it->second;
                    DegRange sum = step.plus(rest);
                    if (sum.empty) continue;
                    if (best.empty) best = sum;
                    else {
                        best.lo = std::min(best.lo, sum.lo);
                        best.hi = std::max(best.hi, sum.hi);
                    }
                }
                T[j][u] = best;
            }
        int tot_lo = wlo + n, tot_hi = whi + n;   // word degree = letters - n
        struct Frame {
            std::vector<int> objs;
            std::vector<Pos> fs;
            int at, deg, slot;
        };
        std::vector<Frame> stack;
        stack.push_back({{}, {}, x, 0, 0});
        while (!stack.empty()) {
            Frame fr = stack.back();
            stack.pop_back();
            if (fr.slot == n + 1) {
                if (fr.deg >= tot_lo && fr.deg <= tot_hi) {
                    int id = (int)tuples_.size();
                    tuples_.push_back({fr.objs, fr.fs});
                    degree_.push_back(fr.deg - n);
                    full[{fr.objs, fr.fs}] = id;
                    if (tuples_.size() > cap) throw error("quotient materialization: cap exceeded");
                }
                continue;
            }
            bool last = fr.slot == n;
            const std::vector<int>& nexts = last ? std::vector<int>{y} : q.b_objs;
            for (int v : nexts) {
                const Complex& h = a.hom(fr.at, v);
                DegRange rest{false, 0, 0};
                if (fr.slot + 1 <= n) {
                    auto it = T[fr.slot + 1].find(v);
                    rest = it == T[fr.slot + 1].end() ? DegRange{} : it->second;
                    if (rest.empty) continue;
                }
                for (int hn : h.degrees())
                    for (int hi2 = 0; hi2 < h.dim(hn); ++hi2) {
                        int deg2 = fr.deg + hn;
                        if (deg2 + rest.lo > tot_hi || deg2 + rest.hi < tot_lo) continue;
                        Frame nx = fr;
                        if (!last) nx.objs.push_back(v);
                        nx.fs.push_back({hn, hi2});
                        nx.at = v;
                        nx.deg = deg2;
                        nx.slot = fr.slot + 1;
                        stack.push_back(nx);
                    }
            }
        }
    }
    // stable order: (level, degree, tuple data)
    std::vector<int> order(tuples_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int p, int r) {
        int lp = (int)tuples_[p].objs.size(), lr = (int)tuples_[r].objs.size();
        if (lp != lr) return lp < lr;
        if (degree_[p] != degree_[r]) return degree_[p] < degree_[r];
        return std::tie(tuples_[p].objs, tuples_[p].fs) <
               std::tie(tuples_[r].objs, tuples_[r].fs);
    });
    {
        std::vector<Tuple> ts;
        std::vector<int> ds;
        for (int id : order) {
            ts.push_back(tuples_[id]);
            ds.push_back(degree_[id]);
        }
        tuples_ = std::move(ts);
        degree_ = std::move(ds);
        full.clear();
        for (size_t i = 0; i < tuples_.size(); ++i)
            full[{tuples_[i].objs, tuples_[i].fs}] = (int)i;
    }
    // full differential columns: internal Leibniz terms + eps contractions
    std::vector<std::vector<std::pair<int, Scalar>>> dcol(tuples_.size());
    Field k = a.field();
    for (size_t id = 0; id < tuples_.size(); ++id) {
        const Tuple& t = tuples_[id];
        int n = (int)t.objs.size();
        auto obj_at = [&](int slot) { return slot == 0 ? x_ : t.objs[slot - 1]; };
        auto obj_to = [&](int slot) { return slot == n ? y_ : t.objs[slot]; };
        std::vector<int> suf(n + 2, 0);
        for (int j = n; j >= 0; --j) suf[j] = suf[j + 1] + t.fs[j].first;
        auto add_term = [&](const std::vector<int>& objs, const std::vector<Pos>& fs,
                            const Scalar& c) {
            auto it = full.find({objs, fs});
            if (it == full.end()) return;   // left the degree window
            auto& col = dcol[id];
            for (auto& [tid, cc] : col)
                if (tid == it->second) {
                    cc = cc + c;
                    return;
                }
            col.push_back({it->second, c});
        };
        for (int i = 0; i <= n; ++i) {
            Mor f = a.basis_mor(obj_at(i), obj_to(i), t.fs[i]);
            Mor df = a.d(f);
            if (df.is_zero()) continue;
            int expo = suf[i + 1] + (n - i);
            Scalar sg = expo % 2 == 0 ? Scalar::one(k) : Scalar(k, -1);
            for (auto& [p, c] : df.v.c) {
                std::vector<Pos> fs = t.fs;
                fs[i] = p;
                add_term(t.objs, fs, c * sg);
            }
        }
        for (int i = 1; i <= n; ++i) {
            Mor fi = a.basis_mor(obj_at(i), obj_to(i), t.fs[i]);
            Mor fi1 = a.basis_mor(obj_at(i - 1), obj_to(i - 1), t.fs[i - 1]);
            Mor comp = a.compose(fi, fi1);
            if (comp.is_zero()) continue;
            int expo = suf[i] + (n - i);
            Scalar sg = expo % 2 == 0 ? Scalar::one(k) : Scalar(k, -1);
            std::vector<int> objs = t.objs;
            objs.erase(objs.begin() + (i - 1));
            for (auto& [p, c] : comp.v.c) {
                std::vector<Pos> fs;
                fs.reserve(n);
                for (int j2 = 0; j2 < i - 1; ++j2) fs.push_back(t.fs[j2]);
                fs.push_back(p);
                for (int j2 = i + 1; j2 <= n; ++j2) fs.push_back(t.fs[j2]);
                add_term(objs, fs, c * sg);
            }
        }
        // drop exact zeros produced by cancellation
        auto& col = dcol[id];
        col.erase(std::remove_if(col.begin(), col.end(),
                                 [](auto& pr) { return pr.second.is_zero(); }),
                  col.end());
    }
    trunc_.reserve(max_level + 1);
    members_.resize(max_level + 1);
    for (int N = 0; N <= max_level; ++N) {
        Complex cx(k);
        for (size_t id = 0; id < tuples_.size(); ++id) {
            if ((int)tuples_[id].objs.size() > N) continue;
            int idx = cx.add_basis(degree_[id], label_of((int)id));
            members_[N][degree_[id]].push_back((int)id);
            pos_[{N, (int)id}] = {degree_[id], idx};
        }
        for (size_t id = 0; id < tuples_.size(); ++id) {
            if ((int)tuples_[id].objs.size() > N) continue;
            Pos from = pos_.at({N, (int)id});
            for (auto& [tid, c] : dcol[id]) {
                auto it = pos_.find({N, tid});
                if (it == pos_.end()) throw error("filtration: differential raised the level");
                cx.add_d_entry(from.first, it->second.second, from.second, c);
            }
        }
        cx.set_window(wlo, whi);
        std::string w;
        if (!cx.d_squared_zero(&w)) throw error("quotient truncation: " + w);
        trunc_.push_back(std::move(cx));
    }
}

std::string FilteredHom::label_of(int id) const {
    const TableCat& a = *q_->a;
    const Tuple& t = tuples_[id];
    int n = (int)t.objs.size();
    std::ostringstream os;
    for (int i = n; i >= 0; --i) {
        int src = i == 0 ? x_ : t.objs[i - 1];
        int tgt = i == n ? y_ : t.objs[i];
        os << a.hom(src, tgt).labels(t.fs[i].first)[t.fs[i].second];
        if (i > 0) os << "*e[" << a.objects()[t.objs[i - 1]] << "]*";
    }
    return os.str();
}

const Complex& FilteredHom::truncation(int N) const { return trunc_.at(N); }

const std::vector<int>& FilteredHom::members(int N, int degree) const {
    static const std::vector<int> empty;
    auto it = members_.at(N).find(degree);
    return it == members_.at(N).end() ? empty : it->second;
}

Pos FilteredHom::position_in(int N, int id) const { return pos_.at({N, id}); }

int FilteredHom::piece_dim(int n, int degree) const {
    int c = 0;
    for (size_t id = 0; id < tuples_.size(); ++id)
        if ((int)tuples_[id].objs.size() == n && degree_[id] == degree) ++c;
    return c;
}

long long FilteredHom::piece_dim_expected(int n, int degree) const {
    const TableCat& a = *q_->a;
    std::map<int, std::map<int, long long>> cur;   // object -> (letter degree sum -> count)
    std::vector<int> starts = n == 0 ? std::vector<int>{y_} : q_->b_objs;
    for (int u : starts) {
        const Complex& h = a.hom(x_, u);
        for (int hn : h.degrees()) cur[u][hn] += h.dim(hn);
    }
    for (int slot = 1; slot <= n; ++slot) {
        std::map<int, std::map<int, long long>> nx;
        bool last = slot == n;
        for (auto& [u, dist] : cur) {
            std::vector<int> nexts = last ? std::vector<int>{y_} : q_->b_objs;
            for (int v : nexts) {
                const Complex& h = a.hom(u, v);
                for (int hn : h.degrees())
                    for (auto& [d0, c0] : dist) nx[v][d0 + hn] += c0 * h.dim(hn);
            }
        }
        cur = std::move(nx);
    }
    auto it = cur.find(y_);
    if (it == cur.end()) return 0;
    auto jt = it->second.find(degree + n);
    return jt == it->second.end() ? 0 : jt->second;
}

// ---------------------------------------------------------------- pipeline 1

namespace {

struct EscapeData {
    bool pieces_empty = false;
    bool mid_safe = false;
    int into_max = 0, mid_max = 0, from_max = 0;
};

EscapeData escape_data(const TableCat& a, const std::vector<int>& b, int x, int y) {
    EscapeData e;
    if (b.empty()) {
        e.pieces_empty = true;
        return e;
    }
    DegRange into, mid, from;
    for (int u : b) {
        DegRange r1 = hom_range(a.hom(u, y));
        if (!r1.empty) { into.absorb(r1.lo); into.absorb(r1.hi); }
        DegRange r2 = hom_range(a.hom(x, u));
        if (!r2.empty) { from.absorb(r2.lo); from.absorb(r2.hi); }
        for (int v : b) {
            DegRange r3 = hom_range(a.hom(u, v));
            if (!r3.empty) { mid.absorb(r3.lo); mid.absorb(r3.hi); }
        }
    }
    if (into.empty || from.empty) {
        e.pieces_empty = true;
        return e;
    }
    e.into_max = into.hi;
    e.from_max = from.hi;
    e.mid_max = mid.empty ? 0 : mid.hi;
    e.mid_safe = mid.empty || mid.hi <= 0;
    return e;
}

int escape_dmax(const EscapeData& e, int n) {
    if (n == 1) return e.into_max + e.from_max - 1;
    return e.into_max + (n - 1) * e.mid_max + e.from_max - n;
}

std::string render_rep(const Complex& cx, int degree, const SparseVec& rep) {
    std::ostringstream os;
    bool first = true;
    for (auto& [i, c] : rep.t) {
        if (!first) os << " + ";
        first = false;
        std::string cs = c.to_string();
        if (cs != "1") os << cs << "*";
        os << cx.labels(degree)[i];
    }
    return os.str();
}

}  // namespace

ExtTable quotient_ext(const QuotientCategory& q, int x, int y, int lo, int hi,
                      const QuotientExtOptions& opt) {
    const TableCat& a = *q.a;
    FilteredHom fh(q, x, y, opt.max_level, lo, hi, opt.cap);
    bool pieces_acyclic = true;
    for (int u : q.b_objs) {
        const Complex& h = a.hom(u, y);
        if (h.total_dim() == 0) continue;
        for (int n = h.min_degree() - 1; n <= h.max_degree() + 1; ++n)
            if (cohomology(h, n).dim != 0) pieces_acyclic = false;
    }
    EscapeData esc = escape_data(a, q.b_objs, x, y);

    ExtTable out;
    for (int m = lo; m <= hi; ++m) {
        std::vector<Cohomology> hs;
        for (int N = 0; N <= opt.max_level; ++N) hs.push_back(cohomology(fh.truncation(N), m));
        std::vector<bool> iso(opt.max_level + 1, false);
        for (int N = 1; N <= opt.max_level; ++N) {
            if (hs[N - 1].dim != hs[N].dim) continue;
            if (hs[N].dim == 0) {
                iso[N] = true;
                continue;
            }
            bool ok = true;
            SparseMatrix mat(hs[N].dim, hs[N - 1].dim, a.field());
            for (int j = 0; j < hs[N - 1].dim && ok; ++j) {
                const auto& mem = fh.members(N - 1, m);
                SparseVec vec;
                for (auto& [i, c] : hs[N - 1].reps[j].t)
                    vec.add_term(fh.position_in(N, mem[i]).second, c);
                auto coords = class_coords(fh.truncation(N), hs[N], vec);
                if (!coords) {
                    ok = false;
                    break;
                }
                for (int i = 0; i < hs[N].dim; ++i)
                    if (!(*coords)[i].is_zero()) mat.set(i, j, (*coords)[i]);
            }
            iso[N] = ok && mat.rank() == hs[N].dim;
        }
        ExtEntry e;
        e.dim = hs[opt.max_level].dim;
        e.stable = opt.max_level >= opt.stable_runs;
        for (int k2 = 0; k2 < opt.stable_runs && e.stable; ++k2)
            e.stable = iso[opt.max_level - k2];
        if (e.stable) {
            e.stabilized_at = opt.max_level;
            while (e.stabilized_at > 1 && iso[e.stabilized_at - 1]) --e.stabilized_at;
        }
        if (pieces_acyclic) e.exact = true;
        if (!e.exact &&
            (esc.pieces_empty || (esc.mid_safe && escape_dmax(esc, opt.max_level + 1) < m - 1)))
            e.exact = true;
        if (opt.want_reps)
            for (auto& rep : hs[opt.max_level].reps)
                e.reps.push_back(render_rep(fh.truncation(opt.max_level), m, rep));
        out[m] = e;
    }
    return out;
}

// ---------------------------------------------------------------- pipeline 2

namespace {
int hom_span(const TableCat& a) {
    int s = 0;
    for (int i = 0; i < a.n_objects(); ++i)
        for (int j = 0; j < a.n_objects(); ++j) {
            DegRange r = hom_range(a.hom(i, j));
            if (!r.empty) s = std::max({s, std::abs(r.lo), std::abs(r.hi)});
        }
    return s;
}
}  // namespace

ExtTable cone_formula_ext(const TableCat& a, const TableCat& aop, const QuotientCategory& q,
                          int x, int y, int lo, int hi, ConeRoute route, int budget) {
    int span = hom_span(a) + 1;
    int rlo = lo - span, rhi = hi + span;
    Module hy = yoneda_right(a, aop, y);
    Resolution r = route == ConeRoute::SemiFree
                       ? semi_free_resolve(a, hy, q.b_objs, rlo, rhi, budget)
                       : bar_resolution(a, hy, q.b_objs, budget, rlo, rhi);
    SemiFreeModule::Value v = r.p.value_at(x);
    ChainMap ev;
    ev.source = &v.cx;
    const Complex& target = a.hom(x, y);
    ev.target = &target;
    for (auto& [key, pos] : v.index) {
        auto [i, bp] = key;
        if (r.counit[i].is_zero()) continue;
        Mor pm{r.p.gen(i).obj, y, r.counit[i]};
        Mor w = a.basis_mor(x, r.p.gen(i).obj, bp);
        Mor img = a.compose(pm, w);
        for (auto& [pp, cc] : img.v.c) {
            auto it = ev.blocks.find(pos.first);
            if (it == ev.blocks.end())
                it = ev.blocks
                         .emplace(pos.first, SparseMatrix(target.dim(pos.first),
                                                          v.cx.dim(pos.first), a.field()))
                         .first;
            it->second.add(pp.second, pos.second, cc);
        }
    }
    ConeResult cone = cone_complex(ev);
    bool cells_ok = route == ConeRoute::SemiFree ? r.complete : true;
    for (auto& [cell, ok] : r.cells) cells_ok = cells_ok && ok;
    EscapeData esc = escape_data(a, q.b_objs, x, y);
    ExtTable out;
    for (int m = lo; m <= hi; ++m) {
        ExtEntry e;
        e.dim = cohomology(cone.cx, m).dim;
        e.exact = cells_ok;
        if (!e.exact && route == ConeRoute::Bar)
            if (esc.pieces_empty || (esc.mid_safe && escape_dmax(esc, budget + 1) < m - 1))
                e.exact = true;
        e.stable = e.exact;
        out[m] = e;
    }
    return out;
}

// ---------------------------------------------------------------- pipeline 3

ExtTable verdier_ext_via_orthogonal(const TableCat& a, const TableCat& aop,
                                    const QuotientCategory& q, int x, int y, int lo, int hi,
                                    int budget) {
    int span = hom_span(a) + 1;
    OrthogonalCone oc = lind_res_cone(a, aop, q.b_objs, y, lo - span, hi + span, budget);
    ExtTable out;
    for (int m = lo; m <= hi; ++m) {
        ExtEntry e;
        e.dim = cohomology(oc.mat.value(x), m).dim;
        e.exact = oc.orthogonal;
        e.stable = e.exact;
        out[m] = e;
    }
    return out;
}

// ---------------------------------------------------------------- cross-check

std::string CrossCheckReport::summary() const {
    std::ostringstream os;
    os << "cross-check: " << entries.size() << " cells, " << certified_agreements
       << " certified agreements, " << discrepancies << " discrepancies";
    return os.str();
}

CrossCheckReport cross_check(const TableCat& a, const TableCat& aop, const QuotientCategory& q,
                             const std::vector<std::pair<int, int>>& pairs, int lo, int hi,
                             const QuotientExtOptions& opt) {
    CrossCheckReport rep;
    for (auto& [x, y] : pairs) {
        ExtTable filt = quotient_ext(q, x, y, lo, hi, opt);
        ExtTable conet = cone_formula_ext(a, aop, q, x, y, lo, hi, ConeRoute::SemiFree, 12);
        ExtTable verd = verdier_ext_via_orthogonal(a, aop, q, x, y, lo, hi, 12);
        for (int m = lo; m <= hi; ++m) {
            CrossCheckEntry e{x, y, m, filt[m], conet[m], verd[m], false, false};
            e.mutually_certified = filt[m].trusted() && conet[m].trusted() && verd[m].trusted();
            if (e.mutually_certified) {
                bool agree = filt[m].dim == conet[m].dim && conet[m].dim == verd[m].dim;
                e.discrepancy = !agree;
                if (agree) ++rep.certified_agreements;
                else ++rep.discrepancies;
            }
            rep.entries.push_back(e);
        }
    }
    return rep;
}

// ---------------------------------------------------------------- cone module

Module cone_module(const ModuleMap& eta) {
    const Module& src = *eta.src;
    const Module& tgt = *eta.tgt;
    const TableCat& cat = src.cat();
    Field k = cat.field();
    Module out(&cat);
    std::vector<ConeResult> cones;
    std::vector<std::map<std::tuple<int, int, int>, Pos>> pos(cat.n_objects());
    for (int z = 0; z < cat.n_objects(); ++z) {
        cones.push_back(cone_complex(eta.at[z]));
        out.value(z) = cones.back().cx;
        std::map<int, int> counts;
        for (auto& [part, d0, i0] : cones.back().origin) {
            int deg = part == 0 ? d0 : d0 - 1;
            pos[z][{part, d0, i0}] = {deg, counts[deg]++};
        }
    }
    for (int z = 0; z < cat.n_objects(); ++z)
        for (int z2 = 0; z2 < cat.n_objects(); ++z2) {
            const Complex& h = cat.hom(z, z2);
            for (int bn : h.degrees())
                for (int bi = 0; bi < h.dim(bn); ++bi) {
                    std::map<int, SparseMatrix> blocks;
                    auto ensure = [&](int n) -> SparseMatrix& {
                        auto e = blocks.find(n);
                        if (e == blocks.end())
                            e = blocks
                                    .emplace(n, SparseMatrix(out.value(z2).dim(n + bn),
                                                             out.value(z).dim(n), k))
                                    .first;
                        return e->second;
                    };
                    Scalar twist = bn % 2 == 0 ? Scalar::one(k) : Scalar(k, -1);
                    for (int n : tgt.value(z).degrees()) {
                        SparseMatrix blk = tgt.act(z, z2, {bn, bi}, n);
                        for (int r2 = 0; r2 < blk.rows(); ++r2)
                            for (auto& [c2, vv] : blk.row(r2).t) {
                                Pos from = pos[z].at({0, n, c2});
                                Pos to = pos[z2].at({0, n + bn, r2});
                                ensure(from.first).add(to.second, from.second, vv);
                            }
                    }
                    for (int n : src.value(z).degrees()) {
                        SparseMatrix blk = src.act(z, z2, {bn, bi}, n);
                        for (int r2 = 0; r2 < blk.rows(); ++r2)
                            for (auto& [c2, vv] : blk.row(r2).t) {
                                Pos from = pos[z].at({1, n, c2});
                                Pos to = pos[z2].at({1, n + bn, r2});
                                ensure(from.first).add(to.second, from.second, vv * twist);
                            }
                    }
                    for (auto& [n, blk] : blocks) out.set_act(z, z2, {bn, bi}, n, blk);
                }
        }
    return out;
}

// ---------------------------------------------------------------- quotient checkers

namespace {

bool object_contractible(const TableCat& c, int t) {
    const Complex& e = c.hom(t, t);
    if (e.total_dim() == 0) return true;
    SparseMatrix d = e.d(-1);
    std::vector<Scalar> b(e.dim(0), Scalar::zero(c.field()));
    for (auto& [p, s] : c.unit(t).c)
        if (p.first == 0) b[p.second] = s;
    return d.solve(b).has_value();
}

Verdict object_reachable(const TableCat& c, const std::vector<int>& images, int t, int lo,
                         int hi) {
    for (int fx : images)
        if (fx == t) return Verdict::Yes;
    bool t_contr = object_contractible(c, t);
    for (int fx : images) {
        if (t_contr && object_contractible(c, fx)) return Verdict::Yes;
        Cohomology h0 = cohomology(c.hom(fx, t), 0);
        for (auto& rep : h0.reps) {
            Mor u{fx, t, {}};
            for (auto& [i, s] : rep.t) u.v.add({0, i}, s);
            if (is_homotopy_iso_class(c, u, lo, hi)) return Verdict::Yes;
        }
    }
    bool no_candidates = true;
    for (int fx : images)
        if (cohomology(c.hom(fx, t), 0).dim > 0 && cohomology(c.hom(t, fx), 0).dim > 0)
            no_candidates = false;
    if (no_candidates && !t_contr) return Verdict::No;
    return Verdict::Inconclusive;
}

}  // namespace

DgQuotientResult is_dg_quotient(const TableFunctor& xi, const TableCat& a_op,
                                const std::vector<int>& b_objs, int lo, int hi, int budget) {
    const TableCat& a = *xi.source;
    const TableCat& c = *xi.target;
    for (int u : b_objs)
        if (!object_contractible(c, xi.obj[u]))
            return {Verdict::No, c.objects()[xi.obj[u]] + " is not contractible",
                    "contractibility"};
    bool surj_pending = false;
    std::string pending;
    for (int t = 0; t < c.n_objects(); ++t) {
        Verdict v = object_reachable(c, xi.obj, t, lo, hi);
        if (v == Verdict::No)
            return {Verdict::No, c.objects()[t] + " unreachable in Ho", "essential-surjectivity"};
        if (v == Verdict::Inconclusive) {
            surj_pending = true;
            pending = c.objects()[t];
        }
    }
    TableCat cop = opposite(c);
    TableFunctor xiop = opposite_functor(xi, a_op, cop);
    bool any_inconclusive = surj_pending;
    std::string inconclusive_witness =
        surj_pending ? "essential surjectivity unresolved at " + pending : "";
    for (int yy = 0; yy < a.n_objects(); ++yy) {
        Module hy = yoneda_right(a, a_op, yy);
        Module ny = restrict_module(xiop, yoneda_right(c, cop, xi.obj[yy]));
        ModuleMap eta;
        eta.src = &hy;
        eta.tgt = &ny;
        for (int xx = 0; xx < a.n_objects(); ++xx) {
            ChainMap f;
            f.source = &hy.value(xx);
            f.target = &ny.value(xx);
            const Complex& hsrc = a.hom(xx, yy);
            for (int n : hsrc.degrees()) {
                SparseMatrix blk(ny.value(xx).dim(n), hsrc.dim(n), a.field());
                for (int i = 0; i < hsrc.dim(n); ++i) {
                    Mor img = xi.apply(a.basis_mor(xx, yy, {n, i}));
                    for (auto& [p, s] : img.v.c)
                        if (p.first == n) blk.add(p.second, i, s);
                }
                if (!blk.is_zero()) f.blocks[n] = blk;
            }
            eta.at.push_back(f);
        }
        Module cm = cone_module(eta);
        InducedImageResult r = check_induced_image(a, a_op, cm, b_objs, lo, hi, budget);
        if (r.verdict == Verdict::No)
            return {Verdict::No,
                    "cone module of " + a.objects()[yy] + " not induced: " + r.witness,
                    "induced-image"};
        if (r.verdict == Verdict::Inconclusive) {
            any_inconclusive = true;
            inconclusive_witness = "induced-image test for " + a.objects()[yy] + ": " + r.witness;
        }
    }
    if (any_inconclusive) return {Verdict::Inconclusive, inconclusive_witness, ""};
    return {Verdict::Yes, "", ""};
}

DgQuotientResult is_dg_quotient_free(const FreeFunctor& xi, int lo, int hi, int word_length) {
    const FreeCat& kk = *xi.source;
    const TableCat& c = *xi.target;
    {
        auto rep = xi.validate();
        if (!rep.ok()) return {Verdict::No, rep.summary(), "functor"};
    }
    for (int t = 0; t < c.n_objects(); ++t) {
        Verdict v = object_reachable(c, xi.obj, t, lo, hi);
        if (v == Verdict::No)
            return {Verdict::No, c.objects()[t] + " unreachable in Ho", "essential-surjectivity"};
        if (v == Verdict::Inconclusive)
            return {Verdict::Inconclusive,
                    "essential surjectivity unresolved at " + c.objects()[t], ""};
    }
    bool all_stable = true;
    for (int x = 0; x < kk.n_objects(); ++x)
        for (int y = 0; y < kk.n_objects(); ++y) {
            FreeHomTrunc tr = materialize_free_hom(kk, x, y, word_length, lo - 1, hi + 1);
            auto est = free_ext_estimate(tr, lo, hi, 2);
            const Complex& hc = c.hom(xi.obj[x], xi.obj[y]);
            for (int m = lo; m <= hi; ++m) {
                Cohomology ht = cohomology(hc, m);
                auto& e = est[m];
                SparseMatrix mat(ht.dim, (int)e.reps.size(), c.field());
                for (size_t j = 0; j < e.reps.size(); ++j) {
                    Mor img = c.zero_mor(xi.obj[x], xi.obj[y]);
                    for (auto& [wi, s] : e.reps[j].t)
                        img = c.add(img, c.scale(xi.apply_word(tr.words[wi]), s));
                    SparseVec vec;
                    for (auto& [p, s] : img.v.c)
                        if (p.first == m) vec.add_term(p.second, s);
                    auto coords = class_coords(hc, ht, vec);
                    if (!coords) return {Verdict::Inconclusive, "image class unresolved", ""};
                    for (int i = 0; i < ht.dim; ++i)
                        if (!(*coords)[i].is_zero()) mat.set(i, (int)j, (*coords)[i]);
                }
                int rank = mat.rank();
                bool injective = rank == (int)e.reps.size();
                bool surjective = rank == ht.dim;
                if (!injective && e.certified)
                    return {Verdict::No,
                            "H^" + std::to_string(m) + "(Hom(" + kk.objects()[x] + "," +
                                kk.objects()[y] +
                                ")) has a certified class killed by the functor",
                            "full-faithfulness"};
                if (!injective || !surjective || e.dim != ht.dim) {
                    return {Verdict::Inconclusive,
                            "estimate mismatch at Hom(" + kk.objects()[x] + "," +
                                kk.objects()[y] + "), degree " + std::to_string(m) +
                                (e.stable ? " (stable evidence)" : " (unstable)"),
                            ""};
                }
                all_stable = all_stable && (e.stable || e.certified);
            }
        }
    if (!all_stable) return {Verdict::Inconclusive, "estimates did not stabilize", ""};
    return {Verdict::Yes, "", ""};
}

// ---------------------------------------------------------------- bundled example

ExampleI2::ExampleI2()
    : a0(cat_a0(Field::rationals())), hull([&] {
          std::vector<TwistedComplex> objs;
          objs.push_back(singleton(a0, 0));
          objs.push_back(singleton(a0, 1));
          TwistedComplex cf(&a0);
          cf.add_summand(1, 0);
          cf.add_summand(0, 1);
          cf.set_q(0, 1, a0.basis_mor(0, 1, {0, 0}));
          objs.push_back(cf);
          return table_from_twisted(a0, objs);
      }()),
      aop(opposite(hull.cat)), q{&hull.cat, {2}}, b{2} {
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int m = -5; m <= 5; ++m) expected[{x, y, m}] = m == 0 ? 1 : 0;
}

}  // namespace dgq
