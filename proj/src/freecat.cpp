#include "dgq/freecat.hpp"

#include <algorithm>

namespace dgq {

// ---------------------------------------------------------------- NCPoly

void NCPoly::add(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) terms.emplace(w, c);
    else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

NCPoly NCPoly::plus(const NCPoly& o) const {
    NCPoly r = *this;
    for (auto& [w, c] : o.terms) r.add(w, c);
    return r;
}

NCPoly NCPoly::scaled(const Scalar& c) const {
    NCPoly r;
    if (c.is_zero()) return r;
    for (auto& [w, s] : terms) r.terms.emplace(w, s * c);
    return r;
}

// ---------------------------------------------------------------- FreeCat

int FreeCat::add_object(const std::string& name) {
    objects_.push_back(name);
    return (int)objects_.size() - 1;
}

int FreeCat::object_index(const std::string& name) const {
    for (int i = 0; i < (int)objects_.size(); ++i)
        if (objects_[i] == name) return i;
    throw error("unknown object '" + name + "'");
}

int FreeCat::add_gen(const std::string& name, int src, int tgt, int deg) {
    if (src < 0 || src >= n_objects() || tgt < 0 || tgt >= n_objects())
        throw error("generator '" + name + "': bad endpoints");
    gens_.push_back(FreeGen{name, src, tgt, deg, {}});
    return (int)gens_.size() - 1;
}

void FreeCat::set_dif(int gen, const NCPoly& p) { gens_.at(gen).dif = p; }

int FreeCat::gen_index(const std::string& name) const {
    for (int i = 0; i < (int)gens_.size(); ++i)
        if (gens_[i].name == name) return i;
    throw error("unknown generator '" + name + "'");
}

int FreeCat::word_tgt(const Word& w) const {
    return w.letters.empty() ? w.src : gens_[w.letters.back()].tgt;
}

int FreeCat::word_degree(const Word& w) const {
    int d = 0;
    for (int g : w.letters) d += gens_[g].deg;
    return d;
}

std::string FreeCat::word_label(const Word& w) const {
    if (w.letters.empty()) return "1_" + objects_[w.src];
    std::string s;
    for (size_t i = w.letters.size(); i-- > 0;) {
        s += gens_[w.letters[i]].name;
        if (i) s += "*";
    }
    return s;
}

NCPoly FreeCat::d_word(const Word& w) const {
    NCPoly out;
    // sign of position i: (-1)^{sum of degrees of letters after i in diagram
    // order} (those are the letters written to the left of it as composition)
    int suffix_deg = 0;
    std::vector<int> sufdeg(w.letters.size() + 1, 0);
    for (size_t i = w.letters.size(); i-- > 0;) {
        suffix_deg += gens_[w.letters[i]].deg;
        sufdeg[i] = suffix_deg;
    }
    for (size_t i = 0; i < w.letters.size(); ++i) {
        const FreeGen& g = gens_[w.letters[i]];
        if (g.dif.is_zero()) continue;
        Scalar sgn = (sufdeg[i + 1]) % 2 == 0 ? Scalar::one(field_) : Scalar(field_, -1);
        for (auto& [rep, c] : g.dif.terms) {
            Word nw;
            nw.src = w.src;
            nw.letters.assign(w.letters.begin(), w.letters.begin() + i);
            nw.letters.insert(nw.letters.end(), rep.letters.begin(), rep.letters.end());
            nw.letters.insert(nw.letters.end(), w.letters.begin() + i + 1, w.letters.end());
            out.add(nw, c * sgn);
        }
    }
    return out;
}

NCPoly FreeCat::d_poly(const NCPoly& p) const {
    NCPoly out;
    for (auto& [w, c] : p.terms) out = out.plus(d_word(w).scaled(c));
    return out;
}

NCPoly FreeCat::multiply(const NCPoly& a, const NCPoly& b) const {
    // a ° b: b is applied first; diagram order concatenates b then a
    NCPoly out;
    for (auto& [wa, ca] : a.terms)
        for (auto& [wb, cb] : b.terms) {
            if (word_tgt(wb) != wa.src && !(wa.letters.empty() && wa.src == word_tgt(wb)))
                throw error("multiply: words not composable");
            Word w;
            w.src = wb.src;
            w.letters = wb.letters;
            w.letters.insert(w.letters.end(), wa.letters.begin(), wa.letters.end());
            out.add(w, ca * cb);
        }
    return out;
}

std::vector<Word> FreeCat::enumerate_words(int x, int y, int max_len, int deg_lo, int deg_hi,
                                           size_t cap) const {
    // out-adjacency
    std::vector<std::vector<int>> out_gens(n_objects());
    for (int i = 0; i < n_gens(); ++i) out_gens[gens_[i].src].push_back(i);
    std::vector<Word> result;
    Word cur;
    cur.src = x;
    // DFS with explicit stack of (word, current object, degree)
    struct Item {
        Word w;
        int at, deg;
    };
    std::vector<Item> stack;
    stack.push_back({cur, x, 0});
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (it.at == y && it.deg >= deg_lo && it.deg <= deg_hi) {
            result.push_back(it.w);
            if (result.size() > cap) throw error("enumerate_words: cap exceeded");
        }
        if ((int)it.w.letters.size() == max_len) continue;
        for (int g : out_gens[it.at]) {
            Item nx;
            nx.w = it.w;
            nx.w.letters.push_back(g);
            nx.at = gens_[g].tgt;
            nx.deg = it.deg + gens_[g].deg;
            stack.push_back(nx);
        }
    }
    std::sort(result.begin(), result.end(), [&](const Word& a, const Word& b) {
        if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
        return a < b;
    });
    return result;
}

ValidationReport FreeCat::validate() const {
    ValidationReport rep;
    for (int i = 0; i < n_gens(); ++i) {
        const FreeGen& g = gens_[i];
        for (auto& [w, c] : g.dif.terms) {
            if (w.src != g.src || word_tgt(w) != g.tgt) {
                rep.issues.push_back({"composability",
                                      "d(" + g.name + ") contains a word with wrong endpoints"});
                continue;
            }
            if (word_degree(w) != g.deg + 1)
                rep.issues.push_back(
                    {"degree", "d(" + g.name + ") contains a word of degree " +
                                   std::to_string(word_degree(w)) + " != " +
                                   std::to_string(g.deg + 1)});
        }
        NCPoly dd = d_poly(g.dif);
        if (!dd.is_zero())
            rep.issues.push_back({"d2", "d^2(" + g.name + ") != 0"});
    }
    return rep;
}

std::optional<int> FreeCat::length_homogeneous_delta() const {
    std::optional<int> delta;
    for (auto& g : gens_) {
        for (auto& [w, c] : g.dif.terms) {
            int dl = (int)w.letters.size() - 1;
            if (!delta) delta = dl;
            else if (*delta != dl) return std::nullopt;
        }
    }
    if (!delta) return 0;   // no differentials at all
    return delta;
}

// ---------------------------------------------------------------- truncation

int FreeHomTrunc::dim_at(int deg, int max_len) const {
    int n = 0;
    for (size_t i = 0; i < words.size(); ++i)
        if (degree[i] == deg && length[i] <= max_len) ++n;
    return n;
}

FreeHomTrunc materialize_free_hom(const FreeCat& fc, int x, int y, int max_len, int deg_lo,
                                  int deg_hi, size_t cap) {
    FreeHomTrunc t;
    t.fc = &fc;
    t.x = x;
    t.y = y;
    t.deg_lo = deg_lo;
    t.deg_hi = deg_hi;
    // ambient: pad by the largest length increase of any differential term
    int delta_max = 0;
    for (int i = 0; i < fc.n_gens(); ++i)
        for (auto& [w, c] : fc.gen(i).dif.terms)
            delta_max = std::max(delta_max, (int)w.letters.size() - 1);
    t.safe_len = max_len;
    t.ambient_len = max_len + delta_max;
    t.words = fc.enumerate_words(x, y, t.ambient_len, deg_lo, deg_hi, cap);
    for (size_t i = 0; i < t.words.size(); ++i) {
        t.index[t.words[i]] = (int)i;
        t.length.push_back((int)t.words[i].letters.size());
        t.degree.push_back(fc.word_degree(t.words[i]));
    }
    t.dcol.resize(t.words.size());
    for (size_t i = 0; i < t.words.size(); ++i) {
        if (t.length[i] > t.safe_len) continue;   // differential not exact there
        NCPoly dw = fc.d_word(t.words[i]);
        for (auto& [w, c] : dw.terms) {
            auto it = t.index.find(w);
            if (it == t.index.end()) continue;   // out of the degree window only
            t.dcol[i].add_term(it->second, c);
        }
    }
    return t;
}

std::map<int, DegreeEstimate> free_ext_estimate(const FreeHomTrunc& t, int lo, int hi,
                                                int stable_runs) {
    std::map<int, DegreeEstimate> out;
    Field f = t.fc->field();
    auto cert = t.fc->length_homogeneous_delta();
    bool certified = cert.has_value() && *cert >= 1;
    for (int n = lo; n <= hi; ++n) {
        if (n - 1 < t.deg_lo || n + 1 > t.deg_hi)
            throw error("window-insufficient: free ext at degree " + std::to_string(n));
        // boundaries from the full safe length
        RowSpan bfull(f, false);
        for (size_t i = 0; i < t.words.size(); ++i)
            if (t.degree[i] == n - 1 && t.length[i] <= t.safe_len) bfull.insert(t.dcol[i]);
        std::vector<int> dims;
        DegreeEstimate est;
        // only the lengths feeding the stability check need evaluating
        int len_from = std::max(0, t.safe_len - stable_runs - 1);
        for (int len = len_from; len <= t.safe_len; ++len) {
            // cocycles among words of length <= len at degree n
            std::vector<int> cols;
            for (size_t i = 0; i < t.words.size(); ++i)
                if (t.degree[i] == n && t.length[i] <= len) cols.push_back((int)i);
            SparseMatrix m((int)t.words.size(), (int)cols.size(), f);
            for (size_t j = 0; j < cols.size(); ++j)
                for (auto& [r, c] : t.dcol[cols[j]].t) m.add(r, (int)j, c);
            auto ker = m.kernel_basis();
            // classes modulo boundaries: rank of the residuals against bfull
            RowSpan local(f, false);
            int dim = 0;
            std::vector<SparseVec> reps;
            for (auto& kv : ker) {
                SparseVec v;   // back to word coordinates
                for (auto& [j, c] : kv.t) v.add_term(cols[j], c);
                SparseVec resid = bfull.reduce(v);
                if (resid.is_zero()) continue;
                if (local.insert(resid)) {
                    ++dim;
                    reps.push_back(v);
                }
            }
            dims.push_back(dim);
            est.dim = dim;
            est.reps = reps;
        }
        est.stable = true;
        for (int k = 0; k < stable_runs; ++k) {
            int a = (int)dims.size() - 1 - k, b = a - 1;
            if (b < 0 || dims[a] != dims[b]) est.stable = false;
        }
        est.certified = certified;
        out[n] = est;
    }
    return out;
}

// ---------------------------------------------------------------- functors

Mor FreeFunctor::apply_word(const Word& w) const {
    const TableCat& C = *target;
    Mor acc = C.unit_mor(obj.at(w.src));
    for (int g : w.letters) acc = C.compose(gen_image.at(g), acc);
    return acc;
}

Mor FreeFunctor::apply_poly(int src, int tgt, const NCPoly& p) const {
    const TableCat& C = *target;
    Mor acc = C.zero_mor(obj.at(src), obj.at(tgt));
    for (auto& [w, c] : p.terms) acc = C.add(acc, C.scale(apply_word(w), c));
    return acc;
}

ValidationReport FreeFunctor::validate() const {
    ValidationReport rep;
    const FreeCat& K = *source;
    const TableCat& C = *target;
    for (int i = 0; i < K.n_gens(); ++i) {
        const FreeGen& g = K.gen(i);
        const Mor& img = gen_image.at(i);
        if (img.src != obj.at(g.src) || img.tgt != obj.at(g.tgt)) {
            rep.issues.push_back({"object", g.name + ": image endpoints mismatch"});
            continue;
        }
        auto dg = img.degree();
        if (dg && *dg != g.deg)
            rep.issues.push_back({"degree", g.name + ": image degree mismatch"});
        Mor lhs = apply_poly(g.src, g.tgt, g.dif);
        Mor rhs = C.d(img);
        if (!C.add(lhs, C.scale(rhs, Scalar(C.field(), -1))).is_zero())
            rep.issues.push_back({"differential", g.name + ": F(dg) != d F(g)"});
    }
    return rep;
}

// ---------------------------------------------------------------- instances

namespace {
Word mk_word(int src, std::initializer_list<int> letters) {
    Word w;
    w.src = src;
    w.letters = letters;
    return w;
}
}  // namespace

FreeCat free_cat_K(Field f) {
    FreeCat k(f);
    int x1 = k.add_object("X1");
    int x2 = k.add_object("X2");
    int fi = k.add_gen("f", x1, x2, 0);
    int gi = k.add_gen("g", x2, x1, 0);
    int a1 = k.add_gen("a1", x1, x1, -1);
    int a2 = k.add_gen("a2", x2, x2, -1);
    int u = k.add_gen("u", x1, x2, -2);
    NCPoly da1;
    da1.add(mk_word(x1, {fi, gi}), Scalar::one(f));    // g ° f, diagram order f then g
    da1.add(mk_word(x1, {}), Scalar(f, -1));
    k.set_dif(a1, da1);
    NCPoly da2;
    da2.add(mk_word(x2, {gi, fi}), Scalar::one(f));    // f ° g
    da2.add(mk_word(x2, {}), Scalar(f, -1));
    k.set_dif(a2, da2);
    NCPoly du;
    du.add(mk_word(x1, {a1, fi}), Scalar::one(f));     // f ° a1
    du.add(mk_word(x1, {fi, a2}), Scalar(f, -1));      // a2 ° f
    k.set_dif(u, du);
    return k;
}

FreeCat free_cat_K_broken(Field f) {
    FreeCat k(f);
    int x1 = k.add_object("X1");
    int x2 = k.add_object("X2");
    int fi = k.add_gen("f", x1, x2, 0);
    int gi = k.add_gen("g", x2, x1, 0);
    int a1 = k.add_gen("a1", x1, x1, -1);
    int a2 = k.add_gen("a2", x2, x2, -1);
    int u = k.add_gen("u", x1, x2, -2);
    NCPoly da1;
    da1.add(mk_word(x1, {fi, gi}), Scalar::one(f));
    k.set_dif(a1, da1);
    NCPoly da2;
    da2.add(mk_word(x2, {gi, fi}), Scalar::one(f));
    k.set_dif(a2, da2);
    NCPoly du;
    du.add(mk_word(x1, {a1, fi}), Scalar::one(f));
    du.add(mk_word(x1, {fi, a2}), Scalar(f, -1));
    k.set_dif(u, du);
    return k;
}

FreeCat free_cat_a0(Field f) {
    FreeCat k(f);
    int x1 = k.add_object("X1");
    int x2 = k.add_object("X2");
    k.add_gen("f", x1, x2, 0);
    return k;
}

FreeFunctor functor_K_to_i2(const FreeCat& k, const TableCat& i2) {
    FreeFunctor F;
    F.source = &k;
    F.target = &i2;
    F.obj = {0, 1};
    F.gen_image.resize(k.n_gens());
    F.gen_image[k.gen_index("f")] = i2.basis_mor(0, 1, {0, 0});
    F.gen_image[k.gen_index("g")] = i2.basis_mor(1, 0, {0, 0});
    F.gen_image[k.gen_index("a1")] = i2.zero_mor(0, 0);
    F.gen_image[k.gen_index("a2")] = i2.zero_mor(1, 1);
    F.gen_image[k.gen_index("u")] = i2.zero_mor(0, 1);
    return F;
}

}  // namespace dgq
