#pragma once

#include "dgq/freecat.hpp"

namespace dgq {

// Iterative semi-free resolution of a table category: stage 0 is the discrete
// category on the same objects; each stage adjoins free generators hitting
// missed cohomology classes of the target, then generators killing classes
// of the kernel, cell by cell inside the window.
struct CategoryResolution {
    FreeCat cat;
    const TableCat* target = nullptr;
    std::vector<int> obj;         // object map (identity on indices)
    std::vector<Mor> gen_image;   // per generator of cat
    std::map<std::tuple<int, int, int>, bool> cells;   // (x, y, degree) -> quasi-iso here
    bool complete = false;
    int stages = 0;

    FreeFunctor functor() const;
};

struct CatResolveOptions {
    int step_bound = 6;
    int word_length = 7;
    int per_cell_gens = 2;   // generators adjoined per cell per stage
    size_t cap = 200000;
};

CategoryResolution semi_free_resolve_category(const TableCat& c, int lo, int hi,
                                              const CatResolveOptions& opt = {});

}  // namespace dgq
