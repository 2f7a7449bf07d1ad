#!/usr/bin/env python3
"""Brute-force reference values for the Rust test suite.

Everything here is recomputed from first principles with plain Python data
(categories as explicit hom-sets and composition dictionaries, simplicial
sets as vertex sequences) and written to ../tests/fixtures/derived.json.

    python3 crates/core/oracles/derive_fixtures.py [--check]

With --check the script exits non-zero if the stored fixtures differ.
"""

import itertools
import json
import sys
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "derived.json"


# ---------------------------------------------------------------- categories

class Cat:
    """objects: list; arrows: list of (name, src, tgt); comp[(g, f)] = g.f"""

    def __init__(self, objects, arrows, ident, comp):
        self.objects = list(objects)
        self.arrows = list(arrows)
        self.ident = dict(ident)
        self.comp = dict(comp)

    def hom(self, a, b):
        return [m for m in self.arrows if m[1] == a and m[2] == b]

    def iso(self, m):
        return any(
            self.comp.get((g, m)) == self.ident[m[1]] and self.comp.get((m, g)) == self.ident[m[2]]
            for g in self.hom(m[2], m[1])
        )


def thin(objects, leq):
    """The preorder on `objects`; one arrow a -> b whenever leq(a, b)."""
    arrows = [(f"{a}->{b}", a, b) for a in objects for b in objects if leq(a, b)]
    by_ends = {(m[1], m[2]): m for m in arrows}
    ident = {a: by_ends[(a, a)] for a in objects}
    comp = {}
    for f in arrows:
        for g in arrows:
            if f[2] == g[1]:
                comp[(g, f)] = by_ends[(f[1], g[2])]
    return Cat(objects, arrows, ident, comp)


def ordinal(n):
    return thin(range(n + 1), lambda a, b: a <= b)


def chaotic(m):
    return thin(range(m + 1), lambda a, b: True)


def idempotent():
    i, e = ("id", 0, 0), ("e", 0, 0)
    comp = {(i, i): i, (i, e): e, (e, i): e, (e, e): e}
    return Cat([0], [i, e], {0: i}, comp)


def product(c, d):
    objects = [(a, b) for a in c.objects for b in d.objects]
    arrows = [((f[0], g[0]), (f[1], g[1]), (f[2], g[2])) for f in c.arrows for g in d.arrows]
    split = {m: (f, g) for m, (f, g) in zip(arrows, [(f, g) for f in c.arrows for g in d.arrows])}
    ident = {(a, b): (c.ident[a][0], d.ident[b][0]) for a, b in objects}
    ident = {o: next(m for m in arrows if m[0] == ident[o] and m[1] == o) for o in objects}
    index = {(split[m][0], split[m][1]): m for m in arrows}
    comp = {}
    for x in arrows:
        for y in arrows:
            if x[2] == y[1]:
                (f1, g1), (f2, g2) = split[x], split[y]
                comp[(y, x)] = index[(c.comp[(f2, f1)], d.comp[(g2, g1)])]
    return Cat(objects, arrows, ident, comp)


def functors(c, d):
    """All functors c -> d, by backtracking over arrow images."""
    ids = set(c.ident.values())
    # identities first, then arrows by how often they factor, so that
    # composites are assigned after their factors and are forced
    factors = {m: 0 for m in c.arrows}
    for (g, f), h in c.comp.items():
        if g not in ids and f not in ids:
            factors[h] += 1
    arrows = sorted(c.arrows, key=lambda m: (m not in ids, factors[m], str(m)))
    out = []

    def go(i, fo, fm):
        if i == len(arrows):
            out.append((dict(fo), dict(fm)))
            return
        m = arrows[i]
        for a in ([fo[m[1]]] if m[1] in fo else d.objects):
            for b in ([fo[m[2]]] if m[2] in fo else d.objects):
                if m[1] == m[2] and a != b:
                    continue
                added = [o for o in {m[1], m[2]} if o not in fo]
                for o, v in ((m[1], a), (m[2], b)):
                    fo.setdefault(o, v)
                for img in d.hom(a, b):
                    fm[m] = img
                    if consistent(c, d, fo, fm, m):
                        go(i + 1, fo, fm)
                    del fm[m]
                for o in added:
                    del fo[o]

    go(0, {}, {})
    return out


def consistent(c, d, fo, fm, m):
    if m == c.ident[m[1]] and fm[m] != d.ident[fo[m[1]]]:
        return False
    for (g, f), h in c.comp.items():
        if m in (g, f, h) and g in fm and f in fm and h in fm:
            if d.comp[(fm[g], fm[f])] != fm[h]:
                return False
    return True


def nat_trans(c, d, F, G):
    fo, fm = F
    go_, gm = G
    out = []
    choices = [d.hom(fo[o], go_[o]) for o in c.objects]
    for comps in itertools.product(*choices):
        a = dict(zip(c.objects, comps))
        if all(d.comp[(a[m[2]], fm[m])] == d.comp[(gm[m], a[m[1]])] for m in c.arrows):
            out.append(a)
    return out


def functor_category_size(c, d):
    fs = functors(c, d)
    return len(fs), sum(len(nat_trans(c, d, F, G)) for F in fs for G in fs)


def iso_classes(c):
    classes = []
    for o in c.objects:
        for cl in classes:
            if any(c.iso(m) for m in c.hom(cl[0], o)):
                cl.append(o)
                break
        else:
            classes.append([o])
    return len(classes)


def free_groupoid_path_count(n):
    """Reduced words in the generators i -> i+1 and their inverses, grouped by
    endpoints. Words are enumerated up to length 2n, which bounds every
    reduced path in a linear quiver."""
    letters = [(i, +1) for i in range(n)] + [(i, -1) for i in range(n)]
    paths = set()
    for start in range(n + 1):
        paths.add((start, start, ()))
        frontier = [(start, ())]
        for _ in range(2 * n):
            nxt = []
            for pos, word in frontier:
                for (i, s) in letters:
                    if s == +1 and i != pos or s == -1 and i + 1 != pos:
                        continue
                    if word and word[-1] == (i, -s):
                        continue
                    w = word + ((i, s),)
                    end = pos + s
                    paths.add((start, end, w))
                    nxt.append((end, w))
            frontier = nxt
    # a groupoid on a tree quiver: reduced words are the morphisms
    return n + 1, len(paths)


# -------------------------------------------------------- simplicial sets

def simplices_of_nerve(c, k):
    """Composable strings of length k (objects when k = 0)."""
    if k == 0:
        return [(o,) for o in c.objects]
    if k == 1:
        return [(m,) for m in c.arrows]
    return [s + (m,) for s in simplices_of_nerve(c, k - 1) for m in c.arrows if m[1] == s[-1][2]]


def nerve_generator_counts(c, d):
    out = []
    for k in range(d + 1):
        if k == 0:
            out.append(len(c.objects))
            continue
        strings = simplices_of_nerve(c, k)
        out.append(sum(1 for s in strings if all(m != c.ident[m[1]] for m in s)))
    return out


def vertex_sset(vertices, faces_ok, dim):
    """A simplicial set whose k-simplices are the vertex sequences of length
    k + 1 accepted by faces_ok; degenerate ones repeat a vertex."""
    levels = []
    for k in range(dim + 1):
        levels.append([s for s in itertools.product(vertices, repeat=k + 1) if faces_ok(s)])
    return levels


def nondegenerate(levels):
    return [sum(1 for s in l if all(s[i] != s[i + 1] for i in range(len(s) - 1))) for l in levels]


def monotone_in(allowed):
    """Monotone sequences whose vertex set lies in one of the allowed sets."""
    def ok(s):
        return all(s[i] <= s[i + 1] for i in range(len(s) - 1)) and any(set(s) <= a for a in allowed)
    return ok


def simplex_sset(n, dim):
    return vertex_sset(range(n + 1), monotone_in([set(range(n + 1))]), dim)


def horn21(dim):
    return vertex_sset(range(3), monotone_in([{0, 1}, {1, 2}]), dim)


def spine(n, dim):
    return vertex_sset(range(n + 1), monotone_in([{i, i + 1} for i in range(n)]), dim)


def j_sset(m, dim):
    return vertex_sset(range(m + 1), lambda s: True, dim)


def square(dim):
    verts = [(a, b) for a in range(2) for b in range(2)]
    return vertex_sset(
        verts,
        lambda s: all(s[i][0] <= s[i + 1][0] and s[i][1] <= s[i + 1][1] for i in range(len(s) - 1)),
        dim,
    )


def maps_into_nerve(levels, c):
    """Maps X -> N C for X given by vertex sequences. A map is determined by
    its values on 1-simplices; 2-simplices impose composition."""
    verts = sorted({s[0] for s in levels[0]})
    edges = levels[1]
    tris = levels[2] if len(levels) > 2 else []
    count = 0
    for objs in itertools.product(c.objects, repeat=len(verts)):
        o = dict(zip(verts, objs))
        choices = []
        for (u, v) in edges:
            if u == v:
                choices.append([c.ident[o[u]]])
            else:
                choices.append(c.hom(o[u], o[v]))
        index = {e: i for i, e in enumerate(edges)}
        for imgs in itertools.product(*choices):
            if all(
                c.comp[(imgs[index[(v, w)]], imgs[index[(u, v)]])] == imgs[index[(u, w)]]
                for (u, v, w) in tris
            ):
                count += 1
    return count


def count_sset_maps(x, y):
    """Maps between vertex-sequence simplicial sets: vertex maps sending every
    simplex to a simplex (both sides are determined by vertices)."""
    xv = sorted({s[0] for s in x[0]})
    yv = sorted({s[0] for s in y[0]})
    ys = [set(l) for l in y]
    count = 0
    for img in itertools.product(yv, repeat=len(xv)):
        f = dict(zip(xv, img))
        if all(tuple(f[v] for v in s) in ys[k] for k, l in enumerate(x) for s in l):
            count += 1
    return count


def pi0(levels):
    parent = {s[0]: s[0] for s in levels[0]}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for (u, v) in levels[1]:
        parent[find(u)] = find(v)
    return len({find(a) for a in parent})


def is_kan_nerve_01():
    """Is there an outer horn in N[1] at level 2 without a filler? Horns
    Λ²₀ are pairs (d1, d2) of edges with a common source; a filler is a
    composable pair (g, f) with f = d2 and g.f = d1."""
    c = ordinal(1)
    for f in c.arrows:
        for h in c.arrows:
            if f[1] != h[1]:
                continue
            if not any(g[1] == f[2] and g[2] == h[2] and c.comp[(g, f)] == h for g in c.arrows):
                return False
    return True


# ------------------------------------------------- bisimplicial quantities

def grid(n, m):
    return product(ordinal(n), chaotic(m))


def classifying_count(c, n, m):
    return len(functors(grid(n, m), c))


# ------------------------------------------------------------------- main

CORPUS = {
    "[0]": lambda: ordinal(0),
    "[1]": lambda: ordinal(1),
    "[2]": lambda: ordinal(2),
    "I[1]": lambda: chaotic(1),
    "I[2]": lambda: chaotic(2),
    "idem": idempotent,
    "[1]xI[1]": lambda: product(ordinal(1), chaotic(1)),
}


def derive():
    d = {}
    c3 = ordinal(3)
    d["ordinal_3"] = [len(c3.objects), len(c3.arrows)]
    d["free_groupoid_2"] = list(free_groupoid_path_count(2))
    idem = idempotent()
    d["iso_idempotent_morphisms"] = sum(1 for m in idem.arrows if idem.iso(m))
    d["fun_1_1"] = list(functor_category_size(ordinal(1), ordinal(1)))
    d["fun_1xI1_I1_objects"] = len(functors(product(ordinal(1), chaotic(1)), chaotic(1)))
    d["tau0_1xI1"] = iso_classes(product(ordinal(1), chaotic(1)))
    d["functors_1_2"] = len(functors(ordinal(1), ordinal(2)))
    c1 = ordinal(1)
    const = lambda o: ({x: o for x in c1.objects}, {m: c1.ident[o] for m in c1.arrows})
    d["nat_trans_const0_const1"] = len(nat_trans(c1, c1, const(0), const(1)))

    d["j1_dim1_nondegenerate"] = nondegenerate(j_sset(1, 1))
    d["j1_dim2_total_2simplices"] = len(j_sset(1, 2)[2])
    d["j1_dim2_nondegenerate"] = nondegenerate(j_sset(1, 2))
    d["nerve_I1_generators"] = nerve_generator_counts(chaotic(1), 3)
    d["square_nondegenerate"] = nondegenerate(square(2))
    d["pi0_j1"] = pi0(j_sset(1, 1))
    d["nerve_1_kan"] = is_kan_nerve_01()
    d["maps_d1_j1"] = count_sset_maps(simplex_sset(1, 1), j_sset(1, 1))
    d["maps_spine2_nerve1"] = maps_into_nerve(spine(2, 2), ordinal(1))
    d["maps_d1_nerve1"] = maps_into_nerve(simplex_sset(1, 2), ordinal(1))
    d["maps_square_nerve1"] = maps_into_nerve(square(2), ordinal(1))

    # |maps(X, N C)| for the adjunction suite
    shapes = {
        "D2": simplex_sset(2, 3),
        "L2_1": horn21(3),
        "G3": spine(3, 3),
        "J1": j_sset(1, 3),
        "D1xD1": square(3),
    }
    d["adjunction_maps"] = {
        f"{x}|{c}": maps_into_nerve(shapes[x], CORPUS[c]())
        for x in shapes
        for c in ["[1]", "[2]", "I[1]", "idem"]
    }
    d["tau1_product_sizes"] = {
        f"{n}|{m}": [len(p.objects), len(p.arrows)]
        for n in range(3)
        for m in range(3)
        for p in [product(ordinal(n), ordinal(m))]
    }

    # classifying diagrams: functors [n] x I[m] -> C
    d["classifying_counts_2_2"] = {
        c: [[classifying_count(CORPUS[c](), n, m) for m in range(3)] for n in range(3)]
        for c in ["[0]", "[1]", "[2]", "I[1]", "idem"]
    }
    d["classifying_I1_1_1"] = classifying_count(chaotic(1), 1, 1)
    # vertices of M_v(G², N C): maps G² ⊠ ... reduce to composable pairs
    c2 = ordinal(2)
    d["mv_spine2_classifying_2"] = sum(1 for f in c2.arrows for g in c2.arrows if f[2] == g[1])
    d["t_upper_nerve1_1_1"] = {
        f"{n}|{m}": len(functors(grid(n, m), ordinal(1))) for n in range(2) for m in range(2)
    }
    # transposition counts: maps(Δ¹⊠Δ⁰, t^! N[1]) = maps(Δ¹, N[1]) and
    # maps(Δ⁰⊠Δ¹, t^! N[1]) = maps(J¹, N[1])
    d["transposition_counts"] = [
        maps_into_nerve(simplex_sset(1, 2), ordinal(1)),
        maps_into_nerve(j_sset(1, 2), ordinal(1)),
    ]
    # equivalences in the classifying diagram: isomorphisms of C
    d["equivalence_vertices"] = {
        c: sum(1 for m in CORPUS[c]().arrows if CORPUS[c]().iso(m)) for c in ["[1]", "I[1]"]
    }
    # completeness witness for box(N I[1], Δ⁰): the vertex column is the
    # discrete set of objects, X_eq the discrete set of isomorphisms, and
    # the degeneracy hits the identities
    i1 = chaotic(1)
    d["completeness_witness"] = [
        len(i1.objects),
        sum(1 for m in i1.arrows if i1.iso(m)),
        len(i1.objects),
    ]
    d["fun_1_I1"] = list(functor_category_size(ordinal(1), chaotic(1)))
    return d


def main():
    d = derive()
    text = json.dumps(d, indent=2, sort_keys=True) + "\n"
    if "--check" in sys.argv:
        if not OUT.exists() or OUT.read_text() != text:
            print("fixtures are out of date", file=sys.stderr)
            sys.exit(1)
        return
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(text)
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
