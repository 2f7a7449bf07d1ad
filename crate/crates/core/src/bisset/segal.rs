use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{is_categorical_equivalence, EquivalenceFailure, FinCat, Functor, Morphism};
use crate::sset::{is_whe_1trunc, pi0, point, product, tau1, SSetMap, Tau1, TruncSSet, WheFailure};
use crate::unionfind::UnionFind;
use crate::Verdict;

use super::{BiSSetMap, Dir, TruncBiSSet, Window};

/// Keeps the consecutive vertices `lo..=hi` (in direction `dir`) of a
/// simplex of bidegree `at`.
fn sub(x: &TruncBiSSet, dir: Dir, at: (usize, usize), c: u32, lo: usize, hi: usize) -> u32 {
    let mut cur = c;
    let mut at = at;
    for k in (hi + 1..=dir.degree(at)).rev() {
        cur = x.face(dir, at, cur, k);
        at = dir.shift(at, false);
    }
    for _ in 0..lo {
        cur = x.face(dir, at, cur, 0);
        at = dir.shift(at, false);
    }
    cur
}

/// The simplex of `X_{0,m}` constant at vertex `v`.
fn vconst(x: &TruncBiSSet, v: u32, m: usize) -> u32 {
    (0..m).fold(v, |c, k| x.vdegen(0, k, c, 0))
}

/// A subobject of a truncated simplicial set closed under all operators,
/// given by its simplices per level.
fn subobject(x: &TruncSSet, cells: &[Vec<u32>]) -> Result<TruncSSet> {
    let dim = cells.len() - 1;
    let index: Vec<HashMap<u32, u32>> = cells
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect())
        .collect();
    let missing = || Error::NotWellDefined("subobject is not closed under the operators".into());
    let mut face = vec![Vec::new(); dim + 1];
    let mut degen = vec![Vec::new(); dim + 1];
    for k in 0..=dim {
        for &c in &cells[k] {
            if k >= 1 {
                for &f in x.faces(k, c) {
                    face[k].push(*index[k - 1].get(&f).ok_or_else(missing)?);
                }
            }
            if k < dim {
                for i in 0..=k {
                    degen[k].push(*index[k + 1].get(&x.degen(k, c, i)).ok_or_else(missing)?);
                }
            }
        }
    }
    let s = TruncSSet::from_tables(dim, cells.iter().map(|l| l.len()).collect(), face, degen, |k, i| {
        x.cell_name(k, cells[k][i])
    })?;
    Ok(s.with_flags(x.is_skeletal(), x.is_coskeletal()))
}

fn certify(what: &str, window: Window, needed: Window) -> Result<()> {
    if window.covers(&needed) {
        Ok(())
    } else {
        Err(Error::WindowInsufficient {
            what: what.into(),
            required: format!("window covering {needed}"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SegalFailure {
    /// Two simplices with the same spine.
    NotInjective { n: usize, m: usize, first: String, second: String },
    /// A chain of edges that is no spine.
    NotSurjective { n: usize, m: usize, spine: Vec<String> },
}

/// The strict Segal condition: for `1 <= n <= p` and every `m` in the
/// window, `X_{n,m}` maps bijectively onto the composable strings of `n`
/// edges in `X_{1,m}`. This is `M_v(Δⁿ, X) → M_v(Gⁿ, X)` levelwise.
pub fn segal_check_strict(x: &TruncBiSSet) -> Verdict<SegalFailure> {
    let w = x.window();
    for n in 1..=w.p {
        let Some(qtop) = w.column_top(n) else { continue };
        for m in 0..=qtop {
            let spine = |c: u32| -> Vec<u32> {
                (0..n).map(|j| sub(x, Dir::H, (n, m), c, j, j + 1)).collect()
            };
            let mut seen: HashMap<Vec<u32>, u32> = HashMap::new();
            for c in 0..x.count(n, m) as u32 {
                if let Some(&d) = seen.get(&spine(c)) {
                    return Verdict::Fails(SegalFailure::NotInjective {
                        n,
                        m,
                        first: x.cell_name(n, m, d),
                        second: x.cell_name(n, m, c),
                    });
                }
                seen.insert(spine(c), c);
            }
            // edges by source vertex
            let mut from: HashMap<u32, Vec<u32>> = HashMap::new();
            for e in 0..x.count(1, m) as u32 {
                from.entry(x.hface(1, m, e, 1)).or_default().push(e);
            }
            let mut chain = Vec::new();
            if let Some(missing) = missing_chain(x, m, n, &from, &seen, &mut chain) {
                return Verdict::Fails(SegalFailure::NotSurjective {
                    n,
                    m,
                    spine: missing.iter().map(|&e| x.cell_name(1, m, e)).collect(),
                });
            }
        }
    }
    Verdict::Holds
}

fn missing_chain(
    x: &TruncBiSSet,
    m: usize,
    n: usize,
    from: &HashMap<u32, Vec<u32>>,
    seen: &HashMap<Vec<u32>, u32>,
    chain: &mut Vec<u32>,
) -> Option<Vec<u32>> {
    if chain.len() == n {
        return (!seen.contains_key(chain)).then(|| chain.clone());
    }
    let cands: Vec<u32> = match chain.last() {
        None => (0..x.count(1, m) as u32).collect(),
        Some(&e) => from.get(&x.hface(1, m, e, 0)).cloned().unwrap_or_default(),
    };
    for e in cands {
        chain.push(e);
        if let Some(found) = missing_chain(x, m, n, from, seen, chain) {
            return Some(found);
        }
        chain.pop();
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReedyFailure {
    pub n: usize,
    pub level: usize,
    pub horn: usize,
    /// Names of the given faces, in face order.
    pub faces: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReedyReport {
    pub window: Window,
    /// `(n, level)` pairs whose lifting problems were all solved.
    pub certified: Vec<(usize, usize)>,
    pub verdict: Verdict<ReedyFailure>,
}

/// Horn filling for `X_{n,•} → M_v(∂Δⁿ, X)` at levels `1..=up_to`: every
/// horn in the column, together with a compatible simplex of the matching
/// object, has a lift.
pub fn reedy_fibrancy_check(x: &TruncBiSSet, up_to: usize) -> Result<ReedyReport> {
    let w = x.window();
    if up_to > w.q {
        return Err(Error::WindowInsufficient {
            what: "vertical Reedy fibrancy".into(),
            required: format!("vertical level {up_to}"),
        });
    }
    let mut certified = Vec::new();
    for n in 0..=w.p {
        let Some(qtop) = w.column_top(n) else { continue };
        for k in 1..=up_to.min(qtop) {
            for i in 0..=k {
                if let Some(f) = unliftable(x, n, k, i) {
                    return Ok(ReedyReport {
                        window: w,
                        certified,
                        verdict: Verdict::Fails(f),
                    });
                }
            }
            certified.push((n, k));
        }
    }
    Ok(ReedyReport {
        window: w,
        certified,
        verdict: Verdict::Holds,
    })
}

/// Lifting problems of `X_{n,•} → M_n` against `Λᵏᵢ ⊂ Δᵏ`.
fn unliftable(x: &TruncBiSSet, n: usize, k: usize, i: usize) -> Option<ReedyFailure> {
    let boundary = |c: u32, m: usize| -> Vec<u32> {
        if n == 0 {
            Vec::new()
        } else {
            x.faces(Dir::H, (n, m), c).to_vec()
        }
    };
    let solved: HashSet<(Vec<u32>, Vec<u32>)> = (0..x.count(n, k) as u32)
        .map(|c| {
            let mut fs = x.faces(Dir::V, (n, k), c).to_vec();
            fs.remove(i);
            (fs, boundary(c, k))
        })
        .collect();
    // horns in the column: compatible tuples of faces j != i
    let by_face: Vec<HashMap<u32, Vec<u32>>> = (0..k)
        .map(|j| {
            let mut ix: HashMap<u32, Vec<u32>> = HashMap::new();
            if k >= 2 {
                for c in 0..x.count(n, k - 1) as u32 {
                    ix.entry(x.vface(n, k - 1, c, j)).or_default().push(c);
                }
            }
            ix
        })
        .collect();
    let faces: Vec<usize> = (0..=k).filter(|&j| j != i).collect();
    let mut horn = Vec::with_capacity(k);
    let mut found = None;
    horns(x, n, k, &faces, &by_face, &mut horn, &mut |y: &[u32]| {
        for z in matching(x, n, k, i, y) {
            if !solved.contains(&(y.to_vec(), z)) {
                found = Some(ReedyFailure {
                    n,
                    level: k,
                    horn: i,
                    faces: y.iter().map(|&c| x.cell_name(n, k - 1, c)).collect(),
                });
                return false;
            }
        }
        true
    });
    found
}

fn horns(
    x: &TruncBiSSet,
    n: usize,
    k: usize,
    faces: &[usize],
    by_face: &[HashMap<u32, Vec<u32>>],
    horn: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    let t = horn.len();
    if t == faces.len() {
        return visit(horn);
    }
    let b = faces[t];
    let cands: Vec<u32> = if t == 0 || k == 1 {
        (0..x.count(n, k - 1) as u32).collect()
    } else {
        // d_a y_b = d_{b-1} y_a for a < b, using the first chosen face
        let a = faces[0];
        let want = x.vface(n, k - 1, horn[0], b - 1);
        by_face[a].get(&want).cloned().unwrap_or_default()
    };
    for c in cands {
        let ok = (0..t).all(|s| {
            let a = faces[s];
            x.vface(n, k - 1, c, a) == x.vface(n, k - 1, horn[s], b - 1)
        });
        if ok {
            horn.push(c);
            if !horns(x, n, k, faces, by_face, horn, visit) {
                return false;
            }
            horn.pop();
        }
    }
    true
}

/// Simplices of `M_n` at level `k` whose faces `j != i` match the horn `y`.
fn matching(x: &TruncBiSSet, n: usize, k: usize, i: usize, y: &[u32]) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let faces: Vec<usize> = (0..=k).filter(|&j| j != i).collect();
    // z_l must have vertical faces d_j z_l = d^h_l y_j
    let cands: Vec<Vec<u32>> = (0..=n)
        .map(|l| {
            (0..x.count(n - 1, k) as u32)
                .filter(|&z| {
                    faces.iter().enumerate().all(|(s, &j)| {
                        x.vface(n - 1, k, z, j) == x.hface(n, k - 1, y[s], l)
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(
        x: &TruncBiSSet,
        n: usize,
        k: usize,
        cands: &[Vec<u32>],
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let b = cur.len();
        if b == n + 1 {
            out.push(cur.clone());
            return;
        }
        for &z in &cands[b] {
            // d_a z_b = d_{b-1} z_a for a < b
            if n < 2 || (0..b).all(|a| x.hface(n - 1, k, z, a) == x.hface(n - 1, k, cur[a], b - 1)) {
                cur.push(z);
                go(x, n, k, cands, cur, out);
                cur.pop();
            }
        }
    }
    go(x, n, k, &cands, &mut cur, &mut out);
    out
}

/// The space of composable strings through fixed vertices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub vertices: Vec<u32>,
    pub carrier: Arc<TruncSSet>,
    /// `cells[m][i]` is the simplex of `X_{n,m}` underlying simplex `i`.
    pub cells: Vec<Vec<u32>>,
    /// The comparison map to the product of the consecutive hom-spaces.
    pub comparison: SSetMap,
}

fn fiber(x: &TruncBiSSet, vertices: &[u32]) -> Result<(TruncSSet, Vec<Vec<u32>>)> {
    let n = vertices.len() - 1;
    for &v in vertices {
        if v as usize >= x.count(0, 0) {
            return Err(Error::UnknownObject(format!("vertex {v}")));
        }
    }
    let qtop = x.window().column_top(n).ok_or_else(|| Error::WindowInsufficient {
        what: "hom-space".into(),
        required: format!("column {n}"),
    })?;
    let column = x.column(n)?;
    let cells: Vec<Vec<u32>> = (0..=qtop)
        .map(|m| {
            let corners: Vec<u32> = vertices.iter().map(|&v| vconst(x, v, m)).collect();
            (0..x.count(n, m) as u32)
                .filter(|&c| (0..=n).all(|i| sub(x, Dir::H, (n, m), c, i, i) == corners[i]))
                .collect()
        })
        .collect();
    Ok((subobject(&column, &cells)?, cells))
}

/// `X(x₀, …, xₙ)`, the fiber of `X_{n,•} → X_{0,•}^{n+1}` over the given
/// vertices.
pub fn hom_space(x: &TruncBiSSet, vertices: &[u32]) -> Result<HomSpace> {
    if vertices.is_empty() {
        return Err(Error::InvalidIndex("a hom-space needs at least one vertex".into()));
    }
    let n = vertices.len() - 1;
    let (carrier, cells) = fiber(x, vertices)?;
    let carrier = Arc::new(carrier);
    let dim = carrier.dim();
    let (target, levels) = if n <= 1 {
        let t = if n == 0 { Arc::new(point(dim)) } else { carrier.clone() };
        let levels = (0..=dim)
            .map(|m| {
                (0..carrier.count(m) as u32)
                    .map(|c| if n == 0 { 0 } else { c })
                    .collect()
            })
            .collect();
        (t, levels)
    } else {
        let factors: Vec<(TruncSSet, Vec<Vec<u32>>)> = vertices
            .windows(2)
            .map(|p| {
                let (f, cells) = fiber(x, p)?;
                Ok((f.truncate(dim), cells))
            })
            .collect::<Result<_>>()?;
        let mut prod = factors[0].0.clone();
        for (f, _) in &factors[1..] {
            prod = product(&prod, f)?;
        }
        let position: Vec<Vec<HashMap<u32, u32>>> = factors
            .iter()
            .map(|(_, cells)| {
                cells
                    .iter()
                    .map(|l| l.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect())
                    .collect()
            })
            .collect();
        let levels = (0..=dim)
            .map(|m| {
                cells[m]
                    .iter()
                    .map(|&c| {
                        let mut ix = 0u32;
                        for (j, (f, _)) in factors.iter().enumerate() {
                            let e = sub(x, Dir::H, (n, m), c, j, j + 1);
                            ix = ix * f.count(m) as u32 + position[j][m][&e];
                        }
                        ix
                    })
                    .collect()
            })
            .collect();
        (Arc::new(prod), levels)
    };
    let comparison = SSetMap::new(carrier.clone(), target, levels)?;
    Ok(HomSpace {
        vertices: vertices.to_vec(),
        carrier,
        cells,
        comparison,
    })
}

/// The homotopy category: vertices, with components of the hom-spaces as
/// morphisms.
#[derive(Clone, Debug)]
pub struct Ho {
    pub cat: FinCat,
    /// Object for each vertex.
    pub object: Vec<usize>,
    /// Morphism for each simplex of `X_{1,0}`.
    pub morphism: Vec<usize>,
}

pub fn ho(x: &TruncBiSSet) -> Result<Ho> {
    certify("homotopy category", x.window(), Window::new(2, 1).meet(&Window::with_total(2, 1, 2)))?;
    let edges = x.count(1, 0);
    let src = |e: u32| x.hface(1, 0, e, 1);
    let tgt = |e: u32| x.hface(1, 0, e, 0);
    // components of all hom-spaces at once: squares with degenerate sides
    let mut uf = UnionFind::new(edges);
    for s in 0..x.count(1, 1) as u32 {
        let (l, r) = (x.hface(1, 1, s, 1), x.hface(1, 1, s, 0));
        if x.is_degenerate(0, 1, l) && x.is_degenerate(0, 1, r) && x.ez(0, 1, l).v.len() == 1 && x.ez(0, 1, r).v.len() == 1 {
            uf.union(x.vface(1, 1, s, 0) as usize, x.vface(1, 1, s, 1) as usize);
        }
    }
    let classes = uf.classes();
    let mut class_of = vec![0; edges];
    for (k, cl) in classes.iter().enumerate() {
        for &e in cl {
            class_of[e] = k;
        }
    }
    // composites through every 2-simplex
    let mut composite: HashMap<(usize, usize), BTreeSet<usize>> = HashMap::new();
    let mut covered: HashSet<(u32, u32)> = HashSet::new();
    for s in 0..x.count(2, 0) as u32 {
        let (f, g, h) = (x.hface(2, 0, s, 2), x.hface(2, 0, s, 0), x.hface(2, 0, s, 1));
        covered.insert((f, g));
        composite
            .entry((class_of[f as usize], class_of[g as usize]))
            .or_default()
            .insert(class_of[h as usize]);
    }
    for f in 0..edges as u32 {
        for g in 0..edges as u32 {
            if tgt(f) == src(g) && !covered.contains(&(f, g)) {
                return Err(Error::NoSection(format!(
                    "({}, {})",
                    x.cell_name(1, 0, f),
                    x.cell_name(1, 0, g)
                )));
            }
        }
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for (&(a, b), hs) in &composite {
        if hs.len() != 1 {
            return Err(Error::NotWellDefined(format!(
                "composite of the classes of {} and {} has {} values",
                x.cell_name(1, 0, classes[a][0] as u32),
                x.cell_name(1, 0, classes[b][0] as u32),
                hs.len()
            )));
        }
        table.insert((a, b), *hs.iter().next().unwrap());
    }
    let objects: Vec<String> = (0..x.count(0, 0) as u32).map(|v| x.cell_name(0, 0, v)).collect();
    let morphisms: Vec<Morphism> = classes
        .iter()
        .map(|cl| {
            let e = cl[0] as u32;
            Morphism {
                name: x.cell_name(1, 0, e),
                src: src(e) as usize,
                tgt: tgt(e) as usize,
            }
        })
        .collect();
    let identity: Vec<usize> = (0..x.count(0, 0) as u32)
        .map(|v| class_of[x.hdegen(0, 0, v, 0) as usize])
        .collect();
    let cat = FinCat::from_fn(objects.clone(), morphisms.clone(), identity, |g, f| table[&(f, g)])?;
    let object = objects.iter().map(|o| cat.object_index(o).unwrap()).collect();
    let morphism = (0..edges)
        .map(|e| cat.morphism_index(&morphisms[class_of[e]].name).unwrap())
        .collect();
    Ok(Ho {
        cat,
        object,
        morphism,
    })
}

/// The comparison functor from `τ₁` of the vertex column to `Ho X`.
#[derive(Clone, Debug)]
pub struct JFunctor {
    pub functor: Functor,
    pub tau: Tau1,
    pub ho: Ho,
    /// Morphism of `Ho X` assigned to each edge of `X_{0,•}`.
    pub edge_image: Vec<usize>,
}

/// Sends an edge `p` of `X_{0,•}` to the class of the bottom edge of a
/// square whose left side is `p` and whose right and top sides are
/// degenerate at the target of `p`.
pub fn j_functor(x: &TruncBiSSet) -> Result<JFunctor> {
    certify("comparison functor", x.window(), Window::total2())?;
    if let Verdict::Fails(f) = segal_check_strict(x) {
        return Err(Error::Uncertified(format!("not strictly Segal: {f:?}")));
    }
    let h = ho(x)?;
    let column = x.column(0)?;
    let tau = tau1(&column)?;
    let mut edge_image = Vec::with_capacity(x.count(0, 1));
    for p in 0..x.count(0, 1) as u32 {
        let y = x.vface(0, 1, p, 0);
        let right = x.vdegen(0, 0, y, 0);
        let top = x.hdegen(0, 0, y, 0);
        let images: BTreeSet<usize> = (0..x.count(1, 1) as u32)
            .filter(|&s| {
                x.hface(1, 1, s, 1) == p && x.hface(1, 1, s, 0) == right && x.vface(1, 1, s, 0) == top
            })
            .map(|s| h.morphism[x.vface(1, 1, s, 1) as usize])
            .collect();
        match images.len() {
            0 => return Err(Error::NoConnection(x.cell_name(0, 1, p))),
            1 => edge_image.push(*images.iter().next().unwrap()),
            _ => {
                return Err(Error::NotWellDefined(format!(
                    "squares over {} give different classes",
                    x.cell_name(0, 1, p)
                )))
            }
        }
    }
    let object_map: Vec<usize> = (0..tau.cat.num_objects())
        .map(|o| {
            let v = tau.object.iter().position(|&t| t == o).unwrap();
            h.object[v]
        })
        .collect();
    let morphism_map = (0..tau.cat.num_morphisms())
        .map(|m| {
            tau.representative(m).into_iter().fold(
                h.cat.identity(object_map[tau.cat.src(m)]),
                |acc, e| h.cat.comp(edge_image[e as usize], acc),
            )
        })
        .collect();
    let functor = Functor::new(
        Arc::new(tau.cat.clone()),
        Arc::new(h.cat.clone()),
        object_map,
        morphism_map,
    )?;
    Ok(JFunctor {
        functor,
        tau,
        ho: h,
        edge_image,
    })
}

/// `X_eq`: the full simplicial subset of `X_{1,•}` on the vertices whose
/// class in `Ho X` is invertible.
#[derive(Clone, Debug)]
pub struct Equivalences {
    pub carrier: Arc<TruncSSet>,
    /// `cells[m][i]` is the simplex of `X_{1,m}` underlying simplex `i`.
    pub cells: Vec<Vec<u32>>,
}

pub fn equivalences(x: &TruncBiSSet) -> Result<Equivalences> {
    let h = ho(x)?;
    let column = x.column(1)?;
    let iso: Vec<bool> = (0..x.count(1, 0))
        .map(|e| h.cat.inverse(h.morphism[e]).is_some())
        .collect();
    let cells: Vec<Vec<u32>> = (0..=column.dim())
        .map(|m| {
            (0..x.count(1, m) as u32)
                .filter(|&c| (0..=m).all(|j| iso[sub(x, Dir::V, (1, m), c, j, j) as usize]))
                .collect()
        })
        .collect();
    for comp in pi0(&column) {
        let inside = comp.iter().filter(|&&v| iso[v as usize]).count();
        if inside != 0 && inside != comp.len() {
            return Err(Error::NotWellDefined(
                "equivalences do not form a union of components".into(),
            ));
        }
    }
    Ok(Equivalences {
        carrier: Arc::new(subobject(&column, &cells)?),
        cells,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessFailure {
    pub window: Window,
    pub failure: WheFailure,
}

/// Completeness at the level of homotopy 1-types: `X_{0,•} → X_eq`,
/// induced by the horizontal degeneracy, is a weak equivalence on `π₀` and
/// fundamental groupoids.
pub fn is_complete_1trunc(x: &TruncBiSSet) -> Result<Verdict<CompletenessFailure>> {
    if let Verdict::Fails(f) = segal_check_strict(x) {
        return Err(Error::Uncertified(format!("not strictly Segal: {f:?}")));
    }
    let eq = equivalences(x)?;
    let column = Arc::new(x.column(0)?);
    let position: Vec<HashMap<u32, u32>> = eq
        .cells
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect())
        .collect();
    let top = column.dim().min(eq.carrier.dim());
    let levels = (0..=top)
        .map(|m| {
            (0..column.count(m) as u32)
                .map(|c| position[m][&x.hdegen(0, m, c, 0)])
                .collect()
        })
        .collect();
    let f = SSetMap::new(column, eq.carrier.clone(), levels)?;
    Ok(match is_whe_1trunc(&f)? {
        Verdict::Holds => Verdict::Holds,
        Verdict::Fails(failure) => Verdict::Fails(CompletenessFailure {
            window: x.window(),
            failure,
        }),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DkFailure {
    Homotopy(EquivalenceFailure),
    HomSpace { source: String, target: String, failure: WheFailure },
}

/// The functor `Ho F`.
pub fn ho_functor(f: &BiSSetMap, hx: &Ho, hy: &Ho) -> Result<Functor> {
    let object_map: Vec<usize> = (0..hx.cat.num_objects())
        .map(|o| {
            let v = hx.object.iter().position(|&t| t == o).unwrap();
            hy.object[f.image(0, 0, v as u32) as usize]
        })
        .collect();
    let morphism_map = (0..hx.cat.num_morphisms())
        .map(|m| {
            let e = hx.morphism.iter().position(|&t| t == m).unwrap();
            hy.morphism[f.image(1, 0, e as u32) as usize]
        })
        .collect();
    Functor::new(
        Arc::new(hx.cat.clone()),
        Arc::new(hy.cat.clone()),
        object_map,
        morphism_map,
    )
}

/// Dwyer–Kan equivalence at the level of homotopy 1-types: `Ho F` is an
/// equivalence and every map of hom-spaces is a weak equivalence.
pub fn is_dk_equivalence(f: &BiSSetMap) -> Result<Verdict<DkFailure>> {
    for (side, x) in [("source", &f.source), ("target", &f.target)] {
        if let Verdict::Fails(w) = segal_check_strict(x) {
            return Err(Error::Uncertified(format!("{side} is not strictly Segal: {w:?}")));
        }
    }
    let (x, y) = (&f.source, &f.target);
    let (hx, hy) = (ho(x)?, ho(y)?);
    if let Verdict::Fails(w) = is_categorical_equivalence(&ho_functor(f, &hx, &hy)?) {
        return Ok(Verdict::Fails(DkFailure::Homotopy(w)));
    }
    for a in 0..x.count(0, 0) as u32 {
        for b in 0..x.count(0, 0) as u32 {
            let (fa, fb) = (f.image(0, 0, a), f.image(0, 0, b));
            let hs = hom_space(x, &[a, b])?;
            let ht = hom_space(y, &[fa, fb])?;
            let position: Vec<HashMap<u32, u32>> = ht
                .cells
                .iter()
                .map(|l| l.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect())
                .collect();
            let top = hs.carrier.dim().min(ht.carrier.dim()).min(f.domain().column_top(1).unwrap_or(0));
            let levels = (0..=top)
                .map(|m| hs.cells[m].iter().map(|&c| position[m][&f.image(1, m, c)]).collect())
                .collect();
            let source = Arc::new(hs.carrier.truncate(top));
            let target = Arc::new(ht.carrier.truncate(top));
            let g = SSetMap::new(source, target, levels)?;
            if let Verdict::Fails(failure) = is_whe_1trunc(&g)? {
                return Ok(Verdict::Fails(DkFailure::HomSpace {
                    source: x.cell_name(0, 0, a),
                    target: x.cell_name(0, 0, b),
                    failure,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisset::{box_product, classifying_diagram, classifying_map, terminal};
    use crate::fincat::{
        enumerate_functors, groupoid_interval, interval_category, is_isomorphic, walking_idempotent,
    };
    use crate::sset::{nerve, point, TruncSSet};

    fn corpus() -> Vec<FinCat> {
        vec![
            interval_category(0),
            interval_category(1),
            interval_category(2),
            groupoid_interval(1),
            walking_idempotent(),
        ]
    }

    #[test]
    fn classifying_diagrams_are_strict_segal() {
        for c in corpus() {
            assert!(segal_check_strict(&classifying_diagram(&c, Window::new(3, 2))).holds());
        }
        let b = box_product(&nerve(&groupoid_interval(1), 3), &point(2));
        assert!(segal_check_strict(&b).holds());
    }

    #[test]
    fn extra_composite_breaks_segal() {
        let simplex = |w: &[u8], b: u32| crate::sset::Simplex { word: w.to_vec(), base: b };
        // vertices a, b, c; edges f: a → b, g: b → c, h: a → c; two 2-simplices
        let x = TruncSSet::from_generators(
            2,
            vec![
                vec!["a".into(), "b".into(), "c".into()],
                vec!["f".into(), "g".into(), "h".into()],
                vec!["s".into(), "t".into()],
            ],
            vec![
                vec![],
                vec![
                    vec![simplex(&[], 1), simplex(&[], 0)],
                    vec![simplex(&[], 2), simplex(&[], 1)],
                    vec![simplex(&[], 2), simplex(&[], 0)],
                ],
                vec![
                    vec![simplex(&[], 1), simplex(&[], 2), simplex(&[], 0)],
                    vec![simplex(&[], 1), simplex(&[], 2), simplex(&[], 0)],
                ],
            ],
        )
        .unwrap();
        let b = box_product(&x, &point(2));
        match segal_check_strict(&b) {
            Verdict::Fails(SegalFailure::NotInjective { n, .. }) => assert_eq!(n, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reedy_fibrancy() {
        for c in corpus() {
            let r = reedy_fibrancy_check(&classifying_diagram(&c, Window::new(2, 2)), 2).unwrap();
            assert!(r.verdict.holds(), "{:?}", r.verdict);
        }
        let b = box_product(&nerve(&interval_category(1), 2), &point(2));
        assert!(reedy_fibrancy_check(&b, 2).unwrap().verdict.holds());
        assert!(reedy_fibrancy_check(&terminal(Window::new(2, 2)), 2).unwrap().verdict.holds());
    }

    #[test]
    fn hom_spaces_of_classifying_diagrams_are_discrete() {
        let c = walking_idempotent();
        let x = classifying_diagram(&c, Window::new(2, 2));
        let h = hom_space(&x, &[0, 0]).unwrap();
        assert_eq!(h.carrier.count(0), 2);
        assert_eq!(h.carrier.generator_counts(), vec![2, 0, 0]);
        let h = hom_space(&x, &[0, 0, 0]).unwrap();
        assert!(h.comparison.is_isomorphism());
    }

    #[test]
    fn ho_recovers_the_category() {
        for c in corpus() {
            let h = ho(&classifying_diagram(&c, Window::new(2, 2))).unwrap();
            assert!(is_isomorphic(&h.cat, &c));
            let b = box_product(&nerve(&c, 2), &point(1));
            assert!(is_isomorphic(&ho(&b).unwrap().cat, &c));
        }
    }

    #[test]
    fn j_sends_isos_to_themselves() {
        let c = groupoid_interval(1);
        let x = classifying_diagram(&c, Window::new(2, 2));
        let j = j_functor(&x).unwrap();
        for p in 0..x.count(0, 1) as u32 {
            let e = if x.is_degenerate(0, 1, p) {
                x.hdegen(0, 0, x.vface(0, 1, p, 0), 0)
            } else {
                // a nondegenerate vertical edge is named `object[iso]`
                let name = x.cell_name(0, 1, p);
                let iso = name.split('[').nth(1).unwrap().trim_end_matches(']');
                x.find_cell(1, 0, iso).unwrap()
            };
            assert_eq!(j.edge_image[p as usize], j.ho.morphism[e as usize]);
        }
    }

    #[test]
    fn equivalences_of_classifying_diagrams() {
        let x = classifying_diagram(&interval_category(1), Window::new(2, 2));
        assert_eq!(equivalences(&x).unwrap().carrier.count(0), 2);
        let x = classifying_diagram(&groupoid_interval(1), Window::new(2, 2));
        assert_eq!(equivalences(&x).unwrap().carrier.count(0), 4);
    }

    #[test]
    fn completeness() {
        for c in corpus() {
            let x = classifying_diagram(&c, Window::new(2, 2));
            assert!(is_complete_1trunc(&x).unwrap().holds());
        }
        let b = box_product(&nerve(&groupoid_interval(1), 2), &point(2));
        let v = is_complete_1trunc(&b).unwrap();
        assert_eq!(
            v.witness().unwrap().failure,
            WheFailure::Components { source: 2, target: 4, image: 2 }
        );
    }

    #[test]
    fn dk_equivalences() {
        let w = Window::new(2, 2);
        let c = Arc::new(groupoid_interval(1));
        let pt = Arc::new(interval_category(0));
        let f = enumerate_functors(&c, &pt).remove(0);
        assert!(is_dk_equivalence(&classifying_map(&f, w).unwrap()).unwrap().holds());
        let one = Arc::new(interval_category(1));
        let g = enumerate_functors(&pt, &one).remove(0);
        assert!(!is_dk_equivalence(&classifying_map(&g, w).unwrap()).unwrap().holds());
    }
}
