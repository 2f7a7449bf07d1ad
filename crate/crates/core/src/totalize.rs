//! The totalization pair `t_! ⊣ t^!` between bisimplicial and simplicial
//! sets, built from the bisimplicial-simplicial sets `Δⁿ × Jᵐ`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::bisset::classifying::build as build_classifying;
use crate::bisset::{count_bimaps, BiSSetMap, Dir, Tables, TruncBiSSet, Window};
use crate::error::{Error, Result};
use crate::fincat::{is_isomorphic, FinCat};
use crate::sset::{
    determining_level, for_each_map, j_space, nerve, product, standard_simplex, tau1,
    vertex_sequences, SSetMap, TruncSSet,
};
use crate::unionfind::UnionFind;

fn face_vertex(i: u32) -> impl Fn(u32) -> u32 {
    move |v| if v < i { v } else { v + 1 }
}

fn degen_vertex(i: u32) -> impl Fn(u32) -> u32 {
    move |v| if v <= i { v } else { v - 1 }
}

/// Vertex map of the degeneracy operator `s_{i₁} ⋯ s_{iᵣ}` (outermost
/// first).
fn word_vertex(word: &[u8]) -> impl Fn(u32) -> u32 + '_ {
    move |v| word.iter().fold(v, |v, &i| if v <= i as u32 { v } else { v - 1 })
}

/// `Δⁿ × Jᵐ` truncated at some level, with its simplices addressed by
/// pairs of vertex sequences up to `seq_top`.
struct Shape {
    s: TruncSSet,
    jcount: Vec<usize>,
    hseq: Vec<Vec<Vec<u32>>>,
    jseq: Vec<Vec<Vec<u32>>>,
    hix: Vec<HashMap<Vec<u32>, u32>>,
    jix: Vec<HashMap<Vec<u32>, u32>>,
}

impl Shape {
    fn new(n: usize, m: usize, d: usize, seq_top: usize) -> Result<Shape> {
        let dn = standard_simplex(n, d);
        let jm = j_space(m, d);
        let s = product(&dn, &jm)?;
        let hseq = vertex_sequences(&dn, seq_top);
        let jseq = vertex_sequences(&jm, seq_top);
        let ix = |seq: &Vec<Vec<Vec<u32>>>| -> Vec<HashMap<Vec<u32>, u32>> {
            seq.iter()
                .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
                .collect()
        };
        Ok(Shape {
            jcount: (0..=d).map(|k| jm.count(k)).collect(),
            hix: ix(&hseq),
            jix: ix(&jseq),
            s,
            hseq,
            jseq,
        })
    }

    fn sequences(&self, k: usize, c: u32) -> (&[u32], &[u32]) {
        let jc = self.jcount[k] as u32;
        (&self.hseq[k][(c / jc) as usize], &self.jseq[k][(c % jc) as usize])
    }

    fn cell(&self, k: usize, hs: &[u32], js: &[u32]) -> u32 {
        self.hix[k][hs] * self.jcount[k] as u32 + self.jix[k][js]
    }

    /// Simplex `c` of `other` pushed forward along vertex maps into `self`.
    fn transport(
        &self,
        other: &Shape,
        k: usize,
        c: u32,
        hmap: &dyn Fn(u32) -> u32,
        jmap: &dyn Fn(u32) -> u32,
    ) -> u32 {
        let (hs, js) = other.sequences(k, c);
        let hs: Vec<u32> = hs.iter().map(|&v| hmap(v)).collect();
        let js: Vec<u32> = js.iter().map(|&v| jmap(v)).collect();
        self.cell(k, &hs, &js)
    }
}

/// Whether `x` is 2-coskeletal and its 2-simplices are exactly the
/// composable pairs of edges, as for the nerve of a category.
fn is_nerve_like(x: &TruncSSet) -> bool {
    if !x.is_coskeletal() {
        return false;
    }
    let mut seen = HashSet::new();
    for c in 0..x.count(2) as u32 {
        if !seen.insert((x.face(2, c, 2), x.face(2, c, 0))) {
            return false;
        }
    }
    let pairs: usize = (0..x.count(1) as u32)
        .map(|f| {
            let end = x.face(1, f, 0);
            (0..x.count(1) as u32).filter(|&g| x.face(1, g, 1) == end).count()
        })
        .sum();
    pairs == seen.len()
}

pub(crate) struct Upper {
    pub x: TruncBiSSet,
    pub base: TruncSSet,
    pub key_level: usize,
    shapes: Vec<Option<Shape>>,
    keys: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, u32>>,
    window: Window,
}

impl Upper {
    fn shape(&self, n: usize, m: usize) -> &Shape {
        self.shapes[self.window_slot(n, m)].as_ref().expect("shape in window")
    }

    fn window_slot(&self, n: usize, m: usize) -> usize {
        n * (self.window.q + 1) + m
    }

    /// The simplex of bidegree `(n, m)` given by a map `Δⁿ × Jᵐ → X`,
    /// described by its value on every pair of vertex sequences.
    pub fn lookup(&self, n: usize, m: usize, value: impl Fn(usize, &[u32], &[u32]) -> u32) -> Option<u32> {
        let sh = self.shape(n, m);
        let mut key = Vec::new();
        for k in 0..=self.key_level {
            for c in 0..sh.s.count(k) as u32 {
                let (hs, js) = sh.sequences(k, c);
                key.push(value(k, hs, js));
            }
        }
        self.index[self.window_slot(n, m)].get(&key).copied()
    }

    /// Image of the simplex with vertex sequences `(hs, js)` of `Δⁿ × Jᵐ`
    /// under the map named by simplex `c` of bidegree `(n, m)`.
    pub fn evaluate(&self, n: usize, m: usize, c: u32, hs: &[u32], js: &[u32]) -> Result<u32> {
        let k = hs.len() - 1;
        let sh = self.shape(n, m);
        if k <= self.key_level {
            let off: usize = (0..k).map(|l| sh.s.count(l)).sum();
            return Ok(self.keys[self.window_slot(n, m)][c as usize][off + sh.cell(k, hs, js) as usize]);
        }
        if k > self.base.dim() {
            return Err(Error::WindowInsufficient {
                what: "evaluating t^!".into(),
                required: format!("level {k}"),
            });
        }
        let mut faces = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let drop = |s: &[u32]| -> Vec<u32> {
                s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect()
            };
            faces.push(self.evaluate(n, m, c, &drop(hs), &drop(js))?);
        }
        let mut found = (0..self.base.count(k) as u32).filter(|&t| self.base.faces(k, t) == faces.as_slice());
        match (found.next(), found.next()) {
            (Some(t), None) => Ok(t),
            _ => Err(Error::NotWellDefined("simplex is not determined by its faces".into())),
        }
    }
}

pub(crate) fn build_upper(x: &TruncSSet, window: Window) -> Result<Upper> {
    let work = if x.is_coskeletal() {
        2
    } else if window.q == 0 && x.dim() >= window.p {
        window.p
    } else {
        return Err(Error::WindowInsufficient {
            what: "t^! of a simplicial set that is not coskeletal".into(),
            required: format!("vertical window 0 and level >= {}", window.p),
        });
    };
    let key_level = determining_level(x, work);
    let w = window;
    let size = (w.p + 1) * (w.q + 1);
    let mut shapes: Vec<Option<Shape>> = (0..size).map(|_| None).collect();
    let mut keys: Vec<Vec<Vec<u32>>> = vec![Vec::new(); size];
    for (n, m) in w.bidegrees() {
        let sh = Shape::new(n, m, work, key_level)?;
        let mut level = Vec::new();
        for_each_map(&sh.s, x, &mut |levels| {
            level.push(levels[..=key_level].concat());
            true
        })?;
        level.sort();
        keys[w.slot(n, m)] = level;
        shapes[w.slot(n, m)] = Some(sh);
    }
    let index: Vec<HashMap<Vec<u32>, u32>> = keys
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect())
        .collect();
    let shape = |n: usize, m: usize| shapes[w.slot(n, m)].as_ref().unwrap();
    let offsets = |sh: &Shape| -> Vec<usize> {
        let mut off = vec![0];
        for k in 0..=key_level {
            off.push(off[k] + sh.s.count(k));
        }
        off
    };
    let pull = |key: &[u32], from: (usize, usize), to: (usize, usize), hmap: &dyn Fn(u32) -> u32, jmap: &dyn Fn(u32) -> u32| -> u32 {
        let (fs, ts) = (shape(from.0, from.1), shape(to.0, to.1));
        let off = offsets(fs);
        let mut out = Vec::new();
        for k in 0..=key_level {
            for c in 0..ts.s.count(k) as u32 {
                out.push(key[off[k] + fs.transport(ts, k, c, hmap, jmap) as usize]);
            }
        }
        index[w.slot(to.0, to.1)][&out]
    };
    let ident = |v: u32| v;
    let mut tables = Vec::new();
    for (n, m) in w.bidegrees() {
        let s = w.slot(n, m);
        let mut t = Tables {
            count: keys[s].len(),
            ..Tables::default()
        };
        for key in &keys[s] {
            if n >= 1 {
                for i in 0..=n as u32 {
                    t.hface.push(pull(key, (n, m), (n - 1, m), &face_vertex(i), &ident));
                }
            }
            if m >= 1 {
                for j in 0..=m as u32 {
                    t.vface.push(pull(key, (n, m), (n, m - 1), &ident, &face_vertex(j)));
                }
            }
            if w.contains(n + 1, m) {
                for i in 0..=n as u32 {
                    t.hdegen.push(pull(key, (n, m), (n + 1, m), &degen_vertex(i), &ident));
                }
            }
            if w.contains(n, m + 1) {
                for j in 0..=m as u32 {
                    t.vdegen.push(pull(key, (n, m), (n, m + 1), &ident, &degen_vertex(j)));
                }
            }
        }
        tables.push(t);
    }
    let names = |(n, m): (usize, usize), c: usize| -> String {
        let sh = shape(n, m);
        let key = &keys[w.slot(n, m)][c];
        let off = offsets(sh);
        let imgs: Vec<String> = (0..=key_level)
            .flat_map(|k| {
                sh.s.generators(k)
                    .iter()
                    .map(|&g| x.cell_name(k, key[off[k] + g as usize]))
                    .collect::<Vec<_>>()
            })
            .collect();
        format!("<{}>", imgs.join(";"))
    };
    let bx = TruncBiSSet::from_tables(w, tables, names)?;
    let nerve_like = is_nerve_like(x);
    Ok(Upper {
        x: bx.with_flags(false, nerve_like),
        base: x.clone(),
        key_level,
        shapes,
        keys,
        index,
        window: w,
    })
}

/// `t^! X`: simplices of bidegree `(n, m)` are the maps `Δⁿ × Jᵐ → X`.
///
/// Vertical degrees above 0 need a 2-coskeletal `X`, since `Jᵐ` has
/// nondegenerate simplices in every level.
pub fn t_upper(x: &TruncSSet, window: Window) -> Result<TruncBiSSet> {
    Ok(build_upper(x, window)?.x)
}

/// The nondegenerate simplices of a bisimplicial set and how their faces
/// are expressed through one another.
#[derive(Clone, Debug, Serialize)]
pub struct ElementsDiagram {
    /// Bidegree and simplex of each element.
    pub elements: Vec<((usize, usize), u32)>,
    pub faces: Vec<ElementFace>,
}

/// `d_index` (in direction `dir`) of `element` is `s^h_h s^v_v target`.
#[derive(Clone, Debug, Serialize)]
pub struct ElementFace {
    pub element: usize,
    pub dir: Dir,
    pub index: usize,
    pub target: usize,
    pub h: Vec<u8>,
    pub v: Vec<u8>,
}

pub fn elements(y: &TruncBiSSet) -> ElementsDiagram {
    let mut elements = Vec::new();
    let mut element_of: HashMap<((usize, usize), u32), usize> = HashMap::new();
    for (n, m) in y.window().bidegrees() {
        for (j, &c) in y.generators(n, m).iter().enumerate() {
            element_of.insert(((n, m), j as u32), elements.len());
            elements.push(((n, m), c));
        }
    }
    let mut faces = Vec::new();
    for (e, &((n, m), c)) in elements.iter().enumerate() {
        for (dir, deg) in [(Dir::H, n), (Dir::V, m)] {
            if deg == 0 {
                continue;
            }
            let (fn_, fm) = match dir {
                Dir::H => (n - 1, m),
                Dir::V => (n, m - 1),
            };
            for i in 0..=deg {
                let f = y.face(dir, (n, m), c, i);
                let ez = y.ez(fn_, fm, f);
                let base = (fn_ - ez.h.len(), fm - ez.v.len());
                faces.push(ElementFace {
                    element: e,
                    dir,
                    index: i,
                    target: element_of[&(base, ez.base)],
                    h: ez.h.clone(),
                    v: ez.v.clone(),
                });
            }
        }
    }
    ElementsDiagram { elements, faces }
}

/// The colimit of `Δⁿ × Jᵐ` over the elements, truncated at `out_dim`.
pub(crate) struct Glued {
    pub carrier: TruncSSet,
    diagram: ElementsDiagram,
    shapes: HashMap<(usize, usize), Shape>,
    offsets: Vec<Vec<usize>>,
    class_of: Vec<Vec<u32>>,
    /// One element simplex per class, the least one.
    origin: Vec<Vec<(usize, u32)>>,
}

impl Glued {
    /// Class of simplex `c` of level `k` in the piece of element `e`.
    fn class(&self, e: usize, k: usize, c: u32) -> u32 {
        self.class_of[k][self.offsets[e][k] + c as usize]
    }
}

pub(crate) fn glue(y: &TruncBiSSet, out_dim: usize) -> Result<Glued> {
    let diagram = elements(y);
    let seq_top = out_dim;
    let mut shapes: HashMap<(usize, usize), Shape> = HashMap::new();
    for &(b, _) in &diagram.elements {
        if let std::collections::hash_map::Entry::Vacant(v) = shapes.entry(b) {
            v.insert(Shape::new(b.0, b.1, out_dim, seq_top)?);
        }
    }
    let mut offsets = Vec::with_capacity(diagram.elements.len());
    let mut totals = vec![0usize; out_dim + 1];
    for &(b, _) in &diagram.elements {
        let sh = &shapes[&b];
        offsets.push(totals.clone());
        for (k, t) in totals.iter_mut().enumerate() {
            *t += sh.s.count(k);
        }
    }
    let mut uf: Vec<UnionFind> = totals.iter().map(|&t| UnionFind::new(t)).collect();
    for f in &diagram.faces {
        let ((n, m), _) = diagram.elements[f.element];
        let (tb, _) = diagram.elements[f.target];
        let face_shape = Shape::new(
            if f.dir == Dir::H { n - 1 } else { n },
            if f.dir == Dir::V { m - 1 } else { m },
            out_dim,
            seq_top,
        )?;
        let (big, small) = (&shapes[&(n, m)], &shapes[&tb]);
        let i = f.index as u32;
        let ident = |v: u32| v;
        let (hin, jin): (Box<dyn Fn(u32) -> u32>, Box<dyn Fn(u32) -> u32>) = match f.dir {
            Dir::H => (Box::new(face_vertex(i)), Box::new(ident)),
            Dir::V => (Box::new(ident), Box::new(face_vertex(i))),
        };
        let hdown = word_vertex(&f.h);
        let vdown = word_vertex(&f.v);
        for k in 0..=out_dim {
            for c in 0..face_shape.s.count(k) as u32 {
                let a = big.transport(&face_shape, k, c, &*hin, &*jin);
                let b = small.transport(&face_shape, k, c, &hdown, &vdown);
                uf[k].union(
                    offsets[f.element][k] + a as usize,
                    offsets[f.target][k] + b as usize,
                );
            }
        }
    }
    // element and simplex behind each global index
    let mut owner: Vec<Vec<(usize, u32)>> = vec![Vec::new(); out_dim + 1];
    for (e, &(b, _)) in diagram.elements.iter().enumerate() {
        for (k, o) in owner.iter_mut().enumerate() {
            o.extend((0..shapes[&b].s.count(k) as u32).map(|c| (e, c)));
        }
    }
    let mut class_of: Vec<Vec<u32>> = Vec::with_capacity(out_dim + 1);
    let mut origin: Vec<Vec<(usize, u32)>> = Vec::with_capacity(out_dim + 1);
    for k in 0..=out_dim {
        let classes = uf[k].classes();
        let mut cls = vec![0u32; totals[k]];
        for (i, cl) in classes.iter().enumerate() {
            for &g in cl {
                cls[g] = i as u32;
            }
        }
        origin.push(classes.iter().map(|cl| owner[k][cl[0]]).collect());
        class_of.push(cls);
    }
    let piece = |e: usize| &shapes[&diagram.elements[e].0].s;
    let mut face = vec![Vec::new(); out_dim + 1];
    let mut degen = vec![Vec::new(); out_dim + 1];
    for k in 0..=out_dim {
        for &(e, c) in &origin[k] {
            let s = piece(e);
            if k >= 1 {
                for &f in s.faces(k, c) {
                    face[k].push(class_of[k - 1][offsets[e][k - 1] + f as usize]);
                }
            }
            if k < out_dim {
                for i in 0..=k {
                    let d = s.degen(k, c, i);
                    degen[k].push(class_of[k + 1][offsets[e][k + 1] + d as usize]);
                }
            }
        }
    }
    let carrier = TruncSSet::from_tables(
        out_dim,
        origin.iter().map(|l| l.len()).collect(),
        face,
        degen,
        |k, i| {
            let (e, c) = origin[k][i];
            let ((n, m), g) = diagram.elements[e];
            format!("{}:{}", y.cell_name(n, m, g), piece(e).cell_name(k, c))
        },
    )?;
    let only_horizontal = diagram.elements.iter().all(|&((n, m), _)| m == 0 && n <= out_dim);
    let carrier = carrier.with_flags(y.is_skeletal() && only_horizontal, false);
    Ok(Glued {
        carrier,
        diagram,
        shapes,
        offsets,
        class_of,
        origin,
    })
}

/// `t_! Y` truncated at `out_dim`, for `Y` generated inside its window.
pub fn t_lower(y: &TruncBiSSet, out_dim: usize) -> Result<TruncSSet> {
    if !y.is_skeletal() {
        return Err(Error::WindowInsufficient {
            what: "t_! of a bisimplicial set with generators outside its window".into(),
            required: "a skeletal input".into(),
        });
    }
    Ok(glue(y, out_dim)?.carrier)
}

/// `t_! Y` computed from the generators inside the window, with the
/// fundamental category checked against `τ₁ Y`.
#[derive(Clone, Debug)]
pub struct WindowedLower {
    pub carrier: TruncSSet,
    /// True when `Y` has no generators outside its window.
    pub exact: bool,
}

pub fn t_lower_checked(y: &TruncBiSSet, out_dim: usize) -> Result<WindowedLower> {
    let carrier = glue(y, out_dim)?.carrier;
    if out_dim >= 2 && y.window().covers(&Window::total2()) {
        let lhs = tau1(&carrier)?;
        let rhs = crate::bisset::tau1_bisset(y)?;
        if !is_isomorphic(&lhs.cat, &rhs.cat) {
            return Err(Error::NotWellDefined(
                "fundamental category of the windowed t_! disagrees with that of the input".into(),
            ));
        }
    }
    Ok(WindowedLower {
        carrier,
        exact: y.is_skeletal(),
    })
}

/// Values of a map `Δⁿ × Jᵐ → X` on all simplices up to `up_to`, from its
/// values up to `known` and unique fillers above.
fn extend_by_faces(
    s: &TruncSSet,
    x: &TruncSSet,
    mut levels: Vec<Vec<u32>>,
    up_to: usize,
) -> Result<Vec<Vec<u32>>> {
    for k in levels.len()..=up_to {
        let mut ix: HashMap<&[u32], Vec<u32>> = HashMap::new();
        for c in 0..x.count(k) as u32 {
            ix.entry(x.faces(k, c)).or_default().push(c);
        }
        let row = (0..s.count(k) as u32)
            .map(|c| {
                let faces: Vec<u32> = s.faces(k, c).iter().map(|&f| levels[k - 1][f as usize]).collect();
                match ix.get(faces.as_slice()).map(|v| v.as_slice()) {
                    Some([one]) => Ok(*one),
                    _ => Err(Error::NotWellDefined(format!("no unique filler for {}", s.cell_name(k, c)))),
                }
            })
            .collect::<Result<Vec<u32>>>()?;
        levels.push(row);
    }
    Ok(levels)
}

/// The counit `t_! t^! X → X` with `t^! X` on `window` and the colimit
/// truncated at `out_dim`.
pub fn counit(x: &TruncSSet, window: Window, out_dim: usize) -> Result<SSetMap> {
    if out_dim > x.dim() {
        return Err(Error::WindowInsufficient {
            what: "counit".into(),
            required: format!("X stored up to level {out_dim}"),
        });
    }
    let up = build_upper(x, window)?;
    let glued = glue(&up.x, out_dim)?;
    // the map Δⁿ × Jᵐ → X of every element, on all simplices up to out_dim
    let mut element_maps: Vec<Vec<Vec<u32>>> = Vec::with_capacity(glued.diagram.elements.len());
    for &((n, m), c) in &glued.diagram.elements {
        let sh = &glued.shapes[&(n, m)];
        let ush = up.shape(n, m);
        let key = &up.keys[up.window_slot(n, m)][c as usize];
        let mut off = 0;
        let mut levels = Vec::new();
        for k in 0..=up.key_level.min(out_dim) {
            levels.push(
                (0..sh.s.count(k) as u32)
                    .map(|a| {
                        let (hs, js) = sh.sequences(k, a);
                        key[off + ush.cell(k, hs, js) as usize]
                    })
                    .collect(),
            );
            off += ush.s.count(k);
        }
        element_maps.push(extend_by_faces(&sh.s, x, levels, out_dim)?);
    }
    let levels: Vec<Vec<u32>> = (0..=out_dim)
        .map(|k| {
            (0..glued.origin[k].len())
                .map(|cl| {
                    let (e, c) = glued.origin[k][cl];
                    element_maps[e][k][c as usize]
                })
                .collect()
        })
        .collect();
    // every simplex of a class has the same image
    for (e, maps) in element_maps.iter().enumerate() {
        for k in 0..=out_dim {
            for (c, &img) in maps[k].iter().enumerate() {
                if levels[k][glued.class(e, k, c as u32) as usize] != img {
                    return Err(Error::NotWellDefined("counit differs within a class".into()));
                }
            }
        }
    }
    SSetMap::new(Arc::new(glued.carrier), Arc::new(x.truncate(out_dim)), levels)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub window: Window,
    /// Maps `t_! Y → X`.
    pub left: usize,
    /// Maps `Y → t^! X`.
    pub right: usize,
    /// Transposition is injective and both sides have the same size.
    pub bijection: bool,
}

/// Counts both sides of `Hom(t_! Y, X) ≅ Hom(Y, t^! X)` and checks that
/// transposing every map on the left gives distinct maps on the right.
pub fn adjunction_count_check(y: &TruncBiSSet, x: &TruncSSet) -> Result<AdjunctionReport> {
    if !y.is_skeletal() {
        return Err(Error::WindowInsufficient {
            what: "adjunction check".into(),
            required: "a skeletal bisimplicial set".into(),
        });
    }
    let max_n = y
        .generator_counts()
        .iter()
        .filter(|&&(_, g)| g > 0)
        .map(|&((n, _), _)| n)
        .max()
        .unwrap_or(0);
    let out_dim = 2.max(max_n).min(x.dim());
    let glued = glue(y, out_dim)?;
    let up = build_upper(x, y.window())?;
    let yarc = Arc::new(y.clone());
    let upper = Arc::new(up.x.clone());
    let domain = y.window().meet(&up.x.window());
    let mut transposed: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let mut left = 0;
    let mut failure = None;
    for_each_map(&glued.carrier, x, &mut |phi| {
        left += 1;
        let w = y.window();
        let mut slots = vec![Vec::new(); (w.p + 1) * (w.q + 1)];
        for (n, m) in domain.bidegrees() {
            let mut row = Vec::with_capacity(y.count(n, m));
            for c in 0..y.count(n, m) as u32 {
                let ez = y.ez(n, m, c);
                let base = (n - ez.h.len(), m - ez.v.len());
                let e = glued
                    .diagram
                    .elements
                    .iter()
                    .position(|&(b, g)| b == base && g == y.generators(base.0, base.1)[ez.base as usize])
                    .expect("generator is an element");
                let piece = &glued.shapes[&base];
                let hmap = word_vertex(&ez.h);
                let vmap = word_vertex(&ez.v);
                let value = |k: usize, hs: &[u32], js: &[u32]| -> u32 {
                    let hs: Vec<u32> = hs.iter().map(|&v| hmap(v)).collect();
                    let js: Vec<u32> = js.iter().map(|&v| vmap(v)).collect();
                    phi[k][glued.class(e, k, piece.cell(k, &hs, &js)) as usize]
                };
                match up.lookup(n, m, value) {
                    Some(t) => row.push(t),
                    None => {
                        failure = Some(Error::NotAMap(format!(
                            "transpose of a map misses {}",
                            y.cell_name(n, m, c)
                        )));
                        return false;
                    }
                }
            }
            slots[w.slot(n, m)] = row;
        }
        let levels: HashMap<(usize, usize), Vec<u32>> = domain
            .bidegrees()
            .into_iter()
            .map(|(n, m)| ((n, m), slots[w.slot(n, m)].clone()))
            .collect();
        if let Err(e) = BiSSetMap::new(yarc.clone(), upper.clone(), levels) {
            failure = Some(e);
            return false;
        }
        transposed.insert(slots);
        true
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let right = count_bimaps(y, &up.x)?;
    Ok(AdjunctionReport {
        window: y.window(),
        left,
        right,
        bijection: transposed.len() == left && left == right,
    })
}

/// The canonical map from the classifying diagram of `C` to `t^! N C`,
/// sending a functor `[n] × I[m] → C` to its nerve.
pub fn nerve_comparison(c: &FinCat, window: Window) -> Result<BiSSetMap> {
    let cls = build_classifying(c, window)?;
    let up = build_upper(&nerve(c, 2), window)?;
    if up.key_level > 1 {
        return Err(Error::NotWellDefined("nerves are determined by their edges".into()));
    }
    let mut levels = HashMap::new();
    for (n, m) in window.bidegrees() {
        let keys = &cls.keys[window.slot(n, m)];
        let row = keys
            .iter()
            .map(|key| {
                up.lookup(n, m, |k, hs, js| {
                    if k == 0 {
                        key.object(c, n, (hs[0] as usize, js[0] as usize)) as u32
                    } else {
                        key.arrow(c, n, (hs[0] as usize, js[0] as usize), (hs[1] as usize, js[1] as usize))
                            as u32
                    }
                })
                .ok_or_else(|| Error::NotAMap("nerve of a functor is missing".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        levels.insert((n, m), row);
    }
    BiSSetMap::new(Arc::new(cls.x), Arc::new(up.x), levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisset::{box_product, terminal};
    use crate::fincat::{groupoid_interval, interval_category, product_category, walking_idempotent};
    use crate::sset::{is_isomorphic as sset_iso, point};

    #[test]
    fn upper_of_nerve_counts() {
        let u = t_upper(&nerve(&interval_category(1), 3), Window::new(1, 1)).unwrap();
        let counts: HashMap<(usize, usize), usize> = u.counts().into_iter().collect();
        assert_eq!(counts[&(0, 0)], 2);
        assert_eq!(counts[&(1, 0)], 3);
        assert_eq!(counts[&(0, 1)], 2);
        assert_eq!(counts[&(1, 1)], 3);
        let t = t_upper(&point(3), Window::new(2, 2)).unwrap();
        assert!(t.counts().iter().all(|&(_, k)| k == 1));
    }

    #[test]
    fn upper_of_nerve_is_classifying_diagram() {
        for c in [interval_category(2), groupoid_interval(1), walking_idempotent()] {
            let f = nerve_comparison(&c, Window::new(2, 2)).unwrap();
            assert!(f.is_isomorphism());
        }
    }

    #[test]
    fn lower_of_boxes() {
        for n in 0..=2 {
            for m in 0..=2 {
                let b = box_product(&standard_simplex(n, 2), &standard_simplex(m, 2));
                let l = t_lower(&b, 2).unwrap();
                let expect = product(&standard_simplex(n, 2), &j_space(m, 2)).unwrap();
                assert!(sset_iso(&l, &expect), "({n},{m})");
            }
        }
        let b = box_product(&standard_simplex(1, 2), &standard_simplex(1, 2));
        let t = tau1(&t_lower(&b, 2).unwrap()).unwrap();
        let expect = product_category(&interval_category(1), &groupoid_interval(1));
        assert!(is_isomorphic(&t.cat, &expect));
    }

    #[test]
    fn counit_examples() {
        let x = nerve(&interval_category(2), 2);
        let e = counit(&x, Window::new(2, 2), 2).unwrap();
        assert_eq!(e.source.count(0), x.count(0));
        let f = counit(&point(2), Window::new(2, 2), 2).unwrap();
        assert!(f.is_isomorphism());
    }

    #[test]
    fn adjunction_counts() {
        let x = nerve(&interval_category(1), 2);
        let y = box_product(&standard_simplex(1, 2), &point(2));
        let r = adjunction_count_check(&y, &x).unwrap();
        assert_eq!((r.left, r.right, r.bijection), (3, 3, true));
        let y = box_product(&point(2), &standard_simplex(1, 2));
        let r = adjunction_count_check(&y, &x).unwrap();
        assert_eq!((r.left, r.right, r.bijection), (2, 2, true));
        let r = adjunction_count_check(&terminal(Window::new(2, 2)), &x).unwrap();
        assert_eq!((r.left, r.right), (2, 2));
    }
}
