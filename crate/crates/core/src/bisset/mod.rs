//! Bi-truncated bisimplicial sets.
//!
//! Simplices live in bidegrees `(n, m)` of a downward closed [`Window`]: the
//! first index is horizontal, the second vertical. Each simplex carries an
//! Eilenberg–Zilber form `s^h_I s^v_J x` with `x` a generator.
//!
//! The `coskeletal` flag marks nerve-like objects such as classifying
//! diagrams: maps into them are determined by the bidegrees of total degree
//! at most 2, and their rows and columns are coskeletal simplicial sets.


pub(crate) mod classifying;
mod mapping;
mod maps;
mod segal;

pub use segal::{
    equivalences, ho, ho_functor, hom_space, is_complete_1trunc, is_dk_equivalence, j_functor,
    reedy_fibrancy_check, segal_check_strict, CompletenessFailure, DkFailure, Equivalences, Ho,
    HomSpace, JFunctor, ReedyFailure, ReedyReport, SegalFailure,
};mod tau1;

pub use tau1::{tau1_bisset, tau1_bisset_with, BiTau1};
pub use mapping::{exponential_bisset, mh, mv};
pub(crate) use mapping::determining_bidegrees;
pub use classifying::{classifying_diagram, classifying_map, column_comparison, column_comparisons};
pub use maps::{count_bimaps, enumerate_bimaps, find_bi_isomorphism, for_each_bimap, is_bi_isomorphic, BiSSetMap};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ez;
use crate::sset::TruncSSet;

/// A downward closed set of bidegrees: `n <= p`, `m <= q`, and optionally
/// `n + m <= total`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub p: usize,
    pub q: usize,
    pub total: Option<usize>,
}

impl Window {
    pub const fn new(p: usize, q: usize) -> Window {
        Window { p, q, total: None }
    }

    pub const fn with_total(p: usize, q: usize, total: usize) -> Window {
        Window {
            p,
            q,
            total: Some(total),
        }
    }

    /// Bidegrees of total degree at most 2, which determine maps into
    /// nerve-like objects.
    pub const fn total2() -> Window {
        Window::with_total(2, 2, 2)
    }

    pub fn contains(&self, n: usize, m: usize) -> bool {
        n <= self.p && m <= self.q && self.total.is_none_or(|t| n + m <= t)
    }

    /// Bidegrees ordered by total degree, then horizontal degree.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..=self.p)
            .flat_map(|n| (0..=self.q).map(move |m| (n, m)))
            .filter(|&(n, m)| self.contains(n, m))
            .collect();
        out.sort_by_key(|&(n, m)| (n + m, n));
        out
    }

    /// Highest vertical degree present in column `n`.
    pub fn column_top(&self, n: usize) -> Option<usize> {
        (0..=self.q).rev().find(|&m| self.contains(n, m))
    }

    /// Highest horizontal degree present in row `m`.
    pub fn row_top(&self, m: usize) -> Option<usize> {
        (0..=self.p).rev().find(|&n| self.contains(n, m))
    }

    pub fn covers(&self, other: &Window) -> bool {
        other.bidegrees().iter().all(|&(n, m)| self.contains(n, m))
    }

    pub fn meet(&self, other: &Window) -> Window {
        let total = match (self.total, other.total) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Window {
            p: self.p.min(other.p),
            q: self.q.min(other.q),
            total,
        }
    }

    pub(crate) fn slot(&self, n: usize, m: usize) -> usize {
        n * (self.q + 1) + m
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.total {
            None => write!(f, "({},{})", self.p, self.q),
            Some(t) => write!(f, "({},{};total<={})", self.p, self.q, t),
        }
    }
}

/// Horizontal or vertical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dir {
    H,
    V,
}

impl Dir {
    fn degree(self, (n, m): (usize, usize)) -> usize {
        match self {
            Dir::H => n,
            Dir::V => m,
        }
    }

    fn shift(self, (n, m): (usize, usize), up: bool) -> (usize, usize) {
        match (self, up) {
            (Dir::H, true) => (n + 1, m),
            (Dir::H, false) => (n - 1, m),
            (Dir::V, true) => (n, m + 1),
            (Dir::V, false) => (n, m - 1),
        }
    }

    fn other(self) -> Dir {
        match self {
            Dir::H => Dir::V,
            Dir::V => Dir::H,
        }
    }

    fn letter(self) -> &'static str {
        match self {
            Dir::H => "h",
            Dir::V => "v",
        }
    }
}

/// `s^h_h s^v_v` applied to a generator of bidegree
/// `(n - |h|, m - |v|)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BiSimplex {
    pub h: Vec<u8>,
    pub v: Vec<u8>,
    pub base: u32,
}

impl BiSimplex {
    pub fn generator(base: u32) -> BiSimplex {
        BiSimplex {
            h: Vec::new(),
            v: Vec::new(),
            base,
        }
    }

    fn word(&self, dir: Dir) -> &Vec<u8> {
        match dir {
            Dir::H => &self.h,
            Dir::V => &self.v,
        }
    }

    fn word_mut(&mut self, dir: Dir) -> &mut Vec<u8> {
        match dir {
            Dir::H => &mut self.h,
            Dir::V => &mut self.v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Cells {
    count: usize,
    hface: Vec<u32>,
    vface: Vec<u32>,
    hdegen: Vec<u32>,
    vdegen: Vec<u32>,
    ez: Vec<BiSimplex>,
}

impl Cells {
    fn face_table(&self, dir: Dir) -> &Vec<u32> {
        match dir {
            Dir::H => &self.hface,
            Dir::V => &self.vface,
        }
    }

    fn degen_table(&self, dir: Dir) -> &Vec<u32> {
        match dir {
            Dir::H => &self.hdegen,
            Dir::V => &self.vdegen,
        }
    }
}

/// Face and degeneracy tables of one bidegree, as produced by a model.
#[derive(Clone, Debug, Default)]
pub struct Tables {
    pub count: usize,
    pub hface: Vec<u32>,
    pub vface: Vec<u32>,
    pub hdegen: Vec<u32>,
    pub vdegen: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncBiSSet {
    window: Window,
    cells: Vec<Cells>,
    gens: Vec<Vec<u32>>,
    gen_names: Vec<Vec<String>>,
    skeletal: bool,
    coskeletal: bool,
}

type FaceData = Vec<Vec<Vec<BiSimplex>>>;

impl TruncBiSSet {
    /// Builds the truncation to `window` from generators and their faces.
    /// Generator data is indexed by `(n, m)` slots listed in `bidegrees`;
    /// `hfaces[s][j]` has `n + 1` entries when `n >= 1`, likewise `vfaces`.
    pub fn from_generators(
        window: Window,
        generators: Vec<((usize, usize), Vec<String>)>,
        hfaces: FaceData,
        vfaces: FaceData,
    ) -> Result<TruncBiSSet> {
        let size = (window.p + 1) * (window.q + 1);
        let mut gen_names = vec![Vec::new(); size];
        let mut hf: FaceData = vec![Vec::new(); size];
        let mut vf: FaceData = vec![Vec::new(); size];
        let mut skeletal = true;
        for (((n, m), names), (h, v)) in generators.into_iter().zip(hfaces.into_iter().zip(vfaces)) {
            if !window.contains(n, m) {
                skeletal &= names.is_empty();
                continue;
            }
            let s = window.slot(n, m);
            for (j, name) in names.iter().enumerate() {
                for (dir, faces, deg) in [(Dir::H, &h, n), (Dir::V, &v, m)] {
                    let fs = faces.get(j).cloned().unwrap_or_default();
                    let expected = if deg == 0 { 0 } else { deg + 1 };
                    if fs.len() != expected {
                        return Err(Error::MissingFace {
                            generator: name.clone(),
                            index: fs.len().min(expected),
                        });
                    }
                    for (i, f) in fs.iter().enumerate() {
                        let bad = |detail: String| Error::InvalidFace {
                            generator: name.clone(),
                            index: i,
                            detail: format!("{}face: {detail}", dir.letter()),
                        };
                        let (fn_, fm) = dir.shift((n, m), false);
                        if f.h.len() > fn_ || f.v.len() > fm {
                            return Err(bad("degeneracy word too long".into()));
                        }
                        if !ez::is_normal(&f.h) || !ez::is_normal(&f.v) {
                            return Err(bad("degeneracy word not strictly decreasing".into()));
                        }
                        if f.h.first().is_some_and(|&t| t as usize >= fn_)
                            || f.v.first().is_some_and(|&t| t as usize >= fm)
                        {
                            return Err(bad("degeneracy index out of range".into()));
                        }
                    }
                }
            }
            gen_names[s] = names;
            hf[s] = h;
            vf[s] = v;
        }
        for &(n, m) in &window.bidegrees() {
            let s = window.slot(n, m);
            for (dir, faces) in [(Dir::H, &hf[s]), (Dir::V, &vf[s])] {
                for (j, fs) in faces.iter().enumerate() {
                    for (i, f) in fs.iter().enumerate() {
                        let (bn, bm) = dir.shift((n, m), false);
                        let (ln, lm) = (bn - f.h.len(), bm - f.v.len());
                        if f.base as usize >= gen_names[window.slot(ln, lm)].len() {
                            return Err(Error::InvalidFace {
                                generator: gen_names[s][j].clone(),
                                index: i,
                                detail: format!(
                                    "{}face: no generator of bidegree ({ln},{lm})",
                                    dir.letter()
                                ),
                            });
                        }
                    }
                }
            }
        }

        let mut cells: Vec<Cells> = vec![Cells::default(); size];
        let mut index: Vec<HashMap<BiSimplex, u32>> = vec![HashMap::new(); size];
        let mut gens = vec![Vec::new(); size];
        let order = window.bidegrees();
        for &(n, m) in &order {
            let s = window.slot(n, m);
            let mut ezs = Vec::new();
            for l in (0..=n).rev() {
                for lv in (0..=m).rev() {
                    let g = gen_names[window.slot(l, lv)].len();
                    if g == 0 {
                        continue;
                    }
                    for hw in ez::words(n, n - l) {
                        for vw in ez::words(m, m - lv) {
                            for b in 0..g {
                                if l == n && lv == m {
                                    gens[s].push(ezs.len() as u32);
                                }
                                ezs.push(BiSimplex {
                                    h: hw.clone(),
                                    v: vw.clone(),
                                    base: b as u32,
                                });
                            }
                        }
                    }
                }
            }
            index[s] = ezs.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
            cells[s].count = ezs.len();
            cells[s].ez = ezs;
        }
        for &(n, m) in &order {
            let s = window.slot(n, m);
            for dir in [Dir::H, Dir::V] {
                let deg = dir.degree((n, m));
                if deg == 0 {
                    continue;
                }
                let below = window.slot(dir.shift((n, m), false).0, dir.shift((n, m), false).1);
                let mut table = Vec::with_capacity(cells[s].count * (deg + 1));
                for e in &cells[s].ez {
                    for j in 0..=deg {
                        let f = match ez::push_face(e.word(dir), j as u8) {
                            ez::Pushed::Cancelled(w) => {
                                let mut f = e.clone();
                                *f.word_mut(dir) = w;
                                f
                            }
                            ez::Pushed::Reached { outer, index: ix } => {
                                let (ln, lm) = (n - e.h.len(), m - e.v.len());
                                let gs = window.slot(ln, lm);
                                let fd = match dir {
                                    Dir::H => &hf[gs],
                                    Dir::V => &vf[gs],
                                };
                                let inner = &fd[e.base as usize][ix as usize];
                                let mut word = outer;
                                word.extend_from_slice(inner.word(dir));
                                let mut across = e.word(dir.other()).clone();
                                across.extend_from_slice(inner.word(dir.other()));
                                let mut f = BiSimplex {
                                    h: Vec::new(),
                                    v: Vec::new(),
                                    base: inner.base,
                                };
                                *f.word_mut(dir) = ez::normalize(&word);
                                *f.word_mut(dir.other()) = ez::normalize(&across);
                                f
                            }
                        };
                        table.push(index[below][&f]);
                    }
                }
                match dir {
                    Dir::H => cells[s].hface = table,
                    Dir::V => cells[s].vface = table,
                }
            }
            for dir in [Dir::H, Dir::V] {
                let (un, um) = dir.shift((n, m), true);
                if !window.contains(un, um) {
                    continue;
                }
                let deg = dir.degree((n, m));
                let above = window.slot(un, um);
                let mut table = Vec::with_capacity(cells[s].count * (deg + 1));
                for e in &cells[s].ez {
                    for i in 0..=deg {
                        let mut t = e.clone();
                        *t.word_mut(dir) = ez::insert(e.word(dir), i as u8);
                        table.push(index[above][&t]);
                    }
                }
                match dir {
                    Dir::H => cells[s].hdegen = table,
                    Dir::V => cells[s].vdegen = table,
                }
            }
        }
        let x = TruncBiSSet {
            window,
            cells,
            gens,
            gen_names,
            skeletal,
            coskeletal: false,
        };
        x.validate()?;
        Ok(x)
    }

    /// Builds a bisimplicial set from complete operator tables, one entry
    /// per bidegree of `window` in [`Window::bidegrees`] order.
    pub fn from_tables(
        window: Window,
        tables: Vec<Tables>,
        name: impl Fn((usize, usize), usize) -> String,
    ) -> Result<TruncBiSSet> {
        let size = (window.p + 1) * (window.q + 1);
        let order = window.bidegrees();
        if tables.len() != order.len() {
            return Err(Error::InvalidIndex("one table per bidegree expected".into()));
        }
        let mut cells: Vec<Cells> = vec![Cells::default(); size];
        for (&(n, m), t) in order.iter().zip(tables) {
            let c = &mut cells[window.slot(n, m)];
            c.count = t.count;
            let expect = |deg: usize| if deg == 0 { 0 } else { t.count * (deg + 1) };
            let expect_up = |dir: Dir| {
                let (a, b) = dir.shift((n, m), true);
                if window.contains(a, b) {
                    t.count * (dir.degree((n, m)) + 1)
                } else {
                    0
                }
            };
            if t.hface.len() != expect(n)
                || t.vface.len() != expect(m)
                || t.hdegen.len() != expect_up(Dir::H)
                || t.vdegen.len() != expect_up(Dir::V)
            {
                return Err(Error::InvalidIndex(format!("table shape at ({n},{m})")));
            }
            c.hface = t.hface;
            c.vface = t.vface;
            c.hdegen = t.hdegen;
            c.vdegen = t.vdegen;
        }
        let mut gens = vec![Vec::new(); size];
        let mut gen_names = vec![Vec::new(); size];
        for &(n, m) in &order {
            let s = window.slot(n, m);
            let mut ezs: Vec<Option<BiSimplex>> = vec![None; cells[s].count];
            for dir in [Dir::H, Dir::V] {
                let deg = dir.degree((n, m));
                if deg == 0 {
                    continue;
                }
                let (bn, bm) = dir.shift((n, m), false);
                let below = &cells[window.slot(bn, bm)];
                for c in 0..below.count {
                    for i in 0..deg {
                        let t = below.degen_table(dir)[c * deg + i] as usize;
                        if t >= ezs.len() {
                            return Err(Error::InvalidIndex(format!("degeneracy at ({bn},{bm})")));
                        }
                        let mut e = below.ez[c].clone();
                        *e.word_mut(dir) = ez::insert(e.word(dir), i as u8);
                        match &ezs[t] {
                            Some(prev) if *prev != e => {
                                return Err(Error::SimplicialIdentity {
                                    cell: format!("bidegree ({n},{m}) simplex {t}"),
                                    detail: "two distinct degenerate forms".into(),
                                })
                            }
                            _ => ezs[t] = Some(e),
                        }
                    }
                }
            }
            let ezs = ezs
                .into_iter()
                .enumerate()
                .map(|(c, e)| {
                    e.unwrap_or_else(|| {
                        let b = gens[s].len() as u32;
                        gens[s].push(c as u32);
                        gen_names[s].push(name((n, m), c));
                        BiSimplex::generator(b)
                    })
                })
                .collect();
            cells[s].ez = ezs;
        }
        let x = TruncBiSSet {
            window,
            cells,
            gens,
            gen_names,
            skeletal: false,
            coskeletal: false,
        };
        x.validate()?;
        Ok(x)
    }

    pub(crate) fn with_flags(mut self, skeletal: bool, coskeletal: bool) -> Self {
        self.skeletal = skeletal;
        self.coskeletal = coskeletal && self.window.covers(&Window::total2());
        self
    }

    fn validate(&self) -> Result<()> {
        let w = self.window;
        for &(n, m) in &w.bidegrees() {
            for dir in [Dir::H, Dir::V] {
                let at = (n, m);
                if dir.degree(at) == 0 {
                    continue;
                }
                let (a, b) = dir.shift(at, false);
                if self.cell_slot(at).face_table(dir).iter().any(|&f| f as usize >= self.count(a, b)) {
                    return Err(Error::InvalidIndex(format!("{}face at ({n},{m})", dir.letter())));
                }
            }
            for c in 0..self.count(n, m) as u32 {
                let fail = |detail: String| Error::SimplicialIdentity {
                    cell: self.cell_name(n, m, c),
                    detail,
                };
                for dir in [Dir::H, Dir::V] {
                    let at = (n, m);
                    let deg = dir.degree(at);
                    let tag = dir.letter();
                    if deg >= 2 {
                        for j in 1..=deg {
                            for i in 0..j {
                                let a = self.face(dir, dir.shift(at, false), self.face(dir, at, c, j), i);
                                let b = self.face(dir, dir.shift(at, false), self.face(dir, at, c, i), j - 1);
                                if a != b {
                                    return Err(fail(format!(
                                        "d{tag}{i} d{tag}{j} != d{tag}{} d{tag}{i}",
                                        j - 1
                                    )));
                                }
                            }
                        }
                    }
                    let up = dir.shift(at, true);
                    if w.contains(up.0, up.1) {
                        for j in 0..=deg {
                            let s = self.degen(dir, at, c, j);
                            for i in 0..=deg + 1 {
                                let lhs = self.face(dir, up, s, i);
                                let rhs = if i == j || i == j + 1 {
                                    c
                                } else if i < j {
                                    let f = self.face(dir, at, c, i);
                                    self.degen(dir, dir.shift(at, false), f, j - 1)
                                } else {
                                    let f = self.face(dir, at, c, i - 1);
                                    self.degen(dir, dir.shift(at, false), f, j)
                                };
                                if lhs != rhs {
                                    return Err(fail(format!("d{tag}{i} s{tag}{j} identity")));
                                }
                            }
                        }
                    }
                }
                // mixed identities: horizontal and vertical operators commute
                if n >= 1 && m >= 1 {
                    for i in 0..=n {
                        for j in 0..=m {
                            let a = self.face(Dir::V, (n - 1, m), self.face(Dir::H, (n, m), c, i), j);
                            let b = self.face(Dir::H, (n, m - 1), self.face(Dir::V, (n, m), c, j), i);
                            if a != b {
                                return Err(fail(format!("dh{i} dv{j} != dv{j} dh{i}")));
                            }
                        }
                    }
                }
                for (dir, deg_d) in [(Dir::H, n), (Dir::V, m)] {
                    // faces in `dir` against degeneracies across
                    let across = dir.other();
                    let up = across.shift((n, m), true);
                    if deg_d >= 1 && w.contains(up.0, up.1) {
                        let down = dir.shift((n, m), false);
                        for i in 0..=deg_d {
                            for j in 0..=across.degree((n, m)) {
                                let a = self.face(dir, up, self.degen(across, (n, m), c, j), i);
                                let b = self.degen(across, down, self.face(dir, (n, m), c, i), j);
                                if a != b {
                                    return Err(fail(format!(
                                        "d{}{i} s{}{j} != s{}{j} d{}{i}",
                                        dir.letter(),
                                        across.letter(),
                                        across.letter(),
                                        dir.letter()
                                    )));
                                }
                            }
                        }
                    }
                }
                if w.contains(n + 1, m + 1) {
                    for i in 0..=n {
                        for j in 0..=m {
                            let a = self.degen(Dir::V, (n + 1, m), self.degen(Dir::H, (n, m), c, i), j);
                            let b = self.degen(Dir::H, (n, m + 1), self.degen(Dir::V, (n, m), c, j), i);
                            if a != b {
                                return Err(fail(format!("sh{i} sv{j} != sv{j} sh{i}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn cell_slot(&self, (n, m): (usize, usize)) -> &Cells {
        &self.cells[self.window.slot(n, m)]
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn count(&self, n: usize, m: usize) -> usize {
        if self.window.contains(n, m) {
            self.cells[self.window.slot(n, m)].count
        } else {
            0
        }
    }

    /// Face `i` in direction `dir` of simplex `c` in bidegree `at`.
    pub fn face(&self, dir: Dir, at: (usize, usize), c: u32, i: usize) -> u32 {
        let deg = dir.degree(at);
        self.cell_slot(at).face_table(dir)[c as usize * (deg + 1) + i]
    }

    pub fn faces(&self, dir: Dir, at: (usize, usize), c: u32) -> &[u32] {
        let deg = dir.degree(at);
        let s = c as usize * (deg + 1);
        &self.cell_slot(at).face_table(dir)[s..s + deg + 1]
    }

    pub fn hface(&self, n: usize, m: usize, c: u32, i: usize) -> u32 {
        self.face(Dir::H, (n, m), c, i)
    }

    pub fn vface(&self, n: usize, m: usize, c: u32, i: usize) -> u32 {
        self.face(Dir::V, (n, m), c, i)
    }

    pub fn degen(&self, dir: Dir, at: (usize, usize), c: u32, i: usize) -> u32 {
        let deg = dir.degree(at);
        self.cell_slot(at).degen_table(dir)[c as usize * (deg + 1) + i]
    }

    pub fn hdegen(&self, n: usize, m: usize, c: u32, i: usize) -> u32 {
        self.degen(Dir::H, (n, m), c, i)
    }

    pub fn vdegen(&self, n: usize, m: usize, c: u32, i: usize) -> u32 {
        self.degen(Dir::V, (n, m), c, i)
    }

    /// Applies `s^h_h s^v_v` to simplex `c` of bidegree `(n, m)`.
    pub fn degenerate(&self, n: usize, m: usize, c: u32, h: &[u8], v: &[u8]) -> u32 {
        let mut cur = c;
        for (t, &i) in v.iter().rev().enumerate() {
            cur = self.vdegen(n, m + t, cur, i as usize);
        }
        let m2 = m + v.len();
        for (t, &i) in h.iter().rev().enumerate() {
            cur = self.hdegen(n + t, m2, cur, i as usize);
        }
        cur
    }

    pub fn ez(&self, n: usize, m: usize, c: u32) -> &BiSimplex {
        &self.cell_slot((n, m)).ez[c as usize]
    }

    pub fn is_degenerate(&self, n: usize, m: usize, c: u32) -> bool {
        let e = self.ez(n, m, c);
        !e.h.is_empty() || !e.v.is_empty()
    }

    pub fn generators(&self, n: usize, m: usize) -> &[u32] {
        if self.window.contains(n, m) {
            &self.gens[self.window.slot(n, m)]
        } else {
            &[]
        }
    }

    pub fn generator_name(&self, n: usize, m: usize, j: usize) -> &str {
        &self.gen_names[self.window.slot(n, m)][j]
    }

    /// Generator counts per bidegree, in [`Window::bidegrees`] order.
    pub fn generator_counts(&self) -> Vec<((usize, usize), usize)> {
        self.window
            .bidegrees()
            .into_iter()
            .map(|(n, m)| ((n, m), self.generators(n, m).len()))
            .collect()
    }

    pub fn counts(&self) -> Vec<((usize, usize), usize)> {
        self.window
            .bidegrees()
            .into_iter()
            .map(|(n, m)| ((n, m), self.count(n, m)))
            .collect()
    }

    pub fn cell_name(&self, n: usize, m: usize, c: u32) -> String {
        let e = self.ez(n, m, c);
        let (l, lv) = (n - e.h.len(), m - e.v.len());
        let base = &self.gen_names[self.window.slot(l, lv)][e.base as usize];
        ez::render("sh", &e.h, &ez::render("sv", &e.v, base))
    }

    pub fn find_cell(&self, n: usize, m: usize, name: &str) -> Option<u32> {
        (0..self.count(n, m) as u32).find(|&c| self.cell_name(n, m, c) == name)
    }

    pub fn is_skeletal(&self) -> bool {
        self.skeletal
    }

    pub fn is_coskeletal(&self) -> bool {
        self.coskeletal
    }

    /// Generating data for rebuilding at another window.
    #[allow(clippy::type_complexity)]
    pub fn presentation(&self) -> (Vec<((usize, usize), Vec<String>)>, FaceData, FaceData) {
        let mut gens = Vec::new();
        let (mut hf, mut vf) = (Vec::new(), Vec::new());
        for (n, m) in self.window.bidegrees() {
            let names = self.gen_names[self.window.slot(n, m)].clone();
            let faces = |dir: Dir| -> Vec<Vec<BiSimplex>> {
                self.generators(n, m)
                    .iter()
                    .map(|&c| {
                        if dir.degree((n, m)) == 0 {
                            return Vec::new();
                        }
                        let (a, b) = dir.shift((n, m), false);
                        self.faces(dir, (n, m), c)
                            .iter()
                            .map(|&f| self.ez(a, b, f).clone())
                            .collect()
                    })
                    .collect()
            };
            hf.push(faces(Dir::H));
            vf.push(faces(Dir::V));
            gens.push(((n, m), names));
        }
        (gens, hf, vf)
    }

    /// The restriction to a smaller window.
    pub fn restrict(&self, window: Window) -> Result<TruncBiSSet> {
        if !self.window.covers(&window) {
            return Err(Error::WindowInsufficient {
                what: "restriction".into(),
                required: format!("window {window}"),
            });
        }
        let tables = window
            .bidegrees()
            .into_iter()
            .map(|(n, m)| {
                let c = self.cell_slot((n, m));
                Tables {
                    count: c.count,
                    hface: c.hface.clone(),
                    vface: c.vface.clone(),
                    hdegen: if window.contains(n + 1, m) { c.hdegen.clone() } else { Vec::new() },
                    vdegen: if window.contains(n, m + 1) { c.vdegen.clone() } else { Vec::new() },
                }
            })
            .collect();
        let r = TruncBiSSet::from_tables(window, tables, |(n, m), c| {
            self.cell_name(n, m, c as u32)
        })?;
        let skeletal = self.skeletal
            && self.window.bidegrees().iter().all(|&(n, m)| {
                window.contains(n, m) || self.generators(n, m).is_empty()
            });
        Ok(r.with_flags(skeletal, self.coskeletal))
    }

    /// The same bisimplicial set at another window; growing the window needs
    /// a skeletal input.
    pub fn rewindow(&self, window: Window) -> Result<TruncBiSSet> {
        if self.window.covers(&window) {
            return self.restrict(window);
        }
        if !self.skeletal {
            return Err(Error::WindowInsufficient {
                what: "enlarging the window of a non-skeletal bisimplicial set".into(),
                required: format!("data on window {window}"),
            });
        }
        let (g, h, v) = self.presentation();
        Ok(TruncBiSSet::from_generators(window, g, h, v)?.with_flags(true, self.coskeletal))
    }

    fn line(&self, dir: Dir, fixed: usize) -> Result<TruncSSet> {
        let (top, at): (usize, Box<dyn Fn(usize) -> (usize, usize)>) = match dir {
            Dir::V => (
                self.window.column_top(fixed).ok_or_else(|| out_of_window("column", fixed))?,
                Box::new(move |k| (fixed, k)),
            ),
            Dir::H => (
                self.window.row_top(fixed).ok_or_else(|| out_of_window("row", fixed))?,
                Box::new(move |k| (k, fixed)),
            ),
        };
        let counts = (0..=top).map(|k| self.cell_slot(at(k)).count).collect();
        let face = (0..=top)
            .map(|k| self.cell_slot(at(k)).face_table(dir).clone())
            .collect();
        let degen = (0..=top)
            .map(|k| {
                if k < top {
                    self.cell_slot(at(k)).degen_table(dir).clone()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let x = TruncSSet::from_tables(top, counts, face, degen, |k, c| {
            let (n, m) = at(k);
            self.cell_name(n, m, c as u32)
        })?;
        // generators of the line can come from lower bidegrees across
        let skeletal = self.skeletal
            && self.window.bidegrees().iter().all(|&(n, m)| {
                let (along, across) = match dir {
                    Dir::V => (m, n),
                    Dir::H => (n, m),
                };
                across > fixed || along <= top || self.generators(n, m).is_empty()
            });
        Ok(x.with_flags(skeletal, self.coskeletal))
    }

    /// The simplicial set `X_{n,•}`.
    pub fn column(&self, n: usize) -> Result<TruncSSet> {
        self.line(Dir::V, n)
    }

    /// The simplicial set `X_{•,m}`.
    pub fn row(&self, m: usize) -> Result<TruncSSet> {
        self.line(Dir::H, m)
    }
}

fn out_of_window(what: &str, i: usize) -> Error {
    Error::InvalidIndex(format!("{what} {i} lies outside the window"))
}

/// The external product: `(X ⊠ Y)_{n,m} = X_n × Y_m`, simplex `(a, b)` at
/// index `a * |Y_m| + b`.
pub fn box_product(x: &TruncSSet, y: &TruncSSet) -> TruncBiSSet {
    box_product_in(x, y, Window::new(x.dim(), y.dim())).expect("box products are valid")
}

/// The external product restricted to a window inside `(dim X, dim Y)`.
pub fn box_product_in(x: &TruncSSet, y: &TruncSSet, window: Window) -> Result<TruncBiSSet> {
    if window.p > x.dim() || window.q > y.dim() {
        return Err(Error::WindowInsufficient {
            what: "box product".into(),
            required: format!("factors stored up to ({}, {})", window.p, window.q),
        });
    }
    let tables = window
        .bidegrees()
        .into_iter()
        .map(|(n, m)| {
            let (nx, ny) = (x.count(n), y.count(m));
            let mut t = Tables {
                count: nx * ny,
                ..Tables::default()
            };
            for a in 0..nx as u32 {
                for b in 0..ny as u32 {
                    if n >= 1 {
                        let ny = ny as u32;
                        t.hface.extend((0..=n).map(|i| x.face(n, a, i) * ny + b));
                    }
                    if m >= 1 {
                        let ny1 = y.count(m - 1) as u32;
                        t.vface.extend((0..=m).map(|j| a * ny1 + y.face(m, b, j)));
                    }
                    if window.contains(n + 1, m) {
                        let ny = ny as u32;
                        t.hdegen.extend((0..=n).map(|i| x.degen(n, a, i) * ny + b));
                    }
                    if window.contains(n, m + 1) {
                        let ny1 = y.count(m + 1) as u32;
                        t.vdegen.extend((0..=m).map(|j| a * ny1 + y.degen(m, b, j)));
                    }
                }
            }
            t
        })
        .collect();
    let b = TruncBiSSet::from_tables(window, tables, |(n, m), c| {
        let ny = y.count(m);
        format!(
            "{}⊠{}",
            x.cell_name(n, (c / ny) as u32),
            y.cell_name(m, (c % ny) as u32)
        )
    })?;
    let det = |s: &TruncSSet| crate::sset::determining_level(s, 2) <= 1;
    let skeletal = match (x.skeletal_dim(), y.skeletal_dim()) {
        (Some(a), Some(b)) => window.contains(a, b) || (a <= window.p && b <= window.q && window.total.is_none()),
        _ => false,
    };
    let cosk = x.is_coskeletal() && y.is_coskeletal() && det(x) && det(y);
    Ok(b.with_flags(skeletal, cosk))
}

/// The levelwise product; simplex `(a, b)` has index `a * |Y_{n,m}| + b`.
pub fn product(x: &TruncBiSSet, y: &TruncBiSSet) -> Result<TruncBiSSet> {
    if x.window != y.window {
        return Err(Error::DimMismatch(format!(
            "product of windows {} and {}",
            x.window, y.window
        )));
    }
    let w = x.window;
    let tables = w
        .bidegrees()
        .into_iter()
        .map(|(n, m)| {
            let (nx, ny) = (x.count(n, m), y.count(n, m));
            let mut t = Tables {
                count: nx * ny,
                ..Tables::default()
            };
            for a in 0..nx as u32 {
                for b in 0..ny as u32 {
                    for dir in [Dir::H, Dir::V] {
                        let deg = dir.degree((n, m));
                        if deg >= 1 {
                            let (dn, dm) = dir.shift((n, m), false);
                            let ny1 = y.count(dn, dm) as u32;
                            let fs = (0..=deg).map(|i| {
                                x.face(dir, (n, m), a, i) * ny1 + y.face(dir, (n, m), b, i)
                            });
                            match dir {
                                Dir::H => t.hface.extend(fs),
                                Dir::V => t.vface.extend(fs),
                            }
                        }
                        let (un, um) = dir.shift((n, m), true);
                        if w.contains(un, um) {
                            let ny1 = y.count(un, um) as u32;
                            let ss = (0..=deg).map(|i| {
                                x.degen(dir, (n, m), a, i) * ny1 + y.degen(dir, (n, m), b, i)
                            });
                            match dir {
                                Dir::H => t.hdegen.extend(ss),
                                Dir::V => t.vdegen.extend(ss),
                            }
                        }
                    }
                }
            }
            t
        })
        .collect();
    let p = TruncBiSSet::from_tables(w, tables, |(n, m), c| {
        let ny = y.count(n, m);
        format!(
            "({},{})",
            x.cell_name(n, m, (c / ny) as u32),
            y.cell_name(n, m, (c % ny) as u32)
        )
    })?;
    Ok(p.with_flags(false, x.coskeletal && y.coskeletal))
}

/// The terminal bisimplicial set at a window.
pub fn terminal(window: Window) -> TruncBiSSet {
    let pt = crate::sset::point(window.p.max(window.q));
    box_product_in(&pt, &pt, window)
        .expect("point is stored high enough")
        .with_flags(true, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{is_isomorphic, nerve, point, standard_simplex};

    #[test]
    fn box_of_intervals_generators() {
        let d1 = standard_simplex(1, 1);
        let b = box_product(&d1, &d1);
        let g: HashMap<(usize, usize), usize> = b.generator_counts().into_iter().collect();
        assert_eq!(g[&(0, 0)], 4);
        assert_eq!(g[&(1, 0)], 2);
        assert_eq!(g[&(0, 1)], 2);
        assert_eq!(g[&(1, 1)], 1);
    }

    #[test]
    fn rows_and_columns_of_a_box() {
        let d1 = standard_simplex(1, 2);
        let pt = point(2);
        let b = box_product(&d1, &pt);
        assert!(is_isomorphic(&b.row(0).unwrap(), &d1));
        for n in 0..=2 {
            let col = b.column(n).unwrap();
            assert_eq!(col.generator_counts()[1..], vec![0, 0]);
        }
        let c = nerve(&crate::fincat::walking_idempotent(), 2);
        let b = box_product(&pt, &c);
        assert!(is_isomorphic(&b.column(0).unwrap(), &c));
    }

    #[test]
    fn terminal_is_one_point_everywhere() {
        let t = terminal(Window::new(3, 3));
        assert!(t.counts().iter().all(|&(_, c)| c == 1));
    }

    #[test]
    fn generator_presentation_round_trips() {
        let d1 = standard_simplex(1, 2);
        let b = box_product(&d1, &d1);
        let (g, h, v) = b.presentation();
        let again = TruncBiSSet::from_generators(b.window(), g, h, v).unwrap();
        assert_eq!(again.counts(), b.counts());
        let (g, h, v) = b.presentation();
        let bigger = TruncBiSSet::from_generators(Window::new(3, 3), g, h, v).unwrap();
        assert_eq!(bigger.count(3, 3), 5 * 5);
    }

    #[test]
    fn total_window_shape() {
        let w = Window::with_total(3, 3, 3);
        assert!(w.contains(2, 1));
        assert!(!w.contains(2, 2));
        assert_eq!(w.column_top(3), Some(0));
        assert_eq!(w.bidegrees()[..3], [(0, 0), (0, 1), (1, 0)]);
    }
}
