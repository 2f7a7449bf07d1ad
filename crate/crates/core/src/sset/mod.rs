//! Truncated simplicial sets.
//!
//! A [`TruncSSet`] records every simplex up to its truncation level together
//! with the face and degeneracy tables and the Eilenberg–Zilber form of each
//! simplex. Two flags record what the truncation means:
//!
//! * `skeletal`: there are no nondegenerate simplices above `dim`;
//! * `coskeletal`: the object is 2-coskeletal, so maps into it are determined
//!   by their restriction to 2-skeleta.
//!
//! Operations whose answer depends on simplices above the stored level use
//! these flags to decide whether the stored data suffices and fail with
//! [`Error::WindowInsufficient`] otherwise.

mod exponential;
mod horns;
mod maps;
mod standard;
mod tau1;

pub use exponential::exponential;
pub(crate) use exponential::{determining_level, induced_cell_maps, vertex_sequences};
pub use horns::{is_kan, is_quasicategory, HornWitness};
pub use maps::{
    count_maps, enumerate_maps, find_isomorphism, for_each_map, is_isomorphic, SSetMap,
};
pub(crate) use maps::MapSearch;
pub(crate) use standard::composable_strings;
pub use standard::{boundary, horn, j_space, nerve, nerve_map, point, spine, standard_simplex};
pub use tau1::{is_whe_1trunc, pi0, tau1, tau1_functor, Tau1, WheFailure};

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ez;

/// A simplex in Eilenberg–Zilber form: a normal degeneracy word applied to a
/// generator of level `level - word.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Simplex {
    pub word: Vec<u8>,
    pub base: u32,
}

impl Simplex {
    pub fn generator(base: u32) -> Simplex {
        Simplex {
            word: Vec::new(),
            base,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    count: usize,
    // face[c * (k + 1) + i] = d_i c
    face: Vec<u32>,
    // degen[c * (k + 1) + i] = s_i c, empty at the top level
    degen: Vec<u32>,
    ez: Vec<Simplex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSSet {
    dim: usize,
    levels: Vec<Level>,
    gens: Vec<Vec<u32>>,
    gen_names: Vec<Vec<String>>,
    skeletal: bool,
    coskeletal: bool,
}

impl TruncSSet {
    /// Builds the truncation at `dim` of the simplicial set with the given
    /// generators and face expressions. `faces[k][j]` lists the `k + 1`
    /// faces of generator `j` of level `k` (empty at level 0).
    pub fn from_generators(
        dim: usize,
        gen_names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<Simplex>>>,
    ) -> Result<TruncSSet> {
        let mut gen_names = gen_names;
        let mut faces = faces;
        let skeletal = gen_names.iter().skip(dim + 1).all(|g| g.is_empty());
        gen_names.resize(dim + 1, Vec::new());
        faces.resize(dim + 1, Vec::new());
        gen_names.truncate(dim + 1);
        faces.truncate(dim + 1);

        for k in 0..=dim {
            let expected = if k == 0 { 0 } else { k + 1 };
            if faces[k].len() < gen_names[k].len() {
                faces[k].resize(gen_names[k].len(), Vec::new());
            }
            for (j, fs) in faces[k].iter().enumerate() {
                let name = &gen_names[k][j];
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
                        detail,
                    };
                    if f.word.len() > k - 1 {
                        return Err(bad("degeneracy word too long".into()));
                    }
                    if !ez::is_normal(&f.word) {
                        return Err(bad("degeneracy word not strictly decreasing".into()));
                    }
                    if f.word.first().is_some_and(|&t| t as usize >= k - 1) {
                        return Err(bad("degeneracy index out of range".into()));
                    }
                    let base_level = k - 1 - f.word.len();
                    if f.base as usize >= gen_names[base_level].len() {
                        return Err(bad(format!("no generator of level {base_level} here")));
                    }
                }
            }
        }

        let mut levels: Vec<Level> = Vec::with_capacity(dim + 1);
        let mut index: Vec<HashMap<Simplex, u32>> = Vec::with_capacity(dim + 1);
        let mut gens = vec![Vec::new(); dim + 1];
        for k in 0..=dim {
            let mut ezs = Vec::new();
            let mut ix = HashMap::new();
            for l in (0..=k).rev() {
                for w in ez::words(k, k - l) {
                    for b in 0..gen_names[l].len() {
                        let s = Simplex {
                            word: w.clone(),
                            base: b as u32,
                        };
                        if l == k {
                            gens[k].push(ezs.len() as u32);
                        }
                        ix.insert(s.clone(), ezs.len() as u32);
                        ezs.push(s);
                    }
                }
            }
            let mut face = Vec::new();
            if k >= 1 {
                face.reserve(ezs.len() * (k + 1));
                for s in &ezs {
                    for j in 0..=k {
                        let f = match ez::push_face(&s.word, j as u8) {
                            ez::Pushed::Cancelled(w) => Simplex { word: w, base: s.base },
                            ez::Pushed::Reached { outer, index } => {
                                let l = k - s.word.len();
                                let inner = &faces[l][s.base as usize][index as usize];
                                let mut word = outer;
                                word.extend_from_slice(&inner.word);
                                Simplex {
                                    word: ez::normalize(&word),
                                    base: inner.base,
                                }
                            }
                        };
                        face.push(index[k - 1][&f]);
                    }
                }
            }
            levels.push(Level {
                count: ezs.len(),
                face,
                degen: Vec::new(),
                ez: ezs,
            });
            index.push(ix);
        }
        for k in 0..dim {
            let mut degen = Vec::with_capacity(levels[k].count * (k + 1));
            for s in &levels[k].ez {
                for i in 0..=k {
                    let t = Simplex {
                        word: ez::insert(&s.word, i as u8),
                        base: s.base,
                    };
                    degen.push(index[k + 1][&t]);
                }
            }
            levels[k].degen = degen;
        }
        let x = TruncSSet {
            dim,
            levels,
            gens,
            gen_names,
            skeletal,
            coskeletal: false,
        };
        x.validate()?;
        Ok(x)
    }

    /// Builds a simplicial set from complete face and degeneracy tables,
    /// recovering Eilenberg–Zilber forms. `name(k, c)` names the
    /// nondegenerate simplices.
    pub fn from_tables(
        dim: usize,
        counts: Vec<usize>,
        face: Vec<Vec<u32>>,
        degen: Vec<Vec<u32>>,
        name: impl Fn(usize, usize) -> String,
    ) -> Result<TruncSSet> {
        let mut levels: Vec<Level> = Vec::with_capacity(dim + 1);
        let mut gens = vec![Vec::new(); dim + 1];
        let mut gen_names = vec![Vec::new(); dim + 1];
        for k in 0..=dim {
            let n = counts[k];
            let mut ezs: Vec<Option<Simplex>> = vec![None; n];
            if k > 0 {
                let below = &levels[k - 1];
                for c in 0..below.count {
                    for i in 0..k {
                        let t = degen[k - 1][c * k + i] as usize;
                        let s = Simplex {
                            word: ez::insert(&below.ez[c].word, i as u8),
                            base: below.ez[c].base,
                        };
                        match &ezs[t] {
                            Some(prev) if *prev != s => {
                                return Err(Error::SimplicialIdentity {
                                    cell: format!("level {k} cell {t}"),
                                    detail: "two distinct degenerate forms".into(),
                                })
                            }
                            _ => ezs[t] = Some(s),
                        }
                    }
                }
            }
            let ezs: Vec<Simplex> = ezs
                .into_iter()
                .enumerate()
                .map(|(c, s)| {
                    s.unwrap_or_else(|| {
                        let b = gens[k].len() as u32;
                        gens[k].push(c as u32);
                        gen_names[k].push(name(k, c));
                        Simplex::generator(b)
                    })
                })
                .collect();
            if face[k].len() != if k == 0 { 0 } else { n * (k + 1) } {
                return Err(Error::InvalidIndex(format!("face table at level {k}")));
            }
            levels.push(Level {
                count: n,
                face: face[k].clone(),
                degen: if k < dim { degen[k].clone() } else { Vec::new() },
                ez: ezs,
            });
        }
        let x = TruncSSet {
            dim,
            levels,
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
        self.coskeletal = coskeletal && self.dim >= 2;
        self
    }

    fn validate(&self) -> Result<()> {
        let fail = |k: usize, c: u32, detail: String| Error::SimplicialIdentity {
            cell: self.cell_name(k, c),
            detail,
        };
        for k in 0..=self.dim {
            let n = self.count(k);
            if k >= 1 && self.levels[k].face.iter().any(|&f| f as usize >= self.count(k - 1)) {
                return Err(Error::InvalidIndex(format!("face out of range at level {k}")));
            }
            if k < self.dim && self.levels[k].degen.iter().any(|&f| f as usize >= self.count(k + 1))
            {
                return Err(Error::InvalidIndex(format!("degeneracy out of range at level {k}")));
            }
            for c in 0..n as u32 {
                if k >= 2 {
                    for j in 1..=k {
                        for i in 0..j {
                            let a = self.face(k - 1, self.face(k, c, j), i);
                            let b = self.face(k - 1, self.face(k, c, i), j - 1);
                            if a != b {
                                return Err(fail(k, c, format!("d{i} d{j} != d{} d{i}", j - 1)));
                            }
                        }
                    }
                }
                if k < self.dim {
                    for j in 0..=k {
                        let s = self.degen(k, c, j);
                        for i in 0..=k + 1 {
                            let lhs = self.face(k + 1, s, i);
                            let rhs = if i == j || i == j + 1 {
                                c as u32
                            } else if i < j {
                                self.degen(k - 1, self.face(k, c, i), j - 1)
                            } else {
                                self.degen(k - 1, self.face(k, c, i - 1), j)
                            };
                            if lhs != rhs {
                                return Err(fail(k, c, format!("d{i} s{j} identity")));
                            }
                        }
                        if k + 1 < self.dim {
                            for i in 0..=j {
                                let a = self.degen(k + 1, s, i);
                                let b = self.degen(k + 1, self.degen(k, c, i), j + 1);
                                if a != b {
                                    return Err(fail(k, c, format!("s{i} s{j} identity")));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, k: usize) -> usize {
        self.levels[k].count
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.count).collect()
    }

    /// `d_i` of simplex `c` of level `k`.
    pub fn face(&self, k: usize, c: u32, i: usize) -> u32 {
        self.levels[k].face[c as usize * (k + 1) + i]
    }

    pub fn faces(&self, k: usize, c: u32) -> &[u32] {
        let s = c as usize * (k + 1);
        &self.levels[k].face[s..s + k + 1]
    }

    /// `s_i` of simplex `c` of level `k`, a simplex of level `k + 1`.
    pub fn degen(&self, k: usize, c: u32, i: usize) -> u32 {
        self.levels[k].degen[c as usize * (k + 1) + i]
    }

    /// Applies a degeneracy word (outermost first) to simplex `c` of level `k`.
    pub fn degenerate(&self, k: usize, c: u32, word: &[u8]) -> u32 {
        let mut cur = c;
        for (t, &i) in word.iter().rev().enumerate() {
            cur = self.degen(k + t, cur, i as usize);
        }
        cur
    }

    pub fn ez(&self, k: usize, c: u32) -> &Simplex {
        &self.levels[k].ez[c as usize]
    }

    pub fn is_degenerate(&self, k: usize, c: u32) -> bool {
        !self.ez(k, c).word.is_empty()
    }

    /// Simplex indices of the generators of level `k`.
    pub fn generators(&self, k: usize) -> &[u32] {
        &self.gens[k]
    }

    pub fn generator_counts(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.len()).collect()
    }

    pub fn generator_name(&self, k: usize, j: usize) -> &str {
        &self.gen_names[k][j]
    }

    pub fn find_generator(&self, name: &str) -> Option<(usize, usize)> {
        self.gen_names
            .iter()
            .enumerate()
            .find_map(|(k, ns)| ns.iter().position(|n| n == name).map(|j| (k, j)))
    }

    pub fn cell_name(&self, k: usize, c: u32) -> String {
        let s = self.ez(k, c);
        let l = k - s.word.len();
        ez::render("s", &s.word, &self.gen_names[l][s.base as usize])
    }

    /// Vertex `j` of simplex `c` of level `k`.
    pub fn vertex(&self, k: usize, c: u32, j: usize) -> u32 {
        let mut cur = c;
        let mut pos = j;
        for l in (1..=k).rev() {
            // drop a vertex other than the one we track
            if pos == l {
                cur = self.face(l, cur, 0);
                pos -= 1;
            } else {
                cur = self.face(l, cur, l);
            }
        }
        cur
    }

    pub fn is_skeletal(&self) -> bool {
        self.skeletal
    }

    /// The highest generator level, if the object is skeletal.
    pub fn skeletal_dim(&self) -> Option<usize> {
        if !self.skeletal {
            return None;
        }
        Some((0..=self.dim).rev().find(|&k| !self.gens[k].is_empty()).unwrap_or(0))
    }

    pub fn is_coskeletal(&self) -> bool {
        self.coskeletal
    }

    /// The generating data, suitable for rebuilding at another level.
    pub fn presentation(&self) -> (Vec<Vec<String>>, Vec<Vec<Vec<Simplex>>>) {
        let faces = (0..=self.dim)
            .map(|k| {
                self.gens[k]
                    .iter()
                    .map(|&c| {
                        if k == 0 {
                            Vec::new()
                        } else {
                            self.faces(k, c).iter().map(|&f| self.ez(k - 1, f).clone()).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        (self.gen_names.clone(), faces)
    }

    /// The truncation at `d <= dim`.
    pub fn truncate(&self, d: usize) -> TruncSSet {
        assert!(d <= self.dim, "truncation above the stored level");
        let mut levels = self.levels[..=d].to_vec();
        levels[d].degen.clear();
        let skeletal = self.skeletal && self.gens[d + 1..].iter().all(|g| g.is_empty());
        TruncSSet {
            dim: d,
            levels,
            gens: self.gens[..=d].to_vec(),
            gen_names: self.gen_names[..=d].to_vec(),
            skeletal,
            coskeletal: self.coskeletal && d >= 2,
        }
    }

    /// The same simplicial set stored at level `d`. Raising the level needs
    /// a skeletal input.
    pub fn resize(&self, d: usize) -> Result<TruncSSet> {
        if d <= self.dim {
            return Ok(self.truncate(d));
        }
        if !self.skeletal {
            return Err(Error::WindowInsufficient {
                what: "raising the truncation level of a non-skeletal simplicial set".into(),
                required: format!("data up to level {d}"),
            });
        }
        let (names, faces) = self.presentation();
        Ok(TruncSSet::from_generators(d, names, faces)?.with_flags(true, self.coskeletal))
    }
}

/// The levelwise product. Simplex `(a, b)` of level `k` has index
/// `a * |Y_k| + b`.
pub fn product(x: &TruncSSet, y: &TruncSSet) -> Result<TruncSSet> {
    if x.dim != y.dim {
        return Err(Error::DimMismatch(format!(
            "product of levels {} and {}",
            x.dim, y.dim
        )));
    }
    let d = x.dim;
    let counts: Vec<usize> = (0..=d).map(|k| x.count(k) * y.count(k)).collect();
    let mut face = vec![Vec::new(); d + 1];
    let mut degen = vec![Vec::new(); d + 1];
    for k in 0..=d {
        let (nx, ny) = (x.count(k), y.count(k));
        if k >= 1 {
            let ny1 = y.count(k - 1) as u32;
            let f = &mut face[k];
            f.reserve(nx * ny * (k + 1));
            for a in 0..nx as u32 {
                for b in 0..ny as u32 {
                    for i in 0..=k {
                        f.push(x.face(k, a, i) * ny1 + y.face(k, b, i));
                    }
                }
            }
        }
        if k < d {
            let ny1 = y.count(k + 1) as u32;
            let s = &mut degen[k];
            s.reserve(nx * ny * (k + 1));
            for a in 0..nx as u32 {
                for b in 0..ny as u32 {
                    for i in 0..=k {
                        s.push(x.degen(k, a, i) * ny1 + y.degen(k, b, i));
                    }
                }
            }
        }
    }
    let p = TruncSSet::from_tables(d, counts, face, degen, |k, c| {
        let ny = y.count(k);
        format!(
            "({},{})",
            x.cell_name(k, (c / ny) as u32),
            y.cell_name(k, (c % ny) as u32)
        )
    })?;
    let skeletal = match (x.skeletal_dim(), y.skeletal_dim()) {
        (Some(a), Some(b)) => a + b <= d,
        _ => false,
    };
    Ok(p.with_flags(skeletal, x.coskeletal && y.coskeletal))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_generator_counts() {
        assert_eq!(standard_simplex(2, 2).generator_counts(), vec![3, 3, 1]);
        assert_eq!(standard_simplex(2, 3).generator_counts(), vec![3, 3, 1, 0]);
        assert_eq!(standard_simplex(2, 3).counts(), vec![3, 6, 10, 15]);
    }

    #[test]
    fn boundary_and_horn() {
        assert_eq!(boundary(1, 1).generator_counts(), vec![2, 0]);
        let h = horn(2, 1, 2);
        let s = spine(2, 2);
        assert_eq!(h, s);
    }

    #[test]
    fn product_of_intervals_is_two_triangles() {
        let d1 = standard_simplex(1, 2);
        let p = product(&d1, &d1).unwrap();
        assert_eq!(p.generator_counts(), vec![4, 5, 2]);
        assert!(p.is_skeletal());
    }

    #[test]
    fn product_with_point_is_isomorphic() {
        let x = horn(2, 0, 2);
        let p = product(&x, &point(2)).unwrap();
        assert!(is_isomorphic(&p, &x));
    }

    #[test]
    fn vertices_of_a_simplex() {
        let d = standard_simplex(3, 3);
        let top = d.generators(3)[0];
        let vs: Vec<String> = (0..4).map(|j| d.cell_name(0, d.vertex(3, top, j))).collect();
        assert_eq!(vs, vec!["0", "1", "2", "3"]);
    }

    #[test]
    fn resize_round_trips() {
        let d = standard_simplex(2, 2);
        let up = d.resize(4).unwrap();
        assert_eq!(up.counts(), standard_simplex(2, 4).counts());
        assert_eq!(up.truncate(2), d);
        assert!(nerve(&crate::fincat::groupoid_interval(1), 2).resize(3).is_err());
    }
}
