use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::presentation::{Letter, Limits, Presentation, Presented};

use super::{Dir, TruncBiSSet, Window};

/// The fundamental category of a bisimplicial set, with the morphism named
/// by each horizontal and each vertical edge.
#[derive(Clone, Debug)]
pub struct BiTau1 {
    pub cat: FinCat,
    pub object: Vec<usize>,
    pub hedge: Vec<usize>,
    pub vedge: Vec<usize>,
    presented: Presented,
    // edge behind each letter, and whether the letter is its formal inverse
    letter_edge: Vec<(Dir, u32, bool)>,
}

impl BiTau1 {
    /// A path of edges representing morphism `m`; each step is an edge in
    /// direction `Dir` traversed forwards, or backwards when the flag is set.
    pub fn representative(&self, m: usize) -> Vec<(Dir, u32, bool)> {
        let pm = self
            .presented
            .cat
            .morphism_index(self.cat.morphism_name(m))
            .expect("same category");
        self.presented.normal_form[pm]
            .iter()
            .map(|&l| self.letter_edge[l as usize])
            .collect()
    }
}

/// `τ₁` of a bisimplicial set: vertices as objects, horizontal edges as
/// generators, vertical edges as invertible generators, with triangle
/// relations from `(2,0)` and `(0,2)` and square relations from `(1,1)`.
pub fn tau1_bisset(x: &TruncBiSSet) -> Result<BiTau1> {
    tau1_bisset_with(x, Limits::default())
}

pub fn tau1_bisset_with(x: &TruncBiSSet, limits: Limits) -> Result<BiTau1> {
    if !x.window().covers(&Window::total2()) {
        return Err(Error::WindowInsufficient {
            what: "fundamental category of a bisimplicial set".into(),
            required: "bidegrees (2,0), (1,1) and (0,2)".into(),
        });
    }
    let objects: Vec<String> = (0..x.count(0, 0) as u32).map(|v| x.cell_name(0, 0, v)).collect();
    let mut letters = Vec::new();
    let mut letter_edge = Vec::new();
    let mut hletter = vec![None; x.count(1, 0)];
    for &e in x.generators(1, 0) {
        hletter[e as usize] = Some(letters.len() as u32);
        letter_edge.push((Dir::H, e, false));
        letters.push(Letter {
            name: x.cell_name(1, 0, e),
            src: x.hface(1, 0, e, 1) as usize,
            tgt: x.hface(1, 0, e, 0) as usize,
        });
    }
    let mut vletter = vec![None; x.count(0, 1)];
    let mut relations = Vec::new();
    for &e in x.generators(0, 1) {
        let (src, tgt) = (x.vface(0, 1, e, 1) as usize, x.vface(0, 1, e, 0) as usize);
        let l = letters.len() as u32;
        vletter[e as usize] = Some(l);
        letter_edge.extend([(Dir::V, e, false), (Dir::V, e, true)]);
        let name = x.cell_name(0, 1, e);
        letters.push(Letter {
            name: format!("v({name})"),
            src,
            tgt,
        });
        letters.push(Letter {
            name: format!("v({name})⁻¹"),
            src: tgt,
            tgt: src,
        });
        relations.push((vec![l, l + 1], Vec::new()));
        relations.push((vec![l + 1, l], Vec::new()));
    }
    let hpath = |e: u32| hletter[e as usize].into_iter().collect::<Vec<u32>>();
    let vpath = |e: u32| vletter[e as usize].into_iter().collect::<Vec<u32>>();
    for &s in x.generators(2, 0) {
        let mut lhs = hpath(x.hface(2, 0, s, 2));
        lhs.extend(hpath(x.hface(2, 0, s, 0)));
        relations.push((lhs, hpath(x.hface(2, 0, s, 1))));
    }
    for &s in x.generators(0, 2) {
        let mut lhs = vpath(x.vface(0, 2, s, 2));
        lhs.extend(vpath(x.vface(0, 2, s, 0)));
        relations.push((lhs, vpath(x.vface(0, 2, s, 1))));
    }
    for &s in x.generators(1, 1) {
        // bottom then right equals left then top
        let mut lhs = hpath(x.vface(1, 1, s, 1));
        lhs.extend(vpath(x.hface(1, 1, s, 0)));
        let mut rhs = vpath(x.hface(1, 1, s, 1));
        rhs.extend(hpath(x.vface(1, 1, s, 0)));
        relations.push((lhs, rhs));
    }
    let presented = Presentation {
        objects,
        letters,
        relations,
    }
    .close(limits)?;
    let cat = presented.cat.clone();
    let object: Vec<usize> = (0..x.count(0, 0) as u32)
        .map(|v| cat.object_index(&x.cell_name(0, 0, v)).expect("object of the presentation"))
        .collect();
    let edge = |letter: &[Option<u32>], e: usize, src: usize| match letter[e] {
        Some(l) => presented.letter[l as usize],
        None => cat.identity(object[src]),
    };
    let hedge = (0..x.count(1, 0))
        .map(|e| edge(&hletter, e, x.hface(1, 0, e as u32, 1) as usize))
        .collect();
    let vedge = (0..x.count(0, 1))
        .map(|e| edge(&vletter, e, x.vface(0, 1, e as u32, 1) as usize))
        .collect();
    Ok(BiTau1 {
        cat,
        object,
        hedge,
        vedge,
        presented,
        letter_edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisset::{box_product, classifying_diagram, terminal};
    use crate::fincat::{
        groupoid_interval, interval_category, is_isomorphic, product_category, terminal as point_cat,
        walking_idempotent,
    };
    use crate::sset::standard_simplex;

    #[test]
    fn boxes_of_simplices() {
        for n in 0..=2 {
            for m in 0..=2 {
                let b = box_product(&standard_simplex(n, 2), &standard_simplex(m, 2));
                let t = tau1_bisset(&b).unwrap();
                let expect = product_category(&interval_category(n), &groupoid_interval(m));
                assert!(is_isomorphic(&t.cat, &expect), "({n},{m})");
            }
        }
    }

    #[test]
    fn classifying_diagrams_recover_the_category() {
        for c in [interval_category(2), groupoid_interval(1), walking_idempotent()] {
            let t = tau1_bisset(&classifying_diagram(&c, Window::new(2, 2))).unwrap();
            assert!(is_isomorphic(&t.cat, &c));
        }
    }

    #[test]
    fn terminal_and_small_windows() {
        let t = tau1_bisset(&terminal(Window::new(2, 2))).unwrap();
        assert!(is_isomorphic(&t.cat, &point_cat()));
        assert!(tau1_bisset(&terminal(Window::new(1, 1))).is_err());
    }
}
