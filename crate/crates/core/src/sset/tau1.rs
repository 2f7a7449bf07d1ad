use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{is_categorical_equivalence, EquivalenceFailure, FinCat, Functor};
use crate::presentation::{Letter, Limits, Presentation, Presented};
use crate::unionfind::UnionFind;
use crate::Verdict;

use super::{is_kan, SSetMap, TruncSSet};

/// The fundamental category with its readout of vertices and edges.
#[derive(Clone, Debug)]
pub struct Tau1 {
    pub cat: FinCat,
    /// Object of `cat` for each vertex.
    pub object: Vec<usize>,
    /// Morphism of `cat` for each 1-simplex.
    pub edge: Vec<usize>,
    presented: Presented,
    letter_edge: Vec<u32>,
}

impl Tau1 {
    /// A path of 1-simplices representing morphism `m`.
    pub fn representative(&self, m: usize) -> Vec<u32> {
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

/// `τ₁ X`: vertices as objects, nondegenerate edges as generators, one
/// relation `d₁σ = d₀σ ∘ d₂σ` per nondegenerate 2-simplex.
pub fn tau1(x: &TruncSSet) -> Result<Tau1> {
    tau1_with(x, Limits::default())
}

pub fn tau1_with(x: &TruncSSet, limits: Limits) -> Result<Tau1> {
    if x.dim() < 2 {
        return Err(Error::WindowInsufficient {
            what: "fundamental category".into(),
            required: "level 2".into(),
        });
    }
    let objects: Vec<String> = (0..x.count(0) as u32).map(|v| x.cell_name(0, v)).collect();
    let mut edges: Vec<u32> = x.generators(1).to_vec();
    edges.sort_by_key(|&e| x.cell_name(1, e));
    let mut letter_of = vec![u32::MAX; x.count(1)];
    let letters: Vec<Letter> = edges
        .iter()
        .enumerate()
        .map(|(l, &e)| {
            letter_of[e as usize] = l as u32;
            Letter {
                name: x.cell_name(1, e),
                src: x.face(1, e, 1) as usize,
                tgt: x.face(1, e, 0) as usize,
            }
        })
        .collect();
    let path = |e: u32| -> Vec<u32> {
        if x.is_degenerate(1, e) {
            Vec::new()
        } else {
            vec![letter_of[e as usize]]
        }
    };
    let relations = x
        .generators(2)
        .iter()
        .map(|&s| {
            let mut lhs = path(x.face(2, s, 2));
            lhs.extend(path(x.face(2, s, 0)));
            (lhs, path(x.face(2, s, 1)))
        })
        .collect();
    let presented = Presentation {
        objects,
        letters,
        relations,
    }
    .close(limits)?;
    let cat = presented.cat.clone();
    let object: Vec<usize> = (0..x.count(0) as u32)
        .map(|v| cat.object_index(&x.cell_name(0, v)).unwrap())
        .collect();
    let edge = (0..x.count(1) as u32)
        .map(|e| {
            if x.is_degenerate(1, e) {
                cat.identity(object[x.face(1, e, 0) as usize])
            } else {
                presented.letter[letter_of[e as usize] as usize]
            }
        })
        .collect();
    Ok(Tau1 {
        cat,
        object,
        edge,
        presented,
        letter_edge: edges,
    })
}

/// Connected components of the vertices, ordered by least vertex.
pub fn pi0(x: &TruncSSet) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::new(x.count(0));
    if x.dim() >= 1 {
        for &e in x.generators(1) {
            uf.union(x.face(1, e, 0) as usize, x.face(1, e, 1) as usize);
        }
    }
    uf.classes()
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as u32).collect())
        .collect()
}

/// The functor `τ₁ f`.
pub fn tau1_functor(f: &SSetMap, tx: &Tau1, ty: &Tau1) -> Result<Functor> {
    if f.top() < 1 {
        return Err(Error::WindowInsufficient {
            what: "induced functor".into(),
            required: "maps defined on edges".into(),
        });
    }
    let object_map: Vec<usize> = (0..tx.cat.num_objects())
        .map(|o| {
            let v = tx.object.iter().position(|&x| x == o).unwrap();
            ty.object[f.image(0, v as u32) as usize]
        })
        .collect();
    let morphism_map = (0..tx.cat.num_morphisms())
        .map(|m| {
            let mut img = ty.cat.identity(object_map[tx.cat.src(m)]);
            for e in tx.representative(m) {
                img = ty.cat.comp(ty.edge[f.image(1, e) as usize], img);
            }
            img
        })
        .collect();
    Functor::new(
        Arc::new(tx.cat.clone()),
        Arc::new(ty.cat.clone()),
        object_map,
        morphism_map,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WheFailure {
    /// The induced map on components is not a bijection.
    Components { source: usize, target: usize, image: usize },
    /// The induced functor of fundamental groupoids is not an equivalence.
    Fundamental(EquivalenceFailure),
}

fn certify_kan(x: &TruncSSet, side: &str) -> Result<()> {
    match is_kan(x, x.dim())? {
        Verdict::Holds => Ok(()),
        Verdict::Fails(w) => Err(Error::Uncertified(format!(
            "{side} is not Kan at level {}: horn ({}, {}) unfillable",
            x.dim(),
            w.n,
            w.i
        ))),
    }
}

fn at_level_two(x: &TruncSSet) -> Result<TruncSSet> {
    if x.dim() >= 2 {
        Ok(x.clone())
    } else {
        x.resize(2)
    }
}

/// Weak homotopy equivalence detected on homotopy 1-types: a bijection on
/// components and an equivalence of fundamental groupoids. Both sides must
/// be certified Kan at their stored level.
pub fn is_whe_1trunc(f: &SSetMap) -> Result<Verdict<WheFailure>> {
    certify_kan(&f.source, "source")?;
    certify_kan(&f.target, "target")?;
    let (cs, ct) = (pi0(&f.source), pi0(&f.target));
    let mut class_of = vec![0; f.target.count(0)];
    for (k, cl) in ct.iter().enumerate() {
        for &v in cl {
            class_of[v as usize] = k;
        }
    }
    let image: BTreeSet<usize> = cs
        .iter()
        .map(|cl| class_of[f.image(0, cl[0]) as usize])
        .collect();
    let well_defined = cs.iter().all(|cl| {
        cl.iter()
            .all(|&v| class_of[f.image(0, v) as usize] == class_of[f.image(0, cl[0]) as usize])
    });
    if !well_defined || image.len() != cs.len() || image.len() != ct.len() {
        return Ok(Verdict::Fails(WheFailure::Components {
            source: cs.len(),
            target: ct.len(),
            image: image.len(),
        }));
    }
    let (xs, xt) = (at_level_two(&f.source)?, at_level_two(&f.target)?);
    let g = if f.top() >= 1 {
        f.clone()
    } else {
        // a map of discrete objects: edges are degenerate
        let levels = vec![
            f.level(0).to_vec(),
            (0..xs.count(1) as u32)
                .map(|e| xt.degen(0, f.image(0, xs.face(1, e, 0)), 0))
                .collect(),
        ];
        SSetMap::from_levels_unchecked(Arc::new(xs.clone()), Arc::new(xt.clone()), levels)
    };
    let (tx, ty) = (tau1(&xs)?, tau1(&xt)?);
    let functor = tau1_functor(&g, &tx, &ty)?;
    Ok(match is_categorical_equivalence(&functor) {
        Verdict::Holds => Verdict::Holds,
        Verdict::Fails(w) => Verdict::Fails(WheFailure::Fundamental(w)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{groupoid_interval, interval_category, is_isomorphic};
    use crate::sset::{boundary, enumerate_maps, j_space, nerve, point, standard_simplex};

    #[test]
    fn tau1_of_simplices() {
        let t = tau1(&nerve(&interval_category(2), 2)).unwrap();
        assert!(is_isomorphic(&t.cat, &interval_category(2)));
        let t = tau1(&standard_simplex(1, 2)).unwrap();
        assert!(is_isomorphic(&t.cat, &interval_category(1)));
        assert!(tau1(&standard_simplex(1, 1)).is_err());
    }

    #[test]
    fn tau1_of_j1_is_chaotic() {
        let t = tau1(&j_space(1, 2)).unwrap();
        assert!(is_isomorphic(&t.cat, &groupoid_interval(1)));
    }

    #[test]
    fn pi0_examples() {
        assert_eq!(pi0(&boundary(1, 1)).len(), 2);
        assert_eq!(pi0(&standard_simplex(3, 3)).len(), 1);
        assert_eq!(pi0(&j_space(1, 1)).len(), 1);
    }

    #[test]
    fn whe_examples() {
        let j = Arc::new(j_space(1, 3));
        let pt = Arc::new(point(3));
        let id = SSetMap::identity(&j);
        assert!(is_whe_1trunc(&id).unwrap().holds());
        let bang = enumerate_maps(&j, &pt).unwrap().remove(0);
        assert!(is_whe_1trunc(&bang).unwrap().holds());
        let b = Arc::new(boundary(1, 1));
        let pt1 = Arc::new(point(1));
        let bang = enumerate_maps(&b, &pt1).unwrap().remove(0);
        assert_eq!(
            is_whe_1trunc(&bang).unwrap(),
            Verdict::Fails(WheFailure::Components {
                source: 2,
                target: 1,
                image: 1
            })
        );
    }

    #[test]
    fn non_kan_inputs_are_refused() {
        let d = Arc::new(standard_simplex(1, 2));
        assert!(matches!(
            is_whe_1trunc(&SSetMap::identity(&d)),
            Err(Error::Uncertified(_))
        ));
    }
}
