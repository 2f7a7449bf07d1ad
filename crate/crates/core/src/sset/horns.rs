use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Verdict;

use super::{for_each_map, horn, TruncSSet};

/// An unfillable horn `Λⁿᵢ → X`, given by the images of its faces in
/// face-index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HornWitness {
    pub n: usize,
    pub i: usize,
    pub faces: Vec<String>,
}

fn first_unfillable(x: &TruncSSet, n: usize, i: usize) -> Result<Option<HornWitness>> {
    let h = horn(n, i, n - 1);
    let face_gen: Vec<Option<u32>> = (0..=n)
        .map(|j| {
            if j == i {
                return None;
            }
            let name: String = (0..=n)
                .filter(|&v| v != j)
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(if n < 10 { "" } else { "," });
            let (k, g) = h.find_generator(&name).expect("horn face");
            Some(h.generators(k)[g])
        })
        .collect();
    let mut fillers: HashMap<Vec<u32>, ()> = HashMap::new();
    for c in 0..x.count(n) as u32 {
        let mut fs = x.faces(n, c).to_vec();
        fs.remove(i);
        fillers.insert(fs, ());
    }
    let mut witness = None;
    for_each_map(&h, x, &mut |levels| {
        let imgs: Vec<u32> = face_gen
            .iter()
            .flatten()
            .map(|&c| levels[n - 1][c as usize])
            .collect();
        if fillers.contains_key(&imgs) {
            return true;
        }
        witness = Some(HornWitness {
            n,
            i,
            faces: imgs.iter().map(|&c| x.cell_name(n - 1, c)).collect(),
        });
        false
    })?;
    Ok(witness)
}

fn check_horns(
    x: &TruncSSet,
    up_to: usize,
    inner_only: bool,
) -> Result<Verdict<HornWitness>> {
    if up_to > x.dim() {
        return Err(Error::WindowInsufficient {
            what: "horn filling".into(),
            required: format!("level {up_to}"),
        });
    }
    for n in 2..=up_to {
        let range = if inner_only { 1..n } else { 0..n + 1 };
        for i in range {
            if let Some(w) = first_unfillable(x, n, i)? {
                return Ok(Verdict::Fails(w));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Inner horn filling for `2 <= n <= up_to`.
pub fn is_quasicategory(x: &TruncSSet, up_to: usize) -> Result<Verdict<HornWitness>> {
    check_horns(x, up_to, true)
}

/// Filling of all horns for `n <= up_to`.
pub fn is_kan(x: &TruncSSet, up_to: usize) -> Result<Verdict<HornWitness>> {
    check_horns(x, up_to, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{interval_category, walking_idempotent};
    use crate::sset::{j_space, nerve, point};

    #[test]
    fn nerves_are_quasicategories() {
        for c in [interval_category(2), walking_idempotent()] {
            assert!(is_quasicategory(&nerve(&c, 3), 3).unwrap().holds());
        }
    }

    #[test]
    fn tautological_horn_does_not_fill() {
        let h = horn(2, 1, 2);
        let v = is_quasicategory(&h, 2).unwrap();
        assert_eq!(
            v,
            Verdict::Fails(HornWitness {
                n: 2,
                i: 1,
                faces: vec!["12".into(), "01".into()]
            })
        );
    }

    #[test]
    fn kan_examples() {
        assert!(is_kan(&j_space(1, 3), 3).unwrap().holds());
        assert!(is_kan(&point(2), 2).unwrap().holds());
        let w = is_kan(&nerve(&interval_category(1), 2), 2).unwrap();
        let w = w.witness().unwrap();
        assert_eq!((w.n, w.i), (2, 0));
    }
}
