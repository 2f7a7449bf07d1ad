//! Finite categories presented by generating arrows and path relations,
//! closed to a composition table by Knuth–Bendix completion in shortlex
//! order.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Morphism};

/// Default bound on rewrite steps during completion and reduction.
pub const DEFAULT_REWRITE_LIMIT: usize = 1_000_000;
/// Default bound on the number of morphisms of a presented category.
pub const DEFAULT_MORPHISM_BOUND: usize = 100_000;

/// A path of letters, listed in the order they are traversed
/// (`[f, g]` is `g ∘ f`).
pub type Word = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Presentation {
    pub objects: Vec<String>,
    pub letters: Vec<Letter>,
    pub relations: Vec<(Word, Word)>,
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub rewrite_steps: usize,
    pub morphisms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            rewrite_steps: DEFAULT_REWRITE_LIMIT,
            morphisms: DEFAULT_MORPHISM_BOUND,
        }
    }
}

/// The closed category together with how letters and normal forms sit in it.
#[derive(Clone, Debug)]
pub struct Presented {
    pub cat: FinCat,
    /// Morphism of `cat` named by each letter.
    pub letter: Vec<usize>,
    /// Normal form of each morphism of `cat`.
    pub normal_form: Vec<Word>,
}

impl Presented {
    /// The morphism represented by a path starting at `src`.
    pub fn evaluate(&self, src: usize, word: &[u32]) -> usize {
        let mut m = self.cat.identity(src);
        for &l in word {
            m = self.cat.comp(self.letter[l as usize], m);
        }
        m
    }
}

fn shortlex_greater(a: &[u32], b: &[u32]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a > b)
}

fn find(hay: &[u32], needle: &[u32]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&p| &hay[p..p + needle.len()] == needle)
}

struct Rewriter {
    rules: Vec<(Word, Word)>,
    steps: usize,
    limit: usize,
}

impl Rewriter {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.limit {
            return Err(Error::RewriteLimit { limit: self.limit });
        }
        Ok(())
    }

    fn reduce(&mut self, word: &[u32]) -> Result<Word> {
        let mut w = word.to_vec();
        'outer: loop {
            for (l, r) in &self.rules {
                if let Some(p) = find(&w, l) {
                    let mut next = w[..p].to_vec();
                    next.extend_from_slice(r);
                    next.extend_from_slice(&w[p + l.len()..]);
                    w = next;
                    self.tick()?;
                    continue 'outer;
                }
            }
            return Ok(w);
        }
    }

    fn critical_pairs(a: &(Word, Word), b: &(Word, Word), out: &mut VecDeque<(Word, Word)>) {
        let ((l1, r1), (l2, r2)) = (a, b);
        // suffix of l1 overlapping a prefix of l2
        for k in 1..l1.len().min(l2.len()) {
            if l1[l1.len() - k..] == l2[..k] {
                let mut x = r1.clone();
                x.extend_from_slice(&l2[k..]);
                let mut y = l1[..l1.len() - k].to_vec();
                y.extend_from_slice(r2);
                out.push_back((x, y));
            }
        }
        if l2.len() <= l1.len() {
            for p in 0..=l1.len() - l2.len() {
                if l1[p..p + l2.len()] == l2[..] && !(p == 0 && l1.len() == l2.len()) {
                    let mut y = l1[..p].to_vec();
                    y.extend_from_slice(r2);
                    y.extend_from_slice(&l1[p + l2.len()..]);
                    out.push_back((r1.clone(), y));
                }
            }
        }
    }

    fn complete(&mut self, relations: &[(Word, Word)]) -> Result<()> {
        let mut pending: VecDeque<(Word, Word)> = relations.iter().cloned().collect();
        while let Some((a, b)) = pending.pop_front() {
            let (a, b) = (self.reduce(&a)?, self.reduce(&b)?);
            if a == b {
                continue;
            }
            let rule = if shortlex_greater(&a, &b) { (a, b) } else { (b, a) };
            // rules whose left side is now reducible go back to the queue
            let mut kept = Vec::with_capacity(self.rules.len() + 1);
            for (l, r) in std::mem::take(&mut self.rules) {
                if find(&l, &rule.0).is_some() {
                    pending.push_back((l, r));
                } else {
                    kept.push((l, r));
                }
            }
            self.rules = kept;
            self.rules.push(rule.clone());
            for i in 0..self.rules.len() {
                let r = self.reduce(&self.rules[i].1.clone())?;
                self.rules[i].1 = r;
            }
            let rule = self.rules.last().unwrap().clone();
            for other in self.rules.clone() {
                Rewriter::critical_pairs(&rule, &other, &mut pending);
                Rewriter::critical_pairs(&other, &rule, &mut pending);
                self.tick()?;
            }
        }
        Ok(())
    }

    fn irreducible_suffix(&self, w: &[u32]) -> bool {
        !self.rules.iter().any(|(l, _)| w.ends_with(l))
    }
}

fn word_name(p: &Presentation, w: &[u32]) -> String {
    let names: Vec<&str> = w
        .iter()
        .rev()
        .map(|&l| p.letters[l as usize].name.as_str())
        .collect();
    names.join("∘")
}

impl Presentation {
    /// Checks that every relation equates parallel paths.
    fn check(&self) -> Result<()> {
        let ends = |w: &Word| -> Result<Option<(usize, usize)>> {
            if w.is_empty() {
                return Ok(None);
            }
            for pair in w.windows(2) {
                if self.letters[pair[0] as usize].tgt != self.letters[pair[1] as usize].src {
                    return Err(Error::NotWellDefined(format!(
                        "path {} is not composable",
                        word_name(self, w)
                    )));
                }
            }
            Ok(Some((
                self.letters[w[0] as usize].src,
                self.letters[*w.last().unwrap() as usize].tgt,
            )))
        };
        for (a, b) in &self.relations {
            let (ea, eb) = (ends(a)?, ends(b)?);
            let ok = match (ea, eb) {
                (Some(x), Some(y)) => x == y,
                (Some((s, t)), None) | (None, Some((s, t))) => s == t,
                (None, None) => true,
            };
            if !ok {
                return Err(Error::NotWellDefined(format!(
                    "relation {} = {} between non-parallel paths",
                    word_name(self, a),
                    word_name(self, b)
                )));
            }
        }
        Ok(())
    }

    pub fn close(&self, limits: Limits) -> Result<Presented> {
        self.check()?;
        let mut rw = Rewriter {
            rules: Vec::new(),
            steps: 0,
            limit: limits.rewrite_steps,
        };
        rw.complete(&self.relations)?;

        let mut out_letters: Vec<Vec<u32>> = vec![Vec::new(); self.objects.len()];
        for (i, l) in self.letters.iter().enumerate() {
            out_letters[l.src].push(i as u32);
        }
        let mut forms: Vec<(usize, usize, Word)> = Vec::new();
        for x in 0..self.objects.len() {
            forms.push((x, x, Vec::new()));
            let mut frontier: Vec<(usize, Word)> = vec![(x, Vec::new())];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for (end, w) in &frontier {
                    for &l in &out_letters[*end] {
                        let mut w2 = w.clone();
                        w2.push(l);
                        if rw.irreducible_suffix(&w2) {
                            let t = self.letters[l as usize].tgt;
                            forms.push((x, t, w2.clone()));
                            next.push((t, w2));
                            if forms.len() > limits.morphisms {
                                return Err(Error::InfiniteCategory {
                                    bound: limits.morphisms,
                                });
                            }
                        }
                    }
                }
                frontier = next;
            }
        }

        let mut index: HashMap<Word, Vec<usize>> = HashMap::new();
        let mut identity = vec![0; self.objects.len()];
        let morphisms: Vec<Morphism> = forms
            .iter()
            .enumerate()
            .map(|(i, (s, t, w))| {
                index.entry(w.clone()).or_default().push(i);
                let name = if w.is_empty() {
                    identity[*s] = i;
                    format!("id_{}", self.objects[*s])
                } else {
                    word_name(self, w)
                };
                Morphism {
                    name,
                    src: *s,
                    tgt: *t,
                }
            })
            .collect();
        let mut table = vec![None; forms.len() * forms.len()];
        for (g, (gs, _, gw)) in forms.iter().enumerate() {
            for (f, (_, ft, fw)) in forms.iter().enumerate() {
                if ft != gs {
                    continue;
                }
                let mut w = fw.clone();
                w.extend_from_slice(gw);
                let nf = rw.reduce(&w)?;
                let h = if nf.is_empty() {
                    identity[forms[f].0]
                } else {
                    index[&nf][0]
                };
                table[g * forms.len() + f] = Some(h);
            }
        }
        let names: Vec<String> = morphisms.iter().map(|m| m.name.clone()).collect();
        let cat = FinCat::from_raw(self.objects.clone(), morphisms, identity, table)?;
        let position: HashMap<&str, usize> = names
            .iter()
            .map(|n| (n.as_str(), cat.morphism_index(n).unwrap()))
            .collect();
        let mut normal_form = vec![Vec::new(); forms.len()];
        for (i, (_, _, w)) in forms.iter().enumerate() {
            normal_form[position[names[i].as_str()]] = w.clone();
        }
        let mut letter = Vec::with_capacity(self.letters.len());
        for l in 0..self.letters.len() {
            let nf = rw.reduce(&[l as u32])?;
            let src = self.letters[l].src;
            letter.push(if nf.is_empty() {
                cat.identity(cat.object_index(&self.objects[src]).unwrap())
            } else {
                position[word_name(self, &nf).as_str()]
            });
        }
        Ok(Presented {
            cat,
            letter,
            normal_form,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{groupoid_interval, interval_category, is_isomorphic};

    fn letter(name: &str, src: usize, tgt: usize) -> Letter {
        Letter {
            name: name.into(),
            src,
            tgt,
        }
    }

    #[test]
    fn free_path_category_on_two_arrows() {
        let p = Presentation {
            objects: vec!["0".into(), "1".into(), "2".into()],
            letters: vec![letter("a", 0, 1), letter("b", 1, 2)],
            relations: vec![],
        };
        let c = p.close(Limits::default()).unwrap().cat;
        assert!(is_isomorphic(&c, &interval_category(2)));
        assert!(c.morphism_index("b∘a").is_some());
    }

    #[test]
    fn free_inversion_gives_chaotic_groupoid() {
        // 0 -a-> 1 -b-> 2 with formal inverses
        let p = Presentation {
            objects: vec!["0".into(), "1".into(), "2".into()],
            letters: vec![
                letter("a", 0, 1),
                letter("a'", 1, 0),
                letter("b", 1, 2),
                letter("b'", 2, 1),
            ],
            relations: vec![
                (vec![0, 1], vec![]),
                (vec![1, 0], vec![]),
                (vec![2, 3], vec![]),
                (vec![3, 2], vec![]),
            ],
        };
        let c = p.close(Limits::default()).unwrap().cat;
        assert_eq!(c.num_morphisms(), 9);
        assert!(is_isomorphic(&c, &groupoid_interval(2)));
    }

    #[test]
    fn free_loop_is_reported_infinite() {
        let p = Presentation {
            objects: vec!["x".into()],
            letters: vec![letter("e", 0, 0)],
            relations: vec![],
        };
        let limits = Limits {
            rewrite_steps: 1000,
            morphisms: 50,
        };
        assert_eq!(p.close(limits).unwrap_err(), Error::InfiniteCategory { bound: 50 });
    }

    #[test]
    fn idempotent_relation_closes() {
        let p = Presentation {
            objects: vec!["x".into()],
            letters: vec![letter("e", 0, 0)],
            relations: vec![(vec![0, 0], vec![0])],
        };
        let pr = p.close(Limits::default()).unwrap();
        assert_eq!(pr.cat.num_morphisms(), 2);
        assert_eq!(pr.evaluate(0, &[0, 0, 0]), pr.letter[0]);
    }
}
