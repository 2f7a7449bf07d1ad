//! Eilenberg–Zilber calculus on degeneracy words.
//!
//! A word `[i1, i2, .., ir]` stands for `s_{i1} s_{i2} .. s_{ir}` with `i1`
//! applied last. Normal words are strictly decreasing.

/// Applies `s_i` on top of a normal word and renormalizes.
pub fn insert(word: &[u8], i: u8) -> Vec<u8> {
    match word.first() {
        None => vec![i],
        Some(&top) if i > top => {
            let mut out = Vec::with_capacity(word.len() + 1);
            out.push(i);
            out.extend_from_slice(word);
            out
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        Some(&top) => {
            let mut out = vec![top + 1];
            out.extend(insert(&word[1..], i));
            out
        }
    }
}

/// Normalizes an arbitrary composite of degeneracies (outermost first).
pub fn normalize(word: &[u8]) -> Vec<u8> {
    let mut out = Vec::new();
    for &i in word.iter().rev() {
        out = insert(&out, i);
    }
    out
}

pub fn is_normal(word: &[u8]) -> bool {
    word.windows(2).all(|w| w[0] > w[1])
}

/// Outcome of pushing a face operator through a degeneracy word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pushed {
    /// The face cancelled against a degeneracy; the result is this word on
    /// the same base.
    Cancelled(Vec<u8>),
    /// The face reached the base as `d_index`; `outer` must be re-applied on
    /// top of the base's face.
    Reached { outer: Vec<u8>, index: u8 },
}

/// Computes `d_j ∘ s_word` via the simplicial identities.
pub fn push_face(word: &[u8], j: u8) -> Pushed {
    let mut j = j;
    let mut outer = Vec::with_capacity(word.len());
    for (t, &i) in word.iter().enumerate() {
        if j < i {
            outer.push(i - 1);
        } else if j == i || j == i + 1 {
            outer.extend_from_slice(&word[t + 1..]);
            return Pushed::Cancelled(normalize(&outer));
        } else {
            outer.push(i);
            j -= 1;
        }
    }
    Pushed::Reached { outer, index: j }
}

/// All normal words of length `len` that take a base of level `level - len`
/// to `level`, in lexicographic order.
pub fn words(level: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(max_excl: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in (left - 1..max_excl).rev() {
            cur.push(i as u8);
            rec(i, left - 1, cur, out);
            cur.pop();
        }
    }
    if len <= level {
        rec(level, len, &mut cur, &mut out);
    }
    out.reverse();
    out
}

/// Renders a degeneracy word applied to a named base.
pub fn render(prefix: &str, word: &[u8], base: &str) -> String {
    if word.is_empty() {
        return base.to_string();
    }
    let mut s = String::new();
    for i in word {
        s.push_str(prefix);
        s.push_str(&i.to_string());
    }
    format!("{s}({base})")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_commutes_past_larger_index() {
        // s0 s0 = s1 s0
        assert_eq!(insert(&[0], 0), vec![1, 0]);
        assert_eq!(insert(&[2, 0], 1), vec![3, 1, 0]);
        assert_eq!(normalize(&[0, 1]), vec![2, 0]);
    }

    #[test]
    fn faces_cancel_degeneracies() {
        assert_eq!(push_face(&[0], 0), Pushed::Cancelled(vec![]));
        assert_eq!(push_face(&[0], 1), Pushed::Cancelled(vec![]));
        assert_eq!(
            push_face(&[0], 2),
            Pushed::Reached {
                outer: vec![0],
                index: 1
            }
        );
        assert_eq!(
            push_face(&[2], 0),
            Pushed::Reached {
                outer: vec![1],
                index: 0
            }
        );
    }

    #[test]
    fn word_counts_are_binomial() {
        assert_eq!(words(3, 2).len(), 3);
        assert_eq!(words(4, 2).len(), 6);
        assert_eq!(words(2, 0), vec![Vec::<u8>::new()]);
        assert!(words(3, 2).iter().all(|w| is_normal(w) && w[0] < 3));
    }
}
