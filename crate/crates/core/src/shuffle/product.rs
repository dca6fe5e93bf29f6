use std::collections::BTreeMap;

use crate::coeff::Coefficient;
use crate::poly::Monomial;

/// The weighted quasi-shuffle of two tails.
///
/// `mix(u, v) = u1 ⊗ mix(u', v) + v1 ⊗ mix(u, v') + λ (u1 v1) ⊗ mix(u', v')`
/// with `mix(u, ∅) = u` and `mix(∅, v) = v`. Evaluated bottom-up over suffix
/// pairs. When `max_len` is given, words that cannot end up with at most
/// `max_len` tail letters are dropped early: reaching suffix pair `(i, j)`
/// already emits at least `max(i, j)` letters.
pub fn mix_tails(
    u: &[Monomial],
    v: &[Monomial],
    lambda: &Coefficient,
    max_len: Option<usize>,
) -> BTreeMap<Vec<Monomial>, Coefficient> {
    let (m, n) = (u.len(), v.len());
    let one = lambda.ring().one();
    let merge = !lambda.is_zero();
    let fits = |i: usize, j: usize, len: usize| max_len.is_none_or(|cap| i.max(j) + len <= cap);

    // cells[i][j] = mix(u[i..], v[j..])
    let mut cells: Vec<Vec<BTreeMap<Vec<Monomial>, Coefficient>>> = vec![vec![BTreeMap::new(); n + 1]; m + 1];
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            let mut cell = BTreeMap::new();
            if i == m || j == n {
                let rest: Vec<Monomial> = if i == m { v[j..].to_vec() } else { u[i..].to_vec() };
                if fits(i, j, rest.len()) {
                    cell.insert(rest, one.clone());
                }
            } else {
                let mut push = |letter: &Monomial, from: &BTreeMap<Vec<Monomial>, Coefficient>, weight: Option<&Coefficient>| {
                    for (w, c) in from {
                        if !fits(i, j, w.len() + 1) {
                            continue;
                        }
                        let mut word = Vec::with_capacity(w.len() + 1);
                        word.push(letter.clone());
                        word.extend_from_slice(w);
                        let c = match weight {
                            Some(l) => c * l,
                            None => c.clone(),
                        };
                        accumulate(&mut cell, word, c);
                    }
                };
                push(&u[i], &cells[i + 1][j], None);
                push(&v[j], &cells[i][j + 1], None);
                if merge {
                    push(&u[i].mul(&v[j]), &cells[i + 1][j + 1], Some(lambda));
                }
            }
            cells[i][j] = cell;
        }
        // rows below i+1 are no longer needed
        if i + 2 <= m {
            cells[i + 2] = Vec::new();
        }
    }
    std::mem::take(&mut cells[0][0])
}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Coefficient>, key: K, c: Coefficient) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}
