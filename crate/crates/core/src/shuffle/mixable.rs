//! Mixable shuffles, enumerated straight from their definition.
//!
//! This is the slow route to the mixed shuffle product. It is kept as an
//! independent reference for the recursion in `product.rs`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::product::accumulate;
use super::{ShuffleElement, TensorWord};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::poly::Monomial;

/// An (m, n)-shuffle together with a set of merged admissible pairs.
///
/// `sigma[k - 1]` is the source index σ(k) in `1..=m+n`; indices `1..=m` come
/// from the first word. `merged` holds the positions `k` of the pairs
/// `(k, k+1)` in T, each satisfying `σ(k) ≤ m < σ(k+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixableShuffle {
    pub m: usize,
    pub n: usize,
    pub sigma: Vec<usize>,
    pub merged: Vec<usize>,
}

impl MixableShuffle {
    /// Positions k with (k, k+1) admissible for σ.
    pub fn admissible_pairs(&self) -> Vec<usize> {
        admissible(&self.sigma, self.m)
    }

    pub fn is_valid(&self) -> bool {
        let len = self.m + self.n;
        if self.sigma.len() != len {
            return false;
        }
        let mut seen = vec![false; len + 1];
        for &s in &self.sigma {
            if s == 0 || s > len || seen[s] {
                return false;
            }
            seen[s] = true;
        }
        // each block appears in increasing order
        let block = |lo: usize, hi: usize| {
            let pos: Vec<usize> = self.sigma.iter().copied().filter(|s| (lo..=hi).contains(s)).collect();
            pos.windows(2).all(|w| w[0] < w[1])
        };
        let adm = self.admissible_pairs();
        block(1, self.m) && block(self.m + 1, len) && self.merged.iter().all(|k| adm.contains(k))
    }

    /// σ(x ⊗ y; T): lay out the letters in σ order and multiply across the
    /// merged pairs.
    pub fn apply(&self, x: &[Monomial], y: &[Monomial]) -> Vec<Monomial> {
        assert_eq!((x.len(), y.len()), (self.m, self.n), "word lengths must match the shuffle");
        let letter = |s: usize| if s <= self.m { &x[s - 1] } else { &y[s - self.m - 1] };
        let mut out = Vec::with_capacity(self.sigma.len() - self.merged.len());
        let mut k = 1;
        while k <= self.sigma.len() {
            let here = letter(self.sigma[k - 1]);
            if self.merged.contains(&k) {
                out.push(here.mul(letter(self.sigma[k])));
                k += 2;
            } else {
                out.push(here.clone());
                k += 1;
            }
        }
        out
    }
}

fn admissible(sigma: &[usize], m: usize) -> Vec<usize> {
    (1..sigma.len()).filter(|&k| sigma[k - 1] <= m && m < sigma[k]).collect()
}

fn shuffles(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, j: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == m && j == n {
            out.push(cur.clone());
            return;
        }
        if i < m {
            cur.push(i + 1);
            go(i + 1, j, m, n, cur, out);
            cur.pop();
        }
        if j < n {
            cur.push(m + j + 1);
            go(i, j + 1, m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, m, n, &mut Vec::with_capacity(m + n), &mut out);
    out
}

/// Every mixable (m, n)-shuffle. Shuffles come in lexicographic order of σ;
/// within a shuffle the subsets T follow the binary counting order over its
/// admissible pairs.
pub fn enumerate_mixable_shuffles(m: usize, n: usize) -> Vec<MixableShuffle> {
    let mut out = Vec::new();
    for sigma in shuffles(m, n) {
        let adm = admissible(&sigma, m);
        for mask in 0u64..(1u64 << adm.len()) {
            let merged = adm.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &k)| k).collect();
            out.push(MixableShuffle { m, n, sigma: sigma.clone(), merged });
        }
    }
    out
}

/// Number of mixable (m, n)-shuffles via N(m,n) = N(m-1,n) + N(m,n-1) + N(m-1,n-1).
pub fn mixable_shuffle_count(m: usize, n: usize) -> BigUint {
    let mut row: Vec<BigUint> = vec![BigUint::one(); n + 1];
    for _ in 0..m {
        let mut next = vec![BigUint::one(); n + 1];
        for j in 1..=n {
            next[j] = &row[j] + &next[j - 1] + &row[j - 1];
        }
        row = next;
    }
    row.pop().unwrap_or_else(BigUint::zero)
}

/// The mixed shuffle product computed term by term from the enumeration:
/// `x ⋄ y = Σ λ^{|T|} x0 y0 ⊗ σ(x⁺ ⊗ y⁺; T)`.
pub fn shuffle_product_by_enumeration(a: &ShuffleElement, b: &ShuffleElement) -> Result<ShuffleElement> {
    if a.context() != b.context() {
        return Err(Error::ContextMismatch);
    }
    let ctx = a.context();
    let lambda = ctx.lambda();
    let mut acc: BTreeMap<TensorWord, Coefficient> = BTreeMap::new();
    let mut cache: BTreeMap<(usize, usize), Vec<MixableShuffle>> = BTreeMap::new();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            let (xt, yt) = (wa.tail(), wb.tail());
            let list = cache
                .entry((xt.len(), yt.len()))
                .or_insert_with(|| enumerate_mixable_shuffles(xt.len(), yt.len()));
            let head = wa.head().mul(wb.head());
            let c = ca * cb;
            for ms in list.iter() {
                let mut word = vec![head.clone()];
                word.extend(ms.apply(xt, yt));
                let weight = lambda.pow(ms.merged.len() as u64);
                accumulate(&mut acc, TensorWord::from_vec_unchecked(word), &c * &weight);
            }
        }
    }
    Ok(ShuffleElement::from_map_unchecked(ctx.clone(), acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_mixable_shuffles(1, 1).len(), 3);
        assert_eq!(enumerate_mixable_shuffles(2, 2).len(), 13);
        for m in 0..5 {
            assert_eq!(enumerate_mixable_shuffles(m, 0).len(), 1);
            assert_eq!(enumerate_mixable_shuffles(0, m).len(), 1);
        }
        assert_eq!(mixable_shuffle_count(2, 2), BigUint::from(13u32));
        assert_eq!(mixable_shuffle_count(3, 3), BigUint::from(63u32));
    }

    #[test]
    fn identity_shuffle_has_one_admissible_pair() {
        let all = enumerate_mixable_shuffles(1, 1);
        assert_eq!(all[0], MixableShuffle { m: 1, n: 1, sigma: vec![1, 2], merged: vec![] });
        assert_eq!(all[1], MixableShuffle { m: 1, n: 1, sigma: vec![1, 2], merged: vec![1] });
        assert_eq!(all[2], MixableShuffle { m: 1, n: 1, sigma: vec![2, 1], merged: vec![] });
        assert!(all.iter().all(MixableShuffle::is_valid));
    }

    #[test]
    fn enumeration_is_distinct_and_valid() {
        for m in 0..=4 {
            for n in 0..=4 {
                let all = enumerate_mixable_shuffles(m, n);
                let set: std::collections::HashSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len());
                assert!(all.iter().all(MixableShuffle::is_valid));
                assert_eq!(BigUint::from(all.len()), mixable_shuffle_count(m, n));
            }
        }
    }

    #[test]
    fn apply_merges() {
        let (a, b, c) = (Monomial::var("a"), Monomial::var("b"), Monomial::var("c"));
        let ms = MixableShuffle { m: 2, n: 1, sigma: vec![1, 2, 3], merged: vec![2] };
        assert!(ms.is_valid());
        assert_eq!(ms.apply(&[a.clone(), b.clone()], std::slice::from_ref(&c)), vec![a, b.mul(&c)]);
        let bad = MixableShuffle { m: 2, n: 1, sigma: vec![1, 2, 3], merged: vec![1] };
        assert!(!bad.is_valid());
    }
}
