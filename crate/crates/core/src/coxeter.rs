//! The affine Weyl group of type Ã_{m-1} as window permutations, with the diagram
//! involution `θ: s_i ↦ s_{i+n}` (`m = 2n`) and its twisted involutions.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// A bijection `f: ℤ → ℤ` with `f(i + m) = f(i) + m` and `Σ_{i=1}^m f(i) = Σ i`,
/// stored as the window `[f(1), …, f(m)]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffinePerm {
    window: Vec<i64>,
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.window)
    }
}

impl AffinePerm {
    pub fn new(window: Vec<i64>) -> Result<AffinePerm> {
        let m = window.len() as i64;
        if m < 2 {
            return Err(Error::InvalidParameters("window needs m ≥ 2".into()));
        }
        let residues: BTreeSet<i64> = window.iter().map(|x| x.rem_euclid(m)).collect();
        let sum: i64 = window.iter().sum();
        if residues.len() as i64 != m || sum != m * (m + 1) / 2 {
            return Err(Error::InvalidParameters(format!("{window:?} is not an affine permutation")));
        }
        Ok(AffinePerm { window })
    }

    pub fn identity(m: usize) -> AffinePerm {
        AffinePerm { window: (1..=m as i64).collect() }
    }

    /// `s_i`, `0 ≤ i < m`, swapping `i` and `i + 1` (mod `m`).
    pub fn generator(m: usize, i: usize) -> AffinePerm {
        let mut w = AffinePerm::identity(m);
        if i == 0 {
            w.window[0] = 0;
            w.window[m - 1] = m as i64 + 1;
        } else {
            w.window.swap(i - 1, i);
        }
        w
    }

    /// `s_{i_1} s_{i_2} ⋯ s_{i_k}`.
    pub fn from_word(m: usize, word: &[usize]) -> AffinePerm {
        word.iter().fold(AffinePerm::identity(m), |acc, &i| acc.right_mul(i))
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn eval(&self, x: i64) -> i64 {
        let m = self.rank() as i64;
        self.window[(x - 1).rem_euclid(m) as usize] + (x - 1).div_euclid(m) * m
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffinePerm) -> AffinePerm {
        AffinePerm { window: other.window.iter().map(|&x| self.eval(x)).collect() }
    }

    pub fn inverse(&self) -> AffinePerm {
        let m = self.rank() as i64;
        let mut w = vec![0; self.rank()];
        for (k, &v) in self.window.iter().enumerate() {
            w[(v - 1).rem_euclid(m) as usize] = k as i64 + 1 - (v - 1).div_euclid(m) * m;
        }
        AffinePerm { window: w }
    }

    /// `s_i · self`.
    pub fn left_mul(&self, i: usize) -> AffinePerm {
        AffinePerm::generator(self.rank(), i).compose(self)
    }

    /// `self · s_i`.
    pub fn right_mul(&self, i: usize) -> AffinePerm {
        self.compose(&AffinePerm::generator(self.rank(), i))
    }

    /// Affine inversion count `Σ_{1 ≤ i < j ≤ m} |⌊(f(j) − f(i)) / m⌋|`.
    pub fn length(&self) -> usize {
        let m = self.rank() as i64;
        let w = &self.window;
        let mut l = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                l += (w[j] - w[i]).div_euclid(m).unsigned_abs() as usize;
            }
        }
        l
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(k, &v)| v == k as i64 + 1)
    }

    /// Left descents `{i : l(s_i w) < l(w)}`.
    pub fn left_descents(&self) -> Vec<usize> {
        let l = self.length();
        (0..self.rank()).filter(|&i| self.left_mul(i).length() < l).collect()
    }

    /// A reduced word, by repeatedly stripping a left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(&i) = w.left_descents().first() {
            word.push(i);
            w = w.left_mul(i);
        }
        word
    }
}

/// `θ: s_i ↦ s_{i + shift mod m}`, realized as conjugation by `x ↦ x + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramInvolution {
    pub m: usize,
    pub shift: usize,
}

impl DiagramInvolution {
    pub fn new(m: usize, shift: usize) -> Result<DiagramInvolution> {
        if m < 2 || (2 * shift) % m != 0 {
            return Err(Error::InvalidParameters(format!("s_i ↦ s_{{i+{shift}}} is not an involution of Ã_{}", m - 1)));
        }
        Ok(DiagramInvolution { m, shift })
    }

    pub fn on_index(&self, i: usize) -> usize {
        (i + self.shift) % self.m
    }

    pub fn apply(&self, w: &AffinePerm) -> AffinePerm {
        let s = self.shift as i64;
        AffinePerm { window: (1..=self.m as i64).map(|x| w.eval(x - s) + s).collect() }
    }

    pub fn on_word(&self, word: &[usize]) -> Vec<usize> {
        word.iter().map(|&i| self.on_index(i)).collect()
    }
}

/// `θ(u) = u⁻¹`.
pub fn is_twisted_involution(u: &AffinePerm, th: &DiagramInvolution) -> bool {
    th.apply(u) == u.inverse()
}

/// `w · θ(w)⁻¹`.
pub fn twisted_square(w: &AffinePerm, th: &DiagramInvolution) -> AffinePerm {
    w.compose(&th.apply(w).inverse())
}

/// The result of [`twisted_decompose`]: `u = w (w⁻¹)^θ` with `l(u) = 2 l(w)`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistedDecomposition {
    pub w: AffinePerm,
    /// Times the recursion met `s_i u s_{θ(i)} = u` and fell back to a longest element.
    pub terminal_cases: usize,
}

/// Constructive form of `W(θ) = {w (w⁻¹)^θ}`: strip a left descent `s_i`, recurse on
/// `s_i u s_{θ(i)}`, and in the degenerate case `s_i u s_{θ(i)} = u` use `u = w_K (w_K)^θ`.
pub fn twisted_decompose(u: &AffinePerm, th: &DiagramInvolution) -> Result<TwistedDecomposition> {
    if !is_twisted_involution(u, th) {
        return Err(Error::NotTwistedInvolution);
    }
    let mut prefix = Vec::new();
    let mut terminal_cases = 0;
    let mut cur = u.clone();
    let tail = loop {
        let desc = cur.left_descents();
        if desc.is_empty() {
            break AffinePerm::identity(u.rank());
        }
        let step = desc.iter().map(|&i| (i, cur.left_mul(i).right_mul(th.on_index(i)))).find(|(_, v)| v.length() + 2 == cur.length());
        if let Some((i, v)) = step {
            prefix.push(i);
            cur = v;
            continue;
        }
        terminal_cases += 1;
        break longest_half(&cur, th)?;
    };
    let w = prefix.iter().rev().fold(tail, |acc, &i| acc.left_mul(i));
    if twisted_square(&w, th) != *u || 2 * w.length() != u.length() {
        return Err(Error::InvalidParameters(format!("decomposition of {u:?} failed")));
    }
    Ok(TwistedDecomposition { w, terminal_cases })
}

/// `u = w_J` longest in a finite `W_J` with `J = K ⊔ K^θ`; returns `w_K`.
fn longest_half(u: &AffinePerm, th: &DiagramInvolution) -> Result<AffinePerm> {
    let m = u.rank();
    let support: BTreeSet<usize> = u.reduced_word().into_iter().collect();
    if support.len() == m {
        return Err(Error::InvalidParameters("W_J is infinite".into()));
    }
    // connected components of J on the m-cycle
    let mut comps: Vec<BTreeSet<usize>> = Vec::new();
    let mut seen = BTreeSet::new();
    for &s in &support {
        if seen.contains(&s) {
            continue;
        }
        let mut c = BTreeSet::new();
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            if support.contains(&x) && c.insert(x) {
                stack.push((x + 1) % m);
                stack.push((x + m - 1) % m);
            }
        }
        seen.extend(c.iter().copied());
        comps.push(c);
    }
    let mut k = BTreeSet::new();
    let mut used = BTreeSet::new();
    for (idx, c) in comps.iter().enumerate() {
        if used.contains(&idx) {
            continue;
        }
        let image: BTreeSet<usize> = c.iter().map(|&i| th.on_index(i)).collect();
        let partner = comps.iter().position(|d| *d == image).ok_or_else(|| Error::InvalidParameters("θ does not permute components".into()))?;
        if partner == idx {
            return Err(Error::InvalidParameters("θ-stable component".into()));
        }
        used.insert(partner);
        k.extend(c.iter().copied());
    }
    Ok(longest_element(m, &k))
}

/// Longest element of the finite parabolic `W_K`.
pub fn longest_element(m: usize, k: &BTreeSet<usize>) -> AffinePerm {
    let mut w = AffinePerm::identity(m);
    while let Some(&i) = k.iter().find(|&&i| w.left_mul(i).length() > w.length()) {
        w = w.left_mul(i);
    }
    w
}

/// `l(s_i u s_{θ(i)}) − l(u)` for `u ∈ W(θ)`.
pub fn length_conjugation_law(u: &AffinePerm, i: usize, th: &DiagramInvolution) -> Result<i64> {
    if !is_twisted_involution(u, th) {
        return Err(Error::NotTwistedInvolution);
    }
    let v = u.left_mul(i).right_mul(th.on_index(i));
    Ok(v.length() as i64 - u.length() as i64)
}

/// Least element of `W_J u W_{θ(J)}` by greedy descent.
pub fn min_double_coset(u: &AffinePerm, j: &[usize], th: &DiagramInvolution) -> AffinePerm {
    let mut cur = u.clone();
    loop {
        let l = cur.length();
        if let Some(&s) = j.iter().find(|&&s| cur.left_mul(s).length() < l) {
            cur = cur.left_mul(s);
        } else if let Some(&s) = j.iter().find(|&&s| cur.right_mul(th.on_index(s)).length() < l) {
            cur = cur.right_mul(th.on_index(s));
        } else {
            return cur;
        }
    }
}

/// All of `W_J u W_{θ(J)}` for a proper `J`; used as the oracle for [`min_double_coset`].
pub fn double_coset(u: &AffinePerm, j: &[usize], th: &DiagramInvolution) -> Vec<AffinePerm> {
    let mut seen: BTreeSet<AffinePerm> = BTreeSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(x) = queue.pop_front() {
        for &s in j {
            for y in [x.left_mul(s), x.right_mul(th.on_index(s))] {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Every element of length `≤ max_len`, with its length, in BFS order.
pub fn ball(m: usize, max_len: usize) -> Vec<(AffinePerm, usize)> {
    let id = AffinePerm::identity(m);
    let mut dist: HashMap<AffinePerm, usize> = HashMap::from([(id.clone(), 0)]);
    let mut out = vec![(id.clone(), 0)];
    let mut frontier = vec![id];
    for d in 1..=max_len {
        let mut next = Vec::new();
        for x in &frontier {
            for i in 0..m {
                let y = x.left_mul(i);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d);
                    next.push(y.clone());
                    out.push((y, d));
                }
            }
        }
        frontier = next;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxeterCensus {
    pub m: usize,
    pub shift: usize,
    pub max_len: usize,
    pub ball_size: usize,
    pub length_formula_mismatches: usize,
    /// `|W(θ) ∩ B_L|` by length.
    pub twisted_by_length: Vec<usize>,
    pub set_equality: bool,
    pub odd_length_twisted: usize,
    pub law_plus_two: usize,
    pub law_minus_two: usize,
    pub law_other: usize,
    pub decompositions: usize,
    pub decompose_failures: usize,
    pub terminal_cases: usize,
    pub exchange_failures: usize,
    pub theta_word_mismatches: usize,
    pub coset_instances: usize,
    pub coset_mismatches: usize,
    pub coset_not_unique: usize,
}

impl CoxeterCensus {
    pub fn ok(&self) -> bool {
        self.length_formula_mismatches == 0
            && self.set_equality
            && self.odd_length_twisted == 0
            && self.law_other == 0
            && self.decompose_failures == 0
            && self.exchange_failures == 0
            && self.theta_word_mismatches == 0
            && self.coset_mismatches == 0
            && self.coset_not_unique == 0
    }
}

/// Exhaustive checks over the ball of radius `max_len`, plus `coset_samples` random
/// double-coset instances with `J` a union of at most two θ-orbits.
pub fn coxeter_census(m: usize, shift: usize, max_len: usize, coset_samples: usize, seed: u64) -> Result<CoxeterCensus> {
    let th = DiagramInvolution::new(m, shift)?;
    let elems = ball(m, max_len);
    let length_formula_mismatches = elems.iter().filter(|(w, d)| w.length() != *d).count();
    let twisted: Vec<&AffinePerm> = elems.iter().map(|(w, _)| w).filter(|w| is_twisted_involution(w, &th)).collect();
    let mut twisted_by_length = vec![0; max_len + 1];
    for w in &twisted {
        twisted_by_length[w.length()] += 1;
    }
    let lhs: BTreeSet<AffinePerm> = twisted.iter().map(|w| (*w).clone()).collect();
    let rhs: BTreeSet<AffinePerm> = elems
        .iter()
        .filter(|(_, d)| 2 * d <= max_len)
        .map(|(w, _)| twisted_square(w, &th))
        .filter(|u| u.length() <= max_len)
        .collect();
    let odd_length_twisted = twisted.iter().filter(|w| w.length() % 2 == 1).count();
    let (mut plus, mut minus, mut other) = (0, 0, 0);
    let (mut decompose_failures, mut terminal_cases) = (0, 0);
    for u in &twisted {
        for i in 0..m {
            match length_conjugation_law(u, i, &th)? {
                2 => plus += 1,
                -2 => minus += 1,
                _ => other += 1,
            }
        }
        match twisted_decompose(u, &th) {
            Ok(d) => terminal_cases += d.terminal_cases,
            Err(_) => decompose_failures += 1,
        }
    }
    let mut exchange_failures = 0;
    for (u, d) in elems.iter().filter(|(_, d)| *d <= 6) {
        let word = u.reduced_word();
        if word.len() != *d {
            exchange_failures += 1;
            continue;
        }
        for i in u.left_descents() {
            let target = u.left_mul(i);
            let found = (0..word.len()).any(|k| {
                let mut w2 = word.clone();
                w2.remove(k);
                AffinePerm::from_word(m, &w2) == target
            });
            exchange_failures += !found as usize;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut theta_word_mismatches = 0;
    for _ in 0..200 {
        let word: Vec<usize> = (0..rng.gen_range(0..=8)).map(|_| rng.gen_range(0..m)).collect();
        let lhs = th.apply(&AffinePerm::from_word(m, &word));
        theta_word_mismatches += (lhs != AffinePerm::from_word(m, &th.on_word(&word))) as usize;
    }
    let short: Vec<&AffinePerm> = elems.iter().filter(|(_, d)| *d <= 6).map(|(w, _)| w).collect();
    let orbits: Vec<usize> = (0..m).filter(|&i| i < th.on_index(i) || i == th.on_index(i)).collect();
    let (mut coset_mismatches, mut coset_not_unique) = (0, 0);
    for _ in 0..coset_samples {
        let u = short.choose(&mut rng).expect("ball is non-empty");
        let k = if orbits.len() > 2 { rng.gen_range(1..=2) } else { 1 };
        let reps: Vec<usize> = orbits.choose_multiple(&mut rng, k).copied().collect();
        let mut j: Vec<usize> = reps.iter().flat_map(|&i| [i, th.on_index(i)]).collect();
        j.sort_unstable();
        j.dedup();
        let greedy = min_double_coset(u, &j, &th);
        let coset = double_coset(u, &j, &th);
        let min_len = coset.iter().map(|w| w.length()).min().unwrap();
        let minima: Vec<&AffinePerm> = coset.iter().filter(|w| w.length() == min_len).collect();
        coset_not_unique += (minima.len() != 1) as usize;
        coset_mismatches += (greedy.length() != min_len || *minima[0] != greedy) as usize;
    }
    Ok(CoxeterCensus {
        m,
        shift,
        max_len,
        ball_size: elems.len(),
        length_formula_mismatches,
        twisted_by_length,
        set_equality: lhs == rhs,
        odd_length_twisted,
        law_plus_two: plus,
        law_minus_two: minus,
        law_other: other,
        decompositions: twisted.len() - decompose_failures,
        decompose_failures,
        terminal_cases,
        exchange_failures,
        theta_word_mismatches,
        coset_instances: coset_samples,
        coset_mismatches,
        coset_not_unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_and_length() {
        let s1 = AffinePerm::generator(4, 1);
        assert_eq!(s1.window(), &[2, 1, 3, 4]);
        assert_eq!(s1.length(), 1);
        let s0 = AffinePerm::generator(4, 0);
        assert_eq!(s0.length(), 1);
        assert!(s0.compose(&s0).is_identity());
        assert_eq!(AffinePerm::identity(4).length(), 0);
        assert!(AffinePerm::new(vec![1, 1, 4, 4]).is_err());
        let w = AffinePerm::from_word(4, &[0, 1, 2, 3, 0]);
        assert_eq!(w.compose(&w.inverse()), AffinePerm::identity(4));
    }

    #[test]
    fn small_twisted_examples() {
        let th = DiagramInvolution::new(4, 2).unwrap();
        let u = AffinePerm::from_word(4, &[1, 3]);
        assert!(is_twisted_involution(&u, &th));
        assert!(!is_twisted_involution(&AffinePerm::generator(4, 1), &th));
        let d = twisted_decompose(&u, &th).unwrap();
        assert_eq!(d.w, AffinePerm::generator(4, 1));
        assert!(twisted_decompose(&AffinePerm::generator(4, 1), &th).is_err());
        for i in 0..4 {
            assert_eq!(length_conjugation_law(&AffinePerm::identity(4), i, &th).unwrap(), 2);
        }
    }

    #[test]
    fn coset_example() {
        let th = DiagramInvolution::new(8, 4).unwrap();
        let u = AffinePerm::from_word(8, &[1, 5]);
        assert!(min_double_coset(&u, &[1, 5], &th).is_identity());
        let v = AffinePerm::from_word(8, &[2, 3]);
        assert_eq!(min_double_coset(&v, &[1, 5], &th), v);
    }

    #[test]
    fn census_full() {
        let c = coxeter_census(8, 4, 8, 200, 0).unwrap();
        assert!(c.ok(), "{c:?}");
        assert_eq!(c.twisted_by_length, vec![1, 0, 4, 0, 10, 0, 20, 0, 36]);
        assert_eq!(c.terminal_cases, 0);
    }

    #[test]
    fn census_small() {
        let c = coxeter_census(4, 2, 6, 20, 0).unwrap();
        assert!(c.ok(), "{c:?}");
        assert_eq!(c.terminal_cases, 0);
    }
}
