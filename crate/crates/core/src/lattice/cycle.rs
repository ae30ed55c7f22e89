//! Cyclic-shift counting behind the closed form for `B_3`.
//!
//! Words here use up steps `+1` and down steps `-2`. A rotation is *even*
//! when it cuts the word at a point of even height, which keeps the height
//! parity of every step unchanged.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use super::Step;
use crate::error::{Error, Result};

/// Shape of a word with `2n` up steps, `k` down steps ending at even height
/// and `l` ending at odd height (heights measured from the word's start).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycleProfile {
    pub n: u64,
    pub k: u64,
    pub l: u64,
}

impl CycleProfile {
    /// The predicted share of good rotations, `(n - k - l) / (n + k)`.
    pub fn predicted_fraction(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.n as i64 - self.k as i64 - self.l as i64),
            BigInt::from(self.n + self.k),
        )
    }
}

fn prefix_heights(word: &[Step]) -> Vec<i64> {
    let mut h = 0i64;
    let mut out = Vec::with_capacity(word.len() + 1);
    out.push(0);
    for s in word {
        h += match s {
            Step::Up => 1,
            Step::Down => -2,
        };
        out.push(h);
    }
    out
}

pub fn cycle_word_profile(word: &[Step]) -> Result<CycleProfile> {
    let ups = word.iter().filter(|&&s| s == Step::Up).count() as u64;
    let downs = word.len() as u64 - ups;
    if !ups.is_multiple_of(2) || ups <= 2 * downs {
        return Err(Error::BadCycleWord);
    }
    let heights = prefix_heights(word);
    let k = word
        .iter()
        .zip(&heights[1..])
        .filter(|(s, h)| **s == Step::Down && h.rem_euclid(2) == 0)
        .count() as u64;
    Ok(CycleProfile {
        n: ups / 2,
        k,
        l: downs - k,
    })
}

/// Distinct rotations of `word` whose cut point sits at even height, in
/// order of first cut position.
pub fn even_cyclic_shifts(word: &[Step]) -> Vec<Vec<Step>> {
    let heights = prefix_heights(word);
    let mut out: Vec<Vec<Step>> = Vec::new();
    for i in 0..word.len() {
        if heights[i].rem_euclid(2) != 0 {
            continue;
        }
        let mut rot = word[i..].to_vec();
        rot.extend_from_slice(&word[..i]);
        if !out.contains(&rot) {
            out.push(rot);
        }
    }
    out
}

fn is_good(word: &[Step]) -> bool {
    word.last() == Some(&Step::Up) && prefix_heights(word).iter().all(|&h| h >= 0)
}

/// Share of the distinct even rotations that stay at height `>= 0` and end
/// with an up step, i.e. that become paths of the class `(n, k, l)` once
/// `n - k - l` down steps are appended.
pub fn good_shift_fraction(word: &[Step]) -> Result<BigRational> {
    cycle_word_profile(word)?;
    let shifts = even_cyclic_shifts(word);
    let good = shifts.iter().filter(|w| is_good(w)).count();
    Ok(BigRational::new(
        BigInt::from(good),
        BigInt::from(shifts.len()),
    ))
}

/// Random word with profile `(n, k, l)`: `k` down steps dropped into the
/// even gaps (after an even number of up steps) and `l` into the odd gaps.
///
/// Panics unless `n > k + l`.
pub fn random_cycle_word<R: Rng + ?Sized>(rng: &mut R, n: u64, k: u64, l: u64) -> Vec<Step> {
    assert!(n > k + l, "need n > k + l");
    let gaps = 2 * n as usize + 1;
    let mut per_gap = vec![0usize; gaps];
    for _ in 0..k {
        per_gap[2 * rng.gen_range(0..=n as usize)] += 1;
    }
    for _ in 0..l {
        per_gap[2 * rng.gen_range(0..n as usize) + 1] += 1;
    }
    let mut word = Vec::with_capacity(2 * n as usize + (k + l) as usize);
    for (j, &d) in per_gap.iter().enumerate() {
        word.extend(std::iter::repeat_n(Step::Down, d));
        if j + 1 < gaps {
            word.push(Step::Up);
        }
    }
    word
}

/// A word with profile `(n, k, l)` that is the `repeats`-fold power of a
/// random shorter word. `None` unless `repeats` divides `n`, `k` and `l`.
pub fn periodic_cycle_word<R: Rng + ?Sized>(
    rng: &mut R,
    n: u64,
    k: u64,
    l: u64,
    repeats: u64,
) -> Option<Vec<Step>> {
    if repeats == 0
        || !n.is_multiple_of(repeats)
        || !k.is_multiple_of(repeats)
        || !l.is_multiple_of(repeats)
    {
        return None;
    }
    let base = random_cycle_word(rng, n / repeats, k / repeats, l / repeats);
    Some(base.repeat(repeats as usize))
}

/// Uniformly shuffled word with `2n` up and `downs` down steps; its parity
/// split of down steps is whatever the shuffle produces.
pub fn shuffled_word<R: Rng + ?Sized>(rng: &mut R, n: u64, downs: u64) -> Vec<Step> {
    let mut w = vec![Step::Up; 2 * n as usize];
    w.extend(std::iter::repeat_n(Step::Down, downs as usize));
    w.shuffle(rng);
    w
}
