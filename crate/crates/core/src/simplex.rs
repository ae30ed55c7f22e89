//! Recurrence-built arrays: the Catalan triangle (`p = 2`), the Fuss-Catalan
//! tetrahedron (`p = 3`) and the general `p`-simplex, plus the extended
//! signed array `B'_3`.
//!
//! Layer `n` of a simplex stores every `ks` with `sum(ks) <= n - 1` in
//! lexicographic order; cells outside that region are zero and not stored.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{b3_prime_correction, StatIndex};

/// Upper bound on the number of cells a single build may allocate.
pub const MAX_CELLS: u128 = 20_000_000;

/// Number of `d`-tuples of nonnegative integers with sum at most `s`,
/// i.e. `C(s + d, d)`.
fn tuples_up_to(d: usize, s: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..=d as u128 {
        acc = acc * (s as u128 + i) / i;
    }
    acc
}

/// Lexicographic rank of `ks` among `d`-tuples with sum at most `m`.
fn rank(ks: &[u64], m: u64) -> usize {
    let d = ks.len();
    let mut r: u128 = 0;
    let mut rem = m;
    for (i, &k) in ks.iter().enumerate() {
        let tail = d - i - 1;
        // sum_{j < k} C(rem - j + tail, tail) = C(rem + tail + 1, tail + 1) - C(rem - k + tail + 1, tail + 1)
        r += tuples_up_to(tail + 1, rem) - tuples_up_to(tail + 1, rem - k);
        rem -= k;
    }
    r as usize
}

/// Lexicographic iterator over `d`-tuples with sum at most `m`.
#[derive(Debug, Clone)]
pub struct SimplexIndices {
    m: u64,
    cur: Vec<u64>,
    fresh: bool,
    done: bool,
}

impl SimplexIndices {
    pub fn new(d: usize, m: u64) -> Self {
        SimplexIndices {
            m,
            cur: vec![0; d],
            fresh: true,
            done: false,
        }
    }
}

impl Iterator for SimplexIndices {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(self.cur.clone());
        }
        let mut prefix: u64 = self.cur.iter().sum();
        for j in (0..self.cur.len()).rev() {
            if prefix < self.m {
                self.cur[j] += 1;
                return Some(self.cur.clone());
            }
            prefix -= self.cur[j];
            self.cur[j] = 0;
        }
        self.done = true;
        None
    }
}

/// Layered array of `B_p(n; ks)` for `1 <= n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FCSimplex {
    p: u32,
    n_max: u64,
    layers: Vec<Vec<BigInt>>,
}

fn check_size(p: u32, n_max: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidArity(p));
    }
    if n_max == 0 {
        return Err(Error::ZeroLayer);
    }
    // total cells = sum_{n=1}^{n_max} C(n - 1 + d, d) = C(n_max - 1 + d + 1, d + 1)
    let d = (p - 1) as usize;
    let cells = tuples_up_to(d + 1, n_max - 1);
    if cells > MAX_CELLS || p > 64 {
        return Err(Error::TooLarge {
            requested: cells,
            limit: MAX_CELLS,
        });
    }
    Ok(())
}

/// Builds the simplex with the inclusion-exclusion form of the box-sum
/// recurrence:
/// `B(n, ks) = B(n-1, ks) + sum_{S nonempty} (-1)^(|S|+1) B(n, ks - e_S)`.
pub fn build_simplex(p: u32, n_max: u64) -> Result<FCSimplex> {
    check_size(p, n_max)?;
    let d = (p - 1) as usize;
    let mut layers: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 2..=n_max {
        let prev = &layers[(n - 2) as usize];
        let m = n - 1;
        let mut cur: Vec<BigInt> = Vec::with_capacity(tuples_up_to(d, m) as usize);
        let mut shifted = vec![0u64; d];
        for ks in SimplexIndices::new(d, m) {
            let mut v = if ks.iter().sum::<u64>() < m {
                prev[rank(&ks, m - 1)].clone()
            } else {
                BigInt::zero()
            };
            for mask in 1u64..(1 << d) {
                if (0..d).any(|i| mask >> i & 1 == 1 && ks[i] == 0) {
                    continue;
                }
                for i in 0..d {
                    shifted[i] = ks[i] - (mask >> i & 1);
                }
                let term = &cur[rank(&shifted, m)];
                if mask.count_ones() % 2 == 1 {
                    v += term;
                } else {
                    v -= term;
                }
            }
            cur.push(v);
        }
        layers.push(cur);
    }
    Ok(FCSimplex { p, n_max, layers })
}

/// Builds the simplex by summing the previous layer over each box
/// `0 <= i <= ks` directly. Quadratic per layer; used to cross-check
/// [`build_simplex`].
pub fn build_simplex_by_box_sums(p: u32, n_max: u64) -> Result<FCSimplex> {
    check_size(p, n_max)?;
    let d = (p - 1) as usize;
    let mut layers: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 2..=n_max {
        let prev = &layers[(n - 2) as usize];
        let cur = SimplexIndices::new(d, n - 1)
            .map(|ks| {
                SimplexIndices::new(d, n - 2)
                    .filter(|is| is.iter().zip(&ks).all(|(i, k)| i <= k))
                    .map(|is| &prev[rank(&is, n - 2)])
                    .sum()
            })
            .collect();
        layers.push(cur);
    }
    Ok(FCSimplex { p, n_max, layers })
}

impl FCSimplex {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    fn check_index(&self, idx: &StatIndex) -> Result<()> {
        if idx.p() != self.p {
            return Err(Error::ArityMismatch {
                expected: self.p,
                got: idx.p(),
            });
        }
        self.check_layer(idx.n())
    }

    fn check_layer(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroLayer);
        }
        if n > self.n_max {
            return Err(Error::LayerOutOfRange {
                n,
                n_max: self.n_max,
            });
        }
        Ok(())
    }

    /// Value at `idx`; zero when `sum(ks) >= n`.
    pub fn entry(&self, idx: &StatIndex) -> Result<BigInt> {
        self.check_index(idx)?;
        if !idx.in_support() {
            return Ok(BigInt::zero());
        }
        Ok(self.layers[(idx.n() - 1) as usize][rank(idx.ks(), idx.n() - 1)].clone())
    }

    /// Mutable access to a stored cell. Only cells in the support are stored.
    pub fn entry_mut(&mut self, idx: &StatIndex) -> Result<&mut BigInt> {
        self.check_index(idx)?;
        if !idx.in_support() {
            return Err(Error::OutsideSupport {
                n: idx.n(),
                ks: idx.ks().to_vec(),
            });
        }
        let r = rank(idx.ks(), idx.n() - 1);
        Ok(&mut self.layers[(idx.n() - 1) as usize][r])
    }

    /// Stored cells of layer `n` paired with their `ks`, in lexicographic order.
    pub fn layer(&self, n: u64) -> Result<Vec<(Vec<u64>, &BigInt)>> {
        self.check_layer(n)?;
        let d = (self.p - 1) as usize;
        Ok(SimplexIndices::new(d, n - 1)
            .zip(&self.layers[(n - 1) as usize])
            .collect())
    }

    pub fn layer_sum(&self, n: u64) -> Result<BigInt> {
        self.check_layer(n)?;
        Ok(self.layers[(n - 1) as usize].iter().sum())
    }

    /// Layer `n` of a `p = 3` simplex as a triangular matrix: row `k` holds
    /// the entries for `l = 0..n-k`.
    pub fn section(&self, n: u64) -> Result<Vec<Vec<BigInt>>> {
        if self.p != 3 {
            return Err(Error::ArityMismatch {
                expected: 3,
                got: self.p,
            });
        }
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); n as usize];
        for (ks, v) in self.layer(n)? {
            rows[ks[0] as usize].push(v.clone());
        }
        Ok(rows)
    }
}

/// Extended array `B'_3` on `0 <= n <= n_max`, `0 <= k <= k_max`, `0 <= l <= l_max`.
///
/// Layer `n = 0` is the boundary layer produced by the correction terms;
/// layers `n >= 1` are the values of `B'_3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeGrid {
    n_max: u64,
    k_max: u64,
    l_max: u64,
    values: Vec<BigInt>,
}

/// Fills the grid with the corrected recurrence
/// `B'(n,k,l) = B'(n-1,k,l) + B'(n,k-1,l) + B'(n,k,l-1) - B'(n,k-1,l-1) + c(n,k,l)`,
/// taking `B' = 0` for negative indices.
pub fn build_prime_grid(n_max: u64, k_max: u64, l_max: u64) -> Result<PrimeGrid> {
    let cells = (n_max as u128 + 1) * (k_max as u128 + 1) * (l_max as u128 + 1);
    if cells > MAX_CELLS {
        return Err(Error::TooLarge {
            requested: cells,
            limit: MAX_CELLS,
        });
    }
    let mut grid = PrimeGrid {
        n_max,
        k_max,
        l_max,
        values: vec![BigInt::zero(); cells as usize],
    };
    for n in 0..=n_max as i64 {
        for k in 0..=k_max as i64 {
            for l in 0..=l_max as i64 {
                let v = grid.at(n - 1, k, l) + grid.at(n, k - 1, l) + grid.at(n, k, l - 1)
                    - grid.at(n, k - 1, l - 1)
                    + b3_prime_correction(n, k, l);
                let i = grid.offset(n as u64, k as u64, l as u64);
                grid.values[i] = v;
            }
        }
    }
    Ok(grid)
}

impl PrimeGrid {
    pub fn bounds(&self) -> (u64, u64, u64) {
        (self.n_max, self.k_max, self.l_max)
    }

    fn offset(&self, n: u64, k: u64, l: u64) -> usize {
        (((n * (self.k_max + 1)) + k) * (self.l_max + 1) + l) as usize
    }

    fn at(&self, n: i64, k: i64, l: i64) -> BigInt {
        if n < 0 || k < 0 || l < 0 {
            return BigInt::zero();
        }
        self.values[self.offset(n as u64, k as u64, l as u64)].clone()
    }

    fn check(&self, n: u64, k: u64, l: u64) -> Result<()> {
        if n > self.n_max || k > self.k_max || l > self.l_max {
            return Err(Error::GridOutOfRange {
                n,
                k,
                l,
                n_max: self.n_max,
                k_max: self.k_max,
                l_max: self.l_max,
            });
        }
        Ok(())
    }

    pub fn value(&self, n: u64, k: u64, l: u64) -> Result<&BigInt> {
        self.check(n, k, l)?;
        Ok(&self.values[self.offset(n, k, l)])
    }

    pub fn value_mut(&mut self, n: u64, k: u64, l: u64) -> Result<&mut BigInt> {
        self.check(n, k, l)?;
        let i = self.offset(n, k, l);
        Ok(&mut self.values[i])
    }

    /// The `(k_max + 1) x (l_max + 1)` matrix of layer `n`.
    pub fn slice(&self, n: u64) -> Result<Vec<Vec<BigInt>>> {
        self.check(n, 0, 0)?;
        Ok((0..=self.k_max)
            .map(|k| {
                (0..=self.l_max)
                    .map(|l| self.values[self.offset(n, k, l)].clone())
                    .collect()
            })
            .collect())
    }
}
