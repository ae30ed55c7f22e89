//! Closed forms for the Catalan, ballot and Fuss-Catalan families.
//!
//! Every function here is total: outside the support of a family the value
//! is zero, matching the third defining condition of each recurrence. All
//! divisions are exact and checked.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRational = BigRational;

/// Index `(n; k_1, ..., k_{p-1})` of a multivariate Fuss-Catalan number.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StatIndex {
    p: u32,
    n: u64,
    ks: Vec<u64>,
}

impl StatIndex {
    pub fn new(p: u32, n: u64, ks: Vec<u64>) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArity(p));
        }
        if n == 0 {
            return Err(Error::ZeroLayer);
        }
        let expected = (p - 1) as usize;
        if ks.len() != expected {
            return Err(Error::IndexLength {
                p,
                expected,
                got: ks.len(),
            });
        }
        Ok(StatIndex { p, n, ks })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn ks(&self) -> &[u64] {
        &self.ks
    }

    pub fn k_sum(&self) -> u64 {
        self.ks.iter().sum()
    }

    /// True when the index lies in the support `sum(ks) < n`.
    pub fn in_support(&self) -> bool {
        self.k_sum() < self.n
    }
}

/// Divides `num` by `den`, panicking if the division leaves a remainder.
pub(crate) fn exact_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "inexact division: {num} / {den}");
    q
}

/// Binomial coefficient `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: u64, b: i64) -> ExactInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::one();
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1) since acc = C(a, i).
        acc = exact_div(&(acc * (a - i)), &BigInt::from(i + 1));
    }
    acc
}

/// Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> ExactInt {
    fuss_catalan(2, n)
}

/// Fuss-Catalan number `C(pn, n) / ((p-1)n + 1)`, with `C_p(0) = 1`.
///
/// Panics if `p < 2`.
pub fn fuss_catalan(p: u32, n: u64) -> ExactInt {
    assert!(p >= 2, "arity must be at least 2");
    let p = p as u64;
    exact_div(&binomial(p * n, n as i64), &BigInt::from((p - 1) * n + 1))
}

/// Ballot number `B(n, k) = (n-k)/(n+k) * C(n+k, n)`, zero when `k >= n` or `k < 0`.
pub fn ballot(n: i64, k: i64) -> ExactInt {
    if n < 1 || k < 0 || k >= n {
        return BigInt::zero();
    }
    let num = binomial((n + k) as u64, n) * (n - k);
    exact_div(&num, &BigInt::from(n + k))
}

/// Probability that the winner with `a` votes leads throughout the count
/// against `b` votes: `B(a, b) / C(a+b, a)`, which reduces to `(a-b)/(a+b)`.
pub fn ballot_probability(a: u64, b: u64) -> Result<ExactRational> {
    if a <= b {
        return Err(Error::BallotOrder { a, b });
    }
    let favourable = ballot(a as i64, b as i64);
    let total = binomial(a + b, a as i64);
    Ok(BigRational::new(favourable, total))
}

/// `B_3(n, k, l) = C(n+k, k) C(n+l-1, l) (n-k-l) / (n+k)`, zero off the support.
pub fn b3_closed(n: i64, k: i64, l: i64) -> ExactInt {
    if n < 1 || k < 0 || l < 0 || k + l >= n {
        return BigInt::zero();
    }
    let num = binomial((n + k) as u64, k) * binomial((n + l - 1) as u64, l) * (n - k - l);
    exact_div(&num, &BigInt::from(n + k))
}

/// `B_p(n; ks) = prod_i C(n + k_i - 1, k_i) * (n - sum ks) / n`, zero off the support.
pub fn bp_closed(idx: &StatIndex) -> ExactInt {
    if !idx.in_support() {
        return BigInt::zero();
    }
    let n = idx.n();
    let prod = idx
        .ks()
        .iter()
        .fold(BigInt::one(), |acc, &k| acc * binomial(n + k - 1, k as i64));
    exact_div(&(prod * (n - idx.k_sum())), &BigInt::from(n))
}

/// Extended array `B'_3(n, k, l) = C(n+k-1, k) C(n+l-1, l) (n-k-l) / n`.
///
/// Defined for every `k, l >= 0` when `n >= 1` and negative once `k + l > n`;
/// zero when `n <= 0` or an index is negative.
pub fn b3_prime(n: i64, k: i64, l: i64) -> ExactInt {
    if n < 1 || k < 0 || l < 0 {
        return BigInt::zero();
    }
    let num = binomial((n + k - 1) as u64, k) * binomial((n + l - 1) as u64, l) * (n - k - l);
    exact_div(&num, &BigInt::from(n))
}

/// Correction term `c(n, k, l)` of the recurrence satisfied by `B'_3`.
pub fn b3_prime_correction(n: i64, k: i64, l: i64) -> ExactInt {
    let c = match (n, k, l) {
        (1, 0, 0) => 1,
        (0, 1, 0) | (0, 0, 1) => -1,
        (0, 1, 1) => 2,
        _ => 0,
    };
    BigInt::from(c)
}

/// Layer `n = 0` generated by the corrected recurrence for `B'_3`.
///
/// The correction terms at `n = 0` do not vanish, so the recurrence (and the
/// rational generating function) carries a nonzero `t^0` layer:
/// `-1` on the two axes `k >= 1, l = 0` and `k = 0, l >= 1`, zero elsewhere.
/// Seeding the recurrence with this layer is what makes layers `n >= 1`
/// agree with [`b3_prime`].
pub fn b3_prime_boundary(k: i64, l: i64) -> ExactInt {
    if k < 0 || l < 0 {
        return BigInt::zero();
    }
    let v = match (k > 0, l > 0) {
        (true, false) | (false, true) => -1,
        _ => 0,
    };
    BigInt::from(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Pascal's triangle by repeated addition, independent of [`binomial`].
    fn pascal(rows: usize) -> Vec<Vec<BigInt>> {
        let mut tri: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for r in 1..=rows {
            let prev = &tri[r - 1];
            let mut row = vec![BigInt::one(); r + 1];
            for c in 1..r {
                row[c] = &prev[c - 1] + &prev[c];
            }
            tri.push(row);
        }
        tri
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 0), int(1));
        assert_eq!(binomial(10, 5), int(252));
        assert_eq!(binomial(4, 7), int(0));
        assert_eq!(binomial(4, -1), int(0));
        assert_eq!(binomial(0, 0), int(1));
    }

    #[test]
    fn binomial_matches_pascal() {
        let tri = pascal(60);
        for (a, row) in tri.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                assert_eq!(&binomial(a as u64, b as i64), v, "C({a},{b})");
            }
        }
        assert_eq!(tri[10][5], int(252));
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(1), int(1));
        assert_eq!(catalan(5), int(42));
        assert_eq!(catalan(6), int(132));
        let firsts: Vec<_> = (1..=6).map(catalan).collect();
        assert_eq!(firsts, [1, 2, 5, 14, 42, 132].map(int));
    }

    #[test]
    fn fuss_catalan_examples() {
        assert_eq!(fuss_catalan(3, 5), int(273));
        let c3: Vec<_> = (1..=5).map(|n| fuss_catalan(3, n)).collect();
        assert_eq!(c3, [1, 3, 12, 55, 273].map(int));
        assert_eq!(fuss_catalan(4, 2), int(4));
        assert_eq!(fuss_catalan(4, 0), int(1));
        for n in 1..40 {
            assert_eq!(fuss_catalan(2, n), catalan(n));
        }
        // overflows u64 well before this
        assert_eq!(
            fuss_catalan(2, 100).to_string(),
            "896519947090131496687170070074100632420837521538745909320"
        );
    }

    #[test]
    fn ballot_examples() {
        assert_eq!(ballot(6, 4), int(42));
        assert_eq!(ballot(5, 2), int(9));
        assert_eq!(ballot(3, 3), int(0));
        assert_eq!(ballot(3, -1), int(0));
        assert_eq!(ballot(0, 0), int(0));
    }

    #[test]
    fn ballot_triangle_rows() {
        let rows: Vec<Vec<BigInt>> = (1..=6)
            .map(|n| (0..n).map(|k| ballot(n, k)).collect())
            .collect();
        let expected: Vec<Vec<i64>> = vec![
            vec![1],
            vec![1, 1],
            vec![1, 2, 2],
            vec![1, 3, 5, 5],
            vec![1, 4, 9, 14, 14],
            vec![1, 5, 14, 28, 42, 42],
        ];
        for (row, exp) in rows.iter().zip(&expected) {
            assert_eq!(row, &exp.iter().map(|&v| int(v)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn ballot_probability_examples() {
        let r = |a: i64, b: i64| BigRational::new(int(a), int(b));
        assert_eq!(ballot_probability(2, 1).unwrap(), r(1, 3));
        assert_eq!(ballot_probability(6, 4).unwrap(), r(1, 5));
        for a in 1..20 {
            assert_eq!(ballot_probability(a, 0).unwrap(), r(1, 1));
        }
        for a in 1..25u64 {
            for b in 0..a {
                assert_eq!(
                    ballot_probability(a, b).unwrap(),
                    r((a - b) as i64, (a + b) as i64)
                );
            }
        }
        assert_eq!(
            ballot_probability(3, 3),
            Err(Error::BallotOrder { a: 3, b: 3 })
        );
        assert!(ballot_probability(1, 4).is_err());
    }

    #[test]
    fn ballot_recurrence_and_row_sums() {
        for n in 1..=30i64 {
            for k in 0..n {
                if n > 1 {
                    assert_eq!(
                        ballot(n, k),
                        ballot(n - 1, k) + ballot(n, k - 1),
                        "({n},{k})"
                    );
                }
            }
            let row: BigInt = (0..n).map(|k| ballot(n, k)).sum();
            assert_eq!(row, catalan(n as u64));
        }
    }

    #[test]
    fn b3_examples() {
        assert_eq!(b3_closed(5, 1, 1), int(15));
        assert_eq!(b3_closed(4, 1, 2), int(10));
        assert_eq!(b3_closed(5, 1, 2), int(30));
        assert_eq!(b3_closed(3, 2, 1), int(0));
        for n in 1..=25 {
            for k in 0..n {
                assert_eq!(b3_closed(n, k, 0), ballot(n, k));
                assert_eq!(b3_closed(n, 0, k), ballot(n, k));
            }
        }
    }

    #[test]
    fn b3_recurrence() {
        for n in 2..=25i64 {
            for k in 0..n {
                for l in 0..n - k {
                    let rhs =
                        b3_closed(n - 1, k, l) + b3_closed(n, k - 1, l) + b3_closed(n, k, l - 1)
                            - b3_closed(n, k - 1, l - 1);
                    assert_eq!(b3_closed(n, k, l), rhs, "({n},{k},{l})");
                }
            }
        }
    }

    #[test]
    fn b3_symmetric_rewriting() {
        for n in 1..=20i64 {
            for k in 0..=n {
                for l in 0..=n {
                    let sym = if k + l < n {
                        exact_div(
                            &(binomial((n + k - 1) as u64, k)
                                * binomial((n + l - 1) as u64, l)
                                * (n - k - l)),
                            &int(n),
                        )
                    } else {
                        int(0)
                    };
                    assert_eq!(b3_closed(n, k, l), sym);
                    assert_eq!(b3_closed(n, k, l), b3_closed(n, l, k));
                }
            }
        }
    }

    #[test]
    fn bp_examples() {
        for n in 1..=8u64 {
            for k in 0..n {
                for l in 0..n - k {
                    let idx = StatIndex::new(3, n, vec![k, l]).unwrap();
                    assert_eq!(bp_closed(&idx), b3_closed(n as i64, k as i64, l as i64));
                }
            }
        }
        let idx = StatIndex::new(4, 3, vec![1, 1, 0]).unwrap();
        assert_eq!(bp_closed(&idx), int(3));
        for p in 2..=6u32 {
            for n in 1..=20u64 {
                for k in 0..n + 2 {
                    let mut ks = vec![0; (p - 1) as usize];
                    ks[0] = k;
                    let idx = StatIndex::new(p, n, ks).unwrap();
                    assert_eq!(bp_closed(&idx), ballot(n as i64, k as i64));
                }
            }
        }
    }

    #[test]
    fn bp_layer_sums() {
        fn compositions(d: usize, bound: u64, out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>) {
            if cur.len() == d {
                out.push(cur.clone());
                return;
            }
            let used: u64 = cur.iter().sum();
            for k in 0..=bound - used {
                cur.push(k);
                compositions(d, bound, out, cur);
                cur.pop();
            }
        }
        for p in 2..=6u32 {
            for n in 1..=12u64 {
                let mut all = Vec::new();
                compositions((p - 1) as usize, n - 1, &mut all, &mut Vec::new());
                let total: BigInt = all
                    .into_iter()
                    .map(|ks| bp_closed(&StatIndex::new(p, n, ks).unwrap()))
                    .sum();
                assert_eq!(total, fuss_catalan(p, n), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn stat_index_validation() {
        assert_eq!(StatIndex::new(1, 3, vec![]), Err(Error::InvalidArity(1)));
        assert_eq!(StatIndex::new(3, 0, vec![0, 0]), Err(Error::ZeroLayer));
        assert_eq!(
            StatIndex::new(3, 2, vec![0]),
            Err(Error::IndexLength {
                p: 3,
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn b3_prime_examples() {
        assert_eq!(b3_prime(3, 2, 2), int(-12));
        assert_eq!(b3_prime(3, 0, 4), int(-5));
        assert_eq!(b3_prime(3, 4, 4), int(-375));
        assert_eq!(b3_prime(0, 1, 1), int(0));
        assert_eq!(b3_prime(2, -1, 0), int(0));
        for n in 1..=12 {
            for k in 0..n {
                for l in 0..n - k {
                    assert_eq!(b3_prime(n, k, l), b3_closed(n, k, l));
                }
            }
        }
    }

    #[test]
    fn correction_table() {
        assert_eq!(b3_prime_correction(1, 0, 0), int(1));
        assert_eq!(b3_prime_correction(0, 1, 0), int(-1));
        assert_eq!(b3_prime_correction(0, 0, 1), int(-1));
        assert_eq!(b3_prime_correction(0, 1, 1), int(2));
        assert_eq!(b3_prime_correction(2, 3, 1), int(0));
    }

    /// Value of the corrected recurrence's solution at any integer point.
    fn prime_ext(n: i64, k: i64, l: i64) -> BigInt {
        match n {
            n if n < 0 => int(0),
            0 => b3_prime_boundary(k, l),
            _ => b3_prime(n, k, l),
        }
    }

    #[test]
    fn b3_prime_corrected_recurrence() {
        for n in 0..=12i64 {
            for k in 0..=12 {
                for l in 0..=12 {
                    let rhs =
                        prime_ext(n - 1, k, l) + prime_ext(n, k - 1, l) + prime_ext(n, k, l - 1)
                            - prime_ext(n, k - 1, l - 1)
                            + b3_prime_correction(n, k, l);
                    assert_eq!(prime_ext(n, k, l), rhs, "({n},{k},{l})");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn b3_symmetry(n in 1i64..40, k in 0i64..45, l in 0i64..45) {
            prop_assert_eq!(b3_closed(n, k, l), b3_closed(n, l, k));
            prop_assert_eq!(b3_prime(n, k, l), b3_prime(n, l, k));
        }

        #[test]
        fn bp_permutation_invariant(n in 1u64..15, mut ks in proptest::collection::vec(0u64..8, 1..6), rot in 0usize..6) {
            let p = ks.len() as u32 + 1;
            let base = bp_closed(&StatIndex::new(p, n, ks.clone()).unwrap());
            let r = rot % ks.len();
            ks.rotate_left(r);
            prop_assert_eq!(&base, &bp_closed(&StatIndex::new(p, n, ks.clone()).unwrap()));
            ks.reverse();
            prop_assert_eq!(&base, &bp_closed(&StatIndex::new(p, n, ks).unwrap()));
        }
    }
}
