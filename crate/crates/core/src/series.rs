//! Truncated power series in `t, x, y` with exact integer coefficients, and
//! the generating functions of `B_3` and `B'_3` built from them.
//!
//! Each variable has its own cap; any monomial with an exponent above its
//! cap is dropped. Since exponents only grow under multiplication, every
//! retained coefficient of a product is exact.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Per-variable maximum exponents `(t, x, y)`.
pub type Caps = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    caps: Caps,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(caps: Caps) -> Self {
        let len = (caps.0 + 1) * (caps.1 + 1) * (caps.2 + 1);
        TruncatedSeries {
            caps,
            coeffs: vec![BigInt::zero(); len],
        }
    }

    pub fn constant(caps: Caps, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(caps);
        s.coeffs[0] = c.into();
        s
    }

    pub fn one(caps: Caps) -> Self {
        Self::constant(caps, 1)
    }

    /// `c * t^i x^j y^k`, or zero if the monomial exceeds the caps.
    pub fn monomial(caps: Caps, (i, j, k): (usize, usize, usize), c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(caps);
        if i <= caps.0 && j <= caps.1 && k <= caps.2 {
            let o = s.offset(i, j, k);
            s.coeffs[o] = c.into();
        }
        s
    }

    pub fn t(caps: Caps) -> Self {
        Self::monomial(caps, (1, 0, 0), 1)
    }

    pub fn x(caps: Caps) -> Self {
        Self::monomial(caps, (0, 1, 0), 1)
    }

    pub fn y(caps: Caps) -> Self {
        Self::monomial(caps, (0, 0, 1), 1)
    }

    pub fn from_fn(caps: Caps, mut f: impl FnMut(usize, usize, usize) -> BigInt) -> Self {
        let mut s = Self::zero(caps);
        for i in 0..=caps.0 {
            for j in 0..=caps.1 {
                for k in 0..=caps.2 {
                    let o = s.offset(i, j, k);
                    s.coeffs[o] = f(i, j, k);
                }
            }
        }
        s
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * (self.caps.1 + 1) + j) * (self.caps.2 + 1) + k
    }

    fn unoffset(&self, o: usize) -> (usize, usize, usize) {
        let k = o % (self.caps.2 + 1);
        let rest = o / (self.caps.2 + 1);
        (rest / (self.caps.1 + 1), rest % (self.caps.1 + 1), k)
    }

    fn check_caps(&self, other: &Self) -> Result<()> {
        if self.caps != other.caps {
            return Err(Error::CapMismatch(self.caps, other.caps));
        }
        Ok(())
    }

    /// Coefficient of `t^i x^j y^k`. Asking beyond the caps is an error,
    /// not zero.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Result<&BigInt> {
        if i > self.caps.0 || j > self.caps.1 || k > self.caps.2 {
            return Err(Error::OutOfCaps(i, j, k));
        }
        Ok(&self.coeffs[self.offset(i, j, k)])
    }

    pub fn coefficient_mut(&mut self, i: usize, j: usize, k: usize) -> Result<&mut BigInt> {
        if i > self.caps.0 || j > self.caps.1 || k > self.caps.2 {
            return Err(Error::OutOfCaps(i, j, k));
        }
        let o = self.offset(i, j, k);
        Ok(&mut self.coeffs[o])
    }

    /// Nonzero terms in lexicographic `(i, j, k)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize, usize), &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(o, c)| (self.unoffset(o), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_caps(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncatedSeries {
            caps: self.caps,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_caps(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncatedSeries {
            caps: self.caps,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            caps: self.caps,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_caps(other)?;
        let mut out = Self::zero(self.caps);
        let lhs: Vec<_> = self.terms().collect();
        let rhs: Vec<_> = other.terms().collect();
        for &((i1, j1, k1), a) in &lhs {
            for &((i2, j2, k2), b) in &rhs {
                let (i, j, k) = (i1 + i2, j1 + j2, k1 + k2);
                if i > self.caps.0 || j > self.caps.1 || k > self.caps.2 {
                    continue;
                }
                let o = out.offset(i, j, k);
                out.coeffs[o] += a * b;
            }
        }
        Ok(out)
    }

    /// Multiplies by `t^di x^dj y^dk`.
    pub fn shift(&self, (di, dj, dk): (usize, usize, usize)) -> Self {
        let mut out = Self::zero(self.caps);
        for ((i, j, k), c) in self.terms() {
            if i + di <= self.caps.0 && j + dj <= self.caps.1 && k + dk <= self.caps.2 {
                let o = out.offset(i + di, j + dj, k + dk);
                out.coeffs[o] = c.clone();
            }
        }
        out
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Result<Self> {
        if self.caps.1 != self.caps.2 {
            return Err(Error::AsymmetricCaps(self.caps.1, self.caps.2));
        }
        let mut out = Self::zero(self.caps);
        for ((i, j, k), c) in self.terms() {
            let o = out.offset(i, k, j);
            out.coeffs[o] = c.clone();
        }
        Ok(out)
    }

    /// Multiplicative inverse for a series with constant term `+1` or `-1`,
    /// solved degree by degree in total degree.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if !(a0.abs().is_one()) {
            return Err(Error::NotInvertible(a0.to_string()));
        }
        let (ct, cx, cy) = self.caps;
        let mut b = Self::zero(self.caps);
        b.coeffs[0] = a0.clone();
        let support: Vec<_> = self.terms().filter(|(m, _)| *m != (0, 0, 0)).collect();
        for total in 1..=ct + cx + cy {
            for i in 0..=ct.min(total) {
                for j in 0..=cx.min(total - i) {
                    let k = total - i - j;
                    if k > cy {
                        continue;
                    }
                    let mut acc = BigInt::zero();
                    for &((si, sj, sk), a) in &support {
                        if si <= i && sj <= j && sk <= k {
                            acc += a * &b.coeffs[b.offset(i - si, j - sj, k - sk)];
                        }
                    }
                    // a0 * b_m = -acc, and a0 is its own inverse
                    let o = b.offset(i, j, k);
                    b.coeffs[o] = -(acc * a0);
                }
            }
        }
        Ok(b)
    }

    /// Coefficient table as rows `(i, j, k, coefficient)`, zeros included.
    pub fn table(&self) -> Vec<(usize, usize, usize, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(o, c)| {
                let (i, j, k) = self.unoffset(o);
                (i, j, k, c.clone())
            })
            .collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j, k), c) in self.terms() {
            let mut vars = Vec::new();
            for (name, e) in [("t", i), ("x", j), ("y", k)] {
                match e {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{name}^{e}")),
                }
            }
            let mag = c.abs();
            let body = match (vars.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => vars.join("*"),
                (false, false) => format!("{mag}*{}", vars.join("*")),
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        let (ct, cx, cy) = self.caps;
        write!(f, " + O(t^{}, x^{}, y^{})", ct + 1, cx + 1, cy + 1)
    }
}

/// Solves `G = 1 + t x G(t,x,y)^2 G(t,y,x)` by fixed-point iteration from
/// `G = 1`. Each step fixes one more power of `t`; the iteration must become
/// stationary within `d_t + 1` steps.
pub fn solve_g(caps: Caps) -> Result<TruncatedSeries> {
    let one = TruncatedSeries::one(caps);
    let mut g = one.clone();
    let max_steps = caps.0 + 1;
    for _ in 0..max_steps {
        let next = one.add(&g.mul(&g)?.mul(&g.swap_xy()?)?.shift((1, 1, 0)))?;
        if next == g {
            return Ok(g);
        }
        g = next;
    }
    Err(Error::NonConvergence(max_steps))
}

/// `t x^2 G^3 + (y - x) G^2 + (x - 2y) G + y`, which vanishes for the
/// generating function `G`.
pub fn cubic_residual(g: &TruncatedSeries) -> Result<TruncatedSeries> {
    let caps = g.caps();
    let x = TruncatedSeries::x(caps);
    let y = TruncatedSeries::y(caps);
    let g2 = g.mul(g)?;
    let g3 = g2.mul(g)?;
    let c2 = y.sub(&x)?;
    let c1 = x.sub(&y.add(&y)?)?;
    g3.shift((1, 2, 0))
        .add(&c2.mul(&g2)?)?
        .add(&c1.mul(g)?)?
        .add(&y)
}

/// `G - 1 - t x G(t,x,y)^2 G(t,y,x)`.
pub fn g_equation_residual(g: &TruncatedSeries) -> Result<TruncatedSeries> {
    let rhs =
        TruncatedSeries::one(g.caps()).add(&g.mul(g)?.mul(&g.swap_xy()?)?.shift((1, 1, 0)))?;
    g.sub(&rhs)
}

/// `F = 1 / (1 - t G(t,x,y) G(t,y,x))`.
pub fn build_f(g: &TruncatedSeries) -> Result<TruncatedSeries> {
    let one = TruncatedSeries::one(g.caps());
    one.sub(&g.mul(&g.swap_xy()?)?.shift((1, 0, 0)))?
        .reciprocal()
}

/// `F - 1 - G(t,x,y) G(t,y,x) t F`.
pub fn f_equation_residual(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    let rhs =
        TruncatedSeries::one(f.caps()).add(&g.mul(&g.swap_xy()?)?.mul(f)?.shift((1, 0, 0)))?;
    f.sub(&rhs)
}

/// `(t - x - y + 2xy) / (1 - t - x - y + xy)`, the rational generating
/// function of the extended array `B'_3`.
pub fn rational_b3prime(caps: Caps) -> Result<TruncatedSeries> {
    let t = TruncatedSeries::t(caps);
    let x = TruncatedSeries::x(caps);
    let y = TruncatedSeries::y(caps);
    let xy = x.mul(&y)?;
    let num = t.sub(&x)?.sub(&y)?.add(&xy.add(&xy)?)?;
    let den = TruncatedSeries::one(caps)
        .sub(&t)?
        .sub(&x)?
        .sub(&y)?
        .add(&xy)?;
    num.mul(&den.reciprocal()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{b3_closed, b3_prime, b3_prime_boundary, b3_prime_correction};

    const CAPS: Caps = (8, 8, 8);

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn ring_examples() {
        let c = (3, 3, 3);
        let one = TruncatedSeries::one(c);
        let t = TruncatedSeries::t(c);
        let x = TruncatedSeries::x(c);
        let y = TruncatedSeries::y(c);
        let lhs = one.add(&t).unwrap().mul(&one.sub(&t).unwrap()).unwrap();
        assert_eq!(lhs, one.sub(&t.mul(&t).unwrap()).unwrap());
        assert_eq!(x.mul(&one).unwrap(), x);
        let diff = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        assert_eq!(diff, x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap());
        assert!(matches!(
            x.add(&TruncatedSeries::x((3, 3, 2))),
            Err(Error::CapMismatch(..))
        ));
        // t^3 * t = 0 under cap 3
        assert!(t.shift((3, 0, 0)).is_zero());
        assert!(t
            .mul(&t)
            .unwrap()
            .mul(&t)
            .unwrap()
            .mul(&t)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn swap_examples() {
        let c = (2, 3, 3);
        let s = TruncatedSeries::from_fn(c, |i, j, k| int((i * 100 + j * 10 + k) as i64));
        assert_eq!(s.swap_xy().unwrap().swap_xy().unwrap(), s);
        assert_eq!(
            TruncatedSeries::x(c).swap_xy().unwrap(),
            TruncatedSeries::y(c)
        );
        let sym = TruncatedSeries::x(c).add(&TruncatedSeries::y(c)).unwrap();
        assert_eq!(sym.swap_xy().unwrap(), sym);
        assert_eq!(
            TruncatedSeries::x((2, 3, 2)).swap_xy(),
            Err(Error::AsymmetricCaps(3, 2))
        );
    }

    #[test]
    fn reciprocal_examples() {
        let c = (6, 2, 2);
        let one = TruncatedSeries::one(c);
        let geo = one
            .sub(&TruncatedSeries::t(c))
            .unwrap()
            .reciprocal()
            .unwrap();
        for i in 0..=6 {
            assert_eq!(geo.coefficient(i, 0, 0).unwrap(), &int(1));
        }
        let a = TruncatedSeries::from_fn(c, |i, j, k| {
            if (i, j, k) == (0, 0, 0) {
                int(-1)
            } else {
                int((i + 2 * j) as i64 - k as i64)
            }
        });
        let inv = a.reciprocal().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), one);
        assert_eq!(inv.reciprocal().unwrap(), a);
        assert_eq!(
            TruncatedSeries::constant(c, 2).reciprocal(),
            Err(Error::NotInvertible("2".into()))
        );
    }

    #[test]
    fn coefficient_out_of_caps_is_an_error() {
        let s = TruncatedSeries::one(CAPS);
        assert_eq!(s.coefficient(9, 0, 0), Err(Error::OutOfCaps(9, 0, 0)));
        assert_eq!(s.coefficient(0, 0, 0).unwrap(), &int(1));
    }

    #[test]
    fn g_examples() {
        let g = solve_g(CAPS).unwrap();
        assert_eq!(g.coefficient(0, 0, 0).unwrap(), &int(1));
        assert_eq!(g.coefficient(2, 2, 0).unwrap(), &int(2));
        assert!(cubic_residual(&g).unwrap().is_zero());
        assert!(g_equation_residual(&g).unwrap().is_zero());
        // the same equation with x and y exchanged
        let gs = g.swap_xy().unwrap();
        let rhs = TruncatedSeries::one(CAPS)
            .add(&gs.mul(&g).unwrap().mul(&gs).unwrap().shift((1, 0, 1)))
            .unwrap();
        assert_eq!(gs, rhs);
    }

    #[test]
    fn g_collapses_k() {
        let g = solve_g(CAPS).unwrap();
        for ((i, j, k), _) in g.terms() {
            assert_eq!(j + k, i, "stray term t^{i} x^{j} y^{k}");
        }
        for n in 1..=8i64 {
            for l in 0..n {
                let want: BigInt = (0..n - l).map(|k| b3_closed(n, k, l)).sum();
                let got = g
                    .coefficient(n as usize, (n - l) as usize, l as usize)
                    .unwrap();
                assert_eq!(got, &want, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn f_examples() {
        let g = solve_g(CAPS).unwrap();
        let f = build_f(&g).unwrap();
        assert_eq!(f.coefficient(1, 0, 0).unwrap(), &int(1));
        assert_eq!(f.coefficient(3, 1, 1).unwrap(), &int(3));
        assert!(f_equation_residual(&f, &g).unwrap().is_zero());
        for n in 0..=8i64 {
            for k in 0..=8i64 {
                for l in 0..=8i64 {
                    let want = if n == 0 {
                        int(i64::from(k == 0 && l == 0))
                    } else {
                        b3_closed(n, k, l)
                    };
                    assert_eq!(
                        f.coefficient(n as usize, k as usize, l as usize).unwrap(),
                        &want
                    );
                }
            }
        }
    }

    #[test]
    fn solve_g_small_orders() {
        let g = solve_g((1, 1, 1)).unwrap();
        assert_eq!(g.to_string(), "1 + t*x + O(t^2, x^2, y^2)");
        let f = build_f(&g).unwrap();
        assert_eq!(f.coefficient(1, 0, 0).unwrap(), &int(1));
    }

    #[test]
    fn rational_series() {
        let s = rational_b3prime(CAPS).unwrap();
        assert_eq!(s.coefficient(3, 2, 2).unwrap(), &int(-12));
        assert_eq!(s.coefficient(1, 0, 0).unwrap(), &int(1));
        for i in 0..=8i64 {
            for j in 0..=8i64 {
                for k in 0..=8i64 {
                    let want = if i == 0 {
                        b3_prime_boundary(j, k)
                    } else {
                        b3_prime(i, j, k)
                    };
                    assert_eq!(
                        s.coefficient(i as usize, j as usize, k as usize).unwrap(),
                        &want
                    );
                }
            }
        }
        let at = |i: i64, j: i64, k: i64| -> BigInt {
            if i < 0 || j < 0 || k < 0 {
                int(0)
            } else {
                s.coefficient(i as usize, j as usize, k as usize)
                    .unwrap()
                    .clone()
            }
        };
        for i in 0..=8 {
            for j in 0..=8 {
                for k in 0..=8 {
                    let rhs = at(i - 1, j, k) + at(i, j - 1, k) + at(i, j, k - 1)
                        - at(i, j - 1, k - 1)
                        + b3_prime_correction(i, j, k);
                    assert_eq!(at(i, j, k), rhs);
                }
            }
        }
    }

    #[test]
    fn display() {
        let c = (2, 2, 2);
        let s = TruncatedSeries::one(c)
            .sub(&TruncatedSeries::monomial(c, (1, 2, 0), 3))
            .unwrap()
            .add(&TruncatedSeries::y(c))
            .unwrap();
        assert_eq!(s.to_string(), "1 + y - 3*t*x^2 + O(t^3, x^3, y^3)");
        assert_eq!(TruncatedSeries::zero(c).to_string(), "0 + O(t^3, x^3, y^3)");
    }

    mod ring_laws {
        use super::*;
        use proptest::prelude::*;

        fn series() -> impl Strategy<Value = TruncatedSeries> {
            proptest::collection::vec(-5i64..=5, 27).prop_map(|v| {
                let mut it = v.into_iter();
                TruncatedSeries::from_fn((2, 2, 2), |_, _, _| BigInt::from(it.next().unwrap()))
            })
        }

        proptest! {
            #[test]
            fn associative(a in series(), b in series(), c in series()) {
                prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
                prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            }

            #[test]
            fn commutative_and_distributive(a in series(), b in series(), c in series()) {
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
                prop_assert!(a.add(&a.neg()).unwrap().is_zero());
            }
        }
    }
}
