//! Closed-form fractional jump of the companion matrix of `T^p - T - c`.
//!
//! The jump acts on `A^{p-1}`. Piece `i` applies on
//! `U_i = {x : b^(i)(x) != 0, b^(j)(x) = 0 for j < i}` with denominators
//!
//! ```text
//! b^(i)   = x_{p-i}        1 <= i <= p-2
//! b^(p-1) = x_1 + 1
//! b^(p)   = x_{p-1} + c
//! ```
//!
//! so `U_p = {(-1, 0, ..., 0)}`. Numerators are read from the rows of `M^i`,
//! which for `i < p` is `[[0, J_i(c)^t], [Id_{p-i}, E^{(1,i)}]]` and for
//! `i = p` is `M + c Id`. Evaluation never touches a matrix; every field
//! operation it performs is tallied in [`CostCounters`].
//!
//! For `p = 2` the rows `2` and `p` of `M` coincide and `b^(2)` is `x_1`
//! rather than `x_1 + c`; this module uses the value read from `M^2`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::fjump::{affine_points, affine_space_size, Budget, ProjectiveAutomorphism};
use crate::linalg::companion;
use crate::poly::Poly;

/// Field operations spent on one evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CostCounters {
    pub sums: u64,
    pub mults: u64,
    pub invs: u64,
    /// Piece used, in `1..=p`.
    pub piece_index: usize,
}

impl CostCounters {
    pub fn total(&self) -> u64 {
        self.sums + self.mults + self.invs
    }
}

/// Field arithmetic that counts what it does.
struct Tally<'a> {
    f: &'a PrimeField,
    sums: u64,
    mults: u64,
}

impl Tally<'_> {
    fn add(&mut self, a: u32, b: u32) -> u32 {
        self.sums += 1;
        self.f.add(a, b)
    }

    fn mul(&mut self, a: u32, b: u32) -> u32 {
        self.mults += 1;
        self.f.mul(a, b)
    }
}

/// The Artin-Schreier jump for `(p, c)`, `c != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinSchreierJump {
    field: PrimeField,
    c: u32,
}

impl ArtinSchreierJump {
    pub fn new(field: &PrimeField, c: u64) -> Result<Self> {
        if c == 0 || c >= field.order() {
            return Err(Error::Parameter(format!(
                "c must lie in 1..{}, got {c}",
                field.modulus()
            )));
        }
        Ok(ArtinSchreierJump {
            field: field.clone(),
            c: c as u32,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    /// Dimension of the affine space, `p - 1`.
    pub fn n(&self) -> usize {
        self.p() as usize - 1
    }

    /// `T^p - T - c`.
    pub fn polynomial(&self) -> Poly {
        Poly::artin_schreier(&self.field, self.c)
    }

    /// `[M]` with `M` the companion matrix of the polynomial.
    pub fn automorphism(&self) -> ProjectiveAutomorphism {
        let m = companion(&self.polynomial()).expect("monic of degree p");
        ProjectiveAutomorphism::new(m).expect("companion of a polynomial with c != 0 is invertible")
    }

    fn check_point(&self, x: &[u32]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::Parameter(format!(
                "point of length {} for a jump on A^{}",
                x.len(),
                self.n()
            )));
        }
        if let Some(&bad) = x.iter().find(|&&v| v >= self.p()) {
            return Err(Error::Parameter(format!(
                "coordinate {bad} not reduced mod {}",
                self.p()
            )));
        }
        Ok(())
    }

    /// Smallest `i` with `b^(i)(x) != 0`.
    pub fn piece_index(&self, x: &[u32]) -> Result<usize> {
        self.check_point(x)?;
        Ok(self.piece_index_unchecked(x))
    }

    fn piece_index_unchecked(&self, x: &[u32]) -> usize {
        let p = self.p() as usize;
        // b^(i) = x_{p-i}, i.e. x[p-i-1], for i <= p-2
        if let Some(i) = (1..=p.saturating_sub(2)).find(|&i| x[p - i - 1] != 0) {
            return i;
        }
        if self.field.add(x[0], 1) != 0 {
            p - 1
        } else {
            p
        }
    }

    /// `psi(x)` from the closed-form pieces, with operation counts.
    pub fn step(&self, x: &[u32]) -> Result<(Vec<u32>, CostCounters)> {
        self.check_point(x)?;
        Ok(self.step_unchecked(x))
    }

    fn step_unchecked(&self, x: &[u32]) -> (Vec<u32>, CostCounters) {
        let f = &self.field;
        let c = self.c;
        let p = self.p() as usize;
        let n = p - 1;
        let i = self.piece_index_unchecked(x);
        let mut ops = Tally {
            f,
            sums: 0,
            mults: 0,
        };
        // one-based coordinate access
        let xs = |k: usize| x[k - 1];

        let b = if i <= p.saturating_sub(2) {
            xs(p - i)
        } else if i == p - 1 {
            ops.add(xs(1), 1)
        } else if p == 2 {
            xs(1)
        } else {
            ops.add(xs(p - 1), c)
        };

        let mut a = vec![0u32; n];
        if i == p {
            a[0] = {
                let cx = ops.mul(c, xs(1));
                ops.add(cx, c)
            };
            if n >= 2 {
                let cx = ops.mul(c, xs(2));
                let s = ops.add(xs(1), cx);
                a[1] = ops.add(s, 1);
            }
            for j in 3..=n {
                let cx = ops.mul(c, xs(j));
                a[j - 1] = ops.add(xs(j - 1), cx);
            }
        } else if i == 1 {
            a[0] = c;
            if n >= 2 {
                a[1] = ops.add(xs(1), 1);
            }
            for j in 3..=n {
                a[j - 1] = xs(j - 1);
            }
        } else {
            a[0] = ops.mul(c, xs(p - i + 1));
            for j in 2..i {
                let cx = ops.mul(c, xs(p - i + j));
                a[j - 1] = ops.add(xs(p - i + j - 1), cx);
            }
            a[i - 1] = ops.add(xs(p - 1), c);
            if i < n {
                a[i] = ops.add(xs(1), 1);
            }
            for j in i + 2..=n {
                a[j - 1] = xs(j - i);
            }
        }

        let t = f.inv(b).expect("selected piece has a nonzero denominator");
        let y = a.iter().map(|&aj| ops.mul(aj, t)).collect();
        let counters = CostCounters {
            sums: ops.sums,
            mults: ops.mults,
            invs: 1,
            piece_index: i,
        };
        (y, counters)
    }

    /// Iterates the jump starting after `seed`.
    pub fn orbit(&self, seed: Vec<u32>) -> Result<AsOrbit<'_>> {
        self.check_point(&seed)?;
        Ok(AsOrbit {
            jump: self,
            current: seed,
        })
    }

    fn check_enumerable(&self, budget: &Budget) -> Result<u64> {
        match affine_space_size(self.p() as u64, self.n()) {
            Some(s) if s <= budget.enumeration => Ok(s),
            _ => Err(Error::Resource(format!(
                "{}^{} points exceed the enumeration budget of {}",
                self.p(),
                self.n(),
                budget.enumeration
            ))),
        }
    }

    /// `|U_1|, ..., |U_p|` by exhaustive enumeration.
    pub fn region_census(&self, budget: &Budget) -> Result<Vec<u64>> {
        self.check_enumerable(budget)?;
        let mut census = vec![0u64; self.p() as usize];
        for x in affine_points(self.p(), self.n()) {
            census[self.piece_index_unchecked(&x) - 1] += 1;
        }
        Ok(census)
    }

    /// Exact average of `sums + mults + invs` over every affine point.
    pub fn expected_cost_empirical(&self, budget: &Budget) -> Result<BigRational> {
        let size = self.check_enumerable(budget)?;
        let total: u64 = affine_points(self.p(), self.n())
            .map(|x| self.step_unchecked(&x).1.total())
            .sum();
        Ok(BigRational::new(BigInt::from(total), BigInt::from(size)))
    }
}

/// Successive images under an [`ArtinSchreierJump`].
pub struct AsOrbit<'a> {
    jump: &'a ArtinSchreierJump,
    current: Vec<u32>,
}

impl Iterator for AsOrbit<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let (y, _) = self.jump.step_unchecked(&self.current);
        self.current = y.clone();
        Some(y)
    }
}

/// `c_i = p + 2i - 1` for `i < p`, `c_p = 3p`.
pub fn piece_cost(p: u64, i: u64) -> u64 {
    if i < p {
        p + 2 * i - 1
    } else {
        3 * p
    }
}

/// Probability of landing in `U_i` for a uniform point: `p^{-i}(p-1)` for
/// `i < p` and `p^{1-p}` for `i = p`.
pub fn region_probability(p: u64, i: u64) -> BigRational {
    let pp = |k: u64| BigInt::from(num_traits::pow(BigUint::from(p), k as usize));
    if i < p {
        BigRational::new(BigInt::from(p - 1), pp(i))
    } else {
        BigRational::new(BigInt::one(), pp(p - 1))
    }
}

/// `sum_i p_i c_i`.
pub fn expected_cost_by_regions(p: u64) -> BigRational {
    (1..=p).fold(BigRational::zero(), |acc, i| {
        acc + region_probability(p, i) * BigRational::from_integer(BigInt::from(piece_cost(p, i)))
    })
}

/// `3p^{2-p} - (3p^3 - (p^2+1)p^p - 4p^2 + 3p) / (p^p (p-1))`.
pub fn expected_cost_formula(p: u64) -> BigRational {
    let pi = BigInt::from(p);
    let p_p = num_traits::pow(pi.clone(), p as usize);
    let first = BigRational::new(BigInt::from(3) * &pi * &pi, p_p.clone());
    let numer = BigInt::from(3) * num_traits::pow(pi.clone(), 3)
        - (&pi * &pi + 1) * &p_p
        - BigInt::from(4) * &pi * &pi
        + BigInt::from(3) * &pi;
    let denom = p_p * (pi - 1);
    first - BigRational::new(numer, denom)
}
