//! Arithmetic in the prime field `F_p`.
//!
//! [`PrimeField`] carries the modulus and, optionally, precomputed
//! addition/multiplication/inversion tables for `p <= 256`. Polynomials and
//! matrices store bare residues (`u32` in `[0, p)`) and route every operation
//! through the field, so the table backend is used wherever it is enabled.
//!
//! [`Fp`] is a standalone element that remembers its modulus; mixing
//! elements of different fields is reported as an error.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Exclusive upper bound on supported moduli.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Largest modulus for which lookup tables may be built.
pub const MAX_TABLE_MODULUS: u64 = 1 << 8;

/// Trial-division primality check; `n < 2^31` keeps this cheap.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug)]
struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl Tables {
    fn build(p: u32) -> Self {
        let n = p as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        let mut inv = vec![0u8; n];
        for a in 0..p {
            for b in 0..p {
                let idx = (a * p + b) as usize;
                add[idx] = ((a + b) % p) as u8;
                mul[idx] = ((a * b) % p) as u8;
            }
            if a != 0 {
                inv[a as usize] = inv_euclid(a, p) as u8;
            }
        }
        Tables { add, mul, inv }
    }
}

/// Inverse of a nonzero residue by the extended Euclidean algorithm.
fn inv_euclid(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u32
}

/// Parameters of a prime field: the modulus and the arithmetic backend.
///
/// Cloning is cheap (the tables are shared).
#[derive(Clone)]
pub struct PrimeField {
    p: u32,
    tables: Option<Arc<Tables>>,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrimeField")
            .field("p", &self.p)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl PrimeField {
    /// Field with computed arithmetic. `p` must be a prime below `2^31`.
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::Parameter(format!(
                "modulus {p} out of range (must be < 2^31)"
            )));
        }
        if !is_prime_u64(p) {
            return Err(Error::Parameter(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField {
            p: p as u32,
            tables: None,
        })
    }

    /// Field backed by lookup tables for `+`, `*` and inversion.
    pub fn with_tables(p: u64) -> Result<Self> {
        if p > MAX_TABLE_MODULUS {
            return Err(Error::Parameter(format!(
                "table backend requires p <= {MAX_TABLE_MODULUS}, got {p}"
            )));
        }
        let mut field = Self::new(p)?;
        field.tables = Some(Arc::new(Tables::build(field.p)));
        Ok(field)
    }

    /// Table-backed when `p` is small enough, computed otherwise.
    pub fn auto(p: u64) -> Result<Self> {
        if p <= MAX_TABLE_MODULUS {
            Self::with_tables(p)
        } else {
            Self::new(p)
        }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Number of field elements, `p`, as `u64`.
    #[inline]
    pub fn order(&self) -> u64 {
        self.p as u64
    }

    pub fn is_table_backed(&self) -> bool {
        self.tables.is_some()
    }

    /// The same field with computed arithmetic.
    pub fn computed(&self) -> Self {
        PrimeField {
            p: self.p,
            tables: None,
        }
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    #[inline]
    pub fn reduce_signed(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn element(&self, v: u64) -> Fp {
        Fp {
            value: self.reduce(v),
            modulus: self.p,
        }
    }

    pub fn element_signed(&self, v: i64) -> Fp {
        Fp {
            value: self.reduce_signed(v),
            modulus: self.p,
        }
    }

    /// Residue of an element, checking that it belongs to this field.
    pub fn residue(&self, a: Fp) -> Result<u32> {
        if a.modulus != self.p {
            return Err(Error::Parameter(format!(
                "element of F_{} used in F_{}",
                a.modulus, self.p
            )));
        }
        Ok(a.value)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.p && b < self.p);
        match &self.tables {
            Some(t) => t.add[(a * self.p + b) as usize] as u32,
            None => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        debug_assert!(a < self.p);
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.p && b < self.p);
        match &self.tables {
            Some(t) => t.mul[(a * self.p + b) as usize] as u32,
            None => ((a as u64 * b as u64) % self.p as u64) as u32,
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> Result<u32> {
        debug_assert!(a < self.p);
        if a == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        Ok(match &self.tables {
            Some(t) => t.inv[a as usize] as u32,
            None => inv_euclid(a, self.p),
        })
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// An element of `F_p`, always reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Fp {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, rhs: Fp) -> Result<u64> {
        if self.modulus != rhs.modulus {
            return Err(Error::Parameter(format!(
                "mismatched moduli {} and {}",
                self.modulus, rhs.modulus
            )));
        }
        Ok(self.modulus as u64)
    }

    pub fn add(self, rhs: Fp) -> Result<Fp> {
        let p = self.same_field(rhs)?;
        Ok(Fp {
            value: ((self.value as u64 + rhs.value as u64) % p) as u32,
            modulus: self.modulus,
        })
    }

    pub fn sub(self, rhs: Fp) -> Result<Fp> {
        self.add(rhs.neg())
    }

    pub fn mul(self, rhs: Fp) -> Result<Fp> {
        let p = self.same_field(rhs)?;
        Ok(Fp {
            value: ((self.value as u64 * rhs.value as u64) % p) as u32,
            modulus: self.modulus,
        })
    }

    pub fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }

    pub fn inv(self) -> Result<Fp> {
        if self.value == 0 {
            return Err(Error::DivisionByZero(self.modulus));
        }
        Ok(Fp {
            value: inv_euclid(self.value, self.modulus),
            modulus: self.modulus,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: u64, v: u64) -> Fp {
        PrimeField::new(p).unwrap().element(v)
    }

    #[test]
    fn add_examples() {
        assert_eq!(e(5, 3).add(e(5, 4)).unwrap().value(), 2);
        assert_eq!(e(5, 0).add(e(5, 0)).unwrap().value(), 0);
        assert_eq!(e(3, 2).add(e(3, 2)).unwrap().value(), 1);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(e(5, 3).mul(e(5, 2)).unwrap().value(), 1);
        assert_eq!(e(7, 3).mul(e(7, 5)).unwrap().value(), 1);
        assert_eq!(e(5, 4).mul(e(5, 0)).unwrap().value(), 0);
    }

    #[test]
    fn inv_examples() {
        assert_eq!(e(5, 4).inv().unwrap().value(), 4);
        assert_eq!(e(5, 3).inv().unwrap().value(), 2);
        assert_eq!(e(7, 3).inv().unwrap().value(), 5);
        assert_eq!(e(7, 0).inv(), Err(Error::DivisionByZero(7)));
    }

    #[test]
    fn neg_examples() {
        assert_eq!(e(5, 1).neg().value(), 4);
        assert_eq!(e(5, 0).neg().value(), 0);
        assert_eq!(e(3, 2).neg().value(), 1);
    }

    #[test]
    fn mismatched_moduli_rejected() {
        assert!(matches!(e(5, 1).add(e(7, 1)), Err(Error::Parameter(_))));
        assert!(matches!(e(5, 1).mul(e(7, 1)), Err(Error::Parameter(_))));
        let f7 = PrimeField::new(7).unwrap();
        assert!(f7.residue(e(5, 2)).is_err());
        assert_eq!(f7.residue(e(7, 2)), Ok(2));
    }

    #[test]
    fn construction_checks() {
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(2_147_483_647).is_ok());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::with_tables(251).is_ok());
        assert!(PrimeField::with_tables(257).is_err());
        assert!(!PrimeField::auto(257).unwrap().is_table_backed());
    }

    #[test]
    fn table_backend_matches_computed_exhaustively() {
        for p in (2..=256u64).filter(|&p| is_prime_u64(p)) {
            let tab = PrimeField::with_tables(p).unwrap();
            let cmp = tab.computed();
            for a in 0..p as u32 {
                for b in 0..p as u32 {
                    assert_eq!(tab.add(a, b), cmp.add(a, b));
                    assert_eq!(tab.mul(a, b), cmp.mul(a, b));
                    assert_eq!(tab.sub(a, b), cmp.sub(a, b));
                }
                assert_eq!(tab.inv(a).ok(), cmp.inv(a).ok());
            }
        }
    }

    #[test]
    fn inverse_exhaustive_small_primes() {
        for p in (2..=256u64).filter(|&p| is_prime_u64(p)) {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p as u32 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::with_tables(p).unwrap();
            let n = p as u32;
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const P: u64 = 2_147_483_629;

        proptest! {
            #[test]
            fn ring_axioms_large_prime(a in 0..P, b in 0..P, c in 0..P) {
                let f = PrimeField::new(P).unwrap();
                let (a, b, c) = (a as u32, b as u32, c as u32);
                prop_assert_eq!(f.add(a, b), f.add(b, a));
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }

            #[test]
            fn inverse_large_prime(a in 1..P) {
                let f = PrimeField::new(P).unwrap();
                prop_assert_eq!(f.mul(a as u32, f.inv(a as u32).unwrap()), 1);
            }
        }
    }
}
