//! Univariate polynomials over `F_p`, quotient rings `F_p[T]/(m)`, and the
//! order computations behind projective primitivity.
//!
//! A polynomial of degree `d` is *projectively primitive* when it is
//! irreducible and the class of `T` generates `F_{p^d}^* / F_p^*`, a cyclic
//! group of order `(p^d - 1)/(p - 1)`. The order of `[[T]]` in
//! `(F_p[T]/(g^e))^* / F_p^*` equals the order of `[T]^{p-1}` in
//! `(F_p[T]/(g^e))^*`, which is what [`projective_order`] computes.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::nt::{self, FactorBudget};

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Builds a polynomial from arbitrary integers, reducing mod `p`.
    pub fn new(field: &PrimeField, coeffs: &[u64]) -> Poly {
        Poly::from_residues(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    /// Builds a polynomial from signed integers, reducing mod `p`.
    pub fn from_signed(field: &PrimeField, coeffs: &[i64]) -> Poly {
        Poly::from_residues(
            field,
            coeffs.iter().map(|&c| field.reduce_signed(c)).collect(),
        )
    }

    /// Builds a polynomial from residues already reduced mod `p`.
    pub fn from_residues(field: &PrimeField, mut coeffs: Vec<u32>) -> Poly {
        debug_assert!(coeffs.iter().all(|&c| c < field.modulus()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &PrimeField) -> Poly {
        Poly::from_residues(field, Vec::new())
    }

    pub fn one(field: &PrimeField) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn constant(field: &PrimeField, c: u32) -> Poly {
        Poly::from_residues(field, vec![field.reduce(c as u64)])
    }

    /// The indeterminate `T`.
    pub fn t(field: &PrimeField) -> Poly {
        Poly::monomial(field, 1, 1)
    }

    /// `c * T^k`.
    pub fn monomial(field: &PrimeField, c: u32, k: usize) -> Poly {
        let mut v = vec![0; k + 1];
        v[k] = field.reduce(c as u64);
        Poly::from_residues(field, v)
    }

    /// The Artin-Schreier polynomial `T^p - T - c`.
    pub fn artin_schreier(field: &PrimeField, c: u32) -> Poly {
        let p = field.modulus() as usize;
        let mut v = vec![0; p + 1];
        v[p] = 1;
        v[1] = field.sub(v[1], 1);
        v[0] = field.sub(v[0], field.reduce(c as u64));
        Poly::from_residues(field, v)
    }

    /// Parses the comma-separated ascending-degree format, e.g. `3,4,0,1`
    /// for `3 + 4T + T^3`. Negative entries are reduced mod `p`.
    pub fn parse(field: &PrimeField, text: &str) -> Result<Poly> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad coefficient {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_signed(field, &coeffs))
    }

    /// The comma-separated ascending-degree format accepted by [`Poly::parse`].
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `T^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Scales to leading coefficient 1. The zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(inv)
            }
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Poly::from_residues(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    fn same_field(&self, other: &Poly) {
        assert_eq!(
            self.field, other.field,
            "polynomials over different fields"
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::from_residues(f, v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::from_residues(f, v)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::from_residues(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.same_field(other);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::from_residues(f, v)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division. Fails on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(d);
        let f = &self.field;
        let dd = d
            .degree()
            .ok_or_else(|| Error::Parameter("division by the zero polynomial".into()))?;
        let lc_inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![0u32; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let lead = r[k];
            if lead == 0 {
                continue;
            }
            let factor = f.mul(lead, lc_inv);
            q[k - dd] = factor;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = f.sub(r[idx], f.mul(factor, dc));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_residues(f, q), Poly::from_residues(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic lcm of two nonzero polynomials.
    pub fn lcm(&self, other: &Poly) -> Poly {
        let g = self.gcd(other);
        let (q, _) = self.mul(other).divrem(&g).expect("nonzero gcd");
        q.monic()
    }

    /// Horner evaluation at a field residue.
    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fmt, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(fmt, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(fmt, "{c}")?,
                (1, 1) => write!(fmt, "T")?,
                (1, _) => write!(fmt, "{c}T")?,
                (_, 1) => write!(fmt, "T^{i}")?,
                _ => write!(fmt, "{c}T^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}]({})", self.field.modulus(), self)
    }
}

fn check_modulus(m: &Poly) -> Result<()> {
    match m.degree() {
        None | Some(0) => Err(Error::Parameter(format!(
            "modulus {m} must have degree >= 1"
        ))),
        Some(_) if !m.is_monic() => Err(Error::Parameter(format!("modulus {m} is not monic"))),
        Some(_) => Ok(()),
    }
}

/// `a * b mod m` for a monic modulus of degree at least one.
pub fn poly_mulmod(a: &Poly, b: &Poly, m: &Poly) -> Result<Poly> {
    check_modulus(m)?;
    a.mul(b).rem(m)
}

/// `a^e mod m` with a machine-word exponent.
fn powmod_u64(a: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut base = a.rem(m).expect("checked modulus");
    let mut acc = Poly::one(a.field()).rem(m).expect("checked modulus");
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).rem(m).expect("checked modulus");
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base).rem(m).expect("checked modulus");
        }
    }
    acc
}

/// Element of the quotient ring `F_p[T]/(m)` with `m` monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientElement {
    residue: Poly,
    modulus: Poly,
}

impl QuotientElement {
    /// Reduces `residue` modulo `modulus`; the modulus must be monic of
    /// degree at least one.
    pub fn new(residue: &Poly, modulus: &Poly) -> Result<QuotientElement> {
        check_modulus(modulus)?;
        Ok(QuotientElement {
            residue: residue.rem(modulus)?,
            modulus: modulus.clone(),
        })
    }

    /// The class of `T`.
    pub fn t(modulus: &Poly) -> Result<QuotientElement> {
        QuotientElement::new(&Poly::t(modulus.field()), modulus)
    }

    pub fn one(modulus: &Poly) -> Result<QuotientElement> {
        QuotientElement::new(&Poly::one(modulus.field()), modulus)
    }

    pub fn residue(&self) -> &Poly {
        &self.residue
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn is_one(&self) -> bool {
        self.residue.is_one()
    }

    /// Invertible in the quotient ring.
    pub fn is_unit(&self) -> bool {
        self.residue.gcd(&self.modulus).is_one()
    }

    /// A nonzero constant, i.e. an element of `F_p^*` inside the ring.
    pub fn is_nonzero_constant(&self) -> bool {
        self.residue.degree() == Some(0)
    }

    pub fn mul(&self, other: &QuotientElement) -> Result<QuotientElement> {
        if self.modulus != other.modulus {
            return Err(Error::Parameter("quotient elements of different rings".into()));
        }
        Ok(QuotientElement {
            residue: self.residue.mul(&other.residue).rem(&self.modulus)?,
            modulus: self.modulus.clone(),
        })
    }

    pub fn pow_u64(&self, e: u64) -> QuotientElement {
        QuotientElement {
            residue: powmod_u64(&self.residue, e, &self.modulus),
            modulus: self.modulus.clone(),
        }
    }

    /// Square-and-multiply over the bits of `e`.
    pub fn pow(&self, e: &BigUint) -> QuotientElement {
        let m = &self.modulus;
        let mut acc = Poly::one(m.field()).rem(m).expect("checked modulus");
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m).expect("checked modulus");
            if e.bit(i) {
                acc = acc.mul(&self.residue).rem(m).expect("checked modulus");
            }
        }
        QuotientElement {
            residue: acc,
            modulus: m.clone(),
        }
    }
}

/// `a^e` in the quotient ring.
pub fn powmod(a: &QuotientElement, e: &BigUint) -> QuotientElement {
    a.pow(e)
}

/// Rabin's irreducibility test. The input is normalized to monic first.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => {
            return Err(Error::Parameter(format!(
                "irreducibility needs degree >= 1, got {f}"
            )))
        }
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let field = f.field().clone();
    let p = field.order();
    let t = Poly::t(&field);

    // frob[k] = T^{p^k} mod f, k = 0..=d
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(t.rem(&f)?);
    for k in 1..=d {
        let next = powmod_u64(&frob[k - 1], p, &f);
        frob.push(next);
    }
    if frob[d] != frob[0] {
        return Ok(false);
    }
    for r in prime_divisors(d as u64) {
        let k = d / r as usize;
        let g = frob[k].sub(&t).gcd(&f);
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exact multiplicative order of a unit, given a multiple of that order.
pub fn multiplicative_order(
    a: &QuotientElement,
    group_order: &BigUint,
    budget: FactorBudget,
) -> Result<BigUint> {
    if !a.is_unit() {
        return Err(Error::Domain(format!(
            "{} is not a unit modulo {}",
            a.residue(),
            a.modulus()
        )));
    }
    if group_order.is_zero() {
        return Err(Error::Domain("group order must be positive".into()));
    }
    if !a.pow(group_order).is_one() {
        return Err(Error::Domain(format!(
            "{group_order} is not a multiple of the order of {}",
            a.residue()
        )));
    }
    let mut order = group_order.clone();
    for (q, _) in nt::factor(group_order, budget)? {
        loop {
            let (next, r) = order.div_rem(&q);
            if !r.is_zero() || !a.pow(&next).is_one() {
                break;
            }
            order = next;
        }
    }
    Ok(order)
}

/// Decomposes `f` (monic) as `g^e` with `g` irreducible, if possible.
///
/// The first `k` for which `gcd(T^{p^k} - T, f)` is nontrivial exposes the
/// product of the distinct irreducible factors of degree `k`; for a prime
/// power that product is `g` itself.
pub fn irreducible_power(f: &Poly) -> Result<Option<(Poly, u32)>> {
    let n = match f.degree() {
        None | Some(0) => {
            return Err(Error::Parameter(format!("{f} has no irreducible factor")))
        }
        Some(n) => n,
    };
    let f = f.monic();
    let field = f.field().clone();
    let t = Poly::t(&field);
    let mut h = t.rem(&f)?;
    for k in 1..=n {
        h = powmod_u64(&h, field.order(), &f);
        let g = h.sub(&t).gcd(&f);
        if g.is_one() {
            continue;
        }
        let dg = g.degree().unwrap_or(0);
        if dg != k || n % k != 0 {
            return Ok(None);
        }
        let e = (n / k) as u32;
        return Ok(if g.pow(e as u64) == f {
            Some((g, e))
        } else {
            None
        });
    }
    Ok(None)
}

/// Order of `[[T]]` in `(F_p[T]/(f))^* / F_p^*`, computed as the order of
/// `[T]^{p-1}` in `(F_p[T]/(f))^*`. `f` must be a power of an irreducible
/// polynomial with nonzero constant term; it is normalized to monic.
pub fn projective_order(f: &Poly, budget: FactorBudget) -> Result<BigUint> {
    let f = f.monic();
    let (g, e) = irreducible_power(&f)?.ok_or_else(|| {
        Error::Domain(format!("{f} is not a power of an irreducible polynomial"))
    })?;
    if f.coeff(0) == 0 {
        return Err(Error::Domain(format!("T is not a unit modulo {f}")));
    }
    let p = f.field().order();
    let d = g.degree().expect("irreducible factor") as u64;
    // |Gamma| / (p-1) = p^{d(e-1)} (p^d - 1)/(p - 1) is a multiple of the order
    let multiple = nt::big_pow(p, d * (e as u64 - 1)) * nt::projective_count(p, d);
    let t_pow = QuotientElement::t(&f)?.pow_u64(p - 1);
    multiplicative_order(&t_pow, &multiple, budget)
}

/// Irreducible with `[[T]]` generating `F_{p^d}^* / F_p^*`.
pub fn is_projectively_primitive(f: &Poly, budget: FactorBudget) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => {
            return Err(Error::Parameter(format!(
                "projective primitivity needs degree >= 1, got {f}"
            )))
        }
        Some(d) => d as u64,
    };
    if !is_irreducible(f)? || f.coeff(0) == 0 {
        return Ok(false);
    }
    let p = f.field().order();
    Ok(projective_order(f, budget)? == nt::projective_count(p, d))
}

/// `A(q, e, f) = q^{ceil(log_q e)} (q^f - 1)/(q - 1)`.
pub fn a_bound(q: u64, e: u64, f: u64) -> Result<BigUint> {
    if q < 2 || e < 1 || f < 1 {
        return Err(Error::Parameter(format!(
            "A(q, e, f) needs q >= 2, e >= 1, f >= 1; got ({q}, {e}, {f})"
        )));
    }
    // smallest k with q^k >= e
    let mut k = 0u64;
    let mut qk = BigUint::one();
    let target = BigUint::from(e);
    while qk < target {
        qk *= q;
        k += 1;
    }
    Ok(nt::big_pow(q, k) * nt::projective_count(q, f))
}
