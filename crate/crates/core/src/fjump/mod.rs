//! Fractional jumps of projective automorphisms.
//!
//! Given `Psi = [M]` acting on `P^n`, the fractional jump `psi` sends an
//! affine point `x` to the first iterate `Psi^k(x : 1)` that lands back in
//! the affine chart `X_n != 0`. When `Psi` is transitive at most `n + 1`
//! applications are needed, and `psi` is piecewise linear-fractional: piece
//! `i` is read off the rows of `M^i`, with denominator `b^(i)` from the last
//! row and numerators `a_j^(i)` from rows `1..n`. Evaluating takes the first
//! piece whose denominator is nonzero and costs one field inversion.

mod classify;

pub use classify::{
    canonical, classify, degenerate_example, is_degenerate_pair, pgl_representatives, sweep,
    Classification, DegenerateKind, SweepException, SweepReport,
};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::linalg::{char_poly, Matrix};
use crate::nt::{self, FactorBudget};
use crate::poly::is_projectively_primitive;

/// Limits on brute-force enumeration and on factoring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest point set (`|P^n|` or `p^n`) walked by orbit enumeration.
    pub enumeration: u64,
    pub factor: FactorBudget,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: 10_000_000,
            factor: FactorBudget::default(),
        }
    }
}

/// Number of points of `P^n(F_p)`, if it fits in a `u64`.
pub fn projective_space_size(p: u64, n: usize) -> Option<u64> {
    nt::projective_count(p, n as u64 + 1).to_u64()
}

/// Number of points of `A^n(F_p)`, if it fits in a `u64`.
pub fn affine_space_size(p: u64, n: usize) -> Option<u64> {
    p.checked_pow(n as u32)
}

fn within_budget(size: Option<u64>, budget: &Budget, what: &str) -> Result<u64> {
    match size {
        Some(s) if s <= budget.enumeration => Ok(s),
        _ => Err(Error::Resource(format!(
            "{what} exceeds the enumeration budget of {}",
            budget.enumeration
        ))),
    }
}

/// Mixed-radix index of an affine point (`x_1` least significant).
pub fn affine_index(x: &[u32], p: u32) -> u64 {
    x.iter()
        .rev()
        .fold(0u64, |acc, &v| acc * p as u64 + v as u64)
}

/// Inverse of [`affine_index`].
pub fn affine_point(mut idx: u64, p: u32, n: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let v = (idx % p as u64) as u32;
            idx /= p as u64;
            v
        })
        .collect()
}

/// All points of `A^n(F_p)` in index order.
pub fn affine_points(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(n as u32);
    (0..total).map(move |i| affine_point(i, p, n))
}

/// An automorphism `[M]` of `P^n`, `M` invertible of size `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveAutomorphism {
    matrix: Matrix,
}

impl ProjectiveAutomorphism {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.dim() < 2 {
            return Err(Error::Parameter(
                "a projective automorphism needs a matrix of size >= 2".into(),
            ));
        }
        if matrix.det() == 0 {
            return Err(Error::Parameter(format!(
                "matrix {} is singular",
                matrix.to_text()
            )));
        }
        Ok(ProjectiveAutomorphism { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> &PrimeField {
        self.matrix.field()
    }

    /// Dimension of the affine space, `n`.
    pub fn n(&self) -> usize {
        self.matrix.dim() - 1
    }

    /// Another representative `lambda M` of the same class.
    pub fn rescaled(&self, lambda: u32) -> Result<Self> {
        ProjectiveAutomorphism::new(self.matrix.scale(lambda))
    }

    /// Image of a projective point.
    pub fn apply(&self, pt: &ProjectivePoint) -> Result<ProjectivePoint> {
        ProjectivePoint::new(self.field(), self.matrix.apply(pt.coords())?)
    }
}

/// A point of `P^n`, normalized so its last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<u32>,
}

impl ProjectivePoint {
    pub fn new(field: &PrimeField, mut coords: Vec<u32>) -> Result<Self> {
        let last = coords
            .iter()
            .rposition(|&v| v != 0)
            .ok_or_else(|| Error::Parameter("the zero vector is not a projective point".into()))?;
        let inv = field.inv(coords[last])?;
        for v in coords.iter_mut() {
            *v = field.mul(*v, inv);
        }
        Ok(ProjectivePoint { coords })
    }

    /// `pi(x) = (x_1 : ... : x_n : 1)`.
    pub fn from_affine(x: &[u32]) -> Self {
        let mut coords = x.to_vec();
        coords.push(1);
        ProjectivePoint { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// In the chart `X_n != 0`.
    pub fn is_affine(&self) -> bool {
        self.coords.last() == Some(&1)
    }

    /// `pi^{-1}`, for points of the affine chart.
    pub fn to_affine(&self) -> Option<Vec<u32>> {
        self.is_affine()
            .then(|| self.coords[..self.coords.len() - 1].to_vec())
    }
}

/// A degree-one polynomial `constant + sum linear_k x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub linear: Vec<u32>,
    pub constant: u32,
}

impl AffineForm {
    /// Dehomogenizes a row `(m_1, ..., m_n, m_{n+1})` of a matrix.
    pub fn from_row(row: &[u32]) -> Self {
        let n = row.len() - 1;
        AffineForm {
            linear: row[..n].to_vec(),
            constant: row[n],
        }
    }

    pub fn eval(&self, field: &PrimeField, x: &[u32]) -> u32 {
        self.linear
            .iter()
            .zip(x)
            .fold(self.constant, |acc, (&a, &v)| field.add(acc, field.mul(a, v)))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, field: &PrimeField, c: u32) -> Self {
        AffineForm {
            linear: self.linear.iter().map(|&a| field.mul(a, c)).collect(),
            constant: field.mul(self.constant, c),
        }
    }
}

/// One linear-fractional piece `f^(i) = (a_1/b, ..., a_n/b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub denominator: AffineForm,
    pub numerators: Vec<AffineForm>,
}

/// Whether [`build`] checks that the automorphism is transitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMode {
    Checked,
    /// Skip the transitivity gate; evaluation may then fail at points whose
    /// jump index exceeds `n + 1`.
    Unchecked,
}

/// Precomputed piecewise representation of a fractional jump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalJump {
    field: PrimeField,
    n: usize,
    pieces: Vec<Piece>,
}

/// Transitivity gate used by [`build`]: projective primitivity of the
/// characteristic polynomial, falling back to orbit enumeration when the
/// group order cannot be factored within budget.
pub fn passes_transitivity_gate(psi: &ProjectiveAutomorphism, budget: &Budget) -> Result<bool> {
    match is_projectively_primitive(&char_poly(psi.matrix()), budget.factor) {
        Ok(ok) => Ok(ok),
        Err(Error::Resource(_)) => is_transitive_projective(psi, budget),
        Err(e) => Err(e),
    }
}

/// Builds the `n + 1` pieces from the powers `M, M^2, ..., M^{n+1}`.
pub fn build(psi: &ProjectiveAutomorphism, mode: BuildMode, budget: &Budget) -> Result<FractionalJump> {
    if mode == BuildMode::Checked && !passes_transitivity_gate(psi, budget)? {
        return Err(Error::Precondition(format!(
            "{} does not act transitively on P^{}",
            psi.matrix().to_text(),
            psi.n()
        )));
    }
    let n = psi.n();
    let m = psi.matrix();
    let mut power = m.clone();
    let mut pieces = Vec::with_capacity(n + 1);
    for i in 1..=n + 1 {
        if i > 1 {
            power = power.mul(m)?;
        }
        pieces.push(Piece {
            denominator: AffineForm::from_row(power.row(n)),
            numerators: (0..n).map(|j| AffineForm::from_row(power.row(j))).collect(),
        });
    }
    Ok(FractionalJump {
        field: psi.field().clone(),
        n,
        pieces,
    })
}

impl FractionalJump {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    /// Pieces `1..=n+1` (stored zero-based).
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn check_point(&self, x: &[u32]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::Parameter(format!(
                "point of length {} for a jump on A^{}",
                x.len(),
                self.n
            )));
        }
        if let Some(&bad) = x.iter().find(|&&v| v >= self.field.modulus()) {
            return Err(Error::Parameter(format!(
                "coordinate {bad} not reduced mod {}",
                self.field.modulus()
            )));
        }
        Ok(())
    }

    /// Index (one-based) of the piece whose region contains `x`.
    pub fn piece_index(&self, x: &[u32]) -> Result<usize> {
        self.check_point(x)?;
        self.pieces
            .iter()
            .position(|pc| pc.denominator.eval(&self.field, x) != 0)
            .map(|i| i + 1)
            .ok_or(Error::NotTransitiveCompatible(self.n + 1))
    }

    /// `psi(x)`.
    pub fn eval(&self, x: &[u32]) -> Result<Vec<u32>> {
        Ok(self.eval_indexed(x)?.0)
    }

    /// `psi(x)` together with the piece index used.
    pub fn eval_indexed(&self, x: &[u32]) -> Result<(Vec<u32>, usize)> {
        self.check_point(x)?;
        let f = &self.field;
        for (i, piece) in self.pieces.iter().enumerate() {
            let b = piece.denominator.eval(f, x);
            if b == 0 {
                continue;
            }
            let t = f.inv(b)?;
            let y = piece
                .numerators
                .iter()
                .map(|a| f.mul(a.eval(f, x), t))
                .collect();
            return Ok((y, i + 1));
        }
        Err(Error::NotTransitiveCompatible(self.n + 1))
    }

    /// Iterates `psi` starting after `seed`.
    pub fn orbit(&self, seed: Vec<u32>) -> Orbit<'_> {
        Orbit {
            jump: self,
            current: seed,
        }
    }
}

/// Successive images `psi(x), psi^2(x), ...`.
pub struct Orbit<'a> {
    jump: &'a FractionalJump,
    current: Vec<u32>,
}

impl Iterator for Orbit<'_> {
    type Item = Result<Vec<u32>>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.jump.eval(&self.current) {
            Ok(y) => {
                self.current = y.clone();
                Some(Ok(y))
            }
            Err(e) => Some(Err(e)),
        }
    }
}

/// `psi(x)` by iterating the matrix on `pi(x)` until the orbit re-enters
/// the affine chart. Returns the image and the jump index.
pub fn eval_direct(psi: &ProjectiveAutomorphism, x: &[u32]) -> Result<(Vec<u32>, u64)> {
    let n = psi.n();
    let f = psi.field();
    if x.len() != n {
        return Err(Error::Parameter(format!(
            "point of length {} for an automorphism of P^{n}",
            x.len()
        )));
    }
    let cap = projective_space_size(f.order(), n).unwrap_or(u64::MAX);
    let mut v = ProjectivePoint::from_affine(x).coords().to_vec();
    for k in 1..=cap {
        v = psi.matrix().apply_unchecked(&v);
        let last = v[n];
        if last != 0 {
            let t = f.inv(last)?;
            return Ok((v[..n].iter().map(|&c| f.mul(c, t)).collect(), k));
        }
    }
    Err(Error::TrappedAtInfinity(cap))
}

/// Whether the orbit of one point has size `|P^n|`, by enumeration.
pub fn is_transitive_projective(psi: &ProjectiveAutomorphism, budget: &Budget) -> Result<bool> {
    let f = psi.field();
    let n = psi.n();
    let size = within_budget(
        projective_space_size(f.order(), n),
        budget,
        &format!("|P^{n}(F_{})|", f.order()),
    )?;
    let start = ProjectivePoint::from_affine(&vec![0; n]);
    let mut pt = start.clone();
    let mut len = 0u64;
    loop {
        pt = psi.apply(&pt)?;
        len += 1;
        if pt == start {
            return Ok(len == size);
        }
        if len >= size {
            return Ok(false);
        }
    }
}

/// Source of the affine map whose transitivity is being tested.
#[derive(Clone, Copy, Debug)]
pub enum AffineMap<'a> {
    /// Piecewise evaluation of a built jump.
    Jump(&'a FractionalJump),
    /// Direct projective iteration; works for non-transitive automorphisms.
    Direct(&'a ProjectiveAutomorphism),
}

impl AffineMap<'_> {
    fn field(&self) -> &PrimeField {
        match self {
            AffineMap::Jump(j) => j.field(),
            AffineMap::Direct(psi) => psi.field(),
        }
    }

    fn n(&self) -> usize {
        match self {
            AffineMap::Jump(j) => j.n(),
            AffineMap::Direct(psi) => psi.n(),
        }
    }

    pub fn eval(&self, x: &[u32]) -> Result<Vec<u32>> {
        match self {
            AffineMap::Jump(j) => j.eval(x),
            AffineMap::Direct(psi) => Ok(eval_direct(psi, x)?.0),
        }
    }
}

/// Whether iterating from the origin visits all `p^n` affine points before
/// repeating.
pub fn is_transitive_affine(map: AffineMap<'_>, budget: &Budget) -> Result<bool> {
    let p = map.field().modulus();
    let n = map.n();
    let size = within_budget(
        affine_space_size(p as u64, n),
        budget,
        &format!("|A^{n}(F_{p})|"),
    )?;
    let mut seen = vec![false; size as usize];
    let mut x = vec![0u32; n];
    seen[0] = true;
    for _ in 0..size {
        x = map.eval(&x)?;
        let idx = affine_index(&x, p) as usize;
        if seen[idx] {
            break;
        }
        seen[idx] = true;
    }
    Ok(x.iter().all(|&v| v == 0) && seen.iter().all(|&s| s))
}

/// Operation counts for evaluating one piece, under the lookup-table cost
/// model where every field operation costs one unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PieceCost {
    pub sums: u64,
    pub mults: u64,
    pub invs: u64,
}

impl PieceCost {
    pub fn total(&self) -> u64 {
        self.sums + self.mults + self.invs
    }
}

/// Cost of each piece read off the structure of `M^i`: one sum per extra
/// nonzero entry in each row, one multiplication per entry outside `{0, 1}`
/// in the first `n` columns, one inversion, and `n` multiplications by the
/// inverted denominator.
pub fn piece_costs(psi: &ProjectiveAutomorphism) -> Vec<PieceCost> {
    let n = psi.n();
    let m = psi.matrix();
    let mut power = m.clone();
    (1..=n + 1)
        .map(|i| {
            if i > 1 {
                power = power.mul(m).expect("same shape");
            }
            let sums = (0..=n)
                .map(|r| power.row(r).iter().filter(|&&v| v != 0).count().saturating_sub(1) as u64)
                .sum();
            let mults = (0..=n)
                .map(|r| power.row(r)[..n].iter().filter(|&&v| v > 1).count() as u64)
                .sum::<u64>();
            PieceCost {
                sums,
                mults: mults + n as u64,
                invs: 1,
            }
        })
        .collect()
}
