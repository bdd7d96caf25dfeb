//! Brute-force comparison of projective and affine transitivity.
//!
//! `Psi` transitive on `P^n` always makes its fractional jump transitive on
//! `A^n`. The converse holds except for `(p, n) = (p, 1)` and `(2, 2)`,
//! where the unipotent maps below fix the hyperplane at infinity yet induce
//! transitive affine maps.

use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::linalg::Matrix;

use super::{
    is_transitive_affine, is_transitive_projective, AffineMap, Budget, ProjectiveAutomorphism,
};

/// The two families of exceptional automorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegenerateKind {
    /// `[X_0 : X_1] -> [X_0 + X_1 : X_1]`, inducing `x -> x + 1`.
    Translation,
    /// `[X_0 : X_1 : X_2] -> [X_0 + X_1 + X_2 : X_1 + X_2 : X_2]` over `F_2`.
    Unipotent,
}

impl DegenerateKind {
    pub fn from_index(kind: u8) -> Result<Self> {
        match kind {
            1 => Ok(DegenerateKind::Translation),
            2 => Ok(DegenerateKind::Unipotent),
            _ => Err(Error::Parameter(format!("no degenerate example of kind {kind}"))),
        }
    }
}

pub fn degenerate_example(kind: DegenerateKind, field: &PrimeField) -> Result<ProjectiveAutomorphism> {
    let m = match kind {
        DegenerateKind::Translation => Matrix::from_rows(field, &[vec![1, 1], vec![0, 1]])?,
        DegenerateKind::Unipotent => {
            if field.modulus() != 2 {
                return Err(Error::Parameter(format!(
                    "the unipotent example lives over F_2, not F_{}",
                    field.modulus()
                )));
            }
            Matrix::from_rows(field, &[vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]])?
        }
    };
    ProjectiveAutomorphism::new(m)
}

/// `(p, n)` is one of the excluded parameter pairs.
pub fn is_degenerate_pair(p: u32, n: usize) -> bool {
    n == 1 || (p == 2 && n == 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub proj_transitive: bool,
    pub affine_transitive: bool,
    pub degenerate: bool,
}

impl Classification {
    /// Transitivity on `P^n` and on `A^n` agree.
    pub fn agrees(&self) -> bool {
        self.proj_transitive == self.affine_transitive
    }
}

pub fn classify(psi: &ProjectiveAutomorphism, budget: &Budget) -> Result<Classification> {
    Ok(Classification {
        proj_transitive: is_transitive_projective(psi, budget)?,
        affine_transitive: is_transitive_affine(AffineMap::Direct(psi), budget)?,
        degenerate: is_degenerate_pair(psi.field().modulus(), psi.n()),
    })
}

/// One representative per class of `PGL_dim(F_p)`: invertible matrices whose
/// first nonzero entry in row-major order is 1.
pub fn pgl_representatives(
    field: &PrimeField,
    dim: usize,
) -> impl Iterator<Item = ProjectiveAutomorphism> {
    let field = field.clone();
    let p = field.modulus() as u64;
    let total = p.pow((dim * dim) as u32);
    (0..total).filter_map(move |idx| {
        let entries = super::affine_point(idx, p as u32, dim * dim);
        if entries.iter().find(|&&v| v != 0) != Some(&1) {
            return None;
        }
        let m = Matrix::from_residues(&field, dim, entries).ok()?;
        ProjectiveAutomorphism::new(m).ok()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepException {
    pub matrix: Matrix,
    pub classification: Classification,
}

/// Outcome of classifying every class of `PGL_{n+1}(F_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub p: u32,
    pub n: usize,
    pub classes: u64,
    pub proj_transitive: u64,
    pub affine_transitive: u64,
    /// Classes where the two notions of transitivity disagree.
    pub exceptions: Vec<SweepException>,
}

impl SweepReport {
    pub fn degenerate(&self) -> bool {
        is_degenerate_pair(self.p, self.n)
    }

    /// Every exception is a non-transitive `Psi` with a transitive jump.
    pub fn exceptions_are_one_sided(&self) -> bool {
        self.exceptions
            .iter()
            .all(|e| !e.classification.proj_transitive && e.classification.affine_transitive)
    }

    /// The class of `psi` is among the exceptions.
    pub fn has_exception(&self, psi: &ProjectiveAutomorphism) -> bool {
        let canon = canonical(psi.matrix());
        self.exceptions.iter().any(|e| canonical(&e.matrix) == canon)
    }
}

/// Representative of `[M]` with first nonzero entry 1.
pub fn canonical(m: &Matrix) -> Matrix {
    let f = m.field();
    let lead = m.entries().iter().copied().find(|&v| v != 0).unwrap_or(1);
    m.scale(f.inv(lead).expect("nonzero entry"))
}

/// Classifies every class of `PGL_{n+1}(F_p)`.
pub fn sweep(field: &PrimeField, n: usize, budget: &Budget) -> Result<SweepReport> {
    let dim = n + 1;
    let p = field.order();
    let candidates = p.checked_pow((dim * dim) as u32);
    if candidates.is_none_or(|c| c > budget.enumeration) {
        return Err(Error::Resource(format!(
            "sweeping PGL_{dim}(F_{p}) exceeds the enumeration budget of {}",
            budget.enumeration
        )));
    }
    let mut report = SweepReport {
        p: field.modulus(),
        n,
        classes: 0,
        proj_transitive: 0,
        affine_transitive: 0,
        exceptions: Vec::new(),
    };
    for psi in pgl_representatives(field, dim) {
        let c = classify(&psi, budget)?;
        report.classes += 1;
        report.proj_transitive += c.proj_transitive as u64;
        report.affine_transitive += c.affine_transitive as u64;
        if !c.agrees() {
            report.exceptions.push(SweepException {
                matrix: psi.matrix().clone(),
                classification: c,
            });
        }
    }
    Ok(report)
}
