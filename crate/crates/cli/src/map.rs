use fracjump::fjump::{build, BuildMode, Budget, FractionalJump, ProjectiveAutomorphism};
use fracjump::{ArtinSchreierJump, Matrix, PrimeField};

use crate::{Failure, MapArgs};

/// The map selected on the command line, ready to evaluate.
pub enum Map {
    ArtinSchreier(ArtinSchreierJump),
    Generic {
        psi: ProjectiveAutomorphism,
        jump: FractionalJump,
    },
}

impl Map {
    /// Builds the map; generic matrices must pass the transitivity gate.
    pub fn from_args(args: &MapArgs, budget: &Budget) -> Result<Map, Failure> {
        let field = PrimeField::new(args.p)?;
        if args.artin_schreier {
            let c = args
                .c
                .ok_or_else(|| Failure::usage("--as needs --c"))?;
            return Ok(Map::ArtinSchreier(ArtinSchreierJump::new(&field, c)?));
        }
        let psi = automorphism(&field, args)?;
        let jump = build(&psi, BuildMode::Checked, budget)?;
        Ok(Map::Generic { psi, jump })
    }

    pub fn field(&self) -> &PrimeField {
        match self {
            Map::ArtinSchreier(j) => j.field(),
            Map::Generic { jump, .. } => jump.field(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Map::ArtinSchreier(j) => j.n(),
            Map::Generic { jump, .. } => jump.n(),
        }
    }

    pub fn automorphism(&self) -> ProjectiveAutomorphism {
        match self {
            Map::ArtinSchreier(j) => j.automorphism(),
            Map::Generic { psi, .. } => psi.clone(),
        }
    }

    pub fn step(&self, x: &[u32]) -> Result<Vec<u32>, Failure> {
        Ok(match self {
            Map::ArtinSchreier(j) => j.step(x)?.0,
            Map::Generic { jump, .. } => jump.eval(x)?,
        })
    }

    /// Human-readable description for reports.
    pub fn describe(&self) -> String {
        match self {
            Map::ArtinSchreier(j) => format!("artin-schreier p={} c={}", j.p(), j.c()),
            Map::Generic { psi, .. } => format!("matrix {}", psi.matrix().to_text()),
        }
    }
}

/// Parses `--matrix` into an automorphism without gating it.
pub fn automorphism(field: &PrimeField, args: &MapArgs) -> Result<ProjectiveAutomorphism, Failure> {
    let text = args
        .matrix
        .as_deref()
        .ok_or_else(|| Failure::usage("either --as with --c, or --matrix, is required"))?;
    Ok(ProjectiveAutomorphism::new(Matrix::parse(field, text)?)?)
}

/// Parses a comma separated point of length `n`.
pub fn parse_point(field: &PrimeField, text: &str, n: usize) -> Result<Vec<u32>, Failure> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map(|v| field.reduce_signed(v))
                .map_err(|_| Failure::usage(format!("bad coordinate {s:?} in seed")))
        })
        .collect::<Result<Vec<u32>, Failure>>()?;
    if coords.len() != n {
        return Err(Failure::usage(format!(
            "seed has {} coordinates, the map acts on A^{n}",
            coords.len()
        )));
    }
    Ok(coords)
}
