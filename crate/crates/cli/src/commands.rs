use std::io::{self, BufWriter, Write};

use fracjump::asjump::expected_cost_formula;
use fracjump::fjump::{affine_points, classify as classify_psi, piece_costs, ProjectiveAutomorphism};
use fracjump::poly::{is_irreducible, is_projectively_primitive, projective_order};
use fracjump::{Error, Matrix, Poly, PrimeField, Rational};
use num_bigint::{BigInt, BigUint};
use serde_json::json;

use crate::map::Map;
use crate::{emit, BenchArgs, ClassifyArgs, Failure, PrimitiveArgs, SearchArgs, EXIT_FAIL};

pub fn classify(args: &ClassifyArgs) -> Result<u8, Failure> {
    let field = PrimeField::new(args.p)?;
    let psi = ProjectiveAutomorphism::new(Matrix::parse(&field, &args.matrix)?)?;
    let c = classify_psi(&psi, &args.budget.budget())?;
    let v = json!({
        "p": args.p,
        "n": psi.n(),
        "matrix": psi.matrix().to_text(),
        "proj_transitive": c.proj_transitive,
        "affine_transitive": c.affine_transitive,
        "degenerate": c.degenerate,
    });
    emit(&(serde_json::to_string_pretty(&v).expect("serializable") + "\n"))?;
    Ok(0)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn primitive(args: &PrimitiveArgs) -> Result<u8, Failure> {
    let field = PrimeField::new(args.p)?;
    let f = Poly::parse(&field, &args.poly)?;
    let d = match f.degree() {
        Some(d) if d >= 1 => d as u32,
        _ => return Err(Failure::usage(format!("{f} has degree below 1"))),
    };
    let budget = args.budget.budget().factor;
    let irreducible = is_irreducible(&f)?;
    let target = (BigUint::from(args.p).pow(d) - 1u32) / (args.p - 1);
    let order = match projective_order(&f, budget) {
        Ok(o) => format!("{o} of {target}"),
        Err(Error::Domain(_)) => format!("undefined (of {target})"),
        Err(e) => return Err(e.into()),
    };
    let primitive = is_projectively_primitive(&f, budget)?;
    emit(&format!(
        "polynomial: {f}\nirreducible: {}\nprojective order: {order}\nprojectively primitive: {}\n",
        yes_no(irreducible),
        yes_no(primitive)
    ))?;
    Ok(if primitive { 0 } else { EXIT_FAIL })
}

pub fn search(args: &SearchArgs) -> Result<u8, Failure> {
    let field = PrimeField::new(args.p)?;
    let d = args.degree;
    if d == 0 {
        return Err(Failure::usage("--degree must be at least 1"));
    }
    let p = field.order();
    let candidates = p
        .checked_pow(d as u32)
        .filter(|&c| c <= args.budget.max_points)
        .ok_or_else(|| {
            Failure::from(Error::Resource(format!(
                "{p}^{d} candidates exceed --max-points {}",
                args.budget.max_points
            )))
        })?;
    let budget = args.budget.budget().factor;
    let mut out = BufWriter::new(io::stdout().lock());
    for idx in 0..candidates {
        let mut coeffs: Vec<u64> = (0..d).map(|k| (idx / p.pow(k as u32)) % p).collect();
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        if let Some(k) = args.max_terms {
            if coeffs.iter().filter(|&&c| c != 0).count() > k {
                continue;
            }
        }
        let f = Poly::new(&field, &coeffs);
        if is_projectively_primitive(&f, budget)? {
            writeln!(out, "{}\t{f}", f.to_text())?;
        }
    }
    out.flush()?;
    Ok(0)
}

pub fn bench(args: &BenchArgs) -> Result<u8, Failure> {
    let budget = args.budget.budget();
    let map = Map::from_args(&args.map, &budget)?;
    let p = map.field().order();
    let n = map.n();
    let size = fracjump::fjump::affine_space_size(p, n)
        .filter(|&s| s <= budget.enumeration)
        .ok_or_else(|| {
            Failure::from(Error::Resource(format!(
                "{p}^{n} points exceed --max-points {}",
                budget.enumeration
            )))
        })?;
    let (census, costs, formula) = match &map {
        Map::ArtinSchreier(j) => {
            let mut census = vec![0u64; n + 1];
            let mut costs = vec![0u64; n + 1];
            for x in affine_points(p as u32, n) {
                let cnt = j.step(&x)?.1;
                census[cnt.piece_index - 1] += 1;
                costs[cnt.piece_index - 1] = cnt.total();
            }
            let formula = (p >= 3).then(|| expected_cost_formula(p));
            (census, costs, formula)
        }
        Map::Generic { psi, jump } => {
            let mut census = vec![0u64; n + 1];
            for x in affine_points(p as u32, n) {
                census[jump.piece_index(&x)? - 1] += 1;
            }
            let costs = piece_costs(psi).iter().map(|c| c.total()).collect();
            (census, costs, None)
        }
    };
    let total: u64 = census.iter().zip(&costs).map(|(a, b)| a * b).sum();
    let empirical = Rational::new(BigInt::from(total), BigInt::from(size));
    let formula = formula.map_or_else(|| "n/a".to_string(), |e| e.to_string());
    emit(&format!(
        "map: {}\ncensus: {census:?}\ncosts: {costs:?}\nE empirical: {empirical}\nE formula: {formula}\n",
        map.describe()
    ))?;
    Ok(0)
}
