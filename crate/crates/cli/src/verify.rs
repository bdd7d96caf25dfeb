use fracjump::asjump::{expected_cost_formula, piece_cost};
use fracjump::fjump::{
    affine_index, affine_points, affine_space_size, build, canonical, classify, eval_direct,
    is_degenerate_pair, sweep, BuildMode, Budget, ProjectiveAutomorphism,
};
use fracjump::{ArtinSchreierJump, Error, Matrix, PrimeField};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::map::Map;
use crate::report::Report;
use crate::{Failure, Suite, VerifyArgs, EXIT_BUDGET};

pub const DEFAULT_RNG_SEED: u64 = 0x5eed_f4ac;

pub fn run(args: &VerifyArgs) -> Result<u8, Failure> {
    let mut report = Report::new("verify");
    let suite = match args.suite {
        Suite::FullOrbit => "full-orbit",
        Suite::Oracle => "oracle",
        Suite::Classify => "classify",
        Suite::Cost => "cost",
    };
    report.param("suite", suite).param("p", args.p);
    if let Some(c) = args.c {
        report.param("c", c);
    }
    if let Some(m) = &args.matrix {
        report.param("matrix", m.as_str());
    }
    let budget = args.budget.budget();
    let outcome = match args.suite {
        Suite::FullOrbit => full_orbit(args, &budget, &mut report),
        Suite::Oracle => oracle(args, &budget, &mut report),
        Suite::Classify => classification(args, &budget, &mut report),
        Suite::Cost => cost(args, &budget, &mut report),
    };
    let exit = match outcome {
        Ok(()) if report.passed() => 0,
        Ok(()) => crate::EXIT_FAIL,
        Err(f) => {
            let name = if f.code == EXIT_BUDGET { "budget" } else { "error" };
            report.check(name, false, f.message);
            f.code
        }
    };
    Ok(report.emit(exit)?)
}

fn space_size(field: &PrimeField, n: usize, budget: &Budget) -> Result<u64, Failure> {
    match affine_space_size(field.order(), n) {
        Some(s) if s <= budget.enumeration => Ok(s),
        _ => Err(Error::Resource(format!(
            "{}^{n} points exceed --max-points {}",
            field.order(),
            budget.enumeration
        ))
        .into()),
    }
}

fn full_orbit(args: &VerifyArgs, budget: &Budget, report: &mut Report) -> Result<(), Failure> {
    let map = Map::from_args(&args.map_args(), budget)?;
    report.param("map", map.describe());
    let p = map.field().modulus();
    let size = space_size(map.field(), map.n(), budget)?;
    let origin = vec![0u32; map.n()];
    let mut seen = vec![false; size as usize];
    let mut x = origin.clone();
    let mut repeat = None;
    for k in 1..=size {
        x = map.step(&x)?;
        let idx = affine_index(&x, p) as usize;
        if seen[idx] {
            repeat = Some((k, x.clone()));
            break;
        }
        seen[idx] = true;
    }
    match &repeat {
        None => report.check("distinct", true, format!("{size} points, each visited once")),
        Some((k, y)) => report.check("distinct", false, format!("{y:?} repeats at step {k}")),
    };
    let back = repeat.is_none() && x == origin;
    report.check(
        "period",
        back,
        if back {
            format!("returns to the origin after {size} steps")
        } else {
            format!("period differs from {size}")
        },
    );
    Ok(())
}

fn oracle(args: &VerifyArgs, budget: &Budget, report: &mut Report) -> Result<(), Failure> {
    let map = Map::from_args(&args.map_args(), budget)?;
    report.param("map", map.describe());
    let psi = map.automorphism();
    let jump = build(&psi, BuildMode::Checked, budget)?;
    let n = map.n();
    let size = space_size(map.field(), n, budget)?;
    let closed = match &map {
        Map::ArtinSchreier(j) => Some(j),
        Map::Generic { .. } => None,
    };
    let (mut closed_bad, mut direct_bad, mut index_bad) = (Vec::new(), Vec::new(), Vec::new());
    let mut max_index = 0;
    for x in affine_points(map.field().modulus(), n) {
        let (y, i) = jump.eval_indexed(&x)?;
        if let Some(j) = closed {
            let (z, cnt) = j.step(&x)?;
            if z != y || cnt.piece_index != i {
                closed_bad.push(x.clone());
            }
        }
        let (d, k) = eval_direct(&psi, &x)?;
        if d != y || k != i as u64 {
            direct_bad.push(x.clone());
        }
        if i > n + 1 {
            index_bad.push(x.clone());
        }
        max_index = max_index.max(i);
    }
    let summarize = |bad: &[Vec<u32>]| match bad.first() {
        None => format!("{size} points agree"),
        Some(x) => format!("{} of {size} points differ, first {x:?}", bad.len()),
    };
    if closed.is_some() {
        report.check("closed_form_vs_piecewise", closed_bad.is_empty(), summarize(&closed_bad));
    }
    report.check("piecewise_vs_direct", direct_bad.is_empty(), summarize(&direct_bad));
    report.check(
        "jump_index_bound",
        index_bad.is_empty(),
        format!("largest jump index {max_index}, bound {}", n + 1),
    );
    Ok(())
}

fn classification(args: &VerifyArgs, budget: &Budget, report: &mut Report) -> Result<(), Failure> {
    let n = args.n.ok_or_else(|| Failure::usage("the classify suite needs --n"))?;
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let field = PrimeField::new(args.p)?;
    report.param("n", n).param("exhaustive", args.exhaustive);
    let (classes, exceptions) = if args.exhaustive {
        let r = sweep(&field, n, budget)?;
        let ex: Vec<(bool, bool)> = r
            .exceptions
            .iter()
            .map(|e| (e.classification.proj_transitive, e.classification.affine_transitive))
            .collect();
        (r.classes, ex)
    } else {
        report.param("samples", args.samples).param("rng_seed", args.rng_seed);
        sample_classes(&field, n, args.samples, args.rng_seed, budget)?
    };
    let degenerate = is_degenerate_pair(field.modulus(), n);
    report.param("degenerate", degenerate);
    if degenerate {
        report.check(
            "agreement",
            true,
            format!("{classes} classes, {} exceptions (allowed for this (p, n))", exceptions.len()),
        );
    } else {
        report.check(
            "agreement",
            exceptions.is_empty(),
            format!("{classes} classes, {} exceptions", exceptions.len()),
        );
    }
    let one_sided = exceptions.iter().all(|&(proj, aff)| !proj && aff);
    report.check(
        "one_sided",
        one_sided,
        "every exception has a non-transitive automorphism with a transitive jump",
    );
    Ok(())
}

/// Classifies `samples` random classes of `PGL_{n+1}(F_p)`; returns the
/// count and the `(proj, affine)` flags of each disagreement.
fn sample_classes(
    field: &PrimeField,
    n: usize,
    samples: u64,
    seed: u64,
    budget: &Budget,
) -> Result<(u64, Vec<(bool, bool)>), Failure> {
    let dim = n + 1;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut exceptions = Vec::new();
    let mut done = 0;
    while done < samples {
        let entries = (0..dim * dim).map(|_| rng.gen_range(0..field.modulus())).collect();
        let m = canonical(&Matrix::from_residues(field, dim, entries)?);
        let Ok(psi) = ProjectiveAutomorphism::new(m) else {
            continue;
        };
        let c = classify(&psi, budget)?;
        if !c.agrees() {
            exceptions.push((c.proj_transitive, c.affine_transitive));
        }
        done += 1;
    }
    Ok((done, exceptions))
}

fn cost(args: &VerifyArgs, budget: &Budget, report: &mut Report) -> Result<(), Failure> {
    if !args.artin_schreier {
        return Err(Failure::usage("the cost suite runs on --as maps"));
    }
    let field = PrimeField::new(args.p)?;
    let c = args.c.ok_or_else(|| Failure::usage("--as needs --c"))?;
    let j = ArtinSchreierJump::new(&field, c)?;
    let p = field.order();
    space_size(&field, j.n(), budget)?;
    let census = j.region_census(budget)?;
    let expect: Vec<u64> = (1..=p)
        .map(|i| if i < p { p.pow((p - 1 - i) as u32) * (p - 1) } else { 1 })
        .collect();
    report.check("census", census == expect, format!("{census:?}"));
    let mut costs: Vec<Option<u64>> = vec![None; p as usize];
    let mut uniform = true;
    for x in affine_points(field.modulus(), j.n()) {
        let cnt = j.step(&x)?.1;
        let slot = &mut costs[cnt.piece_index - 1];
        uniform &= *slot.get_or_insert(cnt.total()) == cnt.total();
    }
    let costs: Vec<u64> = costs.into_iter().map(|v| v.unwrap_or(0)).collect();
    let empirical = j.expected_cost_empirical(budget)?;
    if p >= 3 {
        let model: Vec<u64> = (1..=p).map(|i| piece_cost(p, i)).collect();
        report.check("per_piece_cost", uniform && costs == model, format!("{costs:?}"));
        let formula = expected_cost_formula(p);
        report.check(
            "expected_cost",
            empirical == formula,
            format!(
                "empirical {empirical} {} formula {formula}",
                if empirical == formula { "=" } else { "!=" }
            ),
        );
    } else {
        report.check("per_piece_cost", uniform, format!("{costs:?}"));
        report.check(
            "expected_cost",
            true,
            format!("empirical {empirical}; the closed formula needs p >= 3"),
        );
    }
    Ok(())
}
