//! Integer helpers for group orders: budgeted trial-division factoring and a
//! Miller-Rabin check for the cofactor left over when the budget runs out.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Limits for factoring group orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division stops at this bound.
    pub trial_bound: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
        }
    }
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub type Factorization = Vec<(BigUint, u32)>;

const MR_BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Miller-Rabin with the first 16 prime bases. Deterministic below
/// 3.3 * 10^24; beyond that a composite passes with probability < 4^-16.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factor `n` by trial division up to `budget.trial_bound`.
///
/// A cofactor that survives trial division is accepted when it is either
/// provably prime (below the square of the bound) or passes Miller-Rabin;
/// otherwise the budget is reported as exceeded.
pub fn factor(n: &BigUint, budget: FactorBudget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d <= budget.trial_bound {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut k = 0u32;
        loop {
            let (q, r) = rest.div_rem(&dd);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            out.push((dd, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let bound = BigUint::from(d);
        if &bound * &bound > rest || is_probable_prime(&rest) {
            out.push((rest, 1));
        } else {
            return Err(Error::Resource(format!(
                "cofactor {rest} of {n} is composite with no factor below {}",
                budget.trial_bound
            )));
        }
    }
    Ok(out)
}

/// `q^k` as a big integer.
pub fn big_pow(q: u64, k: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), k as usize)
}

/// `(q^d - 1) / (q - 1)`, the size of `P^{d-1}(F_q)`.
pub fn projective_count(q: u64, d: u64) -> BigUint {
    (big_pow(q, d) - 1u32) / BigUint::from(q - 1)
}

/// Converts to `u64` if it fits.
pub fn to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}
