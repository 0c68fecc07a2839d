//! The sets `Σ_n` of admissible `α` and their discrete branches `Λ_n^0`, `Λ_n^1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Which discrete branch: the terminal partial quotient is `n−1` or `n−2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    Zero,
    One,
}

impl Variant {
    pub fn from_index(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Self::Zero),
            1 => Ok(Self::One),
            _ => Err(Error::Parameter(format!("variant must be 0 or 1, got {v}"))),
        }
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `0, 1 + 1/t_1, 1 + 1/t_2, …` with `t_1 = n−1` (or `n−2`) and
/// `t_{k+1} = (n−2) − 1/t_k`, truncated once `t_k ≤ 0`.
pub fn lambda_sequence_exact(n: usize, variant: Variant, depth: usize) -> Result<Vec<BigRational>> {
    if depth == 0 {
        return Err(Error::Parameter("depth must be at least 1".into()));
    }
    if n < 3 {
        return Err(Error::Parameter(format!(
            "continued-fraction branches need n >= 3, got {n}"
        )));
    }
    let n = n as i64;
    let mut out = vec![BigRational::zero()];
    let mut t = match variant {
        Variant::Zero => int(n - 1),
        Variant::One => int(n - 2),
    };
    while out.len() < depth && t.is_positive() {
        out.push(BigRational::one() + t.recip());
        t = int(n - 2) - t.recip();
    }
    Ok(out)
}

pub fn lambda_sequence(n: usize, variant: Variant, depth: usize) -> Result<Vec<f64>> {
    Ok(lambda_sequence_exact(n, variant, depth)?.iter().map(to_f64).collect())
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `(n ∓ √(n²−4n))/2` for `n ≥ 4`.
pub fn interval(n: usize) -> Option<(f64, f64)> {
    if n < 4 {
        return None;
    }
    let n = n as f64;
    let s = (n * n - 4.0 * n).sqrt();
    Some(((n - s) / 2.0, (n + s) / 2.0))
}

/// Exact test of `x < (n − √(n²−4n))/2`.
pub fn below_interval(n: usize, x: &BigRational) -> bool {
    let nn = int(n as i64);
    let gap = &nn - int(2) * x;
    gap.is_positive() && &gap * &gap > &nn * &nn - int(4) * &nn
}

/// Strictly increasing and below the lower interval endpoint, checked exactly.
pub fn increases_to_bound(n: usize, seq: &[BigRational]) -> bool {
    seq.windows(2).all(|w| w[0] < w[1]) && seq.iter().all(|x| below_interval(n, x))
}

/// The printed finite sets `Σ_1, Σ_2, Σ_3`.
pub fn finite_sigma(n: usize) -> Option<Vec<BigRational>> {
    let half = |k: i64| BigRational::new(BigInt::from(k), BigInt::from(2));
    match n {
        1 => Some(vec![int(0), int(1)]),
        2 => Some(vec![int(0), int(1), int(2)]),
        3 => Some(vec![int(0), int(1), half(3), int(2), int(3)]),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "branch", content = "index", rename_all = "snake_case")]
pub enum SigmaBranch {
    Finite(usize),
    Lambda0(usize),
    Lambda1(usize),
    Interval,
    Mirror1(usize),
    Mirror0(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaMembership {
    pub member: bool,
    pub witness: Option<SigmaBranch>,
}

/// Decides `α ∈ Σ_n` with absolute tolerance `tol`, scanning the discrete
/// branches to `depth`.
pub fn sigma_membership(n: usize, alpha: f64, depth: usize, tol: f64) -> Result<SigmaMembership> {
    if n == 0 {
        return Err(Error::Parameter("n must be positive".into()));
    }
    let hit = |xs: &[f64], f: fn(usize) -> SigmaBranch| xs.iter().position(|&x| (x - alpha).abs() <= tol).map(f);
    let witness = if let Some(set) = finite_sigma(n) {
        let xs: Vec<f64> = set.iter().map(to_f64).collect();
        hit(&xs, SigmaBranch::Finite)
    } else {
        let l0 = lambda_sequence(n, Variant::Zero, depth)?;
        let l1 = lambda_sequence(n, Variant::One, depth)?;
        let (lo, hi) = interval(n).expect("n >= 4");
        let nf = n as f64;
        let m1: Vec<f64> = l1.iter().map(|x| nf - x).collect();
        let m0: Vec<f64> = l0.iter().map(|x| nf - x).collect();
        hit(&l0, SigmaBranch::Lambda0)
            .or_else(|| hit(&l1, SigmaBranch::Lambda1))
            .or_else(|| (alpha >= lo - tol && alpha <= hi + tol).then_some(SigmaBranch::Interval))
            .or_else(|| hit(&m1, SigmaBranch::Mirror1))
            .or_else(|| hit(&m0, SigmaBranch::Mirror0))
    };
    Ok(SigmaMembership {
        member: witness.is_some(),
        witness,
    })
}

/// Serializable summary of `Σ_n` to a given depth.
#[derive(Debug, Clone, Serialize)]
pub struct SigmaSet {
    pub n: usize,
    pub depth: usize,
    /// The whole set when it is finite (`n ≤ 3`).
    pub values: Option<Vec<f64>>,
    pub lambda0: Vec<f64>,
    pub lambda1: Vec<f64>,
    pub interval: Option<[f64; 2]>,
    pub mirror1: Vec<f64>,
    pub mirror0: Vec<f64>,
}

impl SigmaSet {
    pub fn compute(n: usize, depth: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("n must be positive".into()));
        }
        if depth == 0 {
            return Err(Error::Parameter("depth must be at least 1".into()));
        }
        if let Some(set) = finite_sigma(n) {
            return Ok(Self {
                n,
                depth,
                values: Some(set.iter().map(to_f64).collect()),
                lambda0: vec![],
                lambda1: vec![],
                interval: None,
                mirror1: vec![],
                mirror0: vec![],
            });
        }
        let lambda0 = lambda_sequence(n, Variant::Zero, depth)?;
        let lambda1 = lambda_sequence(n, Variant::One, depth)?;
        let nf = n as f64;
        let mirror = |xs: &[f64]| xs.iter().rev().map(|x| nf - x).collect::<Vec<_>>();
        Ok(Self {
            n,
            depth,
            values: None,
            mirror1: mirror(&lambda1),
            mirror0: mirror(&lambda0),
            interval: interval(n).map(|(lo, hi)| [lo, hi]),
            lambda0,
            lambda1,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}
