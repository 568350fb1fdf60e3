use super::eval::{par_nulls, Convention, Reindexed};
use super::{enumerate_even_characteristics, SiegelPoint, ThetaCharacteristic};
use crate::arith::BigComplex;
use crate::error::{Error, Result};
use crate::siegel::{reduce, SymplecticMatrix};

/// Extra working digits used for the individual theta nulls.
const NULL_GUARD: u32 = 10;

/// How `chi18` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chi18Options {
    pub convention: Convention,
    /// Move `tau` toward the fundamental domain first and transform back
    /// through the weight-18 cocycle. Only meaningful for the classical
    /// convention, whose product is modular.
    pub reduce: bool,
}

impl Default for Chi18Options {
    fn default() -> Self {
        Chi18Options { convention: Convention::Classical, reduce: true }
    }
}

/// `chi18(tau)` together with the data it was computed from.
#[derive(Clone, Debug)]
pub struct Chi18 {
    /// Value at the input point.
    pub value: BigComplex,
    /// Product of the nulls at `evaluation_point`.
    pub reduced_value: BigComplex,
    pub evaluation_point: SiegelPoint,
    /// `evaluation_point = gamma . tau`.
    pub gamma: SymplecticMatrix,
    /// `det(C tau + D)` for `gamma`.
    pub cocycle: BigComplex,
    /// The 36 even nulls at `evaluation_point`, in enumeration order.
    pub nulls: Vec<(ThetaCharacteristic, BigComplex)>,
    pub convention: Convention,
    pub digits: u32,
    pub lambda_min: f64,
}

impl Chi18 {
    /// Nulls below `10^-(p/3)` count as zero.
    pub fn zero_threshold_log10(&self) -> f64 {
        -(self.digits as f64) / 3.0
    }

    /// `log10 |theta|` of the even nulls in ascending order.
    pub fn null_magnitudes_log10(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.nulls.iter().map(|(_, z)| z.log10_abs()).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    pub fn vanishing_count(&self) -> usize {
        let t = self.zero_threshold_log10();
        self.nulls.iter().filter(|(_, z)| z.log10_abs() < t).count()
    }

    pub fn is_numerically_zero(&self) -> bool {
        self.vanishing_count() > 0
    }

    pub fn min_null_log10(&self) -> f64 {
        self.null_magnitudes_log10()[0]
    }

    pub fn second_null_log10(&self) -> f64 {
        self.null_magnitudes_log10()[1]
    }

    /// `log10 (|theta_min| / |chi18|^(1/36))`, a scale-free measure of how
    /// far the smallest null sits below the typical one.
    pub fn normalized_min_null_log10(&self) -> f64 {
        let v = self.null_magnitudes_log10();
        v[0] - v.iter().sum::<f64>() / v.len() as f64
    }

    /// The smallest null, with its characteristic.
    pub fn min_null(&self) -> &(ThetaCharacteristic, BigComplex) {
        self.nulls
            .iter()
            .min_by(|a, b| a.1.log10_abs().partial_cmp(&b.1.log10_abs()).unwrap())
            .expect("36 nulls")
    }
}

/// Product of the 36 even theta nulls in the classical convention,
/// evaluated at a reduced representative.
pub fn chi18_an(tau: &SiegelPoint, digits: u32) -> Result<Chi18> {
    chi18_with(tau, digits, Chi18Options::default())
}

pub fn chi18_with(tau: &SiegelPoint, digits: u32, opts: Chi18Options) -> Result<Chi18> {
    if opts.reduce && opts.convention == Convention::PaperLiteral {
        return Err(Error::InvalidArgument(
            "the paper-literal product is not modular; evaluate it without reduction".into(),
        ));
    }
    let work = digits + NULL_GUARD;
    let tau = tau.with_digits(tau.digits().max(work));
    let (point, gamma, cocycle) = if opts.reduce {
        let r = reduce(&tau, work)?;
        (r.tau_reduced, r.gamma, r.cocycle)
    } else {
        (tau.clone(), SymplecticMatrix::identity(), BigComplex::one(work))
    };
    let reindexed = Reindexed::new(&point)?;
    let chars = enumerate_even_characteristics();
    let values = par_nulls(&reindexed, &chars, work, opts.convention)?;
    let mut product = BigComplex::one(work);
    for v in &values {
        product = &product * v;
    }
    let value = if opts.reduce { product.checked_div(&cocycle.powu(18))? } else { product.clone() };
    Ok(Chi18 {
        value: value.with_digits(digits),
        reduced_value: product.with_digits(digits),
        evaluation_point: point,
        gamma,
        cocycle: cocycle.with_digits(digits),
        nulls: chars.into_iter().zip(values.into_iter().map(|v| v.with_digits(digits))).collect(),
        convention: opts.convention,
        digits,
        lambda_min: reindexed.lambda_min(),
    })
}
