use rayon::prelude::*;
use rug::Rational;

use super::delta::delta_of_quartic_with;
use super::report::DeltaReport;
use crate::arith::{format_rational, Sign};
use crate::error::{Error, Result};
use crate::periods::PeriodOptions;
use crate::quartic::{discriminant, TernaryForm, TernaryQuartic};
use crate::theta::chi18_an;

/// One member `Q^2 + t^2 H` of a degenerating family.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub t: Rational,
    pub discriminant: Option<Rational>,
    pub report: Option<DeltaReport>,
    /// `log10` of the smallest even null at the reduced period point.
    pub min_null_log10: f64,
    pub second_null_log10: f64,
    /// Smallest null relative to the geometric mean of all 36, which does not
    /// depend on the representative of `tau`.
    pub normalized_min_null_log10: f64,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
    pub digits: u32,
}

impl ScanTable {
    /// Successful rows sorted by decreasing `t`.
    fn ordered(&self) -> Vec<&ScanRow> {
        let mut v: Vec<&ScanRow> = self.rows.iter().filter(|r| r.error.is_none()).collect();
        v.sort_by(|a, b| b.t.clone().abs().cmp(&a.t.clone().abs()));
        v
    }

    /// The smallest null decreases strictly as `t` shrinks.
    pub fn is_monotone(&self) -> bool {
        self.ordered().windows(2).all(|w| w[1].normalized_min_null_log10 < w[0].normalized_min_null_log10)
    }

    /// `log10(second / smallest)` at the smallest `t`.
    pub fn final_separation_log10(&self) -> Option<f64> {
        self.ordered().last().map(|r| r.second_null_log10 - r.min_null_log10)
    }

    /// The common `(sign, k)` of all members, if they agree.
    pub fn common_exponent(&self) -> Option<(Sign, i64)> {
        let mut it = self.ordered().into_iter().map(|r| r.report.as_ref().and_then(|d| d.exponent_vs_discr));
        let first = it.next()??;
        it.all(|e| e == Some(first)).then_some(first)
    }

    /// Fails unless the scan shows a single null degenerating: monotone decay
    /// with the runner-up at least `10^3` larger at the end.
    pub fn check(&self) -> Result<()> {
        if let Some(r) = self.rows.iter().find(|r| r.error.is_some()) {
            return Err(Error::Consistency(format!(
                "member t = {} failed: {}",
                format_rational(&r.t),
                r.error.as_deref().unwrap_or_default()
            )));
        }
        if !self.is_monotone() {
            return Err(Error::Consistency("smallest even null is not monotone in t".into()));
        }
        match self.final_separation_log10() {
            Some(s) if s >= 3.0 => {}
            s => {
                return Err(Error::Consistency(format!(
                    "second smallest null is not separated from the smallest (log10 ratio {s:?})"
                )))
            }
        }
        if self.common_exponent().is_none() {
            return Err(Error::Consistency("exponent against Discr^2 varies along the family".into()));
        }
        Ok(())
    }
}

impl std::fmt::Display for ScanTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "# degeneration scan")?;
        writeln!(f, "version: {}", super::VERSION)?;
        writeln!(f, "convention: classical")?;
        writeln!(f, "precision: {}", self.digits)?;
        writeln!(f, "# t | discriminant | min_null_log10 | second_null_log10 | normalized_min_log10 | verdict | exponent_vs_discr")?;
        for r in &self.rows {
            if let Some(e) = &r.error {
                writeln!(f, "{} | error: {e}", format_rational(&r.t))?;
                continue;
            }
            let rep = r.report.as_ref();
            writeln!(
                f,
                "{} | {} | {:.3} | {:.3} | {:.3} | {} | {}",
                format_rational(&r.t),
                r.discriminant.as_ref().map(format_rational).unwrap_or_else(|| "none".into()),
                r.min_null_log10,
                r.second_null_log10,
                r.normalized_min_null_log10,
                rep.map(|d| d.verdict.to_string()).unwrap_or_else(|| "none".into()),
                rep.and_then(|d| d.exponent_vs_discr)
                    .map(|(s, k)| format!("{s} {k}"))
                    .unwrap_or_else(|| "none".into()),
            )?;
        }
        Ok(())
    }
}

/// `Q^2 + t^2 H`.
pub fn family_member(q: &TernaryForm, h: &TernaryQuartic, t: &Rational) -> Result<TernaryQuartic> {
    q.expect_degree(2)?;
    h.expect_degree(4)?;
    let t2 = Rational::from(t * t);
    q.mul(q).add(&h.scale(&t2))
}

fn scan_one(q: &TernaryForm, h: &TernaryQuartic, t: &Rational, digits: u32) -> ScanRow {
    let mut row = ScanRow {
        t: t.clone(),
        discriminant: None,
        report: None,
        min_null_log10: f64::NAN,
        second_null_log10: f64::NAN,
        normalized_min_null_log10: f64::NAN,
        error: None,
    };
    let run = || -> Result<(Rational, DeltaReport, f64, f64, f64)> {
        let f = family_member(q, h, t)?;
        let disc = discriminant(&f)?;
        if disc == 0 {
            return Err(Error::Singular { discriminant: disc });
        }
        let (report, pd) = delta_of_quartic_with(&f, digits, PeriodOptions::default())?;
        let chi = chi18_an(&pd.tau, digits)?;
        Ok((disc, report, chi.min_null_log10(), chi.second_null_log10(), chi.normalized_min_null_log10()))
    };
    match run() {
        Ok((disc, report, m, s, n)) => {
            row.discriminant = Some(disc);
            row.report = Some(report);
            row.min_null_log10 = m;
            row.second_null_log10 = s;
            row.normalized_min_null_log10 = n;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Runs the family `Q^2 + t^2 H` over `t_values`. Per-member failures are
/// recorded in the table; `t = 0` is rejected outright.
pub fn degeneration_scan(q: &TernaryForm, h: &TernaryQuartic, t_values: &[Rational], digits: u32) -> Result<ScanTable> {
    q.expect_degree(2)?;
    h.expect_degree(4)?;
    if t_values.iter().any(|t| *t == 0) {
        return Err(Error::InvalidArgument("t = 0 gives the double conic Q^2, which is singular".into()));
    }
    let rows = t_values.par_iter().map(|t| scan_one(q, h, t, digits)).collect();
    Ok(ScanTable { rows, digits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_rejected() {
        let q = TernaryForm::from_terms(2, [([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], 1)]).unwrap();
        let h = crate::quartic::fermat_quartic();
        assert!(degeneration_scan(&q, &h, &[Rational::from((1, 2)), Rational::new()], 30).is_err());
        assert!(family_member(&h, &h, &Rational::from(1)).is_err());
    }
}
