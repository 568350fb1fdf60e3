use std::collections::HashMap;
use std::fmt;

use rug::Rational;

use crate::arith::{format_rational, parse_rational, BigComplex, Sign};
use crate::error::{Error, Result};
use crate::periods::PeriodData;
use crate::siegel::IMat3;

/// Version string embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Outcome of the square test on `Delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Jacobian,
    TwistedNonJacobian,
    HyperellipticOrDecomposable,
    Undetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Jacobian => "jacobian",
            Verdict::TwistedNonJacobian => "twisted_non_jacobian",
            Verdict::HyperellipticOrDecomposable => "hyperelliptic_or_decomposable",
            Verdict::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "jacobian" => Verdict::Jacobian,
            "twisted_non_jacobian" => Verdict::TwistedNonJacobian,
            "hyperelliptic_or_decomposable" => Verdict::HyperellipticOrDecomposable,
            "undetermined" => Verdict::Undetermined,
            _ => return Err(Error::InvalidArgument(format!("unknown verdict {s:?}"))),
        })
    }
}

/// `Delta = (pi/2)^54 chi18(tau) / det(omega1)^18` and everything derived
/// from it.
#[derive(Clone, Debug)]
pub struct DeltaReport {
    pub delta_numeric: BigComplex,
    pub delta_rational: Option<Rational>,
    pub square_root: Option<Rational>,
    pub verdict: Verdict,
    pub chi18_value: BigComplex,
    pub det_omega1_18: BigComplex,
    /// `delta_rational / Discr^2 = sign * 2^k`.
    pub exponent_vs_discr: Option<(Sign, i64)>,
    pub discriminant: Option<Rational>,
    /// Projective change applied before computing periods, if any.
    pub coordinate_change: Option<IMat3>,
    /// Accumulated twist parameter (product of all `D` applied).
    pub twist: Option<Rational>,
    pub vanishing_nulls: usize,
    pub min_null_log10: f64,
    pub second_null_log10: f64,
    /// Decades between the zero threshold side and the nonzero side of the
    /// null magnitudes.
    pub zero_margin_log10: f64,
    pub digits: u32,
}

fn opt<T>(v: &Option<T>, f: impl Fn(&T) -> String) -> String {
    v.as_ref().map(f).unwrap_or_else(|| "none".into())
}

fn format_imat(m: &IMat3) -> String {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" ; ")
}

fn parse_imat(s: &str) -> Result<IMat3> {
    let bad = || Error::InvalidArgument(format!("bad integer matrix {s:?}"));
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| r.split_whitespace().map(|x| x.parse().map_err(|_| bad())).collect())
        .collect::<Result<_>>()?;
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(bad());
    }
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j])))
}

impl fmt::Display for DeltaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# delta report")?;
        writeln!(f, "version: {VERSION}")?;
        writeln!(f, "convention: classical")?;
        writeln!(f, "precision: {}", self.digits)?;
        writeln!(f, "delta_numeric: {}", self.delta_numeric)?;
        writeln!(f, "delta_rational: {}", opt(&self.delta_rational, format_rational))?;
        writeln!(f, "square_root: {}", opt(&self.square_root, format_rational))?;
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "chi18_value: {}", self.chi18_value)?;
        writeln!(f, "det_omega1_18: {}", self.det_omega1_18)?;
        writeln!(f, "exponent_vs_discr: {}", opt(&self.exponent_vs_discr, |(s, k)| format!("{s} {k}")))?;
        writeln!(f, "discriminant: {}", opt(&self.discriminant, format_rational))?;
        writeln!(f, "coordinate_change: {}", opt(&self.coordinate_change, format_imat))?;
        writeln!(f, "twist: {}", opt(&self.twist, format_rational))?;
        writeln!(f, "vanishing_nulls: {}", self.vanishing_nulls)?;
        writeln!(f, "min_null_log10: {:.3}", self.min_null_log10)?;
        writeln!(f, "second_null_log10: {:.3}", self.second_null_log10)?;
        writeln!(f, "zero_margin_log10: {:.3}", self.zero_margin_log10)
    }
}

impl DeltaReport {
    /// Reads the format written by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once(':').ok_or_else(|| Error::parse(n + 1, "expected `key: value`"))?;
            fields.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| fields.get(k).map(String::as_str).ok_or_else(|| Error::parse(0, format!("missing field {k}")));
        let optional = |k: &str| -> Result<Option<&str>> {
            let v = get(k)?;
            Ok(if v == "none" { None } else { Some(v) })
        };
        let float = |k: &str| -> Result<f64> {
            get(k)?.parse().map_err(|_| Error::parse(0, format!("bad number in {k}")))
        };
        let exponent = optional("exponent_vs_discr")?
            .map(|v| -> Result<(Sign, i64)> {
                let bad = || Error::parse(0, format!("bad exponent_vs_discr {v:?}"));
                let (s, k) = v.split_once(' ').ok_or_else(bad)?;
                let s = match s {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    _ => return Err(bad()),
                };
                Ok((s, k.trim().parse().map_err(|_| bad())?))
            })
            .transpose()?;
        Ok(DeltaReport {
            delta_numeric: get("delta_numeric")?.parse()?,
            delta_rational: optional("delta_rational")?.map(parse_rational).transpose()?,
            square_root: optional("square_root")?.map(parse_rational).transpose()?,
            verdict: get("verdict")?.parse()?,
            chi18_value: get("chi18_value")?.parse()?,
            det_omega1_18: get("det_omega1_18")?.parse()?,
            exponent_vs_discr: exponent,
            discriminant: optional("discriminant")?.map(parse_rational).transpose()?,
            coordinate_change: optional("coordinate_change")?.map(parse_imat).transpose()?,
            twist: optional("twist")?.map(parse_rational).transpose()?,
            vanishing_nulls: get("vanishing_nulls")?
                .parse()
                .map_err(|_| Error::parse(0, "bad vanishing_nulls"))?,
            min_null_log10: float("min_null_log10")?,
            second_null_log10: float("second_null_log10")?,
            zero_margin_log10: float("zero_margin_log10")?,
            digits: get("precision")?.parse().map_err(|_| Error::parse(0, "bad precision"))?,
        })
    }
}

/// Writes a 3 x 3 complex grid, one row per line.
pub fn format_grid(m: &[[BigComplex; 3]; 3]) -> String {
    let mut s = String::new();
    for row in m {
        s.push_str(&row.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s
}

/// Reads a 3 x 3 grid of `(re,im)@p` literals; `#` lines are skipped.
pub fn parse_grid(text: &str) -> Result<[[BigComplex; 3]; 3]> {
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Vec<BigComplex> = line
            .split_whitespace()
            .map(|z| z.parse().map_err(|e: Error| Error::parse(n + 1, e.to_string())))
            .collect::<Result<_>>()?;
        if row.len() != 3 {
            return Err(Error::parse(n + 1, "expected three entries"));
        }
        rows.push(row);
    }
    if rows.len() != 3 {
        return Err(Error::parse(0, "expected three rows"));
    }
    let mut it = rows.into_iter();
    Ok(std::array::from_fn(|_| {
        let mut r = it.next().unwrap().into_iter();
        std::array::from_fn(|_| r.next().unwrap())
    }))
}

/// Text report for a period computation.
pub fn format_period_report(pd: &PeriodData) -> String {
    let mut s = String::new();
    s.push_str("# period report\n");
    s.push_str(&format!("version: {VERSION}\n"));
    s.push_str("differentials: x dx/f_y, y dx/f_y, dx/f_y\n");
    s.push_str(&format!("precision: {}\n", pd.digits));
    s.push_str(&format!("coordinate_change: {}\n", format_imat(&pd.curve.change())));
    s.push_str(&format!("base_point: {}\n", pd.monodromy.base_point));
    s.push_str(&format!("branch_points: {}\n", pd.monodromy.discriminant_points.len()));
    s.push_str(&format!("genus: {}\n", pd.genus()));
    s.push_str(&format!("radical_residual_log10: {:.1}\n", pd.radical_residual_log10));
    s.push_str("homology_change:\n");
    for row in &pd.basis.change {
        s.push_str(&row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    s.push_str("omega1:\n");
    s.push_str(&format_grid(&pd.omega1));
    s.push_str("omega2:\n");
    s.push_str(&format_grid(&pd.omega2));
    s.push_str("tau:\n");
    s.push_str(&pd.tau.to_string());
    s
}
