//! Tile-count ratios measured against powers of τ.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::ArithError;
use crate::exact::GoldenInt;
use crate::grouping::CompositeKind;

/// Exponent range searched for the nearest power of τ.
pub const POWER_RANGE: std::ops::RangeInclusive<i32> = -8..=8;

/// `τ^k` for every `k` in [`POWER_RANGE`], from the exact ring.
pub fn tau_power_table() -> Vec<(i32, f64)> {
    POWER_RANGE
        .map(|k| (k, GoldenInt::tau_pow(k).expect("small power").embed()))
        .collect()
}

/// `(k, τ^k, relative deviation)` for the `k` minimising `|ln ratio − k ln τ|`.
pub fn nearest_tau_power(ratio: f64) -> (i32, f64, f64) {
    let ln_tau = crate::exact::PHI.ln();
    let (k, p) = tau_power_table()
        .into_iter()
        .min_by(|a, b| {
            let da = (ratio.ln() - a.0 as f64 * ln_tau).abs();
            let db = (ratio.ln() - b.0 as f64 * ln_tau).abs();
            da.total_cmp(&db)
        })
        .expect("nonempty table");
    (k, p, (ratio - p).abs() / p)
}

/// Iterates `(a, o) ↦ (a + o, a + 2o)`, returning generations `0..=generations`.
pub fn substitution_counts(
    seed: (u64, u64),
    generations: u32,
) -> Result<Vec<(u64, u64)>, ArithError> {
    let mut out = vec![seed];
    let mut cur = seed;
    for _ in 0..generations {
        let a = cur.0.checked_add(cur.1);
        let o = cur.1.checked_mul(2).and_then(|x| x.checked_add(cur.0));
        cur = match (a, o) {
            (Some(a), Some(o)) => (a, o),
            _ => return Err(ArithError::Overflow("substitution counts")),
        };
        out.push(cur);
    }
    Ok(out)
}

/// Obtuse to acute ratio of the last entry, if the acute count is nonzero.
pub fn final_ratio(counts: &[(u64, u64)]) -> Option<f64> {
    counts
        .last()
        .filter(|c| c.0 > 0)
        .map(|&(a, o)| o as f64 / a as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioEntry {
    pub numerator: String,
    pub denominator: String,
    pub ratio: f64,
    pub power: i32,
    pub tau_power: f64,
    pub deviation: f64,
}

impl RatioEntry {
    fn new(numerator: String, denominator: String, num: usize, den: usize) -> Self {
        let ratio = num as f64 / den as f64;
        let (power, tau_power, deviation) = nearest_tau_power(ratio);
        Self {
            numerator,
            denominator,
            ratio,
            power,
            tau_power,
            deviation,
        }
    }
}

impl fmt::Display for RatioEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {:<16} {:>14.10}  tau^{:<3} {:>14.10}  {:>12.10}",
            self.numerator,
            self.denominator,
            self.ratio,
            self.power,
            self.tau_power,
            self.deviation
        )
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RatioReport {
    pub entries: Vec<RatioEntry>,
}

impl fmt::Display for RatioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<28} {:<16} {:>14}  {:<7} {:>14}  {:>12}",
            "numerator", "denominator", "ratio", "nearest", "value", "deviation"
        )?;
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Ratios of every pair of present kinds (earlier kind over later kind),
/// plus `(thick+thin)/thick` and `(thick+thin)/thin` when both rhombs occur.
pub fn ratio_report(counts: &BTreeMap<CompositeKind, usize>) -> RatioReport {
    let present: Vec<(CompositeKind, usize)> = counts
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(&k, &n)| (k, n))
        .collect();
    let mut entries = Vec::new();
    for (i, &(a, na)) in present.iter().enumerate() {
        for &(b, nb) in &present[i + 1..] {
            entries.push(RatioEntry::new(a.to_string(), b.to_string(), na, nb));
        }
    }
    let get = |k| counts.get(&k).copied().unwrap_or(0);
    let (thick, thin) = (
        get(CompositeKind::ThickRhomb),
        get(CompositeKind::ThinRhomb),
    );
    if thick > 0 && thin > 0 {
        let sum = "ThickRhomb+ThinRhomb".to_string();
        entries.push(RatioEntry::new(
            sum.clone(),
            "ThickRhomb".into(),
            thick + thin,
            thick,
        ));
        entries.push(RatioEntry::new(sum, "ThinRhomb".into(), thick + thin, thin));
    }
    RatioReport { entries }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlloyCheck {
    pub parts: (u64, u64),
    pub ratio: f64,
    pub power: i32,
    pub tau_power: f64,
    pub deviation: f64,
}

impl fmt::Display for AlloyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{} ratio {:.10} nearest tau^{} = {:.10} deviation {:.10}",
            self.parts.0, self.parts.1, self.ratio, self.power, self.tau_power, self.deviation
        )
    }
}

pub fn alloy_check(parts_a: u64, parts_b: u64) -> Option<AlloyCheck> {
    if parts_b == 0 {
        return None;
    }
    let ratio = parts_a as f64 / parts_b as f64;
    let (power, tau_power, deviation) = nearest_tau_power(ratio);
    Some(AlloyCheck {
        parts: (parts_a, parts_b),
        ratio,
        power,
        tau_power,
        deviation,
    })
}
