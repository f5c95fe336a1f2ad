//! Twiddle tables for the four butterfly strategies.
//!
//! Every table holds `n / 2` entries for the forward angles
//! `theta_k = -2 pi k / n`, evaluated once in `f64`. The factorized strategies
//! store an outer multiplier and a precomputed ratio so that the butterfly
//! collapses to six fused multiply-adds:
//!
//! * Linzer-Feig divides by `sin(theta)` (ratio `cot(theta)`, singular at `k = 0`),
//! * the cosine variant divides by `cos(theta)` (ratio `tan(theta)`, near-singular
//!   at `k = n / 4`),
//! * dual-select picks, per entry, whichever of the two has the larger outer
//!   multiplier, which keeps `|ratio| <= 1` everywhere.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmt::g17;

/// Clamp applied to `sin(theta) = 0` by the Linzer-Feig table when none is given.
pub const DEFAULT_CLAMP_EPS: f64 = 1e-7;

/// Butterfly strategy; selects both the table layout and the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    Standard,
    LinzerFeig,
    Cosine,
    DualSelect,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Standard,
        Strategy::LinzerFeig,
        Strategy::Cosine,
        Strategy::DualSelect,
    ];

    /// Strategies whose kernel is the 6-FMA factorized butterfly.
    pub const FMA: [Strategy; 3] = [Strategy::LinzerFeig, Strategy::Cosine, Strategy::DualSelect];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Standard => "Standard",
            Strategy::LinzerFeig => "LinzerFeig",
            Strategy::Cosine => "Cosine",
            Strategy::DualSelect => "DualSelect",
        }
    }

    pub fn is_fma(self) -> bool {
        self != Strategy::Standard
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "standard" | "std" => Ok(Strategy::Standard),
            "lf" | "linzerfeig" | "sin" => Ok(Strategy::LinzerFeig),
            "cos" | "cosine" => Ok(Strategy::Cosine),
            "dual" | "dualselect" => Ok(Strategy::DualSelect),
            _ => Err(Error::UnknownStrategy(s.to_string())),
        }
    }
}

/// Which factorization an entry uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwiddlePath {
    /// `(omega_r, omega_i / omega_r)`: cosine outer multiplier.
    #[serde(rename = "COS")]
    Cos,
    /// `(omega_i, omega_r / omega_i)`: sine outer multiplier.
    #[serde(rename = "SIN")]
    Sin,
}

impl TwiddlePath {
    pub fn name(self) -> &'static str {
        match self {
            TwiddlePath::Cos => "COS",
            TwiddlePath::Sin => "SIN",
        }
    }
}

/// One precomputed twiddle record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwiddleEntry {
    /// Outer factor of the 6-FMA kernel (`omega_r` on the COS path,
    /// `omega_i` on the SIN path, possibly clamped). Equal to `omega_r` and
    /// unused for standard tables.
    pub multiplier: f64,
    /// Precomputed ratio `t`; zero for standard tables.
    pub ratio: f64,
    /// `None` for standard tables, which do not factorize.
    pub path: Option<TwiddlePath>,
    pub omega_r: f64,
    pub omega_i: f64,
    /// The denominator was exactly zero and was replaced by a clamp value.
    pub clamped: bool,
}

impl TwiddleEntry {
    fn raw(omega_r: f64, omega_i: f64) -> Self {
        Self {
            multiplier: omega_r,
            ratio: 0.0,
            path: None,
            omega_r,
            omega_i,
            clamped: false,
        }
    }

    fn cos_path(omega_r: f64, omega_i: f64) -> Self {
        Self {
            multiplier: omega_r,
            ratio: omega_i / omega_r,
            path: Some(TwiddlePath::Cos),
            omega_r,
            omega_i,
            clamped: false,
        }
    }

    fn sin_path(omega_r: f64, omega_i: f64) -> Self {
        Self {
            multiplier: omega_i,
            ratio: omega_r / omega_i,
            path: Some(TwiddlePath::Sin),
            omega_r,
            omega_i,
            clamped: false,
        }
    }

    /// The twiddle component the multiplier does not hold.
    pub fn complement(&self) -> f64 {
        match self.path {
            Some(TwiddlePath::Sin) => self.omega_r,
            _ => self.omega_i,
        }
    }

    /// The twiddle component the multiplier is meant to hold, before clamping.
    pub fn outer_component(&self) -> f64 {
        match self.path {
            Some(TwiddlePath::Sin) => self.omega_i,
            _ => self.omega_r,
        }
    }
}

/// Ratio and path statistics of one table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioStats {
    /// Largest `|ratio|` over entries that were not clamped.
    pub t_max: f64,
    /// Smallest `k` attaining `t_max`.
    pub argmax_k: usize,
    /// Entries whose denominator was exactly zero.
    pub singular_count: usize,
    pub cos_path_count: usize,
    pub sin_path_count: usize,
}

/// All `n / 2` twiddle entries of one size and strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct TwiddleTable {
    n: usize,
    strategy: Strategy,
    entries: Vec<TwiddleEntry>,
}

/// Check that `n` is a power of two no smaller than 2.
pub fn validate_size(n: usize) -> Result<()> {
    if n >= 2 && n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::InvalidSize(n))
    }
}

/// Forward angle of entry `k`.
#[inline]
pub fn theta(k: usize, n: usize) -> f64 {
    -2.0 * PI * k as f64 / n as f64
}

fn unit_twiddles(n: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..n / 2).map(move |k| {
        let (s, c) = theta(k, n).sin_cos();
        (c, s)
    })
}

/// Raw `(omega_r, omega_i)` pairs for the 10-operation butterfly.
pub fn build_standard_table(n: usize) -> Result<TwiddleTable> {
    validate_size(n)?;
    let entries = unit_twiddles(n).map(|(c, s)| TwiddleEntry::raw(c, s)).collect();
    Ok(TwiddleTable {
        n,
        strategy: Strategy::Standard,
        entries,
    })
}

/// Sine-path table with ratio `cot(theta)`.
///
/// Where `sin(theta)` is exactly zero (`k = 0`) it is replaced by
/// `-clamp_eps`, the sign `sin(theta)` takes as `theta -> 0-`.
pub fn build_linzer_feig_table(n: usize, clamp_eps: f64) -> Result<TwiddleTable> {
    validate_size(n)?;
    if !(clamp_eps.is_finite() && clamp_eps > 0.0) {
        return Err(Error::InvalidClamp(clamp_eps));
    }
    let entries = unit_twiddles(n)
        .map(|(c, s)| {
            if s == 0.0 {
                let clamped = -clamp_eps;
                TwiddleEntry {
                    multiplier: clamped,
                    ratio: c / clamped,
                    path: Some(TwiddlePath::Sin),
                    omega_r: c,
                    omega_i: s,
                    clamped: true,
                }
            } else {
                TwiddleEntry::sin_path(c, s)
            }
        })
        .collect();
    Ok(TwiddleTable {
        n,
        strategy: Strategy::LinzerFeig,
        entries,
    })
}

/// Cosine-path table with ratio `tan(theta)`. Never clamps: `cos(-pi/2)` is a
/// tiny nonzero number in `f64`, so the ratio at `k = n / 4` is huge but finite.
pub fn build_cosine_table(n: usize) -> Result<TwiddleTable> {
    validate_size(n)?;
    let entries = unit_twiddles(n).map(|(c, s)| TwiddleEntry::cos_path(c, s)).collect();
    Ok(TwiddleTable {
        n,
        strategy: Strategy::Cosine,
        entries,
    })
}

/// Dual-select table: the cosine path when `|omega_r| >= |omega_i|`, the sine
/// path otherwise. The divisor is always the larger component, so
/// `|ratio| <= 1` and no entry is ever clamped.
pub fn build_dual_select_table(n: usize) -> Result<TwiddleTable> {
    validate_size(n)?;
    let entries = unit_twiddles(n)
        .map(|(c, s)| {
            if c.abs() >= s.abs() {
                TwiddleEntry::cos_path(c, s)
            } else {
                TwiddleEntry::sin_path(c, s)
            }
        })
        .collect();
    Ok(TwiddleTable {
        n,
        strategy: Strategy::DualSelect,
        entries,
    })
}

/// Statistics over a table's ratios and paths.
pub fn table_stats(table: &TwiddleTable) -> RatioStats {
    let mut stats = RatioStats {
        t_max: 0.0,
        argmax_k: 0,
        singular_count: 0,
        cos_path_count: 0,
        sin_path_count: 0,
    };
    for (k, e) in table.entries.iter().enumerate() {
        match e.path {
            Some(TwiddlePath::Cos) => stats.cos_path_count += 1,
            Some(TwiddlePath::Sin) => stats.sin_path_count += 1,
            None => {}
        }
        if e.clamped {
            stats.singular_count += 1;
            continue;
        }
        let t = e.ratio.abs();
        if t > stats.t_max {
            stats.t_max = t;
            stats.argmax_k = k;
        }
    }
    stats
}

impl TwiddleTable {
    /// Build the table for `strategy`, using [`DEFAULT_CLAMP_EPS`] for Linzer-Feig.
    pub fn new(n: usize, strategy: Strategy) -> Result<Self> {
        Self::with_clamp(n, strategy, DEFAULT_CLAMP_EPS)
    }

    /// Build the table for `strategy`; `clamp_eps` only affects Linzer-Feig.
    pub fn with_clamp(n: usize, strategy: Strategy, clamp_eps: f64) -> Result<Self> {
        match strategy {
            Strategy::Standard => build_standard_table(n),
            Strategy::LinzerFeig => build_linzer_feig_table(n, clamp_eps),
            Strategy::Cosine => build_cosine_table(n),
            Strategy::DualSelect => build_dual_select_table(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn entries(&self) -> &[TwiddleEntry] {
        &self.entries
    }

    /// Mutable access for callers that post-process stored values, such as
    /// rounding into a working precision or fault injection in checks.
    pub fn entries_mut(&mut self) -> &mut [TwiddleEntry] {
        &mut self.entries
    }

    pub fn stats(&self) -> RatioStats {
        table_stats(self)
    }

    /// Apply `f` to every stored scalar (multiplier, ratio, omega_r, omega_i).
    pub fn map_scalars(&mut self, mut f: impl FnMut(f64) -> f64) {
        for e in &mut self.entries {
            e.multiplier = f(e.multiplier);
            e.ratio = f(e.ratio);
            e.omega_r = f(e.omega_r);
            e.omega_i = f(e.omega_i);
        }
    }

    /// Write the table as CSV:
    /// `k,theta,omega_r,omega_i,path,multiplier,ratio,clamped`, values at 17
    /// significant digits and an empty path for standard tables.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "k,theta,omega_r,omega_i,path,multiplier,ratio,clamped")?;
        for (k, e) in self.entries.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                k,
                g17(theta(k, self.n)),
                g17(e.omega_r),
                g17(e.omega_i),
                e.path.map_or("", TwiddlePath::name),
                g17(e.multiplier),
                g17(e.ratio),
                e.clamped
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Distance in units of the last place at `reference`.
    fn ulps(x: f64, reference: f64) -> f64 {
        let ulp = if reference == 0.0 {
            f64::from_bits(1)
        } else {
            let bits = reference.abs().to_bits();
            f64::from_bits(bits + 1) - reference.abs()
        };
        (x - reference).abs() / ulp
    }

    #[test]
    fn rejects_bad_sizes() {
        for n in [0, 1, 3, 6, 1023] {
            assert_eq!(build_dual_select_table(n), Err(Error::InvalidSize(n)));
        }
        assert_eq!(
            build_linzer_feig_table(8, 0.0),
            Err(Error::InvalidClamp(0.0))
        );
    }

    #[test]
    fn standard_examples() {
        let t = build_standard_table(4).unwrap();
        assert_eq!(t.entries().len(), 2);
        assert_eq!((t.entries()[0].omega_r, t.entries()[0].omega_i), (1.0, 0.0));
        let e = t.entries()[1];
        assert_eq!(e.omega_i, -1.0);
        assert!(e.omega_r.abs() > 6.0e-17 && e.omega_r.abs() < 6.2e-17);
        assert!(!e.clamped);

        let t = build_standard_table(8).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(ulps(t.entries()[1].omega_r, h) <= 2.0);
        assert!(ulps(t.entries()[1].omega_i, -h) <= 2.0);
    }

    #[test]
    fn linzer_feig_examples() {
        let t = build_linzer_feig_table(1024, DEFAULT_CLAMP_EPS).unwrap();
        let e1 = t.entries()[1];
        assert!((e1.ratio.abs() - 163.0).abs() < 0.05, "{}", e1.ratio);
        assert_eq!(e1.path, Some(TwiddlePath::Sin));

        let e256 = t.entries()[256];
        assert_eq!(e256.multiplier, -1.0);
        assert!(e256.ratio.abs() < 1e-16);

        let e0 = t.entries()[0];
        assert!(e0.clamped);
        assert_eq!(e0.multiplier, -1e-7);
        assert!((e0.ratio.abs() - 1e7).abs() < 1e-8);
        assert_eq!(t.entries().iter().filter(|e| e.clamped).count(), 1);
    }

    #[test]
    fn cosine_examples() {
        let t = build_cosine_table(1024).unwrap();
        assert_eq!((t.entries()[0].multiplier, t.entries()[0].ratio), (1.0, 0.0));
        assert!(t.entries()[256].ratio.abs() > 1e15);
        assert!(t.entries().iter().all(|e| !e.clamped && e.ratio.is_finite()));
        let t = build_cosine_table(8).unwrap();
        assert!(ulps(t.entries()[1].ratio, -1.0) <= 2.0);
    }

    #[test]
    fn dual_select_examples() {
        let t = build_dual_select_table(1024).unwrap();
        let e0 = t.entries()[0];
        assert_eq!((e0.multiplier, e0.ratio, e0.path), (1.0, 0.0, Some(TwiddlePath::Cos)));

        let e128 = t.entries()[128];
        assert_eq!(e128.path, Some(TwiddlePath::Cos));
        assert!(ulps(e128.ratio.abs(), 1.0) <= 1.0, "{}", e128.ratio);

        let e256 = t.entries()[256];
        assert_eq!(e256.multiplier, -1.0);
        assert_eq!(e256.path, Some(TwiddlePath::Sin));
        assert!(e256.ratio.abs() < 1e-16);
    }

    #[test]
    fn stats_examples() {
        let lf = build_linzer_feig_table(1024, DEFAULT_CLAMP_EPS).unwrap().stats();
        assert!((lf.t_max - 163.0).abs() <= 0.5);
        assert_eq!((lf.argmax_k, lf.singular_count), (1, 1));
        assert_eq!((lf.cos_path_count, lf.sin_path_count), (0, 512));

        let dual = build_dual_select_table(1024).unwrap().stats();
        assert!(ulps(dual.t_max, 1.0) <= 1.0);
        assert_eq!(dual.argmax_k, 128);
        assert_eq!(dual.singular_count, 0);
        assert_eq!((dual.cos_path_count, dual.sin_path_count), (256, 256));

        let cos = build_cosine_table(1024).unwrap().stats();
        assert!(cos.t_max > 1e15);
        assert_eq!((cos.argmax_k, cos.singular_count), (256, 0));

        let std = build_standard_table(16).unwrap().stats();
        assert_eq!((std.t_max, std.cos_path_count, std.sin_path_count), (0.0, 0, 0));
    }

    #[test]
    fn dual_select_ratio_bounded_up_to_4096() {
        let mut n = 2;
        while n <= 4096 {
            let t = build_dual_select_table(n).unwrap();
            for (k, e) in t.entries().iter().enumerate() {
                assert!(e.ratio.abs() <= 1.0, "n={n} k={k} ratio={}", e.ratio);
            }
            n *= 2;
        }
    }

    #[test]
    fn entries_are_unit_modulus_and_reconstruct() {
        for n in [2, 8, 64, 1024, 4096] {
            for strategy in Strategy::ALL {
                let t = TwiddleTable::new(n, strategy).unwrap();
                for (k, e) in t.entries().iter().enumerate() {
                    let modulus = e.omega_r * e.omega_r + e.omega_i * e.omega_i;
                    assert!((modulus - 1.0).abs() <= 4.0 * f64::EPSILON, "n={n} k={k}");
                    if e.clamped || e.path.is_none() {
                        continue;
                    }
                    assert_eq!(e.multiplier, e.outer_component());
                    let rebuilt = e.multiplier * e.ratio;
                    assert!(
                        ulps(rebuilt, e.complement()) <= 2.0,
                        "{strategy} n={n} k={k}: {rebuilt} vs {}",
                        e.complement()
                    );
                }
            }
        }
    }

    #[test]
    fn dual_select_matches_a_single_path_entry() {
        for n in [8, 256, 2048] {
            let lf = build_linzer_feig_table(n, DEFAULT_CLAMP_EPS).unwrap();
            let cos = build_cosine_table(n).unwrap();
            let dual = build_dual_select_table(n).unwrap();
            for k in 1..n / 2 {
                let d = dual.entries()[k];
                assert!(d == lf.entries()[k] || d == cos.entries()[k], "n={n} k={k}");
            }
            assert_eq!(dual.entries()[0], cos.entries()[0]);
        }
    }

    #[test]
    fn path_split_is_even() {
        for n in [8, 16, 1024, 65536] {
            let s = build_dual_select_table(n).unwrap().stats();
            assert_eq!((s.cos_path_count, s.sin_path_count), (n / 4, n / 4), "n={n}");
        }
    }

    #[test]
    fn csv_dump() {
        let t = build_dual_select_table(8).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "k,theta,omega_r,omega_i,path,multiplier,ratio,clamped");
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[1], "0,0,1,0,COS,1,0,false");
        assert!(lines[2].starts_with("1,-0.78539816339744828,0.70710678118654757,"));
    }

    #[test]
    fn parse_strategy_names() {
        assert_eq!("dual".parse::<Strategy>().unwrap(), Strategy::DualSelect);
        assert_eq!("lf".parse::<Strategy>().unwrap(), Strategy::LinzerFeig);
        assert_eq!("Linzer-Feig".parse::<Strategy>().unwrap(), Strategy::LinzerFeig);
        assert_eq!("cosine".parse::<Strategy>().unwrap(), Strategy::Cosine);
        assert_eq!("standard".parse::<Strategy>().unwrap(), Strategy::Standard);
        assert!("radix4".parse::<Strategy>().is_err());
    }
}
