//! Batches of invariant checks, grouped into named suites.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::{c_alpha_by_nystrom, green_eval};
use crate::lsq::{conditioning_norm_paths, conditioning_ratio_empirical, verify_block_structure, DifferenceOperator};
use crate::num::svd_small;
use crate::ode::{c_alpha_by_ode, OdeScan};
use crate::toeplitz::{
    circulant_singular_values, compare_inverse_to_green, gram_defect, smallest_nonzero_circulant_singular_value,
    symbol_diff_power, Circulant,
};
use crate::wirtinger::{
    asymptotic_c, bound_lower, bound_upper, continuous_wirtinger_check, discrete_wirtinger_check, legendre_norm_check,
    periodic_wirtinger_check, rayleigh_minimize, rayleigh_quotient, TestFunction,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bounds,
    Circulant,
    Gram,
    Lsq,
    Green,
    Wirtinger,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Bounds, Suite::Circulant, Suite::Gram, Suite::Lsq, Suite::Green, Suite::Wirtinger];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::Circulant => "circulant",
            Suite::Gram => "gram",
            Suite::Lsq => "lsq",
            Suite::Green => "green",
            Suite::Wirtinger => "wirtinger",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(&[Suite::All])
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::invalid(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub alpha_max: u32,
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { alpha_max: 8, trials: 1000, seed: 7 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, suite: Suite, name: impl Into<String>, observed: impl Into<String>, passed: bool) {
        self.checks.push(Check { suite: suite.name(), name: name.into(), observed: observed.into(), passed });
    }

    /// Records an error as a failed check instead of aborting the suite.
    fn push_result(&mut self, suite: Suite, name: impl Into<String>, r: Result<(String, bool)>) {
        match r {
            Ok((obs, ok)) => self.push(suite, name, obs, ok),
            Err(e) => self.push(suite, name, format!("error: {e}"), false),
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Report {
    let mut report = Report::default();
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        match s {
            Suite::Bounds => bounds(&mut report, cfg),
            Suite::Circulant => circulant(&mut report),
            Suite::Gram => gram(&mut report),
            Suite::Lsq => lsq(&mut report, cfg),
            Suite::Green => green(&mut report),
            Suite::Wirtinger => wirtinger(&mut report, cfg),
            Suite::All => unreachable!(),
        }
    }
    report
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn bounds(report: &mut Report, cfg: &VerifyConfig) {
    let s = Suite::Bounds;
    for alpha in 1..=cfg.alpha_max {
        let (lo, hi) = (bound_lower(alpha), bound_upper(alpha));
        report.push_result(
            s,
            format!("sandwich alpha={alpha}"),
            c_alpha_by_nystrom(alpha, 200, 1e-13).map(|c| {
                let ok = lo < c.value && c.value < hi;
                let ratio = (c.value / asymptotic_c(alpha)).to_f64_lossy();
                (format!("{lo} < {} < {hi}; c/asymptotic = {ratio:.6}", c.value), ok && ratio > 0.85 && ratio < 1.0)
            }),
        );
        report.push_result(
            s,
            format!("rayleigh(p=1) = upper alpha={alpha}"),
            rayleigh_quotient(alpha, &TestFunction::unit(), 4 * alpha as usize + 2).map(|r| {
                let d = rel(r, hi.to_f64_lossy());
                (format!("rel diff {d:e}"), d <= 1e-10)
            }),
        );
        let a = f64::from(alpha);
        let law = (4.0 * a + 1.0) * (4.0 * a * a - a) / ((2.0 * a + 1.0) * (4.0 * a - 2.0));
        let ratio = (hi / lo).to_f64_lossy();
        report.push(s, format!("upper/lower law alpha={alpha}"), format!("{ratio} vs {law}"), rel(ratio, law) <= 1e-12);
    }
    // log-domain formulas stay finite and ordered far beyond double range
    let ok = (1..=200).all(|a| {
        let (l, u, asy) = (bound_lower(a), bound_upper(a), asymptotic_c(a));
        l < u && l.is_positive() && asy.log_abs().is_finite()
    });
    report.push(s, "log-domain bounds alpha<=200", format!("upper(200) = {}", bound_upper(200)), ok);
}

fn circulant(report: &mut Report) {
    let s = Suite::Circulant;
    for alpha in 1..=3u32 {
        let mut worst: f64 = 0.0;
        let mut err = None;
        for n in (2 * alpha as usize + 1)..=16 {
            let r = (|| -> Result<f64> {
                let mut want = circulant_singular_values(alpha, n)?;
                want.sort_by(|a, b| b.total_cmp(a));
                let got = svd_small(&Circulant::new(symbol_diff_power(alpha), n)?.to_dense());
                Ok(got.iter().zip(&want).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
            })();
            match r {
                Ok(d) => worst = worst.max(d),
                Err(e) => err = Some(e),
            }
        }
        match err {
            Some(e) => report.push(s, format!("explicit SVD alpha={alpha}"), format!("error: {e}"), false),
            None => report.push(s, format!("explicit SVD alpha={alpha}"), format!("max diff {worst:e}"), worst <= 1e-10),
        }
    }
    for alpha in 1..=3u32 {
        for n in [8usize, 64, 512, 4096] {
            let name = format!("smallest nonzero alpha={alpha} n={n}");
            report.push_result(
                s,
                name,
                circulant_singular_values(alpha, n).map(|v| {
                    let min = v.iter().copied().filter(|&x| x > 0.0).fold(f64::INFINITY, f64::min);
                    let want = smallest_nonzero_circulant_singular_value(alpha, n);
                    let d = rel(min, want);
                    (format!("{min:e} (rel {d:e})"), d <= 8.0 * f64::EPSILON)
                }),
            );
        }
    }
}

fn gram(report: &mut Report) {
    let s = Suite::Gram;
    for alpha in 1..=4u32 {
        report.push_result(
            s,
            format!("defect alpha={alpha}"),
            (|| {
                let a = gram_defect(alpha, 12)?;
                let b = gram_defect(alpha, 24)?;
                let k = alpha as usize;
                let mut block_diff: f64 = 0.0;
                for i in 0..k {
                    for j in 0..k {
                        block_diff = block_diff.max((a.block[(i, j)] - b.block[(i, j)]).abs());
                    }
                }
                let ok = a.corner == b.corner
                    && a.offblock_max <= 1e-12 * a.scale
                    && b.offblock_max <= 1e-12 * b.scale
                    && block_diff <= 1e-13;
                Ok((
                    format!("corner {:?}, offblock {:e}/{:e}, block diff {block_diff:e}", a.corner, a.offblock_max, b.offblock_max),
                    ok,
                ))
            })(),
        );
    }
}

fn lsq(report: &mut Report, cfg: &VerifyConfig) {
    let s = Suite::Lsq;
    for alpha in 1..=3u32 {
        for n in [10usize, 30, 100] {
            report.push_result(
                s,
                format!("two-path norm alpha={alpha} n={n}"),
                conditioning_norm_paths(alpha, n).map(|c| (format!("{} (rel {:e})", c.svd, c.rel_diff), c.rel_diff <= 1e-9)),
            );
        }
        for n in [10usize, 64] {
            report.push_result(
                s,
                format!("block structure alpha={alpha} n={n}"),
                verify_block_structure(alpha, n).map(|b| (format!("mismatch {:e}", b.max_mismatch), b.passed)),
            );
        }
    }
    let trials = cfg.trials.clamp(1, 200);
    report.push_result(
        s,
        "E/D ratio alpha=1 n=100",
        conditioning_ratio_empirical(1, 100, trials, cfg.seed).map(|r| {
            let scaled = r.max_ratio * PI / 100.0;
            let ok = r.max_ratio <= r.norm * (1.0 + 1e-9) && r.max_ratio >= r.norm * (1.0 - 1e-6);
            (format!("max ratio * pi/n = {scaled:.6}"), ok && scaled > 0.95 && scaled < 1.05)
        }),
    );
    report.push_result(
        s,
        "E/D ratio alpha=2 n=60",
        conditioning_ratio_empirical(2, 60, trials, cfg.seed).map(|r| {
            let scaled = r.max_ratio * 500.5467f64.sqrt() / 3600.0;
            (format!("max ratio * sqrt(c2)/n^2 = {scaled:.6}"), scaled > 0.8 && scaled < 1.1)
        }),
    );
    // polynomial samples of degree < alpha are annihilated
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst: f64 = 0.0;
    for alpha in 1..=4u32 {
        let n = 40;
        let op = DifferenceOperator::new(alpha, n).expect("valid operator");
        for _ in 0..100 {
            let coeffs: Vec<f64> = (0..alpha).map(|_| rng.random_range(-1.0..1.0)).collect();
            let y: Vec<f64> = (1..=n)
                .map(|j| coeffs.iter().rev().fold(0.0, |acc, c| acc * j as f64 + c))
                .collect();
            let scale = (n as f64).powi(alpha as i32 - 1);
            let d = op.apply(&y).iter().fold(0.0f64, |m, v| m.max(v.abs())) / scale;
            worst = worst.max(d);
        }
    }
    report.push(s, "kernel exactness", format!("max |nabla p| / n^(alpha-1) = {worst:e}"), worst <= 1e-12);
}

fn green(report: &mut Report) {
    let s = Suite::Green;
    for alpha in 1..=6u32 {
        let mut worst: f64 = 0.0;
        let mut negative = false;
        let z = |i: usize| i as f64 / 40.0;
        for i in 0..=40 {
            for j in 0..=40 {
                let g = green_eval(alpha, z(i), z(j)).unwrap_or(f64::NAN);
                let gt = green_eval(alpha, z(j), z(i)).unwrap_or(f64::NAN);
                let gr = green_eval(alpha, 1.0 - z(i), 1.0 - z(j)).unwrap_or(f64::NAN);
                worst = worst.max((g - gt).abs()).max((g - gr).abs());
                if i == 0 || i == 40 {
                    worst = worst.max(g.abs());
                }
                negative |= g < 0.0 || g.is_nan();
            }
        }
        report.push(
            s,
            format!("kernel symmetries alpha={alpha}"),
            format!("max violation {worst:e}"),
            worst <= 1e-11 && !negative,
        );
    }
    for alpha in 1..=4u32 {
        report.push_result(
            s,
            format!("nystrom vs ode alpha={alpha}"),
            (|| {
                let a = c_alpha_by_nystrom(alpha, 300, 1e-13)?;
                let b = c_alpha_by_ode(alpha, OdeScan::default_for(alpha))?;
                let d = a.rel_diff(&b);
                Ok((format!("{} vs {} (rel {d:e})", a.value, b.value), d <= 1e-6))
            })(),
        );
    }
    report.push_result(
        s,
        "inverse Toeplitz -> kernel alpha=1",
        (|| {
            let errs: Vec<f64> = [64, 128, 256, 512]
                .iter()
                .map(|&n| compare_inverse_to_green(1, n, 33))
                .collect::<Result<_>>()?;
            let ok = errs.windows(2).all(|w| w[1] < w[0]) && errs[3] <= 0.01;
            Ok((format!("{errs:?}"), ok))
        })(),
    );
}

fn wirtinger(report: &mut Report, cfg: &VerifyConfig) {
    let s = Suite::Wirtinger;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut violations = 0usize;
    let mut total = 0usize;
    for alpha in 1..=3u32 {
        for n in [8usize, 16, 33] {
            for _ in 0..cfg.trials {
                let u: Vec<Complex64> =
                    (0..n).map(|_| Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng))).collect();
                total += 1;
                match discrete_wirtinger_check(alpha, &u) {
                    Ok(c) if c.holds => {}
                    _ => violations += 1,
                }
            }
        }
    }
    report.push(s, "discrete inequality", format!("{violations} violations in {total} vectors"), violations == 0);

    for alpha in 1..=3u32 {
        report.push_result(
            s,
            format!("continuous inequality alpha={alpha}"),
            (|| {
                let c = c_alpha_by_ode(alpha, OdeScan::default_for(alpha))?;
                let mut min_ratio = f64::INFINITY;
                let mut ok = true;
                for _ in 0..100 {
                    let p: Vec<f64> = (0..6).map(|_| normal.sample(&mut rng)).collect();
                    let (ratio, holds) = continuous_wirtinger_check(alpha, &TestFunction::new(p), &c)?;
                    min_ratio = min_ratio.min(ratio / c.value_f64());
                    ok &= holds;
                }
                Ok((format!("min ratio / c = {min_ratio:.9}"), ok))
            })(),
        );
    }

    let one = Complex64::new(1.0, 0.0);
    report.push_result(
        s,
        "periodic equality (lowest mode)",
        periodic_wirtinger_check(2, &BTreeMap::from([(1, one), (-1, one)]))
            .map(|c| (format!("{} vs {}", c.lhs, c.rhs), c.holds && rel(c.lhs, c.rhs) <= 1e-14)),
    );
    report.push_result(
        s,
        "periodic strict (mode 2)",
        periodic_wirtinger_check(1, &BTreeMap::from([(2, one)]))
            .map(|c| (format!("{} vs {}", c.lhs, c.rhs), c.holds && c.lhs > c.rhs)),
    );
    report.push(
        s,
        "periodic rejects constants",
        "",
        periodic_wirtinger_check(1, &BTreeMap::from([(0, one)])).is_err(),
    );

    for alpha in [1u32, 2, 5, 10, 20] {
        report.push_result(
            s,
            format!("legendre alpha={alpha}"),
            legendre_norm_check(alpha).map(|c| (format!("norm err {:e}, rodrigues err {:e}", c.norm_error, c.rodrigues_error), c.passed)),
        );
    }

    report.push_result(
        s,
        "ritz monotone alpha=1",
        (|| {
            let vals: Vec<f64> = (1..=8).map(|d| rayleigh_minimize(1, d, 32)).collect::<Result<_>>()?;
            let ok = vals.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)) && rel(vals[5], PI * PI) <= 1e-8;
            Ok((format!("d=6: {}", vals[5]), ok))
        })(),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::EACH.iter().chain(&[Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn circulant_suite_passes() {
        let r = run_suite(Suite::Circulant, &VerifyConfig::default());
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
