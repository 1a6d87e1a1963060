//! Closed-form bound functions and numerical scans.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partitions::WeightedCountParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErBoundParams {
    /// Fraction `|B| / n`, in `(0, 1)`.
    pub t: f64,
    /// Edge/vertex ratio `m / n`.
    pub c: f64,
    pub beta: f64,
    pub epsilon: f64,
    /// Last index of the `g` series.
    pub d_trunc: usize,
}

impl ErBoundParams {
    pub fn new(t: f64, c: f64, beta: f64, epsilon: f64, d_trunc: usize) -> Result<Self> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::invalid(format!("t = {t} outside (0, 1)")));
        }
        if c.is_nan() || c <= 0.0 {
            return Err(Error::invalid(format!("c = {c} must be positive")));
        }
        if beta.is_nan() || epsilon.is_nan() || beta < 0.0 || epsilon < 0.0 {
            return Err(Error::invalid("beta and epsilon must be nonnegative"));
        }
        if d_trunc < 2 {
            return Err(Error::invalid("d_trunc must be >= 2"));
        }
        Ok(ErBoundParams {
            t,
            c,
            beta,
            epsilon,
            d_trunc,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundTerms {
    pub x: f64,
    pub g: f64,
    pub r: f64,
    pub phi1: f64,
    pub phi2: f64,
}

pub fn x_of(t: f64, c: f64) -> f64 {
    2.0 * c * t / (2.0 * t * t - 2.0 * t + 1.0)
}

/// `sum_{i=2}^{d} i^{i-2}/i! * y^{i-1}`, terms built in log space.
///
/// With `y = x e^{-x} <= 1/e` the terms decay like `(e y)^i i^{-5/2}`, so the
/// tail is geometric with ratio `e y` whenever `x != 1`.
pub fn tree_series(y: f64, d: usize) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    let ln_y = y.ln();
    let mut ln_fact = 0.0;
    let mut sum = NeumaierSum::default();
    for i in 1..=d {
        ln_fact += (i as f64).ln();
        if i >= 2 {
            let fi = i as f64;
            sum.add(((fi - 2.0) * fi.ln() - ln_fact + (fi - 1.0) * ln_y).exp());
        }
    }
    sum.value()
}

pub fn er_terms(p: &ErBoundParams) -> BoundTerms {
    let ErBoundParams {
        t,
        c,
        beta,
        epsilon,
        d_trunc,
    } = *p;
    let x = x_of(t, c);
    let g = tree_series(x * (-x).exp(), d_trunc);
    let r = 2.0 * t * t / ((1.0 + epsilon).powi(2) * c) * (-2.0 * x).exp();
    let phi1 = (1.0 - 2.0 * t + 2.0 * t * t + 2.0 * t * beta).powf(c);
    let phi2 = (-(1.0 / c) * r * (1.0 + g).powi(2)).exp().powf(c);
    BoundTerms { x, g, r, phi1, phi2 }
}

/// `((5/9 + 4 beta / 3) phi2(2/3))^c / ((2/3)^{2/3} (1/3)^{1/3})`.
pub fn z_of(beta: f64, epsilon: f64, c: f64, d_trunc: usize) -> Result<f64> {
    let terms = er_terms(&ErBoundParams::new(2.0 / 3.0, c, beta, epsilon, d_trunc)?);
    Ok(((5.0 / 9.0 + 4.0 * beta / 3.0) * terms.phi2).powf(c) / f0(2.0 / 3.0))
}

/// `z` evaluated entirely in log space with compensated sums; a second
/// opinion for values close to 1.
pub fn z_of_compensated(beta: f64, epsilon: f64, c: f64, d_trunc: usize) -> Result<f64> {
    let p = ErBoundParams::new(2.0 / 3.0, c, beta, epsilon, d_trunc)?;
    let t = p.t;
    let x = x_of(t, c);
    let g = tree_series(x * (-x).exp(), d_trunc);
    let ln_r = (2.0 * t * t).ln() - 2.0 * (1.0 + epsilon).ln() - c.ln() - 2.0 * x;
    let mut ln_z = NeumaierSum::default();
    ln_z.add(c * (5.0 / 9.0 + 4.0 * beta / 3.0).ln());
    ln_z.add(-c * (ln_r + 2.0 * (1.0 + g).ln()).exp());
    ln_z.add(-t * t.ln());
    ln_z.add(-(1.0 - t) * (1.0 - t).ln());
    Ok(ln_z.value().exp())
}

#[derive(Clone, Copy, Debug, Default)]
struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `1 / (beta^beta (1 - beta)^(1 - beta))`.
pub fn entropy_factor(beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::invalid(format!("beta = {beta} outside (0, 1)")));
    }
    Ok(1.0 / f0(beta))
}

/// `theta / sqrt(beta (1 - beta) n) * entropy_factor(beta)^n` with `theta = 1`.
/// `beta` is used as given; callers with integral `k` pass `k / n`.
pub fn stirling_binom_bound(n: usize, beta: f64) -> Result<f64> {
    let h = entropy_factor(beta)?;
    let nf = n as f64;
    Ok((nf * h.ln() - 0.5 * (beta * (1.0 - beta) * nf).ln()).exp())
}

/// Exact expectation of the tree-component count of `G[B]` in the
/// conditional space with `m` draws, `|B| = b` and `|S| = l + 1`.
///
/// A set `U` of `i >= 2` vertices of `B` is a tree component when exactly
/// `i - 1` draws form a spanning tree of `U` and the remaining draws avoid
/// the `i(b - i) + C(i, 2)` pairs inside `B` touching `U`.
pub fn expected_i(n: usize, m: usize, b: usize, l: usize, d: usize, weighted: bool) -> Result<f64> {
    if b + l + 1 > n {
        return Err(Error::invalid(format!("b + l + 1 = {} exceeds n = {n}", b + l + 1)));
    }
    if d == 0 {
        return Err(Error::invalid("d must be >= 1"));
    }
    let weights = if weighted { Some(WeightedCountParams::new(d)?) } else { None };
    let a = n - b - (l + 1);
    let s = (n * (n - 1) / 2 - a * b) as f64;
    if s == 0.0 {
        return Ok(if m == 0 { b as f64 } else { 0.0 });
    }
    let mut total = NeumaierSum::default();
    for i in 1..=d.min(b) {
        let avoided = (i * (b - i) + i * (i - 1) / 2) as f64;
        let tree_draws = i - 1;
        if tree_draws > m {
            break;
        }
        // C(b, i) * i^(i-2) * m(m-1)...(m-i+2) / s^(i-1)
        let mut coef = 1.0;
        for j in 0..i {
            coef *= (b - j) as f64 / (j + 1) as f64;
        }
        if i >= 2 {
            coef *= (i as f64).powi(i as i32 - 2);
        }
        for j in 0..tree_draws {
            coef *= (m - j) as f64 / s;
        }
        let stay = (1.0 - avoided / s).max(0.0).powf((m - tree_draws) as f64);
        let w = weights.map_or(1.0, |p| p.weight(i));
        total.add(w * coef * stay);
    }
    Ok(total.value())
}

/// Large-`n` coefficient of `E[I] / n`:
/// `t e^{-x} (1 + sum_{i=2}^{d} w_i i^{i-2}/i! (x e^{-x})^{i-1})`.
pub fn expected_i_coefficient(t: f64, c: f64, d: usize, weighted: bool) -> Result<f64> {
    if d == 0 {
        return Err(Error::invalid("d must be >= 1"));
    }
    let weights = if weighted { Some(WeightedCountParams::new(d)?) } else { None };
    let x = x_of(t, c);
    let y = x * (-x).exp();
    let mut sum = 1.0;
    let mut ln_fact = 0.0;
    for i in 2..=d {
        let fi = i as f64;
        ln_fact += fi.ln();
        let term = ((fi - 2.0) * fi.ln() - ln_fact).exp() * y.powi(i as i32 - 1);
        sum += weights.map_or(1.0, |p| p.weight(i)) * term;
    }
    Ok(t * (-x).exp() * sum)
}

/// `exp(-2 E^2 / (L^2 m))`.
pub fn azuma_zero_bound(expected_i: f64, lipschitz: f64, m: usize) -> Result<f64> {
    if lipschitz.is_nan() || lipschitz <= 0.0 {
        return Err(Error::invalid("lipschitz constant must be positive"));
    }
    if m == 0 {
        return Err(Error::invalid("m must be >= 1"));
    }
    Ok((-2.0 * expected_i * expected_i / (lipschitz * lipschitz * m as f64)).exp())
}

/// Probability that no element of the universe is shared across the cut:
/// `((1-p)^a + (1-p)^b - (1-p)^(a+b))^m`.
pub fn rig_no_cross_prob(a: usize, b: usize, m: usize, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} outside [0, 1]")));
    }
    let q = 1.0 - p;
    let per_element = q.powi(a as i32) + q.powi(b as i32) - q.powi((a + b) as i32);
    Ok(per_element.powi(m as i32))
}

/// `e^{-tc} / (t^t (1-t)^(1-t))`.
pub fn rig_term(t: f64, c: f64) -> f64 {
    (-t * c).exp() / f0(t)
}

/// `t^t (1-t)^(1-t)`.
pub fn f0(t: f64) -> f64 {
    let side = |u: f64| if u == 0.0 { 1.0 } else { u.powf(u) };
    side(t) * side(1.0 - t)
}

/// `(1 - s/2)^(s - a + (1-beta)/2) (3/4 + s/2)^(a - s)`.
pub fn ba_f(s: f64, a: f64, beta: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&s) {
        return Err(Error::invalid(format!("s = {s} outside [0, 1/2]")));
    }
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::invalid(format!("beta = {beta} outside [0, 1)")));
    }
    let (lo, hi) = ((1.0 - beta) / 3.0, (1.0 - beta) / 2.0);
    if a < lo - 1e-12 || a > hi + 1e-12 {
        return Err(Error::invalid(format!("a = {a} outside [{lo}, {hi}]")));
    }
    Ok((1.0 - s / 2.0).powf(s - a + (1.0 - beta) / 2.0) * (0.75 + s / 2.0).powf(a - s))
}

/// Upper bound on `max f` from splitting `[0, 1/4]` at `s_i = i / (4 segments)`:
/// `max((7/8)^(1/2), max_i g(s_{i+1}) h(s_i))` with
/// `g(s) = ((1 - s/2)/(3/4 + s/2))^(s - a)` at `a = (1 - beta)/3` and
/// `h(s) = (1 - s/2)^(1/2)`.
pub fn ba_segment_max(segments: usize, beta: f64) -> Result<f64> {
    if segments == 0 {
        return Err(Error::invalid("segments must be >= 1"));
    }
    let a = (1.0 - beta) / 3.0;
    let g = |s: f64| ((1.0 - s / 2.0) / (0.75 + s / 2.0)).powf(s - a);
    let h = |s: f64| (1.0 - s / 2.0).sqrt();
    let step = 0.25 / segments as f64;
    let scan = (0..=segments)
        .map(|i| g((i + 1) as f64 * step) * h(i as f64 * step))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(scan.max(0.875f64.sqrt()))
}

/// Smallest `m` with `2 f_max^m < 1`.
pub fn ba_min_m(f_max: f64) -> Result<u32> {
    if !(f_max > 0.0 && f_max < 1.0) {
        return Err(Error::invalid(format!("f_max = {f_max} outside (0, 1)")));
    }
    let mut m = (2f64.ln() / -f_max.ln()).floor().max(1.0) as u32;
    while m > 1 && 2.0 * f_max.powi(m as i32 - 1) < 1.0 {
        m -= 1;
    }
    while 2.0 * f_max.powi(m as i32) >= 1.0 {
        m += 1;
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanFunction {
    /// `t^t (1-t)^(1-t)`.
    F0,
    /// `2t^2/((1+eps)^2 c) exp(-4ct/(1 - 2t(1-t)))` with `eps = 0`.
    RFun,
    /// `(1 - 2t + 2t^2 + 2 beta t)^c / (t^t (1-t)^(1-t))`.
    GFun,
    RigTermFun,
}

impl ScanFunction {
    pub fn name(self) -> &'static str {
        match self {
            ScanFunction::F0 => "f0",
            ScanFunction::RFun => "r_fun",
            ScanFunction::GFun => "g_fun",
            ScanFunction::RigTermFun => "rig_term_fun",
        }
    }

    pub fn eval(self, t: f64, c: f64, beta: f64) -> f64 {
        match self {
            ScanFunction::F0 => f0(t),
            ScanFunction::RFun => 2.0 * t * t / c * (-4.0 * c * t / (1.0 - 2.0 * t * (1.0 - t))).exp(),
            ScanFunction::GFun => (1.0 - 2.0 * t + 2.0 * t * t + 2.0 * beta * t).powf(c) / f0(t),
            ScanFunction::RigTermFun => rig_term(t, c),
        }
    }
}

impl FromStr for ScanFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f0" => Ok(ScanFunction::F0),
            "r_fun" => Ok(ScanFunction::RFun),
            "g_fun" => Ok(ScanFunction::GFun),
            "rig_term_fun" => Ok(ScanFunction::RigTermFun),
            other => Err(Error::invalid(format!("unknown function id {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
    Neither,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
            Direction::Neither => "neither",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub function: ScanFunction,
    pub interval: (f64, f64),
    pub grid_points: usize,
    pub direction: Direction,
    /// `(t, value)` of the smallest grid value.
    pub minimum: (f64, f64),
    /// `(t, value)` of the largest grid value.
    pub maximum: (f64, f64),
}

/// Slack allowed between consecutive grid values before a step counts
/// against monotonicity.
pub const SCAN_SLACK: f64 = 1e-12;

pub const DEFAULT_GRID_POINTS: usize = 10_000;

pub fn monotonicity_scan(function: ScanFunction, c: f64, beta: f64, interval: (f64, f64), grid_points: usize) -> Result<ScanReport> {
    let (lo, hi) = interval;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::invalid(format!("empty interval [{lo}, {hi}]")));
    }
    if grid_points < 3 {
        return Err(Error::invalid("grid_points must be >= 3"));
    }
    let step = (hi - lo) / (grid_points - 1) as f64;
    let values: Vec<(f64, f64)> = (0..grid_points)
        .map(|i| {
            let t = if i + 1 == grid_points { hi } else { lo + i as f64 * step };
            (t, function.eval(t, c, beta))
        })
        .collect();
    let up = values.windows(2).all(|w| w[1].1 > w[0].1 - SCAN_SLACK);
    let down = values.windows(2).all(|w| w[1].1 < w[0].1 + SCAN_SLACK);
    let direction = match (up, down) {
        (true, false) => Direction::Increasing,
        (false, true) => Direction::Decreasing,
        _ => Direction::Neither,
    };
    let minimum = *values.iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("nonempty grid");
    let maximum = *values.iter().max_by(|a, b| a.1.total_cmp(&b.1)).expect("nonempty grid");
    Ok(ScanReport {
        function,
        interval,
        grid_points,
        direction,
        minimum,
        maximum,
    })
}
