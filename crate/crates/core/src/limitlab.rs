//! Weight schedules, convergence fits and normalized Betti estimates.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::foxhomology::{homology_dims, HomologyReport};
use crate::groupcore::GroupPresentation;
use crate::repweights::{RepAssignment, WeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Any,
}

impl Parity {
    pub fn admits(self, lambda: u32) -> bool {
        match self {
            Parity::Even => lambda.is_multiple_of(2),
            Parity::Odd => lambda % 2 == 1,
            Parity::Any => true,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            "any" => Ok(Parity::Any),
            other => Err(Error::Schedule(format!("unknown parity `{other}`"))),
        }
    }
}

/// `λ(k) = k · direction` for increasing `k`, filtered by per-factor parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSchedule {
    pub direction: Vec<u32>,
    pub parity: Vec<Parity>,
    pub steps: Vec<u32>,
    pub weights: Vec<WeightVector>,
}

impl WeightSchedule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Builds the schedule for `k = start, start+step, ..., ≤ end`.
pub fn weight_schedule(
    direction: &[u32],
    start: u32,
    end: u32,
    step: u32,
    parity: &[Parity],
) -> Result<WeightSchedule> {
    if direction.is_empty() || direction.contains(&0) {
        return Err(Error::Schedule("direction entries must be positive".into()));
    }
    if parity.len() != direction.len() {
        return Err(Error::Schedule(format!(
            "{} parity constraints for {} factors",
            parity.len(),
            direction.len()
        )));
    }
    if step == 0 {
        return Err(Error::Schedule("step must be positive".into()));
    }
    let mut steps = Vec::new();
    let mut weights = Vec::new();
    for k in (start..=end).step_by(step as usize) {
        let lambdas: Vec<u32> = direction.iter().map(|d| d * k).collect();
        if lambdas.iter().zip(parity).all(|(&l, p)| p.admits(l)) {
            steps.push(k);
            weights.push(WeightVector::new(lambdas)?);
        }
    }
    if weights.is_empty() {
        return Err(Error::Schedule(format!(
            "no admissible weights for k in {start}..={end} step {step}"
        )));
    }
    Ok(WeightSchedule {
        direction: direction.to_vec(),
        parity: parity.to_vec(),
        steps,
        weights,
    })
}

/// Even parity in factors where a relator or central generator maps to -I.
pub fn default_parity(rep: &RepAssignment) -> Vec<Parity> {
    rep.sign_factors()
        .into_iter()
        .map(|neg| if neg { Parity::Even } else { Parity::Any })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitPoint {
    pub lambda: WeightVector,
    pub value: Rational,
    /// `|value - target|` when a target is known.
    pub error: Option<Rational>,
}

impl FitPoint {
    pub fn min_lambda(&self) -> u32 {
        self.lambda.min_weight()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub points: Vec<FitPoint>,
    pub target: Option<Rational>,
    /// Every error is exactly zero.
    pub exact: bool,
    /// The target when known, else the intercept of `value = c + a / min λ`.
    pub limit: f64,
    /// Least-squares slope of `log error` against `log min λ` over the
    /// nonzero errors; `None` when fewer than two are nonzero.
    pub exponent: Option<f64>,
    /// Smallest `C` with `error ≤ C / min λ` at every point.
    pub constant: f64,
    /// Whether errors never increase along the schedule (recorded only).
    pub monotone: bool,
}

impl ConvergenceReport {
    pub fn errors(&self) -> Vec<Option<Rational>> {
        self.points.iter().map(|p| p.error.clone()).collect()
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Ordinary least squares `y = c + a x`; returns `(c, a)`.
fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let a = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    (my - a * mx, a)
}

/// Fits the decay of `value` along a schedule.
///
/// With a target the errors are `|value - target|` and their log-log slope
/// against `min λ` is reported; exact zeros are excluded. Without one,
/// `value = c + a / min λ` is fitted and `c` is the limit estimate, with the
/// slope taken over the residuals `|value - c|`.
pub fn convergence_fit(
    points: &[(WeightVector, Rational)],
    target: Option<&Rational>,
) -> Result<ConvergenceReport> {
    if points.len() < 4 {
        return Err(Error::Fit(format!(
            "convergence fit needs at least 4 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|(l, _)| l.min_weight() == 0) {
        return Err(Error::Fit("min λ must be positive for a log-log fit".into()));
    }
    let xs: Vec<f64> = points.iter().map(|(l, _)| l.min_weight() as f64).collect();
    let fit_points: Vec<FitPoint> = points
        .iter()
        .map(|(l, v)| FitPoint {
            lambda: l.clone(),
            value: v.clone(),
            error: target.map(|t| num_traits::abs(v - t)),
        })
        .collect();
    let (limit, deviations): (f64, Vec<f64>) = match target {
        Some(t) => (
            to_f64(t),
            fit_points.iter().map(|p| to_f64(p.error.as_ref().unwrap())).collect(),
        ),
        None => {
            let inv: Vec<f64> = xs.iter().map(|x| 1.0 / x).collect();
            let vals: Vec<f64> = points.iter().map(|(_, v)| to_f64(v)).collect();
            let (c, _) = least_squares(&inv, &vals);
            (c, vals.iter().map(|v| (v - c).abs()).collect())
        }
    };
    let exact = match target {
        Some(_) => fit_points.iter().all(|p| p.error.as_ref().is_some_and(|e| *e == Rational::from_integer(0.into()))),
        None => false,
    };
    if target.is_none() && deviations.iter().all(|&d| d == 0.0) {
        return Err(Error::Fit("all errors are zero and no target was given".into()));
    }
    let (lx, ly): (Vec<f64>, Vec<f64>) = xs
        .iter()
        .zip(&deviations)
        .filter(|(_, &e)| e > 0.0)
        .map(|(x, e)| (x.ln(), e.ln()))
        .unzip();
    let exponent = (lx.len() >= 2).then(|| least_squares(&lx, &ly).1);
    let constant = xs
        .iter()
        .zip(&deviations)
        .map(|(x, e)| x * e)
        .fold(0.0, f64::max);
    let monotone = deviations.windows(2).all(|w| w[1] <= w[0]);
    Ok(ConvergenceReport {
        points: fit_points,
        target: target.cloned(),
        exact,
        limit,
        exponent,
        constant,
        monotone,
    })
}

/// Runs [`homology_dims`] along a schedule (in parallel, results in
/// schedule order) and fits `h_degree / dim W_λ`.
pub fn betti_estimate(
    p: &GroupPresentation,
    rep: &RepAssignment,
    schedule: &WeightSchedule,
    degree: usize,
    target: Option<&Rational>,
    aspherical: bool,
) -> Result<(Vec<HomologyReport>, ConvergenceReport)> {
    if degree > 2 {
        return Err(Error::precondition(format!("homology degree {degree} is not in 0..=2")));
    }
    let reports = homology_series(p, rep, schedule, aspherical)?;
    let points: Vec<(WeightVector, Rational)> = reports
        .iter()
        .map(|r| (r.lambda.clone(), normalized(r.h(degree), r.dim)))
        .collect();
    let fit = convergence_fit(&points, target)?;
    Ok((reports, fit))
}

pub fn homology_series(
    p: &GroupPresentation,
    rep: &RepAssignment,
    schedule: &WeightSchedule,
    aspherical: bool,
) -> Result<Vec<HomologyReport>> {
    schedule
        .weights
        .par_iter()
        .map(|w| homology_dims(p, rep, w, aspherical))
        .collect()
}

pub fn normalized(h: usize, d: usize) -> Rational {
    Rational::new(h.into(), d.into())
}

/// Per-weight comparison of a finite-index subgroup against the full group.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexComparison {
    pub lambda: WeightVector,
    pub full: Rational,
    pub subgroup: Rational,
    /// `subgroup / full`, when `full ≠ 0`.
    pub ratio: Option<Rational>,
}

/// Normalized `h_degree` of a subgroup presentation versus the full group
/// along one schedule; multiplicative Betti numbers make the ratio the index.
pub fn compare_finite_index(
    full: (&GroupPresentation, &RepAssignment),
    subgroup: (&GroupPresentation, &RepAssignment),
    schedule: &WeightSchedule,
    degree: usize,
) -> Result<Vec<IndexComparison>> {
    let a = homology_series(full.0, full.1, schedule, true)?;
    let b = homology_series(subgroup.0, subgroup.1, schedule, true)?;
    Ok(a.iter()
        .zip(&b)
        .map(|(x, y)| {
            let f = normalized(x.h(degree), x.dim);
            let s = normalized(y.h(degree), y.dim);
            let ratio = (f != Rational::from_integer(0.into())).then(|| &s / &f);
            IndexComparison {
                lambda: x.lambda.clone(),
                full: f,
                subgroup: s,
                ratio,
            }
        })
        .collect())
}
