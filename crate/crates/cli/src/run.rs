//! Runs one configured experiment and assembles its report.

use num_bigint::BigInt;
use sylvrank::census::{builtin_entry, load_entry, CensusEntry};
use sylvrank::exactalg::Rational;
use sylvrank::foxhomology::{boundary_stack, fox_jacobian};
use sylvrank::groupcore::GroupAlgebraMatrix;
use sylvrank::limitlab::{betti_estimate, convergence_fit, default_parity, homology_series, weight_schedule, ConvergenceReport, WeightSchedule};
use sylvrank::padicharris::harris_sequence;
use sylvrank::rankfun::{luck_sequence, sylvester_rank, FiniteQuotientMap};
use sylvrank::repweights::WeightVector;

use crate::config::{EntrySource, ExperimentConfig, MatrixSource, Mode};
use crate::matrix::{parse_element, parse_matrix, random_matrix};
use crate::report::{decimal, float, fraction, Report, Row};
use crate::CliError;

pub fn load(source: &EntrySource) -> Result<CensusEntry, CliError> {
    Ok(match source {
        EntrySource::Builtin(name) => builtin_entry(name)?,
        EntrySource::Files(p, r) => load_entry(p, r)?,
    })
}

fn schedule(cfg: &ExperimentConfig, e: &CensusEntry) -> Result<WeightSchedule, CliError> {
    let plan = cfg.schedule.as_ref().ok_or_else(|| CliError::config("--weights is required"))?;
    let factors = e.rep.factors();
    let direction = plan.direction.clone().unwrap_or_else(|| vec![1; factors]);
    let parity = plan.parity.clone().unwrap_or_else(|| default_parity(&e.rep));
    if direction.len() != factors {
        return Err(CliError::config(format!(
            "--direction has {} entries for {factors} factors",
            direction.len()
        )));
    }
    Ok(weight_schedule(&direction, plan.start, plan.end, plan.step, &parity)?)
}

fn matrix(cfg: &ExperimentConfig, e: &CensusEntry) -> Result<(GroupAlgebraMatrix, String), CliError> {
    let m = match &cfg.matrix {
        MatrixSource::FoxJacobian => (fox_jacobian(&e.presentation, &e.field), "fox-jacobian".to_string()),
        MatrixSource::BoundaryStack => (boundary_stack(&e.presentation, &e.field), "boundary-stack".to_string()),
        MatrixSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|err| CliError::config(format!("cannot read {}: {err}", path.display())))?;
            (parse_matrix(&text, &e.presentation, &e.field)?, format!("file {}", path.display()))
        }
        MatrixSource::Element(text) => (
            GroupAlgebraMatrix::from_element(parse_element(text, &e.presentation, &e.field)?),
            format!("element {text}"),
        ),
        MatrixSource::Random { seed, rows, cols, max_len, max_coeff } => (
            random_matrix(*seed, *rows, *cols, *max_len, *max_coeff, e.presentation.num_generators(), &e.field)?,
            format!("random seed={seed} shape={rows}x{cols} max-len={max_len} max-coeff={max_coeff}"),
        ),
    };
    Ok(m)
}

fn weight_row(mode: String, lambda: &WeightVector, num: usize, den: usize, target: Option<Rational>) -> Row {
    Row {
        mode,
        lambda: lambda.to_string(),
        min_lambda: lambda.min_weight().to_string(),
        dim_w: lambda.dim().to_string(),
        num: BigInt::from(num),
        den: BigInt::from(den),
        target,
    }
}

fn fit_summary(out: &mut Vec<String>, fit: &ConvergenceReport) {
    out.push(format!("exact: {}", fit.exact));
    out.push(format!("limit estimate: {}", float(fit.limit)));
    out.push(format!(
        "fitted exponent: {}",
        fit.exponent.map(float).unwrap_or_else(|| "none".into())
    ));
    out.push(format!("error constant: {}", float(fit.constant)));
    out.push(format!("monotone errors: {}", fit.monotone));
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let e = load(&cfg.entry)?;
    let mut report = Report {
        entry: e.name.clone(),
        ..Report::default()
    };
    let s = &mut report.summary;
    s.push(format!("mode: {}", cfg.mode.name()));
    s.push(format!("entry: {}", e.name));
    s.push(format!("field: {}", e.field));
    s.push(format!(
        "presentation: {} generators, {} relators, aspherical {}",
        e.presentation.num_generators(),
        e.presentation.num_relators(),
        e.aspherical
    ));
    s.push(format!("factors: {}", e.rep.factors()));
    match cfg.mode {
        Mode::Homology => {
            let sched = schedule(cfg, &e)?;
            let reports = homology_series(&e.presentation, &e.rep, &sched, e.aspherical)?;
            let degrees: Vec<usize> = cfg.degree.map(|d| vec![d]).unwrap_or_else(|| vec![0, 1, 2]);
            for h in &reports {
                for &i in &degrees {
                    let target = cfg.target.clone().or_else(|| e.target(i).cloned());
                    report.rows.push(weight_row(format!("homology:h{i}"), &h.lambda, h.h(i), h.dim, target));
                }
                let expected = e
                    .expected_homology(&h.lambda)
                    .map(|(a, b, c)| format!(", expected ({a}, {b}, {c})"))
                    .unwrap_or_default();
                report.summary.push(format!(
                    "λ={}: h = ({}, {}, {}), dim {}, rank J {}, rank D {}{expected}",
                    h.lambda, h.h0, h.h1, h.h2, h.dim, h.rank_jacobian, h.rank_boundary
                ));
            }
            report.summary.push(format!("checks: J·D = 0 and Euler identity hold at all {} weights", reports.len()));
        }
        Mode::Limit => {
            let sched = schedule(cfg, &e)?;
            let degree = cfg.degree.ok_or_else(|| CliError::config("--degree is required in limit mode"))?;
            let target = cfg.target.clone().or_else(|| e.target(degree).cloned());
            let (reports, fit) = betti_estimate(&e.presentation, &e.rep, &sched, degree, target.as_ref(), e.aspherical)?;
            for h in &reports {
                report.rows.push(weight_row("limit".into(), &h.lambda, h.h(degree), h.dim, target.clone()));
            }
            let s = &mut report.summary;
            s.push(format!("degree: {degree}"));
            s.push(format!("target: {}", target.as_ref().map(fraction).unwrap_or_else(|| "none".into())));
            s.push(format!("points: {}", reports.len()));
            fit_summary(s, &fit);
        }
        Mode::Rank => {
            let sched = schedule(cfg, &e)?;
            let (m, label) = matrix(cfg, &e)?;
            report.summary.push(format!("matrix: {label} ({}x{})", m.rows(), m.cols()));
            let mut points = Vec::new();
            for w in &sched.weights {
                let r = sylvester_rank(&m, &e.rep, w)?;
                report.rows.push(weight_row("rank".into(), w, r.rank, r.normalization, cfg.target.clone()));
                points.push((w.clone(), r.value()));
            }
            match convergence_fit(&points, cfg.target.as_ref()) {
                Ok(fit) => fit_summary(&mut report.summary, &fit),
                Err(err) => report.summary.push(format!("fit: not available ({err})")),
            }
        }
        Mode::Luck => {
            let (m, label) = matrix(cfg, &e)?;
            let moduli = cfg.quotient.as_ref().ok_or_else(|| CliError::config("--quotient is required"))?;
            let g = e.presentation.num_generators();
            let residues = cfg.quotient_images.clone().unwrap_or_else(|| vec![1; g]);
            if residues.len() != g {
                return Err(CliError::config(format!("--quotient-images has {} residues for {g} generators", residues.len())));
            }
            let chain = moduli
                .iter()
                .map(|&n| {
                    let images = residues.iter().map(|&r| vec![r]).collect();
                    FiniteQuotientMap::abelian(&e.presentation, vec![n], images)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let ranks = luck_sequence(&m, &chain)?;
            report.summary.push(format!("matrix: {label} ({}x{})", m.rows(), m.cols()));
            for (q, r) in chain.iter().zip(&ranks) {
                report.rows.push(Row {
                    mode: "luck".into(),
                    lambda: q.label().to_string(),
                    min_lambda: String::new(),
                    dim_w: q.order().to_string(),
                    num: BigInt::from(r.rank),
                    den: BigInt::from(r.normalization),
                    target: cfg.target.clone(),
                });
                report.summary.push(format!("{} (image order {}): rank {}", q.label(), q.order(), fraction(&r.value())));
            }
        }
        Mode::Harris => {
            let (m, label) = matrix(cfg, &e)?;
            let p = cfg.p.ok_or_else(|| CliError::config("--p is required"))?;
            let zero = Rational::from_integer(0.into());
            let target = cfg.target.clone().unwrap_or(zero);
            let rows = harris_sequence(&m, &e.presentation, &e.rep, p, &cfg.levels, &target, cfg.level_cap)?;
            report.summary.push(format!("matrix: {label} ({}x{})", m.rows(), m.cols()));
            report.summary.push(format!("p: {p}"));
            for h in &rows {
                report.rows.push(Row {
                    mode: "harris".into(),
                    lambda: format!("level={}", h.level),
                    min_lambda: String::new(),
                    dim_w: h.image_order.to_string(),
                    num: h.rank.numer().clone(),
                    den: h.rank.denom().clone(),
                    target: cfg.target.clone(),
                });
                let tail = if cfg.target.is_some() {
                    format!(", error {}, envelope {}", fraction(&h.error), fraction(&h.envelope))
                } else {
                    format!(", envelope {}", fraction(&h.envelope))
                };
                report.summary.push(format!(
                    "level {}: index {}, image order {}, rank {} ({}){tail}",
                    h.level,
                    h.index,
                    h.image_order,
                    fraction(&h.rank),
                    decimal(&h.rank)
                ));
            }
        }
    }
    Ok(report)
}
