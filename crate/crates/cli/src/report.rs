//! CSV rows and the summary block.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use sylvrank::exactalg::Rational;

pub const CSV_HEADER: &str = "mode,entry,lambda,min_lambda,dim_w,value_num,value_den,value_dec,target,error_dec";

const DECIMALS: usize = 10;

/// Exact decimal rounding, half away from zero.
pub fn decimal(q: &Rational) -> String {
    let scale = num_traits::pow(BigInt::from(10), DECIMALS);
    let scaled = (q.abs() * Rational::from_integer(scale.clone()) + Rational::new(1.into(), 2.into())).floor();
    let n = scaled.to_integer();
    let int = &n / &scale;
    let frac = format!("{:0>width$}", (&n % &scale).to_string(), width = DECIMALS);
    let sign = if q.is_negative() && !n.is_zero() { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

pub fn fraction(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// One CSV line. `num / den` need not be in lowest terms: where a raw count
/// and its normalization exist they are kept as is.
#[derive(Debug, Clone)]
pub struct Row {
    pub mode: String,
    pub lambda: String,
    pub min_lambda: String,
    pub dim_w: String,
    pub num: BigInt,
    pub den: BigInt,
    pub target: Option<Rational>,
}

impl Row {
    pub fn value(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone())
    }

    fn csv(&self, entry: &str) -> String {
        let v = self.value();
        let (target, error) = match &self.target {
            Some(t) => (fraction(t), decimal(&(&v - t).abs())),
            None => (String::new(), String::new()),
        };
        [
            self.mode.as_str(),
            entry,
            &self.lambda,
            &self.min_lambda,
            &self.dim_w,
            &self.num.to_string(),
            &self.den.to_string(),
            &decimal(&v),
            &target,
            &error,
        ]
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub entry: String,
    pub rows: Vec<Row>,
    pub summary: Vec<String>,
}

impl Report {
    pub fn csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.csv(&self.entry));
            out.push('\n');
        }
        out
    }

    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        for line in &self.summary {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// Fixed-precision float for the summary; NaN and infinities spelled out.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        x.to_string()
    }
}
