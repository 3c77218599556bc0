//! Group-algebra matrices from text, files or a seeded generator.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sylvrank::exactalg::{FieldElement, NumberField};
use sylvrank::groupcore::{GroupAlgebraElement, GroupAlgebraMatrix, GroupPresentation, Letter, Word};

use crate::CliError;

/// Parses a group-algebra element such as `t - 1`, `2*ab - 1/2*B` or
/// `[0,1]*a + 3`. A bracketed coefficient lists power-basis coordinates in
/// the number field; `1` alone is the identity word.
pub fn parse_element(
    text: &str,
    presentation: &GroupPresentation,
    field: &Arc<NumberField>,
) -> Result<GroupAlgebraElement, CliError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(CliError::parse(format!("empty element `{text}`")));
    }
    let mut terms = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' | '-' if depth == 0 && i > start => {
                terms.push(&compact[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    terms.push(&compact[start..]);
    let mut out = GroupAlgebraElement::zero(field);
    for t in terms {
        let (word, coeff) = parse_term(t, presentation, field)?;
        out.add_term(word, coeff);
    }
    Ok(out)
}

fn parse_term(
    term: &str,
    presentation: &GroupPresentation,
    field: &Arc<NumberField>,
) -> Result<(Word, FieldElement), CliError> {
    let bad = |why: String| CliError::parse(format!("term `{term}`: {why}"));
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad("missing coefficient or word".into()));
    }
    let (coeff_text, word_text) = if let Some(rest) = body.strip_prefix('[') {
        let Some(close) = rest.find(']') else {
            return Err(bad("unclosed `[`".into()));
        };
        let word = rest[close + 1..].strip_prefix('*').unwrap_or(&rest[close + 1..]);
        (Some(&rest[..close]), word)
    } else {
        let split = body
            .find(|c: char| c.is_ascii_alphabetic())
            .unwrap_or(body.len());
        let (c, w) = body.split_at(split);
        let c = c.strip_suffix('*').unwrap_or(c);
        ((!c.is_empty()).then_some(c), w)
    };
    let mut coeff = match coeff_text {
        Some(c) => FieldElement::parse(field, c).map_err(bad)?,
        None => FieldElement::one(field),
    };
    if negative {
        coeff = -coeff;
    }
    let word = presentation
        .parse_word(word_text)
        .map_err(|e| bad(e.to_string()))?;
    Ok((word, coeff))
}

/// One matrix row per line, entries separated by `;`. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_matrix(
    text: &str,
    presentation: &GroupPresentation,
    field: &Arc<NumberField>,
) -> Result<GroupAlgebraMatrix, CliError> {
    let mut rows: Vec<Vec<GroupAlgebraElement>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(';')
            .map(|e| parse_element(e, presentation, field))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::parse(format!("matrix line {}: {}", i + 1, e.msg)))?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(CliError::parse(format!(
                    "matrix line {}: {} entries, expected {}",
                    i + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::parse("matrix file has no rows"));
    }
    let (r, c) = (rows.len(), rows[0].len());
    Ok(GroupAlgebraMatrix::from_entries(field, r, c, rows.into_iter().flatten().collect())?)
}

/// Entries with up to three terms, words of length at most `max_len`, and
/// rational coefficients in `-max_coeff..=max_coeff`.
pub fn random_matrix(
    seed: u64,
    rows: usize,
    cols: usize,
    max_len: usize,
    max_coeff: i64,
    generators: usize,
    field: &Arc<NumberField>,
) -> Result<GroupAlgebraMatrix, CliError> {
    if generators == 0 && max_len > 0 {
        return Err(CliError::config("random words need at least one generator"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let mut e = GroupAlgebraElement::zero(field);
        for _ in 0..rng.gen_range(0..=3) {
            let len = if generators == 0 { 0 } else { rng.gen_range(0..=max_len) };
            let w = Word::from_letters((0..len).map(|_| Letter::new(rng.gen_range(0..generators), rng.gen_bool(0.5))));
            let c = rng.gen_range(-max_coeff..=max_coeff);
            e.add_term(w, FieldElement::from_int(field, c));
        }
        entries.push(e);
    }
    Ok(GroupAlgebraMatrix::from_entries(field, rows, cols, entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements() {
        let p = GroupPresentation::free(&["a", "b"]).unwrap();
        let q = NumberField::rationals();
        let e = parse_element("a - 1", &p, &q).unwrap();
        assert_eq!(e, GroupAlgebraElement::generator_minus_one(&q, 0));
        let e = parse_element("2*ab - 1/2B + 3", &p, &q).unwrap();
        assert_eq!(e.num_terms(), 3);
        assert_eq!(e.augmentation(), FieldElement::from_rational(&q, sylvrank::exactalg::parse_rational("9/2").unwrap()));
        assert!(parse_element("c", &p, &q).is_err());
        assert!(parse_element("", &p, &q).is_err());
        let w = NumberField::from_integers(&[1, -1, 1]).unwrap();
        let e = parse_element("[0,1]*a - [1,1]", &p, &w).unwrap();
        assert_eq!(e.num_terms(), 2);
    }

    #[test]
    fn matrices() {
        let p = GroupPresentation::free(&["t"]).unwrap();
        let q = NumberField::rationals();
        let m = parse_matrix("# m\nt - 1 ; 0\n0 ; T\n", &p, &q).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(parse_matrix("t ; 1\nt\n", &p, &q).is_err());
        let a = random_matrix(7, 2, 3, 4, 2, 1, &q).unwrap();
        assert_eq!(a, random_matrix(7, 2, 3, 4, 2, 1, &q).unwrap());
    }
}
