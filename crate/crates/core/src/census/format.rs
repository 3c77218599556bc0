//! Line-oriented text formats for presentations and representations.
//!
//! Both formats are `key: value` lines; blank lines and lines starting with
//! `#` are ignored. Parsing is byte-deterministic and every error carries the
//! 1-based line number.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{parse_rational, ExactMatrix, FieldElement, NumberField, Rational};
use crate::groupcore::{parse_word, GroupPresentation};

/// Everything a presentation file declares.
#[derive(Debug, Clone)]
pub struct PresentationFile {
    pub name: Option<String>,
    pub presentation: GroupPresentation,
    pub aspherical: bool,
    pub cusps: Option<u32>,
    pub euler: Option<i64>,
    pub targets: Option<[Rational; 3]>,
    pub provenance: String,
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        Some(match line.split_once(':') {
            Some((k, v)) => (i + 1, k.trim(), v.trim()),
            None => (i + 1, "", line),
        })
    })
}

fn parse_bool(line: usize, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        _ => Err(Error::parse(line, format!("expected true or false, got `{v}`"))),
    }
}

fn once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<()> {
    if slot.is_some() {
        return Err(Error::parse(line, format!("`{key}` given twice")));
    }
    *slot = Some(value);
    Ok(())
}

/// Parses a presentation file.
///
/// ```text
/// name: figure-eight
/// generators: a b
/// relator: abABaBAbaB
/// aspherical: true
/// central: g          (optional designated central involution)
/// cusps: 1            (optional)
/// euler: 0            (optional)
/// targets: 0 0 0      (optional b0 b1 b2)
/// provenance: free text
/// ```
///
/// Generator names are single lowercase letters; in relators an uppercase
/// letter is the inverse.
pub fn parse_presentation(text: &str) -> Result<PresentationFile> {
    let mut name = None;
    let mut generators: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    let mut aspherical = None;
    let mut central: Option<(usize, String)> = None;
    let mut cusps = None;
    let mut euler = None;
    let mut targets = None;
    let mut provenance = None;
    for (line, key, value) in lines(text) {
        match key {
            "name" => once(&mut name, value.to_string(), line, key)?,
            "generators" => {
                let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                for n in &names {
                    let mut chars = n.chars();
                    let ok = matches!((chars.next(), chars.next()), (Some(c), None) if c.is_ascii_lowercase());
                    if !ok {
                        return Err(Error::parse(
                            line,
                            format!("generator `{n}` must be a single lowercase letter"),
                        ));
                    }
                }
                once(&mut generators, names, line, key)?;
            }
            "relator" => {
                let Some(names) = &generators else {
                    return Err(Error::parse(line, "`relator` before `generators`"));
                };
                if value.is_empty() || value.contains(char::is_whitespace) {
                    return Err(Error::parse(line, "relator must be one nonempty word"));
                }
                let w = parse_word(names, value).map_err(|e| Error::parse(line, e.to_string()))?;
                if w.is_identity() {
                    return Err(Error::parse(line, format!("relator `{value}` reduces to the identity")));
                }
                relators.push(w);
            }
            "aspherical" => once(&mut aspherical, parse_bool(line, value)?, line, key)?,
            "central" => {
                let Some(names) = &generators else {
                    return Err(Error::parse(line, "`central` before `generators`"));
                };
                let Some(j) = names.iter().position(|n| n == value) else {
                    return Err(Error::parse(line, format!("unknown central generator `{value}`")));
                };
                once(&mut central, (j, value.to_string()), line, key)?;
            }
            "cusps" => {
                let k = value
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid cusp count `{value}`")))?;
                once(&mut cusps, k, line, key)?;
            }
            "euler" => {
                let e = value
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid Euler characteristic `{value}`")))?;
                once(&mut euler, e, line, key)?;
            }
            "targets" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(Error::parse(line, "targets needs exactly three values b0 b1 b2"));
                }
                let vals = parts
                    .iter()
                    .map(|p| parse_rational(p).map_err(|e| Error::parse(line, e)))
                    .collect::<Result<Vec<_>>>()?;
                let [b0, b1, b2]: [Rational; 3] = vals.try_into().unwrap();
                once(&mut targets, [b0, b1, b2], line, key)?;
            }
            "provenance" => once(&mut provenance, value.to_string(), line, key)?,
            "" => return Err(Error::parse(line, format!("expected `key: value`, got `{value}`"))),
            other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
        }
    }
    let Some(generators) = generators else {
        return Err(Error::parse(0, "missing `generators` line"));
    };
    let mut presentation = GroupPresentation::new(generators, relators, None)
        .map_err(|e| Error::parse(0, e.to_string()))?;
    if let Some((j, _)) = central {
        presentation = presentation.with_central_generator(j)?;
    }
    Ok(PresentationFile {
        name,
        presentation,
        aspherical: aspherical.unwrap_or(false),
        cusps,
        euler,
        targets,
        provenance: provenance.unwrap_or_default(),
    })
}

/// Parsed but not yet validated representation data.
#[derive(Debug, Clone)]
pub struct RepresentationFile {
    pub field: Arc<NumberField>,
    /// `images[generator][factor]`
    pub images: Vec<Vec<ExactMatrix>>,
}

/// Parses a representation file against the generators of `presentation`.
///
/// ```text
/// field: 1 -1 1        (minimal polynomial, constant term first; `0 1` is Q)
/// factor: 1            (optional; starts the block for factor 1, 2, ...)
/// a: 1 1 0 1           (entries e11 e12 e21 e22)
/// b: 1 0 0,1 1         (an entry c0,c1,... is c0 + c1 α + ...)
/// ```
///
/// Every generator needs exactly one image in every factor. Entries with
/// more coefficients than the field degree are rejected.
pub fn parse_representation(text: &str, presentation: &GroupPresentation) -> Result<RepresentationFile> {
    let mut field: Option<Arc<NumberField>> = None;
    let mut current = 0usize;
    let mut seen_factor_line = false;
    let mut blocks: Vec<BTreeMap<usize, (usize, ExactMatrix)>> = Vec::new();
    for (line, key, value) in lines(text) {
        match key {
            "field" => {
                if field.is_some() {
                    return Err(Error::parse(line, "`field` given twice"));
                }
                let coeffs = value
                    .split_whitespace()
                    .map(|p| parse_rational(p).map_err(|e| Error::parse(line, e)))
                    .collect::<Result<Vec<_>>>()?;
                field = Some(NumberField::new(coeffs).map_err(|e| Error::parse(line, e.to_string()))?);
            }
            "factor" => {
                let k: usize = value
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid factor index `{value}`")))?;
                if k != blocks.len() + 1 {
                    return Err(Error::parse(line, format!("expected factor {}, got {k}", blocks.len() + 1)));
                }
                if !seen_factor_line && !blocks.is_empty() {
                    return Err(Error::parse(line, "images given before the first `factor` line"));
                }
                seen_factor_line = true;
                blocks.push(BTreeMap::new());
                current = k - 1;
            }
            "" => return Err(Error::parse(line, format!("expected `key: value`, got `{value}`"))),
            gen => {
                let Some(f) = &field else {
                    return Err(Error::parse(line, "images before `field`"));
                };
                let Some(j) = presentation.generator_index(gen) else {
                    return Err(Error::parse(line, format!("unknown generator `{gen}`")));
                };
                if blocks.is_empty() {
                    blocks.push(BTreeMap::new());
                    current = 0;
                }
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 4 {
                    return Err(Error::parse(line, format!("image of `{gen}` needs 4 entries, got {}", parts.len())));
                }
                let entries = parts
                    .iter()
                    .map(|p| {
                        FieldElement::parse(f, p).map_err(|e| {
                            Error::parse(line, format!("entry `{p}` of `{gen}`: {e}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let m = ExactMatrix::from_entries(f, 2, 2, entries)?;
                if blocks[current].insert(j, (line, m)).is_some() {
                    return Err(Error::parse(line, format!("second image for `{gen}` in factor {}", current + 1)));
                }
            }
        }
    }
    let field = field.ok_or_else(|| Error::parse(0, "missing `field` line"))?;
    let g = presentation.num_generators();
    if blocks.is_empty() {
        if g == 0 {
            return Ok(RepresentationFile { field, images: vec![] });
        }
        return Err(Error::parse(0, "no generator images"));
    }
    let mut images: Vec<Vec<ExactMatrix>> = vec![Vec::with_capacity(blocks.len()); g];
    for (k, block) in blocks.into_iter().enumerate() {
        for (j, per_gen) in images.iter_mut().enumerate() {
            let Some((_, m)) = block.get(&j) else {
                return Err(Error::parse(
                    0,
                    format!(
                        "generator `{}` has no image in factor {}",
                        presentation.generator_names()[j],
                        k + 1
                    ),
                ));
            };
            per_gen.push(m.clone());
        }
    }
    Ok(RepresentationFile { field, images })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_keys() {
        let p = parse_presentation("# c\ngenerators: a b\nrelator: abAB\ncusps: 2\ntargets: 0 1/2 0\n").unwrap();
        assert_eq!(p.presentation.num_relators(), 1);
        assert_eq!(p.cusps, Some(2));
        assert!(!p.aspherical);
        assert_eq!(p.targets.unwrap()[1], parse_rational("1/2").unwrap());
        let err = parse_presentation("generators: a\nrelator: ab\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, msg: "unknown generator `b` in `ab`".into() });
        assert!(parse_presentation("relator: a\n").is_err());
        assert!(parse_presentation("generators: ab\n").is_err());
        assert!(parse_presentation("generators: a\nwhat: 1\n").is_err());
        assert!(parse_presentation("generators: a\nrelator: aA\n").is_err());
    }

    #[test]
    fn representation_factors() {
        let p = parse_presentation("generators: a b\n").unwrap().presentation;
        let text = "field: 0 1\nfactor: 1\na: 1 1 0 1\nb: 1 0 1 1\nfactor: 2\na: 1 2 0 1\nb: 1 0 2 1\n";
        let r = parse_representation(text, &p).unwrap();
        assert_eq!(r.images[1].len(), 2);
        let missing = "field: 0 1\nfactor: 1\na: 1 1 0 1\n";
        assert!(parse_representation(missing, &p).is_err());
        let outside = "field: 0 1\na: 1 0,1 0 1\nb: 1 0 0 1\n";
        assert_eq!(parse_representation(outside, &p).unwrap_err().kind(), "parse");
        let dup = "field: 0 1\na: 1 0 0 1\na: 1 0 0 1\n";
        assert!(parse_representation(dup, &p).is_err());
    }
}
