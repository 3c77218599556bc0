//! Shipped example groups and loading of user-supplied entries.

mod format;

use std::path::Path;
use std::sync::Arc;

pub use format::{parse_presentation, parse_representation, PresentationFile, RepresentationFile};

use crate::error::{Error, Result};
use crate::exactalg::poly::{certify_irreducible, Irreducibility};
use crate::exactalg::{NumberField, Rational};
use crate::groupcore::GroupPresentation;
use crate::repweights::{RepAssignment, WeightVector};

/// A validated group with its representation and metadata.
#[derive(Debug, Clone)]
pub struct CensusEntry {
    pub name: String,
    pub presentation: GroupPresentation,
    pub rep: RepAssignment,
    pub field: Arc<NumberField>,
    pub aspherical: bool,
    /// Known `(b0, b1, b2)` limits of the normalized homology.
    pub targets: Option<[Rational; 3]>,
    /// Number of toroidal cusps, for cusped hyperbolic 3-manifold groups.
    pub cusps: Option<u32>,
    pub euler: Option<i64>,
    pub provenance: String,
}

impl CensusEntry {
    /// `(0, k - (λ+1)χ, k)` for even `λ` on a single-factor entry that
    /// declares its cusp count `k` and Euler characteristic `χ`.
    pub fn expected_homology(&self, lambda: &WeightVector) -> Option<(usize, usize, usize)> {
        let k = self.cusps? as i64;
        let chi = self.euler?;
        if lambda.factors() != 1 || !lambda.lambdas()[0].is_multiple_of(2) {
            return None;
        }
        let l = lambda.lambdas()[0] as i64;
        let h1 = k - (l + 1) * chi;
        (h1 >= 0).then_some((0, h1 as usize, k as usize))
    }

    pub fn target(&self, degree: usize) -> Option<&Rational> {
        self.targets.as_ref().map(|t| &t[degree])
    }
}

/// Validates the minimal polynomial, determinants and relator images.
pub fn load_entry_from_str(name: &str, presentation_text: &str, representation_text: &str) -> Result<CensusEntry> {
    let pres = parse_presentation(presentation_text)?;
    let repf = parse_representation(representation_text, &pres.presentation)?;
    match certify_irreducible(repf.field.minpoly()) {
        Irreducibility::Irreducible => {}
        Irreducibility::Reducible => {
            return Err(Error::Validation(format!(
                "minimal polynomial {} is reducible over Q",
                repf.field
            )))
        }
        Irreducibility::Undetermined => {
            return Err(Error::Validation(format!(
                "could not certify that {} is irreducible over Q",
                repf.field
            )))
        }
    }
    let rep = if pres.presentation.num_generators() == 0 {
        RepAssignment::new(&pres.presentation, vec![])?
    } else {
        RepAssignment::new(&pres.presentation, repf.images)?
    };
    Ok(CensusEntry {
        name: pres.name.unwrap_or_else(|| name.to_string()),
        presentation: pres.presentation,
        field: repf.field,
        rep,
        aspherical: pres.aspherical,
        targets: pres.targets,
        cusps: pres.cusps,
        euler: pres.euler,
        provenance: pres.provenance,
    })
}

/// Reads and validates a presentation file and a representation file.
pub fn load_entry(presentation_path: &Path, representation_path: &Path) -> Result<CensusEntry> {
    let read = |p: &Path| {
        std::fs::read_to_string(p)
            .map_err(|e| Error::parse(0, format!("cannot read {}: {e}", p.display())))
    };
    let stem = presentation_path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("entry")
        .to_string();
    load_entry_from_str(&stem, &read(presentation_path)?, &read(representation_path)?)
}

const BUILTIN: &[(&str, &str, &str)] = &[
    ("figure-eight", include_str!("../../data/figure-eight.pres"), include_str!("../../data/figure-eight.rep")),
    ("whitehead", include_str!("../../data/whitehead.pres"), include_str!("../../data/whitehead.rep")),
    ("sanov-f2", include_str!("../../data/sanov-f2.pres"), include_str!("../../data/sanov-f2.rep")),
    ("sanov-f2-index2", include_str!("../../data/sanov-f2-index2.pres"), include_str!("../../data/sanov-f2-index2.rep")),
    ("z-unipotent", include_str!("../../data/z-unipotent.pres"), include_str!("../../data/z-unipotent.rep")),
    ("z-congruence3", include_str!("../../data/z-congruence3.pres"), include_str!("../../data/z-congruence3.rep")),
    ("c2-central", include_str!("../../data/c2-central.pres"), include_str!("../../data/c2-central.rep")),
    ("z2", include_str!("../../data/z2.pres"), include_str!("../../data/z2.rep")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _, _)| *n).collect()
}

/// Raw text of a shipped entry.
pub fn builtin_source(name: &str) -> Option<(&'static str, &'static str)> {
    BUILTIN.iter().find(|(n, _, _)| *n == name).map(|(_, p, r)| (*p, *r))
}

pub fn builtin_entry(name: &str) -> Result<CensusEntry> {
    let Some((p, r)) = builtin_source(name) else {
        return Err(Error::structural(format!(
            "unknown entry `{name}`; available: {}",
            builtin_names().join(", ")
        )));
    };
    load_entry_from_str(name, p, r)
}

/// Every shipped entry, validated.
pub fn builtin_catalog() -> Vec<CensusEntry> {
    BUILTIN
        .iter()
        .map(|(n, p, r)| load_entry_from_str(n, p, r).expect("shipped census entry validates"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn catalog_validates() {
        let cat = builtin_catalog();
        assert!(cat.len() >= 6);
        let fig8 = cat.iter().find(|e| e.name == "figure-eight").unwrap();
        assert_eq!(fig8.rep.relator_signs(), &[vec![1]]);
        assert_eq!(fig8.expected_homology(&WeightVector::single(4)), Some((0, 1, 1)));
        assert_eq!(fig8.expected_homology(&WeightVector::single(3)), None);
        let wh = cat.iter().find(|e| e.name == "whitehead").unwrap();
        assert_eq!(wh.expected_homology(&WeightVector::single(2)), Some((0, 2, 2)));
    }

    #[test]
    fn targets_match_euler_characteristic() {
        for e in builtin_catalog().iter().filter(|e| e.aspherical) {
            let Some([b0, b1, b2]) = &e.targets else { continue };
            let chi = 1 - e.presentation.num_generators() as i64 + e.presentation.num_relators() as i64;
            assert_eq!(b0 - b1 + b2, Rational::from_integer(BigInt::from(chi)), "{}", e.name);
            if let Some(euler) = e.euler {
                assert_eq!(euler, chi, "{}", e.name);
            }
        }
    }

    #[test]
    fn corrupted_entry_rejected() {
        let (p, r) = builtin_source("figure-eight").unwrap();
        let bad = r.replace("b: 1 0 0,1 1", "b: 1 0 1,1 1");
        let err = load_entry_from_str("bad", p, &bad).unwrap_err();
        assert_eq!(err.kind(), "validation");
        assert!(err.to_string().contains("relator 1"), "{err}");
    }

    #[test]
    fn determinant_and_field_checks() {
        let p = "generators: t\n";
        assert_eq!(load_entry_from_str("x", p, "field: 0 1\nt: 2 0 0 1\n").unwrap_err().kind(), "validation");
        assert_eq!(load_entry_from_str("x", p, "field: -1 0 1\nt: 1 1 0 1\n").unwrap_err().kind(), "validation");
        assert_eq!(load_entry_from_str("x", p, "field: 0 1\nt: 1 1,1 0 1\n").unwrap_err().kind(), "parse");
        assert!(builtin_entry("nope").is_err());
    }
}
