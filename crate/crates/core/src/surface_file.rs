//! JSON surface files: a lattice, named curves, optional cover data and the
//! values a verification should reproduce.
//!
//! Classes are written either as a coefficient array `[a, b_1, ..., b_n]`
//! (meaning `a L + sum b_i E_i`) or as an expression string such as
//! `"-2K - Gamma"`, where names refer to the basis, `K`, or curves defined
//! earlier in the file. Export always writes arrays.

use serde::{Deserialize, Serialize};

use crate::certificate::canonical_json;
use crate::cover::{CoverData, Expectations, Fixture, Symmetry};
use crate::curves::{CurveConfiguration, FiberDecomposition, IntersectionRow, NamedCurve, Role};
use crate::error::{Error, Result};
use crate::expr;
use crate::lattice::{DivisorClass, SurfaceLattice};

/// Caps that keep hostile inputs cheap.
pub const MAX_FILE_BYTES: usize = 1 << 20;
pub const MAX_BASIS: usize = 64;
pub const MAX_CURVES: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Coefficients(Vec<i64>),
    Expression(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveEntry {
    pub name: String,
    pub class: ClassSpec,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverEntry {
    pub delta: [Vec<String>; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<[Option<ClassSpec>; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionEntry {
    pub a: String,
    pub b: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberPart {
    pub curve: String,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberEntry {
    pub class: ClassSpec,
    pub parts: Vec<FiberPart>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationsEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_class: Option<ClassSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_square: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_dot_b: Option<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_pairs: Option<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_v2: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blowdown: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_s2: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum_l_lk: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_v: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenspace: Option<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub m_orthogonal: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryEntry {
    pub name: String,
    pub swap: Vec<[String; 2]>,
    #[serde(default)]
    pub maps: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDocument {
    pub label: String,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<i64>>,
    #[serde(default)]
    pub curves: Vec<CurveEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub intersections: Vec<IntersectionEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fibers: Vec<FiberEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectations: Option<ExpectationsEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symmetries: Vec<SymmetryEntry>,
}

/// A parsed surface file. `fixture` is present iff the file has a cover block.
#[derive(Debug, Clone)]
pub struct SurfaceFile {
    pub config: CurveConfiguration,
    pub fixture: Option<Fixture>,
}

pub fn parse_bytes(bytes: &[u8]) -> Result<SurfaceFile> {
    if bytes.len() > MAX_FILE_BYTES {
        return Err(Error::Schema(format!("file exceeds {MAX_FILE_BYTES} bytes")));
    }
    let doc: SurfaceDocument =
        serde_json::from_slice(bytes).map_err(|e| Error::Schema(e.to_string()))?;
    build(&doc)
}

pub fn parse_str(text: &str) -> Result<SurfaceFile> {
    parse_bytes(text.as_bytes())
}

fn resolve_spec(spec: &ClassSpec, surface: &SurfaceLattice, curves: &[NamedCurve]) -> Result<DivisorClass> {
    match spec {
        ClassSpec::Coefficients(v) => surface.class(v),
        ClassSpec::Expression(text) => {
            let lookup = |n: &str| curves.iter().find(|c| c.name == n).map(|c| c.class.clone());
            expr::parse(text, surface, &lookup)
        }
    }
}

pub fn build(doc: &SurfaceDocument) -> Result<SurfaceFile> {
    if doc.basis.is_empty() || doc.basis.len() > MAX_BASIS {
        return Err(Error::Schema(format!("basis must have 1 to {MAX_BASIS} names")));
    }
    if doc.curves.len() > MAX_CURVES {
        return Err(Error::Schema(format!("at most {MAX_CURVES} curves are supported")));
    }
    if let Some(sig) = &doc.signature {
        let ok = sig.len() == doc.basis.len() && sig[0] == 1 && sig[1..].iter().all(|&s| s == -1);
        if !ok {
            return Err(Error::Schema(
                "only the signature [1, -1, ..., -1] of a blowup of the plane is supported".into(),
            ));
        }
    }
    let mut surface = SurfaceLattice::new(doc.label.clone(), doc.basis.clone())?;
    if let Some(k) = &doc.canonical {
        let k = surface.class(k)?;
        surface = surface.with_canonical(k)?;
    }
    let mut curves: Vec<NamedCurve> = Vec::with_capacity(doc.curves.len());
    for entry in &doc.curves {
        if !crate::lattice::is_symbol_name(&entry.name) {
            return Err(Error::Schema(format!("invalid curve name `{}`", entry.name)));
        }
        let class = resolve_spec(&entry.class, &surface, &curves)?;
        curves.push(NamedCurve::new(entry.name.clone(), class, entry.role));
    }
    let config = CurveConfiguration::new(surface.clone(), curves.clone())?;
    let Some(cover_entry) = &doc.cover else {
        let extras = !doc.intersections.is_empty()
            || !doc.fibers.is_empty()
            || doc.expectations.is_some()
            || !doc.symmetries.is_empty();
        if extras {
            return Err(Error::Schema(
                "intersections, fibers, expectations and symmetries need a cover block".into(),
            ));
        }
        return Ok(SurfaceFile { config, fixture: None });
    };
    let spec = |s: &ClassSpec| resolve_spec(s, &surface, &curves);
    let mut cover = CoverData::new(cover_entry.delta.clone());
    if let Some(ls) = &cover_entry.l {
        for (i, l) in ls.iter().enumerate() {
            cover.l[i] = l.as_ref().map(spec).transpose()?;
        }
    }
    let intersections = doc
        .intersections
        .iter()
        .map(|r| IntersectionRow::new(&r.a, &r.b, r.value))
        .collect();
    let fibers = doc
        .fibers
        .iter()
        .map(|f| {
            Ok(FiberDecomposition {
                fiber_class: spec(&f.class)?,
                parts: f.parts.iter().map(|p| (p.curve.clone(), p.multiplicity)).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let expectations = match &doc.expectations {
        None => Expectations::default(),
        Some(e) => Expectations {
            d_class: e.d_class.as_ref().map(spec).transpose()?,
            d_square: e.d_square,
            d_dot_b: e.d_dot_b,
            b_pairs: e.b_pairs,
            l: e.l,
            k_v2: e.k_v2,
            blowdown: e.blowdown,
            k_s2: e.k_s2,
            sum_l_lk: e.sum_l_lk,
            chi_v: e.chi_v,
            eigenspace: e.eigenspace,
            m_orthogonal: e.m_orthogonal.clone(),
        },
    };
    let symmetries = doc
        .symmetries
        .iter()
        .map(|s| Symmetry {
            name: s.name.clone(),
            basis_swaps: s.swap.iter().map(|[a, b]| (a.clone(), b.clone())).collect(),
            curve_map: s.maps.iter().map(|[a, b]| (a.clone(), b.clone())).collect(),
        })
        .collect();
    let fixture = Fixture::new(
        doc.label.clone(),
        config.clone(),
        cover,
        intersections,
        fibers,
        expectations,
        symmetries,
    )?;
    Ok(SurfaceFile {
        config,
        fixture: Some(fixture),
    })
}

fn coeffs(c: &DivisorClass) -> ClassSpec {
    ClassSpec::Coefficients(c.coefficients())
}

pub fn document(fx: &Fixture) -> SurfaceDocument {
    let surface = fx.surface();
    let n = surface.n();
    let l = if fx.cover.l.iter().all(Option::is_none) {
        None
    } else {
        Some(fx.cover.l.clone().map(|c| c.as_ref().map(coeffs)))
    };
    let ex = &fx.expectations;
    let expectations = (*ex != Expectations::default()).then(|| ExpectationsEntry {
        d_class: ex.d_class.as_ref().map(coeffs),
        d_square: ex.d_square,
        d_dot_b: ex.d_dot_b,
        b_pairs: ex.b_pairs,
        l: ex.l,
        k_v2: ex.k_v2,
        blowdown: ex.blowdown,
        k_s2: ex.k_s2,
        sum_l_lk: ex.sum_l_lk,
        chi_v: ex.chi_v,
        eigenspace: ex.eigenspace,
        m_orthogonal: ex.m_orthogonal.clone(),
    });
    SurfaceDocument {
        label: fx.name.clone(),
        basis: surface.basis_names().to_vec(),
        signature: Some(std::iter::once(1).chain(std::iter::repeat_n(-1, n)).collect()),
        canonical: Some(surface.canonical().coefficients()),
        curves: fx
            .config
            .curves()
            .iter()
            .map(|c| CurveEntry {
                name: c.name.clone(),
                class: coeffs(&c.class),
                role: c.role,
            })
            .collect(),
        cover: Some(CoverEntry {
            delta: fx.cover.delta.clone(),
            l,
        }),
        intersections: fx
            .intersections
            .iter()
            .map(|r| IntersectionEntry {
                a: r.a.clone(),
                b: r.b.clone(),
                value: r.value,
            })
            .collect(),
        fibers: fx
            .fibers
            .iter()
            .map(|f| FiberEntry {
                class: coeffs(&f.fiber_class),
                parts: f
                    .parts
                    .iter()
                    .map(|(c, m)| FiberPart {
                        curve: c.clone(),
                        multiplicity: *m,
                    })
                    .collect(),
            })
            .collect(),
        expectations,
        symmetries: fx
            .symmetries
            .iter()
            .map(|s| SymmetryEntry {
                name: s.name.clone(),
                swap: s.basis_swaps.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
                maps: s.curve_map.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
            })
            .collect(),
    }
}

/// Canonical JSON text of a fixture.
pub fn export(fx: &Fixture) -> String {
    canonical_json(&document(fx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover;

    #[test]
    fn fixtures_round_trip() {
        for fx in [cover::dp1(), cover::inoue()] {
            let text = export(&fx);
            let back = parse_str(&text).unwrap().fixture.unwrap();
            assert_eq!(back, fx);
            assert_eq!(export(&back), text);
            assert_eq!(
                cover::verify_fixture(&back).unwrap(),
                cover::verify_fixture(&fx).unwrap()
            );
        }
    }

    #[test]
    fn expressions_and_forward_references() {
        let text = r#"{
            "label": "t",
            "basis": ["L", "E1", "E2"],
            "curves": [
                {"name": "G", "class": "L - E1 - E2", "role": "minus_one"},
                {"name": "H", "class": "-K - G", "role": "other"}
            ]
        }"#;
        let f = parse_str(text).unwrap();
        assert!(f.fixture.is_none());
        assert_eq!(f.config.class_of("H").unwrap().coefficients(), vec![2, 0, 0]);
        let bad = text.replace("-K - G", "-K - Q");
        assert!(matches!(parse_str(&bad), Err(Error::UnknownName(_))));
    }

    #[test]
    fn rejections() {
        let base = r#"{"label": "t", "basis": ["L", "E1"], "signature": SIG}"#;
        assert!(parse_str(&base.replace("SIG", "[1, -1]")).is_ok());
        assert!(matches!(parse_str(&base.replace("SIG", "[1, 1]")), Err(Error::Schema(_))));
        assert!(matches!(parse_str(&base.replace("SIG", "[1]")), Err(Error::Schema(_))));
        assert!(matches!(parse_str("{}"), Err(Error::Schema(_))));
        assert!(matches!(parse_str("not json"), Err(Error::Schema(_))));
        let unknown_field = r#"{"label": "t", "basis": ["L"], "extra": 1}"#;
        assert!(matches!(parse_str(unknown_field), Err(Error::Schema(_))));
        let orphan = r#"{"label": "t", "basis": ["L"], "intersections": [{"a": "x", "b": "y", "value": 0}]}"#;
        assert!(matches!(parse_str(orphan), Err(Error::Schema(_))));
        let unknown_delta = r#"{"label": "t", "basis": ["L"], "cover": {"delta": [["X"], [], []]}}"#;
        assert!(matches!(parse_str(unknown_delta), Err(Error::UnknownName(_))));
        let even_k = r#"{"label": "t", "basis": ["L", "E1"], "canonical": [-2, 1]}"#;
        assert!(parse_str(even_k).is_err());
    }
}
