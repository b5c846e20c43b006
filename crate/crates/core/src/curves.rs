//! Numerical (-1)- and (-2)-classes and named curve configurations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Nodal,
    MinusOne,
    Fiber,
    BranchComponent,
    Other,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Nodal => "nodal",
            Role::MinusOne => "minus_one",
            Role::Fiber => "fiber",
            Role::BranchComponent => "branch_component",
            Role::Other => "other",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "nodal" => Role::Nodal,
            "minus_one" => Role::MinusOne,
            "fiber" => Role::Fiber,
            "branch_component" => Role::BranchComponent,
            "other" => Role::Other,
            _ => return Err(Error::Schema(format!("unknown curve role `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCurve {
    pub name: String,
    pub class: DivisorClass,
    pub role: Role,
}

impl NamedCurve {
    pub fn new(name: impl Into<String>, class: DivisorClass, role: Role) -> Self {
        NamedCurve {
            name: name.into(),
            class,
            role,
        }
    }
}

/// Named curves on a surface. Nodal curves satisfy `C^2 = -2, K.C = 0` and
/// (-1)-curves `C^2 = -1, K.C = -1`; both are checked on construction.
/// Distinct names may share a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfiguration {
    surface: SurfaceLattice,
    curves: Vec<NamedCurve>,
}

impl CurveConfiguration {
    pub fn new(surface: SurfaceLattice, curves: Vec<NamedCurve>) -> Result<Self> {
        for (i, c) in curves.iter().enumerate() {
            if curves[..i].iter().any(|o| o.name == c.name) {
                return Err(Error::DuplicateName(c.name.clone()));
            }
            if c.name == "K" || surface.basis_index(&c.name).is_some() {
                // Basis names stay reserved so class expressions are unambiguous,
                // except for a curve whose class is exactly that basis vector.
                let same = surface
                    .basis_index(&c.name)
                    .map(|i| surface.basis_class(i) == c.class)
                    .unwrap_or(false);
                if !same {
                    return Err(Error::InvalidCurve {
                        name: c.name.clone(),
                        reason: "name collides with a basis symbol of a different class".into(),
                    });
                }
            }
            let sq = surface.self_int(&c.class)?;
            let kd = surface.k_degree(&c.class)?;
            let expected = match c.role {
                Role::Nodal => Some((-2, 0)),
                Role::MinusOne => Some((-1, -1)),
                _ => None,
            };
            if let Some((esq, ekd)) = expected {
                if (sq, kd) != (esq, ekd) {
                    return Err(Error::InvalidCurve {
                        name: c.name.clone(),
                        reason: format!(
                            "role {} needs C^2 = {esq}, K.C = {ekd}; got C^2 = {sq}, K.C = {kd}",
                            c.role
                        ),
                    });
                }
            }
        }
        Ok(CurveConfiguration { surface, curves })
    }

    pub fn surface(&self) -> &SurfaceLattice {
        &self.surface
    }

    pub fn curves(&self) -> &[NamedCurve] {
        &self.curves
    }

    pub fn get(&self, name: &str) -> Result<&NamedCurve> {
        self.curves
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn class_of(&self, name: &str) -> Result<&DivisorClass> {
        self.get(name).map(|c| &c.class)
    }

    pub fn nodal(&self) -> impl Iterator<Item = &NamedCurve> {
        self.curves.iter().filter(|c| c.role == Role::Nodal)
    }

    pub fn nodal_names(&self) -> Vec<&str> {
        self.nodal().map(|c| c.name.as_str()).collect()
    }

    pub fn intersect_names(&self, a: &str, b: &str) -> Result<i64> {
        self.surface.intersect(self.class_of(a)?, self.class_of(b)?)
    }

    /// Same configuration restricted to the given nodal names; other curves
    /// are kept with their roles.
    pub fn with_nodal_subset(&self, keep: &[&str]) -> Self {
        let curves = self
            .curves
            .iter()
            .filter(|c| c.role != Role::Nodal || keep.contains(&c.name.as_str()))
            .cloned()
            .collect();
        CurveConfiguration {
            surface: self.surface.clone(),
            curves,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberDecomposition {
    pub fiber_class: DivisorClass,
    pub parts: Vec<(String, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionRow {
    pub a: String,
    pub b: String,
    pub value: i64,
}

impl IntersectionRow {
    pub fn new(a: &str, b: &str, value: i64) -> Self {
        IntersectionRow {
            a: a.into(),
            b: b.into(),
            value,
        }
    }
}

fn completeness_range(n: i64, self_sq: i64, k_deg: i64) -> std::ops::RangeInclusive<i64> {
    // (9 - n) a^2 + 6 k a + k^2 + n s <= 0 is a convex quadratic in a when
    // n < 9, so the feasible a form an interval inside |a| <= bound.
    let bound = 6 * k_deg.abs() + (k_deg * k_deg + n * self_sq).abs() + 1;
    let feasible = |a: i64| (3 * a + k_deg).pow(2) <= n * (a * a - self_sq);
    let lo = (-bound..=bound).find(|&a| feasible(a));
    let hi = (-bound..=bound).rev().find(|&a| feasible(a));
    match (lo, hi) {
        (Some(lo), Some(hi)) => lo..=hi,
        _ => std::ops::RangeInclusive::new(1, 0),
    }
}

/// Every class `a L - sum b_i E_i` with `C^2 = self_sq` and `K.C = k_deg`,
/// sorted by coefficient vector.
///
/// The search is complete: Cauchy-Schwarz on `sum b_i = 3a + k_deg` and
/// `sum b_i^2 = a^2 - self_sq` gives `(3a + k_deg)^2 <= n (a^2 - self_sq)`,
/// which bounds `a` on both sides whenever `n < 9`. No sign condition on `a`
/// is imposed here; see [`filter_effective_against_nodal`].
pub fn enumerate_classes(surface: &SurfaceLattice, self_sq: i64, k_deg: i64) -> Result<Vec<DivisorClass>> {
    let expected_k = match self_sq {
        -1 => -1,
        -2 => 0,
        _ => {
            return Err(Error::Domain(format!(
                "only (-1)- and (-2)-classes can be enumerated, got self-intersection {self_sq}"
            )))
        }
    };
    if k_deg != expected_k {
        return Err(Error::Domain(format!(
            "K-degree {k_deg} is incompatible with adjunction for a smooth rational curve of square {self_sq}"
        )));
    }
    if !surface.has_standard_canonical() {
        return Err(Error::Domain(
            "enumeration needs the standard canonical class -3L + sum E_i".into(),
        ));
    }
    let n = surface.n();
    if n >= 9 {
        return Err(Error::Domain(format!(
            "the class set is infinite for n = {n} exceptional vectors (K^2 <= 0)"
        )));
    }
    let mut out = Vec::new();
    let mut b = vec![0i64; n];
    for a in completeness_range(n as i64, self_sq, k_deg) {
        let sum = 3 * a + k_deg;
        let sq = a * a - self_sq;
        fill_slots(&mut b, 0, sum, sq, &mut |b| {
            out.push(DivisorClass::new(a, b.iter().map(|x| -x).collect()));
        });
    }
    out.sort();
    Ok(out)
}

/// Assigns `b[i..]` so that the slots sum to `sum` and their squares to `sq`.
fn fill_slots(b: &mut [i64], i: usize, sum: i64, sq: i64, emit: &mut dyn FnMut(&[i64])) {
    let left = (b.len() - i) as i64;
    if left == 0 {
        if sum == 0 && sq == 0 {
            emit(b);
        }
        return;
    }
    if sq < 0 || sum * sum > left * sq {
        return;
    }
    let r = sq.isqrt();
    for v in -r..=r {
        b[i] = v;
        fill_slots(b, i + 1, sum - v, sq - v * v, emit);
    }
    b[i] = 0;
}

/// Keeps the classes that could be effective given the nodal curves: `L.C >= 0`
/// (the line class is nef) and `C.N >= 0` for every nodal-role curve `N` not
/// equal to `C` itself.
///
/// This is a necessary condition only. It matches the known curve counts on
/// the shipped fixtures; elsewhere treat it as a heuristic.
pub fn filter_effective_against_nodal(
    classes: &[DivisorClass],
    config: &CurveConfiguration,
) -> Vec<DivisorClass> {
    let surface = config.surface();
    classes
        .iter()
        .filter(|c| {
            c.coeff_l() >= 0
                && config.nodal().all(|nod| {
                    nod.class == **c || surface.intersect(c, &nod.class).map(|v| v >= 0).unwrap_or(false)
                })
        })
        .cloned()
        .collect()
}

pub fn verify_intersection_table(
    config: &CurveConfiguration,
    expected: &[IntersectionRow],
) -> Result<Certificate> {
    let mut cert = Certificate::new(format!("intersection table on {}", config.surface().label()));
    for row in expected {
        let value = config.intersect_names(&row.a, &row.b)?;
        cert.check_eq(
            format!("{}.{}", row.a, row.b),
            format!("{} . {}", row.a, row.b),
            "stated intersection number",
            value,
            row.value,
        );
    }
    Ok(cert)
}

pub fn verify_fiber_decomposition(
    config: &CurveConfiguration,
    decomp: &FiberDecomposition,
) -> Result<Certificate> {
    let surface = config.surface();
    let label = decomp
        .parts
        .iter()
        .map(|(name, m)| if *m == 1 { name.clone() } else { format!("{m}{name}") })
        .collect::<Vec<_>>()
        .join(" + ");
    let mut cert = Certificate::new(format!("fiber {label}"));
    let mut total = surface.zero();
    for (name, mult) in &decomp.parts {
        if *mult == 0 {
            return Err(Error::Domain(format!("multiplicity of `{name}` must be positive")));
        }
        let cls = config.class_of(name)?;
        total = total.checked_add(&cls.checked_scale(i64::from(*mult))?)?;
    }
    let fiber = surface.format_class(&decomp.fiber_class);
    cert.check(
        "sum",
        format!("{label} equals the fiber class"),
        "fiber decomposition",
        surface.format_class(&total),
        &fiber,
        total == decomp.fiber_class,
    );
    cert.check_eq(
        "fiber_square",
        "fiber class has square 0",
        "fiber decomposition",
        surface.self_int(&decomp.fiber_class)?,
        0,
    );
    for (name, _) in &decomp.parts {
        cert.check_eq(
            format!("{name}.fiber"),
            format!("{name} is orthogonal to the fiber"),
            "fiber decomposition",
            surface.intersect(config.class_of(name)?, &decomp.fiber_class)?,
            0,
        );
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(names: &[&str]) -> SurfaceLattice {
        SurfaceLattice::new("t", names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn cubic() -> SurfaceLattice {
        lattice(&["L", "E1", "E2", "E3", "E1'", "E2'", "E3'"])
    }

    #[test]
    fn classical_counts() {
        let p2 = lattice(&["L"]);
        assert!(enumerate_classes(&p2, -1, -1).unwrap().is_empty());
        assert_eq!(enumerate_classes(&cubic(), -1, -1).unwrap().len(), 27);
        assert_eq!(enumerate_classes(&cubic(), -2, 0).unwrap().len(), 72);
        let dp1 = lattice(&["L", "A", "B", "C", "D", "F", "G", "H", "I"]);
        assert_eq!(enumerate_classes(&dp1, -1, -1).unwrap().len(), 240);
        assert_eq!(enumerate_classes(&dp1, -2, 0).unwrap().len(), 240);
        let one = lattice(&["L", "E"]);
        assert_eq!(enumerate_classes(&one, -1, -1).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_errors() {
        let c = cubic();
        assert!(matches!(enumerate_classes(&c, -3, 1), Err(Error::Domain(_))));
        assert!(matches!(enumerate_classes(&c, -1, 0), Err(Error::Domain(_))));
        let n9 = lattice(&["L", "A", "B", "C", "D", "F", "G", "H", "I", "J"]);
        assert!(matches!(enumerate_classes(&n9, -1, -1), Err(Error::Domain(_))));
    }

    #[test]
    fn role_invariants_checked() {
        let lat = cubic();
        let bad = NamedCurve::new("X", lat.parse_class("L - E1").unwrap(), Role::Nodal);
        assert!(matches!(
            CurveConfiguration::new(lat.clone(), vec![bad]),
            Err(Error::InvalidCurve { .. })
        ));
        let bad = NamedCurve::new("X", lat.parse_class("L - E1 - E2 - E3").unwrap(), Role::MinusOne);
        assert!(CurveConfiguration::new(lat.clone(), vec![bad]).is_err());
        let c = NamedCurve::new("X", lat.parse_class("L").unwrap(), Role::Other);
        assert!(CurveConfiguration::new(lat.clone(), vec![c.clone(), c]).is_err());
        let renamed = NamedCurve::new("E2", lat.parse_class("E1").unwrap(), Role::MinusOne);
        assert!(CurveConfiguration::new(lat.clone(), vec![renamed]).is_err());
        let same = NamedCurve::new("E1", lat.parse_class("E1").unwrap(), Role::MinusOne);
        assert!(CurveConfiguration::new(lat, vec![same]).is_ok());
    }

    #[test]
    fn empty_nodal_set_keeps_minus_one_classes() {
        let lat = cubic();
        let classes = enumerate_classes(&lat, -1, -1).unwrap();
        let config = CurveConfiguration::new(lat, vec![]).unwrap();
        assert_eq!(filter_effective_against_nodal(&classes, &config), classes);
    }

    #[test]
    fn unknown_names_are_input_errors() {
        let lat = cubic();
        let config = CurveConfiguration::new(lat.clone(), vec![]).unwrap();
        let rows = [IntersectionRow::new("A", "B", 0)];
        assert!(matches!(
            verify_intersection_table(&config, &rows),
            Err(Error::UnknownName(_))
        ));
        let decomp = FiberDecomposition {
            fiber_class: lat.basis_class(0),
            parts: vec![("A".into(), 1)],
        };
        assert!(matches!(
            verify_fiber_decomposition(&config, &decomp),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn fiber_failure_is_a_row() {
        let lat = cubic();
        let config = CurveConfiguration::new(
            lat.clone(),
            vec![NamedCurve::new("G1", lat.parse_class("L - E1 - E1'").unwrap(), Role::MinusOne)],
        )
        .unwrap();
        let decomp = FiberDecomposition {
            fiber_class: lat.parse_class("L - E1").unwrap(),
            parts: vec![("G1".into(), 1)],
        };
        let cert = verify_fiber_decomposition(&config, &decomp).unwrap();
        assert!(!cert.passed());
        assert_eq!(cert.row("sum").unwrap().status, crate::RowStatus::Fail);
    }
}
