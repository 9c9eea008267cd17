//! Critical points of the height function on the bounded manifold `V_d(a)`
//! whose boundary is the chain space.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::combinatorics::{GeneticCode, SubsetMask};
use crate::error::{Error, Result};
use crate::topology::{self, SpaceExpr, SpaceQuery};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPoint {
    #[serde(rename = "J")]
    pub subset: SubsetMask,
    pub index: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MorseInventory {
    pub m: usize,
    pub d: usize,
    pub points: Vec<CriticalPoint>,
    #[serde(rename = "eulerV")]
    pub euler_v: i64,
    pub histogram: BTreeMap<i64, usize>,
}

pub fn critical_index(j: SubsetMask, d: usize) -> i64 {
    (d as i64 - 1) * (j.len() as i64 - 1)
}

/// One critical point per member of `S_m`, of index `(d-1)(|J|-1)`.
pub fn morse_inventory(code: &GeneticCode, d: usize) -> Result<MorseInventory> {
    if d < 2 {
        return Err(Error::Domain(format!("d = {d} < 2")));
    }
    let mut points: Vec<CriticalPoint> =
        code.down_closure().into_iter().map(|j| CriticalPoint { subset: j, index: critical_index(j, d) }).collect();
    points.sort_by(|a, b| a.index.cmp(&b.index).then(a.subset.cmp(&b.subset)));
    let mut histogram = BTreeMap::new();
    for p in &points {
        *histogram.entry(p.index).or_insert(0) += 1;
    }
    let euler_v = points.iter().map(|p| if p.index % 2 == 0 { 1 } else { -1 }).sum();
    Ok(MorseInventory { m: code.m(), d, points, euler_v, histogram })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ConnectivityReport {
    /// `π_k = 0` for `k <= connected_through`.
    #[serde(rename_all = "camelCase")]
    Connected { connected_through: i64 },
    /// The exceptional chamber at `d = 2`.
    TwoComponents,
    /// The exceptional chamber at `d >= 3`: `(d-3)`-connected with
    /// `π_{d-2} ≅ ℤ`.
    #[serde(rename_all = "camelCase")]
    InfiniteCyclic { degree: i64 },
}

impl std::fmt::Display for ConnectivityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Connected { connected_through } if *connected_through == 0 => write!(f, "connected"),
            Self::Connected { connected_through } => write!(f, "{connected_through}-connected"),
            Self::TwoComponents => write!(f, "2 components"),
            Self::InfiniteCyclic { degree } => write!(f, "pi_{degree} = Z"),
        }
    }
}

/// The chain space is `(d-2)`-connected, except for `⟨{m,m-3,...,1}⟩`,
/// whose chain space is `(S^{d-1})^{m-3} × S^{d-2}`.
pub fn connectivity(code: &GeneticCode, d: usize) -> Result<ConnectivityReport> {
    if d < 2 {
        return Err(Error::Domain(format!("d = {d} < 2")));
    }
    if code.is_empty() {
        return Err(Error::EmptyChamber);
    }
    let d = d as i64;
    if code.m() >= 4 && *code == GeneticCode::exceptional(code.m()) {
        return Ok(if d == 2 {
            ConnectivityReport::TwoComponents
        } else {
            ConnectivityReport::InfiniteCyclic { degree: d - 2 }
        });
    }
    Ok(ConnectivityReport::Connected { connected_through: d - 2 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub passed: bool,
    /// `χ(Ch²)` from the symbolic description.
    pub chi_boundary: i64,
    /// `2·χ(V)` for odd `m`, `0` for even `m`.
    pub expected: i64,
}

/// `χ(∂W) = 2χ(W)` for compact odd-dimensional `W`, and `0` when `∂W` is
/// odd-dimensional. Checked at `d = 2`, where `dim V = m - 2`.
pub fn euler_boundary_check(code: &GeneticCode) -> Result<CheckResult> {
    let planar = topology::describe(code, SpaceQuery::Planar)?;
    if matches!(planar, SpaceExpr::Unknown(_)) {
        return Err(Error::UnknownDescription(code.to_string()));
    }
    let chi_boundary = topology::euler_char(&planar)
        .ok_or_else(|| Error::UnknownDescription(format!("{code}: no Euler characteristic")))?;
    let expected = if code.m() % 2 == 1 { 2 * morse_inventory(code, 2)?.euler_v } else { 0 };
    Ok(CheckResult { passed: chi_boundary == expected, chi_boundary, expected })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(m: usize, g: &[&str]) -> GeneticCode {
        GeneticCode::from_digits(m, g).unwrap()
    }

    #[test]
    fn inventory_examples() {
        let inv = morse_inventory(&code(5, &["54"]), 2).unwrap();
        assert_eq!(inv.points.len(), 5);
        assert_eq!(inv.histogram, BTreeMap::from([(0, 1), (1, 4)]));
        assert_eq!(inv.euler_v, -3);

        for d in 2..6 {
            let inv = morse_inventory(&GeneticCode::single(6), d).unwrap();
            assert_eq!(inv.points.len(), 1);
            assert_eq!(inv.points[0].index, 0);
            assert_eq!(inv.euler_v, 1);
            let empty = morse_inventory(&GeneticCode::empty(6), d).unwrap();
            assert!(empty.points.is_empty());
            assert_eq!(empty.euler_v, 0);
        }
        assert!(morse_inventory(&GeneticCode::single(5), 1).is_err());
    }

    #[test]
    fn inventory_json_shape() {
        let inv = morse_inventory(&code(5, &["51"]), 3).unwrap();
        let v: serde_json::Value = serde_json::to_value(&inv).unwrap();
        assert_eq!(v["m"], 5);
        assert_eq!(v["eulerV"], 2);
        assert_eq!(v["points"][1]["J"], serde_json::json!([5, 1]));
        assert_eq!(v["points"][1]["index"], 2);
        assert_eq!(v["histogram"]["2"], 1);
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(connectivity(&code(6, &["61"]), 3).unwrap(), ConnectivityReport::Connected { connected_through: 1 });
        assert_eq!(connectivity(&code(6, &["6321"]), 2).unwrap(), ConnectivityReport::TwoComponents);
        assert_eq!(connectivity(&code(4, &["41"]), 2).unwrap(), ConnectivityReport::TwoComponents);
        assert_eq!(connectivity(&code(4, &["41"]), 4).unwrap(), ConnectivityReport::InfiniteCyclic { degree: 2 });
        assert_eq!(connectivity(&GeneticCode::empty(5), 2), Err(Error::EmptyChamber));
    }

    #[test]
    fn boundary_check_examples() {
        let r = euler_boundary_check(&code(5, &["54"])).unwrap();
        assert_eq!((r.chi_boundary, r.expected, r.passed), (-6, -6, true));
        let r = euler_boundary_check(&code(6, &["6321"])).unwrap();
        assert_eq!((r.chi_boundary, r.expected, r.passed), (0, 0, true));
        let r = euler_boundary_check(&GeneticCode::single(5)).unwrap();
        assert_eq!((r.chi_boundary, r.expected, r.passed), (2, 2, true));
    }
}
