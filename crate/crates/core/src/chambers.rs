//! Chambers of the sorted cone: realizability, enumeration, minimal
//! integral representatives, the tiny-edge map and wall crossings.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    genetic_code, short_top_family, DownSet, EpsilonRule, GeneticCode, LengthVector, SubsetMask,
};
use crate::error::{Error, Result};
use crate::feasibility::{feasible_point, Constraint};

/// Largest `m` enumerated without an explicit override.
pub const ENUMERATION_BOUND: usize = 9;

/// Chamber counts of the sorted cone, `m = 3..=9`.
pub const KNOWN_CHAMBER_COUNTS: [(usize, usize); 7] =
    [(3, 2), (4, 3), (5, 7), (6, 21), (7, 135), (8, 2470), (9, 175428)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub code: GeneticCode,
    /// Minimal integral representative; zeros are tiny entries.
    pub a_min: LengthVector,
    /// A strictly positive rational point of the chamber.
    pub witness: LengthVector,
}

impl Chamber {
    pub fn m(&self) -> usize {
        self.code.m()
    }

    /// `⟨621,64⟩ 6 1,1,2,2,3,4`
    pub fn to_record(&self) -> String {
        format!("{} {} {}", self.code, self.m(), join_entries(&self.a_min))
    }

    pub fn to_json(&self) -> ChamberJson {
        ChamberJson {
            m: self.m(),
            genes: self.code.genes().iter().map(|g| g.elements_desc().collect()).collect(),
            a_min: self
                .a_min
                .entries()
                .iter()
                .map(|x| x.to_integer().to_i64().expect("a_min entries are small integers"))
                .collect(),
            witness: self.witness.entries().iter().map(|x| x.to_string()).collect(),
        }
    }

    pub fn from_json(json: &ChamberJson) -> Result<Self> {
        let genes = json.genes.iter().map(|g| SubsetMask::new(json.m, g)).collect::<Result<Vec<_>>>()?;
        let code = GeneticCode::from_genes(json.m, genes)?;
        let a_min = LengthVector::from_integers(&json.a_min)?;
        let witness = json.witness.join(",").parse()?;
        Ok(Self { code, a_min, witness })
    }
}

/// Parse a line record back into `(code, a_min)`.
pub fn parse_record(line: &str) -> Result<(GeneticCode, LengthVector)> {
    let mut parts = line.split_whitespace();
    let (Some(code), Some(m), Some(a), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
        return Err(Error::Parse(format!("malformed chamber record {line:?}")));
    };
    let m: usize = m.parse().map_err(|e| Error::Parse(format!("bad m in {line:?}: {e}")))?;
    let code = GeneticCode::parse(m, code)?;
    let a_min: LengthVector = a.parse()?;
    if a_min.m() != m {
        return Err(Error::Parse(format!("a_min length differs from m in {line:?}")));
    }
    Ok((code, a_min))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChamberJson {
    pub m: usize,
    pub genes: Vec<Vec<usize>>,
    pub a_min: Vec<i64>,
    pub witness: Vec<String>,
}

pub(crate) fn join_entries(a: &LengthVector) -> String {
    a.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn subset_row(m: usize, j: SubsetMask, sign: i64) -> Vec<i64> {
    (1..=m).map(|i| if j.contains(i) { sign } else { -sign }).collect()
}

/// The wall inequalities of a chamber in the sorted cone, each strict
/// inequality tightened by a unit slack.
fn chamber_constraints(code: &GeneticCode) -> Vec<Constraint> {
    let m = code.m();
    let mut cs = Vec::new();
    let mut first = vec![0; m];
    first[0] = 1;
    cs.push(Constraint::new(first, 1));
    for i in 0..m - 1 {
        let mut row = vec![0; m];
        row[i] = -1;
        row[i + 1] = 1;
        cs.push(Constraint::new(row, 0));
    }
    for &g in code.genes() {
        cs.push(Constraint::new(subset_row(m, g, -1), 1));
    }
    for j in code.minimal_nonmembers() {
        cs.push(Constraint::new(subset_row(m, j, 1), 1));
    }
    cs
}

/// A strictly positive sorted witness of the chamber, or `None` if no
/// chamber carries this code.
pub fn realizable(code: &GeneticCode) -> Option<LengthVector> {
    if code.m() < 3 {
        return None;
    }
    if violates_duality(code.genes()) {
        return None;
    }
    let x = feasible_point(code.m(), &chamber_constraints(code))?;
    let witness = LengthVector::new(x).expect("feasible point is a valid length vector");
    debug_assert_eq!(genetic_code(&witness).as_ref(), Ok(code));
    Some(witness)
}

/// A gene whose complement is hook-below another gene cannot be short.
fn violates_duality(genes: &[SubsetMask]) -> bool {
    genes.iter().any(|g| genes.iter().any(|h| g.complement().hook_leq(*h)))
}

fn check_bound(m: usize, allow_large: bool) -> Result<()> {
    if m < 3 {
        return Err(Error::Domain(format!("m = {m}: at least 3 edges are needed")));
    }
    if m > crate::combinatorics::MAX_EDGES || (m > ENUMERATION_BOUND && !allow_large) {
        return Err(Error::BoundExceeded { m, bound: ENUMERATION_BOUND });
    }
    Ok(())
}

/// Every chamber code of the sorted cone for `m` edges, in [`GeneticCode`]
/// order, with a witness for each.
///
/// Walks the chamber graph from `⟨⟩`: shrinking `a_m` along a generic
/// segment only ever turns subsets containing `m` from long to short, so
/// every chamber is reached by adding one hook-minimal subset at a time.
pub fn enumerate_codes(m: usize, allow_large: bool) -> Result<Vec<(GeneticCode, LengthVector)>> {
    check_bound(m, allow_large)?;
    let start = GeneticCode::empty(m);
    let start_witness = realizable(&start).expect("the empty chamber exists");
    let mut seen: HashSet<DownSet> = HashSet::new();
    seen.insert(start.down_set());
    let mut found = vec![(start.clone(), start_witness)];
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut candidates = Vec::new();
        for code in &frontier {
            let set = code.down_set();
            for j in code.minimal_nonmembers() {
                let mut next = set.clone();
                next.insert(j);
                if seen.insert(next.clone()) {
                    candidates.push(GeneticCode::from_down_set(&next));
                }
            }
        }
        let mut level: Vec<(GeneticCode, LengthVector)> =
            candidates.into_par_iter().filter_map(|c| realizable(&c).map(|w| (c, w))).collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
        frontier = level.iter().map(|(c, _)| c.clone()).collect();
        found.extend(level);
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found)
}

/// All chambers for `m` edges (`3 <= m <= 9`), with minimal representatives.
pub fn enumerate_chambers(m: usize) -> Result<Vec<Chamber>> {
    enumerate_chambers_with(m, false)
}

pub fn enumerate_chambers_with(m: usize, allow_large: bool) -> Result<Vec<Chamber>> {
    let codes = enumerate_codes(m, allow_large)?;
    let targets: Vec<GeneticCode> = codes.iter().map(|(c, _)| c.clone()).collect();
    let bound = codes.iter().map(|(_, w)| integral_sum(w)).max().unwrap_or(0);
    let mins = a_min_sweep(m, &targets, bound);
    Ok(codes
        .into_iter()
        .map(|(code, witness)| {
            let a_min = mins[&code].clone();
            Chamber { code, a_min, witness }
        })
        .collect())
}

fn integral_sum(w: &LengthVector) -> u64 {
    w.scaled_integers().iter().fold(BigInt::from(0), |acc, x| acc + x).to_u64().unwrap_or(u64::MAX)
}

/// Minimal integral representative: nondecreasing integer vectors with at
/// least one positive entry, by increasing sum and then lexicographically.
///
/// Zero entries are tiny lengths, but only in the conventional sense: the
/// nonzero entries alone must already be generic. Otherwise `(0,1,1,1,3)`
/// would undercut `(1,1,1,1,3)` through a tie broken by the tiny edge.
pub fn a_min(code: &GeneticCode) -> Result<LengthVector> {
    let witness = realizable(code).ok_or_else(|| Error::NotAChamber(code.to_string()))?;
    let found = a_min_sweep(code.m(), std::slice::from_ref(code), integral_sum(&witness));
    Ok(found[code].clone())
}

/// First representative of every target code, scanning sums `1..=bound`.
pub(crate) fn a_min_sweep(m: usize, targets: &[GeneticCode], bound: u64) -> HashMap<GeneticCode, LengthVector> {
    let wanted: HashMap<DownSet, &GeneticCode> = targets.iter().map(|c| (c.down_set(), c)).collect();
    let mut out = HashMap::new();
    let mut buf = vec![0u64; m];
    let mut total = 1;
    while out.len() < wanted.len() && total <= bound {
        for_each_partition(&mut buf, 0, total, 0, &mut |v| {
            // zeros enter as genuine zeros: a tie is a wall, never broken by ε
            if let Ok(set) = short_top_family(v, 0, EpsilonRule::default()) {
                if let Some(code) = wanted.get(&set) {
                    if !out.contains_key(*code) {
                        let ints: Vec<i64> = v.iter().map(|&x| x as i64).collect();
                        out.insert((*code).clone(), LengthVector::from_integers(&ints).expect("valid"));
                    }
                }
            }
        });
        total += 1;
    }
    assert_eq!(out.len(), wanted.len(), "an integral representative exists below the witness bound");
    out
}

/// Nondecreasing `buf[pos..]` with entries `>= min` summing to `rest`, in
/// lexicographic order.
fn for_each_partition(buf: &mut [u64], pos: usize, rest: u64, min: u64, f: &mut impl FnMut(&[u64])) {
    let left = (buf.len() - pos) as u64;
    if left == 1 {
        if rest >= min {
            buf[pos] = rest;
            f(buf);
        }
        return;
    }
    let mut v = min;
    while v * left <= rest {
        buf[pos] = v;
        for_each_partition(buf, pos + 1, rest - v, v, f);
        v += 1;
    }
}

pub fn tiny_edge(code: &GeneticCode) -> GeneticCode {
    code.tiny_edge()
}

pub fn tiny_edge_reduce(code: &GeneticCode) -> Option<GeneticCode> {
    code.tiny_edge_reduce()
}

/// `J` when `S_m(to) = S_m(from) ∪ {J}`.
pub fn adjacent_by_pair(from: &GeneticCode, to: &GeneticCode) -> Option<SubsetMask> {
    if from.m() != to.m() {
        return None;
    }
    let a = from.down_set();
    let b = to.down_set();
    if b.len() != a.len() + 1 {
        return None;
    }
    let mut extra = b.members().filter(|j| !a.contains(*j));
    let j = extra.next()?;
    let nested = a.members().all(|k| b.contains(k));
    nested.then_some(j)
}

/// `(A, B)` for the surgery turning `Ch(α)` into `Ch(β)` across `H_J`:
/// `A = (d-1)(|J|-1) - 1`, `B = (m-1-|J|)(d-1)`.
pub fn surgery_indices(j: SubsetMask, m: usize, d: usize) -> Result<(i64, i64)> {
    if j.ambient() != m || !j.contains(m) {
        return Err(Error::Domain(format!("wall subset {j:?} must contain {m}")));
    }
    if j.len() < 2 || j.len() + 2 > m {
        return Err(Error::Domain(format!("|J| = {} outside 2..={}", j.len(), m as i64 - 2)));
    }
    if d < 2 {
        return Err(Error::Domain(format!("d = {d} < 2")));
    }
    let (k, m, d) = (j.len() as i64, m as i64, d as i64);
    Ok(((d - 1) * (k - 1) - 1, (m - 1 - k) * (d - 1)))
}

/// Crossing `H_J` from `from` into `to`, where `J` becomes short.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCrossing {
    pub from: GeneticCode,
    pub to: GeneticCode,
    pub subset: SubsetMask,
}

impl WallCrossing {
    pub fn between(from: &GeneticCode, to: &GeneticCode) -> Option<Self> {
        adjacent_by_pair(from, to).map(|subset| Self { from: from.clone(), to: to.clone(), subset })
    }

    pub fn surgery_index(&self, d: usize) -> Result<i64> {
        surgery_indices(self.subset, self.from.m(), d).map(|(a, _)| a)
    }

    pub fn cosurgery_index(&self, d: usize) -> Result<i64> {
        surgery_indices(self.subset, self.from.m(), d).map(|(_, b)| b)
    }
}

/// Chambers reachable from `code` by crossing a single wall `H_J`, `m ∈ J`.
pub fn crossings_from(code: &GeneticCode) -> Vec<(SubsetMask, GeneticCode)> {
    let set = code.down_set();
    code.minimal_nonmembers()
        .into_iter()
        .filter_map(|j| {
            let mut next = set.clone();
            next.insert(j);
            let to = GeneticCode::from_down_set(&next);
            realizable(&to).map(|_| (j, to))
        })
        .collect()
}

#[cfg(test)]
fn is_positive_witness(w: &LengthVector) -> bool {
    use num_traits::Signed;
    w.entries().iter().all(|x| x.is_positive())
}
