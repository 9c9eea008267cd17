//! Descriptions of chain and polygon spaces derived from the base chambers by
//! adding tiny edges and crossing walls `H_{m,p}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use super::diffeo::equivalent;
use super::euler::{euler_char, euler_char_with, standard_quotient_chi};
use super::expr::{Dim, SpaceExpr, SpaceExpr::*};
use super::normalize::{instantiate, normalize};
use crate::chambers::{enumerate_codes, ENUMERATION_BOUND};
use crate::combinatorics::{DownSet, GeneticCode, SubsetMask};
use crate::error::{Error, Result};

/// Largest `m` for which [`coverage`] runs without an override.
pub const COVERAGE_BOUND: usize = 7;

pub const UNREACHABLE: &str = "unreachable by implemented rules";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceQuery {
    /// `Ch_m^d`; `None` keeps `d` symbolic.
    Chain(Option<u32>),
    /// `N_m^2 = Ch_m^2`.
    Planar,
    /// `N_m^3`.
    Spatial,
}

/// How a description was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Empty,
    Single,
    /// `⟨{m,m-3,...,1}⟩`.
    Exceptional,
    /// `⟨{m,m-3,...,2}⟩`.
    ExceptionalNeighbour,
    /// Tiny edge added to an `(m-1)`-chamber.
    Tiny {
        from: GeneticCode,
    },
    /// Crossing the wall `H_J`, `|J| = 2`, from a described chamber.
    Sum {
        from: GeneticCode,
        wall: SubsetMask,
    },
}

impl std::fmt::Display for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Empty => write!(f, "empty chamber"),
            Self::Single => write!(f, "single gene ⟨m⟩"),
            Self::Exceptional => write!(f, "base ⟨m,m-3,...,1⟩"),
            Self::ExceptionalNeighbour => write!(f, "base ⟨m,m-3,...,2⟩"),
            Self::Tiny { from } => write!(f, "tiny edge on {from}"),
            Self::Sum { from, wall } => write!(f, "wall {wall} from {from}"),
        }
    }
}

/// Symbolic chain space (in `d`) and spatial polygon space of a chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Description {
    pub chain: SpaceExpr,
    pub spatial: SpaceExpr,
    pub derivation: Derivation,
}

impl Description {
    fn new(chain: SpaceExpr, spatial: SpaceExpr, derivation: Derivation) -> Self {
        Self { chain: normalize(&chain), spatial: normalize(&spatial), derivation }
    }

    pub fn get(&self, q: SpaceQuery) -> SpaceExpr {
        match q {
            SpaceQuery::Chain(None) => self.chain.clone(),
            SpaceQuery::Chain(Some(d)) => instantiate(&self.chain, d),
            SpaceQuery::Planar => instantiate(&self.chain, 2),
            SpaceQuery::Spatial => self.spatial.clone(),
        }
    }
}

fn sd(per_d: i64, constant: i64) -> SpaceExpr {
    Sphere(Dim::affine(per_d, constant))
}

/// `S^{d-1} × S^{(m-3)(d-1)-1}`, the summand added by a wall `H_{m,p}`.
pub fn sum_summand(m: usize) -> SpaceExpr {
    Product(vec![sd(1, 0), sd(m as i64 - 3, -1)])
}

/// Descriptions of the base chambers, when `code` is one.
fn base(code: &GeneticCode, fallback: bool) -> Option<Description> {
    let m = code.m();
    let k = m as u32 - 3;
    if code.is_empty() {
        return Some(Description::new(Empty, Empty, Derivation::Empty));
    }
    if *code == GeneticCode::single(m) {
        return Some(Description::new(sd(m as i64 - 2, -1), CP(k), Derivation::Single));
    }
    if m >= 4 && *code == GeneticCode::exceptional(m) {
        let mut chain = vec![sd(1, 0); k as usize];
        chain.push(sd(1, -1));
        let spatial = Product(vec![SpaceExpr::sphere(2); k as usize]);
        return Some(Description::new(Product(chain), spatial, Derivation::Exceptional));
    }
    if fallback && m >= 5 && *code == GeneticCode::exceptional_neighbour(m) {
        let spatial = ConnSum(vec![Product(vec![SpaceExpr::sphere(2); k as usize]), CPbar(k)]);
        return Some(Description::new(OpaqueB3 { m: m as u32, d: None }, spatial, Derivation::ExceptionalNeighbour));
    }
    None
}

fn tiny(from: &GeneticCode, desc: &Description) -> Description {
    Description::new(
        Product(vec![sd(1, 0), desc.chain.clone()]),
        TwistedS2(Box::new(instantiate(&desc.chain, 3))),
        Derivation::Tiny { from: from.clone() },
    )
}

fn sum(m: usize, from: &GeneticCode, wall: SubsetMask, desc: &Description) -> Description {
    Description::new(
        ConnSum(vec![desc.chain.clone(), sum_summand(m)]),
        ConnSum(vec![desc.spatial.clone(), CPbar(m as u32 - 3)]),
        Derivation::Sum { from: from.clone(), wall },
    )
}

/// A wall-crossing step taken by the derivation, with its Euler bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumStep {
    pub from: GeneticCode,
    pub to: GeneticCode,
    pub wall: SubsetMask,
}

/// All derivations for the chambers of one `m`.
#[derive(Debug)]
pub struct ChamberTable {
    m: usize,
    order: Vec<GeneticCode>,
    codes: HashSet<GeneticCode>,
    described: HashMap<GeneticCode, Description>,
    sum_steps: Vec<SumStep>,
    /// `χ(X/S¹)` for `X = Ch³` of each described `(m-1)`-chamber.
    quotients: HashMap<SpaceExpr, i64>,
    spatial_chi: HashMap<GeneticCode, i64>,
    previous: Option<Arc<ChamberTable>>,
}

impl ChamberTable {
    fn build(m: usize, previous: Option<Arc<ChamberTable>>) -> Result<Self> {
        let codes: HashSet<GeneticCode> = enumerate_codes(m, true)?.into_iter().map(|(c, _)| c).collect();
        let mut quotients = HashMap::new();
        if let Some(prev) = &previous {
            for code in &prev.order {
                if let (Some(desc), Some(chi)) = (prev.described.get(code), prev.spatial_chi.get(code)) {
                    quotients.insert(instantiate(&desc.chain, 3), *chi);
                }
            }
        }
        let mut t = Self {
            m,
            order: Vec::new(),
            codes,
            described: HashMap::new(),
            sum_steps: Vec::new(),
            quotients,
            spatial_chi: HashMap::new(),
            previous,
        };
        let empty = GeneticCode::empty(m);
        t.visit(&empty, base(&empty, false).unwrap());
        let single = GeneticCode::single(m);
        t.visit(&single, base(&single, false).unwrap());
        if let Some(prev) = t.previous.clone() {
            for from in &prev.order {
                if let Some(desc) = prev.described.get(from) {
                    let lift = from.tiny_edge();
                    let d = base(&lift, false).unwrap_or_else(|| tiny(from, desc));
                    t.visit(&lift, d);
                }
            }
        }
        if m >= 4 {
            let e = GeneticCode::exceptional(m);
            t.visit(&e, base(&e, false).unwrap());
        }
        if m >= 5 {
            let e = GeneticCode::exceptional_neighbour(m);
            t.visit(&e, base(&e, true).unwrap());
        }
        let mut rest: Vec<GeneticCode> = t.codes.iter().filter(|c| !t.described.contains_key(*c)).cloned().collect();
        rest.sort();
        t.order.extend(rest);
        let chis: Vec<(GeneticCode, i64)> =
            t.described.iter().filter_map(|(c, d)| t.euler_spatial(&d.spatial).map(|chi| (c.clone(), chi))).collect();
        t.spatial_chi.extend(chis);
        Ok(t)
    }

    fn visit(&mut self, code: &GeneticCode, desc: Description) {
        if self.described.contains_key(code) || !self.codes.contains(code) {
            return;
        }
        self.described.insert(code.clone(), desc);
        self.order.push(code.clone());
        let mut queue = VecDeque::from([code.clone()]);
        while let Some(from) = queue.pop_front() {
            for (wall, to) in self.sum_successors(&from) {
                if self.described.contains_key(&to) {
                    continue;
                }
                let desc = match base(&to, false) {
                    Some(b) => b,
                    None => {
                        self.sum_steps.push(SumStep { from: from.clone(), to: to.clone(), wall });
                        sum(self.m, &from, wall, &self.described[&from])
                    }
                };
                self.described.insert(to.clone(), desc);
                self.order.push(to.clone());
                queue.push_back(to);
            }
        }
    }

    /// Chambers obtained from `from` by making one more `{m,p}` short. The
    /// wall rule does not apply from `⟨{m,m-3,...,1}⟩`.
    fn sum_successors(&self, from: &GeneticCode) -> Vec<(SubsetMask, GeneticCode)> {
        let m = self.m;
        if m < 4 || *from == GeneticCode::exceptional(m) {
            return Vec::new();
        }
        let set = from.down_set();
        let mut out: Vec<(SubsetMask, GeneticCode)> = from
            .minimal_nonmembers()
            .into_iter()
            .filter(|j| j.len() == 2)
            .filter_map(|j| {
                let mut next: DownSet = set.clone();
                next.insert(j);
                let to = GeneticCode::from_down_set(&next);
                self.codes.contains(&to).then_some((j, to))
            })
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }

    fn euler_spatial(&self, x: &SpaceExpr) -> Option<i64> {
        euler_char_with(x, &|inner| self.quotients.get(inner).copied().or_else(|| standard_quotient_chi(inner)))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Derivation order: `⟨⟩`, `⟨m⟩` and its wall crossings, the tiny-edge
    /// lifts of the `(m-1)`-table (each followed by its wall crossings), the
    /// two exceptional chambers, then unreached chambers in code order.
    pub fn order(&self) -> &[GeneticCode] {
        &self.order
    }

    pub fn description(&self, code: &GeneticCode) -> Option<&Description> {
        self.described.get(code)
    }

    pub fn is_chamber(&self, code: &GeneticCode) -> bool {
        self.codes.contains(code)
    }

    pub fn described_count(&self) -> usize {
        self.described.len()
    }

    pub fn sum_steps(&self) -> &[SumStep] {
        &self.sum_steps
    }

    /// `χ(N³)`, resolving twisted products through the `(m-1)`-table.
    pub fn spatial_euler(&self, code: &GeneticCode) -> Option<i64> {
        self.spatial_chi.get(code).copied()
    }

    /// Every description the rules produce for `code`, from the chosen
    /// descriptions of its neighbours.
    pub fn alternatives(&self, code: &GeneticCode) -> Vec<Description> {
        let m = self.m;
        let mut out = Vec::new();
        if let Some(b) = base(code, true) {
            out.push(b);
        }
        if let (Some(prev), Some(from)) = (&self.previous, code.tiny_edge_reduce()) {
            if let Some(desc) = prev.described.get(&from) {
                out.push(tiny(&from, desc));
            }
        }
        for from in &self.order {
            if let Some(desc) = self.described.get(from) {
                if let Some((wall, _)) = self.sum_successors(from).into_iter().find(|(_, to)| to == code) {
                    out.push(sum(m, from, wall, desc));
                }
            }
        }
        out
    }
}

/// Memo of chamber tables, shared across threads.
#[derive(Debug, Default)]
pub struct Engine {
    tables: RwLock<HashMap<usize, Arc<ChamberTable>>>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&self, m: usize) -> Result<Arc<ChamberTable>> {
        if !(3..=ENUMERATION_BOUND).contains(&m) {
            return Err(if m < 3 {
                Error::Domain(format!("m = {m}: at least 3 edges are needed"))
            } else {
                Error::BoundExceeded { m, bound: ENUMERATION_BOUND }
            });
        }
        if let Some(t) = self.tables.read().expect("engine lock").get(&m) {
            return Ok(t.clone());
        }
        let previous = if m > 3 { Some(self.table(m - 1)?) } else { None };
        let built = Arc::new(ChamberTable::build(m, previous)?);
        let mut tables = self.tables.write().expect("engine lock");
        Ok(tables.entry(m).or_insert(built).clone())
    }

    pub fn describe(&self, code: &GeneticCode, q: SpaceQuery) -> Result<SpaceExpr> {
        if let SpaceQuery::Chain(Some(d)) = q {
            if d < 2 {
                return Err(Error::Domain(format!("d = {d} < 2")));
            }
        }
        let table = self.table(code.m())?;
        if !table.is_chamber(code) {
            return Err(Error::NotAChamber(code.to_string()));
        }
        Ok(match table.description(code) {
            Some(desc) => desc.get(q),
            None => Unknown(UNREACHABLE.into()),
        })
    }
}

/// The process-wide engine.
pub fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(Engine::new)
}

/// Description in normal form; `Unknown` when no rule reaches the chamber.
pub fn describe(code: &GeneticCode, q: SpaceQuery) -> Result<SpaceExpr> {
    engine().describe(code, q)
}

/// `(described, total)` chambers for `m <= 7`.
pub fn coverage(m: usize, q: SpaceQuery) -> Result<(usize, usize)> {
    coverage_with(m, q, false)
}

pub fn coverage_with(m: usize, q: SpaceQuery, allow_large: bool) -> Result<(usize, usize)> {
    if m > COVERAGE_BOUND && !allow_large {
        return Err(Error::BoundExceeded { m, bound: COVERAGE_BOUND });
    }
    let table = engine().table(m)?;
    let mut described = 0;
    for code in table.order() {
        if !engine().describe(code, q)?.contains_unknown() {
            described += 1;
        }
    }
    Ok((described, table.order().len()))
}

/// Chambers of `m` in derivation order (the row order of the tables).
pub fn table_order(m: usize) -> Result<Vec<GeneticCode>> {
    Ok(engine().table(m)?.order().to_vec())
}

/// Outcome of comparing one alternative derivation against the chosen one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCheck {
    pub code: GeneticCode,
    pub derivation: Derivation,
    pub planar: bool,
    pub spatial: bool,
    /// `None` when either side is the unsimplified `⟨{m,m-3,...,2}⟩` chain.
    pub chain: Option<bool>,
}

impl PathCheck {
    pub fn passed(&self) -> bool {
        self.planar && self.spatial && self.chain != Some(false)
    }
}

/// Compare every alternative derivation with the chosen description, up to
/// the registered diffeomorphisms.
pub fn path_independence(m: usize) -> Result<Vec<PathCheck>> {
    let table = engine().table(m)?;
    let mut checks = Vec::new();
    for code in table.order() {
        let Some(chosen) = table.description(code) else { continue };
        for alt in table.alternatives(code) {
            if alt.derivation == chosen.derivation {
                continue;
            }
            let chain = (!chosen.chain.contains_opaque() && !alt.chain.contains_opaque())
                .then(|| equivalent(&chosen.chain, &alt.chain));
            checks.push(PathCheck {
                code: code.clone(),
                derivation: alt.derivation.clone(),
                planar: equivalent(&chosen.get(SpaceQuery::Planar), &alt.get(SpaceQuery::Planar)),
                spatial: equivalent(&chosen.spatial, &alt.spatial),
                chain,
            });
        }
    }
    Ok(checks)
}

/// Euler bookkeeping of one wall crossing at a numeric `d`:
/// `χ(after) = χ(before) + χ(summand) - χ(S^{dim})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumEulerCheck {
    pub step: SumStep,
    pub d: u32,
    pub before: i64,
    pub after: i64,
    pub summand: i64,
    pub sphere: i64,
}

impl SumEulerCheck {
    pub fn passed(&self) -> bool {
        self.after == self.before + self.summand - self.sphere
    }
}

pub fn sum_euler_checks(m: usize, d: u32) -> Result<Vec<SumEulerCheck>> {
    let table = engine().table(m)?;
    let chi = |x: &SpaceExpr| {
        euler_char(x).ok_or_else(|| Error::UnknownDescription(format!("no Euler characteristic for {x:?}")))
    };
    let dim = (m as i64 - 2) * (d as i64 - 1) - 1;
    table
        .sum_steps()
        .iter()
        .map(|step| {
            let before = chi(&table.description(&step.from).unwrap().get(SpaceQuery::Chain(Some(d))))?;
            let after = chi(&table.description(&step.to).unwrap().get(SpaceQuery::Chain(Some(d))))?;
            let summand = chi(&instantiate(&sum_summand(m), d))?;
            let sphere = chi(&SpaceExpr::sphere(dim))?;
            Ok(SumEulerCheck { step: step.clone(), d, before, after, summand, sphere })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{render, Style};

    fn code(m: usize, g: &[&str]) -> GeneticCode {
        GeneticCode::from_digits(m, g).unwrap()
    }

    fn show(c: &GeneticCode, q: SpaceQuery) -> String {
        render(&describe(c, q).unwrap(), Style::Ascii)
    }

    #[test]
    fn examples() {
        assert_eq!(describe(&code(5, &["52"]), SpaceQuery::Planar).unwrap(), Surface(2));
        assert_eq!(show(&code(6, &["61"]), SpaceQuery::Spatial), "CP^3 # ~CP^3");
        assert_eq!(show(&code(6, &["6321"]), SpaceQuery::Chain(None)), "(S^{d-1})^3 x S^{d-2}");
        assert_eq!(show(&code(6, &["641"]), SpaceQuery::Planar), "Sigma_3 x S^1");
        assert_eq!(show(&code(6, &["65"]), SpaceQuery::Spatial), "CP^3 # 5(~CP^3)");
        assert_eq!(show(&code(4, &["41"]), SpaceQuery::Chain(None)), "S^{d-1} x S^{d-2}");
        assert_eq!(show(&code(6, &["632"]), SpaceQuery::Chain(None)), "B3(6,d)");
        assert_eq!(show(&code(6, &["632"]), SpaceQuery::Planar), "2(T^3)");
        assert_eq!(show(&code(6, &["621"]), SpaceQuery::Chain(Some(3))), "(S^2)^2 x S^3");
    }

    #[test]
    fn coverage_small() {
        assert_eq!(coverage(4, SpaceQuery::Planar).unwrap(), (3, 3));
        assert_eq!(coverage(5, SpaceQuery::Spatial).unwrap(), (7, 7));
        assert_eq!(coverage(6, SpaceQuery::Chain(None)).unwrap(), (21, 21));
        assert!(matches!(coverage(8, SpaceQuery::Planar), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn m6_order() {
        let order: Vec<String> = table_order(6).unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(
            order,
            [
                "⟨⟩",
                "⟨6⟩",
                "⟨61⟩",
                "⟨62⟩",
                "⟨63⟩",
                "⟨64⟩",
                "⟨65⟩",
                "⟨621⟩",
                "⟨621,63⟩",
                "⟨621,64⟩",
                "⟨621,65⟩",
                "⟨631⟩",
                "⟨631,64⟩",
                "⟨631,65⟩",
                "⟨641⟩",
                "⟨641,65⟩",
                "⟨651⟩",
                "⟨6321⟩",
                "⟨632⟩",
                "⟨632,64⟩",
                "⟨632,65⟩"
            ]
        );
    }

    #[test]
    fn not_a_chamber() {
        let bogus = code(6, &["6321", "65"]);
        assert!(matches!(describe(&bogus, SpaceQuery::Planar), Err(Error::NotAChamber(_))));
        assert!(describe(&code(6, &["61"]), SpaceQuery::Chain(Some(1))).is_err());
    }
}
