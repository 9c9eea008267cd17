use std::cmp::Ordering;
use std::fmt;

use super::length::{compare_sides, EpsilonRule, LengthVector, Side};
use super::subset::{SubsetMask, MAX_EDGES};
use crate::error::{Error, Result};

/// The hook-maximal short subsets containing `m`; identifies a chamber of
/// the sorted cone. Genes are kept in canonical order (see [`SubsetMask`]'s
/// `Ord`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneticCode {
    m: usize,
    genes: Vec<SubsetMask>,
}

impl GeneticCode {
    /// The empty chamber `⟨⟩`: `a_m` longer than everything else.
    pub fn empty(m: usize) -> Self {
        Self { m, genes: Vec::new() }
    }

    pub fn from_genes(m: usize, genes: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        if !(1..=MAX_EDGES).contains(&m) {
            return Err(Error::InvalidCode(format!("m = {m} out of range")));
        }
        let mut genes: Vec<SubsetMask> = genes.into_iter().collect();
        for g in &genes {
            if g.ambient() != m {
                return Err(Error::InvalidCode(format!("gene {g:?} is not a subset of 1..={m}")));
            }
            if !g.contains(m) {
                return Err(Error::InvalidCode(format!("gene {g} does not contain {m}")));
            }
        }
        genes.sort();
        genes.dedup();
        for (i, a) in genes.iter().enumerate() {
            for (j, b) in genes.iter().enumerate() {
                if i != j && a.hook_leq(*b) {
                    return Err(Error::InvalidCode(format!("gene {a} is hook-below gene {b}")));
                }
            }
        }
        Ok(Self { m, genes })
    }

    /// Shorthand for tests and examples: `GeneticCode::from_digits(6, &["621", "64"])`.
    pub fn from_digits(m: usize, genes: &[&str]) -> Result<Self> {
        let genes = genes.iter().map(|g| SubsetMask::parse(m, g)).collect::<Result<Vec<_>>>()?;
        Self::from_genes(m, genes)
    }

    /// Hook-maximal members of a down-closed family of subsets containing `m`.
    pub fn from_down_set(set: &DownSet) -> Self {
        let m = set.m;
        let genes = set.members().filter(|&j| upper_covers(j).all(|c| !set.contains(c))).collect::<Vec<_>>();
        let mut genes = genes;
        genes.sort();
        Self { m, genes }
    }

    /// The chamber `⟨{m}⟩`.
    pub fn single(m: usize) -> Self {
        Self { m, genes: vec![SubsetMask::empty(m).with(m)] }
    }

    /// `⟨{m, p}⟩`, read as `⟨m⟩` when `p = 0`.
    pub fn pair(m: usize, p: usize) -> Result<Self> {
        if p == 0 {
            return Ok(Self::single(m));
        }
        Self::from_genes(m, [SubsetMask::new(m, &[m, p])?])
    }

    /// `⟨{m, m-3, m-4, ..., 1}⟩`, the chamber with a disconnected planar space.
    pub fn exceptional(m: usize) -> Self {
        let elements: Vec<usize> = std::iter::once(m).chain(1..=m.saturating_sub(3)).collect();
        Self { m, genes: vec![SubsetMask::new(m, &elements).expect("valid subset")] }
    }

    /// `⟨{m, m-3, m-4, ..., 2}⟩` (meaningful for `m >= 5`).
    pub fn exceptional_neighbour(m: usize) -> Self {
        let elements: Vec<usize> = std::iter::once(m).chain(2..=m.saturating_sub(3)).collect();
        Self { m, genes: vec![SubsetMask::new(m, &elements).expect("valid subset")] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn genes(&self) -> &[SubsetMask] {
        &self.genes
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    /// Whether `j` (which must contain `m`) is hook-below some gene.
    pub fn covers(&self, j: SubsetMask) -> bool {
        self.genes.iter().any(|g| j.hook_leq(*g))
    }

    pub fn down_set(&self) -> DownSet {
        let mut set = DownSet::new(self.m);
        for j in SubsetMask::containing_top(self.m) {
            if self.covers(j) {
                set.insert(j);
            }
        }
        set
    }

    /// `S_m(α)`: every subset containing `m` that is hook-below a gene.
    pub fn down_closure(&self) -> Vec<SubsetMask> {
        self.down_set().members().collect()
    }

    /// `S(α)`: `S_m(α)` together with every `J ∌ m` whose complement is not
    /// in `S_m(α)`.
    pub fn full_short_family(&self) -> Vec<SubsetMask> {
        let set = self.down_set();
        let top = self.m;
        let mut out: Vec<SubsetMask> = (0u32..1 << self.m)
            .map(|b| SubsetMask::from_bits_unchecked(top, b))
            .filter(|j| if j.contains(top) { set.contains(*j) } else { !set.contains(j.complement()) })
            .collect();
        out.sort_by_key(|j| j.bits());
        out
    }

    /// Hook-minimal subsets containing `m` outside the down-closure.
    pub fn minimal_nonmembers(&self) -> Vec<SubsetMask> {
        let set = self.down_set();
        SubsetMask::containing_top(self.m)
            .filter(|&j| !set.contains(j) && lower_covers(j).all(|c| set.contains(c)))
            .collect()
    }

    /// The code of `α⁺`, the chamber obtained by prepending a tiny edge.
    pub fn tiny_edge(&self) -> Self {
        let mut genes: Vec<SubsetMask> = self.genes.iter().map(|g| g.tiny_lift()).collect();
        genes.sort();
        Self { m: self.m + 1, genes }
    }

    /// Left inverse of [`tiny_edge`](Self::tiny_edge).
    pub fn tiny_edge_reduce(&self) -> Option<Self> {
        if self.m <= 3 {
            return None;
        }
        let mut genes = self.genes.iter().map(|g| g.tiny_reduce()).collect::<Option<Vec<_>>>()?;
        genes.sort();
        Some(Self { m: self.m - 1, genes })
    }

    /// Parse `⟨621,64⟩`, `<621,64>` or `621,64`. Genes for `m > 9` use `[a,b,...]`.
    pub fn parse(m: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('⟨')
            .and_then(|t| t.strip_suffix('⟩'))
            .or_else(|| s.strip_prefix('<').and_then(|t| t.strip_suffix('>')))
            .unwrap_or(s)
            .trim();
        if inner.is_empty() {
            return Ok(Self::empty(m));
        }
        let genes = split_genes(inner).into_iter().map(|g| SubsetMask::parse(m, g)).collect::<Result<Vec<_>>>()?;
        Self::from_genes(m, genes)
    }
}

fn split_genes(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// Immediate successors of `j` in the hook order among subsets containing
/// `m`: raise one element by one, or adjoin `1`.
pub(crate) fn upper_covers(j: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let m = j.ambient();
    let add_one = (!j.contains(1)).then(|| j.with(1));
    let raises = (1..m).filter(move |&x| j.contains(x) && !j.contains(x + 1)).map(move |x| j.without(x).with(x + 1));
    add_one.into_iter().chain(raises)
}

/// Immediate predecessors of `j` among subsets containing `m`.
pub(crate) fn lower_covers(j: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let m = j.ambient();
    let drop_one = (j.contains(1) && m != 1).then(|| j.without(1));
    let lowers = (2..m).filter(move |&x| j.contains(x) && !j.contains(x - 1)).map(move |x| j.without(x).with(x - 1));
    drop_one.into_iter().chain(lowers)
}

impl Ord for GeneticCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.cmp(&other.m).then_with(|| self.genes.cmp(&other.genes))
    }
}

impl PartialOrd for GeneticCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.genes.iter().map(|g| g.to_string()).collect();
        write!(f, "⟨{}⟩", parts.join(","))
    }
}

impl fmt::Debug for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.m)
    }
}

/// A family of subsets containing `m`, stored as a bitset indexed by the
/// low `m - 1` bits.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DownSet {
    m: usize,
    words: Vec<u64>,
}

impl DownSet {
    pub fn new(m: usize) -> Self {
        let n = 1usize << (m - 1);
        Self { m, words: vec![0; n.div_ceil(64)] }
    }

    fn index(&self, j: SubsetMask) -> usize {
        debug_assert!(j.ambient() == self.m && j.contains(self.m));
        (j.bits() & !(1 << (self.m - 1))) as usize
    }

    pub fn insert(&mut self, j: SubsetMask) {
        let i = self.index(j);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, j: SubsetMask) -> bool {
        let i = self.index(j);
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn members(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        let top = 1u32 << (self.m - 1);
        let m = self.m;
        self.words.iter().enumerate().flat_map(move |(w, &word)| {
            (0..64)
                .filter(move |b| word & (1u64 << b) != 0)
                .map(move |b| SubsetMask::from_bits_unchecked(m, (w * 64 + b) as u32 | top))
        })
    }
}

/// `S_m(a)` for integer weights with tiny zeros; `None` if the vector lies on a wall.
pub(crate) fn short_top_family<T>(
    values: &[T],
    tiny: u32,
    rule: EpsilonRule,
) -> std::result::Result<DownSet, SubsetMask>
where
    T: Clone + Ord + num_traits::Zero + for<'a> std::ops::AddAssign<&'a T>,
{
    let m = values.len();
    let mut set = DownSet::new(m);
    for j in SubsetMask::containing_top(m) {
        match compare_sides(values, tiny, j.bits(), rule) {
            Some(Side::Short) => set.insert(j),
            Some(Side::Long) => {}
            None => return Err(j),
        }
    }
    Ok(set)
}

pub fn genetic_code(a: &LengthVector) -> Result<GeneticCode> {
    genetic_code_with(a, EpsilonRule::default())
}

pub fn genetic_code_with(a: &LengthVector, rule: EpsilonRule) -> Result<GeneticCode> {
    if !a.is_sorted() {
        return Err(Error::Unsorted);
    }
    let weights = a.scaled_integers();
    let set = short_top_family(&weights, a.tiny_mask(), rule).map_err(Error::Nongeneric)?;
    Ok(GeneticCode::from_down_set(&set))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(m: usize, g: &[&str]) -> GeneticCode {
        GeneticCode::from_digits(m, g).unwrap()
    }

    fn lv(s: &str) -> LengthVector {
        s.parse().unwrap()
    }

    #[test]
    fn genetic_code_examples() {
        assert_eq!(genetic_code(&lv("1,1,1,2")).unwrap(), code(4, &["4"]));
        assert_eq!(genetic_code(&lv("1,1,2,2,3,4")).unwrap(), code(6, &["621", "64"]));
        assert_eq!(genetic_code(&lv("1,1,1,1,3")).unwrap(), code(5, &["5"]));
        assert_eq!(genetic_code(&lv("0,1,1,1")).unwrap(), code(4, &["41"]));
        assert_eq!(genetic_code(&lv("2,1,1,1")), Err(Error::Unsorted));
        assert!(matches!(genetic_code(&lv("1,1,1,1")), Err(Error::Nongeneric(_))));
    }

    #[test]
    fn down_closure_examples() {
        let c4 = code(4, &["4"]);
        assert_eq!(c4.down_closure(), vec![SubsetMask::new(4, &[4]).unwrap()]);
        let c41 = code(4, &["41"]);
        assert_eq!(c41.down_closure(), vec![SubsetMask::new(4, &[4]).unwrap(), SubsetMask::new(4, &[4, 1]).unwrap()]);
        assert!(GeneticCode::empty(5).down_closure().is_empty());
    }

    #[test]
    fn down_closure_matches_brute_force() {
        let c = code(6, &["621", "64"]);
        let brute: Vec<SubsetMask> =
            SubsetMask::containing_top(6).filter(|j| c.genes().iter().any(|g| j.hook_leq(*g))).collect();
        assert_eq!(c.down_closure(), brute);
        assert_eq!(GeneticCode::from_down_set(&c.down_set()), c);
    }

    #[test]
    fn full_short_family_examples() {
        let c4 = code(4, &["4"]);
        let fam = c4.full_short_family();
        assert!(fam.contains(&SubsetMask::new(4, &[1, 2]).unwrap()));
        assert!(fam.contains(&SubsetMask::empty(4)));
        let c41 = code(4, &["41"]);
        assert!(!c41.full_short_family().contains(&SubsetMask::new(4, &[2, 3]).unwrap()));
    }

    #[test]
    fn covers_are_the_hook_cover_relation() {
        let m = 7;
        let all: Vec<SubsetMask> = SubsetMask::containing_top(m).collect();
        for &a in &all {
            let ups: Vec<SubsetMask> = upper_covers(a).collect();
            for &b in &all {
                let is_cover =
                    a != b && a.hook_leq(b) && !all.iter().any(|&c| c != a && c != b && a.hook_leq(c) && c.hook_leq(b));
                assert_eq!(ups.contains(&b), is_cover, "{a} -> {b}");
                let downs: Vec<SubsetMask> = lower_covers(b).collect();
                assert_eq!(downs.contains(&a), is_cover, "{b} <- {a}");
            }
        }
    }

    #[test]
    fn tiny_edge_examples() {
        assert_eq!(code(6, &["631", "65"]).tiny_edge(), code(7, &["7421", "761"]));
        assert_eq!(code(3, &["3"]).tiny_edge(), code(4, &["41"]));
        assert_eq!(GeneticCode::empty(5).tiny_edge(), GeneticCode::empty(6));
        assert_eq!(code(7, &["7421", "761"]).tiny_edge_reduce(), Some(code(6, &["631", "65"])));
        assert_eq!(code(4, &["41"]).tiny_edge_reduce(), Some(code(3, &["3"])));
        assert_eq!(code(6, &["64"]).tiny_edge_reduce(), None);
    }

    #[test]
    fn rejects_non_antichains() {
        assert!(GeneticCode::from_digits(6, &["65", "64"]).is_err());
        assert!(GeneticCode::from_digits(6, &["51"]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let c = code(6, &["64", "621"]);
        assert_eq!(c.to_string(), "⟨621,64⟩");
        assert_eq!(GeneticCode::parse(6, "⟨621,64⟩").unwrap(), c);
        assert_eq!(GeneticCode::parse(6, "<621,64>").unwrap(), c);
        assert_eq!(GeneticCode::parse(6, "⟨⟩").unwrap(), GeneticCode::empty(6));
        let big = GeneticCode::parse(10, "[10,3,1],[10,4]").unwrap();
        assert_eq!(big.to_string(), "⟨[10,3,1],[10,4]⟩");
    }

    #[test]
    fn special_chambers() {
        assert_eq!(GeneticCode::exceptional(6), code(6, &["6321"]));
        assert_eq!(GeneticCode::exceptional(4), code(4, &["41"]));
        assert_eq!(GeneticCode::exceptional(3), code(3, &["3"]));
        assert_eq!(GeneticCode::exceptional_neighbour(6), code(6, &["632"]));
        assert_eq!(GeneticCode::pair(6, 0).unwrap(), code(6, &["6"]));
    }
}
