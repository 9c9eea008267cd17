use std::cmp::Ordering;
use std::fmt;
use std::ops::AddAssign;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::subset::{full_bits, SubsetMask, MAX_EDGES};
use crate::error::{Error, Result};

/// Outcome of comparing a subset sum against its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Short,
    Long,
}

/// How two sides with equal rational part and equal numbers of tiny entries
/// are told apart.
///
/// A zero entry at position `i` stands for a tiny positive `ε_i`. Sums are
/// compared on their rational parts, then on the number of tiny terms, then
/// by this rule applied to the (disjoint) sets of tiny positions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EpsilonRule {
    /// The side holding the largest differing tiny position is larger.
    #[default]
    LaterDominates,
    /// The side holding the smallest differing tiny position is larger.
    EarlierDominates,
}

/// Edge lengths `(a_1, ..., a_m)`; zero entries are symbolic tiny lengths.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LengthVector {
    entries: Vec<BigRational>,
}

impl LengthVector {
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() < 3 {
            return Err(Error::InvalidLengths(format!("need at least 3 edges, got {}", entries.len())));
        }
        if entries.len() > MAX_EDGES {
            return Err(Error::InvalidLengths(format!("at most {MAX_EDGES} edges supported, got {}", entries.len())));
        }
        if let Some(neg) = entries.iter().find(|x| x.is_negative()) {
            return Err(Error::InvalidLengths(format!("negative length {neg}")));
        }
        Ok(Self { entries })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// Nondecreasing, ties allowed; zeros (tiny entries) first.
    pub fn is_sorted(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] <= w[1])
    }

    /// Sorted copy, plus whether sorting changed the order.
    pub fn sorted(&self) -> (Self, bool) {
        let mut entries = self.entries.clone();
        entries.sort();
        let moved = entries != self.entries;
        (Self { entries }, moved)
    }

    pub fn scaled(&self, c: &BigRational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::Domain("scale factor must be positive".into()));
        }
        Ok(Self { entries: self.entries.iter().map(|x| x * c).collect() })
    }

    /// Prepend a tiny entry (a zero).
    pub fn with_tiny_edge(&self) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.m() + 1);
        entries.push(BigRational::zero());
        entries.extend(self.entries.iter().cloned());
        Self::new(entries)
    }

    pub fn tiny_mask(&self) -> u32 {
        self.entries.iter().enumerate().filter(|(_, x)| x.is_zero()).fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// Integer entries obtained by clearing denominators (positive scaling).
    pub fn scaled_integers(&self) -> Vec<BigInt> {
        let lcm = self.entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        self.entries.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect()
    }

    /// The integer entries when every entry is integral.
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.entries.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    pub fn compare_subset_sums(&self, subset: SubsetMask) -> Result<Side> {
        self.compare_subset_sums_with(subset, EpsilonRule::default())
    }

    pub fn compare_subset_sums_with(&self, subset: SubsetMask, rule: EpsilonRule) -> Result<Side> {
        if subset.ambient() != self.m() {
            return Err(Error::InvalidSubset(format!("subset {subset:?} is not a subset of 1..={}", self.m())));
        }
        compare_sides(&self.entries, self.tiny_mask(), subset.bits(), rule).ok_or(Error::Nongeneric(subset))
    }

    pub fn is_generic(&self) -> bool {
        self.first_wall(EpsilonRule::default()).is_none()
    }

    /// Some wall `H_J` the vector lies on, with `m ∈ J`, if any.
    pub fn first_wall(&self, rule: EpsilonRule) -> Option<SubsetMask> {
        let weights = self.scaled_integers();
        let tiny = self.tiny_mask();
        SubsetMask::containing_top(self.m()).find(|j| compare_sides(&weights, tiny, j.bits(), rule).is_none())
    }
}

/// Compare the `subset` side against its complement. `None` means the two
/// sums coincide (the vector sits on the wall).
pub(crate) fn compare_sides<T>(values: &[T], tiny: u32, subset: u32, rule: EpsilonRule) -> Option<Side>
where
    T: Clone + Ord + Zero + for<'a> AddAssign<&'a T>,
{
    let m = values.len();
    let comp = !subset & full_bits(m);
    let mut inside = T::zero();
    let mut outside = T::zero();
    for (i, v) in values.iter().enumerate() {
        if subset & (1 << i) != 0 {
            inside += v;
        } else {
            outside += v;
        }
    }
    let ord = inside.cmp(&outside).then_with(|| {
        let ti = subset & tiny;
        let to = comp & tiny;
        ti.count_ones().cmp(&to.count_ones()).then_with(|| {
            let diff = ti ^ to;
            if diff == 0 {
                return Ordering::Equal;
            }
            let pivot = match rule {
                EpsilonRule::LaterDominates => 1u32 << (31 - diff.leading_zeros()),
                EpsilonRule::EarlierDominates => diff & diff.wrapping_neg(),
            };
            if ti & pivot != 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        })
    });
    match ord {
        Ordering::Less => Some(Side::Short),
        Ordering::Greater => Some(Side::Long),
        Ordering::Equal => None,
    }
}

impl FromStr for LengthVector {
    type Err = Error;

    /// Comma-separated rationals, `p/q` or integers.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                BigRational::from_str(t).map_err(|e| Error::Parse(format!("bad length {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LengthVector{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(s: &str) -> LengthVector {
        s.parse().unwrap()
    }

    fn sub(m: usize, el: &[usize]) -> SubsetMask {
        SubsetMask::new(m, el).unwrap()
    }

    #[test]
    fn subset_sum_examples() {
        assert_eq!(lv("1,1,1,2").compare_subset_sums(sub(4, &[4])), Ok(Side::Short));
        assert_eq!(lv("1,1,1,1").compare_subset_sums(sub(4, &[3, 4])), Err(Error::Nongeneric(sub(4, &[3, 4]))));
        assert_eq!(lv("0,1,1,1").compare_subset_sums(sub(4, &[4, 1])), Ok(Side::Short));
    }

    #[test]
    fn genericity_examples() {
        assert!(lv("1,1,1,2").is_generic());
        assert!(!lv("1,1,1,1").is_generic());
        assert!(lv("1,1,2,2,3,4").is_generic());
        assert!(lv("0,0,0,1,1,1").is_generic());
    }

    #[test]
    fn epsilon_tie_breaks() {
        // rational parts 1 vs 1, one tiny each: {1,3} against {2,4}
        let a = lv("0,0,1,1");
        let j = sub(4, &[1, 3]);
        assert_eq!(a.compare_subset_sums_with(j, EpsilonRule::LaterDominates), Ok(Side::Short));
        assert_eq!(a.compare_subset_sums_with(j, EpsilonRule::EarlierDominates), Ok(Side::Long));
        // fewer tiny terms is smaller
        let b = lv("0,0,1,2");
        assert_eq!(b.compare_subset_sums(sub(4, &[4])), Ok(Side::Long));
        assert_eq!(b.compare_subset_sums(sub(4, &[3, 1, 2])), Ok(Side::Short));
    }

    #[test]
    fn rationals_parse_and_scale() {
        let a = lv("1/2, 1/3, 1");
        assert_eq!(a.scaled_integers(), vec![3.into(), 2.into(), 6.into()]);
        assert!(!a.is_sorted());
        let (s, moved) = a.sorted();
        assert!(moved && s.is_sorted());
        assert!("1,2".parse::<LengthVector>().is_err());
        assert!("1,-2,3".parse::<LengthVector>().is_err());
        assert!("1,x,3".parse::<LengthVector>().is_err());
    }
}
