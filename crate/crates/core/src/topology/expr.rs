use std::cmp::Ordering;

/// An affine dimension `per_d·(d-1) + constant`; numeric when `per_d = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dim {
    pub per_d: i64,
    pub constant: i64,
}

impl Dim {
    pub const fn num(n: i64) -> Self {
        Self { per_d: 0, constant: n }
    }

    pub const fn affine(per_d: i64, constant: i64) -> Self {
        Self { per_d, constant }
    }

    pub fn numeric(self) -> Option<i64> {
        (self.per_d == 0).then_some(self.constant)
    }

    pub fn at(self, d: i64) -> i64 {
        self.per_d * (d - 1) + self.constant
    }

    pub fn is_symbolic(self) -> bool {
        self.per_d != 0
    }
}

impl std::ops::Add for Dim {
    type Output = Dim;
    fn add(self, o: Dim) -> Dim {
        Dim::affine(self.per_d + o.per_d, self.constant + o.constant)
    }
}

/// A manifold described symbolically.
///
/// `Product(vec![])` is a point. `CPbar` is `CP` with reversed orientation.
/// `TwistedS2(X)` is `S² ×_{S¹} X` for a free circle action on `X`.
/// `OpaqueB3` is the chain space of `⟨{m,m-3,...,2}⟩`, left unsimplified;
/// `d = None` keeps the ambient dimension symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceExpr {
    Empty,
    Sphere(Dim),
    Torus(u32),
    Surface(u32),
    CP(u32),
    CPbar(u32),
    Product(Vec<SpaceExpr>),
    ConnSum(Vec<SpaceExpr>),
    Disjoint(Vec<SpaceExpr>),
    TwistedS2(Box<SpaceExpr>),
    OpaqueB3 { m: u32, d: Option<u32> },
    Unknown(String),
}

use SpaceExpr::*;

impl SpaceExpr {
    pub fn point() -> Self {
        Product(Vec::new())
    }

    pub fn sphere(n: i64) -> Self {
        Sphere(Dim::num(n))
    }

    pub fn is_point(&self) -> bool {
        matches!(self, Product(c) if c.is_empty())
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Unknown(_))
    }

    /// `None` for `Empty` and `Unknown`.
    pub fn dim(&self) -> Option<Dim> {
        match self {
            Empty | Unknown(_) => None,
            Sphere(n) => Some(*n),
            Torus(n) => Some(Dim::num(*n as i64)),
            Surface(_) => Some(Dim::num(2)),
            CP(n) | CPbar(n) => Some(Dim::num(2 * *n as i64)),
            Product(c) => c.iter().try_fold(Dim::num(0), |acc, x| x.dim().map(|d| acc + d)),
            ConnSum(c) | Disjoint(c) => c.first().and_then(SpaceExpr::dim),
            TwistedS2(x) => x.dim().map(|d| d + Dim::num(1)),
            OpaqueB3 { m, d } => {
                let dim = Dim::affine(*m as i64 - 2, -1);
                Some(match d {
                    Some(d) => Dim::num(dim.at(*d as i64)),
                    None => dim,
                })
            }
        }
    }

    pub fn contains_opaque(&self) -> bool {
        match self {
            OpaqueB3 { .. } => true,
            Product(c) | ConnSum(c) | Disjoint(c) => c.iter().any(SpaceExpr::contains_opaque),
            TwistedS2(x) => x.contains_opaque(),
            _ => false,
        }
    }

    pub fn contains_unknown(&self) -> bool {
        match self {
            Unknown(_) => true,
            Product(c) | ConnSum(c) | Disjoint(c) => c.iter().any(SpaceExpr::contains_unknown),
            TwistedS2(x) => x.contains_unknown(),
            _ => false,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        match self {
            Sphere(n) => n.is_symbolic(),
            OpaqueB3 { d, .. } => d.is_none(),
            Product(c) | ConnSum(c) | Disjoint(c) => c.iter().any(SpaceExpr::is_symbolic),
            TwistedS2(x) => x.is_symbolic(),
            _ => false,
        }
    }

    /// Substitute a numeric `d` (not normalized).
    pub fn substitute(&self, d: u32) -> SpaceExpr {
        match self {
            Sphere(n) => Sphere(Dim::num(n.at(d as i64))),
            OpaqueB3 { m, d: None } => OpaqueB3 { m: *m, d: Some(d) },
            Product(c) => Product(c.iter().map(|x| x.substitute(d)).collect()),
            ConnSum(c) => ConnSum(c.iter().map(|x| x.substitute(d)).collect()),
            Disjoint(c) => Disjoint(c.iter().map(|x| x.substitute(d)).collect()),
            TwistedS2(x) => TwistedS2(Box::new(x.substitute(d))),
            other => other.clone(),
        }
    }

    /// Number of atoms; a product or sum is as heavy as its parts.
    pub(crate) fn leaf_count(&self) -> usize {
        match self {
            Product(c) | ConnSum(c) | Disjoint(c) => c.iter().map(SpaceExpr::leaf_count).sum(),
            TwistedS2(x) => x.leaf_count(),
            _ => 1,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Surface(_) => 0,
            Torus(_) => 1,
            CP(_) => 2,
            TwistedS2(_) => 3,
            OpaqueB3 { .. } => 4,
            Product(_) => 5,
            CPbar(_) => 6,
            Sphere(_) => 7,
            ConnSum(_) => 8,
            Disjoint(_) => 9,
            Unknown(_) => 10,
            Empty => 11,
        }
    }
}

/// Canonical order of factors and summands: surfaces and tori first, spheres
/// by increasing dimension, heavier products before lighter ones.
impl Ord for SpaceExpr {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank()).then_with(|| match (self, other) {
            (Sphere(a), Sphere(b)) => {
                (a.per_d, a.constant.abs(), a.constant).cmp(&(b.per_d, b.constant.abs(), b.constant))
            }
            (Torus(a), Torus(b)) | (Surface(a), Surface(b)) => b.cmp(a),
            (CP(a), CP(b)) | (CPbar(a), CPbar(b)) => b.cmp(a),
            (Product(a), Product(b)) | (ConnSum(a), ConnSum(b)) | (Disjoint(a), Disjoint(b)) => {
                let (la, lb) = (self.leaf_count(), other.leaf_count());
                lb.cmp(&la).then_with(|| a.cmp(b))
            }
            (TwistedS2(a), TwistedS2(b)) => a.cmp(b),
            (OpaqueB3 { m: ma, d: da }, OpaqueB3 { m: mb, d: db }) => (ma, da).cmp(&(mb, db)),
            (Unknown(a), Unknown(b)) => a.cmp(b),
            _ => Ordering::Equal,
        })
    }
}

impl PartialOrd for SpaceExpr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
