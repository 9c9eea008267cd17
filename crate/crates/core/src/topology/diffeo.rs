//! Registered diffeomorphisms between differently derived descriptions.

use super::expr::{SpaceExpr, SpaceExpr::*};
use super::normalize::normalize;

fn s(n: i64) -> SpaceExpr {
    SpaceExpr::sphere(n)
}

/// Whole-expression rewrites:
/// `S² ×_{S¹} S^{2k-1} ≈ CP^k # ~CP^k` and
/// `S² ×_{S¹} (S¹ × (S²)^k) ≈ (S²)^{k+1}`.
fn rewrite_whole(x: &SpaceExpr) -> Vec<SpaceExpr> {
    let mut out = Vec::new();
    match x {
        TwistedS2(inner) => {
            if let Some(n) = inner.dim().and_then(|d| d.numeric()) {
                if **inner == s(n) && n % 2 == 1 {
                    let k = ((n + 1) / 2) as u32;
                    out.push(ConnSum(vec![CP(k), CPbar(k)]));
                }
            }
            let spheres = match &**inner {
                Sphere(_) if **inner == s(1) => Some(0),
                Product(c) if c.first() == Some(&s(1)) && c[1..].iter().all(|y| *y == s(2)) => Some(c.len() - 1),
                _ => None,
            };
            if let Some(k) = spheres {
                out.push(Product(vec![s(2); k + 1]));
            }
        }
        ConnSum(c) if c.len() == 2 => {
            if let (CP(a), CPbar(b)) = (&c[0], &c[1]) {
                if a == b {
                    out.push(TwistedS2(Box::new(s(2 * *a as i64 - 1))));
                }
            }
        }
        Product(c) if c.len() >= 2 && c.iter().all(|y| *y == s(2)) => {
            let mut inner = vec![s(1)];
            inner.extend(std::iter::repeat_n(s(2), c.len() - 1));
            out.push(TwistedS2(Box::new(Product(inner))));
        }
        Sphere(_) if *x == s(2) => out.push(TwistedS2(Box::new(s(1)))),
        _ => {}
    }
    out
}

/// Summand rewrites: `(S² × S²) # ~CP² ≈ CP² # 2 ~CP²`.
fn rewrite_summands(c: &[SpaceExpr]) -> Vec<Vec<SpaceExpr>> {
    let mut out = Vec::new();
    let s2xs2 = Product(vec![s(2), s(2)]);
    let pos = |y: &SpaceExpr| c.iter().position(|z| z == y);
    if let (Some(i), Some(_)) = (pos(&s2xs2), pos(&CPbar(2))) {
        let mut v = c.to_vec();
        v[i] = CP(2);
        v.push(CPbar(2));
        out.push(v);
    }
    if let Some(i) = pos(&CP(2)) {
        if c.iter().filter(|y| **y == CPbar(2)).count() >= 2 {
            let mut v = c.to_vec();
            v[i] = s2xs2;
            let j = v.iter().position(|y| *y == CPbar(2)).unwrap();
            v.remove(j);
            out.push(v);
        }
    }
    out
}

/// `x` together with every form reachable by one registered rewrite, at the
/// top level or on a single connected summand, all normalized.
pub fn known_diffeos(x: &SpaceExpr) -> Vec<SpaceExpr> {
    let x = normalize(x);
    let mut forms = vec![x.clone()];
    let mut push = |y: SpaceExpr| {
        let y = normalize(&y);
        if !forms.contains(&y) {
            forms.push(y);
        }
    };
    for y in rewrite_whole(&x) {
        push(y);
    }
    if let ConnSum(c) = &x {
        for v in rewrite_summands(c) {
            push(ConnSum(v));
        }
        for (i, summand) in c.iter().enumerate() {
            for y in rewrite_whole(summand) {
                let mut v = c.clone();
                v[i] = y;
                push(ConnSum(v));
            }
        }
    }
    forms
}

/// Equal up to the registered diffeomorphisms.
pub fn equivalent(a: &SpaceExpr, b: &SpaceExpr) -> bool {
    let fa = known_diffeos(a);
    known_diffeos(b).iter().any(|y| fa.contains(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let x = TwistedS2(Box::new(s(3)));
        assert!(known_diffeos(&x).contains(&ConnSum(vec![CP(2), CPbar(2)])));
        let x = normalize(&ConnSum(vec![Product(vec![s(2), s(2)]), CPbar(2)]));
        assert!(known_diffeos(&x).contains(&ConnSum(vec![CP(2), CPbar(2), CPbar(2)])));
        assert_eq!(known_diffeos(&s(4)), vec![s(4)]);
    }

    #[test]
    fn both_directions() {
        let hirzebruch = ConnSum(vec![CP(3), CPbar(3)]);
        assert!(equivalent(&hirzebruch, &TwistedS2(Box::new(s(5)))));
        assert!(equivalent(&TwistedS2(Box::new(s(5))), &hirzebruch));
        let a = normalize(&ConnSum(vec![CP(2), CPbar(2), CPbar(2), CPbar(2)]));
        let b = normalize(&ConnSum(vec![Product(vec![s(2), s(2)]), CPbar(2), CPbar(2)]));
        assert!(equivalent(&a, &b) && equivalent(&b, &a));
        let twisted = TwistedS2(Box::new(normalize(&Product(vec![s(1), s(2), s(2)]))));
        assert!(equivalent(&twisted, &Product(vec![s(2); 3])));
        assert!(equivalent(&TwistedS2(Box::new(s(1))), &s(2)));
        assert!(!equivalent(&CP(3), &ConnSum(vec![CP(3), CPbar(3)])));
    }
}
