use super::expr::{SpaceExpr, SpaceExpr::*};

fn sphere_chi(n: i64) -> i64 {
    match n {
        n if n < 0 => 0,
        n if n % 2 == 0 => 2,
        _ => 0,
    }
}

/// Euler characteristic of the circle quotient `X/S¹` for the standard
/// free actions: `S^{2k-1}/S¹ = CP^{k-1}`, `(S¹ × (S²)^k)/S¹ = (S²)^k`.
pub fn standard_quotient_chi(inner: &SpaceExpr) -> Option<i64> {
    match inner {
        Sphere(n) => {
            let n = n.numeric()?;
            (n > 0 && n % 2 == 1).then_some((n + 1) / 2)
        }
        Product(c) => {
            let (circle, rest) = c.split_first()?;
            let ok = *circle == SpaceExpr::sphere(1) && rest.iter().all(|x| *x == SpaceExpr::sphere(2));
            ok.then(|| 1 << rest.len())
        }
        _ => None,
    }
}

/// `χ(x)` for a normalized expression with numeric dimensions; `None` for
/// symbolic dimensions, unknowns, and twisted products whose quotient is
/// not recognised.
pub fn euler_char(x: &SpaceExpr) -> Option<i64> {
    euler_char_with(x, &standard_quotient_chi)
}

/// As [`euler_char`], with `quotient(X)` supplying `χ(X/S¹)` for
/// `S² ×_{S¹} X`, an `S²`-bundle over `X/S¹`.
pub fn euler_char_with(x: &SpaceExpr, quotient: &dyn Fn(&SpaceExpr) -> Option<i64>) -> Option<i64> {
    match x {
        Empty => Some(0),
        Sphere(n) => n.numeric().map(sphere_chi),
        Torus(0) => Some(1),
        Torus(_) => Some(0),
        Surface(g) => Some(2 - 2 * *g as i64),
        CP(n) | CPbar(n) => Some(*n as i64 + 1),
        Product(c) => c.iter().try_fold(1, |acc, y| euler_char_with(y, quotient).map(|v| acc * v)),
        Disjoint(c) => c.iter().try_fold(0, |acc, y| euler_char_with(y, quotient).map(|v| acc + v)),
        ConnSum(c) => {
            let n = x.dim()?.numeric()?;
            let sum = c.iter().try_fold(0, |acc, y| euler_char_with(y, quotient).map(|v| acc + v))?;
            Some(sum - (c.len() as i64 - 1) * sphere_chi(n))
        }
        TwistedS2(inner) => quotient(inner).map(|q| 2 * q),
        OpaqueB3 { m, d } => {
            let (m, d) = (*m as i64, (*d)? as i64);
            // (P ∖ B) × S^{d-2} glued to S^{n-1} × D^{d-1} along S^{n-1} × S^{d-2},
            // with P = (S^{d-1})^{m-3} of dimension n
            let n = (m - 3) * (d - 1);
            let chi_p = sphere_chi(d - 1).pow((m - 3) as u32);
            let chi_boundary = sphere_chi(n - 1);
            let pierced = chi_p - 1 + chi_boundary;
            Some(pierced * sphere_chi(d - 2) + chi_boundary - chi_boundary * sphere_chi(d - 2))
        }
        Unknown(_) => None,
    }
}
