use super::expr::{Dim, SpaceExpr, SpaceExpr::*};

/// Canonical form: flattened, sorted, with the standard identifications
/// (`T^1 = S^1`, `Σ_1 = T^2`, `Σ_0 = S^2`, `CP^0 = pt`, `X # S^n = X`,
/// `Σ_g # Σ_h = Σ_{g+h}`, `S^0 × X = X ⊔ X`, ...).
pub fn normalize(x: &SpaceExpr) -> SpaceExpr {
    match x {
        Empty | Unknown(_) | CP(1..) | CPbar(1..) => x.clone(),
        Sphere(n) => match n.numeric() {
            Some(k) if k < 0 => Empty,
            _ => x.clone(),
        },
        Torus(0) | CP(0) | CPbar(0) => SpaceExpr::point(),
        Torus(1) => SpaceExpr::sphere(1),
        Torus(_) => x.clone(),
        Surface(0) => SpaceExpr::sphere(2),
        Surface(1) => Torus(2),
        Surface(_) => x.clone(),
        TwistedS2(inner) => match normalize(inner) {
            Empty => Empty,
            u @ Unknown(_) => u,
            inner => TwistedS2(Box::new(inner)),
        },
        OpaqueB3 { m, d: Some(2) } => {
            let t = Torus(m.saturating_sub(3));
            normalize(&ConnSum(vec![t.clone(), t]))
        }
        OpaqueB3 { .. } => x.clone(),
        Product(c) => normalize_product(c),
        ConnSum(c) => normalize_conn_sum(c),
        Disjoint(c) => normalize_disjoint(c),
    }
}

fn first_unknown(c: &[SpaceExpr]) -> Option<SpaceExpr> {
    c.iter().find(|x| x.is_unknown()).cloned()
}

fn normalize_product(children: &[SpaceExpr]) -> SpaceExpr {
    let mut flat = Vec::new();
    for c in children {
        match normalize(c) {
            Product(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    if let Some(u) = first_unknown(&flat) {
        return u;
    }
    if flat.contains(&Empty) {
        return Empty;
    }
    // distribute over the first disconnected factor
    let split = flat.iter().position(|x| match x {
        Disjoint(_) => true,
        Sphere(n) => n.numeric() == Some(0),
        _ => false,
    });
    if let Some(i) = split {
        let parts = match &flat[i] {
            Disjoint(parts) => parts.clone(),
            _ => vec![SpaceExpr::point(), SpaceExpr::point()],
        };
        let terms = parts
            .into_iter()
            .map(|p| {
                let mut f = flat.clone();
                f[i] = p;
                Product(f)
            })
            .collect();
        return normalize(&Disjoint(terms));
    }

    let mut circles = 0;
    let mut out = Vec::new();
    for x in flat {
        match x {
            Torus(n) => circles += n,
            Sphere(Dim { per_d: 0, constant: 1 }) => circles += 1,
            p if p.is_point() => {}
            other => out.push(other),
        }
    }
    if circles > 0 {
        out.push(normalize(&Torus(circles)));
    }
    out.sort();
    match out.len() {
        1 => out.pop().unwrap(),
        _ => Product(out),
    }
}

fn normalize_conn_sum(children: &[SpaceExpr]) -> SpaceExpr {
    let mut flat = Vec::new();
    for c in children {
        match normalize(c) {
            ConnSum(inner) => flat.extend(inner),
            Empty => {}
            CP(1) | CPbar(1) => flat.push(SpaceExpr::sphere(2)),
            other => flat.push(other),
        }
    }
    if let Some(u) = first_unknown(&flat) {
        return u;
    }
    if flat.is_empty() {
        return Empty;
    }
    let dim2 = flat[0].dim().and_then(Dim::numeric) == Some(2);
    if dim2 {
        let genus = |x: &SpaceExpr| match x {
            Torus(2) => Some(1),
            Surface(g) => Some(*g),
            _ => None,
        };
        let surfaces: Vec<u32> = flat.iter().filter_map(genus).collect();
        if surfaces.len() >= 2 {
            flat.retain(|x| genus(x).is_none());
            flat.push(Surface(surfaces.iter().sum()));
        }
    }
    if flat.iter().all(|x| matches!(x, Sphere(_))) {
        return flat.swap_remove(0);
    }
    flat.retain(|x| !matches!(x, Sphere(_)));
    flat.sort();
    match flat.len() {
        1 => flat.pop().unwrap(),
        _ => ConnSum(flat),
    }
}

fn normalize_disjoint(children: &[SpaceExpr]) -> SpaceExpr {
    let mut flat = Vec::new();
    for c in children {
        match normalize(c) {
            Disjoint(inner) => flat.extend(inner),
            Sphere(Dim { per_d: 0, constant: 0 }) => {
                flat.push(SpaceExpr::point());
                flat.push(SpaceExpr::point());
            }
            Empty => {}
            other => flat.push(other),
        }
    }
    if let Some(u) = first_unknown(&flat) {
        return u;
    }
    flat.sort();
    match flat.len() {
        0 => Empty,
        1 => flat.pop().unwrap(),
        2 if flat.iter().all(SpaceExpr::is_point) => SpaceExpr::sphere(0),
        _ => Disjoint(flat),
    }
}

/// Substitute `d` and normalize.
pub fn instantiate(x: &SpaceExpr, d: u32) -> SpaceExpr {
    normalize(&x.substitute(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> SpaceExpr {
        SpaceExpr::sphere(n)
    }

    #[test]
    fn products_of_circles_are_tori() {
        assert_eq!(normalize(&Product(vec![s(1), s(1), s(1)])), Torus(3));
        assert_eq!(normalize(&Product(vec![s(1), Torus(2)])), Torus(3));
        assert_eq!(normalize(&Product(vec![s(2), s(1)])), Product(vec![s(1), s(2)]));
        assert_eq!(normalize(&Torus(1)), s(1));
    }

    #[test]
    fn zero_sphere_splits_products() {
        let x = normalize(&Product(vec![Torus(3), s(0)]));
        assert_eq!(x, Disjoint(vec![Torus(3), Torus(3)]));
        assert_eq!(normalize(&Product(vec![s(0)])), s(0));
    }

    #[test]
    fn surfaces_merge() {
        let x = normalize(&ConnSum(vec![Torus(2), Torus(2), Surface(3)]));
        assert_eq!(x, Surface(5));
        assert_eq!(normalize(&ConnSum(vec![Product(vec![s(1), s(1)]), s(2)])), Torus(2));
        assert_eq!(normalize(&Surface(1)), Torus(2));
    }

    #[test]
    fn spheres_absorbed() {
        let sd = Sphere(Dim::affine(4, -1));
        let r = Product(vec![Sphere(Dim::affine(1, 0)), Sphere(Dim::affine(3, -1))]);
        assert_eq!(normalize(&ConnSum(vec![sd.clone(), r.clone()])), r);
        assert_eq!(normalize(&ConnSum(vec![sd.clone(), sd.clone()])), sd);
        assert_eq!(normalize(&ConnSum(vec![CP(1), CPbar(1)])), s(2));
        assert_eq!(normalize(&CP(1)), CP(1));
    }

    #[test]
    fn opaque_at_two() {
        let x = instantiate(&OpaqueB3 { m: 6, d: None }, 2);
        assert_eq!(x, ConnSum(vec![Torus(3), Torus(3)]));
        assert_eq!(instantiate(&OpaqueB3 { m: 5, d: None }, 2), Surface(2));
    }
}
