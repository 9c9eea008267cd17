use super::expr::{Dim, SpaceExpr, SpaceExpr::*};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Style {
    #[default]
    Ascii,
    Unicode,
}

struct Tokens {
    times: &'static str,
    sharp: &'static str,
    union: &'static str,
    sigma: &'static str,
    empty: &'static str,
    twisted: &'static str,
}

const ASCII: Tokens =
    Tokens { times: " x ", sharp: " # ", union: " u ", sigma: "Sigma_", empty: "empty", twisted: "S2x_{S1}" };

const UNICODE: Tokens =
    Tokens { times: " × ", sharp: " ♯ ", union: " ⊔ ", sigma: "Σ_", empty: "∅", twisted: "S²×_{S¹}" };

/// `d`, `d-1`, `d-2`, `2(d-1)-1`, `4(d-1)`, or a plain number.
pub fn dim_text(n: Dim) -> String {
    let offset = |c: i64| match c {
        0 => String::new(),
        c if c > 0 => format!("+{c}"),
        c => format!("{c}"),
    };
    match n.per_d {
        0 => n.constant.to_string(),
        1 => format!("d{}", offset(n.constant - 1)),
        k => format!("{k}(d-1){}", offset(n.constant)),
    }
}

fn exponent(s: String) -> String {
    if s.chars().count() == 1 {
        s
    } else {
        format!("{{{s}}}")
    }
}

pub fn render(x: &SpaceExpr, style: Style) -> String {
    let t = match style {
        Style::Ascii => &ASCII,
        Style::Unicode => &UNICODE,
    };
    render_with(x, t)
}

fn groups(children: &[SpaceExpr]) -> Vec<(&SpaceExpr, usize)> {
    let mut out: Vec<(&SpaceExpr, usize)> = Vec::new();
    for c in children {
        match out.last_mut() {
            Some((last, n)) if *last == c => *n += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

/// A product of identical factors, rendered as `(X)^n`.
fn is_power(x: &SpaceExpr) -> bool {
    matches!(x, Product(c) if c.len() >= 2 && c.iter().all(|y| *y == c[0]))
}

/// A connected sum of identical summands, rendered as `k(X)`.
fn is_multiple(x: &SpaceExpr) -> bool {
    matches!(x, ConnSum(c) if c.len() >= 2 && c.iter().all(|y| *y == c[0]))
}

fn render_with(x: &SpaceExpr, t: &Tokens) -> String {
    let wrap = |s: String| format!("({s})");
    match x {
        Empty => t.empty.to_string(),
        p if p.is_point() => "pt".to_string(),
        Sphere(n) => format!("S^{}", exponent(dim_text(*n))),
        Torus(n) => format!("T^{}", exponent(n.to_string())),
        Surface(g) => format!("{}{}", t.sigma, exponent(g.to_string())),
        CP(n) => format!("CP^{}", exponent(n.to_string())),
        CPbar(n) => format!("~CP^{}", exponent(n.to_string())),
        TwistedS2(inner) => format!("{}({})", t.twisted, render_with(inner, t)),
        OpaqueB3 { m, d } => match d {
            Some(d) => format!("B3({m},{d})"),
            None => format!("B3({m},d)"),
        },
        Unknown(_) => "?".to_string(),
        Product(c) => groups(c)
            .into_iter()
            .map(|(y, n)| {
                if n > 1 {
                    format!("({})^{}", render_with(y, t), exponent(n.to_string()))
                } else if matches!(y, ConnSum(_) | Disjoint(_) | Product(_)) && !is_multiple(y) {
                    wrap(render_with(y, t))
                } else {
                    render_with(y, t)
                }
            })
            .collect::<Vec<_>>()
            .join(t.times),
        ConnSum(c) => groups(c)
            .into_iter()
            .map(|(y, n)| {
                if n > 1 {
                    format!("{n}({})", render_with(y, t))
                } else if matches!(y, Product(_) | ConnSum(_) | Disjoint(_)) && !is_power(y) {
                    wrap(render_with(y, t))
                } else {
                    render_with(y, t)
                }
            })
            .collect::<Vec<_>>()
            .join(t.sharp),
        Disjoint(c) => c
            .iter()
            .map(|y| {
                if matches!(y, Product(_) | ConnSum(_) | Disjoint(_)) && !is_power(y) && !y.is_point() {
                    wrap(render_with(y, t))
                } else {
                    render_with(y, t)
                }
            })
            .collect::<Vec<_>>()
            .join(t.union),
    }
}

/// Read back the output of [`render`] (either style). The result is not
/// normalized: `(S^2)^3` parses as a product of three spheres, `2(T^3)` as a
/// connected sum of two tori.
pub fn parse(s: &str) -> Result<SpaceExpr> {
    let ascii = s
        .replace(UNICODE.twisted, ASCII.twisted)
        .replace(UNICODE.times, ASCII.times)
        .replace(UNICODE.sharp, ASCII.sharp)
        .replace(UNICODE.union, ASCII.union)
        .replace(UNICODE.sigma, ASCII.sigma)
        .replace(UNICODE.empty, ASCII.empty);
    let mut p = Parser { s: ascii.as_bytes(), pos: 0 };
    let x = p.disjoint()?;
    if p.pos != p.s.len() {
        return Err(p.error("trailing input"));
    }
    Ok(x)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let rest = String::from_utf8_lossy(&self.s[self.pos.min(self.s.len())..]);
        Error::Parse(format!("{what} at byte {} (remaining {rest:?})", self.pos))
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {tok:?}")))
        }
    }

    fn number(&mut self) -> Option<u32> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn list(&mut self, sep: &str, next: fn(&mut Self) -> Result<SpaceExpr>) -> Result<Vec<SpaceExpr>> {
        let mut items = vec![next(self)?];
        while self.eat(sep) {
            items.push(next(self)?);
        }
        Ok(items)
    }

    fn disjoint(&mut self) -> Result<SpaceExpr> {
        let mut items = self.list(ASCII.union, Self::conn_sum)?;
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Disjoint(items) })
    }

    fn conn_sum(&mut self) -> Result<SpaceExpr> {
        let mut items = self.list(ASCII.sharp, Self::product)?;
        Ok(if items.len() == 1 { items.pop().unwrap() } else { ConnSum(items) })
    }

    fn product(&mut self) -> Result<SpaceExpr> {
        let mut items = self.list(ASCII.times, Self::factor)?;
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Product(items) })
    }

    fn factor(&mut self) -> Result<SpaceExpr> {
        let start = self.pos;
        if let Some(k) = self.number() {
            self.expect("(")?;
            let inner = self.disjoint()?;
            self.expect(")")?;
            if k < 2 {
                self.pos = start;
                return Err(self.error("multiplicity below 2"));
            }
            return Ok(ConnSum(vec![inner; k as usize]));
        }
        if self.eat("(") {
            let inner = self.disjoint()?;
            self.expect(")")?;
            if self.eat("^") {
                let n = self.braced_number()?;
                return Ok(Product(vec![inner; n as usize]));
            }
            return Ok(inner);
        }
        self.atom()
    }

    fn exponent_text(&mut self) -> Result<String> {
        if self.eat("{") {
            let start = self.pos;
            let mut depth = 0;
            while self.pos < self.s.len() {
                match self.s[self.pos] {
                    b'(' => depth += 1,
                    b')' => depth -= 1,
                    b'}' if depth == 0 => break,
                    _ => {}
                }
                self.pos += 1;
            }
            let text = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
            self.expect("}")?;
            Ok(text)
        } else if self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'd') {
            self.pos += 1;
            Ok((self.s[self.pos - 1] as char).to_string())
        } else {
            Err(self.error("expected exponent"))
        }
    }

    fn braced_number(&mut self) -> Result<u32> {
        let text = self.exponent_text()?;
        text.parse().map_err(|_| self.error(&format!("expected a number, got {text:?}")))
    }

    fn atom(&mut self) -> Result<SpaceExpr> {
        if self.eat(ASCII.twisted) {
            self.expect("(")?;
            let inner = self.disjoint()?;
            self.expect(")")?;
            return Ok(TwistedS2(Box::new(inner)));
        }
        if self.eat("S^") {
            let text = self.exponent_text()?;
            return parse_dim(&text).map(Sphere);
        }
        if self.eat("T^") {
            return self.braced_number().map(Torus);
        }
        if self.eat(ASCII.sigma) {
            return self.braced_number().map(Surface);
        }
        if self.eat("~CP^") {
            return self.braced_number().map(CPbar);
        }
        if self.eat("CP^") {
            return self.braced_number().map(CP);
        }
        if self.eat("B3(") {
            let m = self.number().ok_or_else(|| self.error("expected m"))?;
            self.expect(",")?;
            let d = if self.eat("d") { None } else { Some(self.number().ok_or_else(|| self.error("expected d"))?) };
            self.expect(")")?;
            return Ok(OpaqueB3 { m, d });
        }
        if self.eat("?") {
            return Ok(Unknown("?".into()));
        }
        if self.eat(ASCII.empty) {
            return Ok(Empty);
        }
        if self.eat("pt") {
            return Ok(SpaceExpr::point());
        }
        Err(self.error("expected a space"))
    }
}

/// Inverse of [`dim_text`].
pub fn parse_dim(text: &str) -> Result<Dim> {
    let bad = || Error::Parse(format!("bad dimension {text:?}"));
    let signed = |s: &str| -> Result<i64> {
        if s.is_empty() {
            Ok(0)
        } else {
            s.strip_prefix('+').unwrap_or(s).parse().map_err(|_| bad())
        }
    };
    if let Ok(n) = text.parse::<i64>() {
        return Ok(Dim::num(n));
    }
    if let Some(rest) = text.strip_prefix('d') {
        return Ok(Dim::affine(1, signed(rest)? + 1));
    }
    let (k, rest) = text.split_once("(d-1)").ok_or_else(bad)?;
    let k: i64 = k.parse().map_err(|_| bad())?;
    Ok(Dim::affine(k, signed(rest)?))
}
