//! The `polyspace` command surface: classify, enumerate, table, verify.
//!
//! Each command returns its output and exit code instead of printing, so the
//! binary stays a thin argument parser and the commands are testable.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use crate::chambers::{self, enumerate_chambers_with, join_entries, Chamber, ENUMERATION_BOUND, KNOWN_CHAMBER_COUNTS};
use crate::combinatorics::{genetic_code, GeneticCode, LengthVector};
use crate::error::{Error, Result};
use crate::morse::{connectivity, euler_boundary_check, morse_inventory};
use crate::topology::{
    self, coverage_with, path_independence, render, sum_euler_checks, SpaceQuery, Style, COVERAGE_BOUND,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NONGENERIC: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
    Tsv,
}

/// Which description to print.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Chain,
    Planar,
    Spatial,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, err: impl std::fmt::Display) -> Self {
        Self { stdout: String::new(), stderr: format!("error: {err}\n"), code }
    }
}

fn json_text(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn query(d: Option<u32>) -> SpaceQuery {
    SpaceQuery::Chain(d)
}

fn d_label(d: Option<u32>) -> String {
    d.map_or("d".to_string(), |d| d.to_string())
}

/// Chambers above this `m` are not described unless explicitly requested.
fn describable(m: usize, allow_large: bool) -> bool {
    m <= COVERAGE_BOUND || (allow_large && m <= ENUMERATION_BOUND)
}

pub fn classify(lengths: &str, d: Option<u32>, target: Option<Target>, format: Format, allow_large: bool) -> Output {
    let input: LengthVector = match lengths.parse() {
        Ok(a) => a,
        Err(e) => return Output::fail(EXIT_USAGE, e),
    };
    if let Some(d) = d {
        if d < 2 {
            return Output::fail(EXIT_USAGE, Error::Domain(format!("d = {d} < 2")));
        }
    }
    let (a, reordered) = input.sorted();
    let mut stderr = String::new();
    if reordered {
        stderr.push_str(&format!(
            "warning: lengths reordered to {a}; the chamber is that of the sorted vector (the longest edge becomes a_m)\n"
        ));
    }
    let code = match genetic_code(&a) {
        Ok(c) => c,
        Err(Error::Nongeneric(j)) => {
            let msg = match format {
                Format::Json => json_text(&json!({ "lengths": a.to_string(), "generic": false, "wall": j })),
                _ => format!("lengths: {a}\ngeneric: no\nwall: H_{j}\n"),
            };
            stderr.push_str(&format!("error: nongeneric length vector, lies on wall H_{j}\n"));
            return Output { stdout: msg, stderr, code: EXIT_NONGENERIC };
        }
        Err(e) => return Output::fail(EXIT_USAGE, e),
    };
    let m = a.m();
    let a_min = match chambers::a_min(&code) {
        Ok(v) => v,
        Err(e) => return Output::fail(EXIT_USAGE, e),
    };
    let morse_d = d.unwrap_or(2) as usize;
    let inventory = morse_inventory(&code, morse_d).expect("d >= 2");
    let conn = connectivity(&code, morse_d).map(|c| c.to_string()).unwrap_or_else(|_| "empty".into());

    let mut descriptions: BTreeMap<&str, String> = BTreeMap::new();
    if describable(m, allow_large) {
        let wanted = [
            (Target::Chain, "chain", query(d)),
            (Target::Planar, "planar", SpaceQuery::Planar),
            (Target::Spatial, "spatial", SpaceQuery::Spatial),
        ];
        for (t, name, q) in wanted {
            if target.is_none_or(|x| x == t) {
                match topology::describe(&code, q) {
                    Ok(x) => descriptions.insert(name, render(&x, Style::Ascii)),
                    Err(e) => return Output::fail(EXIT_USAGE, e),
                };
            }
        }
    } else {
        stderr.push_str(&format!("note: descriptions need m <= {COVERAGE_BOUND} (or --unsafe-large-m)\n"));
    }

    let stdout = match format {
        Format::Json => json_text(&json!({
            "lengths": a.to_string(),
            "reordered": reordered,
            "generic": true,
            "code": code.to_string(),
            "aMin": join_entries(&a_min),
            "morse": inventory,
            "connectivity": conn,
            "descriptions": descriptions,
        })),
        Format::Tsv => {
            let mut s = String::from("field\tvalue\n");
            s.push_str(&format!("code\t{code}\naMin\t{}\neulerV\t{}\n", join_entries(&a_min), inventory.euler_v));
            for (k, v) in &descriptions {
                s.push_str(&format!("{k}\t{v}\n"));
            }
            s
        }
        Format::Text => {
            let hist: Vec<String> = inventory.histogram.iter().map(|(i, n)| format!("{i}:{n}")).collect();
            let mut s = format!("lengths: {a}\ngeneric: yes\ncode: {code}\na_min: {a_min}\n");
            s.push_str(&format!(
                "morse (d={morse_d}): {} critical points, indices {{{}}}, euler_V = {}\n",
                inventory.points.len(),
                hist.join(", "),
                inventory.euler_v
            ));
            s.push_str(&format!("connectivity (d={morse_d}): {conn}\n"));
            for (k, v) in &descriptions {
                let label = if *k == "chain" { format!("chain (d={})", d_label(d)) } else { k.to_string() };
                s.push_str(&format!("{label}: {v}\n"));
            }
            s
        }
    };
    Output { stdout, stderr, code: EXIT_OK }
}

pub fn enumerate(m: usize, format: Format, allow_large: bool) -> Output {
    let chambers = match enumerate_chambers_with(m, allow_large) {
        Ok(c) => c,
        Err(e) => return Output::fail(EXIT_USAGE, e),
    };
    Output::ok(match format {
        Format::Json => json_text(&chambers.iter().map(Chamber::to_json).collect::<Vec<_>>()),
        Format::Tsv => {
            let mut s = String::from("code\tm\taMin\n");
            for c in &chambers {
                s.push_str(&format!("{}\t{}\t{}\n", c.code, c.m(), join_entries(&c.a_min)));
            }
            s
        }
        Format::Text => chambers.iter().map(|c| c.to_record() + "\n").collect(),
    })
}

/// One line of the chamber tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableRow {
    pub code: String,
    pub a_min: String,
    pub planar: String,
    pub spatial: String,
    pub chain: String,
}

impl TableRow {
    /// `⟨41⟩ (0,1,1,1) S^1 u S^1 / S^2 / S^{d-1} x S^{d-2}`
    pub fn to_text(&self) -> String {
        format!("{} ({}) {} / {} / {}", self.code, self.a_min, self.planar, self.spatial, self.chain)
    }
}

/// Rows in derivation order, chain column at `d` (symbolic when `None`).
pub fn table_rows(m: usize, d: Option<u32>, allow_large: bool) -> Result<Vec<TableRow>> {
    if !describable(m, allow_large) {
        return Err(Error::BoundExceeded { m, bound: COVERAGE_BOUND });
    }
    let chambers = enumerate_chambers_with(m, allow_large)?;
    let a_min: BTreeMap<GeneticCode, LengthVector> = chambers.into_iter().map(|c| (c.code, c.a_min)).collect();
    topology::table_order(m)?
        .into_iter()
        .map(|code| {
            let show = |q| topology::describe(&code, q).map(|x| render(&x, Style::Ascii));
            Ok(TableRow {
                a_min: join_entries(&a_min[&code]),
                planar: show(SpaceQuery::Planar)?,
                spatial: show(SpaceQuery::Spatial)?,
                chain: show(query(d))?,
                code: code.to_string(),
            })
        })
        .collect()
}

pub fn table_text(rows: &[TableRow]) -> String {
    rows.iter().map(|r| r.to_text() + "\n").collect()
}

/// Path of the golden table for `m` inside `dir`.
pub fn golden_path(dir: &Path, m: usize) -> std::path::PathBuf {
    dir.join(format!("table_m{m}.txt"))
}

pub fn table(m: usize, d: Option<u32>, format: Format, golden: Option<&Path>, allow_large: bool) -> Output {
    let rows = match table_rows(m, d, allow_large) {
        Ok(r) => r,
        Err(e) => return Output::fail(EXIT_USAGE, e),
    };
    let text = table_text(&rows);
    let stdout = match format {
        Format::Text => text.clone(),
        Format::Json => json_text(&rows),
        Format::Tsv => {
            let mut s = String::from("code\taMin\tN2\tN3\tCh\n");
            for r in &rows {
                s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.code, r.a_min, r.planar, r.spatial, r.chain));
            }
            s
        }
    };
    let Some(dir) = golden else {
        return Output::ok(stdout);
    };
    let path = golden_path(dir, m);
    let expected = match std::fs::read_to_string(&path) {
        Ok(s) => s,
        Err(e) => return Output::fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())),
    };
    if expected == text {
        Output { stdout, stderr: format!("golden {}: identical\n", path.display()), code: EXIT_OK }
    } else {
        let mut stderr = format!("golden {}: differs\n", path.display());
        for (i, (want, got)) in expected.lines().zip(text.lines()).enumerate() {
            if want != got {
                stderr.push_str(&format!("line {}:\n  expected {want}\n  actual   {got}\n", i + 1));
            }
        }
        let (ne, na) = (expected.lines().count(), text.lines().count());
        if ne != na {
            stderr.push_str(&format!("expected {ne} lines, got {na}\n"));
        }
        Output { stdout, stderr, code: EXIT_USAGE }
    }
}

/// Result of one verification suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn suite(name: &str, checks: impl IntoIterator<Item = std::result::Result<(), String>>) -> SuiteResult {
    let mut count = 0;
    let mut failures = Vec::new();
    for c in checks {
        count += 1;
        if let Err(f) = c {
            failures.push(f);
        }
    }
    SuiteResult { name: name.to_string(), checks: count, failures }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Described chambers for `m = 3..=7` as stated for the printed tables.
pub const EXPECTED_COVERAGE: [(usize, usize, usize); 5] = [(3, 2, 2), (4, 3, 3), (5, 7, 7), (6, 21, 21), (7, 49, 135)];

/// Brute-force confirmation that no integral vector of smaller sum, nor a
/// lexicographically smaller one of the same sum, lies in the chamber.
/// Zeros stand for tiny lengths only when the positive entries alone are
/// generic.
pub fn a_min_is_minimal(code: &GeneticCode, a_min: &LengthVector) -> std::result::Result<(), String> {
    let target: Vec<i64> = a_min
        .as_integers()
        .ok_or("a_min is not integral")?
        .iter()
        .map(|x| i64::try_from(x).map_err(|_| "entry out of range".to_string()))
        .collect::<std::result::Result<_, _>>()?;
    let total: i64 = target.iter().sum();
    let m = code.m();
    let mut found = None;
    let mut v = vec![0i64; m];
    let mut visit = |v: &[i64]| {
        if found.is_some() {
            return;
        }
        let s: i64 = v.iter().sum();
        if s > total || (s == total && v >= target.as_slice()) {
            return;
        }
        let positive: Vec<i64> = v.iter().copied().filter(|&x| x > 0).collect();
        let positive_generic = match positive.len() {
            0 => false,
            1 => true,
            2 => positive[0] != positive[1],
            _ => LengthVector::from_integers(&positive).is_ok_and(|p| p.is_generic()),
        };
        if !positive_generic {
            return;
        }
        let lv = LengthVector::from_integers(v).expect("valid");
        if genetic_code(&lv).as_ref() == Ok(code) {
            found = Some(v.to_vec());
        }
    };
    nondecreasing_upto(&mut v, 0, 0, total, &mut visit);
    match found {
        None => Ok(()),
        Some(v) => Err(format!("{code}: {v:?} undercuts a_min {a_min}")),
    }
}

fn nondecreasing_upto(v: &mut [i64], pos: usize, min: i64, budget: i64, f: &mut impl FnMut(&[i64])) {
    if pos == v.len() {
        f(v);
        return;
    }
    let left = (v.len() - pos) as i64;
    let mut x = min;
    while x * left <= budget {
        v[pos] = x;
        nondecreasing_upto(v, pos + 1, x, budget - x, f);
        x += 1;
    }
}

pub fn verify_suites(m: usize) -> Result<Vec<SuiteResult>> {
    if !(3..=COVERAGE_BOUND).contains(&m) {
        return Err(Error::BoundExceeded { m, bound: COVERAGE_BOUND });
    }
    let chambers = chambers::enumerate_chambers(m)?;
    let mut out = Vec::new();

    let expected = KNOWN_CHAMBER_COUNTS.iter().find(|(k, _)| *k == m).map(|(_, n)| *n);
    out.push(suite(
        "chamber count",
        [check(Some(chambers.len()) == expected, || format!("{} chambers, expected {expected:?}", chambers.len()))],
    ));

    out.push(suite(
        "round trip",
        chambers.iter().flat_map(|c| {
            [
                check(genetic_code(&c.witness).as_ref() == Ok(&c.code), || {
                    format!("{}: witness {}", c.code, c.witness)
                }),
                check(genetic_code(&c.a_min).as_ref() == Ok(&c.code), || format!("{}: a_min {}", c.code, c.a_min)),
            ]
        }),
    ));

    if m >= 4 {
        let smaller = chambers::enumerate_chambers(m - 1)?;
        let codes: std::collections::HashSet<&GeneticCode> = chambers.iter().map(|c| &c.code).collect();
        out.push(suite(
            "tiny edge",
            smaller.iter().flat_map(|b| {
                let lift = b.code.tiny_edge();
                let eps = b.a_min.with_tiny_edge().expect("room for one more edge");
                [
                    check(codes.contains(&lift), || format!("{} lifts to non-chamber {lift}", b.code)),
                    check(genetic_code(&eps).as_ref() == Ok(&lift), || {
                        format!("{}: ε⊕a_min has code {:?}", b.code, genetic_code(&eps))
                    }),
                    check(lift.tiny_edge_reduce().as_ref() == Some(&b.code), || {
                        format!("{lift} does not reduce to {}", b.code)
                    }),
                ]
            }),
        ));
    }

    let described: Vec<&Chamber> = chambers
        .iter()
        .filter(|c| !topology::describe(&c.code, SpaceQuery::Planar).is_ok_and(|x| x.contains_unknown()))
        .collect();
    let mut euler = Vec::new();
    for c in &described {
        euler.push(match euler_boundary_check(&c.code) {
            Ok(r) => check(r.passed, || format!("{}: χ(Ch²) = {}, expected {}", c.code, r.chi_boundary, r.expected)),
            Err(e) => Err(format!("{}: {e}", c.code)),
        });
    }
    for d in [2, 3] {
        for s in sum_euler_checks(m, d)? {
            euler.push(check(s.passed(), || format!("{} -> {} at d={d}: {s:?}", s.step.from, s.step.to)));
        }
    }
    out.push(suite("euler", euler));

    if m <= 6 {
        out.push(suite("a_min minimality", chambers.iter().map(|c| a_min_is_minimal(&c.code, &c.a_min))));
        out.push(suite(
            "path independence",
            path_independence(m)?
                .into_iter()
                .map(|p| check(p.passed(), || format!("{}: {} disagrees ({p:?})", p.code, p.derivation))),
        ));
    }

    let (got, total) = coverage_with(m, SpaceQuery::Planar, false)?;
    let expected = EXPECTED_COVERAGE.iter().find(|(k, _, _)| *k == m).map(|&(_, a, b)| (a, b));
    out.push(suite(
        "coverage",
        [check(Some((got, total)) == expected, || format!("described {got} of {total}, expected {expected:?}"))],
    ));
    Ok(out)
}

pub fn verify(m: usize, format: Format) -> Output {
    let suites = match verify_suites(m) {
        Ok(s) => s,
        Err(e) => return Output::fail(EXIT_USAGE, e),
    };
    let ok = suites.iter().all(SuiteResult::passed);
    let stdout = match format {
        Format::Json => json_text(&json!({ "m": m, "passed": ok, "suites": suites })),
        Format::Tsv => {
            let mut s = String::from("suite\tresult\tchecks\tfailures\n");
            for r in &suites {
                let res = if r.passed() { "PASS" } else { "FAIL" };
                s.push_str(&format!("{}\t{res}\t{}\t{}\n", r.name, r.checks, r.failures.len()));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &suites {
                let res = if r.passed() { "PASS" } else { "FAIL" };
                s.push_str(&format!("{res} {} ({} checks)\n", r.name, r.checks));
                for f in r.failures.iter().take(10) {
                    s.push_str(&format!("    {f}\n"));
                }
            }
            s
        }
    };
    Output { stdout, stderr: String::new(), code: if ok { EXIT_OK } else { EXIT_USAGE } }
}
