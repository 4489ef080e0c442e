//! Transcribed Gröbner basis tables for the D and E families, their size
//! formulas, and a verification harness running every check against them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    certify_marked, initial_ideal, is_groebner_marked, is_squarefree, Binomial, Certificate,
    MarkedBasis, Monomial, TermOrder,
};
use crate::betti::{betti_report, minimality_check, EdgeMode};
use crate::budget::Budget;
use crate::dynkin::{
    ade_graph, closed_form_configuration, d_index_sets, default_bound, dimensions,
    incidence_matrix, lipman_configuration, AdeKind, Configuration,
};
use crate::error::{Error, Result};
use crate::toric::{adegree_unchecked, ideals_equal, toric_ideal, ToricIdeal};

/// Families with a printed Gröbner basis table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Deven,
    Dodd,
    E6,
    E7,
    E8,
}

impl Family {
    /// The family of `(kind, n)`, if it has a table.
    pub fn of(kind: AdeKind, n: usize) -> Result<Family> {
        crate::dynkin::check_ade(kind, n)?;
        match kind {
            AdeKind::A => Err(Error::invalid("A_n has no Gröbner basis table")),
            AdeKind::D if n.is_multiple_of(2) => Ok(Family::Deven),
            AdeKind::D => Ok(Family::Dodd),
            AdeKind::E => Ok(match n {
                6 => Family::E6,
                7 => Family::E7,
                _ => Family::E8,
            }),
        }
    }

    pub fn kind(self) -> AdeKind {
        match self {
            Family::Deven | Family::Dodd => AdeKind::D,
            _ => AdeKind::E,
        }
    }

    fn check_n(self, n: usize) -> Result<()> {
        let ok = match self {
            Family::Deven => n >= 4 && n.is_multiple_of(2),
            Family::Dodd => n >= 5 && n % 2 == 1,
            Family::E6 => n == 6,
            Family::E7 => n == 7,
            Family::E8 => n == 8,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("n = {n} does not belong to {self}")))
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Deven => "D_even",
            Family::Dodd => "D_odd",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        };
        f.write_str(s)
    }
}

/// A table row that looks wrong as printed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowFlag {
    pub row: usize,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperBasisTable {
    pub family: Family,
    pub n: usize,
    pub config: Configuration,
    /// Elements as printed, the first monomial marked as lead.
    pub elements: MarkedBasis,
    pub flags: Vec<RowFlag>,
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Size of the printed basis, from the closed formulas for D and the table
/// lengths for E.
pub fn paper_cardinality(family: Family, n: usize) -> Result<u64> {
    family.check_n(n)?;
    Ok(match family {
        Family::Deven => {
            let k = n / 2 - 1;
            2 * binom(k, 4) + 5 * binom(k, 3) + 4 * binom(k, 2) + binom(k, 1)
        }
        Family::Dodd => {
            let m = (n - 1) / 2;
            2 * binom(m, 4) + 7 * binom(m, 3) + 9 * binom(m, 2) + 7 * binom(m, 1) + binom(m, 0)
        }
        Family::E6 => 35,
        Family::E7 => 6,
        Family::E8 => 0,
    })
}

/// The claimed dimension and codimension of the toric variety.
pub fn paper_dimensions(family: Family, n: usize) -> Result<(usize, usize)> {
    family.check_n(n)?;
    Ok(match family {
        Family::Deven => {
            let m = n / 2;
            (n, m - 1 + binom(m - 1, 2) as usize)
        }
        Family::Dodd => {
            let m = (n - 1) / 2;
            (n, n + binom(m, 2) as usize)
        }
        Family::E6 => (6, 8),
        Family::E7 => (7, 3),
        Family::E8 => (8, 0),
    })
}

struct Builder<'a> {
    config: &'a Configuration,
    rows: Vec<Binomial>,
}

impl Builder<'_> {
    fn mono(&self, factors: &[&str]) -> Monomial {
        let mut e = vec![0u32; self.config.len()];
        for f in factors {
            let (name, pow) = match f.split_once('^') {
                Some((a, p)) => (a, p.parse::<u32>().expect("exponent")),
                None => (*f, 1),
            };
            let i = self
                .config
                .index_of(name)
                .unwrap_or_else(|| panic!("no variable {name}"));
            e[i] += pow;
        }
        Monomial::new(e)
    }

    fn row(&mut self, lead: &[&str], trail: &[&str]) {
        let b = Binomial::marked(self.mono(lead), self.mono(trail)).expect("distinct terms");
        self.rows.push(b);
    }
}

fn x(i: usize) -> String {
    format!("x_{i}")
}

fn xp(i: usize, j: usize) -> String {
    format!("x_{{{i},{j}}}")
}

fn y(i: usize) -> String {
    format!("y_{i}")
}

fn y2(i: usize, j: usize) -> String {
    format!("y_{{{i},{j}}}")
}

fn pairs(j: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (a, &p) in j.iter().enumerate() {
        for &q in &j[a + 1..] {
            out.push((p, q));
        }
    }
    out
}

fn triples(j: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (a, &p) in j.iter().enumerate() {
        for (b, &q) in j.iter().enumerate().skip(a + 1) {
            for &r in &j[b + 1..] {
                out.push((p, q, r));
            }
        }
    }
    out
}

fn quads(j: &[usize]) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, j2, k) in triples(j) {
        for &l in j.iter().filter(|&&l| l > k) {
            out.push((i, j2, k, l));
        }
    }
    out
}

fn d_even_rows(b: &mut Builder<'_>, n: usize) {
    let (j, _) = d_index_sets(n);
    let (x1, xn) = (x(1), x(n));
    for (i, jj, k, l) in quads(&j) {
        b.row(&[&xp(i, k), &xp(jj, l)], &[&xp(i, jj), &xp(k, l)]);
        b.row(&[&xp(i, l), &xp(jj, k)], &[&xp(i, jj), &xp(k, l)]);
    }
    for (i, jj, k) in triples(&j) {
        b.row(&[&xp(i, jj), &xp(i, k)], &[&x(i), &xp(jj, k)]);
        b.row(&[&x(jj), &xp(i, k)], &[&xp(i, jj), &xp(jj, k)]);
        b.row(&[&x(k), &xp(i, jj)], &[&xp(i, k), &xp(jj, k)]);
        b.row(&[&xp(jj, k), &y(i)], &[&xp(i, jj), &y(k)]);
        b.row(&[&xp(i, k), &y(jj)], &[&xp(i, jj), &y(k)]);
    }
    for (i, jj) in pairs(&j) {
        b.row(&[&x(i), &x(jj)], &[&format!("{}^2", xp(i, jj))]);
        b.row(&[&x(jj), &y(i)], &[&xp(i, jj), &y(jj)]);
        b.row(&[&xp(i, jj), &y(i)], &[&x(i), &y(jj)]);
        b.row(&[&xp(i, jj), &x1, &xn], &[&y(i), &y(jj)]);
    }
    for &i in &j {
        b.row(&[&x(i), &x1, &xn], &[&format!("{}^2", y(i))]);
    }
}

/// The odd table writes `x_{i,n-1}` for the variable of `e_i + 2e_1`, named
/// `x_{i,1}` here.
fn d_odd_rows(b: &mut Builder<'_>, n: usize) {
    let (j, _) = d_index_sets(n);
    let (x1, xn) = (x(1), x(n));
    let x1n2 = format!("{}^2", xp(1, n));
    let lo = |i: usize| xp(i, 1);
    let hi = |i: usize| xp(i, n);
    for (i, jj, k, l) in quads(&j) {
        b.row(&[&xp(i, k), &xp(jj, l)], &[&xp(i, jj), &xp(k, l)]);
        b.row(&[&xp(i, l), &xp(jj, k)], &[&xp(i, jj), &xp(k, l)]);
    }
    for (i, jj, k) in triples(&j) {
        b.row(&[&xp(jj, k), &lo(i)], &[&xp(i, jj), &lo(k)]);
        b.row(&[&xp(i, k), &lo(jj)], &[&xp(i, jj), &lo(k)]);
        b.row(&[&xp(jj, k), &hi(i)], &[&xp(i, jj), &hi(k)]);
        b.row(&[&xp(i, k), &hi(jj)], &[&xp(i, jj), &hi(k)]);
        b.row(&[&x(jj), &xp(i, k)], &[&xp(i, jj), &xp(jj, k)]);
        b.row(&[&xp(i, jj), &xp(i, k)], &[&x(i), &xp(jj, k)]);
        b.row(&[&x(k), &xp(i, jj)], &[&xp(i, k), &xp(jj, k)]);
    }
    for (i, jj) in pairs(&j) {
        b.row(&[&x(i), &x(jj)], &[&format!("{}^2", xp(i, jj))]);
        b.row(&[&xp(i, jj), &x1], &[&lo(i), &lo(jj)]);
        b.row(&[&xp(i, jj), &xn], &[&hi(i), &hi(jj)]);
        b.row(&[&xp(i, jj), &lo(i)], &[&x(i), &lo(jj)]);
        b.row(&[&xp(i, jj), &hi(i)], &[&x(i), &hi(jj)]);
        b.row(&[&x(jj), &lo(i)], &[&xp(i, jj), &lo(jj)]);
        b.row(&[&x(jj), &hi(i)], &[&xp(i, jj), &hi(jj)]);
        b.row(&[&lo(jj), &hi(i)], &[&lo(i), &hi(jj)]);
        b.row(&[&lo(i), &hi(jj)], &[&x1n2, &xp(i, jj)]);
    }
    for &i in &j {
        b.row(&[&x(i), &x1], &[&format!("{}^2", lo(i))]);
        b.row(&[&x(i), &xn], &[&format!("{}^2", hi(i))]);
        b.row(&[&lo(i), &hi(i)], &[&x1n2, &x(i)]);
        b.row(&[&hi(i), &x1], &[&x1n2, &lo(i)]);
        b.row(&[&y2(i, 1)], &[&xp(1, n), &lo(i)]);
        b.row(&[&y2(i, n)], &[&xp(1, n), &hi(i)]);
        b.row(&[&lo(i), &xn], &[&x1n2, &hi(i)]);
    }
    b.row(&[&x1, &xn], &[&format!("{}^4", xp(1, n))]);
}

/// Rows as printed: (lead factors, trail factors) by 1-based variable index.
type Row = (&'static [(usize, u32)], &'static [(usize, u32)]);

const E6_ROWS: [Row; 35] = [
    (&[(7, 1), (10, 1)], &[(8, 1), (9, 1)]),
    (&[(13, 1), (10, 1)], &[(14, 1), (8, 1)]),
    (&[(13, 1), (9, 1)], &[(14, 1), (7, 1)]),
    (&[(12, 1), (14, 1)], &[(8, 1), (9, 1), (10, 1)]),
    (&[(12, 1), (13, 1)], &[(8, 2), (9, 1)]),
    (&[(11, 1), (10, 1)], &[(12, 1), (9, 1)]),
    (&[(11, 1), (8, 1)], &[(12, 1), (7, 1)]),
    (&[(11, 1), (14, 1)], &[(8, 1), (9, 2)]),
    (&[(11, 1), (13, 1)], &[(7, 1), (8, 1), (9, 1)]),
    (&[(5, 1), (9, 1)], &[(12, 1), (10, 1)]),
    (&[(5, 1), (7, 1)], &[(12, 1), (8, 1)]),
    (&[(5, 1), (14, 1)], &[(8, 1), (10, 2)]),
    (&[(5, 1), (13, 1)], &[(8, 2), (10, 1)]),
    (&[(5, 1), (11, 1)], &[(12, 2)]),
    (&[(4, 1), (8, 1)], &[(14, 1), (10, 1)]),
    (&[(4, 1), (7, 1)], &[(14, 1), (9, 1)]),
    (&[(4, 1), (13, 1)], &[(14, 2)]),
    (&[(4, 1), (12, 1)], &[(9, 1), (10, 2)]),
    (&[(4, 1), (11, 1)], &[(9, 2), (10, 1)]),
    (&[(4, 1), (5, 1)], &[(10, 3)]),
    (&[(2, 1), (10, 1)], &[(11, 1), (9, 1)]),
    (&[(2, 1), (8, 1)], &[(11, 1), (7, 1)]),
    (&[(2, 1), (14, 1)], &[(7, 1), (9, 2)]),
    (&[(2, 1), (13, 1)], &[(7, 2), (9, 1)]),
    (&[(2, 1), (12, 1)], &[(11, 2)]),
    (&[(2, 1), (5, 1)], &[(11, 1), (12, 1)]),
    (&[(2, 1), (4, 1)], &[(9, 3)]),
    (&[(1, 1), (10, 1)], &[(13, 1), (8, 1)]),
    (&[(1, 1), (9, 1)], &[(13, 1), (7, 1)]),
    (&[(1, 1), (14, 1)], &[(13, 3)]),
    (&[(1, 1), (11, 1)], &[(7, 1), (8, 2)]),
    (&[(1, 1), (11, 1)], &[(7, 2), (8, 1)]),
    (&[(1, 1), (5, 1)], &[(8, 3)]),
    (&[(1, 1), (4, 1)], &[(13, 1), (14, 1)]),
    (&[(1, 1), (2, 1)], &[(7, 3)]),
];

const E7_ROWS: [Row; 6] = [
    (&[(7, 1), (8, 1)], &[(9, 1), (10, 1)]),
    (&[(6, 1), (9, 1)], &[(8, 1), (10, 1)]),
    (&[(6, 1), (7, 1)], &[(10, 2)]),
    (&[(4, 1), (10, 1)], &[(8, 1), (9, 1)]),
    (&[(4, 1), (7, 1)], &[(9, 2)]),
    (&[(4, 1), (6, 1)], &[(8, 2)]),
];

/// Lex order of the printed E6 table:
/// `x_1 > … > x_6 > x_11 > x_12 > x_13 > x_14 > x_7 > x_8 > x_9 > x_10`.
pub fn e6_table_order() -> TermOrder {
    let perm = [1, 2, 3, 4, 5, 6, 11, 12, 13, 14, 7, 8, 9, 10]
        .iter()
        .map(|k| k - 1)
        .collect();
    TermOrder::lex_with(perm).expect("permutation")
}

fn indexed(nvars: usize, f: &[(usize, u32)]) -> Monomial {
    let mut e = vec![0u32; nvars];
    for &(i, p) in f {
        e[i - 1] += p;
    }
    Monomial::new(e)
}

/// Rows that are not A-homogeneous, or share a lead with an earlier row.
fn flag_rows(config: &Configuration, rows: &[Binomial]) -> Vec<RowFlag> {
    let mut flags = Vec::new();
    for (r, b) in rows.iter().enumerate() {
        let dl = adegree_unchecked(config, b.lead().exps());
        let dt = adegree_unchecked(config, b.trail().exps());
        if dl != dt {
            flags.push(RowFlag {
                row: r,
                note: format!("not homogeneous: degrees {dl:?} and {dt:?}"),
            });
        }
        if let Some(first) = rows[..r].iter().position(|o| o.lead() == b.lead()) {
            flags.push(RowFlag {
                row: r,
                note: format!("same lead as row {first}"),
            });
        }
    }
    flags
}

/// The printed basis for `(family, n)`, with rows that fail basic sanity
/// checks flagged rather than corrected.
pub fn paper_basis(family: Family, n: usize) -> Result<PaperBasisTable> {
    family.check_n(n)?;
    let config = closed_form_configuration(family.kind(), n)?;
    let nv = config.len();
    let rows = match family {
        Family::Deven | Family::Dodd => {
            let mut b = Builder {
                config: &config,
                rows: Vec::new(),
            };
            if family == Family::Deven {
                d_even_rows(&mut b, n);
            } else {
                d_odd_rows(&mut b, n);
            }
            b.rows
        }
        Family::E6 | Family::E7 => {
            let table: &[Row] = if family == Family::E6 {
                &E6_ROWS
            } else {
                &E7_ROWS
            };
            table
                .iter()
                .map(|(l, t)| Binomial::marked(indexed(nv, l), indexed(nv, t)))
                .collect::<Result<Vec<_>>>()?
        }
        Family::E8 => Vec::new(),
    };
    let flags = flag_rows(&config, &rows);
    let elements = MarkedBasis::new(config.names().to_vec(), rows)?;
    Ok(PaperBasisTable {
        family,
        n,
        config,
        elements,
        flags,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Status {
    fn from_bool(ok: bool, detail: impl FnOnce() -> String) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail(detail())
        }
    }

    fn from_result(r: Result<Status>) -> Status {
        match r {
            Ok(s) => s,
            Err(e) if e.is_budget() => Status::Skipped(e.to_string()),
            Err(e) => Status::Fail(e.to_string()),
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub status: Status,
}

/// Printed table against the computed reduced Gröbner basis under the
/// table's own order, matched by A-degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDiff {
    /// Printed rows equal (up to sign) to a computed element.
    pub matched: Vec<usize>,
    /// Printed rows absent from the computed basis, with the computed
    /// elements of the same A-degree.
    pub paper_only: Vec<(usize, Vec<Binomial>)>,
    /// Computed elements absent from the table.
    pub computed_only: Vec<Binomial>,
    pub flags: Vec<RowFlag>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.paper_only.is_empty() && self.computed_only.is_empty() && self.flags.is_empty()
    }
}

pub fn table_diff(table: &PaperBasisTable, computed: &MarkedBasis) -> TableDiff {
    let c = &table.config;
    let mut by_degree: BTreeMap<Vec<i64>, Vec<&Binomial>> = BTreeMap::new();
    for g in computed.elements() {
        by_degree
            .entry(adegree_unchecked(c, g.lead().exps()))
            .or_default()
            .push(g);
    }
    let same = |a: &Binomial, b: &Binomial| a.canonical() == b.canonical();
    let mut diff = TableDiff {
        flags: table.flags.clone(),
        ..TableDiff::default()
    };
    for (r, b) in table.elements.elements().iter().enumerate() {
        if computed.elements().iter().any(|g| same(g, b)) {
            diff.matched.push(r);
        } else {
            let d = adegree_unchecked(c, b.lead().exps());
            let near = by_degree
                .get(&d)
                .map(|v| v.iter().map(|&g| g.clone()).collect())
                .unwrap_or_default();
            diff.paper_only.push((r, near));
        }
    }
    diff.computed_only = computed
        .elements()
        .iter()
        .filter(|g| !table.elements.elements().iter().any(|b| same(g, b)))
        .cloned()
        .collect();
    diff
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: Family,
    pub n: usize,
    pub checks: Vec<Check>,
    pub certificate: Option<Certificate>,
    pub computed_gb_size: Option<usize>,
    pub indispensable_count: Option<usize>,
    #[serde(with = "crate::json::biguint_opt")]
    pub min_gen_set_count: Option<num_bigint::BigUint>,
    pub table_diff: Option<TableDiff>,
}

impl VerificationReport {
    /// No check failed and the table agrees with the computation.
    pub fn all_pass(&self) -> bool {
        !self.checks.iter().any(|c| c.status.is_fail())
    }

    pub fn status(&self, name: &str) -> Option<&Status> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.status)
    }
}

/// Configuration the dimension claims refer to: the closed form, except for
/// odd D where the claimed codimension is that of the Hilbert basis.
pub fn dimension_configuration(family: Family, n: usize) -> Result<Configuration> {
    match family {
        Family::Dodd => {
            let m = incidence_matrix(&ade_graph(AdeKind::D, n)?);
            lipman_configuration(&m, default_bound(n))
        }
        _ => closed_form_configuration(family.kind(), n),
    }
}

/// Run every check on the printed table for `(family, n)`.
///
/// Failures are recorded in the report; only invalid input is an error.
pub fn verify_all(family: Family, n: usize, budget: &Budget) -> Result<VerificationReport> {
    let table = paper_basis(family, n)?;
    let mut report = VerificationReport {
        family,
        n,
        checks: Vec::new(),
        certificate: None,
        computed_gb_size: None,
        indispensable_count: None,
        min_gen_set_count: None,
        table_diff: None,
    };
    let push = |report: &mut VerificationReport, name: &str, s: Status| {
        report.checks.push(Check {
            name: name.to_string(),
            status: s,
        })
    };
    let basis = &table.elements;
    let config = &table.config;

    let cert = if basis.is_empty() {
        None
    } else {
        certify_marked(basis)
    };
    push(
        &mut report,
        "marked_coherence",
        if basis.is_empty() {
            Status::Pass
        } else {
            Status::from_bool(cert.is_some(), || "no weight selects every lead".into())
        },
    );
    report.certificate = cert.clone();

    let order = match (&cert, family) {
        (_, Family::E6) => Ok(e6_table_order()),
        (Some(c), _) => c.order(),
        (None, Family::E7) => Ok(TermOrder::lex(config.len())),
        (None, _) => Ok(TermOrder::degrevlex(config.len())),
    };
    let order = match order {
        Ok(o) => o,
        Err(e) => {
            push(&mut report, "order", Status::Fail(e.to_string()));
            return Ok(report);
        }
    };

    push(
        &mut report,
        "groebner_criterion",
        if basis.is_empty() {
            Status::Pass
        } else {
            Status::from_result(
                is_groebner_marked(basis, budget.reduction_steps)
                    .map(|ok| Status::from_bool(ok, || "an S-pair does not reduce to zero".into())),
            )
        },
    );

    let computed = toric_ideal(config, &order, budget);
    let computed = match computed {
        Ok(i) => Some(i),
        Err(e) => {
            push(&mut report, "ideal_equality", Status::from_result(Err(e)));
            None
        }
    };
    if let Some(ideal) = &computed {
        report.computed_gb_size = Some(ideal.gb().len());
        let eq = ToricIdeal::from_generators(config, basis.elements(), &order, budget)
            .and_then(|p| ideals_equal(&p, ideal, budget))
            .map(|ok| Status::from_bool(ok, || "the table generates a different ideal".into()));
        push(&mut report, "ideal_equality", Status::from_result(eq));
    }

    let leads = initial_ideal(basis);
    push(
        &mut report,
        "squarefree",
        Status::from_bool(is_squarefree(&leads), || {
            "a minimal lead has a square".into()
        }),
    );

    let card = paper_cardinality(family, n)?;
    push(
        &mut report,
        "cardinality",
        Status::from_bool(basis.len() as u64 == card, || {
            format!("table has {} rows, formula gives {card}", basis.len())
        }),
    );

    let dims = dimension_configuration(family, n).map(|c| dimensions(&c));
    let claimed = paper_dimensions(family, n)?;
    push(
        &mut report,
        "dimensions",
        Status::from_result(dims.map(|d| {
            Status::from_bool(d == claimed, || {
                format!("computed {d:?}, claimed {claimed:?}")
            })
        })),
    );

    if let Some(ideal) = &computed {
        let min = minimality_check(basis.elements(), ideal, budget).map(|m| {
            Status::from_bool(m.is_minimal(), || {
                format!(
                    "contained={}, generates={}, redundant rows {:?}",
                    m.contained, m.generates, m.redundant
                )
            })
        });
        push(&mut report, "minimality", Status::from_result(min));

        match betti_report(ideal, EdgeMode::Gcd, 0, budget) {
            Ok(r) => {
                report.indispensable_count = Some(r.indispensables.len());
                report.min_gen_set_count = Some(r.min_gen_set_count);
                push(&mut report, "betti", Status::Pass);
            }
            Err(e) => push(&mut report, "betti", Status::from_result(Err(e))),
        }

        // The printed tables need not be reduced, so rows are compared through
        // their initial ideal; the row-by-row diff is reported alongside.
        let sorted = |mut v: Vec<Monomial>| {
            v.sort();
            v
        };
        let computed_leads = sorted(initial_ideal(ideal.gb()));
        let table_leads = sorted(leads.clone());
        push(
            &mut report,
            "initial_ideal_match",
            Status::from_bool(computed_leads == table_leads, || {
                "table leads differ from the computed initial ideal".into()
            }),
        );
        let diff = table_diff(&table, ideal.gb());
        push(
            &mut report,
            "table_rows",
            Status::from_bool(diff.flags.is_empty(), || {
                format!("{} flagged rows", diff.flags.len())
            }),
        );
        report.table_diff = Some(diff);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinalities() {
        assert_eq!(paper_cardinality(Family::Deven, 4).unwrap(), 1);
        assert_eq!(paper_cardinality(Family::Deven, 12).unwrap(), 105);
        assert_eq!(paper_cardinality(Family::Dodd, 5).unwrap(), 24);
        assert!(paper_cardinality(Family::Deven, 5).is_err());
    }

    #[test]
    fn table_sizes_match_formulas() {
        for n in 4..=12 {
            let f = Family::of(AdeKind::D, n).unwrap();
            let t = paper_basis(f, n).unwrap();
            assert_eq!(
                t.elements.len() as u64,
                paper_cardinality(f, n).unwrap(),
                "D{n}"
            );
            assert!(t.flags.is_empty(), "D{n}: {:?}", t.flags);
        }
        assert_eq!(paper_basis(Family::E6, 6).unwrap().elements.len(), 35);
        assert_eq!(paper_basis(Family::E7, 7).unwrap().elements.len(), 6);
    }

    #[test]
    fn d4_single_row() {
        let t = paper_basis(Family::Deven, 4).unwrap();
        let rendered = t.elements.render();
        assert_eq!(rendered, vec!["x_1*x_3*x_4 - y_3^2".to_string()]);
    }

    #[test]
    fn e6_flags() {
        let t = paper_basis(Family::E6, 6).unwrap();
        // the repeated lead x_1x_11, and x_1x_14 - x_13^3 is not homogeneous
        assert!(t
            .flags
            .iter()
            .any(|f| f.row == 31 && f.note.contains("same lead")));
        assert!(t
            .flags
            .iter()
            .any(|f| f.row == 29 && f.note.contains("homogeneous")));
    }

    #[test]
    fn verify_d8() {
        let r = verify_all(Family::Deven, 8, &Budget::default()).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
        assert_eq!(r.min_gen_set_count, Some(3u32.into()));
    }

    #[test]
    fn verify_e7() {
        let r = verify_all(Family::E7, 7, &Budget::default()).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
        assert_eq!(r.indispensable_count, Some(6));
    }
}
