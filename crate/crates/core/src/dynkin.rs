//! ADE resolution graphs, their incidence matrices, and the lattice point
//! configurations attached to them.
//!
//! Vertex numbering (1-based, as in the variable names):
//!
//! * `A_n`: the path `1 - 2 - ... - n`.
//! * `D_n`: vertex 2 is the branch point, joined to the two short arms 1 and
//!   `n` and to the chain `2 - 3 - ... - (n-1)`.
//! * `E_n` (n = 6, 7, 8): the chain `1 - 2 - ... - (n-1)` with vertex `n`
//!   attached to vertex 3.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdeKind {
    A,
    D,
    E,
}

impl FromStr for AdeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(AdeKind::A),
            "D" | "d" => Ok(AdeKind::D),
            "E" | "e" => Ok(AdeKind::E),
            other => Err(Error::invalid(format!("unknown diagram kind {other:?}"))),
        }
    }
}

impl fmt::Display for AdeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            AdeKind::A => "A",
            AdeKind::D => "D",
            AdeKind::E => "E",
        };
        f.write_str(c)
    }
}

/// Check that `n` is in range for the given diagram family.
pub fn check_ade(kind: AdeKind, n: usize) -> Result<()> {
    let ok = match kind {
        AdeKind::A => n >= 1,
        AdeKind::D => n >= 4,
        AdeKind::E => (6..=8).contains(&n),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{kind}_{n} is not a Dynkin diagram"
        )))
    }
}

/// A loopless weighted graph. Vertices are 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraph {
    weights: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

impl WeightedGraph {
    pub fn new(weights: Vec<u32>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = weights.len();
        if weights.iter().any(|&w| w < 2) {
            return Err(Error::invalid("vertex weights must be at least 2"));
        }
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::invalid("loops are not allowed"));
            }
        }
        Ok(WeightedGraph { weights, edges })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }
}

/// The ADE tree with all weights 2, numbered as in the module docs.
pub fn ade_graph(kind: AdeKind, n: usize) -> Result<WeightedGraph> {
    check_ade(kind, n)?;
    let edges: Vec<(usize, usize)> = match kind {
        AdeKind::A => (1..n).map(|k| (k - 1, k)).collect(),
        AdeKind::D => {
            let mut e = vec![(0, 1), (n - 1, 1)];
            e.extend((1..n - 2).map(|k| (k, k + 1)));
            e
        }
        AdeKind::E => {
            let mut e: Vec<(usize, usize)> = (1..n - 1).map(|k| (k - 1, k)).collect();
            e.push((2, n - 1));
            e
        }
    };
    WeightedGraph::new(vec![2; n], edges)
}

/// The symmetric matrix with `-w_i` on the diagonal and edge counts off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceMatrix {
    entries: Vec<Vec<i64>>,
}

impl IncidenceMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            crate::error::check_len(n, row.len())?;
            for (j, v) in row.iter().enumerate().take(i) {
                if *v != entries[j][i] {
                    return Err(Error::invalid("incidence matrix must be symmetric"));
                }
            }
        }
        Ok(IncidenceMatrix { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    fn negated(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|v| -v).collect())
            .collect()
    }
}

pub fn incidence_matrix(g: &WeightedGraph) -> IncidenceMatrix {
    let n = g.n();
    let mut m = vec![vec![0i64; n]; n];
    for (i, &w) in g.weights.iter().enumerate() {
        m[i][i] = -(w as i64);
    }
    for &(a, b) in &g.edges {
        m[a][b] += 1;
        m[b][a] += 1;
    }
    IncidenceMatrix { entries: m }
}

/// Sylvester's criterion: `(-1)^k` times the k-th leading minor is positive.
pub fn is_negative_definite(m: &IncidenceMatrix) -> bool {
    linalg::leading_minors(&m.entries)
        .iter()
        .enumerate()
        .all(|(k, d)| {
            if k % 2 == 0 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
}

/// Lattice points with named variables: the columns of a degree matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration")]
pub struct Configuration {
    n: usize,
    points: Vec<Vec<i64>>,
    names: Vec<String>,
}

#[derive(Deserialize)]
struct RawConfiguration {
    n: usize,
    points: Vec<Vec<i64>>,
    names: Option<Vec<String>>,
}

impl TryFrom<RawConfiguration> for Configuration {
    type Error = Error;
    fn try_from(r: RawConfiguration) -> Result<Self> {
        let c = match r.names {
            Some(names) => Configuration::new(r.points, names)?,
            None => Configuration::with_default_names(r.points)?,
        };
        if c.n != r.n && !c.points.is_empty() {
            return Err(Error::Dimension {
                expected: r.n,
                got: c.n,
            });
        }
        Ok(Configuration { n: r.n, ..c })
    }
}

pub(crate) fn default_names(count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("x_{i}")).collect()
}

impl Configuration {
    pub fn new(points: Vec<Vec<i64>>, names: Vec<String>) -> Result<Self> {
        crate::error::check_len(points.len(), names.len())?;
        let n = points.first().map_or(0, Vec::len);
        for (i, p) in points.iter().enumerate() {
            crate::error::check_len(n, p.len())?;
            if p.iter().any(|&v| v < 0) {
                return Err(Error::invalid(format!(
                    "point {} has a negative entry",
                    i + 1
                )));
            }
            if p.iter().all(|&v| v == 0) {
                return Err(Error::invalid(format!("point {} is zero", i + 1)));
            }
            if points[..i].contains(p) {
                return Err(Error::invalid(format!("point {} is repeated", i + 1)));
            }
        }
        Ok(Configuration { n, points, names })
    }

    pub fn with_default_names(points: Vec<Vec<i64>>) -> Result<Self> {
        let names = default_names(points.len());
        Configuration::new(points, names)
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points, i.e. of variables.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of the variable called `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|v| v == name)
    }

    /// Points as a sorted list, for set comparisons.
    pub fn point_set(&self) -> Vec<Vec<i64>> {
        let mut p = self.points.clone();
        p.sort();
        p
    }

    /// Parse the text format: one point per line, whitespace separated
    /// integers, `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let p = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>().map_err(|_| {
                        Error::invalid(format!("line {}: bad integer {t:?}", lineno + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            points.push(p);
        }
        if points.is_empty() {
            return Err(Error::invalid("configuration has no points"));
        }
        Configuration::with_default_names(points)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (p, name) in self.points.iter().zip(&self.names) {
            let row: Vec<String> = p.iter().map(i64::to_string).collect();
            s.push_str(&row.join(" "));
            s.push_str(&format!("  # {name}\n"));
        }
        s
    }
}

/// Rank and corank of the point matrix.
pub fn dimensions(c: &Configuration) -> (usize, usize) {
    let dim = linalg::rank(c.points());
    (dim, c.len() - dim)
}

/// Default Hilbert basis box: `2 (n + 1)`.
pub fn default_bound(n: usize) -> u32 {
    2 * (n as u32 + 1)
}

/// Integer cycle `C` with `M C = -d`, when `d` lies in the Lipman lattice.
pub fn lattice_certificate(m: &IncidenceMatrix, d: &[i64]) -> Option<Vec<BigInt>> {
    let neg: Vec<i64> = d.iter().map(|v| -v).collect();
    linalg::solve_integral(&m.entries, &neg)
}

struct HilbertSearch {
    n: usize,
    det: i64,
    /// residue of each unit vector in the discriminant group
    gens: Vec<Vec<i64>>,
    bound: u32,
    found: Vec<Vec<i64>>,
    truncated: bool,
}

impl HilbertSearch {
    fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.det).collect()
    }

    /// Extend `d` at coordinates `k..`, where `sums` holds the residues of all
    /// nonzero subvectors of `d` (none is zero) and `total` the residue of `d`.
    fn search(&mut self, k: usize, d: &mut Vec<i64>, sums: &[Vec<i64>], total: &[i64]) {
        if k == self.n {
            return;
        }
        self.search(k + 1, d, sums, total);
        let zero = vec![0i64; self.n];
        let mut sums = sums.to_vec();
        let mut total = total.to_vec();
        let base = d[k];
        loop {
            if d[k] as u32 == self.bound {
                self.truncated = true;
                break;
            }
            d[k] += 1;
            total = self.add(&total, &self.gens[k]);
            if total == zero {
                // The parent is zero-sum free, so any zero subvector would
                // leave a zero complement inside the parent unless it is d.
                self.found.push(d.clone());
                break;
            }
            let mut fresh: Vec<Vec<i64>> =
                sums.iter().map(|s| self.add(s, &self.gens[k])).collect();
            fresh.push(self.gens[k].clone());
            if fresh.contains(&zero) {
                break;
            }
            for f in fresh {
                if !sums.contains(&f) {
                    sums.push(f);
                }
            }
            self.search(k + 1, d, &sums, &total);
        }
        d[k] = base;
    }
}

/// Minimal nonzero elements of `N^n ∩ (-M) Z^n` inside `[0, bound]^n`, and
/// whether the search was cut short by the box.
pub fn hilbert_basis_in_box(m: &IncidenceMatrix, bound: u32) -> Result<(Vec<Vec<i64>>, bool)> {
    if !is_negative_definite(m) {
        return Err(Error::NotNegativeDefinite);
    }
    if bound == 0 {
        return Err(Error::invalid("box bound must be positive"));
    }
    let neg = m.negated();
    let det = linalg::determinant(&neg);
    let adj = linalg::adjugate(&neg).expect("negative definite matrices are nonsingular");
    let det_i = det.to_i64().ok_or(Error::Overflow("discriminant"))?;
    let n = m.n();
    let gens: Vec<Vec<i64>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    adj[i][k]
                        .mod_floor(&det)
                        .to_i64()
                        .expect("reduced modulo det")
                })
                .collect()
        })
        .collect();
    if det_i == 1 {
        // unimodular: the semigroup is all of N^n
        let basis = (0..n)
            .map(|k| (0..n).map(|i| i64::from(i == k)).collect())
            .collect();
        return Ok((basis, false));
    }
    let mut s = HilbertSearch {
        n,
        det: det_i,
        gens,
        bound,
        found: Vec::new(),
        truncated: false,
    };
    let mut d = vec![0i64; n];
    s.search(0, &mut d, &[], &vec![0; n]);
    debug_assert!(s.found.iter().all(|p| !p.iter().all(Zero::is_zero)));
    let mut found = s.found;
    found.sort();
    Ok((found, s.truncated))
}

/// The Hilbert basis of the Lipman semigroup, with a sufficiency re-run in
/// the doubled box.
pub fn lipman_configuration(m: &IncidenceMatrix, bound: u32) -> Result<Configuration> {
    let (basis, _) = hilbert_basis_in_box(m, bound)?;
    let (wide, _) = hilbert_basis_in_box(m, bound.saturating_mul(2))?;
    if basis != wide {
        return Err(Error::BoundInsufficient {
            bound,
            suggested: bound.saturating_mul(2),
        });
    }
    Configuration::with_default_names(basis)
}

fn unit(n: usize, terms: &[(i64, usize)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(c, i) in terms {
        v[i - 1] += c;
    }
    v
}

/// The index sets `J` and `J^c` of the closed forms for `D_n`.
pub fn d_index_sets(n: usize) -> (Vec<usize>, Vec<usize>) {
    if n.is_multiple_of(2) {
        ((3..n).step_by(2).collect(), (2..n - 1).step_by(2).collect())
    } else {
        ((2..n).step_by(2).collect(), (3..n - 1).step_by(2).collect())
    }
}

pub(crate) fn pair_name(k: usize, l: usize) -> String {
    format!("x_{{{k},{l}}}")
}

/// The explicit configurations for `D_n` and `E_n`, with their variable names
/// (`x_i`, `x_{k,l}`, `y_i`, ...).
pub fn closed_form_configuration(kind: AdeKind, n: usize) -> Result<Configuration> {
    check_ade(kind, n)?;
    let mut pts: Vec<Vec<i64>> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut push = |p: Vec<i64>, name: String| {
        pts.push(p);
        names.push(name);
    };
    match kind {
        AdeKind::A => {
            return Err(Error::invalid(
                "A_n has no closed-form configuration; use the Lipman configuration",
            ))
        }
        AdeKind::D => {
            let (j, jc) = d_index_sets(n);
            let even = n.is_multiple_of(2);
            let end = if even { 2 } else { 4 };
            for v in 1..=n {
                let p = if v == 1 || v == n {
                    unit(n, &[(end, v)])
                } else if j.contains(&v) {
                    unit(n, &[(2, v)])
                } else {
                    debug_assert!(jc.contains(&v));
                    unit(n, &[(1, v)])
                };
                push(p, format!("x_{v}"));
            }
            for (a, &k) in j.iter().enumerate() {
                for &l in &j[a + 1..] {
                    push(unit(n, &[(1, k), (1, l)]), pair_name(k, l));
                }
            }
            if even {
                for &i in &j {
                    push(unit(n, &[(1, i), (1, 1), (1, n)]), format!("y_{i}"));
                }
            } else {
                push(unit(n, &[(1, 1), (1, n)]), format!("x_{{1,{n}}}"));
                for &i in &j {
                    push(unit(n, &[(1, i), (2, 1)]), format!("x_{{{i},1}}"));
                }
                for &i in &j {
                    push(unit(n, &[(1, i), (2, n)]), format!("x_{{{i},{n}}}"));
                }
                for &i in &j {
                    push(unit(n, &[(1, i), (3, 1), (1, n)]), format!("y_{{{i},1}}"));
                }
                for &i in &j {
                    push(unit(n, &[(1, i), (1, 1), (3, n)]), format!("y_{{{i},{n}}}"));
                }
            }
        }
        AdeKind::E => {
            let list: Vec<Vec<(i64, usize)>> = match n {
                6 => vec![
                    vec![(3, 1)],
                    vec![(3, 2)],
                    vec![(1, 3)],
                    vec![(3, 4)],
                    vec![(3, 5)],
                    vec![(1, 6)],
                    vec![(1, 1), (1, 2)],
                    vec![(1, 1), (1, 5)],
                    vec![(1, 2), (1, 4)],
                    vec![(1, 4), (1, 5)],
                    vec![(2, 2), (1, 5)],
                    vec![(1, 2), (2, 5)],
                    vec![(2, 1), (1, 4)],
                    vec![(1, 1), (2, 4)],
                ],
                7 => vec![
                    vec![(1, 1)],
                    vec![(1, 2)],
                    vec![(1, 3)],
                    vec![(2, 4)],
                    vec![(1, 5)],
                    vec![(2, 6)],
                    vec![(2, 7)],
                    vec![(1, 4), (1, 6)],
                    vec![(1, 4), (1, 7)],
                    vec![(1, 6), (1, 7)],
                ],
                _ => (1..=8).map(|i| vec![(1, i)]).collect(),
            };
            for (k, t) in list.iter().enumerate() {
                push(unit(n, t), format!("x_{}", k + 1));
            }
        }
    }
    Configuration::new(pts, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graphs() {
        let a3 = ade_graph(AdeKind::A, 3).unwrap();
        assert_eq!(a3.edges(), &[(0, 1), (1, 2)]);
        let d4 = ade_graph(AdeKind::D, 4).unwrap();
        assert_eq!(d4.degree(1), 3);
        assert_eq!((0..4).filter(|&v| d4.degree(v) == 1).count(), 3);
        let e8 = ade_graph(AdeKind::E, 8).unwrap();
        assert_eq!(e8.degree(2), 3);
        assert_eq!(e8.edges().len(), 7);
        assert!(ade_graph(AdeKind::E, 9).is_err());
        assert!(ade_graph(AdeKind::D, 3).is_err());
        assert!(ade_graph(AdeKind::A, 0).is_err());
    }

    #[test]
    fn incidence() {
        let a2 = incidence_matrix(&ade_graph(AdeKind::A, 2).unwrap());
        assert_eq!(a2.entries(), &[vec![-2, 1], vec![1, -2]]);
        let a1 = incidence_matrix(&ade_graph(AdeKind::A, 1).unwrap());
        assert_eq!(a1.entries(), &[vec![-2]]);
        let d4 = incidence_matrix(&ade_graph(AdeKind::D, 4).unwrap());
        assert_eq!(d4.entries()[1].iter().filter(|&&v| v == 1).count(), 3);
    }

    #[test]
    fn definiteness() {
        for n in 1..=8 {
            let m = incidence_matrix(&ade_graph(AdeKind::A, n).unwrap());
            assert!(is_negative_definite(&m));
        }
        assert!(!is_negative_definite(
            &IncidenceMatrix::new(vec![vec![-2, 2], vec![2, -2]]).unwrap()
        ));
        assert!(!is_negative_definite(
            &IncidenceMatrix::new(vec![vec![0]]).unwrap()
        ));
    }

    #[test]
    fn a2_hilbert_basis() {
        let m = incidence_matrix(&ade_graph(AdeKind::A, 2).unwrap());
        let c = lipman_configuration(&m, default_bound(2)).unwrap();
        assert_eq!(c.point_set(), vec![vec![0, 3], vec![1, 1], vec![3, 0]]);
    }

    #[test]
    fn tiny_box_is_insufficient() {
        let m = incidence_matrix(&ade_graph(AdeKind::A, 2).unwrap());
        assert!(matches!(
            lipman_configuration(&m, 2),
            Err(Error::BoundInsufficient {
                bound: 2,
                suggested: 4
            })
        ));
    }

    #[test]
    fn e8_is_unimodular() {
        let m = incidence_matrix(&ade_graph(AdeKind::E, 8).unwrap());
        let c = lipman_configuration(&m, default_bound(8)).unwrap();
        assert_eq!(c, closed_form_configuration(AdeKind::E, 8).unwrap());
    }

    #[test]
    fn d4_closed_form() {
        let c = closed_form_configuration(AdeKind::D, 4).unwrap();
        let mut expect = vec![
            vec![0, 0, 2, 0],
            vec![0, 1, 0, 0],
            vec![2, 0, 0, 0],
            vec![0, 0, 0, 2],
            vec![1, 0, 1, 1],
        ];
        expect.sort();
        assert_eq!(c.point_set(), expect);
        assert_eq!(c.names(), &["x_1", "x_2", "x_3", "x_4", "y_3"]);
    }

    #[test]
    fn text_round_trip() {
        let c = Configuration::parse_text("# A_2\n3 0\n\n0 3 # second\n1 1\n").unwrap();
        assert_eq!(c.len(), 3);
        let back = Configuration::parse_text(&c.to_text()).unwrap();
        assert_eq!(back, c);
        assert!(Configuration::parse_text("1 2\n3\n").is_err());
        assert!(Configuration::parse_text("1 -2\n").is_err());
        assert!(Configuration::parse_text("1 1\n1 1\n").is_err());
    }

    #[test]
    fn certificates() {
        let m = incidence_matrix(&ade_graph(AdeKind::A, 2).unwrap());
        assert!(lattice_certificate(&m, &[1, 1]).is_some());
        assert!(lattice_certificate(&m, &[1, 0]).is_none());
    }
}
