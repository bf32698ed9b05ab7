//! Principalization of monomial ideals in two variables by point blow-ups,
//! and the zeta function read off the resulting intersection diagram.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, serde_rational, LinearFactor, Rational, Term, ZetaExpression};
use crate::error::{Error, Result};
use crate::lattice::ExponentVector;
use crate::newton::{MonomialIdeal, Polynomial};

const MAX_BLOWUPS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    Exceptional,
    StrictTransform,
}

/// A prime divisor with numerical data `(N, nu)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub label: String,
    pub kind: NodeKind,
    pub n: i64,
    pub nu: i64,
}

impl Node {
    pub fn candidate(&self) -> Option<Rational> {
        (self.n != 0).then(|| Rational::new((-self.nu).into(), self.n.into()))
    }

    fn factor(&self) -> (Rational, Option<LinearFactor>) {
        if self.n == 0 {
            (Rational::new(1.into(), self.nu.into()), None)
        } else {
            (Rational::one(), Some(LinearFactor::new(self.n, self.nu).expect("valid data")))
        }
    }

    fn display_label(&self) -> String {
        format!("{}({},{})", self.label, self.n, self.nu)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    /// Number of intersection points.
    pub count: u32,
}

/// Intersection diagram of a principalization, restricted to the divisors
/// that carry data: strict transforms of the coordinate axes with `N = 0`
/// and `nu = 1` are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDiagram {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub blowups: usize,
}

struct Chart {
    /// Residual ideal without monomial factor.
    gens: Vec<ExponentVector>,
    div_u: usize,
    div_v: usize,
}

fn minimal(gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    let mut gens = gens;
    gens.sort();
    gens.dedup();
    let copy = gens.clone();
    gens.retain(|g| !copy.iter().any(|h| h != g && h.divides(g)));
    gens
}

/// Minimal principalization of `ideal` with the form `x^n y^m dx dy`.
pub fn principalize(ideal: &MonomialIdeal, form: &Polynomial) -> Result<ResolutionDiagram> {
    if ideal.dim() != 2 || form.dim() != 2 {
        return Err(Error::Unsupported("principalization is implemented in two variables".into()));
    }
    if !form.is_monomial() {
        return Err(Error::Unsupported("principalization needs a monomial form".into()));
    }
    let exps = form.support()[0].clone();
    let (fx, fy) = (exps[0], exps[1]);
    let common = ideal.common_factor();
    let residual: Vec<ExponentVector> = ideal.generators().iter().map(|g| g.sub(&common)).collect();

    // all divisors, including the ones dropped at the end
    let mut all = vec![
        Node { label: "E'".into(), kind: NodeKind::StrictTransform, n: common[0], nu: fx + 1 },
        Node { label: "E".into(), kind: NodeKind::StrictTransform, n: common[1], nu: fy + 1 },
    ];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::from([Chart { gens: minimal(residual), div_u: 0, div_v: 1 }]);
    let mut blowups = 0;
    while let Some(chart) = queue.pop_front() {
        if chart.gens.iter().any(|g| g.is_zero()) {
            edges.push((chart.div_u.min(chart.div_v), chart.div_u.max(chart.div_v)));
            continue;
        }
        blowups += 1;
        if blowups > MAX_BLOWUPS {
            return Err(Error::Unsupported("principalization did not terminate".into()));
        }
        let ord = chart.gens.iter().map(|g| g.total()).min().unwrap();
        let (du, dv) = (&all[chart.div_u], &all[chart.div_v]);
        let new = Node {
            label: format!("E_{blowups}"),
            kind: NodeKind::Exceptional,
            n: du.n + dv.n + ord,
            nu: du.nu + dv.nu,
        };
        all.push(new);
        let id = all.len() - 1;
        let first: Vec<ExponentVector> =
            chart.gens.iter().map(|g| ExponentVector::from([g[0] + g[1] - ord, g[1]])).collect();
        let second: Vec<ExponentVector> =
            chart.gens.iter().map(|g| ExponentVector::from([g[0], g[0] + g[1] - ord])).collect();
        queue.push_back(Chart { gens: minimal(first), div_u: id, div_v: chart.div_v });
        queue.push_back(Chart { gens: minimal(second), div_u: chart.div_u, div_v: id });
    }

    let keep: Vec<bool> = all.iter().map(|n| !(n.kind == NodeKind::StrictTransform && n.n == 0 && n.nu == 1)).collect();
    let mut index = vec![usize::MAX; all.len()];
    let mut nodes = Vec::new();
    for (i, node) in all.into_iter().enumerate() {
        if keep[i] {
            index[i] = nodes.len();
            nodes.push(node);
        }
    }
    let mut out_edges: Vec<Edge> = Vec::new();
    for (a, b) in edges {
        if !(keep[a] && keep[b]) {
            continue;
        }
        let (a, b) = (index[a].min(index[b]), index[a].max(index[b]));
        match out_edges.iter_mut().find(|e| e.a == a && e.b == b) {
            Some(e) => e.count += 1,
            None => out_edges.push(Edge { a, b, count: 1 }),
        }
    }
    out_edges.sort_by_key(|e| (e.a, e.b));
    Ok(ResolutionDiagram { nodes, edges: out_edges, blowups })
}

impl ResolutionDiagram {
    pub fn validate(&self) -> Result<()> {
        for node in &self.nodes {
            if node.n < 0 || node.nu < 1 {
                return Err(Error::MalformedDiagram(format!("bad data on {}", node.display_label())));
            }
        }
        for e in &self.edges {
            if e.a >= self.nodes.len() || e.b >= self.nodes.len() || e.a == e.b || e.count == 0 {
                return Err(Error::MalformedDiagram(format!("bad edge {}-{}", e.a, e.b)));
            }
        }
        if self.blowups > 0 && !self.nodes.iter().any(|n| n.kind == NodeKind::Exceptional) {
            return Err(Error::MalformedDiagram("blow-ups without exceptional divisors".into()));
        }
        Ok(())
    }

    pub fn node(&self, label: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.label == label)
    }

    /// Number of intersection points on node `i`.
    pub fn degree(&self, i: usize) -> u32 {
        self.edges.iter().filter(|e| e.a == i || e.b == i).map(|e| e.count).sum()
    }

    fn neighbours(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.edges.iter().filter_map(move |e| {
            if e.a == i {
                Some((e.b, e.count))
            } else if e.b == i {
                Some((e.a, e.count))
            } else {
                None
            }
        })
    }

    fn product_term(&self, chi: Rational, members: &[usize]) -> Term {
        let mut coef = chi;
        let mut factors = Vec::new();
        for &i in members {
            let (c, f) = self.nodes[i].factor();
            coef *= c;
            factors.extend(f);
        }
        Term::new(coef, factors)
    }

    /// Strata of the fibre over the origin, as `(chi, divisors)` pairs.
    fn strata(&self) -> Vec<(Rational, Vec<usize>)> {
        if self.blowups == 0 {
            return vec![(Rational::one(), (0..self.nodes.len()).collect())];
        }
        let mut out = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if node.kind == NodeKind::Exceptional {
                out.push((int(2 - self.degree(i) as i64), vec![i]));
            }
        }
        for e in &self.edges {
            out.push((int(e.count as i64), vec![e.a, e.b]));
        }
        out
    }

    /// Sum over strata of `chi * prod 1/(nu_i + N_i s)`.
    pub fn zeta(&self) -> Result<ZetaExpression> {
        self.validate()?;
        let mut z = ZetaExpression::zero();
        for (chi, members) in self.strata() {
            if !chi.is_zero() {
                z.push(self.product_term(chi, &members));
            }
        }
        Ok(z)
    }

    /// DOT description; labels are `name(N,nu)`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph resolution {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let shape = match node.kind {
                NodeKind::Exceptional => "ellipse",
                NodeKind::StrictTransform => "box",
            };
            writeln!(s, "  n{i} [label=\"{}\", shape={shape}];", node.display_label()).unwrap();
        }
        for e in &self.edges {
            for _ in 0..e.count {
                writeln!(s, "  n{} -- n{};", e.a, e.b).unwrap();
            }
        }
        s.push_str("}\n");
        s
    }
}

/// The zeta function of the germ at the origin, from the diagram alone.
pub fn zeta_from_resolution(d: &ResolutionDiagram) -> Result<ZetaExpression> {
    d.zeta()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub label: String,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateAnalysis {
    #[serde(with = "serde_rational")]
    pub candidate: Rational,
    pub expected_order: u32,
    /// Per-divisor contributions to the residue; empty for expected order two.
    pub contributions: Vec<Contribution>,
}

impl CandidateAnalysis {
    pub fn residue(&self) -> Rational {
        self.contributions.iter().map(|c| c.value.clone()).sum()
    }
}

/// Expected order of `s0` and, for expected order one, each divisor's
/// contribution to the residue at `s0`.
pub fn analyze_candidate(d: &ResolutionDiagram, s0: &Rational) -> Result<CandidateAnalysis> {
    d.validate()?;
    let members: Vec<usize> = (0..d.nodes.len()).filter(|&i| d.nodes[i].candidate().as_ref() == Some(s0)).collect();
    if members.is_empty() {
        return Err(Error::NotCandidate(s0.to_string()));
    }
    let double = d.edges.iter().any(|e| members.contains(&e.a) && members.contains(&e.b));
    if double {
        return Ok(CandidateAnalysis { candidate: s0.clone(), expected_order: 2, contributions: Vec::new() });
    }
    let contributions = members
        .iter()
        .map(|&i| {
            let value = if d.blowups > 0 { divisor_contribution(d, i, s0) } else { direct_contribution(d, i, s0) };
            Contribution { label: d.nodes[i].label.clone(), value }
        })
        .collect();
    Ok(CandidateAnalysis { candidate: s0.clone(), expected_order: 1, contributions })
}

/// `(2 - m + sum m_j/alpha_j)/N_i` for exceptional divisors and
/// `(sum m_j/alpha_j)/N_i` otherwise, with `alpha_j = nu_j + s0 N_j`.
pub fn divisor_contribution(d: &ResolutionDiagram, i: usize, s0: &Rational) -> Rational {
    let node = &d.nodes[i];
    let mut total = Rational::zero();
    for (j, m) in d.neighbours(i) {
        let alpha = int(d.nodes[j].nu) + s0 * int(d.nodes[j].n);
        total += int(m as i64) / alpha;
    }
    if node.kind == NodeKind::Exceptional {
        total += int(2 - d.degree(i) as i64);
    }
    total / int(node.n)
}

/// Residue at `s0` of the strata terms involving divisor `i`.
pub fn direct_contribution(d: &ResolutionDiagram, i: usize, s0: &Rational) -> Rational {
    let part: ZetaExpression = d
        .strata()
        .into_iter()
        .filter(|(chi, m)| m.contains(&i) && !chi.is_zero())
        .map(|(chi, m)| ZetaExpression::from_terms(vec![d.product_term(chi, &m)]))
        .sum();
    part.laurent_coefficient(s0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ideal(gens: &[[i64; 2]]) -> MonomialIdeal {
        MonomialIdeal::new(gens.iter().map(|g| ExponentVector::from(*g)).collect()).unwrap()
    }

    fn mono(n: i64, m: i64) -> Polynomial {
        Polynomial::monomial(ExponentVector::from([n, m]))
    }

    fn data(d: &ResolutionDiagram) -> Vec<(String, i64, i64)> {
        d.nodes.iter().map(|n| (n.label.clone(), n.n, n.nu)).collect()
    }

    fn edge_labels(d: &ResolutionDiagram) -> Vec<(String, String)> {
        let mut v: Vec<_> = d
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (d.nodes[e.a].label.clone(), d.nodes[e.b].label.clone());
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        v.sort();
        v
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.to_string(), b.to_string())
    }

    #[test]
    fn three_generator_diagram() {
        let d = principalize(&ideal(&[[1, 5], [3, 2], [4, 1]]), &mono(0, 0)).unwrap();
        assert_eq!(
            data(&d),
            vec![
                ("E'".into(), 1, 1),
                ("E".into(), 1, 1),
                ("E_1".into(), 5, 2),
                ("E_2".into(), 7, 3),
                ("E_3".into(), 13, 5)
            ]
        );
        assert_eq!(edge_labels(&d), vec![pair("E", "E_1"), pair("E'", "E_2"), pair("E_1", "E_3"), pair("E_2", "E_3")]);
    }

    #[test]
    fn bench_chain() {
        let d = principalize(&ideal(&[[1, 1], [5, 0]]), &mono(0, 0)).unwrap();
        assert_eq!(
            data(&d),
            vec![
                ("E'".into(), 1, 1),
                ("E_1".into(), 2, 2),
                ("E_2".into(), 3, 3),
                ("E_3".into(), 4, 4),
                ("E_4".into(), 5, 5)
            ]
        );
        assert_eq!(
            edge_labels(&d),
            vec![pair("E'", "E_1"), pair("E_1", "E_2"), pair("E_2", "E_3"), pair("E_3", "E_4")]
        );
        let z = zeta_from_resolution(&d).unwrap();
        assert_eq!(z.poles().locations(), vec![int(-1)]);
        let a = analyze_candidate(&d, &int(-1)).unwrap();
        assert_eq!(a.expected_order, 2);
        assert!(z.laurent_coefficient(&int(-1), 2) > Rational::zero());
    }

    #[test]
    fn bench_chain_with_forms() {
        // nu_k = k + 1 + min{i + k j}
        for (n, m) in [(0, 1), (2, 0), (1, 3), (4, 2)] {
            let d = principalize(&ideal(&[[1, 1], [5, 0]]), &mono(n, m)).unwrap();
            for k in 1..=4 {
                let node = d.node(&format!("E_{k}")).unwrap();
                assert_eq!(node.nu, k + 1 + n + k * m, "{n} {m} {k}");
            }
        }
    }

    #[test]
    fn trivial_principal() {
        let d = principalize(&ideal(&[[1, 0]]), &mono(2, 3)).unwrap();
        assert_eq!(d.blowups, 0);
        assert_eq!(d.nodes.iter().filter(|n| n.n > 0).count(), 1);
        let p = principalize(&ideal(&[[2, 3]]), &mono(0, 0)).unwrap();
        let z = zeta_from_resolution(&p).unwrap();
        let expected =
            ZetaExpression::single(int(1), vec![LinearFactor::new(2, 1).unwrap(), LinearFactor::new(3, 1).unwrap()]);
        assert_eq!(z.normalize(), expected.normalize());
    }

    #[test]
    fn lone_divisor() {
        let d = ResolutionDiagram {
            nodes: vec![Node { label: "E_1".into(), kind: NodeKind::Exceptional, n: 3, nu: 2 }],
            edges: vec![],
            blowups: 1,
        };
        let z = zeta_from_resolution(&d).unwrap();
        let expected = ZetaExpression::single(int(2), vec![LinearFactor::new(3, 2).unwrap()]);
        assert_eq!(z.normalize(), expected.normalize());
        let bad = ResolutionDiagram { edges: vec![Edge { a: 0, b: 3, count: 1 }], ..d };
        assert!(matches!(zeta_from_resolution(&bad), Err(Error::MalformedDiagram(_))));
    }

    #[test]
    fn contributions_sum_to_residue() {
        let d = principalize(&ideal(&[[1, 5], [3, 2], [4, 1]]), &mono(0, 0)).unwrap();
        let z = zeta_from_resolution(&d).unwrap();
        for node in &d.nodes {
            let s0 = node.candidate().unwrap();
            let a = analyze_candidate(&d, &s0).unwrap();
            assert_eq!(a.expected_order, 1);
            assert_eq!(a.residue(), z.laurent_coefficient(&s0, 1));
            for (i, _) in d.nodes.iter().enumerate().filter(|(_, n)| n.candidate() == Some(s0.clone())) {
                assert_eq!(divisor_contribution(&d, i, &s0), direct_contribution(&d, i, &s0));
            }
        }
        assert!(matches!(analyze_candidate(&d, &rat(-1, 7)), Err(Error::NotCandidate(_))));
    }

    #[test]
    fn dot_output() {
        let d = principalize(&ideal(&[[1, 5], [3, 2], [4, 1]]), &mono(0, 0)).unwrap();
        let dot = d.to_dot();
        for label in ["E(1,1)", "E'(1,1)", "E_1(5,2)", "E_2(7,3)", "E_3(13,5)"] {
            assert!(dot.contains(&format!("\"{label}\"")), "{dot}");
        }
        assert_eq!(dot.matches(" -- ").count(), 4);
        let json = serde_json::to_string(&d).unwrap();
        let back: ResolutionDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn rejects_non_monomial_or_wrong_dimension() {
        let g =
            Polynomial::new(2, vec![(int(1), ExponentVector::from([1, 0])), (int(1), ExponentVector::from([0, 1]))])
                .unwrap();
        assert!(principalize(&ideal(&[[1, 1]]), &g).is_err());
        let three = MonomialIdeal::new(vec![ExponentVector::from([1, 1, 1])]).unwrap();
        assert!(principalize(&three, &Polynomial::one(3)).is_err());
    }
}
