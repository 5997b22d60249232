//! Semigroup conditions on essential values, classification of augmented
//! dual graphs, witness key forms, and the graphs themselves.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::keyforms::{essential_key_values, minimal_multiplier, represent_int, EssentialValues, KeyFormSeq, KeyStep};
use crate::puiseux::{int, FormalPuiseuxPairs};
use crate::semigroup::{in_group, Semigroup};

fn require_positive(omegas: &EssentialValues) -> Result<()> {
    if let Some(k) = omegas.values().iter().position(|&w| w <= 0) {
        return Err(Error::NotACompactification(format!(
            "omega_{k} = {} <= 0",
            omegas.get(k)
        )));
    }
    Ok(())
}

fn check_range(pairs: &FormalPuiseuxPairs, k: usize) -> Result<()> {
    if k == 0 || k > pairs.l() {
        return Err(Error::InvalidInput(format!(
            "k = {k} outside 1..={}",
            pairs.l()
        )));
    }
    Ok(())
}

/// `p_k omega_k` lies in the semigroup generated by `omega_0..omega_{k-1}`.
pub fn s1(omegas: &EssentialValues, pairs: &FormalPuiseuxPairs, k: usize) -> Result<bool> {
    check_range(pairs, k)?;
    require_positive(omegas)?;
    let target = pairs.p(k) * omegas.get(k);
    Ok(Semigroup::new(&omegas.values()[..k]).contains(target))
}

/// Least integer in `(omega_{k+1}, p_k omega_k)` that lies in the group but
/// not in the semigroup generated by `omega_0..omega_k`; `None` when the
/// condition holds.
pub fn s2(omegas: &EssentialValues, pairs: &FormalPuiseuxPairs, k: usize) -> Result<Option<i64>> {
    check_range(pairs, k)?;
    require_positive(omegas)?;
    let gens = &omegas.values()[..=k];
    let lo = omegas.get(k + 1);
    let hi = pairs.p(k) * omegas.get(k);
    if hi <= lo + 1 {
        return Ok(None);
    }
    let table = Semigroup::new(gens).nonnegative_table(hi);
    Ok((lo + 1..hi).find(|&t| in_group(t, gens) && !table[t as usize]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    AlgebraicOnly,
    NonAlgebraicOnly,
    Both,
    NotACompactification,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::AlgebraicOnly => "AlgebraicOnly",
            GraphKind::NonAlgebraicOnly => "NonAlgebraicOnly",
            GraphKind::Both => "Both",
            GraphKind::NotACompactification => "NotACompactification",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub kind: GraphKind,
    pub omegas: EssentialValues,
    /// Indices `k` where S1 fails.
    pub s1_failures: Vec<usize>,
    /// Indices `k` where S2 fails, each with its least violating integer.
    pub s2_failures: Vec<(usize, i64)>,
}

fn require_normal_form(pairs: &FormalPuiseuxPairs) -> Result<()> {
    if !pairs.is_normal_form() {
        return Err(Error::NotNormalForm(format!(
            "need q_1 < p_1 and (l = 0 or q_1 > 1), got {pairs}"
        )));
    }
    Ok(())
}

/// Which kinds of primitive compactification have the dual graph determined
/// by `pairs`.
pub fn classify(pairs: &FormalPuiseuxPairs) -> Result<GraphClass> {
    require_normal_form(pairs)?;
    let omegas = essential_key_values(pairs);
    if omegas.last() <= 0 {
        return Ok(GraphClass {
            kind: GraphKind::NotACompactification,
            omegas,
            s1_failures: Vec::new(),
            s2_failures: Vec::new(),
        });
    }
    let mut s1_failures = Vec::new();
    let mut s2_failures = Vec::new();
    for k in 1..=pairs.l() {
        if !s1(&omegas, pairs, k)? {
            s1_failures.push(k);
        }
        if let Some(t) = s2(&omegas, pairs, k)? {
            s2_failures.push((k, t));
        }
    }
    let kind = match (s1_failures.is_empty(), s2_failures.is_empty()) {
        (true, true) => GraphKind::AlgebraicOnly,
        (true, false) => GraphKind::Both,
        (false, _) => GraphKind::NonAlgebraicOnly,
    };
    Ok(GraphClass {
        kind,
        omegas,
        s1_failures,
        s2_failures,
    })
}

/// `p_k omega_k = sum beta'_{k,j} omega_j` over `j < k`.
fn beta_prime(omegas: &EssentialValues, pairs: &FormalPuiseuxPairs, k: usize) -> Result<Vec<i64>> {
    let bounds: Vec<i64> = (1..k).map(|j| pairs.p(j)).collect();
    represent_int(pairs.p(k) * omegas.get(k), &omegas.values()[..k], &bounds)
        .map(|r| r.betas)
        .map_err(|e| Error::Internal(format!("beta'_{k}: {e}")))
}

/// `g_0 = x`, `g_1 = y`, `g_{k+1} = g_k^{p_k} - prod_{j<k} g_j^{beta'_{k,j}}`.
/// Forms past an S1 failure carry negative powers of `x`.
fn g0_sequence(pairs: &FormalPuiseuxPairs) -> Result<KeyFormSeq> {
    let omegas = essential_key_values(pairs);
    let mut forms = vec![LaurentPoly::x(), LaurentPoly::y()];
    let mut steps = Vec::new();
    for k in 1..=pairs.l() {
        let betas = beta_prime(&omegas, pairs, k)?;
        let step = KeyStep {
            alpha: pairs.p(k),
            theta: int(1),
            exponents: betas,
        };
        forms.push(step.apply(&forms, k));
        steps.push(step);
    }
    KeyFormSeq::from_parts(forms, omegas.values().to_vec(), steps)
}

fn require_compactification(pairs: &FormalPuiseuxPairs) -> Result<GraphClass> {
    let class = classify(pairs)?;
    if class.kind == GraphKind::NotACompactification {
        return Err(Error::NotACompactification(format!(
            "omega_(l+1) = {} <= 0",
            class.omegas.last()
        )));
    }
    Ok(class)
}

/// Key forms of an algebraic compactification with the given graph.
pub fn algebraic_witness(pairs: &FormalPuiseuxPairs) -> Result<KeyFormSeq> {
    let class = require_compactification(pairs)?;
    if let Some(&k) = class.s1_failures.first() {
        return Err(Error::Precondition(format!(
            "S1 fails at k = {k}; the graph has no algebraic compactification"
        )));
    }
    g0_sequence(pairs)
}

/// Key forms of a non-algebraic compactification with the given graph.
pub fn nonalgebraic_witness(pairs: &FormalPuiseuxPairs) -> Result<KeyFormSeq> {
    let class = require_compactification(pairs)?;
    if !class.s1_failures.is_empty() {
        return g0_sequence(pairs);
    }
    let Some(&(k, tilde)) = class.s2_failures.first() else {
        return Err(Error::Precondition("graph is AlgebraicOnly".into()));
    };
    let omegas = &class.omegas;
    let bounds: Vec<i64> = (1..=k).map(|j| pairs.p(j)).collect();
    let tilde_beta = represent_int(tilde, &omegas.values()[..=k], &bounds)
        .map_err(|e| Error::Internal(format!("S2 witness {tilde}: {e}")))?
        .betas;
    if tilde_beta[0] >= 0 {
        return Err(Error::Internal(format!(
            "S2 witness {tilde} has a nonnegative representation"
        )));
    }

    let g0 = g0_sequence(pairs)?;
    let mut forms: Vec<LaurentPoly> = g0.forms()[..=k + 1].to_vec();
    let mut steps: Vec<KeyStep> = g0.steps()[..k].to_vec();
    let inserted = KeyStep {
        alpha: 1,
        theta: int(1),
        exponents: tilde_beta,
    };
    forms.push(inserted.apply(&forms, k + 1));
    steps.push(inserted);
    for i in k + 3..=pairs.l() + 2 {
        let b = beta_prime(omegas, pairs, i - 2)?;
        // indices 0..=k keep their exponents, k+1 is skipped, j >= k+2 takes b[j-1]
        let mut exponents = b[..=k].to_vec();
        exponents.push(0);
        exponents.extend((k + 2..=i - 2).map(|j| b[j - 1]));
        let step = KeyStep {
            alpha: pairs.p(i - 2),
            theta: int(1),
            exponents,
        };
        forms.push(step.apply(&forms, i - 1));
        steps.push(step);
    }
    let mut values = omegas.values()[..=k].to_vec();
    values.push(tilde);
    values.extend_from_slice(&omegas.values()[k + 1..]);
    KeyFormSeq::from_parts(forms, values, steps)
}

/// Inverts the essential value recursion: `p_k` is the least multiplier of
/// `omega_k` into the group of the earlier values, and `q_k` follows.
pub fn pairs_from_essential_values(omegas: &EssentialValues) -> Result<FormalPuiseuxPairs> {
    let w = omegas.values();
    if w.len() < 2 || w[0] <= 0 {
        return Err(Error::InvalidInput(format!("bad essential values {w:?}")));
    }
    let l = w.len() - 2;
    let mut ps: Vec<i64> = (1..=l).map(|k| minimal_multiplier(w[k], &w[..k])).collect();
    let prod: i64 = ps.iter().product();
    if prod == 0 || w[0] % prod != 0 {
        return Err(Error::InvalidInput(format!("bad essential values {w:?}")));
    }
    ps.push(w[0] / prod);
    let mut pairs = Vec::with_capacity(l + 1);
    let (mut p_prev, mut q_prev) = (1i64, 1i64);
    for k in 1..=l + 1 {
        let tail: i64 = ps[k..].iter().product();
        let diff = w[k] - p_prev * w[k - 1];
        if diff % tail != 0 {
            return Err(Error::InvalidInput(format!("bad essential values {w:?}")));
        }
        let q = q_prev * ps[k - 1] + diff / tail;
        pairs.push((q, ps[k - 1]));
        p_prev = ps[k - 1];
        q_prev = q;
    }
    FormalPuiseuxPairs::new(pairs)
}

/// `a/b = c_0 - 1/(c_1 - 1/(... - 1/c_t))` with `c_j >= 2` for `j >= 1`.
pub fn hj_expansion(a: i64, b: i64) -> Result<Vec<i64>> {
    if a <= 0 || b <= 0 {
        return Err(Error::InvalidInput(format!(
            "continued fraction of {a}/{b} needs positive terms"
        )));
    }
    let (mut a, mut b) = (a, b);
    let mut out = Vec::new();
    loop {
        let c = (a + b - 1) / b;
        out.push(c);
        let rem = c * b - a;
        if rem == 0 {
            return Ok(out);
        }
        (a, b) = (b, rem);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mark {
    None,
    L,
    Estar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub name: String,
    pub weight: i64,
    pub mark: Mark,
}

/// Weighted dual graph with the curve at infinity of the plane marked `L`
/// and that of the compactification marked `Estar`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, weight: i64, mark: Mark) -> usize {
        let id = self.vertices.len();
        self.vertices.push(Vertex {
            id,
            name: name.into(),
            weight,
            mark,
        });
        id
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.push((a.min(b), a.max(b)));
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.weight).collect()
    }

    pub fn vertex(&self, name: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.name == name)
    }

    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == id, b == id) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn marked(&self, mark: Mark) -> Vec<&Vertex> {
        self.vertices.iter().filter(|v| v.mark == mark).collect()
    }

    /// Connected with one edge fewer than vertices.
    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Copy without the vertices failing `keep`, with ids renumbered.
    pub fn retain(&self, keep: impl Fn(&Vertex) -> bool) -> DualGraph {
        let mut map = vec![None; self.vertices.len()];
        let mut out = DualGraph::new();
        for v in &self.vertices {
            if keep(v) {
                map[v.id] = Some(out.add_vertex(v.name.clone(), v.weight, v.mark));
            }
        }
        for &(a, b) in &self.edges {
            if let (Some(a), Some(b)) = (map[a], map[b]) {
                out.add_edge(a, b);
            }
        }
        out
    }
}

fn q_primes(pairs: &FormalPuiseuxPairs, blocks: usize) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(blocks);
    let mut prod = 1i64;
    let mut prev_tilde = 0i64;
    for i in 1..=blocks {
        let p = pairs.p(i);
        prod *= p;
        let tilde = prod - pairs.q(i);
        let q_prime = if i == 1 { tilde } else { tilde - prev_tilde * p };
        if q_prime <= 0 {
            return Err(Error::InvalidInput(format!("q'_{i} = {q_prime} is not positive")));
        }
        out.push(q_prime);
        prev_tilde = tilde;
    }
    Ok(out)
}

/// Augmented and marked dual graph of the minimal plane-dominating resolution
/// of the primitive compactification with these formal pairs.
pub fn resolution_graph(pairs: &FormalPuiseuxPairs) -> Result<DualGraph> {
    require_normal_form(pairs)?;
    let last = essential_key_values(pairs).last();
    if last <= 0 {
        return Err(Error::NotACompactification(format!(
            "omega_(l+1) = {last} <= 0"
        )));
    }
    resolution_graph_unchecked(pairs)
}

/// [`resolution_graph`] without the positivity test on `omega_{l+1}`; the
/// result is then a graph no compactification realizes.
pub fn resolution_graph_unchecked(pairs: &FormalPuiseuxPairs) -> Result<DualGraph> {
    require_normal_form(pairs)?;
    let l = pairs.l();
    let p_last = pairs.p(l + 1);
    let (blocks, e) = if p_last > 1 { (l + 1, 1) } else { (l, 2) };
    if blocks == 0 {
        return Err(Error::InvalidInput(
            "a single integer pair has no singular graph".into(),
        ));
    }
    let q_prime = q_primes(pairs, blocks)?;
    let mut u = Vec::with_capacity(blocks);
    let mut v = Vec::with_capacity(blocks);
    for i in 0..blocks {
        u.push(hj_expansion(pairs.p(i + 1), q_prime[i])?);
        v.push(hj_expansion(q_prime[i], pairs.p(i + 1))?);
    }

    let mut g = DualGraph::new();
    let mut prev = g.add_vertex("L", 1 - u[0][0], Mark::L);
    let mut centers = Vec::with_capacity(blocks);
    for i in 0..blocks {
        let b = i + 1;
        for (j, &w) in u[i].iter().enumerate().skip(1) {
            let id = g.add_vertex(format!("B{b}T{j}"), -w, Mark::None);
            g.add_edge(prev, id);
            prev = id;
        }
        let center = if i + 1 < blocks {
            g.add_vertex(format!("B{b}C"), -u[i + 1][0] - 1, Mark::None)
        } else if e == 1 {
            g.add_vertex("Estar", -1, Mark::Estar)
        } else {
            g.add_vertex(format!("B{b}C"), -2, Mark::None)
        };
        g.add_edge(prev, center);
        let mut below = center;
        for j in (1..v[i].len()).rev() {
            let id = g.add_vertex(format!("B{b}P{j}"), -v[i][j], Mark::None);
            g.add_edge(below, id);
            below = id;
        }
        centers.push(center);
        prev = center;
    }
    if e == 2 {
        let tail = pairs.q(l) - pairs.q(l + 1) - 1;
        for j in 1..=tail {
            let id = g.add_vertex(format!("Tail{j}"), -2, Mark::None);
            g.add_edge(prev, id);
            prev = id;
        }
        let id = g.add_vertex("Estar", -1, Mark::Estar);
        g.add_edge(prev, id);
    }
    Ok(g)
}

/// Removes `Estar` and then blows down `(-1)`-vertices of valence at most
/// two until none is left.
pub fn minimal_resolution(graph: &DualGraph) -> DualGraph {
    let mut g = graph.retain(|v| v.mark != Mark::Estar);
    while let Some(id) = g
        .vertices
        .iter()
        .find(|v| v.weight == -1 && g.neighbors(v.id).len() <= 2)
        .map(|v| v.id)
    {
        let nbrs = g.neighbors(id);
        for &n in &nbrs {
            g.vertices[n].weight += 1;
        }
        if let [a, b] = nbrs[..] {
            g.add_edge(a, b);
        }
        g = g.retain(|v| v.id != id);
    }
    g
}

/// Symmetric intersection matrix in vertex order; `exclude_estar` drops the
/// `Estar` row and column.
pub fn intersection_matrix(graph: &DualGraph, exclude_estar: bool) -> Vec<Vec<i64>> {
    let kept: Vec<usize> = graph
        .vertices
        .iter()
        .filter(|v| !(exclude_estar && v.mark == Mark::Estar))
        .map(|v| v.id)
        .collect();
    let index = |id: usize| kept.iter().position(|&k| k == id);
    let mut m = vec![vec![0i64; kept.len()]; kept.len()];
    for (i, &id) in kept.iter().enumerate() {
        m[i][i] = graph.vertices[id].weight;
    }
    for &(a, b) in &graph.edges {
        if let (Some(i), Some(j)) = (index(a), index(b)) {
            m[i][j] += 1;
            m[j][i] += 1;
        }
    }
    m
}

/// Exact test via the signs of leading principal minors, which fraction-free
/// elimination produces as its successive pivots.
pub fn is_negative_definite(matrix: &[Vec<i64>]) -> bool {
    let n = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let minor = &a[k][k];
        // sign of the (k+1)-th leading minor must be (-1)^(k+1)
        let want_negative = k % 2 == 0;
        if minor.is_zero() || minor.is_negative() != want_negative {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    true
}

/// Graphviz rendering with `L` boxed and `Estar` double-circled.
pub fn export_dot(graph: &DualGraph) -> Result<String> {
    if graph.is_empty() {
        return Err(Error::InvalidInput("cannot render an empty graph".into()));
    }
    let mut out = String::from("graph dual {\n  node [shape=circle];\n");
    for v in &graph.vertices {
        let shape = match v.mark {
            Mark::None => String::new(),
            Mark::L => ", shape=box".into(),
            Mark::Estar => ", shape=doublecircle".into(),
        };
        writeln!(out, "  {} [label=\"{}\\n{}\"{shape}];", v.name, v.name, v.weight)
            .expect("writing to a String");
    }
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    edges.extend(graph.edges.iter().copied());
    for (a, b) in edges {
        writeln!(
            out,
            "  {} -- {};",
            graph.vertices[a].name, graph.vertices[b].name
        )
        .expect("writing to a String");
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keyforms::verify_key_properties;

    fn pairs(p: &[(i64, i64)]) -> FormalPuiseuxPairs {
        FormalPuiseuxPairs::new(p.to_vec()).unwrap()
    }

    fn ev(v: &[i64]) -> EssentialValues {
        EssentialValues::new(v.to_vec())
    }

    #[test]
    fn semigroup_conditions() {
        let pr = pairs(&[(2, 5), (-6, 1)]);
        assert!(s1(&ev(&[5, 2, 2]), &pr, 1).unwrap());
        assert_eq!(s2(&ev(&[5, 2, 2]), &pr, 1).unwrap(), Some(3));
        assert!(s1(&ev(&[5, 2, 0]), &pr, 1).is_err());
        assert!(s1(&ev(&[5, 2, 2]), &pr, 2).is_err());
        // empty interval
        let pr = pairs(&[(2, 3), (-1, 1)]);
        assert_eq!(s2(&ev(&[3, 2, 3]), &pr, 1).unwrap(), None);
    }

    #[test]
    fn classify_examples() {
        let c = classify(&pairs(&[(2, 5), (-6, 1)])).unwrap();
        assert_eq!(c.kind, GraphKind::Both);
        assert_eq!(c.s2_failures, vec![(1, 3)]);
        assert_eq!(
            classify(&pairs(&[(3, 7)])).unwrap().kind,
            GraphKind::AlgebraicOnly
        );
        assert_eq!(
            classify(&pairs(&[(2, 5), (-20, 1)])).unwrap().kind,
            GraphKind::NotACompactification
        );
        assert!(matches!(
            classify(&pairs(&[(7, 5)])),
            Err(Error::NotNormalForm(_))
        ));
        assert!(matches!(
            classify(&pairs(&[(1, 5), (-1, 1)])),
            Err(Error::NotNormalForm(_))
        ));
    }

    #[test]
    fn witnesses_for_the_both_graph() {
        let pr = pairs(&[(2, 5), (-6, 1)]);
        let alg = algebraic_witness(&pr).unwrap();
        let y5x2 = &LaurentPoly::y().pow(5) - &LaurentPoly::x().pow(2);
        assert_eq!(alg.forms(), &[LaurentPoly::x(), LaurentPoly::y(), y5x2.clone()]);
        assert!(verify_key_properties(&alg, None).is_ok());

        let non = nonalgebraic_witness(&pr).unwrap();
        let tail = LaurentPoly::monomial(int(1), -1, 4);
        assert_eq!(non.forms()[3], &y5x2 - &tail);
        assert_eq!(non.values(), &[5, 2, 3, 2]);
        assert_eq!(non.essential_values().values(), &[5, 2, 2]);
        let report = verify_key_properties(&non, None);
        assert!(report.is_ok(), "{:?}", report.violations);
    }

    #[test]
    fn s1_failure_witness() {
        // p1 = 3, q1 = 2, p2 = 2: q2 = 1 - 8 = -7, q3 = -8
        let pr = pairs(&[(2, 3), (-7, 2), (-8, 1)]);
        let c = classify(&pr).unwrap();
        assert_eq!(c.omegas.values(), &[6, 4, 1, 1]);
        assert_eq!(c.kind, GraphKind::NonAlgebraicOnly);
        assert_eq!(c.s1_failures, vec![2]);
        assert!(algebraic_witness(&pr).is_err());
        let w = nonalgebraic_witness(&pr).unwrap();
        assert_eq!(w.first_non_polynomial(), Some(3));
        assert!(verify_key_properties(&w, None).is_ok());
    }

    #[test]
    fn algebraic_only_has_no_nonalgebraic_witness() {
        let pr = pairs(&[(2, 5), (-3, 1)]);
        assert!(matches!(
            nonalgebraic_witness(&pr),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pairs_round_trip() {
        for p in [vec![(2, 5), (-6, 1)], vec![(3, 7)], vec![(2, 3), (-7, 2), (-8, 1)]] {
            let pr = pairs(&p);
            let back = pairs_from_essential_values(&essential_key_values(&pr)).unwrap();
            assert_eq!(back, pr);
        }
    }

    #[test]
    fn hj_examples() {
        assert_eq!(hj_expansion(5, 3).unwrap(), vec![2, 3]);
        assert_eq!(hj_expansion(3, 5).unwrap(), vec![1, 3, 2]);
        assert_eq!(hj_expansion(7, 1).unwrap(), vec![7]);
        assert!(hj_expansion(0, 1).is_err());
    }

    #[test]
    fn figure_six_graph() {
        let g = resolution_graph(&pairs(&[(2, 5), (-6, 1)])).unwrap();
        let names: Vec<&str> = g.vertices().iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names[..5], ["L", "B1T1", "B1C", "B1P2", "B1P1"]);
        assert_eq!(
            g.weights(),
            vec![-1, -3, -2, -2, -3, -2, -2, -2, -2, -2, -2, -2, -1]
        );
        assert!(g.is_tree());
        assert_eq!(g.neighbors(2), vec![1, 3, 5]);
        assert!(is_negative_definite(&intersection_matrix(&g, true)));

        let min = minimal_resolution(&g);
        assert_eq!(min.len(), 11);
        assert_eq!(min.vertex("B1T1").unwrap().weight, -2);
    }

    #[test]
    fn single_pair_graph() {
        let g = resolution_graph(&pairs(&[(2, 3)])).unwrap();
        // q' = 1: u = [3], v = [1, 2, 2]
        assert_eq!(g.weights(), vec![-2, -1, -2, -2]);
        assert_eq!(g.marked(Mark::Estar)[0].name, "Estar");
        assert!(g.is_tree());
    }

    #[test]
    fn definiteness() {
        assert!(is_negative_definite(&[vec![-1]]));
        assert!(!is_negative_definite(&[vec![0]]));
        assert!(!is_negative_definite(&[vec![-1, 1], vec![1, -1]]));
        assert!(is_negative_definite(&[vec![-2, 1], vec![1, -2]]));
    }

    #[test]
    fn dot_output() {
        let g = resolution_graph(&pairs(&[(2, 3)])).unwrap();
        let dot = export_dot(&g).unwrap();
        assert!(dot.contains("L [label=\"L\\n-2\", shape=box];"));
        assert!(dot.contains("Estar [label=\"Estar\\n-1\", shape=doublecircle];"));
        assert_eq!(dot, export_dot(&g).unwrap());
        assert!(export_dot(&DualGraph::new()).is_err());
    }
}
