//! Term-order deformation graphs and Borel incidence graphs.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::borel::BorelSet;
use crate::deform::{all_deformations, compatible, compose, to_deformation, Deformation};
use crate::enumerate::enumerate_ideals;
use crate::error::{Error, Result};
use crate::hilbert::HilbertPolynomial;
use crate::monomial::Monomial;
use crate::order::TermOrder;

pub const DEFAULT_SUBSET_CAP: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Simple,
    Composed,
}

/// One swap supporting an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Index of the vertex the swap was computed on.
    pub from: usize,
    pub stratum: usize,
    pub alpha: String,
    pub beta: String,
    pub family: Vec<BTreeMap<usize, u32>>,
}

impl Witness {
    fn of(from: usize, d: &Deformation) -> Self {
        Witness {
            from,
            stratum: d.stratum,
            alpha: d.alpha.to_string(),
            beta: d.beta.to_string(),
            family: d.family.compositions.iter().map(|f| f.moves()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub kind: EdgeKind,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub index: usize,
    pub label: String,
    pub generators: Vec<String>,
    pub regularity: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformGraph {
    pub n: usize,
    pub r: u32,
    pub hilbert_polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    pub directed: bool,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub endpoints: Vec<usize>,
    #[serde(skip)]
    sets: Vec<BorelSet>,
}

impl DeformGraph {
    fn new(
        n: usize,
        p: &HilbertPolynomial,
        order: Option<&TermOrder>,
        directed: bool,
        sets: Vec<BorelSet>,
    ) -> Result<Self> {
        let r = p.gotzmann_number()?;
        let vertices = sets
            .iter()
            .enumerate()
            .map(|(index, b)| {
                let ideal = b.saturate();
                Vertex {
                    index,
                    label: ideal.to_string(),
                    generators: ideal.generators().iter().map(Monomial::to_string).collect(),
                    regularity: ideal.regularity(),
                }
            })
            .collect();
        Ok(DeformGraph {
            n,
            r,
            hilbert_polynomial: p.to_string(),
            order: order.map(TermOrder::to_string),
            directed,
            vertices,
            edges: Vec::new(),
            endpoints: Vec::new(),
            sets,
        })
    }

    pub fn sets(&self) -> &[BorelSet] {
        &self.sets
    }

    pub fn index_of(&self, b: &BorelSet) -> Option<usize> {
        self.sets.iter().position(|s| s == b)
    }

    pub fn has_edge(&self, a: usize, b: usize, kind: Option<EdgeKind>) -> bool {
        self.edges.iter().any(|e| {
            kind.is_none_or(|k| e.kind == k)
                && ((e.source == a && e.target == b) || (!self.directed && e.source == b && e.target == a))
        })
    }

    /// Successor along the unique out-edge of a directed graph.
    pub fn successor(&self, v: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.source == v).map(|e| e.target)
    }

    /// Steps from `v` to the endpoint reached by following out-edges.
    pub fn steps_to_endpoint(&self, v: usize) -> Option<(usize, usize)> {
        let mut current = v;
        for steps in 0..=self.vertices.len() {
            match self.successor(current) {
                None => return Some((current, steps)),
                Some(next) => current = next,
            }
        }
        None
    }
}

/// A vertex and the members of one of its families, each with the indices
/// of the swaps applied to reach it.
type Family = (usize, Vec<(BorelSet, Vec<usize>)>);

fn lookup(index: &HashMap<&BorelSet, usize>, b: &BorelSet) -> Result<usize> {
    index.get(b).copied().ok_or_else(|| {
        Error::Invariant(format!(
            "deformation target {} is not an enumerated ideal",
            b.saturate()
        ))
    })
}

/// Vertices are all Borel sets of the scheme; each vertex points to its
/// deformation for `order`, endpoints have no out-edge.
pub fn deformation_graph(n: usize, p: &HilbertPolynomial, order: &TermOrder) -> Result<DeformGraph> {
    order.check_num_vars(n + 1)?;
    let sets = enumerate_ideals(n, p)?;
    let moves: Vec<Option<Deformation>> = sets
        .par_iter()
        .map(|b| to_deformation(b, order))
        .collect::<Result<_>>()?;
    let mut g = DeformGraph::new(n, p, Some(order), true, sets.clone())?;
    let index: HashMap<&BorelSet, usize> = sets.iter().enumerate().map(|(i, b)| (b, i)).collect();
    for (v, d) in moves.iter().enumerate() {
        match d {
            None => g.endpoints.push(v),
            Some(d) => {
                let target = lookup(&index, &d.target)?;
                g.edges.push(Edge {
                    source: v,
                    target,
                    kind: EdgeKind::Simple,
                    witnesses: vec![Witness::of(v, d)],
                });
            }
        }
    }
    Ok(g)
}

/// Subsets of `0..len` of size `2..=cap` that are pairwise compatible.
fn pairwise_cliques(compat: &[Vec<bool>], cap: usize) -> Vec<Vec<usize>> {
    fn grow(compat: &[Vec<bool>], cap: usize, current: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
        if current.len() >= 2 {
            out.push(current.clone());
        }
        if current.len() == cap {
            return;
        }
        for next in start..compat.len() {
            if current.iter().all(|&c| compat[c][next]) {
                current.push(next);
                grow(compat, cap, current, next + 1, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(compat, cap, &mut Vec::new(), 0, &mut out);
    out
}

/// Simple edges from every single deformation; composed edges join any two
/// members of the family spanned by a compatible set of at most `cap`
/// deformations of a vertex, unless they are already simply adjacent.
pub fn incidence_graph(n: usize, p: &HilbertPolynomial, cap: usize) -> Result<DeformGraph> {
    let sets = enumerate_ideals(n, p)?;
    let per_vertex: Vec<Vec<Deformation>> = sets.par_iter().map(all_deformations).collect::<Result<_>>()?;
    let mut g = DeformGraph::new(n, p, None, false, sets.clone())?;
    let index: HashMap<&BorelSet, usize> = sets.iter().enumerate().map(|(i, b)| (b, i)).collect();

    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut simple: HashSet<(usize, usize)> = HashSet::new();
    for (v, defs) in per_vertex.iter().enumerate() {
        for d in defs {
            let t = lookup(&index, &d.target)?;
            if t == v {
                return Err(Error::Invariant(format!("deformation of vertex {v} is a self-loop")));
            }
            if simple.insert(key(v, t)) {
                g.edges.push(Edge {
                    source: v,
                    target: t,
                    kind: EdgeKind::Simple,
                    witnesses: vec![Witness::of(v, d)],
                });
            }
        }
    }

    let families: Vec<Vec<Family>> = per_vertex
        .par_iter()
        .enumerate()
        .map(|(v, defs)| -> Result<Vec<Family>> {
            let mut compat = vec![vec![false; defs.len()]; defs.len()];
            for a in 0..defs.len() {
                for b in a + 1..defs.len() {
                    let ok = compatible(&[defs[a].clone(), defs[b].clone()])?;
                    compat[a][b] = ok;
                    compat[b][a] = ok;
                }
            }
            let mut out = Vec::new();
            for subset in pairwise_cliques(&compat, cap) {
                let chosen: Vec<Deformation> = subset.iter().map(|&i| defs[i].clone()).collect();
                if !compatible(&chosen)? {
                    continue;
                }
                let s = chosen.len();
                let mut members = Vec::with_capacity(1 << s);
                for mask in 0u32..(1 << s) {
                    let choices: Vec<bool> = (0..s).map(|k| mask >> k & 1 == 1).collect();
                    let used = subset
                        .iter()
                        .zip(&choices)
                        .filter(|(_, &c)| c)
                        .map(|(&i, _)| i)
                        .collect();
                    members.push((compose(&chosen, &choices)?, used));
                }
                out.push((v, members));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    // any two members of a family lie on a common rational curve
    let mut composed: HashSet<(usize, usize)> = HashSet::new();
    for (v, members) in families.into_iter().flatten() {
        let located = members
            .into_iter()
            .map(|(m, used)| Ok((lookup(&index, &m)?, used)))
            .collect::<Result<Vec<(usize, Vec<usize>)>>>()?;
        for (x, (a, used_a)) in located.iter().enumerate() {
            for (b, used_b) in &located[x + 1..] {
                let k = key(*a, *b);
                if a == b || simple.contains(&k) || !composed.insert(k) {
                    continue;
                }
                let differing = used_a
                    .iter()
                    .filter(|i| !used_b.contains(i))
                    .chain(used_b.iter().filter(|i| !used_a.contains(i)));
                g.edges.push(Edge {
                    source: *a,
                    target: *b,
                    kind: EdgeKind::Composed,
                    witnesses: differing.map(|&i| Witness::of(v, &per_vertex[v][i])).collect(),
                });
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub is_tree: bool,
    pub root: Option<usize>,
    pub height: Option<usize>,
    pub components: usize,
    pub endpoints: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Weak components, tree test, root and height (largest distance to the root).
pub fn analyze(g: &DeformGraph) -> Analysis {
    let v = g.vertices.len();
    let mut parent: Vec<usize> = (0..v).collect();
    for e in &g.edges {
        let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
        parent[a] = b;
    }
    let components = (0..v).filter(|&x| find(&mut parent, x) == x).count();
    let is_tree = components == 1 && g.edges.len() + 1 == v;
    let root = match (g.directed, g.endpoints.as_slice()) {
        (true, [only]) if is_tree => Some(*only),
        (false, _) if v == 1 => Some(0),
        _ => None,
    };
    let height = root.map(|root| {
        let mut dist = vec![usize::MAX; v];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for e in &g.edges {
                let next = if e.target == x {
                    e.source
                } else if !g.directed && e.source == x {
                    e.target
                } else {
                    continue;
                };
                if dist[next] == usize::MAX {
                    dist[next] = dist[x] + 1;
                    queue.push_back(next);
                }
            }
        }
        dist.into_iter().filter(|&d| d != usize::MAX).max().unwrap_or(0)
    });
    Analysis {
        is_tree,
        root,
        height,
        components,
        endpoints: g.endpoints.clone(),
    }
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(g: &DeformGraph) -> String {
    let (keyword, arrow) = if g.directed { ("digraph", "->") } else { ("graph", "--") };
    let boxed: HashSet<usize> = g.endpoints.iter().copied().collect();
    let mut out = String::new();
    let _ = writeln!(out, "{keyword} G {{");
    let _ = writeln!(out, "  node [shape=ellipse];");
    for v in &g.vertices {
        let shape = if boxed.contains(&v.index) { ", shape=box" } else { "" };
        let _ = writeln!(out, "  v{} [label=\"{}\"{}];", v.index, escape(&v.label), shape);
    }
    for e in &g.edges {
        let style = match e.kind {
            EdgeKind::Simple => "",
            EdgeKind::Composed => " [style=dashed]",
        };
        let _ = writeln!(out, "  v{} {} v{}{};", e.source, arrow, e.target, style);
    }
    out.push_str("}\n");
    out
}

pub fn to_json(g: &DeformGraph) -> String {
    serde_json::to_string_pretty(g).expect("graph serialization cannot fail")
}
