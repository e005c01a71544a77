//! Finite fragments of translation quivers and window-relative shape recognition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::quiver::{Quiver, ShapeClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArWindowError {
    #[error("vertex index {0} out of range")]
    NoVertex(usize),
    #[error("`{0}` already has a translate")]
    TauDefined(String),
    #[error("`{0}` is already the translate of another vertex")]
    TauPreimage(String),
    #[error("the window is disconnected")]
    Disconnected,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VertexFlags {
    pub projective: bool,
    pub injective: bool,
    pub perfect: bool,
    pub simple_complex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArVertex {
    pub id: String,
    /// Dimension vector when the object is materialized.
    pub dims: Option<Vec<usize>>,
    /// Symbolic description for objects that are not materialized.
    pub tag: Option<String>,
    pub flags: VertexFlags,
}

impl ArVertex {
    pub fn new(id: impl Into<String>) -> Self {
        ArVertex {
            id: id.into(),
            dims: None,
            tag: None,
            flags: VertexFlags::default(),
        }
    }
    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = Some(dims);
        self
    }
    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = Some(tag.into());
        self
    }
    pub fn with_flags(mut self, flags: VertexFlags) -> Self {
        self.flags = flags;
        self
    }
}

/// A translation-quiver fragment: arrows with multiplicities, a partial injective translation,
/// and frontier marks on vertices whose neighbourhoods are incomplete.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArWindow {
    vertices: Vec<ArVertex>,
    arrows: BTreeMap<(usize, usize), usize>,
    tau: BTreeMap<usize, usize>,
    tau_inv: BTreeMap<usize, usize>,
    frontier: BTreeSet<usize>,
}

impl ArWindow {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: ArVertex) -> usize {
        self.vertices.push(v);
        self.vertices.len() - 1
    }

    fn check(&self, v: usize) -> Result<(), ArWindowError> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(ArWindowError::NoVertex(v))
        }
    }

    /// Adds `mult` parallel arrows `from -> to`.
    pub fn add_arrow(&mut self, from: usize, to: usize, mult: usize) -> Result<(), ArWindowError> {
        self.check(from)?;
        self.check(to)?;
        if mult > 0 {
            *self.arrows.entry((from, to)).or_insert(0) += mult;
        }
        Ok(())
    }

    /// Records `tau(v) = tv`.
    pub fn set_tau(&mut self, v: usize, tv: usize) -> Result<(), ArWindowError> {
        self.check(v)?;
        self.check(tv)?;
        if self.tau.contains_key(&v) {
            return Err(ArWindowError::TauDefined(self.vertices[v].id.clone()));
        }
        if self.tau_inv.contains_key(&tv) {
            return Err(ArWindowError::TauPreimage(self.vertices[tv].id.clone()));
        }
        self.tau.insert(v, tv);
        self.tau_inv.insert(tv, v);
        Ok(())
    }

    pub fn mark_frontier(&mut self, v: usize) {
        self.frontier.insert(v);
    }

    pub fn vertices(&self) -> &[ArVertex] {
        &self.vertices
    }
    pub fn vertex(&self, v: usize) -> &ArVertex {
        &self.vertices[v]
    }
    pub fn vertex_mut(&mut self, v: usize) -> &mut ArVertex {
        &mut self.vertices[v]
    }
    pub fn len(&self) -> usize {
        self.vertices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
    pub fn position(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.arrows.iter().map(|(&(a, b), &m)| (a, b, m))
    }
    pub fn arrow_mult(&self, from: usize, to: usize) -> usize {
        self.arrows.get(&(from, to)).copied().unwrap_or(0)
    }
    pub fn tau(&self, v: usize) -> Option<usize> {
        self.tau.get(&v).copied()
    }
    pub fn tau_inverse(&self, v: usize) -> Option<usize> {
        self.tau_inv.get(&v).copied()
    }
    pub fn frontier(&self) -> &BTreeSet<usize> {
        &self.frontier
    }
    pub fn is_frontier(&self, v: usize) -> bool {
        self.frontier.contains(&v)
    }

    pub fn predecessors(&self, v: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|(&(_, b), _)| b == v).map(|(&(a, _), &m)| (a, m)).collect()
    }
    pub fn successors(&self, v: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|(&(a, _), _)| a == v).map(|(&(_, b), &m)| (b, m)).collect()
    }

    /// Vertices grouped by weak connectivity of arrows and translation edges.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in self.arrows.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for (&a, &b) in &self.tau {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The translation orbits, each listed from its left end.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for s in 0..self.vertices.len() {
            if seen[s] {
                continue;
            }
            // Walk left to the start, guarding against periodic orbits.
            let mut start = s;
            while let Some(t) = self.tau(start) {
                if t == s {
                    break;
                }
                start = t;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut cur = start;
            while let Some(next) = self.tau_inverse(cur) {
                if seen[next] {
                    break;
                }
                seen[next] = true;
                orbit.push(next);
                cur = next;
            }
            out.push(orbit);
        }
        out
    }

    /// Least `k >= 1` with `tau^k v = v`, if any.
    pub fn tau_period(&self, v: usize) -> Option<usize> {
        let mut cur = v;
        for k in 1..=self.vertices.len() {
            cur = self.tau(cur)?;
            if cur == v {
                return Some(k);
            }
        }
        None
    }

    /// Broken meshes: arrow multisets that disagree around `tau`, or dimension vectors that are not additive.
    pub fn mesh_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&m, &tm) in &self.tau {
            let into: BTreeMap<usize, usize> = self.predecessors(m).into_iter().collect();
            let from: BTreeMap<usize, usize> = self.successors(tm).into_iter().collect();
            let name = &self.vertices[m].id;
            if into != from {
                out.push(format!("mesh at {name}: arrows into it do not match arrows out of its translate"));
                continue;
            }
            let (Some(dm), Some(dt)) = (&self.vertices[m].dims, &self.vertices[tm].dims) else {
                continue;
            };
            let mut middle = vec![0usize; dm.len()];
            let mut known = true;
            for (&y, &k) in &into {
                match &self.vertices[y].dims {
                    Some(dy) if dy.len() == dm.len() => {
                        for (acc, d) in middle.iter_mut().zip(dy) {
                            *acc += k * d;
                        }
                    }
                    _ => known = false,
                }
            }
            let ends: Vec<usize> = dm.iter().zip(dt).map(|(a, b)| a + b).collect();
            if known && ends != middle {
                out.push(format!("mesh at {name}: {ends:?} != {middle:?}"));
            }
        }
        out
    }

    /// Number of meshes whose additivity could be checked.
    pub fn checked_meshes(&self) -> usize {
        self.tau
            .iter()
            .filter(|(&m, &tm)| {
                self.vertices[m].dims.is_some()
                    && self.vertices[tm].dims.is_some()
                    && self.predecessors(m).iter().all(|&(y, _)| self.vertices[y].dims.is_some())
            })
            .count()
    }

    fn reachable_from(&self, starts: &BTreeSet<usize>, forward: bool) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<usize> = starts.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            let next = if forward { self.successors(v) } else { self.predecessors(v) };
            for (w, _) in next {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    fn is_section(&self, cand: &BTreeSet<usize>) -> bool {
        if cand.is_empty() {
            return false;
        }
        // Convex: nothing outside lies on a path between two members.
        let below = self.reachable_from(cand, true);
        let above = self.reachable_from(cand, false);
        if below.intersection(&above).any(|v| !cand.contains(v)) {
            return false;
        }
        // Acyclic: no member reaches itself.
        if cand.iter().any(|&v| self.reachable_from(&BTreeSet::from([v]), true).contains(&v)) {
            return false;
        }
        let orbit_hits = self.orbits().iter().all(|o| o.iter().filter(|v| cand.contains(v)).count() == 1);
        orbit_hits && self.induced_connected(cand)
    }

    fn induced_connected(&self, cand: &BTreeSet<usize>) -> bool {
        let first = *cand.iter().next().expect("nonempty");
        let mut seen = BTreeSet::from([first]);
        let mut queue = VecDeque::from([first]);
        while let Some(v) = queue.pop_front() {
            for &(a, b) in self.arrows.keys() {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if cand.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == cand.len()
    }

    fn section_from(&self, cand: BTreeSet<usize>, side: SectionSide) -> Section {
        let ids: Vec<usize> = cand.iter().copied().collect();
        let names: Vec<String> = ids.iter().map(|&v| self.vertices[v].id.clone()).collect();
        let mut arrows = Vec::new();
        for (&(a, b), &m) in &self.arrows {
            if cand.contains(&a) && cand.contains(&b) {
                for k in 0..m {
                    arrows.push((format!("{}_{}_{k}", self.vertices[a].id, self.vertices[b].id), self.vertices[a].id.clone(), self.vertices[b].id.clone()));
                }
            }
        }
        let delta = Quiver::new(names, arrows).expect("section ids are distinct");
        let open = ids.iter().any(|v| self.frontier.contains(v));
        let shape = delta.classify_shape().ok();
        Section {
            vertices: ids,
            side,
            delta,
            shape,
            open,
        }
    }

    /// A section made of right ends or left ends of the translation orbits, if either works.
    pub fn find_section(&self) -> Result<Option<Section>, ArWindowError> {
        if !self.is_connected() {
            return Err(ArWindowError::Disconnected);
        }
        let right: BTreeSet<usize> = (0..self.len()).filter(|&v| self.tau_inverse(v).is_none()).collect();
        if self.is_section(&right) {
            return Ok(Some(self.section_from(right, SectionSide::Right)));
        }
        let left: BTreeSet<usize> = (0..self.len()).filter(|&v| self.tau(v).is_none()).collect();
        if self.is_section(&left) {
            return Ok(Some(self.section_from(left, SectionSide::Left)));
        }
        Ok(None)
    }

    /// Graphviz rendering; translation edges are dashed and frontier vertices dotted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ar {\n  rankdir=LR;\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let mut label = v.id.clone();
            if let Some(d) = &v.dims {
                label.push_str(&format!("\\n{}", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")));
            }
            if let Some(t) = &v.tag {
                label.push_str(&format!("\\n{t}"));
            }
            let style = if self.frontier.contains(&i) { ", style=dotted" } else { "" };
            out.push_str(&format!("  n{i} [label=\"{label}\"{style}];\n"));
        }
        for (&(a, b), &m) in &self.arrows {
            let label = if m > 1 { format!(" [label=\"{m}\"]") } else { String::new() };
            out.push_str(&format!("  n{a} -> n{b}{label};\n"));
        }
        for (&v, &t) in &self.tau {
            out.push_str(&format!("  n{v} -> n{t} [style=dashed, constraint=false];\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionSide {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct Section {
    pub vertices: Vec<usize>,
    pub side: SectionSide,
    pub delta: Quiver,
    pub shape: Option<ShapeClass>,
    /// The section meets the frontier, so it continues outside the window.
    pub open: bool,
}

impl Section {
    pub fn label(&self) -> String {
        let base = match &self.shape {
            Some(s) => s.dynkin_label().unwrap_or_else(|| s.to_string()),
            None => format!("{} vertices", self.vertices.len()),
        };
        if self.open && matches!(self.shape, Some(ShapeClass::DynkinA(_))) {
            format!("A_inf (prefix {base})")
        } else {
            base
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeTag {
    ZDelta(String),
    NDelta(String),
    NMinusDelta(String),
    StableTubeCandidate(usize),
    Wing(usize),
    DoubleInfinitePath,
    Indeterminate,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeTag::ZDelta(d) => write!(f, "ZDelta({d})"),
            ShapeTag::NDelta(d) => write!(f, "NDelta({d})"),
            ShapeTag::NMinusDelta(d) => write!(f, "NMinusDelta({d})"),
            ShapeTag::StableTubeCandidate(r) => write!(f, "StableTubeCandidate({r})"),
            ShapeTag::Wing(n) => write!(f, "Wing({n})"),
            ShapeTag::DoubleInfinitePath => write!(f, "DoubleInfinitePath"),
            ShapeTag::Indeterminate => write!(f, "Indeterminate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub tag: ShapeTag,
    pub evidence: Vec<String>,
}

/// Window-relative shape recognition; falls back to `Indeterminate` rather than guessing.
pub fn shape_report(w: &ArWindow) -> ShapeReport {
    let indeterminate = |why: &str| ShapeReport {
        tag: ShapeTag::Indeterminate,
        evidence: vec![why.to_string()],
    };
    if w.is_empty() {
        return indeterminate("empty window");
    }
    if !w.is_connected() {
        return indeterminate("window is disconnected");
    }
    if let Some(period) = (0..w.len()).filter_map(|v| w.tau_period(v)).min() {
        return ShapeReport {
            tag: ShapeTag::StableTubeCandidate(period),
            evidence: vec![format!("translation orbit of period {period} within window")],
        };
    }
    if w.tau.is_empty() {
        if w.len() >= 2 && is_simple_path(w) {
            return ShapeReport {
                tag: ShapeTag::DoubleInfinitePath,
                evidence: vec![format!("chain of {} vertices without meshes within window", w.len())],
            };
        }
        return indeterminate("no translation data in window");
    }
    if let Some(n) = wing_size(w) {
        return ShapeReport {
            tag: ShapeTag::Wing(n),
            evidence: vec![format!("triangular pattern with orbit lengths 1..={n}")],
        };
    }
    let section = match w.find_section() {
        Ok(Some(s)) => s,
        _ => return indeterminate("no section found within window"),
    };
    let label = section.label();
    let lefts: Vec<usize> = (0..w.len()).filter(|&v| w.tau(v).is_none()).collect();
    let rights: Vec<usize> = (0..w.len()).filter(|&v| w.tau_inverse(v).is_none()).collect();
    let left_closed = lefts.iter().all(|&v| w.vertex(v).flags.projective && !w.is_frontier(v));
    let right_closed = rights.iter().all(|&v| w.vertex(v).flags.injective && !w.is_frontier(v));
    let mut evidence = vec![format!("section {label} within window")];
    let bad = w.mesh_violations();
    if !bad.is_empty() {
        evidence.extend(bad);
        return ShapeReport {
            tag: ShapeTag::Indeterminate,
            evidence,
        };
    }
    let tag = match (left_closed, right_closed) {
        (true, true) => {
            evidence.push("finite component, complete within window; embeds in ZDelta".into());
            ShapeTag::ZDelta(label)
        }
        (true, false) => {
            evidence.push("left ends projective; right side continues past the window".into());
            ShapeTag::NDelta(label)
        }
        (false, true) => {
            evidence.push("right ends injective; left side continues past the window".into());
            ShapeTag::NMinusDelta(label)
        }
        (false, false) => {
            evidence.push("all interior vertices stable in window".into());
            ShapeTag::ZDelta(label)
        }
    };
    ShapeReport { tag, evidence }
}

fn is_simple_path(w: &ArWindow) -> bool {
    let n = w.len();
    if w.arrows.values().any(|&m| m != 1) || w.arrows.len() != n - 1 {
        return false;
    }
    (0..n).all(|v| w.predecessors(v).len() <= 1 && w.successors(v).len() <= 1)
}

/// Size `n` if the window looks like a wing: no projective or injective vertices, nothing on
/// the frontier, `n(n+1)/2` vertices and orbit lengths exactly `1..=n`.
fn wing_size(w: &ArWindow) -> Option<usize> {
    if !w.frontier.is_empty() || w.vertices.iter().any(|v| v.flags.projective || v.flags.injective) {
        return None;
    }
    let mut lens: Vec<usize> = w.orbits().iter().map(|o| o.len()).collect();
    lens.sort_unstable();
    let n = lens.len();
    (n >= 2 && lens == (1..=n).collect::<Vec<_>>() && w.len() == n * (n + 1) / 2).then_some(n)
}

/// A fragment of `Z A_inf` with vertices `(i, h)`, `lo <= i <= hi`, `1 <= h <= height`,
/// arrows `(i, h) -> (i, h + 1)` and `(i, h + 1) -> (i + 1, h)`, and `tau (i, h) = (i - 1, h)`.
/// Vertices touching the cut are marked as frontier.
pub fn za_infinity_fragment(lo: i64, hi: i64, height: usize) -> ArWindow {
    let mut w = ArWindow::new();
    let mut index = BTreeMap::new();
    for i in lo..=hi {
        for h in 1..=height {
            let v = w.add_vertex(ArVertex::new(format!("({i},{h})")).with_flags(VertexFlags {
                perfect: true,
                ..Default::default()
            }));
            index.insert((i, h), v);
        }
    }
    for i in lo..=hi {
        for h in 1..=height {
            let v = index[&(i, h)];
            if let Some(&up) = index.get(&(i, h + 1)) {
                w.add_arrow(v, up, 1).expect("indices exist");
            }
            if h > 1 {
                if let Some(&down) = index.get(&(i + 1, h - 1)) {
                    w.add_arrow(v, down, 1).expect("indices exist");
                }
            }
            if let Some(&left) = index.get(&(i - 1, h)) {
                w.set_tau(v, left).expect("translation is injective");
            }
            if i == lo || i == hi || h == height {
                w.mark_frontier(v);
            }
        }
    }
    w
}
