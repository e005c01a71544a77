//! Finite quivers: walks, degrees, gradability, grading period and underlying-graph shape.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("vertex and arrow ids must be nonempty ASCII, got {0:?}")]
    BadId(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("quiver is not connected; components: {}", format_components(.0))]
    Disconnected(Vec<Vec<String>>),
    #[error("malformed walk: {0}")]
    MalformedWalk(String),
    #[error("unknown vertex `{0}`")]
    NoSuchVertex(String),
    #[error("unknown arrow `{0}`")]
    NoSuchArrow(String),
    #[error("quiver has no vertices")]
    Empty,
}

fn format_components(c: &[Vec<String>]) -> String {
    c.iter().map(|v| format!("{{{}}}", v.join(", "))).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite directed multigraph with named vertices and arrows.
///
/// Vertex and arrow indices follow storage order; [`Quiver::from_spec`] sorts both by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

/// Serialized form: `{"vertices": [...], "arrows": [{"id", "src", "tgt"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

fn check_id(id: &str) -> Result<(), QuiverError> {
    if id.is_empty() || !id.is_ascii() {
        return Err(QuiverError::BadId(id.to_string()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

/// A walk: a base vertex followed by arrow traversals in either direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub base: usize,
    pub steps: Vec<(usize, Direction)>,
}

impl Walk {
    pub fn trivial(base: usize) -> Self {
        Walk { base, steps: Vec::new() }
    }
}

/// Recognized underlying-graph shapes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ShapeClass {
    DynkinA(usize),
    DynkinD(usize),
    DynkinE(usize),
    /// A cycle with `n` edges, traversed once: `forward` arrows agree with the traversal, `backward` oppose it.
    TildeA { n: usize, forward: usize, backward: usize },
    EuclideanOther(String),
    Wild,
}

impl ShapeClass {
    pub fn is_dynkin(&self) -> bool {
        matches!(self, ShapeClass::DynkinA(_) | ShapeClass::DynkinD(_) | ShapeClass::DynkinE(_))
    }

    /// Short name such as `A3`, `D5`, `E6`.
    pub fn dynkin_label(&self) -> Option<String> {
        match self {
            ShapeClass::DynkinA(n) => Some(format!("A{n}")),
            ShapeClass::DynkinD(n) => Some(format!("D{n}")),
            ShapeClass::DynkinE(n) => Some(format!("E{n}")),
            _ => None,
        }
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeClass::DynkinA(n) => write!(f, "DynkinA({n})"),
            ShapeClass::DynkinD(n) => write!(f, "DynkinD({n})"),
            ShapeClass::DynkinE(n) => write!(f, "DynkinE({n})"),
            ShapeClass::TildeA { n, forward, backward } => {
                if *forward == 0 || *backward == 0 {
                    write!(f, "TildeA({n}, oriented)")
                } else {
                    write!(f, "TildeA({n}, cw={forward}, ccw={backward})")
                }
            }
            ShapeClass::EuclideanOther(kind) => write!(f, "EuclideanOther({kind})"),
            ShapeClass::Wild => write!(f, "Wild"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathProfile {
    pub has_right_infinite: bool,
    pub has_left_infinite: bool,
}

impl Quiver {
    /// Builds a quiver keeping the given vertex and arrow order.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self, QuiverError> {
        if vertices.is_empty() {
            return Err(QuiverError::Empty);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            check_id(v)?;
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut list = Vec::with_capacity(arrows.len());
        for (i, (id, s, t)) in arrows.into_iter().enumerate() {
            check_id(&id)?;
            let lookup = |v: &str| {
                vertex_index.get(v).copied().ok_or_else(|| QuiverError::UnknownVertex {
                    arrow: id.clone(),
                    vertex: v.to_string(),
                })
            };
            let src = lookup(&s)?;
            let tgt = lookup(&t)?;
            if arrow_index.insert(id.clone(), i).is_some() {
                return Err(QuiverError::DuplicateArrow(id));
            }
            list.push(Arrow { id, src, tgt });
        }
        Ok(Quiver {
            vertices,
            arrows: list,
            vertex_index,
            arrow_index,
        })
    }

    /// Builds a quiver from its serialized form, sorting vertices and arrows by id.
    pub fn from_spec(spec: &QuiverSpec) -> Result<Self, QuiverError> {
        let mut vertices = spec.vertices.clone();
        vertices.sort();
        let mut arrows: Vec<_> = spec
            .arrows
            .iter()
            .map(|a| (a.id.clone(), a.src.clone(), a.tgt.clone()))
            .collect();
        arrows.sort();
        Quiver::new(vertices, arrows)
    }

    /// Convenience constructor from string slices, sorted like [`Quiver::from_spec`].
    pub fn build(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, QuiverError> {
        Quiver::from_spec(&QuiverSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(id, s, t)| ArrowSpec {
                    id: id.to_string(),
                    src: s.to_string(),
                    tgt: t.to_string(),
                })
                .collect(),
        })
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    id: a.id.clone(),
                    src: self.vertices[a.src].clone(),
                    tgt: self.vertices[a.tgt].clone(),
                })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn vertex(&self, i: usize) -> &str {
        &self.vertices[i]
    }
    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, QuiverError> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| QuiverError::NoSuchVertex(id.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize, QuiverError> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| QuiverError::NoSuchArrow(id.to_string()))
    }

    /// Arrows starting at `v`, in storage order.
    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].src == v).collect()
    }

    /// Arrows ending at `v`, in storage order.
    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].tgt == v).collect()
    }

    /// Arrows `x -> y`, in storage order.
    pub fn arrows_between(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&i| self.arrows[i].src == x && self.arrows[i].tgt == y)
            .collect()
    }

    /// Connected components of the underlying graph, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        for a in &self.arrows {
            uf.union(a.src, a.tgt);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertices.len() {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn require_connected(&self) -> Result<(), QuiverError> {
        let comps = self.components();
        if comps.len() > 1 {
            return Err(QuiverError::Disconnected(
                comps
                    .iter()
                    .map(|c| c.iter().map(|&v| self.vertices[v].clone()).collect())
                    .collect(),
            ));
        }
        Ok(())
    }

    /// Breadth-first spanning tree from vertex 0, exploring neighbours in arrow order.
    /// Returns the potential of every vertex and which arrows are tree arrows.
    pub fn spanning_potentials(&self) -> Result<(Vec<i64>, Vec<bool>), QuiverError> {
        self.require_connected()?;
        let n = self.vertices.len();
        let mut pot = vec![None; n];
        let mut tree = vec![false; self.arrows.len()];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, a) in self.arrows.iter().enumerate() {
            incident[a.src].push(i);
            if a.tgt != a.src {
                incident[a.tgt].push(i);
            }
        }
        pot[0] = Some(0i64);
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let pv = pot[v].expect("visited");
            for &i in &incident[v] {
                let a = &self.arrows[i];
                let (w, pw) = if a.src == v { (a.tgt, pv + 1) } else { (a.src, pv - 1) };
                if pot[w].is_none() {
                    pot[w] = Some(pw);
                    tree[i] = true;
                    queue.push_back(w);
                }
            }
        }
        Ok((pot.into_iter().map(|p| p.expect("connected")).collect(), tree))
    }

    pub fn walk_degree(&self, w: &Walk) -> Result<i64, QuiverError> {
        if w.base >= self.vertices.len() {
            return Err(QuiverError::MalformedWalk(format!("base index {} out of range", w.base)));
        }
        let mut at = w.base;
        let mut deg = 0i64;
        for (k, &(i, dir)) in w.steps.iter().enumerate() {
            let a = self
                .arrows
                .get(i)
                .ok_or_else(|| QuiverError::MalformedWalk(format!("step {k}: arrow index {i} out of range")))?;
            let (from, to, d) = match dir {
                Direction::Forward => (a.src, a.tgt, 1),
                Direction::Backward => (a.tgt, a.src, -1),
            };
            if from != at {
                return Err(QuiverError::MalformedWalk(format!(
                    "step {k} ({}) starts at `{}` but the walk is at `{}`",
                    a.id, self.vertices[from], self.vertices[at]
                )));
            }
            at = to;
            deg += d;
        }
        Ok(deg)
    }

    /// Degree defect of every non-tree arrow: potential(target) - potential(source) - 1.
    fn defects(&self) -> Result<Vec<i64>, QuiverError> {
        let (pot, tree) = self.spanning_potentials()?;
        Ok(self
            .arrows
            .iter()
            .zip(&tree)
            .filter(|(_, &t)| !t)
            .map(|(a, _)| pot[a.tgt] - pot[a.src] - 1)
            .collect())
    }

    pub fn is_gradable(&self) -> Result<bool, QuiverError> {
        Ok(self.defects()?.iter().all(|&d| d == 0))
    }

    /// 0 when gradable, otherwise the least positive degree of a closed walk.
    pub fn grading_period(&self) -> Result<u64, QuiverError> {
        Ok(self.defects()?.iter().fold(0u64, |g, &d| g.gcd(&d.unsigned_abs())))
    }

    /// Levels of a gradable quiver, normalized so vertex 0 sits at level 0.
    pub fn grading(&self) -> Result<Option<Vec<i64>>, QuiverError> {
        if !self.is_gradable()? {
            return Ok(None);
        }
        Ok(Some(self.spanning_potentials()?.0))
    }

    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                id: a.id.clone(),
                src: a.tgt,
                tgt: a.src,
            })
            .collect();
        Quiver {
            vertices: self.vertices.clone(),
            arrows,
            vertex_index: self.vertex_index.clone(),
            arrow_index: self.arrow_index.clone(),
        }
    }

    pub fn to_digraph(&self) -> DiGraph<usize, usize> {
        let mut g = DiGraph::new();
        let nodes: Vec<_> = (0..self.vertices.len()).map(|v| g.add_node(v)).collect();
        for (i, a) in self.arrows.iter().enumerate() {
            g.add_edge(nodes[a.src], nodes[a.tgt], i);
        }
        g
    }

    pub fn has_oriented_cycle(&self) -> bool {
        self.arrows.iter().any(|a| a.src == a.tgt) || petgraph::algo::is_cyclic_directed(&self.to_digraph())
    }

    /// For a finite quiver an infinite path in either direction exists iff some oriented cycle does.
    pub fn infinite_path_profile(&self) -> PathProfile {
        let cyclic = self.has_oriented_cycle();
        PathProfile {
            has_right_infinite: cyclic,
            has_left_infinite: cyclic,
        }
    }

    pub fn classify_shape(&self) -> Result<ShapeClass, QuiverError> {
        self.require_connected()?;
        let n = self.vertices.len();
        let m = self.arrows.len();
        let mut degree = vec![0usize; n];
        for a in &self.arrows {
            degree[a.src] += 1;
            degree[a.tgt] += 1;
        }
        if m == n && degree.iter().all(|&d| d == 2) {
            return Ok(self.cycle_orientation());
        }
        if m + 1 != n {
            return Ok(ShapeClass::Wild);
        }
        // A tree from here on.
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.src].push(a.tgt);
            adj[a.tgt].push(a.src);
        }
        let branch: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
        // Length of the arm leaving `center` through `first`.
        let arm = |center: usize, first: usize| -> usize {
            let (mut prev, mut cur, mut len) = (center, first, 1);
            while degree[cur] == 2 {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
                len += 1;
            }
            if degree[cur] >= 3 {
                usize::MAX
            } else {
                len
            }
        };
        Ok(match branch.as_slice() {
            [] => ShapeClass::DynkinA(n),
            [c] if degree[*c] == 3 => {
                let mut arms: Vec<usize> = adj[*c].iter().map(|&w| arm(*c, w)).collect();
                arms.sort();
                match (arms[0], arms[1], arms[2]) {
                    (1, 1, _) => ShapeClass::DynkinD(n),
                    (1, 2, 2) => ShapeClass::DynkinE(6),
                    (1, 2, 3) => ShapeClass::DynkinE(7),
                    (1, 2, 4) => ShapeClass::DynkinE(8),
                    (2, 2, 2) => ShapeClass::EuclideanOther("E~6".into()),
                    (1, 3, 3) => ShapeClass::EuclideanOther("E~7".into()),
                    (1, 2, 5) => ShapeClass::EuclideanOther("E~8".into()),
                    _ => ShapeClass::Wild,
                }
            }
            [c] if degree[*c] == 4 && n == 5 => ShapeClass::EuclideanOther("D~4".into()),
            [c1, c2] if degree[*c1] == 3 && degree[*c2] == 3 => {
                let leaves = |c: usize| adj[c].iter().filter(|&&w| degree[w] == 1).count();
                if leaves(*c1) == 2 && leaves(*c2) == 2 {
                    ShapeClass::EuclideanOther(format!("D~{}", n - 1))
                } else {
                    ShapeClass::Wild
                }
            }
            _ => ShapeClass::Wild,
        })
    }

    /// Walks once around a cycle graph starting at vertex 0 along its first arrow.
    fn cycle_orientation(&self) -> ShapeClass {
        let n = self.arrows.len();
        let mut forward = 0;
        let mut at = 0usize;
        let mut used = vec![false; n];
        for _ in 0..n {
            let i = (0..n)
                .find(|&i| !used[i] && (self.arrows[i].src == at || self.arrows[i].tgt == at))
                .expect("cycle graph");
            used[i] = true;
            let a = &self.arrows[i];
            if a.src == at {
                forward += 1;
                at = a.tgt;
            } else {
                at = a.src;
            }
        }
        ShapeClass::TildeA {
            n,
            forward,
            backward: n - forward,
        }
    }
}

/// Small named quivers used throughout examples and tests.
pub mod fixtures {
    use super::Quiver;

    pub fn a2() -> Quiver {
        Quiver::build(&["a", "b"], &[("alpha", "a", "b")]).unwrap()
    }
    pub fn a3() -> Quiver {
        Quiver::build(&["a", "b", "c"], &[("alpha", "a", "b"), ("beta", "b", "c")]).unwrap()
    }
    pub fn kronecker() -> Quiver {
        Quiver::build(&["a", "b"], &[("alpha", "a", "b"), ("beta", "a", "b")]).unwrap()
    }
    pub fn loop1() -> Quiver {
        Quiver::build(&["a"], &[("ell", "a", "a")]).unwrap()
    }
    pub fn two_cycle() -> Quiver {
        Quiver::build(&["a", "b"], &[("alpha", "a", "b"), ("beta", "b", "a")]).unwrap()
    }
    pub fn cycle(n: usize) -> Quiver {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let ids: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let arrows: Vec<(&str, &str, &str)> = (0..n)
            .map(|i| (ids[i].as_str(), refs[i], refs[(i + 1) % n]))
            .collect();
        Quiver::build(&refs, &arrows).unwrap()
    }
    pub fn mixed_three_cycle() -> Quiver {
        Quiver::build(
            &["a", "b", "c"],
            &[("alpha", "a", "b"), ("beta", "b", "c"), ("gamma", "a", "c")],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn walk_degrees() {
        let q = a2();
        let w = Walk {
            base: 0,
            steps: vec![(0, Direction::Forward)],
        };
        assert_eq!(q.walk_degree(&w).unwrap(), 1);
        let back = Walk {
            base: 0,
            steps: vec![(0, Direction::Forward), (0, Direction::Backward)],
        };
        assert_eq!(q.walk_degree(&back).unwrap(), 0);
        let c = two_cycle();
        let round = Walk {
            base: 0,
            steps: vec![(0, Direction::Forward), (1, Direction::Forward)],
        };
        assert_eq!(c.walk_degree(&round).unwrap(), 2);
        let broken = Walk {
            base: 0,
            steps: vec![(0, Direction::Backward)],
        };
        assert!(matches!(q.walk_degree(&broken), Err(QuiverError::MalformedWalk(_))));
        assert_eq!(q.walk_degree(&Walk::trivial(1)).unwrap(), 0);
    }

    #[test]
    fn gradability_examples() {
        assert!(a3().is_gradable().unwrap());
        assert!(!cycle(3).is_gradable().unwrap());
        assert!(kronecker().is_gradable().unwrap());
        assert_eq!(a3().grading_period().unwrap(), 0);
        assert_eq!(cycle(3).grading_period().unwrap(), 3);
        assert_eq!(two_cycle().grading_period().unwrap(), 2);
        assert_eq!(loop1().grading_period().unwrap(), 1);
    }

    #[test]
    fn disconnected_is_rejected() {
        let q = Quiver::build(&["a", "b", "c"], &[("alpha", "a", "b")]).unwrap();
        let err = q.is_gradable().unwrap_err();
        assert_eq!(err, QuiverError::Disconnected(vec![vec!["a".into(), "b".into()], vec!["c".into()]]));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            Quiver::build(&["a", "a"], &[]),
            Err(QuiverError::DuplicateVertex(_))
        ));
        assert!(matches!(
            Quiver::build(&["a"], &[("x", "a", "b")]),
            Err(QuiverError::UnknownVertex { .. })
        ));
        assert!(matches!(
            Quiver::build(&["a"], &[("x", "a", "a"), ("x", "a", "a")]),
            Err(QuiverError::DuplicateArrow(_))
        ));
        assert!(matches!(Quiver::build(&[""], &[]), Err(QuiverError::BadId(_))));
    }

    #[test]
    fn shapes() {
        assert_eq!(a3().classify_shape().unwrap(), ShapeClass::DynkinA(3));
        assert_eq!(
            cycle(3).classify_shape().unwrap(),
            ShapeClass::TildeA {
                n: 3,
                forward: 3,
                backward: 0
            }
        );
        let d4 = Quiver::build(
            &["c", "x", "y", "z"],
            &[("p", "x", "c"), ("q", "y", "c"), ("r", "z", "c")],
        )
        .unwrap();
        assert_eq!(d4.classify_shape().unwrap(), ShapeClass::DynkinD(4));
        assert_eq!(
            mixed_three_cycle().classify_shape().unwrap(),
            ShapeClass::TildeA {
                n: 3,
                forward: 2,
                backward: 1
            }
        );
        assert_eq!(
            kronecker().classify_shape().unwrap(),
            ShapeClass::TildeA {
                n: 2,
                forward: 1,
                backward: 1
            }
        );
        assert_eq!(cycle(3).classify_shape().unwrap().to_string(), "TildeA(3, oriented)");
    }

    #[test]
    fn exceptional_and_euclidean_trees() {
        let star = |arms: &[usize]| {
            let mut vs = vec!["c".to_string()];
            let mut arrows = Vec::new();
            for (k, &len) in arms.iter().enumerate() {
                let mut prev = "c".to_string();
                for i in 0..len {
                    let v = format!("v{k}_{i}");
                    arrows.push((format!("e{k}_{i}"), prev.clone(), v.clone()));
                    vs.push(v.clone());
                    prev = v;
                }
            }
            Quiver::new(vs, arrows).unwrap()
        };
        assert_eq!(star(&[1, 2, 2]).classify_shape().unwrap(), ShapeClass::DynkinE(6));
        assert_eq!(star(&[1, 2, 3]).classify_shape().unwrap(), ShapeClass::DynkinE(7));
        assert_eq!(star(&[1, 2, 4]).classify_shape().unwrap(), ShapeClass::DynkinE(8));
        assert_eq!(star(&[1, 1, 3]).classify_shape().unwrap(), ShapeClass::DynkinD(6));
        assert_eq!(
            star(&[2, 2, 2]).classify_shape().unwrap(),
            ShapeClass::EuclideanOther("E~6".into())
        );
        assert_eq!(
            star(&[1, 1, 1, 1]).classify_shape().unwrap(),
            ShapeClass::EuclideanOther("D~4".into())
        );
        assert_eq!(star(&[2, 2, 3]).classify_shape().unwrap(), ShapeClass::Wild);
        let d5 = Quiver::build(
            &["a", "b", "c", "d", "e", "f"],
            &[("1", "a", "c"), ("2", "b", "c"), ("3", "c", "d"), ("4", "d", "e"), ("5", "d", "f")],
        )
        .unwrap();
        assert_eq!(d5.classify_shape().unwrap(), ShapeClass::EuclideanOther("D~5".into()));
    }

    #[test]
    fn opposite_is_involutive() {
        let q = a2();
        let op = q.opposite();
        assert_eq!(op.arrow(0).src, q.vertex_index("b").unwrap());
        assert_eq!(op.arrow(0).tgt, q.vertex_index("a").unwrap());
        assert_eq!(two_cycle().opposite().opposite(), two_cycle());
        assert_eq!(loop1().opposite(), loop1());
    }

    #[test]
    fn infinite_paths() {
        let none = PathProfile {
            has_right_infinite: false,
            has_left_infinite: false,
        };
        let both = PathProfile {
            has_right_infinite: true,
            has_left_infinite: true,
        };
        assert_eq!(a3().infinite_path_profile(), none);
        assert_eq!(loop1().infinite_path_profile(), both);
        assert_eq!(cycle(3).infinite_path_profile(), both);
    }

    #[test]
    fn spec_round_trip() {
        let q = mixed_three_cycle();
        let json = serde_json::to_string(&q.to_spec()).unwrap();
        let back: QuiverSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(Quiver::from_spec(&back).unwrap(), q);
    }
}
