//! Bounded-above complexes of projectives over a radical-square-zero algebra.
//!
//! Complexes are cohomological: `d^n: X^n -> X^{n+1}`. A complex may carry a truncation
//! flag, meaning that the true complex continues below the lowest stored degree.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::algebra::{compose, AlgebraError, ProjModule, ProjMorphism, RszAlgebra, ShortPath};
use crate::field::{Field, FieldSpec};
use crate::matrix::{Matrix, SpanTracker};
use crate::quiver::Quiver;
use crate::rep::{complement, HomCoords, QuiverRep, RepError, RepMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("differentials compose to a nonzero map at degree {0}")]
    NotAComplex(i64),
    #[error("complex shape mismatch: {0}")]
    Shape(String),
    #[error("malformed complex file: {0}")]
    Format(String),
    #[error("degree {degree} is not reliable: the complex is truncated below degree {lo}")]
    Unreliable { degree: i64, lo: i64 },
    #[error("insufficient truncation overlap: the source must reach degree {needed} but stops at {have}; rebuild it with a deeper window")]
    InsufficientOverlap { needed: i64, have: i64 },
}

/// A complex `X^lo -> ... -> X^hi` of finitely generated projectives.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjComplex<F: Field> {
    alg: RszAlgebra<F>,
    lo: i64,
    terms: Vec<ProjModule>,
    /// `diffs[i]` is `d^{lo+i}`.
    diffs: Vec<ProjMorphism<F>>,
    truncated: bool,
}

/// A degree-zero map of complexes given by its components `f^n` for `n >= lo`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMorphism<F: Field> {
    pub lo: i64,
    pub components: Vec<ProjMorphism<F>>,
}

/// Vertices `(x, n)` with nonzero multiplicity and one arrow `(x, n) -> (y, n+1)` per nonzero block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportQuiver {
    pub vertices: Vec<(usize, i64)>,
    /// `(path, degree, source index, target index)`.
    pub arrows: Vec<(ShortPath, i64, usize, usize)>,
}

impl SupportQuiver {
    /// Connected components as lists of vertex indices, ordered by their first vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        for &(_, _, s, t) in &self.arrows {
            uf.union(s, t);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.vertices.len() {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }
}

/// The complex realized vertexwise as representations of the quiver.
#[derive(Clone, Debug)]
pub struct RealizedComplex<F: Field> {
    pub lo: i64,
    pub objects: Vec<QuiverRep<F>>,
    pub diffs: Vec<RepMorphism<F>>,
}

impl<F: Field> RealizedComplex<F> {
    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64 - 1
    }

    fn object(&self, n: i64) -> Option<&QuiverRep<F>> {
        if n < self.lo {
            return None;
        }
        self.objects.get((n - self.lo) as usize)
    }

    fn diff(&self, n: i64) -> Option<&RepMorphism<F>> {
        if n < self.lo {
            return None;
        }
        self.diffs.get((n - self.lo) as usize)
    }
}

/// A degree-zero chain map between realized complexes.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<F: Field> {
    pub lo: i64,
    pub components: Vec<RepMorphism<F>>,
}

/// Homotopy classes of maps `X -> Y` with a basis of representatives.
#[derive(Clone, Debug)]
pub struct HomotopyHom<F: Field> {
    pub dim: usize,
    pub basis: Vec<ChainMap<F>>,
    /// Lowest degree taken into account on the target side.
    pub window_lo: i64,
    classes: Option<ClassSolver<F>>,
}

/// Reduces a chain map to coordinates in the homotopy basis.
#[derive(Clone, Debug)]
struct ClassSolver<F: Field> {
    /// Projection of the target's bottom term onto the cokernel, when truncated.
    bottom: Option<RepMorphism<F>>,
    coords: Vec<HomCoords<F>>,
    offsets: Vec<usize>,
    unknowns: usize,
    /// Columns: null-homotopic vectors, then the basis vectors.
    spanning: Matrix<F>,
    null_count: usize,
}

impl<F: Field> HomotopyHom<F> {
    /// Coordinates of the class of a chain map given by its components on `window_lo..`;
    /// `None` components are zero. Returns `None` if the map is not a chain map in the window.
    pub fn class_coords(&self, component: impl Fn(i64) -> Option<RepMorphism<F>>) -> Option<Vec<F::Elem>> {
        let Some(cs) = &self.classes else {
            return Some(Vec::new());
        };
        let f = cs.spanning.field().clone();
        let mut v = vec![f.zero(); cs.unknowns];
        for (k, hc) in cs.coords.iter().enumerate() {
            let n = self.window_lo + k as i64;
            if let Some(phi) = component(n) {
                if hc.is_empty() {
                    if !phi.is_zero() {
                        return None;
                    }
                    continue;
                }
                let c = hc.coords(&phi);
                let back = hc.combine(&f, &c, phi.scale(&f.zero()));
                if back != phi {
                    return None;
                }
                for (j, cj) in c.into_iter().enumerate() {
                    v[cs.offsets[k] + j] = cj;
                }
            }
        }
        let rhs = Matrix::from_columns(&f, cs.unknowns, &[v]);
        let sol = cs.spanning.solve_all(&rhs);
        let x = sol.particular()?;
        Some((cs.null_count..cs.spanning.cols()).map(|i| x.get(i, 0).clone()).collect())
    }

    /// Coordinates of the class of a morphism of complexes of projectives `x -> y`.
    pub fn class_of_morphism(&self, x: &ProjComplex<F>, y: &ProjComplex<F>, f: &ComplexMorphism<F>) -> Option<Vec<F::Elem>> {
        let alg = x.algebra();
        let bottom = self.classes.as_ref().and_then(|c| c.bottom.clone());
        self.class_coords(|n| {
            let phi = f.at(x, y, n).realize(alg);
            match (&bottom, n == self.window_lo) {
                (Some(p), true) => Some(phi.then(p)),
                _ => Some(phi),
            }
        })
    }

    /// Whether the chain map is null-homotopic (or zero).
    pub fn is_null(&self, component: impl Fn(i64) -> Option<RepMorphism<F>>) -> Option<bool> {
        let c = self.class_coords(component)?;
        Some(match &self.classes {
            None => true,
            Some(cs) => c.iter().all(|x| cs.spanning.field().is_zero(x)),
        })
    }
}

impl<F: Field> ProjComplex<F> {
    pub fn new(
        alg: RszAlgebra<F>,
        lo: i64,
        terms: Vec<ProjModule>,
        diffs: Vec<ProjMorphism<F>>,
        truncated: bool,
    ) -> Result<Self, ComplexError> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(ComplexError::Shape(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if *d.source() != terms[i] || *d.target() != terms[i + 1] {
                return Err(ComplexError::Shape(format!(
                    "differential at degree {} does not match its terms",
                    lo + i as i64
                )));
            }
        }
        let c = ProjComplex {
            alg,
            lo,
            terms,
            diffs,
            truncated,
        };
        c.check_square_zero()?;
        Ok(c)
    }

    pub fn zero(alg: RszAlgebra<F>) -> Self {
        ProjComplex {
            alg,
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
            truncated: false,
        }
    }

    pub fn stalk(alg: RszAlgebra<F>, m: ProjModule, degree: i64) -> Self {
        ProjComplex {
            alg,
            lo: degree,
            terms: vec![m],
            diffs: Vec::new(),
            truncated: false,
        }
    }

    fn check_square_zero(&self) -> Result<(), ComplexError> {
        for (i, w) in self.diffs.windows(2).enumerate() {
            if !compose(&self.alg, &w[1], &w[0])?.is_zero() {
                return Err(ComplexError::NotAComplex(self.lo + i as i64));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &RszAlgebra<F> {
        &self.alg
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    /// Highest stored degree; `lo - 1` when there are no terms.
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }
    pub fn set_truncated(&mut self, t: bool) {
        self.truncated = t;
    }
    pub fn terms(&self) -> &[ProjModule] {
        &self.terms
    }
    pub fn diffs(&self) -> &[ProjMorphism<F>] {
        &self.diffs
    }

    pub fn term(&self, n: i64) -> ProjModule {
        if n < self.lo || n > self.hi() {
            return ProjModule::new();
        }
        self.terms[(n - self.lo) as usize].clone()
    }

    /// `d^n`, zero outside the stored range.
    pub fn diff(&self, n: i64) -> ProjMorphism<F> {
        if n >= self.lo && n < self.hi() {
            return self.diffs[(n - self.lo) as usize].clone();
        }
        ProjMorphism::zero(self.term(n), self.term(n + 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }

    pub fn is_radical(&self) -> bool {
        self.diffs.iter().all(|d| d.is_radical())
    }

    /// Total multiplicity per degree.
    pub fn multiplicities(&self) -> BTreeMap<i64, usize> {
        (self.lo..=self.hi())
            .map(|n| (n, self.term(n).total_mult()))
            .filter(|(_, k)| *k > 0)
            .collect()
    }

    /// Degrees with a nonzero term.
    pub fn support_range(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = (self.lo..=self.hi()).filter(|&n| !self.term(n).is_zero()).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    /// Drops zero terms at the ends; the bottom is kept when truncated.
    pub fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(|t| t.is_zero()) {
            self.terms.pop();
            self.diffs.pop();
        }
        if !self.truncated {
            while self.terms.first().is_some_and(|t| t.is_zero()) {
                self.terms.remove(0);
                if !self.diffs.is_empty() {
                    self.diffs.remove(0);
                }
                self.lo += 1;
            }
        }
        if self.terms.is_empty() {
            self.diffs.clear();
            if !self.truncated {
                self.lo = 0;
            }
        }
        self
    }

    /// Restricts to degrees `from..=to`.
    pub fn window(&self, from: i64, to: i64) -> Self {
        let from = from.max(self.lo);
        let to = to.min(self.hi());
        if from > to {
            return ProjComplex::zero(self.alg.clone());
        }
        let terms = (from..=to).map(|n| self.term(n)).collect();
        let diffs = (from..to).map(|n| self.diff(n)).collect();
        ProjComplex {
            alg: self.alg.clone(),
            lo: from,
            terms,
            diffs,
            truncated: self.truncated && from == self.lo,
        }
    }

    /// `X[k]`: degrees move down by `k` and differentials pick up the sign `(-1)^k`.
    /// Replaces the basis of the multiplicity space of `P[v]` in degree `n` by the columns
    /// of the invertible `g`; the result is isomorphic to `self`.
    pub fn change_basis(&mut self, n: i64, v: usize, g: &Matrix<F>) -> Result<(), ComplexError> {
        let k = self.term(n).mult(v);
        if g.shape() != (k, k) {
            return Err(ComplexError::Shape(format!("basis change at degree {n} needs a {k}x{k} matrix")));
        }
        let g_inv = g
            .inverse()
            .ok_or_else(|| ComplexError::Shape("basis change is not invertible".into()))?;
        let i = n - self.lo;
        if i < self.diffs.len() as i64 {
            self.diffs[i as usize].transform(false, v, g);
        }
        if i >= 1 && i - 1 < self.diffs.len() as i64 {
            self.diffs[(i - 1) as usize].transform(true, v, &g_inv);
        }
        Ok(())
    }

    pub fn shift(&self, k: i64) -> Self {
        let diffs = if k.rem_euclid(2) == 1 {
            self.diffs.iter().map(|d| d.neg()).collect()
        } else {
            self.diffs.clone()
        };
        ProjComplex {
            alg: self.alg.clone(),
            lo: self.lo - k,
            terms: self.terms.clone(),
            diffs,
            truncated: self.truncated,
        }
    }

    /// Degreewise direct sum; multiplicities of `self` come first at each vertex.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, ComplexError> {
        if self.is_zero() && !self.truncated {
            return Ok(other.clone());
        }
        if other.is_zero() && !other.truncated {
            return Ok(self.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        for c in [self, other] {
            if c.truncated && c.lo > lo {
                return Err(ComplexError::Shape(
                    "a truncated summand must reach the lowest degree of the sum".into(),
                ));
            }
        }
        let terms: Vec<ProjModule> = (lo..=hi).map(|n| self.term(n).direct_sum(&other.term(n))).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let (a, b) = (self.diff(n), other.diff(n));
                assemble(
                    &self.alg,
                    &[a.source().clone(), b.source().clone()],
                    &[a.target().clone(), b.target().clone()],
                    &[vec![Some(&a), None], vec![None, Some(&b)]],
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProjComplex {
            alg: self.alg.clone(),
            lo,
            terms,
            diffs,
            truncated: self.truncated || other.truncated,
        })
    }

    pub fn support_quiver(&self) -> SupportQuiver {
        let mut vertices = Vec::new();
        let mut index = BTreeMap::new();
        for n in self.lo..=self.hi() {
            for (x, _) in self.term(n).iter() {
                index.insert((x, n), vertices.len());
                vertices.push((x, n));
            }
        }
        let mut arrows = Vec::new();
        for (i, d) in self.diffs.iter().enumerate() {
            let n = self.lo + i as i64;
            for &(y, x, p) in d.blocks().keys() {
                arrows.push((p, n, index[&(x, n)], index[&(y, n + 1)]));
            }
        }
        SupportQuiver { vertices, arrows }
    }

    /// Restrictions to the connected components of the support quiver, ordered by
    /// their smallest `(degree, vertex)`.
    pub fn decompose_by_support(&self) -> Vec<Self> {
        let sq = self.support_quiver();
        let mut comps = sq.components();
        comps.sort_by_key(|c| c.iter().map(|&i| (sq.vertices[i].1, sq.vertices[i].0)).min());
        comps
            .iter()
            .map(|comp| {
                let keep: Vec<(usize, i64)> = comp.iter().map(|&i| sq.vertices[i]).collect();
                let touches_lo = keep.iter().any(|&(_, n)| n == self.lo);
                let lo = keep.iter().map(|v| v.1).min().expect("nonempty component");
                let hi = keep.iter().map(|v| v.1).max().expect("nonempty component");
                let keep_at = |n: i64| -> BTreeMap<usize, Vec<usize>> {
                    self.term(n)
                        .iter()
                        .map(|(x, k)| (x, if keep.contains(&(x, n)) { (0..k).collect() } else { Vec::new() }))
                        .collect()
                };
                let terms: Vec<ProjModule> = (lo..=hi)
                    .map(|n| ProjModule::from_pairs(self.term(n).iter().filter(|&(x, _)| keep.contains(&(x, n)))))
                    .collect();
                let diffs = (lo..hi).map(|n| self.diff(n).restrict(&keep_at(n + 1), &keep_at(n))).collect();
                ProjComplex {
                    alg: self.alg.clone(),
                    lo,
                    terms,
                    diffs,
                    truncated: self.truncated && touches_lo,
                }
            })
            .collect()
    }

    /// A homotopy equivalent radical complex, obtained by repeatedly cancelling an
    /// invertible trivial-path component of a differential.
    pub fn radicalize(&self) -> Self {
        let mut c = self.clone();
        let f = self.alg.field().clone();
        loop {
            let found = c.diffs.iter().enumerate().find_map(|(i, d)| {
                d.blocks().iter().find_map(|(&(y, x, p), m)| match p {
                    ShortPath::Trivial(_) if x == y && !m.is_zero() => Some((i, x, m.clone())),
                    _ => None,
                })
            });
            let Some((i, x, t)) = found else { break };
            // Bases in which the trivial block becomes diag(I_r, 0).
            let (ms, mt) = (t.cols(), t.rows());
            let ker = t.kernel();
            let (_, cpl) = complement(&f, ms, &ker);
            let q = cpl.hstack(&ker);
            let tc = t.mul(&cpl);
            let (_, dpl) = complement(&f, mt, &tc);
            let p_inv = tc.hstack(&dpl);
            let p = p_inv.inverse().expect("completed image basis is invertible");
            let q_inv = q.inverse().expect("completed kernel basis is invertible");
            let r = tc.cols();
            c.diffs[i].transform(false, x, &q);
            c.diffs[i].transform(true, x, &p);
            if i > 0 {
                c.diffs[i - 1].transform(true, x, &q_inv);
            }
            if i + 1 < c.diffs.len() {
                c.diffs[i + 1].transform(false, x, &p_inv);
            }
            c = c.cancel(i, x, r);
        }
        c.trimmed()
    }

    /// Gaussian elimination of `P[x] (x) k^r` in degrees `lo+i`, `lo+i+1`, assuming the
    /// trivial block of `d^{lo+i}` at `x` starts with `I_r`.
    fn cancel(self, i: usize, x: usize, r: usize) -> Self {
        let alg = &self.alg;
        let f = alg.field();
        let src = &self.terms[i];
        let tgt = &self.terms[i + 1];
        let only = |m: &ProjModule| -> BTreeMap<usize, Vec<usize>> {
            m.iter().map(|(v, _)| (v, if v == x { (0..r).collect() } else { Vec::new() })).collect()
        };
        let without = |m: &ProjModule| -> BTreeMap<usize, Vec<usize>> {
            m.iter().filter(|&(v, _)| v == x).map(|(v, k)| (v, (r..k).collect())).collect()
        };
        let d = &self.diffs[i];
        let a = d.restrict(&only(tgt), &only(src));
        let b = d.restrict(&only(tgt), &without(src));
        let c = d.restrict(&without(tgt), &only(src));
        let e = d.restrict(&without(tgt), &without(src));
        let mut a_inv = ProjMorphism::zero(a.target().clone(), a.source().clone());
        for (&(_, _, p), m) in a.blocks() {
            let block = match p {
                ShortPath::Trivial(_) => m.clone(),
                ShortPath::Arrow(_) => m.neg(),
            };
            a_inv.add_block(alg, x, x, p, block).expect("loop block");
        }
        debug_assert_eq!(
            compose(alg, &a_inv, &a).expect("shapes"),
            ProjMorphism::identity(f, a.source())
        );
        let correction = compose(alg, &c, &compose(alg, &a_inv, &b).expect("shapes")).expect("shapes");
        let new_d = e.sub(&correction).expect("shapes");
        let mut out = self.clone();
        out.terms[i] = new_d.source().clone();
        out.terms[i + 1] = new_d.target().clone();
        out.diffs[i] = new_d;
        if i > 0 {
            out.diffs[i - 1] = self.diffs[i - 1].restrict(&without(src), &BTreeMap::new());
        }
        if i + 1 < self.diffs.len() {
            out.diffs[i + 1] = self.diffs[i + 1].restrict(&BTreeMap::new(), &without(tgt));
        }
        out
    }

    pub fn realize(&self) -> RealizedComplex<F> {
        RealizedComplex {
            lo: self.lo,
            objects: self.terms.iter().map(|t| t.realize(&self.alg)).collect(),
            diffs: self.diffs.iter().map(|d| d.realize(&self.alg)).collect(),
        }
    }

    /// `dim H^n` at every vertex.
    pub fn homology_dims(&self, n: i64) -> Result<Vec<usize>, ComplexError> {
        if self.truncated && n <= self.lo {
            return Err(ComplexError::Unreliable { degree: n, lo: self.lo });
        }
        let q = self.alg.quiver();
        let here = self.term(n).realize(&self.alg);
        let out = self.diff(n).realize(&self.alg);
        let inc = self.diff(n - 1).realize(&self.alg);
        Ok((0..q.vertex_count())
            .map(|z| here.dim(z) - out.at(z).rank() - inc.at(z).rank())
            .collect())
    }

    /// Homology dimension vectors over all reliable degrees with nonzero homology.
    pub fn homology(&self) -> BTreeMap<i64, Vec<usize>> {
        let start = if self.truncated { self.lo + 1 } else { self.lo };
        (start..=self.hi())
            .filter_map(|n| {
                let h = self.homology_dims(n).ok()?;
                h.iter().any(|&d| d > 0).then_some((n, h))
            })
            .collect()
    }

    /// The complex as a representation of the grid quiver with one copy of the base quiver
    /// per degree and the differentials as extra arrows.
    pub fn as_grid_rep(&self) -> Result<QuiverRep<F>, ComplexError> {
        let q = self.alg.quiver();
        let real = self.realize();
        let degrees: Vec<i64> = (self.lo..=self.hi()).collect();
        let mut vertices = Vec::new();
        for &n in &degrees {
            for v in q.vertices() {
                vertices.push(format!("{v}#{n}"));
            }
        }
        let mut arrows = Vec::new();
        let mut maps = Vec::new();
        for (k, &n) in degrees.iter().enumerate() {
            for (ai, a) in q.arrows().iter().enumerate() {
                arrows.push((format!("{}#{n}", a.id), format!("{}#{n}", q.vertex(a.src)), format!("{}#{n}", q.vertex(a.tgt))));
                maps.push(real.objects[k].map(ai).clone());
            }
            if k + 1 < degrees.len() {
                for (z, v) in q.vertices().iter().enumerate() {
                    arrows.push((format!("d#{v}#{n}"), format!("{v}#{n}"), format!("{v}#{}", n + 1)));
                    maps.push(real.diffs[k].at(z).clone());
                }
            }
        }
        let grid = Quiver::new(vertices, arrows).map_err(|e| ComplexError::Shape(e.to_string()))?;
        let dims = real.objects.iter().flat_map(|o| o.dims().to_vec()).collect();
        if degrees.is_empty() {
            return Err(ComplexError::Shape("empty complex".into()));
        }
        Ok(QuiverRep::from_parts(std::sync::Arc::new(grid), self.alg.field(), dims, maps)?)
    }

    pub fn to_json(&self) -> Value {
        let q = self.alg.quiver();
        let mut terms = Map::new();
        let mut diff = Map::new();
        for n in self.lo..=self.hi() {
            let t = self.term(n);
            let list: Vec<Value> = t
                .iter()
                .map(|(x, k)| serde_json::json!({"vertex": q.vertex(x), "mult": k}))
                .collect();
            terms.insert(n.to_string(), Value::Array(list));
        }
        for (i, d) in self.diffs.iter().enumerate() {
            let n = self.lo + i as i64;
            let list: Vec<Value> = d
                .blocks()
                .iter()
                .map(|(&(y, x, p), m)| {
                    let arrow = match p {
                        ShortPath::Arrow(a) => Value::from(q.arrow(a).id.clone()),
                        ShortPath::Trivial(_) => Value::Null,
                    };
                    serde_json::json!({"tgt": q.vertex(y), "src": q.vertex(x), "arrow": arrow, "matrix": m.to_json()})
                })
                .collect();
            if !list.is_empty() {
                diff.insert(n.to_string(), Value::Array(list));
            }
        }
        serde_json::json!({
            "field": self.alg.field().spec().to_string(),
            "terms": terms,
            "diff": diff,
            "truncated_below": self.truncated,
        })
    }

    /// Field recorded in a complex file, if any.
    pub fn field_of_json(v: &Value) -> Result<Option<FieldSpec>, ComplexError> {
        match v.get("field") {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => s
                .parse()
                .map(Some)
                .map_err(|e: crate::field::FieldError| ComplexError::Format(e.to_string())),
            Some(_) => Err(ComplexError::Format("`field` must be a string".into())),
        }
    }

    /// Reads the complex file format; a block without `arrow` is a trivial-path block.
    pub fn from_json(alg: RszAlgebra<F>, v: &Value) -> Result<Self, ComplexError> {
        let bad = |s: String| ComplexError::Format(s);
        let q = alg.quiver().clone();
        let obj = v.as_object().ok_or_else(|| bad("expected a JSON object".into()))?;
        let parse_deg = |k: &str| k.trim().parse::<i64>().map_err(|_| bad(format!("degree `{k}` is not an integer")));
        let mut term_map: BTreeMap<i64, ProjModule> = BTreeMap::new();
        if let Some(t) = obj.get("terms") {
            let t = t.as_object().ok_or_else(|| bad("`terms` must be an object".into()))?;
            for (k, list) in t {
                let n = parse_deg(k)?;
                let list = list.as_array().ok_or_else(|| bad(format!("terms at degree {n} must be a list")))?;
                let entry = term_map.entry(n).or_default();
                for item in list {
                    let vname = item
                        .get("vertex")
                        .and_then(Value::as_str)
                        .ok_or_else(|| bad(format!("term at degree {n} lacks a vertex")))?;
                    let x = q.vertex_index(vname).map_err(|_| bad(format!("unknown vertex `{vname}`")))?;
                    let mult = item
                        .get("mult")
                        .map_or(Some(1), Value::as_u64)
                        .ok_or_else(|| bad(format!("bad multiplicity at degree {n}")))?;
                    entry.add(x, mult as usize);
                }
            }
        }
        let truncated = match obj.get("truncated_below") {
            None | Some(Value::Null) => false,
            Some(Value::Bool(b)) => *b,
            Some(_) => return Err(bad("`truncated_below` must be a boolean".into())),
        };
        let mut diff_blocks: BTreeMap<i64, Vec<&Value>> = BTreeMap::new();
        if let Some(d) = obj.get("diff") {
            let d = d.as_object().ok_or_else(|| bad("`diff` must be an object".into()))?;
            for (k, list) in d {
                let n = parse_deg(k)?;
                let list = list.as_array().ok_or_else(|| bad(format!("diff at degree {n} must be a list")))?;
                diff_blocks.entry(n).or_default().extend(list.iter());
            }
        }
        let degrees: Vec<i64> = term_map.keys().chain(diff_blocks.keys()).copied().collect();
        let Some(&lo) = degrees.iter().min() else {
            return Ok(ProjComplex::zero(alg));
        };
        let hi = term_map.keys().copied().max().unwrap_or(lo).max(diff_blocks.keys().map(|n| n + 1).max().unwrap_or(lo));
        let terms: Vec<ProjModule> = (lo..=hi).map(|n| term_map.get(&n).cloned().unwrap_or_default()).collect();
        let mut diffs = Vec::new();
        for n in lo..hi {
            let src = terms[(n - lo) as usize].clone();
            let tgt = terms[(n - lo + 1) as usize].clone();
            let mut d = ProjMorphism::zero(src.clone(), tgt.clone());
            for blk in diff_blocks.get(&n).into_iter().flatten() {
                let name = |key: &str| -> Result<usize, ComplexError> {
                    let s = blk
                        .get(key)
                        .and_then(Value::as_str)
                        .ok_or_else(|| bad(format!("block at degree {n} lacks `{key}`")))?;
                    q.vertex_index(s).map_err(|_| bad(format!("unknown vertex `{s}`")))
                };
                let (y, x) = (name("tgt")?, name("src")?);
                let path = match blk.get("arrow") {
                    None | Some(Value::Null) => ShortPath::Trivial(x),
                    Some(Value::String(a)) => {
                        ShortPath::Arrow(q.arrow_index(a).map_err(|_| bad(format!("unknown arrow `{a}`")))?)
                    }
                    Some(_) => return Err(bad("`arrow` must be a string".into())),
                };
                let m = blk.get("matrix").ok_or_else(|| bad(format!("block at degree {n} lacks `matrix`")))?;
                let m = Matrix::from_json(alg.field(), m, tgt.mult(y), src.mult(x))
                    .map_err(|e| bad(format!("block at degree {n}: {e}")))?;
                d.add_block(&alg, y, x, path, m)?;
            }
            diffs.push(d);
        }
        ProjComplex::new(alg, lo, terms, diffs, truncated)
    }
}

/// Morphism between direct sums; `parts[i][j]` maps `sources[j]` into `targets[i]`.
pub fn assemble<F: Field>(
    alg: &RszAlgebra<F>,
    sources: &[ProjModule],
    targets: &[ProjModule],
    parts: &[Vec<Option<&ProjMorphism<F>>>],
) -> Result<ProjMorphism<F>, AlgebraError> {
    let total = |ms: &[ProjModule]| ms.iter().fold(ProjModule::new(), |acc, m| acc.direct_sum(m));
    let offsets = |ms: &[ProjModule], k: usize, v: usize| ms[..k].iter().map(|m| m.mult(v)).sum::<usize>();
    let src = total(sources);
    let tgt = total(targets);
    let f = alg.field();
    let mut out = ProjMorphism::zero(src.clone(), tgt.clone());
    for (i, row) in parts.iter().enumerate() {
        for (j, part) in row.iter().enumerate() {
            let Some(part) = part else { continue };
            if *part.source() != sources[j] || *part.target() != targets[i] {
                return Err(AlgebraError::ShapeMismatch("part does not match its summands".into()));
            }
            for (&(y, x, p), m) in part.blocks() {
                let mut big = Matrix::zeros(f, tgt.mult(y), src.mult(x));
                big.paste(offsets(targets, i, y), offsets(sources, j, x), m);
                out.add_block(alg, y, x, p, big)?;
            }
        }
    }
    Ok(out)
}

impl<F: Field> ComplexMorphism<F> {
    /// Checks `d_Y f = f d_X` in every degree.
    pub fn is_chain_map(&self, x: &ProjComplex<F>, y: &ProjComplex<F>) -> Result<bool, ComplexError> {
        let alg = x.algebra();
        let lo = self.lo.min(x.lo()).min(y.lo());
        let hi = x.hi().max(y.hi());
        for n in lo..=hi {
            let left = compose(alg, &y.diff(n), &self.at(x, y, n))?;
            let right = compose(alg, &self.at(x, y, n + 1), &x.diff(n))?;
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Component in degree `n`, zero where none is stored.
    pub fn at(&self, x: &ProjComplex<F>, y: &ProjComplex<F>, n: i64) -> ProjMorphism<F> {
        if n >= self.lo {
            if let Some(c) = self.components.get((n - self.lo) as usize) {
                return c.clone();
            }
        }
        ProjMorphism::zero(x.term(n), y.term(n))
    }

    /// `f[k]`, a chain map `X[k] -> Y[k]`; components are unchanged.
    pub fn shift(&self, k: i64) -> Self {
        ComplexMorphism {
            lo: self.lo - k,
            components: self.components.clone(),
        }
    }

    /// `g . f` with `self = f`.
    pub fn then(&self, g: &ComplexMorphism<F>, x: &ProjComplex<F>, y: &ProjComplex<F>, z: &ProjComplex<F>) -> Result<Self, ComplexError> {
        let lo = self.lo.min(g.lo);
        let hi = x.hi().max(z.hi());
        let components = (lo..=hi)
            .map(|n| compose(x.algebra(), &g.at(y, z, n), &self.at(x, y, n)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ComplexMorphism { lo, components })
    }
}

/// Mapping cone `C^n = X^{n+1} (+) Y^n` with differential `[[-d_X, 0], [f, d_Y]]`.
pub fn cone<F: Field>(f: &ComplexMorphism<F>, x: &ProjComplex<F>, y: &ProjComplex<F>) -> Result<ProjComplex<F>, ComplexError> {
    let alg = x.algebra();
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    let terms: Vec<ProjModule> = (lo..=hi).map(|n| x.term(n + 1).direct_sum(&y.term(n))).collect();
    let mut diffs = Vec::new();
    for n in lo..hi {
        let dx = x.diff(n + 1).neg();
        let dy = y.diff(n);
        let fn1 = f.at(x, y, n + 1);
        let d = assemble(
            alg,
            &[x.term(n + 1), y.term(n)],
            &[x.term(n + 2), y.term(n + 1)],
            &[vec![Some(&dx), None], vec![Some(&fn1), Some(&dy)]],
        )?;
        diffs.push(d);
    }
    ProjComplex::new(alg.clone(), lo, terms, diffs, x.is_truncated() || y.is_truncated())
}

impl<F: Field> ChainMap<F> {
    pub fn at(&self, n: i64) -> Option<&RepMorphism<F>> {
        if n < self.lo {
            return None;
        }
        self.components.get((n - self.lo) as usize)
    }

    /// True when every component is invertible.
    pub fn is_degreewise_iso(&self) -> bool {
        self.components.iter().all(|c| c.is_iso())
    }
}

/// The target side used for maps: `Y` itself, or its good truncation above the cut when `Y` is truncated.
fn target_window<F: Field>(y: &ProjComplex<F>) -> Result<(RealizedComplex<F>, Option<RepMorphism<F>>), ComplexError> {
    let real = y.realize();
    if !y.is_truncated() || real.objects.len() < 2 {
        if y.is_truncated() {
            return Ok((
                RealizedComplex {
                    lo: y.lo() + 1,
                    objects: Vec::new(),
                    diffs: Vec::new(),
                },
                None,
            ));
        }
        return Ok((real, None));
    }
    let f = y.algebra().field();
    let (coker, proj) = real.objects[1].quotient(&real.diffs[0].image_basis())?;
    let mut objects = vec![coker];
    objects.extend(real.objects[2..].iter().cloned());
    let mut diffs = Vec::new();
    if real.diffs.len() > 1 {
        let induced = RepMorphism::new(
            (0..proj.maps().len())
                .map(|z| {
                    let sec = proj
                        .at(z)
                        .solve_all(&Matrix::identity(f, proj.at(z).rows()))
                        .particular()
                        .expect("projection onto a quotient is surjective")
                        .clone();
                    real.diffs[1].at(z).mul(&sec)
                })
                .collect(),
        );
        diffs.push(induced);
        diffs.extend(real.diffs[2..].iter().cloned());
    }
    Ok((
        RealizedComplex {
            lo: y.lo() + 1,
            objects,
            diffs,
        },
        Some(proj),
    ))
}

fn zero_between<F: Field>(f: &F, a: &QuiverRep<F>, b: &QuiverRep<F>) -> RepMorphism<F> {
    RepMorphism::new(
        a.dims()
            .iter()
            .zip(b.dims())
            .map(|(&s, &t)| Matrix::zeros(f, t, s))
            .collect(),
    )
}

/// Homotopy classes of degree-zero chain maps `X -> Y`.
///
/// When `Y` is truncated at `c`, maps are computed into `0 -> coker d^c -> Y^{c+2} -> ...`,
/// which agrees with the untruncated target as long as its homology sits above `c`. A
/// truncated source must then reach degree `c`.
pub fn hom_homotopy<F: Field>(x: &ProjComplex<F>, y: &ProjComplex<F>) -> Result<HomotopyHom<F>, ComplexError> {
    if x.algebra() != y.algebra() {
        return Err(ComplexError::Shape("complexes over different algebras".into()));
    }
    let f = x.algebra().field().clone();
    let (z, bottom) = target_window(y)?;
    let window_lo = z.lo;
    if x.is_truncated() && x.lo() > window_lo - 1 {
        return Err(ComplexError::InsufficientOverlap {
            needed: window_lo - 1,
            have: x.lo(),
        });
    }
    let xr = x.realize();
    let top = xr.hi().min(z.hi());
    if z.objects.is_empty() || top < window_lo {
        return Ok(HomotopyHom {
            dim: 0,
            basis: Vec::new(),
            window_lo,
            classes: None,
        });
    }
    let degrees: Vec<i64> = (window_lo..=top).collect();
    let object_or_zero = |c: &RealizedComplex<F>, n: i64, like: &QuiverRep<F>| -> QuiverRep<F> {
        c.object(n)
            .cloned()
            .unwrap_or_else(|| QuiverRep::zero(like.quiver_arc().clone(), &f))
    };
    let some_obj = z.objects[0].clone();
    let xo = |n: i64| object_or_zero(&xr, n, &some_obj);
    let zo = |n: i64| object_or_zero(&z, n, &some_obj);
    let dx = |n: i64| xr.diff(n).cloned().unwrap_or_else(|| zero_between(&f, &xo(n), &xo(n + 1)));
    let dz = |n: i64| z.diff(n).cloned().unwrap_or_else(|| zero_between(&f, &zo(n), &zo(n + 1)));

    // Unknowns: a basis of Hom(X^n, Z^n) per degree.
    let coords: Vec<HomCoords<F>> = degrees.iter().map(|&n| HomCoords::new(&f, xo(n).hom_basis(&zo(n)))).collect();
    let offsets: Vec<usize> = coords
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.len();
            Some(o)
        })
        .collect();
    let unknowns: usize = coords.iter().map(|c| c.len()).sum();

    // Chain conditions d_Z^n f^n - f^{n+1} d_X^n = 0 for n = window_lo - 1 ..= top.
    let eq_degrees: Vec<i64> = (window_lo - 1..=top).collect();
    let eq_len: Vec<usize> = eq_degrees
        .iter()
        .map(|&n| xo(n).dims().iter().zip(zo(n + 1).dims()).map(|(a, b)| a * b).sum())
        .collect();
    let eq_off: Vec<usize> = eq_len
        .iter()
        .scan(0, |acc, l| {
            let o = *acc;
            *acc += l;
            Some(o)
        })
        .collect();
    let rows: usize = eq_len.iter().sum();
    let mut system = Matrix::zeros(&f, rows, unknowns);
    for (k, &n) in degrees.iter().enumerate() {
        for (j, phi) in coords[k].basis().iter().enumerate() {
            let col = offsets[k] + j;
            // Equation at n: d_Z^n phi.
            let e = (n - (window_lo - 1)) as usize;
            let img = phi.then(&dz(n));
            for (r, v) in img.flatten().into_iter().enumerate() {
                system.set(eq_off[e] + r, col, v);
            }
            // Equation at n - 1: -phi d_X^{n-1}.
            let e = e - 1;
            let img = dx(n - 1).then(phi).neg();
            for (r, v) in img.flatten().into_iter().enumerate() {
                let cur = f.add(system.get(eq_off[e] + r, col), &v);
                system.set(eq_off[e] + r, col, cur);
            }
        }
    }
    let chain_space = system.rank_kernel().kernel_basis;

    // Null-homotopic maps: f^n = d_Z^{n-1} h^n + h^{n+1} d_X^n with h^n: X^n -> Z^{n-1}, n > window_lo.
    let mut null_vectors: Vec<Vec<F::Elem>> = Vec::new();
    for m in window_lo + 1..=top + 1 {
        let hs = xo(m).hom_basis(&zo(m - 1));
        for h in hs {
            let mut v = vec![f.zero(); unknowns];
            // Contribution to f^{m-1} = h d_X^{m-1}.
            let k = (m - 1 - window_lo) as usize;
            let c = coords[k].coords(&dx(m - 1).then(&h));
            for (j, cj) in c.into_iter().enumerate() {
                v[offsets[k] + j] = f.add(&v[offsets[k] + j], &cj);
            }
            if m <= top {
                let k = (m - window_lo) as usize;
                let c = coords[k].coords(&h.then(&dz(m - 1)));
                for (j, cj) in c.into_iter().enumerate() {
                    v[offsets[k] + j] = f.add(&v[offsets[k] + j], &cj);
                }
            }
            null_vectors.push(v);
        }
    }
    let mut span = SpanTracker::new(&f, unknowns);
    for v in &null_vectors {
        span.insert(v);
    }
    let null_dim = span.dim();
    let mut basis = Vec::new();
    let mut basis_vectors = Vec::new();
    for v in &chain_space {
        if span.insert(v) {
            basis_vectors.push(v.clone());
            let components = degrees
                .iter()
                .enumerate()
                .map(|(k, &n)| {
                    coords[k].combine(&f, &v[offsets[k]..offsets[k] + coords[k].len()], zero_between(&f, &xo(n), &zo(n)))
                })
                .collect();
            basis.push(ChainMap {
                lo: window_lo,
                components,
            });
        }
    }
    debug_assert_eq!(basis.len(), chain_space.len() - null_dim);
    let mut columns = null_vectors;
    let null_count = columns.len();
    columns.extend(basis_vectors);
    let spanning = Matrix::from_columns(&f, unknowns, &columns);
    Ok(HomotopyHom {
        dim: basis.len(),
        basis,
        window_lo,
        classes: Some(ClassSolver {
            bottom,
            coords,
            offsets,
            unknowns,
            spanning,
            null_count,
        }),
    })
}

/// Looks for a chain map `X -> Y` that is invertible in every degree among random
/// combinations of the homotopy basis; a hit certifies `X ≅ Y`.
pub fn find_isomorphism<F: Field>(
    x: &ProjComplex<F>,
    y: &ProjComplex<F>,
    mut next: impl FnMut() -> i64,
    tries: usize,
) -> Result<Option<ChainMap<F>>, ComplexError> {
    let hom = hom_homotopy(x, y)?;
    let f = x.algebra().field();
    if hom.basis.is_empty() {
        return Ok(None);
    }
    for _ in 0..tries {
        let mut acc: Option<ChainMap<F>> = None;
        for b in &hom.basis {
            let c = f.from_i64(next());
            let scaled: Vec<RepMorphism<F>> = b.components.iter().map(|m| m.scale(&c)).collect();
            acc = Some(match acc {
                None => ChainMap {
                    lo: b.lo,
                    components: scaled,
                },
                Some(a) => ChainMap {
                    lo: a.lo,
                    components: a.components.iter().zip(&scaled).map(|(p, q)| p.add(q)).collect(),
                },
            });
        }
        let cand = acc.expect("nonempty basis");
        let hi = cand.lo + cand.components.len() as i64 - 1;
        let covered = |c: &ProjComplex<F>| (c.lo()..=c.hi()).all(|n| c.term(n).is_zero() || (cand.lo..=hi).contains(&n));
        if covered(x) && covered(y) && cand.is_degreewise_iso() {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}
